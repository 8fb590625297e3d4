#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vva/rational.hpp"

namespace vva {

// Unvalidated instance data as read from a file or built by hand.
struct RawInstance {
  std::size_t buyers = 0;
  std::size_t items = 0;
  // supports[i][k] is the k-th value vector (length `items`) of buyer i.
  std::vector<std::vector<RationalVector>> supports;
  // probs[i][k] is the mass of supports[i][k].
  std::vector<RationalVector> probs;
  bool augment_zero = false;
};

struct ValidationOptions {
  // Prepend the zero vector at mass 0 to any support that lacks it.
  bool augment_zero = false;
  // Reject nonzero types with zero mass.
  bool strict_positive_mass = false;
  // Reject supports without the zero vector (after augmentation).
  bool require_zero = true;
};

// Per-buyer support indices (i_1, ..., i_n) of a value profile.
struct ProfileIndex {
  std::vector<std::size_t> index;
  bool operator==(const ProfileIndex&) const = default;
};

// Linear profile id: row-major over buyers, buyer 0 most significant.
using ProfileId = std::size_t;

// A validated, immutable auction instance with a product prior across
// buyers. Profile-level masses are precomputed.
class Instance {
 public:
  std::size_t buyers() const { return supports_.size(); }
  std::size_t items() const { return items_; }

  std::size_t support_size(std::size_t buyer) const { return supports_[buyer].size(); }
  const RationalVector& value(std::size_t buyer, std::size_t type) const {
    return supports_[buyer][type];
  }
  const Rational& value(std::size_t buyer, std::size_t type, std::size_t item) const {
    return supports_[buyer][type][item];
  }
  const Rational& prob(std::size_t buyer, std::size_t type) const { return probs_[buyer][type]; }
  const std::vector<RationalVector>& support(std::size_t buyer) const { return supports_[buyer]; }
  const RationalVector& probs(std::size_t buyer) const { return probs_[buyer]; }

  // Index of the zero vector in buyer's support, if present.
  std::optional<std::size_t> zero_type(std::size_t buyer) const { return zero_type_[buyer]; }
  bool is_zero_type(std::size_t buyer, std::size_t type) const {
    return zero_type_[buyer] && *zero_type_[buyer] == type;
  }

  std::size_t profile_count() const { return profile_count_; }
  // Support index of `buyer` in profile p.
  std::size_t type_of(ProfileId p, std::size_t buyer) const { return (p / stride_[buyer]) % supports_[buyer].size(); }
  ProfileIndex profile_index(ProfileId p) const;
  ProfileId profile_id(const ProfileIndex& index) const;
  // Profile p with buyer's type replaced.
  ProfileId with_type(ProfileId p, std::size_t buyer, std::size_t type) const {
    return p - type_of(p, buyer) * stride_[buyer] + type * stride_[buyer];
  }
  // Canonical representative of v_{-i}: p with buyer's type set to index 0.
  ProfileId others_key(ProfileId p, std::size_t buyer) const { return with_type(p, buyer, 0); }

  // mu(v), the product of per-buyer masses.
  const Rational& mass(ProfileId p) const { return mass_[p]; }
  // mu_{-i}(v_{-i}).
  const Rational& others_mass(ProfileId p, std::size_t buyer) const {
    return others_mass_[p * buyers() + buyer];
  }

  // All profiles v_{-i} (as others_key values) for a buyer, in profile order.
  std::vector<ProfileId> others_keys(std::size_t buyer) const;

  // Whether every buyer shares the same support and masses.
  bool is_iid() const;

  std::string profile_label(ProfileId p) const;

  // Stable FNV-1a digest over the canonical text form.
  std::string digest() const;

  RawInstance to_raw() const;

 private:
  friend Instance validate_instance(const RawInstance&, const ValidationOptions&);

  std::size_t items_ = 0;
  std::vector<std::vector<RationalVector>> supports_;
  std::vector<RationalVector> probs_;
  std::vector<std::optional<std::size_t>> zero_type_;
  std::vector<std::size_t> stride_;
  std::size_t profile_count_ = 0;
  RationalVector mass_;
  RationalVector others_mass_;
};

// Validates raw data and builds an Instance. Throws vva::Error with
// NonUnitMass, NegativeValue, NegativeMass, DuplicateSupportVector,
// ZeroMassNonzeroType, MissingZeroType or DimensionMismatch.
Instance validate_instance(const RawInstance& raw, const ValidationOptions& options = {});

// mu(v) = mu_1(v_1) ... mu_n(v_n), computed directly from the per-buyer masses.
Rational profile_prob(const Instance& instance, const ProfileIndex& profile);

}  // namespace vva
