#pragma once

#include <cstddef>
#include <cstdint>

#include "vva/instance.hpp"
#include "vva/mechanism.hpp"

namespace vva {

// A finite single-item value distribution.
struct Marginal {
  RationalVector values;
  RationalVector probs;
};

// Buyer i's marginal distribution of item j, masses summed over equal values,
// values ascending.
Marginal item_marginal(const Instance& instance, std::size_t buyer, std::size_t item);

// max over support prices q of q * Pr(v >= q).
Rational posted_price_revenue(const Marginal& marginal);

// "Highest report at or above the reserve wins, ties split evenly", with
// payments from the discrete payment identity. Requires a single item.
Mechanism threshold_auction(const Instance& instance, const Rational& reserve);
// Best certified threshold auction over reserves drawn from the support
// values. Throws DimensionMismatch unless m = 1, SolverFailure if a candidate
// fails the DSIC/epIR check.
Rational threshold_auction_revenue(const Instance& instance);

struct MenuGridLimits {
  // Cap on |V_1| * (k + 1).
  std::size_t support_grid_cap = 64;
  // Cap on the number of complete allocation assignments enumerated.
  std::uint64_t enumeration_cap = std::uint64_t{1} << 24;
};

// Best single-buyer mechanism whose allocations lie on {0, 1/k, ..., 1}^m,
// with revenue-maximal payments for each allocation assignment. Throws
// DimensionMismatch unless n = 1, ScaleLimit past the limits.
Rational menu_grid_revenue(const Instance& instance, std::size_t k, const MenuGridLimits& limits = {});

struct GenSpec {
  std::size_t buyers = 1;
  std::size_t items = 1;
  // Nonzero types per buyer; with independent items, values per item.
  std::size_t support_size = 2;
  // Value numerators are drawn from [1, max_value * value_denominator].
  std::int64_t max_value = 3;
  std::int64_t value_denominator = 1;
  bool iid = true;
  // Independent items draw a product distribution per buyer; correlated
  // items draw joint support vectors.
  bool correlated = false;
  std::size_t max_profiles = 256;
};

// Deterministic for a given spec and seed. The zero vector is always in each
// support. Throws ScaleLimit past max_profiles.
Instance gen_instance(const GenSpec& spec, std::uint64_t seed);

}  // namespace vva
