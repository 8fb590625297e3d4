#include "vva/instance.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "vva/error.hpp"

namespace vva {

namespace {

bool all_zero(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return is_zero(q); });
}

std::string render_vector(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ",";
    s += to_string(v[k]);
  }
  return s + ")";
}

}  // namespace

Instance validate_instance(const RawInstance& raw, const ValidationOptions& options) {
  const std::size_t n = raw.buyers;
  const std::size_t m = raw.items;
  if (n == 0 || m == 0) {
    throw Error(ErrorCode::DimensionMismatch, "instance needs at least one buyer and one item");
  }
  if (raw.supports.size() != n || raw.probs.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "supports/probs must have one entry per buyer");
  }
  const bool augment = raw.augment_zero || options.augment_zero;

  Instance inst;
  inst.items_ = m;
  inst.supports_.resize(n);
  inst.probs_.resize(n);
  inst.zero_type_.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    auto support = raw.supports[i];
    auto probs = raw.probs[i];
    for (auto& v : support) {
      for (auto& q : v) q.canonicalize();
    }
    for (auto& q : probs) q.canonicalize();
    const std::string who = "buyer " + std::to_string(i);
    if (support.empty()) throw Error(ErrorCode::DimensionMismatch, who + " has an empty support");
    if (support.size() != probs.size()) {
      throw Error(ErrorCode::DimensionMismatch, who + ": support and probs differ in length");
    }
    Rational total = 0;
    for (std::size_t k = 0; k < support.size(); ++k) {
      if (support[k].size() != m) {
        throw Error(ErrorCode::DimensionMismatch,
                    who + " type " + std::to_string(k) + " has the wrong number of items");
      }
      for (const auto& q : support[k]) {
        if (sgn(q) < 0) {
          throw Error(ErrorCode::NegativeValue, who + " type " + std::to_string(k) + " has a negative value");
        }
      }
      if (sgn(probs[k]) < 0) {
        throw Error(ErrorCode::NegativeMass, who + " type " + std::to_string(k) + " has negative mass");
      }
      for (std::size_t l = 0; l < k; ++l) {
        if (support[l] == support[k]) {
          throw Error(ErrorCode::DuplicateSupportVector,
                      who + " lists " + render_vector(support[k]) + " twice");
        }
      }
      total += probs[k];
    }
    if (total != 1) {
      throw Error(ErrorCode::NonUnitMass, who + " masses sum to " + to_string(total));
    }

    auto supp = support;
    auto mass = probs;
    auto zero = std::find_if(supp.begin(), supp.end(), all_zero);
    if (zero == supp.end() && augment) {
      supp.insert(supp.begin(), RationalVector(m, Rational(0)));
      mass.insert(mass.begin(), Rational(0));
      zero = supp.begin();
    }
    if (zero != supp.end()) {
      inst.zero_type_[i] = static_cast<std::size_t>(zero - supp.begin());
    } else if (options.require_zero) {
      throw Error(ErrorCode::MissingZeroType, who + " support lacks the zero vector");
    }
    if (options.strict_positive_mass) {
      for (std::size_t k = 0; k < supp.size(); ++k) {
        if (is_zero(mass[k]) && !all_zero(supp[k])) {
          throw Error(ErrorCode::ZeroMassNonzeroType,
                      who + " nonzero type " + render_vector(supp[k]) + " has zero mass");
        }
      }
    }
    inst.supports_[i] = std::move(supp);
    inst.probs_[i] = std::move(mass);
  }

  inst.stride_.assign(n, 1);
  for (std::size_t i = n; i-- > 1;) inst.stride_[i - 1] = inst.stride_[i] * inst.supports_[i].size();
  inst.profile_count_ = inst.stride_[0] * inst.supports_[0].size();

  inst.mass_.assign(inst.profile_count_, Rational(0));
  inst.others_mass_.assign(inst.profile_count_ * n, Rational(0));
  for (ProfileId p = 0; p < inst.profile_count_; ++p) {
    Rational mu = 1;
    for (std::size_t i = 0; i < n; ++i) mu *= inst.probs_[i][inst.type_of(p, i)];
    inst.mass_[p] = mu;
    for (std::size_t i = 0; i < n; ++i) {
      Rational rest = 1;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != i) rest *= inst.probs_[k][inst.type_of(p, k)];
      }
      inst.others_mass_[p * n + i] = rest;
    }
  }
  return inst;
}

Rational profile_prob(const Instance& instance, const ProfileIndex& profile) {
  if (profile.index.size() != instance.buyers()) {
    throw Error(ErrorCode::DimensionMismatch, "profile has the wrong number of buyers");
  }
  Rational mu = 1;
  for (std::size_t i = 0; i < instance.buyers(); ++i) {
    if (profile.index[i] >= instance.support_size(i)) {
      throw Error(ErrorCode::DimensionMismatch, "profile index out of range");
    }
    mu *= instance.prob(i, profile.index[i]);
  }
  return mu;
}

ProfileIndex Instance::profile_index(ProfileId p) const {
  ProfileIndex out;
  out.index.resize(buyers());
  for (std::size_t i = 0; i < buyers(); ++i) out.index[i] = type_of(p, i);
  return out;
}

ProfileId Instance::profile_id(const ProfileIndex& index) const {
  if (index.index.size() != buyers()) {
    throw Error(ErrorCode::DimensionMismatch, "profile has the wrong number of buyers");
  }
  ProfileId p = 0;
  for (std::size_t i = 0; i < buyers(); ++i) {
    if (index.index[i] >= support_size(i)) {
      throw Error(ErrorCode::DimensionMismatch, "profile index out of range");
    }
    p += index.index[i] * stride_[i];
  }
  return p;
}

std::vector<ProfileId> Instance::others_keys(std::size_t buyer) const {
  std::vector<ProfileId> keys;
  for (ProfileId p = 0; p < profile_count_; ++p) {
    if (type_of(p, buyer) == 0) keys.push_back(p);
  }
  return keys;
}

bool Instance::is_iid() const {
  for (std::size_t i = 1; i < buyers(); ++i) {
    if (supports_[i] != supports_[0] || probs_[i] != probs_[0]) return false;
  }
  return true;
}

std::string Instance::profile_label(ProfileId p) const {
  std::string s;
  for (std::size_t i = 0; i < buyers(); ++i) {
    if (i) s += ".";
    s += std::to_string(type_of(p, i));
  }
  return s;
}

std::string Instance::digest() const {
  std::ostringstream text;
  text << buyers() << ";" << items() << ";";
  for (std::size_t i = 0; i < buyers(); ++i) {
    for (std::size_t k = 0; k < support_size(i); ++k) {
      text << render_vector(supports_[i][k]) << "@" << to_string(probs_[i][k]) << ";";
    }
    text << "|";
  }
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text.str()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RawInstance Instance::to_raw() const {
  RawInstance raw;
  raw.buyers = buyers();
  raw.items = items();
  raw.supports = supports_;
  raw.probs = probs_;
  return raw;
}

}  // namespace vva
