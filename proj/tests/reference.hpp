#pragma once

// Independent reference computations for tests. Nothing here calls the
// library's LP builders, regularizer or oracles.

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vva/instance.hpp"
#include "vva/rational.hpp"

namespace vva::ref {

inline Rational q(const char* text) { return parse_rational(text); }

inline Instance make(std::vector<std::vector<RationalVector>> supports, std::vector<RationalVector> probs,
                     bool augment = true) {
  RawInstance raw;
  raw.buyers = supports.size();
  raw.items = supports.front().front().size();
  raw.supports = std::move(supports);
  raw.probs = std::move(probs);
  ValidationOptions options;
  options.augment_zero = augment;
  return validate_instance(raw, options);
}

// Single buyer, single item, uniform over the given values (zero augmented).
inline Instance uniform_single(const std::vector<long>& values, std::size_t buyers = 1) {
  std::vector<RationalVector> support;
  RationalVector probs;
  for (long v : values) {
    support.push_back({Rational(v)});
    probs.push_back(ratio(1, static_cast<long>(values.size())));
  }
  return make(std::vector<std::vector<RationalVector>>(buyers, support), std::vector<RationalVector>(buyers, probs));
}

// max_q q * Pr(v >= q) by direct enumeration.
inline Rational posted_price(const std::vector<Rational>& values, const std::vector<Rational>& probs) {
  Rational best = 0;
  for (const Rational& price : values) {
    Rational sold = 0;
    for (std::size_t t = 0; t < values.size(); ++t) {
      if (values[t] >= price) sold += probs[t];
    }
    if (price * sold > best) best = price * sold;
  }
  return best;
}

struct TypePoint {
  std::size_t type;
  Rational value;
  Rational mass;
};

// Buyer i's positive-mass types in increasing value order (single item).
inline std::vector<TypePoint> sorted_types(const Instance& inst, std::size_t i) {
  std::vector<TypePoint> pts;
  for (std::size_t t = 0; t < inst.support_size(i); ++t) {
    if (sgn(inst.prob(i, t)) > 0) pts.push_back({t, inst.value(i, t, 0), inst.prob(i, t)});
  }
  std::sort(pts.begin(), pts.end(), [](const TypePoint& a, const TypePoint& b) { return a.value < b.value; });
  return pts;
}

// v_k - (v_{k+1} - v_k)(1 - F(v_k)) / f(v_k) for positive-mass types, indexed
// by support type; nullopt at zero-mass types.
inline std::vector<std::optional<Rational>> myerson_phi(const Instance& inst, std::size_t i) {
  std::vector<std::optional<Rational>> out(inst.support_size(i));
  const auto pts = sorted_types(inst, i);
  Rational above = 0;
  for (std::size_t r = pts.size(); r-- > 0;) {
    const Rational next = r + 1 < pts.size() ? pts[r + 1].value : pts[r].value;
    out[pts[r].type] = pts[r].value - (next - pts[r].value) * above / pts[r].mass;
    above += pts[r].mass;
  }
  return out;
}

// Whether the unironed formula is nondecreasing in value.
inline bool myerson_regular(const Instance& inst, std::size_t i) {
  const auto phi = myerson_phi(inst, i);
  const auto pts = sorted_types(inst, i);
  for (std::size_t r = 1; r < pts.size(); ++r) {
    if (*phi[pts[r].type] < *phi[pts[r - 1].type]) return false;
  }
  return true;
}

// Ironed virtual values: slopes of the concave hull of the revenue curve
// (S_k, v_k S_k), S_k = Pr(v >= v_k), with the origin appended.
inline std::vector<std::optional<Rational>> ironed_phi(const Instance& inst, std::size_t i) {
  const auto pts = sorted_types(inst, i);
  // Points ordered by increasing quantile: origin, then highest value first.
  std::vector<std::pair<Rational, Rational>> curve{{Rational(0), Rational(0)}};
  Rational s = 0;
  for (std::size_t r = pts.size(); r-- > 0;) {
    s += pts[r].mass;
    curve.push_back({s, pts[r].value * s});
  }
  std::vector<std::size_t> hull;
  auto cross_ok = [&](std::size_t a, std::size_t b, std::size_t c) {
    // Keep b only if slope(a, b) > slope(b, c).
    const Rational s1 = (curve[b].second - curve[a].second) / (curve[b].first - curve[a].first);
    const Rational s2 = (curve[c].second - curve[b].second) / (curve[c].first - curve[b].first);
    return s1 > s2;
  };
  for (std::size_t c = 0; c < curve.size(); ++c) {
    while (hull.size() >= 2 && !cross_ok(hull[hull.size() - 2], hull.back(), c)) hull.pop_back();
    hull.push_back(c);
  }
  std::vector<std::optional<Rational>> out(inst.support_size(i));
  std::size_t h = 0;
  for (std::size_t c = 1; c < curve.size(); ++c) {
    while (hull[h + 1] < c) ++h;
    const Rational slope = (curve[hull[h + 1]].second - curve[hull[h]].second) /
                           (curve[hull[h + 1]].first - curve[hull[h]].first);
    out[pts[pts.size() - c].type] = slope;
  }
  return out;
}

// Optimal single-item revenue E[max_i max(ironed phi_i, 0)] over the product prior.
inline Rational myerson_revenue(const Instance& inst) {
  std::vector<std::vector<std::optional<Rational>>> phi;
  for (std::size_t i = 0; i < inst.buyers(); ++i) phi.push_back(ironed_phi(inst, i));
  Rational total = 0;
  for (ProfileId p = 0; p < inst.profile_count(); ++p) {
    if (is_zero(inst.mass(p))) continue;
    Rational best = 0;
    for (std::size_t i = 0; i < inst.buyers(); ++i) {
      const auto& v = phi[i][inst.type_of(p, i)];
      if (v && *v > best) best = *v;
    }
    total += inst.mass(p) * best;
  }
  return total;
}

// Revenue of selling the grand bundle at `price` to a single buyer.
inline Rational bundle_revenue(const Instance& inst, const Rational& price) {
  Rational sold = 0;
  for (std::size_t t = 0; t < inst.support_size(0); ++t) {
    Rational sum = 0;
    for (const Rational& v : inst.value(0, t)) sum += v;
    if (sum >= price) sold += inst.prob(0, t);
  }
  return price * sold;
}

// A vector that differs from every support vector of buyer i.
inline RationalVector off_support_vector(const Instance& inst, std::size_t i, std::mt19937_64& rng) {
  for (;;) {
    RationalVector v(inst.items());
    for (auto& x : v) x = ratio(static_cast<long>(rng() % 17), static_cast<long>(1 + rng() % 4));
    bool fresh = true;
    for (std::size_t t = 0; t < inst.support_size(i) && fresh; ++t) fresh = inst.value(i, t) != v;
    if (fresh) return v;
  }
}

}  // namespace vva::ref
