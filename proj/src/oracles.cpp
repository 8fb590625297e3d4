#include "vva/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "vva/error.hpp"

namespace vva {

Marginal item_marginal(const Instance& inst, std::size_t i, std::size_t j) {
  std::map<Rational, Rational> mass;
  for (std::size_t t = 0; t < inst.support_size(i); ++t) mass[inst.value(i, t, j)] += inst.prob(i, t);
  Marginal out;
  for (const auto& [value, prob] : mass) {
    out.values.push_back(value);
    out.probs.push_back(prob);
  }
  return out;
}

Rational posted_price_revenue(const Marginal& marginal) {
  Rational best = 0;
  for (const Rational& q : marginal.values) {
    Rational above = 0;
    for (std::size_t t = 0; t < marginal.values.size(); ++t) {
      if (marginal.values[t] >= q) above += marginal.probs[t];
    }
    best = std::max(best, Rational(q * above));
  }
  return best;
}

Mechanism threshold_auction(const Instance& inst, const Rational& reserve) {
  if (inst.items() != 1) throw Error(ErrorCode::DimensionMismatch, "threshold auction needs a single item");
  const std::size_t n = inst.buyers();
  Mechanism mech = Mechanism::zero(inst, Form::DS);
  for (ProfileId p = 0; p < inst.profile_count(); ++p) {
    std::optional<Rational> top;
    for (std::size_t i = 0; i < n; ++i) {
      const Rational& v = inst.value(i, inst.type_of(p, i), 0);
      if (v >= reserve && (!top || v > *top)) top = v;
    }
    if (!top) continue;
    std::size_t winners = 0;
    for (std::size_t i = 0; i < n; ++i) winners += inst.value(i, inst.type_of(p, i), 0) == *top;
    for (std::size_t i = 0; i < n; ++i) {
      if (inst.value(i, inst.type_of(p, i), 0) == *top) mech.x(p, i, 0) = ratio(1, static_cast<long>(winners));
    }
  }
  // p(v_k) = v_k x(v_k) - sum_{l<k} x(v_l) (v_{l+1} - v_l) along buyer i's sorted types.
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> order(inst.support_size(i));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return inst.value(i, a, 0) < inst.value(i, b, 0); });
    for (ProfileId p = 0; p < inst.profile_count(); ++p) {
      if (inst.type_of(p, i) != 0) continue;
      Rational rent = 0;
      for (std::size_t r = 0; r < order.size(); ++r) {
        const ProfileId q = inst.with_type(p, i, order[r]);
        const Rational& v = inst.value(i, order[r], 0);
        if (r > 0) {
          const ProfileId prev = inst.with_type(p, i, order[r - 1]);
          rent += mech.x(prev, i, 0) * (v - inst.value(i, order[r - 1], 0));
        }
        mech.payment(q, i) = v * mech.x(q, i, 0) - rent;
      }
    }
  }
  return mech;
}

Rational threshold_auction_revenue(const Instance& inst) {
  if (inst.items() != 1) throw Error(ErrorCode::DimensionMismatch, "threshold auction needs a single item");
  std::set<Rational> reserves;
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    for (std::size_t t = 0; t < inst.support_size(i); ++t) reserves.insert(inst.value(i, t, 0));
  }
  Rational best = 0;
  for (const Rational& r : reserves) {
    const Mechanism mech = threshold_auction(inst, r);
    std::vector<std::string> why;
    if (!is_feasible(inst, mech, &why)) {
      throw Error(ErrorCode::SolverFailure, "threshold auction at reserve " + to_string(r) + ": " + why.front());
    }
    best = std::max(best, mech.revenue(inst));
  }
  return best;
}

namespace {

using Wide = __int128;

mpz_class lcm_of_denominators(const Instance& inst, bool values) {
  mpz_class l = 1;
  for (std::size_t t = 0; t < inst.support_size(0); ++t) {
    if (values) {
      for (const Rational& q : inst.value(0, t)) l = lcm(l, mpz_class(q.get_den()));
    } else {
      l = lcm(l, mpz_class(inst.prob(0, t).get_den()));
    }
  }
  return l;
}

std::int64_t to_int64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw Error(ErrorCode::ScaleLimit, "menu grid values too large");
  return z.get_si();
}

// Enumerates grid allocations per type; payments are the largest solution of
// the difference constraints p_a <= w(0, a), p_a - p_d <= w(d, a), computed as
// shortest paths in integer units of 1 / (L k).
class MenuSearch {
 public:
  MenuSearch(const Instance& inst, std::size_t k, std::uint64_t cap)
      : inst_(inst), k_(k), types_(inst.support_size(0)), cap_(cap) {
    const std::size_t m = inst.items();
    const mpz_class L = lcm_of_denominators(inst, true);
    const mpz_class M = lcm_of_denominators(inst, false);
    scaled_values_.assign(types_, std::vector<std::int64_t>(m));
    weights_.resize(types_);
    for (std::size_t t = 0; t < types_; ++t) {
      for (std::size_t j = 0; j < m; ++j) {
        scaled_values_[t][j] = to_int64(mpz_class(inst.value(0, t, j) * L));
      }
      weights_[t] = to_int64(mpz_class(inst.prob(0, t) * M));
    }
    std::size_t points = 1;
    for (std::size_t j = 0; j < m; ++j) points *= k + 1;
    grid_.resize(points, std::vector<std::int64_t>(m));
    for (std::size_t g = 0; g < points; ++g) {
      std::size_t rest = g;
      for (std::size_t j = 0; j < m; ++j) {
        grid_[g][j] = static_cast<std::int64_t>(rest % (k + 1));
        rest /= k + 1;
      }
    }
    pay_scale_ = Rational(L * k);
    scale_ = pay_scale_ * M;
    const auto zero = inst.zero_type(0);
    for (std::size_t t = 0; t < types_; ++t) {
      if (!zero || *zero != t) free_.push_back(t);
    }
    choice_.assign(types_, 0);
  }

  Rational best_revenue() {
    dfs(0);
    return Rational(mpz_from_wide(best_)) / scale_;
  }

  Mechanism best_mechanism() const {
    Mechanism mech = Mechanism::zero(inst_, Form::DS);
    for (std::size_t t = 0; t < types_; ++t) {
      for (std::size_t j = 0; j < inst_.items(); ++j) {
        mech.x(t, 0, j) = ratio(grid_[best_choice_[t]][j], static_cast<long>(k_));
      }
      mech.payment(t, 0) = Rational(mpz_from_wide(best_pay_[t])) / pay_scale_;
    }
    return mech;
  }

 private:
  static mpz_class mpz_from_wide(Wide w) {
    const bool neg = w < 0;
    if (neg) w = -w;
    mpz_class out = 0;
    mpz_class base = 1;
    while (w > 0) {
      out += base * static_cast<unsigned long>(w % 1000000000);
      base *= 1000000000;
      w /= 1000000000;
    }
    return neg ? mpz_class(-out) : out;
  }

  Wide utility_gain(std::size_t a, std::size_t ga, std::size_t gd) const {
    Wide total = 0;
    for (std::size_t j = 0; j < inst_.items(); ++j) {
      total += static_cast<Wide>(scaled_values_[a][j]) * (grid_[ga][j] - grid_[gd][j]);
    }
    return total;
  }

  void dfs(std::size_t depth) {
    if (depth == free_.size()) {
      evaluate();
      return;
    }
    const std::size_t a = free_[depth];
    for (std::size_t g = 0; g < grid_.size(); ++g) {
      // Two-cycle monotonicity, necessary for incentive compatibility.
      bool ok = true;
      for (std::size_t e = 0; e < depth && ok; ++e) {
        const std::size_t d = free_[e];
        ok = utility_gain(a, g, choice_[d]) + utility_gain(d, choice_[d], g) >= 0;
      }
      if (!ok) continue;
      choice_[a] = g;
      dfs(depth + 1);
    }
  }

  void evaluate() {
    if (++leaves_ > cap_) throw Error(ErrorCode::ScaleLimit, "menu grid enumeration exceeds its cap");
    // Zero type (if any) holds the empty bundle at price 0 and acts as the source.
    std::vector<Wide> dist(types_);
    for (std::size_t t = 0; t < types_; ++t) dist[t] = utility_gain(t, choice_[t], 0);
    const auto zero = inst_.zero_type(0);
    if (zero) dist[*zero] = 0;
    for (std::size_t round = 0; round <= types_; ++round) {
      bool changed = false;
      for (std::size_t a = 0; a < types_; ++a) {
        for (std::size_t d = 0; d < types_; ++d) {
          if (a == d) continue;
          const Wide through = dist[d] + utility_gain(a, choice_[a], choice_[d]);
          if (through < dist[a]) {
            dist[a] = through;
            changed = true;
          }
        }
      }
      if (!changed) break;
      if (round == types_) return;  // negative cycle: not implementable
    }
    Wide score = 0;
    for (std::size_t t = 0; t < types_; ++t) {
      if (dist[t] < 0) return;
      score += dist[t] * weights_[t];
    }
    if (!found_ || score > best_) {
      found_ = true;
      best_ = score;
      best_choice_ = choice_;
      best_pay_ = dist;
    }
  }

  const Instance& inst_;
  std::size_t k_;
  std::size_t types_;
  std::uint64_t cap_;
  std::vector<std::vector<std::int64_t>> scaled_values_;
  std::vector<std::int64_t> weights_;
  std::vector<std::vector<std::int64_t>> grid_;
  std::vector<std::size_t> free_;
  std::vector<std::size_t> choice_;
  Rational pay_scale_;
  Rational scale_;
  bool found_ = false;
  Wide best_ = 0;
  std::vector<std::size_t> best_choice_;
  std::vector<Wide> best_pay_;
  std::uint64_t leaves_ = 0;
};

}  // namespace

Rational menu_grid_revenue(const Instance& inst, std::size_t k, const MenuGridLimits& limits) {
  if (inst.buyers() != 1) throw Error(ErrorCode::DimensionMismatch, "menu grid needs a single buyer");
  if (k == 0) throw Error(ErrorCode::DimensionMismatch, "grid resolution must be positive");
  if (inst.support_size(0) * (k + 1) > limits.support_grid_cap) {
    throw Error(ErrorCode::ScaleLimit, "support size times grid points exceeds " +
                                           std::to_string(limits.support_grid_cap));
  }
  MenuSearch search(inst, k, limits.enumeration_cap);
  const Rational revenue = search.best_revenue();
  const Mechanism mech = search.best_mechanism();
  std::vector<std::string> why;
  if (!is_feasible(inst, mech, &why)) throw Error(ErrorCode::SolverFailure, "menu grid optimum: " + why.front());
  if (mech.revenue(inst) != revenue) throw Error(ErrorCode::SolverFailure, "menu grid revenue mismatch");
  return revenue;
}

namespace {

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

// Masses proportional to integer weights in [1, cap].
RationalVector draw_masses(std::mt19937_64& rng, std::size_t count, std::uint64_t cap) {
  std::vector<std::uint64_t> w(count);
  std::uint64_t total = 0;
  for (auto& x : w) total += x = draw(rng, 1, cap);
  RationalVector out;
  for (auto x : w) out.emplace_back(ratio(static_cast<long>(x), static_cast<long>(total)));
  return out;
}

void draw_buyer(const GenSpec& spec, std::mt19937_64& rng, std::vector<RationalVector>& support, RationalVector& probs) {
  const std::size_t m = spec.items, s = spec.support_size;
  const std::int64_t den = spec.value_denominator;
  const std::uint64_t top = static_cast<std::uint64_t>(spec.max_value * den);
  if (!spec.correlated) {
    if (s > top) throw Error(ErrorCode::DimensionMismatch, "not enough distinct values per item");
    const std::uint64_t root = static_cast<std::uint64_t>(std::floor(std::pow(64.0, 1.0 / static_cast<double>(m))));
    const std::uint64_t cap = std::max<std::uint64_t>(1, root / s);
    std::vector<RationalVector> values(m);
    std::vector<RationalVector> masses(m);
    for (std::size_t j = 0; j < m; ++j) {
      std::set<std::uint64_t> picked;
      while (picked.size() < s) picked.insert(draw(rng, 1, top));
      for (auto num : picked) values[j].emplace_back(ratio(static_cast<long>(num), den));
      masses[j] = draw_masses(rng, s, cap);
    }
    std::size_t count = 1;
    for (std::size_t j = 0; j < m; ++j) count *= s;
    for (std::size_t c = 0; c < count; ++c) {
      RationalVector v(m);
      Rational mu = 1;
      std::size_t rest = c;
      for (std::size_t j = 0; j < m; ++j) {
        v[j] = values[j][rest % s];
        mu *= masses[j][rest % s];
        rest /= s;
      }
      support.push_back(std::move(v));
      probs.push_back(mu);
    }
    return;
  }
  double space = 1;
  for (std::size_t j = 0; j < m; ++j) space *= static_cast<double>(top + 1);
  if (static_cast<double>(s) > space - 1) throw Error(ErrorCode::DimensionMismatch, "not enough distinct vectors");
  std::set<std::vector<std::uint64_t>> picked;
  std::vector<std::vector<std::uint64_t>> ordered;
  while (ordered.size() < s) {
    std::vector<std::uint64_t> v(m);
    bool nonzero = false;
    for (auto& x : v) nonzero |= (x = draw(rng, 0, top)) != 0;
    if (nonzero && picked.insert(v).second) ordered.push_back(v);
  }
  for (const auto& v : ordered) {
    RationalVector q;
    for (auto num : v) q.emplace_back(ratio(static_cast<long>(num), den));
    support.push_back(std::move(q));
  }
  probs = draw_masses(rng, s, std::max<std::uint64_t>(1, 64 / s));
}

}  // namespace

Instance gen_instance(const GenSpec& spec, std::uint64_t seed) {
  if (spec.buyers == 0 || spec.items == 0 || spec.support_size == 0 || spec.max_value <= 0 ||
      spec.value_denominator <= 0 || spec.value_denominator > 64) {
    throw Error(ErrorCode::DimensionMismatch, "invalid generator spec");
  }
  std::size_t per_buyer = spec.correlated ? spec.support_size : 1;
  if (!spec.correlated) {
    for (std::size_t j = 0; j < spec.items; ++j) per_buyer *= spec.support_size;
  }
  double profiles = 1;
  for (std::size_t i = 0; i < spec.buyers; ++i) profiles *= static_cast<double>(per_buyer + 1);
  if (profiles > static_cast<double>(spec.max_profiles)) {
    throw Error(ErrorCode::ScaleLimit, "generated instance would have more than " +
                                           std::to_string(spec.max_profiles) + " profiles");
  }
  std::mt19937_64 rng(seed);
  RawInstance raw;
  raw.buyers = spec.buyers;
  raw.items = spec.items;
  raw.augment_zero = true;
  raw.supports.resize(spec.buyers);
  raw.probs.resize(spec.buyers);
  for (std::size_t i = 0; i < spec.buyers; ++i) {
    if (spec.iid && i > 0) {
      raw.supports[i] = raw.supports[0];
      raw.probs[i] = raw.probs[0];
    } else {
      draw_buyer(spec, rng, raw.supports[i], raw.probs[i]);
    }
  }
  ValidationOptions options;
  options.augment_zero = true;
  return validate_instance(raw, options);
}

}  // namespace vva
