#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vva/instance.hpp"
#include "vva/rational.hpp"

namespace vva {

// Dominant-strategy (DSIC + ex-post IR) or Bayesian (BIC + interim IR).
enum class Form { DS, Bayesian };

std::string_view form_name(Form form);

// Allocation x[v][i][j] and payment p[v][i] over the support profiles.
struct Mechanism {
  Form form = Form::DS;
  std::size_t buyers = 0;
  std::size_t items = 0;
  std::size_t profiles = 0;
  RationalVector alloc;  // index (p * buyers + i) * items + j
  RationalVector pay;    // index p * buyers + i

  static Mechanism zero(const Instance& instance, Form form);

  Rational& x(ProfileId p, std::size_t i, std::size_t j) { return alloc[(p * buyers + i) * items + j]; }
  const Rational& x(ProfileId p, std::size_t i, std::size_t j) const {
    return alloc[(p * buyers + i) * items + j];
  }
  Rational& payment(ProfileId p, std::size_t i) { return pay[p * buyers + i]; }
  const Rational& payment(ProfileId p, std::size_t i) const { return pay[p * buyers + i]; }

  // s^j(v) = sum_i x_i^j(v).
  Rational supply(ProfileId p, std::size_t j) const;
  // v_i . x_i(q) - p_i(q), where q is the reported profile and v_i the true value.
  Rational utility(const RationalVector& true_value, ProfileId reported, std::size_t i) const;
  // sum_v mu(v) sum_i p_i(v).
  Rational revenue(const Instance& instance) const;
};

// Constraint gaps of a mechanism. For the DS form a[i] is indexed by
// p * |V_i| + v'_i (deviation v'_i from the type buyer i has in p) and b[i] by
// profile; for the Bayesian form a[i] is indexed by v_i * |V_i| + v'_i and b[i]
// by v_i. Diagonal a-entries are present and always zero. c[j] is indexed by
// profile in both forms.
struct PrimalSlacks {
  Form form = Form::DS;
  std::vector<RationalVector> a;
  std::vector<RationalVector> b;
  std::vector<RationalVector> c;

  bool all_nonnegative() const;
};

// Utilities use u_i(v) = v_i . x_i(v) - p_i(v). Negative gaps are reported,
// not rejected. Throws DimensionMismatch.
PrimalSlacks mechanism_slacks(const Instance& instance, const Mechanism& mechanism);

// Bounds (0 <= x, 0 <= p) plus every slack of the mechanism's form being
// nonnegative. Violations are appended to `why` when given.
bool is_feasible(const Instance& instance, const Mechanism& mechanism,
                 std::vector<std::string>* why = nullptr);

}  // namespace vva
