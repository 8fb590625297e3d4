#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vva/dual.hpp"
#include "vva/lp.hpp"
#include "vva/instance.hpp"
#include "vva/mechanism.hpp"

namespace vva {

// Exact decomposition of the primal-dual objective gap into the five
// complementary products.
struct CsLedger {
  Form form = Form::DS;
  Rational incentive;      // sum a * zeta
  Rational participation;  // sum b * eta
  Rational supply;         // sum c * xi
  Rational allocation;     // sum alpha * x
  Rational payment;        // sum beta * p
  Rational primal_objective;
  Rational dual_objective;
  std::size_t nonzero_products = 0;

  Rational gap() const { return dual_objective - primal_objective; }
  Rational product_sum() const { return incentive + participation + supply + allocation + payment; }
  bool identity_holds() const { return gap() == product_sum(); }
  bool optimal() const { return nonzero_products == 0; }
};

// Both throw InfeasibleInput when the mechanism or the dual is infeasible in
// the requested form.
CsLedger check_cs_ds(const Instance& instance, const Mechanism& mechanism, const DualSolutionDS& dual);
CsLedger check_cs_bayes(const Instance& instance, const Mechanism& mechanism, const DualSolutionBayes& dual);

struct RegularityReport {
  bool virtual_condition = true;
  bool source_condition = true;
  bool transport_condition = true;
  std::string first_violation;

  bool ok() const { return virtual_condition && source_condition && transport_condition; }
};

// DS: phi_i^j(v) = 0 wherever mu_{-i}(v_{-i}) = 0; eta_i(v) = 0 for v_i != 0
// and eta_i(0, v_{-i}) = mu_{-i}(v_{-i}); psi_i(v) = mu(v).
RegularityReport check_regular_ds(const Instance& instance, const DualSolutionDS& dual);
// Bayesian: mu_{-i}(v_{-i}) phibar_i^j(v_i) = 0 wherever mu_{-i}(v_{-i}) = 0;
// etabar_i(v_i) = 0 for v_i != 0 and etabar_i(0) = 1;
// mu_{-i}(v_{-i}) psibar_i(v_i) = mu(v).
RegularityReport check_regular_bayes(const Instance& instance, const DualSolutionBayes& dual);

// Moves an optimal dual onto a regular optimal dual with the same objective.
// `mechanism` must be an optimal primal of the same form; optimality of the
// pair is established through the CS ledger. Throws NotOptimal,
// MissingZeroType or InfeasibleInput. Regular inputs are returned unchanged.
DualSolutionDS regularize_ds(const Instance& instance, const Mechanism& mechanism, const DualSolutionDS& dual);
DualSolutionBayes regularize_bayes(const Instance& instance, const Mechanism& mechanism,
                                   const DualSolutionBayes& dual);

// Dual-DSLP restricted to regular duals with objective at most `drev`: psi = mu,
// eta at its regular values and phi = 0 on massless v_{-i} slices. The
// objective is zero; callers set their own.
LinearProgram regular_optimal_face_ds(const Instance& instance, const Rational& drev);

// Regular optimal dual of least total zeta flow, so that no deviation flow
// circulates without need. Throws MissingZeroType, or SolverFailure if the
// face is empty (drev below the optimum).
DualSolutionDS min_flow_regular_dual_ds(const Instance& instance, const Rational& drev,
                                        const SolveOptions& options = {});

// A rational or minus infinity.
struct VirtualValue {
  Rational value;
  bool neg_inf = false;

  static VirtualValue minus_infinity() { return {Rational(0), true}; }
  bool operator==(const VirtualValue& other) const {
    return neg_inf == other.neg_inf && (neg_inf || value == other.value);
  }
  bool operator<(const VirtualValue& other) const {
    if (neg_inf) return !other.neg_inf;
    if (other.neg_inf) return false;
    return value < other.value;
  }
  bool nonpositive() const { return neg_inf || sgn(value) <= 0; }
  std::string str() const { return neg_inf ? "-inf" : to_string(value); }
};

// Virtual values per (buyer, item, profile). Bayesian tables are stored per
// (buyer, item, own type) and read through at() for any profile, so they are
// constant in v_{-i} by construction.
class VirtualValueTable {
 public:
  VirtualValueTable() = default;
  VirtualValueTable(const Instance& instance, Form form);

  Form form() const { return form_; }
  std::size_t buyers() const { return entries_.size(); }
  std::size_t items() const { return items_; }

  const VirtualValue& at(const Instance& inst, std::size_t i, std::size_t j, ProfileId p) const;
  VirtualValue& at(const Instance& inst, std::size_t i, std::size_t j, ProfileId p);
  // Bayesian tables only.
  const VirtualValue& at_type(std::size_t i, std::size_t j, std::size_t type) const;
  VirtualValue& at_type(std::size_t i, std::size_t j, std::size_t type);
  std::size_t types(std::size_t i) const { return types_[i]; }

 private:
  Form form_ = Form::DS;
  std::size_t items_ = 0;
  std::size_t profiles_ = 0;
  std::vector<std::size_t> types_;
  std::vector<std::vector<VirtualValue>> entries_;
};

// phi_i^j(v) = v_i^j + sum_{v'} zeta(v', v_i; v_{-i}) (v_i^j - v'^j) / mu(v) on
// profiles with mass; 0 where mu_{-i}(v_{-i}) = 0; -inf at a massless zero
// type. Throws NotRegular, or ZeroMassNonzeroType for a massless nonzero type.
VirtualValueTable virtual_values_ds(const Instance& instance, const DualSolutionDS& dual);
// phibar_i^j(v_i) = v_i^j + sum_{v'} zetabar(v', v_i) (v_i^j - v'^j) / mu_i(v_i);
// -inf at a massless zero type.
VirtualValueTable virtual_values_bayes(const Instance& instance, const DualSolutionBayes& dual);

struct VwmReport {
  std::size_t checked_profiles = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Virtual-welfare-maximizer conditions on every profile with mu(v) > 0:
// allocated only to buyers with maximal and nonnegative virtual value; an
// item not fully allocated has max virtual value <= 0, and exactly 0 when
// partially allocated.
VwmReport check_vwm(const Instance& instance, const Mechanism& mechanism, const VirtualValueTable& table);

struct UbvvReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::vector<std::string> findings;
  bool holds() const { return violations == 0; }
};

// Whether phi_i^j(v) <= v_i^j on every profile with mu(v) > 0. Violations are
// findings, not errors.
UbvvReport check_ubvv(const VirtualValueTable& table, const Instance& instance);

}  // namespace vva
