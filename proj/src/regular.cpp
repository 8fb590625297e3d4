#include "vva/regular.hpp"

#include "vva/auction_lp.hpp"
#include "vva/error.hpp"

namespace vva {

namespace {

void require_feasible_primal(const Instance& inst, const Mechanism& mech) {
  std::vector<std::string> why;
  if (!is_feasible(inst, mech, &why)) {
    throw Error(ErrorCode::InfeasibleInput, "mechanism: " + why.front());
  }
}

template <typename Dual>
Dual feasible_dual_with_slacks(const Instance& inst, const Dual& dual) {
  Dual copy = dual;
  copy.update_slacks(inst);
  std::string why;
  if (!copy.is_feasible(inst, &why)) throw Error(ErrorCode::InfeasibleInput, "dual: " + why);
  return copy;
}

void accumulate(Rational& family, std::size_t& nonzero, const Rational& slack, const Rational& multiplier) {
  if (is_zero(slack) || is_zero(multiplier)) return;
  family += slack * multiplier;
  ++nonzero;
}

std::string where(const Instance& inst, std::size_t i, ProfileId p) {
  return "buyer " + std::to_string(i) + " at profile " + inst.profile_label(p);
}

}  // namespace

CsLedger check_cs_ds(const Instance& inst, const Mechanism& mechanism, const DualSolutionDS& dual_in) {
  Mechanism mech = mechanism;
  mech.form = Form::DS;
  require_feasible_primal(inst, mech);
  const PrimalSlacks s = mechanism_slacks(inst, mech);
  const DualSolutionDS dual = feasible_dual_with_slacks(inst, dual_in);

  const std::size_t n = inst.buyers(), m = inst.items(), P = inst.profile_count();
  CsLedger ledger;
  ledger.form = Form::DS;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = inst.support_size(i);
    for (ProfileId p = 0; p < P; ++p) {
      for (std::size_t d = 0; d < k; ++d) {
        if (d == inst.type_of(p, i)) continue;
        accumulate(ledger.incentive, ledger.nonzero_products, s.a[i][p * k + d], dual.zeta[i][p * k + d]);
      }
      accumulate(ledger.participation, ledger.nonzero_products, s.b[i][p], dual.eta[i][p]);
      accumulate(ledger.payment, ledger.nonzero_products, dual.beta[i][p], mech.payment(p, i));
      for (std::size_t j = 0; j < m; ++j) {
        accumulate(ledger.allocation, ledger.nonzero_products, dual.alpha[i][j * P + p], mech.x(p, i, j));
      }
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    for (ProfileId p = 0; p < P; ++p) accumulate(ledger.supply, ledger.nonzero_products, s.c[j][p], dual.xi[j][p]);
  }
  ledger.primal_objective = mech.revenue(inst);
  ledger.dual_objective = dual.objective();
  return ledger;
}

CsLedger check_cs_bayes(const Instance& inst, const Mechanism& mechanism, const DualSolutionBayes& dual_in) {
  Mechanism mech = mechanism;
  mech.form = Form::Bayesian;
  require_feasible_primal(inst, mech);
  const PrimalSlacks s = mechanism_slacks(inst, mech);
  const DualSolutionBayes dual = feasible_dual_with_slacks(inst, dual_in);

  const std::size_t n = inst.buyers(), m = inst.items(), P = inst.profile_count();
  CsLedger ledger;
  ledger.form = Form::Bayesian;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = inst.support_size(i);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t d = 0; d < k; ++d) {
        if (d != a) accumulate(ledger.incentive, ledger.nonzero_products, s.a[i][a * k + d], dual.zeta[i][a * k + d]);
      }
      accumulate(ledger.participation, ledger.nonzero_products, s.b[i][a], dual.eta[i][a]);
    }
    for (ProfileId p = 0; p < P; ++p) {
      accumulate(ledger.payment, ledger.nonzero_products, dual.beta[i][p], mech.payment(p, i));
      for (std::size_t j = 0; j < m; ++j) {
        accumulate(ledger.allocation, ledger.nonzero_products, dual.alpha[i][j * P + p], mech.x(p, i, j));
      }
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    for (ProfileId p = 0; p < P; ++p) accumulate(ledger.supply, ledger.nonzero_products, s.c[j][p], dual.xi[j][p]);
  }
  ledger.primal_objective = mech.revenue(inst);
  ledger.dual_objective = dual.objective();
  return ledger;
}

RegularityReport check_regular_ds(const Instance& inst, const DualSolutionDS& dual) {
  RegularityReport r;
  auto fail = [&](bool& flag, const std::string& msg) {
    if (r.first_violation.empty()) r.first_violation = msg;
    flag = false;
  };
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    const auto zero = inst.zero_type(i);
    if (!zero) fail(r.source_condition, "buyer " + std::to_string(i) + " has no zero type");
    for (ProfileId p = 0; p < inst.profile_count(); ++p) {
      const Rational& rest = inst.others_mass(p, i);
      if (is_zero(rest)) {
        for (std::size_t j = 0; j < inst.items(); ++j) {
          if (!is_zero(dual.phi(inst, i, j, p))) {
            fail(r.virtual_condition, "phi nonzero on a massless slice, " + where(inst, i, p));
            break;
          }
        }
      }
      if (zero) {
        const bool at_zero = inst.type_of(p, i) == *zero;
        if (at_zero ? dual.eta[i][p] != rest : !is_zero(dual.eta[i][p])) {
          fail(r.source_condition, "eta off its regular value, " + where(inst, i, p));
        }
      }
      if (dual.psi(inst, i, p) != inst.mass(p)) fail(r.transport_condition, "psi != mu, " + where(inst, i, p));
    }
  }
  return r;
}

RegularityReport check_regular_bayes(const Instance& inst, const DualSolutionBayes& dual) {
  RegularityReport r;
  auto fail = [&](bool& flag, const std::string& msg) {
    if (r.first_violation.empty()) r.first_violation = msg;
    flag = false;
  };
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    const std::size_t k = inst.support_size(i);
    const auto zero = inst.zero_type(i);
    if (!zero) fail(r.source_condition, "buyer " + std::to_string(i) + " has no zero type");
    for (std::size_t a = 0; a < k && zero; ++a) {
      const Rational expected = a == *zero ? Rational(1) : Rational(0);
      if (dual.eta[i][a] != expected) {
        fail(r.source_condition, "etabar off its regular value, buyer " + std::to_string(i) + " type " + std::to_string(a));
      }
    }
    RationalVector psis(k);
    std::vector<RationalVector> phis(k, RationalVector(inst.items()));
    for (std::size_t a = 0; a < k; ++a) {
      psis[a] = dual.psi(inst, i, a);
      for (std::size_t j = 0; j < inst.items(); ++j) phis[a][j] = dual.phi(inst, i, j, a);
    }
    for (ProfileId p = 0; p < inst.profile_count(); ++p) {
      const std::size_t a = inst.type_of(p, i);
      const Rational& rest = inst.others_mass(p, i);
      if (is_zero(rest)) {
        for (std::size_t j = 0; j < inst.items(); ++j) {
          if (!is_zero(rest * phis[a][j])) {
            fail(r.virtual_condition, "expected virtual value nonzero on a massless slice, " + where(inst, i, p));
          }
        }
      }
      if (rest * psis[a] != inst.mass(p)) {
        fail(r.transport_condition, "mu_-i psibar != mu, " + where(inst, i, p));
      }
    }
  }
  return r;
}

namespace {

void require_zero_types(const Instance& inst) {
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    if (!inst.zero_type(i)) throw Error(ErrorCode::MissingZeroType, "buyer " + std::to_string(i));
  }
}

}  // namespace

DualSolutionDS regularize_ds(const Instance& inst, const Mechanism& mechanism, const DualSolutionDS& dual) {
  require_zero_types(inst);
  const CsLedger ledger = check_cs_ds(inst, mechanism, dual);
  if (!is_zero(ledger.gap())) {
    throw Error(ErrorCode::NotOptimal, "duality gap " + to_string(ledger.gap()));
  }
  DualSolutionDS base = dual;
  base.update_slacks(inst);
  if (check_regular_ds(inst, base).ok()) return base;

  const std::size_t P = inst.profile_count();
  // Clear the multipliers of every massless slice v_{-i}.
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    const std::size_t k = inst.support_size(i);
    for (ProfileId p = 0; p < P; ++p) {
      if (!is_zero(inst.others_mass(p, i))) continue;
      for (std::size_t d = 0; d < k; ++d) base.zeta[i][p * k + d] = 0;
      base.eta[i][p] = 0;
    }
  }
  base.update_slacks(inst);

  // Route eta_i(v) into zeta_i(v_i, 0) and beta_i(v) into zeta_i(0, v_i),
  // then put all participation weight on the zero type.
  DualSolutionDS out = base;
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    const std::size_t k = inst.support_size(i);
    const std::size_t z = *inst.zero_type(i);
    for (ProfileId p = 0; p < P; ++p) {
      const std::size_t vi = inst.type_of(p, i);
      if (vi == z) {
        out.eta[i][p] = inst.others_mass(p, i);
        continue;
      }
      out.zeta[i][p * k + z] += base.eta[i][p];
      out.zeta[i][inst.with_type(p, i, z) * k + vi] += base.beta[i][p];
      out.eta[i][p] = 0;
    }
  }
  out.update_slacks(inst);

  std::string why;
  if (!out.is_feasible(inst, &why)) throw Error(ErrorCode::SolverFailure, "regularized dual infeasible: " + why);
  if (out.objective() != dual.objective()) throw Error(ErrorCode::SolverFailure, "regularization moved the objective");
  const auto report = check_regular_ds(inst, out);
  if (!report.ok()) throw Error(ErrorCode::SolverFailure, "regularization incomplete: " + report.first_violation);
  return out;
}

DualSolutionBayes regularize_bayes(const Instance& inst, const Mechanism& mechanism, const DualSolutionBayes& dual) {
  require_zero_types(inst);
  const CsLedger ledger = check_cs_bayes(inst, mechanism, dual);
  if (!is_zero(ledger.gap())) {
    throw Error(ErrorCode::NotOptimal, "duality gap " + to_string(ledger.gap()));
  }
  DualSolutionBayes base = dual;
  base.update_slacks(inst);
  if (check_regular_bayes(inst, base).ok()) return base;

  DualSolutionBayes out = base;
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    const std::size_t k = inst.support_size(i);
    const std::size_t z = *inst.zero_type(i);
    for (std::size_t a = 0; a < k; ++a) {
      if (a == z) {
        out.eta[i][a] = 1;
        continue;
      }
      // psibar - mu_i is the per-type excess behind every beta_i(a, v_{-i}).
      const Rational excess = base.psi(inst, i, a) - inst.prob(i, a);
      out.zeta[i][a * k + z] += base.eta[i][a];
      out.zeta[i][z * k + a] += excess;
      out.eta[i][a] = 0;
    }
  }
  out.update_slacks(inst);

  std::string why;
  if (!out.is_feasible(inst, &why)) throw Error(ErrorCode::SolverFailure, "regularized dual infeasible: " + why);
  if (out.objective() != dual.objective()) throw Error(ErrorCode::SolverFailure, "regularization moved the objective");
  const auto report = check_regular_bayes(inst, out);
  if (!report.ok()) throw Error(ErrorCode::SolverFailure, "regularization incomplete: " + report.first_violation);
  return out;
}

LinearProgram regular_optimal_face_ds(const Instance& inst, const Rational& drev) {
  const std::size_t n = inst.buyers(), m = inst.items(), P = inst.profile_count();
  for (std::size_t i = 0; i < n; ++i) {
    if (!inst.zero_type(i)) throw Error(ErrorCode::MissingZeroType, "buyer " + std::to_string(i));
  }
  LinearProgram lp = build_dual_dslp(inst);
  const std::size_t base_rows = lp.rows();
  auto negated = [](std::vector<LpEntry> row) {
    for (LpEntry& e : row) e.coef = -e.coef;
    return row;
  };

  std::vector<LpEntry> total;
  for (std::size_t j = 0; j < m; ++j) {
    for (ProfileId p = 0; p < P; ++p) total.push_back({lp.column_index(labels::xi(inst, j, p)), Rational(-1)});
  }
  lp.add_row("objective", std::move(total), -drev);

  for (ProfileId p = 0; p < P; ++p) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t pay_row = P * n * m + p * n + i;
      if (pay_row >= base_rows || lp.row_label(pay_row) != labels::pay(inst, i, p)) {
        throw Error(ErrorCode::SolverFailure, "unexpected Dual-DSLP row layout");
      }
      lp.add_row("psi_eq[" + std::to_string(i) + "," + inst.profile_label(p) + "]", negated(lp.row(pay_row)),
                 -lp.rhs(pay_row));

      const std::size_t eta = lp.column_index(labels::eta(inst, i, p));
      const std::string tag = std::to_string(i) + "," + inst.profile_label(p);
      const Rational target = inst.type_of(p, i) == *inst.zero_type(i) ? inst.others_mass(p, i) : Rational(0);
      lp.add_row("eta_hi[" + tag + "]", {{eta, Rational(-1)}}, -target);
      if (sgn(target) > 0) lp.add_row("eta_lo[" + tag + "]", {{eta, Rational(1)}}, target);

      if (sgn(inst.others_mass(p, i)) > 0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        // The x row reads xi - phi >= 0; dropping xi leaves -phi.
        const std::size_t x_row = (p * n + i) * m + j;
        const std::size_t xi = lp.column_index(labels::xi(inst, j, p));
        std::vector<LpEntry> minus_phi;
        for (const LpEntry& e : lp.row(x_row)) {
          if (e.column != xi) minus_phi.push_back(e);
        }
        const std::string row_tag = std::to_string(i) + "," + std::to_string(j) + "," + inst.profile_label(p);
        lp.add_row("phi_lo[" + row_tag + "]", negated(minus_phi), Rational(0));
        lp.add_row("phi_hi[" + row_tag + "]", std::move(minus_phi), Rational(0));
      }
    }
  }
  for (std::size_t c = 0; c < lp.columns(); ++c) lp.set_objective(c, Rational(0));
  return lp;
}

DualSolutionDS min_flow_regular_dual_ds(const Instance& inst, const Rational& drev, const SolveOptions& options) {
  LinearProgram lp = regular_optimal_face_ds(inst, drev);
  for (std::size_t c = 0; c < lp.columns(); ++c) {
    if (lp.column_label(c).rfind("zeta[", 0) == 0) lp.set_objective(c, Rational(1));
  }
  const LpCertificate cert = solve(lp, options);
  if (cert.status != LpStatus::Optimal) {
    throw Error(ErrorCode::SolverFailure, "no regular dual attains objective " + to_string(drev));
  }
  DualSolutionDS out = dual_from_dual_dslp(inst, lp, cert);
  const RegularityReport regular = check_regular_ds(inst, out);
  if (!regular.ok()) throw Error(ErrorCode::SolverFailure, "min-flow dual not regular: " + regular.first_violation);
  if (out.objective() != drev) throw Error(ErrorCode::SolverFailure, "min-flow dual objective moved");
  return out;
}

VirtualValueTable::VirtualValueTable(const Instance& inst, Form form)
    : form_(form), items_(inst.items()), profiles_(inst.profile_count()) {
  for (std::size_t i = 0; i < inst.buyers(); ++i) types_.push_back(inst.support_size(i));
  entries_.resize(inst.buyers());
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    entries_[i].resize(form == Form::DS ? items_ * profiles_ : items_ * types_[i]);
  }
}

const VirtualValue& VirtualValueTable::at(const Instance& inst, std::size_t i, std::size_t j, ProfileId p) const {
  if (form_ == Form::DS) return entries_[i][j * profiles_ + p];
  return entries_[i][j * types_[i] + inst.type_of(p, i)];
}

VirtualValue& VirtualValueTable::at(const Instance& inst, std::size_t i, std::size_t j, ProfileId p) {
  if (form_ == Form::DS) return entries_[i][j * profiles_ + p];
  return entries_[i][j * types_[i] + inst.type_of(p, i)];
}

const VirtualValue& VirtualValueTable::at_type(std::size_t i, std::size_t j, std::size_t type) const {
  if (form_ != Form::Bayesian) throw Error(ErrorCode::DimensionMismatch, "per-type access needs a Bayesian table");
  return entries_[i][j * types_[i] + type];
}

VirtualValue& VirtualValueTable::at_type(std::size_t i, std::size_t j, std::size_t type) {
  if (form_ != Form::Bayesian) throw Error(ErrorCode::DimensionMismatch, "per-type access needs a Bayesian table");
  return entries_[i][j * types_[i] + type];
}

VirtualValueTable virtual_values_ds(const Instance& inst, const DualSolutionDS& dual) {
  const auto report = check_regular_ds(inst, dual);
  if (!report.ok()) throw Error(ErrorCode::NotRegular, report.first_violation);
  VirtualValueTable table(inst, Form::DS);
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    const std::size_t k = inst.support_size(i);
    for (ProfileId p = 0; p < inst.profile_count(); ++p) {
      const std::size_t vi = inst.type_of(p, i);
      const Rational& mu = inst.mass(p);
      for (std::size_t j = 0; j < inst.items(); ++j) {
        VirtualValue& entry = table.at(inst, i, j, p);
        if (is_zero(inst.others_mass(p, i))) {
          entry = {Rational(0), false};
        } else if (is_zero(mu)) {
          if (!inst.is_zero_type(i, vi)) {
            throw Error(ErrorCode::ZeroMassNonzeroType, where(inst, i, p));
          }
          entry = VirtualValue::minus_infinity();
        } else {
          const Rational& own = inst.value(i, vi, j);
          Rational correction = 0;
          for (std::size_t d = 0; d < k; ++d) {
            if (d == vi) continue;
            correction += dual.zeta[i][inst.with_type(p, i, d) * k + vi] * (own - inst.value(i, d, j));
          }
          entry = {own + correction / mu, false};
        }
      }
    }
  }
  return table;
}

VirtualValueTable virtual_values_bayes(const Instance& inst, const DualSolutionBayes& dual) {
  const auto report = check_regular_bayes(inst, dual);
  if (!report.ok()) throw Error(ErrorCode::NotRegular, report.first_violation);
  VirtualValueTable table(inst, Form::Bayesian);
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    const std::size_t k = inst.support_size(i);
    for (std::size_t a = 0; a < k; ++a) {
      const Rational& mu = inst.prob(i, a);
      for (std::size_t j = 0; j < inst.items(); ++j) {
        VirtualValue& entry = table.at_type(i, j, a);
        if (is_zero(mu)) {
          if (!inst.is_zero_type(i, a)) {
            throw Error(ErrorCode::ZeroMassNonzeroType, "buyer " + std::to_string(i) + " type " + std::to_string(a));
          }
          entry = VirtualValue::minus_infinity();
          continue;
        }
        const Rational& own = inst.value(i, a, j);
        Rational correction = 0;
        for (std::size_t d = 0; d < k; ++d) {
          if (d != a) correction += dual.zeta[i][d * k + a] * (own - inst.value(i, d, j));
        }
        entry = {own + correction / mu, false};
      }
    }
  }
  return table;
}

VwmReport check_vwm(const Instance& inst, const Mechanism& mech, const VirtualValueTable& table) {
  VwmReport report;
  for (ProfileId p = 0; p < inst.profile_count(); ++p) {
    if (is_zero(inst.mass(p))) continue;
    ++report.checked_profiles;
    for (std::size_t j = 0; j < inst.items(); ++j) {
      VirtualValue best = table.at(inst, 0, j, p);
      for (std::size_t i = 1; i < inst.buyers(); ++i) {
        if (best < table.at(inst, i, j, p)) best = table.at(inst, i, j, p);
      }
      const std::string tag = "item " + std::to_string(j) + " at profile " + inst.profile_label(p);
      for (std::size_t i = 0; i < inst.buyers(); ++i) {
        if (sgn(mech.x(p, i, j)) <= 0) continue;
        const VirtualValue& phi = table.at(inst, i, j, p);
        if (!(phi == best)) {
          report.violations.push_back(tag + ": buyer " + std::to_string(i) + " allocated with phi " + phi.str() +
                                      " below the maximum " + best.str());
        }
        if (phi.neg_inf || sgn(phi.value) < 0) {
          report.violations.push_back(tag + ": buyer " + std::to_string(i) + " allocated with negative phi " + phi.str());
        }
      }
      const Rational s = mech.supply(p, j);
      if (s < 1 && !best.nonpositive()) {
        report.violations.push_back(tag + ": not fully allocated while max phi is " + best.str());
      }
      if (sgn(s) > 0 && s < 1 && !(best == VirtualValue{Rational(0), false})) {
        report.violations.push_back(tag + ": partially allocated while max phi is " + best.str());
      }
    }
  }
  return report;
}

UbvvReport check_ubvv(const VirtualValueTable& table, const Instance& inst) {
  UbvvReport report;
  for (ProfileId p = 0; p < inst.profile_count(); ++p) {
    if (is_zero(inst.mass(p))) continue;
    for (std::size_t i = 0; i < inst.buyers(); ++i) {
      const std::size_t vi = inst.type_of(p, i);
      for (std::size_t j = 0; j < inst.items(); ++j) {
        ++report.checked;
        const VirtualValue& phi = table.at(inst, i, j, p);
        if (phi.neg_inf || phi.value <= inst.value(i, vi, j)) continue;
        ++report.violations;
        report.findings.push_back("phi " + phi.str() + " exceeds value " + to_string(inst.value(i, vi, j)) + " for item " +
                                  std::to_string(j) + ", " + where(inst, i, p));
      }
    }
  }
  return report;
}

}  // namespace vva
