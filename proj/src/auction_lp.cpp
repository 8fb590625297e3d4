#include "vva/auction_lp.hpp"

#include "vva/error.hpp"

namespace vva {

namespace labels {

std::string x(const Instance& inst, std::size_t i, std::size_t j, ProfileId p) {
  return "x[" + std::to_string(i) + "," + std::to_string(j) + "," + inst.profile_label(p) + "]";
}
std::string pay(const Instance& inst, std::size_t i, ProfileId p) {
  return "p[" + std::to_string(i) + "," + inst.profile_label(p) + "]";
}
std::string ic(const Instance& inst, std::size_t i, ProfileId p, std::size_t dev) {
  return "ic[" + std::to_string(i) + "," + inst.profile_label(p) + "," + std::to_string(dev) + "]";
}
std::string ir(const Instance& inst, std::size_t i, ProfileId p) {
  return "ir[" + std::to_string(i) + "," + inst.profile_label(p) + "]";
}
std::string bic(std::size_t i, std::size_t type, std::size_t dev) {
  return "bic[" + std::to_string(i) + "," + std::to_string(type) + "," + std::to_string(dev) + "]";
}
std::string bir(std::size_t i, std::size_t type) {
  return "bir[" + std::to_string(i) + "," + std::to_string(type) + "]";
}
std::string supply(const Instance& inst, std::size_t j, ProfileId p) {
  return "supply[" + std::to_string(j) + "," + inst.profile_label(p) + "]";
}
std::string zeta(const Instance& inst, std::size_t i, ProfileId p, std::size_t dev) {
  return "zeta[" + std::to_string(i) + "," + inst.profile_label(p) + "," + std::to_string(dev) + "]";
}
std::string eta(const Instance& inst, std::size_t i, ProfileId p) {
  return "eta[" + std::to_string(i) + "," + inst.profile_label(p) + "]";
}
std::string zeta_bar(std::size_t i, std::size_t type, std::size_t dev) {
  return "zetabar[" + std::to_string(i) + "," + std::to_string(type) + "," + std::to_string(dev) + "]";
}
std::string eta_bar(std::size_t i, std::size_t type) {
  return "etabar[" + std::to_string(i) + "," + std::to_string(type) + "]";
}
std::string xi(const Instance& inst, std::size_t j, ProfileId p) {
  return "xi[" + std::to_string(j) + "," + inst.profile_label(p) + "]";
}

}  // namespace labels

namespace {

struct PrimalColumns {
  std::size_t n, m, P;
  std::size_t x(ProfileId p, std::size_t i, std::size_t j) const { return (p * n + i) * m + j; }
  std::size_t pay(ProfileId p, std::size_t i) const { return n * m * P + p * n + i; }
  std::size_t count() const { return n * m * P + n * P; }
};

PrimalColumns primal_columns(const Instance& inst) {
  return {inst.buyers(), inst.items(), inst.profile_count()};
}

void add_primal_columns(const Instance& inst, LinearProgram& lp) {
  const auto cols = primal_columns(inst);
  for (ProfileId p = 0; p < cols.P; ++p) {
    for (std::size_t i = 0; i < cols.n; ++i) {
      for (std::size_t j = 0; j < cols.m; ++j) lp.add_column(labels::x(inst, i, j, p));
    }
  }
  for (ProfileId p = 0; p < cols.P; ++p) {
    for (std::size_t i = 0; i < cols.n; ++i) lp.add_column(labels::pay(inst, i, p), inst.mass(p));
  }
}

// Appends w * (u_i at report q with true value of buyer i in p) to a row, i.e.
// w * (v . x_i(q) - p_i(q)).
void add_utility(std::vector<LpEntry>& row, const PrimalColumns& cols, const RationalVector& value,
                 ProfileId q, std::size_t i, const Rational& w) {
  for (std::size_t j = 0; j < cols.m; ++j) {
    if (!is_zero(value[j])) row.push_back({cols.x(q, i, j), w * value[j]});
  }
  row.push_back({cols.pay(q, i), -w});
}

void add_supply_rows(const Instance& inst, LinearProgram& lp) {
  const auto cols = primal_columns(inst);
  for (std::size_t j = 0; j < cols.m; ++j) {
    for (ProfileId p = 0; p < cols.P; ++p) {
      std::vector<LpEntry> row;
      for (std::size_t i = 0; i < cols.n; ++i) row.push_back({cols.x(p, i, j), Rational(1)});
      lp.add_row(labels::supply(inst, j, p), std::move(row), Rational(1));
    }
  }
}

void check_primal_labels(const Instance& inst, const LinearProgram& lp) {
  const auto cols = primal_columns(inst);
  if (lp.columns() != cols.count() || lp.sense() != Sense::Maximize) {
    throw Error(ErrorCode::LabelMismatch, "program does not have the auction primal's columns");
  }
  for (ProfileId p = 0; p < cols.P; ++p) {
    for (std::size_t i = 0; i < cols.n; ++i) {
      if (lp.column_label(cols.pay(p, i)) != labels::pay(inst, i, p)) {
        throw Error(ErrorCode::LabelMismatch, "unexpected column " + lp.column_label(cols.pay(p, i)));
      }
      for (std::size_t j = 0; j < cols.m; ++j) {
        if (lp.column_label(cols.x(p, i, j)) != labels::x(inst, i, j, p)) {
          throw Error(ErrorCode::LabelMismatch, "unexpected column " + lp.column_label(cols.x(p, i, j)));
        }
      }
    }
  }
}

void require_optimal(const LinearProgram& lp, const LpCertificate& cert) {
  if (cert.status != LpStatus::Optimal) {
    throw Error(ErrorCode::SolverFailure, std::string("certificate is ") + std::string(status_name(cert.status)));
  }
  if (cert.primal.size() != lp.columns() || cert.dual.size() != lp.rows()) {
    throw Error(ErrorCode::LabelMismatch, "certificate does not match the program");
  }
}

const Rational& row_value(const LinearProgram& lp, const LpCertificate& cert, const std::string& label) {
  try {
    return cert.dual[lp.row_index(label)];
  } catch (const Error&) {
    throw Error(ErrorCode::LabelMismatch, "program has no row " + label);
  }
}

const Rational& column_value(const LinearProgram& lp, const LpCertificate& cert, const std::string& label) {
  try {
    return cert.primal[lp.column_index(label)];
  } catch (const Error&) {
    throw Error(ErrorCode::LabelMismatch, "program has no column " + label);
  }
}

}  // namespace

LinearProgram build_dslp(const Instance& inst) {
  LinearProgram lp(Sense::Maximize);
  add_primal_columns(inst, lp);
  const auto cols = primal_columns(inst);
  for (std::size_t i = 0; i < cols.n; ++i) {
    const std::size_t k = inst.support_size(i);
    for (ProfileId p = 0; p < cols.P; ++p) {
      const std::size_t vi = inst.type_of(p, i);
      const RationalVector& value = inst.value(i, vi);
      for (std::size_t d = 0; d < k; ++d) {
        if (d == vi) continue;
        // u_i(d, v_{-i}; v_i) - u_i(v) <= 0
        std::vector<LpEntry> row;
        add_utility(row, cols, value, inst.with_type(p, i, d), i, Rational(1));
        add_utility(row, cols, value, p, i, Rational(-1));
        lp.add_row(labels::ic(inst, i, p, d), std::move(row), Rational(0));
      }
    }
  }
  for (std::size_t i = 0; i < cols.n; ++i) {
    for (ProfileId p = 0; p < cols.P; ++p) {
      std::vector<LpEntry> row;
      add_utility(row, cols, inst.value(i, inst.type_of(p, i)), p, i, Rational(-1));
      lp.add_row(labels::ir(inst, i, p), std::move(row), Rational(0));
    }
  }
  add_supply_rows(inst, lp);
  return lp;
}

LinearProgram build_blp(const Instance& inst) {
  LinearProgram lp(Sense::Maximize);
  add_primal_columns(inst, lp);
  const auto cols = primal_columns(inst);
  for (std::size_t i = 0; i < cols.n; ++i) {
    const std::size_t k = inst.support_size(i);
    const auto slices = inst.others_keys(i);
    for (std::size_t a = 0; a < k; ++a) {
      const RationalVector& value = inst.value(i, a);
      for (std::size_t d = 0; d < k; ++d) {
        if (d == a) continue;
        std::vector<LpEntry> row;
        for (ProfileId key : slices) {
          const ProfileId truth = inst.with_type(key, i, a);
          const Rational& w = inst.others_mass(truth, i);
          if (is_zero(w)) continue;
          add_utility(row, cols, value, inst.with_type(key, i, d), i, w);
          add_utility(row, cols, value, truth, i, -w);
        }
        lp.add_row(labels::bic(i, a, d), std::move(row), Rational(0));
      }
    }
  }
  for (std::size_t i = 0; i < cols.n; ++i) {
    const std::size_t k = inst.support_size(i);
    const auto slices = inst.others_keys(i);
    for (std::size_t a = 0; a < k; ++a) {
      std::vector<LpEntry> row;
      for (ProfileId key : slices) {
        const ProfileId truth = inst.with_type(key, i, a);
        const Rational& w = inst.others_mass(truth, i);
        if (is_zero(w)) continue;
        add_utility(row, cols, inst.value(i, a), truth, i, -w);
      }
      lp.add_row(labels::bir(i, a), std::move(row), Rational(0));
    }
  }
  add_supply_rows(inst, lp);
  return lp;
}

LinearProgram build_dual_dslp(const Instance& inst) {
  const std::size_t n = inst.buyers(), m = inst.items(), P = inst.profile_count();
  LinearProgram lp(Sense::Minimize);
  // zeta columns, indexed like DualSolutionDS::zeta (diagonal skipped).
  std::vector<std::vector<std::size_t>> zeta_col(n);
  std::vector<std::vector<std::size_t>> eta_col(n, std::vector<std::size_t>(P));
  std::vector<std::vector<std::size_t>> xi_col(m, std::vector<std::size_t>(P));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = inst.support_size(i);
    zeta_col[i].assign(P * k, 0);
    for (ProfileId p = 0; p < P; ++p) {
      for (std::size_t d = 0; d < k; ++d) {
        if (d == inst.type_of(p, i)) continue;
        zeta_col[i][p * k + d] = lp.add_column(labels::zeta(inst, i, p, d));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (ProfileId p = 0; p < P; ++p) eta_col[i][p] = lp.add_column(labels::eta(inst, i, p));
  }
  for (std::size_t j = 0; j < m; ++j) {
    for (ProfileId p = 0; p < P; ++p) xi_col[j][p] = lp.add_column(labels::xi(inst, j, p), Rational(1));
  }

  // One row per primal column, in primal column order.
  for (ProfileId p = 0; p < P; ++p) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = inst.support_size(i);
      const std::size_t vi = inst.type_of(p, i);
      for (std::size_t j = 0; j < m; ++j) {
        // xi^j(v) - phi_i^j(v) >= 0
        const Rational& own = inst.value(i, vi, j);
        std::vector<LpEntry> row{{xi_col[j][p], Rational(1)}, {eta_col[i][p], -own}};
        for (std::size_t d = 0; d < k; ++d) {
          if (d == vi) continue;
          row.push_back({zeta_col[i][p * k + d], -own});
          row.push_back({zeta_col[i][inst.with_type(p, i, d) * k + vi], inst.value(i, d, j)});
        }
        lp.add_row(labels::x(inst, i, j, p), std::move(row), Rational(0));
      }
    }
  }
  for (ProfileId p = 0; p < P; ++p) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = inst.support_size(i);
      const std::size_t vi = inst.type_of(p, i);
      // psi_i(v) >= mu(v)
      std::vector<LpEntry> row{{eta_col[i][p], Rational(1)}};
      for (std::size_t d = 0; d < k; ++d) {
        if (d == vi) continue;
        row.push_back({zeta_col[i][p * k + d], Rational(1)});
        row.push_back({zeta_col[i][inst.with_type(p, i, d) * k + vi], Rational(-1)});
      }
      lp.add_row(labels::pay(inst, i, p), std::move(row), inst.mass(p));
    }
  }
  return lp;
}

LinearProgram build_dual_blp(const Instance& inst) {
  const std::size_t n = inst.buyers(), m = inst.items(), P = inst.profile_count();
  LinearProgram lp(Sense::Minimize);
  std::vector<std::vector<std::size_t>> zeta_col(n);
  std::vector<std::vector<std::size_t>> eta_col(n);
  std::vector<std::vector<std::size_t>> xi_col(m, std::vector<std::size_t>(P));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = inst.support_size(i);
    zeta_col[i].assign(k * k, 0);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t d = 0; d < k; ++d) {
        if (d != a) zeta_col[i][a * k + d] = lp.add_column(labels::zeta_bar(i, a, d));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < inst.support_size(i); ++a) eta_col[i].push_back(lp.add_column(labels::eta_bar(i, a)));
  }
  for (std::size_t j = 0; j < m; ++j) {
    for (ProfileId p = 0; p < P; ++p) xi_col[j][p] = lp.add_column(labels::xi(inst, j, p), Rational(1));
  }

  for (ProfileId p = 0; p < P; ++p) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = inst.support_size(i);
      const std::size_t a = inst.type_of(p, i);
      const Rational& w = inst.others_mass(p, i);
      for (std::size_t j = 0; j < m; ++j) {
        // xi^j(v) - mu_{-i} phibar_i^j(v_i) >= 0
        const Rational& own = inst.value(i, a, j);
        std::vector<LpEntry> row{{xi_col[j][p], Rational(1)}, {eta_col[i][a], -w * own}};
        for (std::size_t d = 0; d < k; ++d) {
          if (d == a) continue;
          row.push_back({zeta_col[i][a * k + d], -w * own});
          row.push_back({zeta_col[i][d * k + a], w * inst.value(i, d, j)});
        }
        lp.add_row(labels::x(inst, i, j, p), std::move(row), Rational(0));
      }
    }
  }
  for (ProfileId p = 0; p < P; ++p) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = inst.support_size(i);
      const std::size_t a = inst.type_of(p, i);
      const Rational& w = inst.others_mass(p, i);
      // mu_{-i} psibar_i(v_i) >= mu(v)
      std::vector<LpEntry> row{{eta_col[i][a], w}};
      for (std::size_t d = 0; d < k; ++d) {
        if (d == a) continue;
        row.push_back({zeta_col[i][a * k + d], w});
        row.push_back({zeta_col[i][d * k + a], -w});
      }
      lp.add_row(labels::pay(inst, i, p), std::move(row), inst.mass(p));
    }
  }
  return lp;
}

Mechanism extract_mechanism(const Instance& inst, const LinearProgram& lp, const LpCertificate& cert, Form form) {
  check_primal_labels(inst, lp);
  require_optimal(lp, cert);
  const auto cols = primal_columns(inst);
  Mechanism mech = Mechanism::zero(inst, form);
  for (ProfileId p = 0; p < cols.P; ++p) {
    for (std::size_t i = 0; i < cols.n; ++i) {
      mech.payment(p, i) = cert.primal[cols.pay(p, i)];
      for (std::size_t j = 0; j < cols.m; ++j) mech.x(p, i, j) = cert.primal[cols.x(p, i, j)];
    }
  }
  std::vector<std::string> why;
  if (!is_feasible(inst, mech, &why)) {
    throw Error(ErrorCode::SolverFailure, "extracted mechanism is infeasible: " + why.front());
  }
  return mech;
}

DualSolutionDS extract_dual_ds(const Instance& inst, const LinearProgram& lp, const LpCertificate& cert) {
  check_primal_labels(inst, lp);
  require_optimal(lp, cert);
  DualSolutionDS dual = DualSolutionDS::zero(inst);
  const std::size_t P = inst.profile_count();
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    const std::size_t k = inst.support_size(i);
    for (ProfileId p = 0; p < P; ++p) {
      for (std::size_t d = 0; d < k; ++d) {
        if (d == inst.type_of(p, i)) continue;
        dual.zeta[i][p * k + d] = row_value(lp, cert, labels::ic(inst, i, p, d));
      }
      dual.eta[i][p] = row_value(lp, cert, labels::ir(inst, i, p));
    }
  }
  for (std::size_t j = 0; j < inst.items(); ++j) {
    for (ProfileId p = 0; p < P; ++p) dual.xi[j][p] = row_value(lp, cert, labels::supply(inst, j, p));
  }
  dual.update_slacks(inst);
  std::string why;
  if (!dual.is_feasible(inst, &why)) throw Error(ErrorCode::SolverFailure, "extracted dual is infeasible: " + why);
  return dual;
}

DualSolutionBayes extract_dual_bayes(const Instance& inst, const LinearProgram& lp, const LpCertificate& cert) {
  check_primal_labels(inst, lp);
  require_optimal(lp, cert);
  DualSolutionBayes dual = DualSolutionBayes::zero(inst);
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    const std::size_t k = inst.support_size(i);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t d = 0; d < k; ++d) {
        if (d != a) dual.zeta[i][a * k + d] = row_value(lp, cert, labels::bic(i, a, d));
      }
      dual.eta[i][a] = row_value(lp, cert, labels::bir(i, a));
    }
  }
  for (std::size_t j = 0; j < inst.items(); ++j) {
    for (ProfileId p = 0; p < inst.profile_count(); ++p) {
      dual.xi[j][p] = row_value(lp, cert, labels::supply(inst, j, p));
    }
  }
  dual.update_slacks(inst);
  std::string why;
  if (!dual.is_feasible(inst, &why)) throw Error(ErrorCode::SolverFailure, "extracted dual is infeasible: " + why);
  return dual;
}

DualSolutionDS dual_from_dual_dslp(const Instance& inst, const LinearProgram& lp, const LpCertificate& cert) {
  if (cert.status != LpStatus::Optimal || cert.primal.size() != lp.columns()) {
    throw Error(ErrorCode::LabelMismatch, "expected an optimal certificate of the explicit dual");
  }
  DualSolutionDS dual = DualSolutionDS::zero(inst);
  const std::size_t P = inst.profile_count();
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    const std::size_t k = inst.support_size(i);
    for (ProfileId p = 0; p < P; ++p) {
      for (std::size_t d = 0; d < k; ++d) {
        if (d == inst.type_of(p, i)) continue;
        dual.zeta[i][p * k + d] = column_value(lp, cert, labels::zeta(inst, i, p, d));
      }
      dual.eta[i][p] = column_value(lp, cert, labels::eta(inst, i, p));
    }
  }
  for (std::size_t j = 0; j < inst.items(); ++j) {
    for (ProfileId p = 0; p < P; ++p) dual.xi[j][p] = column_value(lp, cert, labels::xi(inst, j, p));
  }
  dual.update_slacks(inst);
  return dual;
}

DualSolutionBayes dual_from_dual_blp(const Instance& inst, const LinearProgram& lp, const LpCertificate& cert) {
  if (cert.status != LpStatus::Optimal || cert.primal.size() != lp.columns()) {
    throw Error(ErrorCode::LabelMismatch, "expected an optimal certificate of the explicit dual");
  }
  DualSolutionBayes dual = DualSolutionBayes::zero(inst);
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    const std::size_t k = inst.support_size(i);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t d = 0; d < k; ++d) {
        if (d != a) dual.zeta[i][a * k + d] = column_value(lp, cert, labels::zeta_bar(i, a, d));
      }
      dual.eta[i][a] = column_value(lp, cert, labels::eta_bar(i, a));
    }
  }
  for (std::size_t j = 0; j < inst.items(); ++j) {
    for (ProfileId p = 0; p < inst.profile_count(); ++p) {
      dual.xi[j][p] = column_value(lp, cert, labels::xi(inst, j, p));
    }
  }
  dual.update_slacks(inst);
  return dual;
}

DsSolution solve_ds(const Instance& inst, const SolveOptions& options) {
  DsSolution out{build_dslp(inst), {}, {}, {}};
  out.cert = solve(out.lp, options);
  out.mechanism = extract_mechanism(inst, out.lp, out.cert, Form::DS);
  out.dual = extract_dual_ds(inst, out.lp, out.cert);
  return out;
}

BayesSolution solve_bayes(const Instance& inst, const SolveOptions& options) {
  BayesSolution out{build_blp(inst), {}, {}, {}};
  out.cert = solve(out.lp, options);
  out.mechanism = extract_mechanism(inst, out.lp, out.cert, Form::Bayesian);
  out.dual = extract_dual_bayes(inst, out.lp, out.cert);
  return out;
}

Rational drev(const Instance& inst, const SolveOptions& options) {
  LpCertificate cert = solve(build_dslp(inst), options);
  if (cert.status != LpStatus::Optimal) throw Error(ErrorCode::SolverFailure, "DSLP not optimal");
  return cert.objective;
}

Rational brev(const Instance& inst, const SolveOptions& options) {
  LpCertificate cert = solve(build_blp(inst), options);
  if (cert.status != LpStatus::Optimal) throw Error(ErrorCode::SolverFailure, "BLP not optimal");
  return cert.objective;
}

std::optional<std::size_t> find_type(const Instance& inst, std::size_t buyer, const RationalVector& value) {
  for (std::size_t k = 0; k < inst.support_size(buyer); ++k) {
    if (inst.value(buyer, k) == value) return k;
  }
  return std::nullopt;
}

namespace {

void check_query(const Instance& inst, const Mechanism& mech, const std::vector<RationalVector>& query) {
  if (query.size() != inst.buyers() || mech.buyers != inst.buyers() || mech.profiles != inst.profile_count()) {
    throw Error(ErrorCode::DimensionMismatch, "query profile does not match the instance");
  }
  for (const auto& v : query) {
    if (v.size() != inst.items()) throw Error(ErrorCode::DimensionMismatch, "query value has the wrong length");
  }
}

}  // namespace

ExtendedOutcome extend_ds(const Instance& inst, const Mechanism& mech, const std::vector<RationalVector>& query) {
  check_query(inst, mech, query);
  const std::size_t n = inst.buyers(), m = inst.items();
  std::vector<std::optional<std::size_t>> in_support(n);
  std::size_t off = 0;
  for (std::size_t i = 0; i < n; ++i) {
    in_support[i] = find_type(inst, i, query[i]);
    if (!in_support[i]) ++off;
  }

  ExtendedOutcome out;
  out.report.assign(n, 0);
  out.excluded.assign(n, false);
  out.alloc.assign(n, RationalVector(m, Rational(0)));
  out.pay.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    const bool others_in_support = off == 0 || (off == 1 && !in_support[i]);
    if (!others_in_support) {
      out.excluded[i] = true;
      out.report[i] = inst.zero_type(i).value_or(0);
      continue;
    }
    // Any profile with the right v_{-i}; buyer i's coordinate is replaced below.
    ProfileId base = 0;
    {
      ProfileIndex idx;
      idx.index.assign(n, 0);
      for (std::size_t k = 0; k < n; ++k) {
        if (k != i) idx.index[k] = *in_support[k];
      }
      base = inst.profile_id(idx);
    }
    std::size_t report = 0;
    if (in_support[i]) {
      report = *in_support[i];
    } else {
      Rational best;
      for (std::size_t w = 0; w < inst.support_size(i); ++w) {
        Rational u = mech.utility(query[i], inst.with_type(base, i, w), i);
        if (w == 0 || u > best) {
          best = u;
          report = w;
        }
      }
    }
    const ProfileId q = inst.with_type(base, i, report);
    out.report[i] = report;
    for (std::size_t j = 0; j < m; ++j) out.alloc[i][j] = mech.x(q, i, j);
    out.pay[i] = mech.payment(q, i);
  }
  return out;
}

RationalVector interim_allocation(const Instance& inst, const Mechanism& mech, std::size_t i, std::size_t type) {
  RationalVector out(inst.items(), Rational(0));
  for (ProfileId key : inst.others_keys(i)) {
    const ProfileId q = inst.with_type(key, i, type);
    const Rational& w = inst.others_mass(q, i);
    if (is_zero(w)) continue;
    for (std::size_t j = 0; j < inst.items(); ++j) out[j] += w * mech.x(q, i, j);
  }
  return out;
}

Rational interim_payment(const Instance& inst, const Mechanism& mech, std::size_t i, std::size_t type) {
  Rational out = 0;
  for (ProfileId key : inst.others_keys(i)) {
    const ProfileId q = inst.with_type(key, i, type);
    out += inst.others_mass(q, i) * mech.payment(q, i);
  }
  return out;
}

InterimOutcome extend_bayes(const Instance& inst, const Mechanism& mech, const std::vector<RationalVector>& query) {
  check_query(inst, mech, query);
  const std::size_t n = inst.buyers();
  InterimOutcome out;
  out.report.assign(n, 0);
  out.alloc.resize(n);
  out.pay.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t report = 0;
    if (auto own = find_type(inst, i, query[i])) {
      report = *own;
    } else {
      Rational best;
      for (std::size_t w = 0; w < inst.support_size(i); ++w) {
        Rational u = dot(query[i], interim_allocation(inst, mech, i, w)) - interim_payment(inst, mech, i, w);
        if (w == 0 || u > best) {
          best = u;
          report = w;
        }
      }
    }
    out.report[i] = report;
    out.alloc[i] = interim_allocation(inst, mech, i, report);
    out.pay[i] = interim_payment(inst, mech, i, report);
  }
  return out;
}

}  // namespace vva
