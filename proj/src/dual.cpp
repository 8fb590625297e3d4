#include "vva/dual.hpp"

namespace vva {

namespace {

bool all_nonnegative(const std::vector<RationalVector>& family) {
  for (const auto& v : family) {
    for (const auto& q : v) {
      if (sgn(q) < 0) return false;
    }
  }
  return true;
}

bool check_families(std::initializer_list<std::pair<const std::vector<RationalVector>*, const char*>> families,
                    std::string* why) {
  for (const auto& [family, name] : families) {
    if (!all_nonnegative(*family)) {
      if (why) *why = std::string("negative ") + name;
      return false;
    }
  }
  return true;
}

}  // namespace

DualSolutionDS DualSolutionDS::zero(const Instance& inst) {
  const std::size_t n = inst.buyers(), m = inst.items(), P = inst.profile_count();
  DualSolutionDS d;
  d.zeta.resize(n);
  d.eta.assign(n, RationalVector(P, Rational(0)));
  d.xi.assign(m, RationalVector(P, Rational(0)));
  d.alpha.assign(n, RationalVector(m * P, Rational(0)));
  d.beta.assign(n, RationalVector(P, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) d.zeta[i].assign(P * inst.support_size(i), Rational(0));
  return d;
}

Rational DualSolutionDS::phi(const Instance& inst, std::size_t i, std::size_t j, ProfileId p) const {
  const std::size_t k = inst.support_size(i);
  const std::size_t vi = inst.type_of(p, i);
  const Rational& own = inst.value(i, vi, j);
  Rational out = eta[i][p] * own;
  for (std::size_t d = 0; d < k; ++d) {
    if (d == vi) continue;
    out += zeta[i][p * k + d] * own;
    out -= zeta[i][inst.with_type(p, i, d) * k + vi] * inst.value(i, d, j);
  }
  return out;
}

Rational DualSolutionDS::psi(const Instance& inst, std::size_t i, ProfileId p) const {
  const std::size_t k = inst.support_size(i);
  const std::size_t vi = inst.type_of(p, i);
  Rational out = eta[i][p];
  for (std::size_t d = 0; d < k; ++d) {
    if (d == vi) continue;
    out += zeta[i][p * k + d];
    out -= zeta[i][inst.with_type(p, i, d) * k + vi];
  }
  return out;
}

void DualSolutionDS::update_slacks(const Instance& inst) {
  const std::size_t n = inst.buyers(), m = inst.items(), P = inst.profile_count();
  alpha.assign(n, RationalVector(m * P));
  beta.assign(n, RationalVector(P));
  for (std::size_t i = 0; i < n; ++i) {
    for (ProfileId p = 0; p < P; ++p) {
      for (std::size_t j = 0; j < m; ++j) alpha[i][j * P + p] = xi[j][p] - phi(inst, i, j, p);
      beta[i][p] = psi(inst, i, p) - inst.mass(p);
    }
  }
}

Rational DualSolutionDS::objective() const {
  Rational total = 0;
  for (const auto& row : xi) {
    for (const auto& q : row) total += q;
  }
  return total;
}

bool DualSolutionDS::is_feasible(const Instance& inst, std::string* why) const {
  DualSolutionDS copy = *this;
  copy.update_slacks(inst);
  return check_families({{&copy.zeta, "zeta"},
                         {&copy.eta, "eta"},
                         {&copy.xi, "xi"},
                         {&copy.alpha, "alpha (xi - phi)"},
                         {&copy.beta, "beta (psi - mu)"}},
                        why);
}

DualSolutionBayes DualSolutionBayes::zero(const Instance& inst) {
  const std::size_t n = inst.buyers(), m = inst.items(), P = inst.profile_count();
  DualSolutionBayes d;
  d.zeta.resize(n);
  d.eta.resize(n);
  d.xi.assign(m, RationalVector(P, Rational(0)));
  d.alpha.assign(n, RationalVector(m * P, Rational(0)));
  d.beta.assign(n, RationalVector(P, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = inst.support_size(i);
    d.zeta[i].assign(k * k, Rational(0));
    d.eta[i].assign(k, Rational(0));
  }
  return d;
}

Rational DualSolutionBayes::phi(const Instance& inst, std::size_t i, std::size_t j, std::size_t a) const {
  const std::size_t k = inst.support_size(i);
  const Rational& own = inst.value(i, a, j);
  Rational out = eta[i][a] * own;
  for (std::size_t d = 0; d < k; ++d) {
    if (d == a) continue;
    out += zeta[i][a * k + d] * own;
    out -= zeta[i][d * k + a] * inst.value(i, d, j);
  }
  return out;
}

Rational DualSolutionBayes::psi(const Instance& inst, std::size_t i, std::size_t a) const {
  const std::size_t k = inst.support_size(i);
  Rational out = eta[i][a];
  for (std::size_t d = 0; d < k; ++d) {
    if (d == a) continue;
    out += zeta[i][a * k + d];
    out -= zeta[i][d * k + a];
  }
  return out;
}

void DualSolutionBayes::update_slacks(const Instance& inst) {
  const std::size_t n = inst.buyers(), m = inst.items(), P = inst.profile_count();
  alpha.assign(n, RationalVector(m * P));
  beta.assign(n, RationalVector(P));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = inst.support_size(i);
    std::vector<RationalVector> phis(k, RationalVector(m));
    RationalVector psis(k);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t j = 0; j < m; ++j) phis[a][j] = phi(inst, i, j, a);
      psis[a] = psi(inst, i, a);
    }
    for (ProfileId p = 0; p < P; ++p) {
      const std::size_t a = inst.type_of(p, i);
      const Rational& w = inst.others_mass(p, i);
      for (std::size_t j = 0; j < m; ++j) alpha[i][j * P + p] = xi[j][p] - w * phis[a][j];
      beta[i][p] = w * psis[a] - inst.mass(p);
    }
  }
}

Rational DualSolutionBayes::objective() const {
  Rational total = 0;
  for (const auto& row : xi) {
    for (const auto& q : row) total += q;
  }
  return total;
}

bool DualSolutionBayes::is_feasible(const Instance& inst, std::string* why) const {
  DualSolutionBayes copy = *this;
  copy.update_slacks(inst);
  return check_families({{&copy.zeta, "zeta"},
                         {&copy.eta, "eta"},
                         {&copy.xi, "xi"},
                         {&copy.alpha, "alpha (xi - mu_-i phibar)"},
                         {&copy.beta, "beta (mu_-i psibar - mu)"}},
                        why);
}

}  // namespace vva
