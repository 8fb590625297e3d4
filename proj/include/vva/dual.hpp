#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vva/instance.hpp"
#include "vva/rational.hpp"

namespace vva {

// Multipliers of the dominant-strategy program.
//   zeta[i][p * |V_i| + d]  multiplies "type v_i (buyer i's type in p) does not
//                           gain by reporting d against v_{-i}"; diagonal unused
//   eta[i][p]               ex-post participation of buyer i at p
//   xi[j][p]                supply of item j at p
// alpha[i][j * P + p] and beta[i][p] are the dual slacks, filled by
// update_slacks().
struct DualSolutionDS {
  std::vector<RationalVector> zeta;
  std::vector<RationalVector> eta;
  std::vector<RationalVector> xi;
  std::vector<RationalVector> alpha;
  std::vector<RationalVector> beta;

  static DualSolutionDS zero(const Instance& instance);

  Rational& zeta_at(const Instance& inst, std::size_t i, ProfileId p, std::size_t dev) {
    return zeta[i][p * inst.support_size(i) + dev];
  }
  const Rational& zeta_at(const Instance& inst, std::size_t i, ProfileId p, std::size_t dev) const {
    return zeta[i][p * inst.support_size(i) + dev];
  }

  // phi_i^j(v) = eta_i(v) v_i^j + sum_{v'} (zeta(v_i,v') v_i^j - zeta(v',v_i) v'^j)
  Rational phi(const Instance& inst, std::size_t i, std::size_t j, ProfileId p) const;
  // psi_i(v) = eta_i(v) + sum_{v'} (zeta(v_i,v') - zeta(v',v_i))
  Rational psi(const Instance& inst, std::size_t i, ProfileId p) const;

  // alpha = xi - phi, beta = psi - mu.
  void update_slacks(const Instance& inst);
  Rational objective() const;
  // Nonnegativity of all multipliers and slacks (recomputed, not trusted).
  bool is_feasible(const Instance& inst, std::string* why = nullptr) const;

  bool operator==(const DualSolutionDS&) const = default;
};

// Multipliers of the Bayesian program.
//   zeta[i][a * |V_i| + d], eta[i][a]   interim constraints of buyer i, type a
//   xi[j][p]                            supply
// alpha[i][j * P + p] = xi^j(v) - mu_{-i}(v_{-i}) phibar_i^j(v_i)
// beta[i][p]          = mu_{-i}(v_{-i}) psibar_i(v_i) - mu(v)
struct DualSolutionBayes {
  std::vector<RationalVector> zeta;
  std::vector<RationalVector> eta;
  std::vector<RationalVector> xi;
  std::vector<RationalVector> alpha;
  std::vector<RationalVector> beta;

  static DualSolutionBayes zero(const Instance& instance);

  Rational& zeta_at(const Instance& inst, std::size_t i, std::size_t a, std::size_t dev) {
    return zeta[i][a * inst.support_size(i) + dev];
  }
  const Rational& zeta_at(const Instance& inst, std::size_t i, std::size_t a, std::size_t dev) const {
    return zeta[i][a * inst.support_size(i) + dev];
  }

  Rational phi(const Instance& inst, std::size_t i, std::size_t j, std::size_t type) const;
  Rational psi(const Instance& inst, std::size_t i, std::size_t type) const;

  void update_slacks(const Instance& inst);
  Rational objective() const;
  bool is_feasible(const Instance& inst, std::string* why = nullptr) const;

  bool operator==(const DualSolutionBayes&) const = default;
};

}  // namespace vva
