#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vva/dual.hpp"
#include "vva/instance.hpp"
#include "vva/lp.hpp"
#include "vva/mechanism.hpp"

namespace vva {

// Column and row labels shared by the builders and extractors. Profiles are
// rendered as dot-separated support indices ("0.2.1").
namespace labels {
std::string x(const Instance& inst, std::size_t i, std::size_t j, ProfileId p);
std::string pay(const Instance& inst, std::size_t i, ProfileId p);
std::string ic(const Instance& inst, std::size_t i, ProfileId p, std::size_t dev);
std::string ir(const Instance& inst, std::size_t i, ProfileId p);
std::string bic(std::size_t i, std::size_t type, std::size_t dev);
std::string bir(std::size_t i, std::size_t type);
std::string supply(const Instance& inst, std::size_t j, ProfileId p);
std::string zeta(const Instance& inst, std::size_t i, ProfileId p, std::size_t dev);
std::string eta(const Instance& inst, std::size_t i, ProfileId p);
std::string zeta_bar(std::size_t i, std::size_t type, std::size_t dev);
std::string eta_bar(std::size_t i, std::size_t type);
std::string xi(const Instance& inst, std::size_t j, ProfileId p);
}  // namespace labels

// Revenue maximization over DSIC + ex-post IR mechanisms. Columns: all
// x[i,j,v] (profile-major) then all p[i,v]. Rows: ic[i,v,d] for d != v_i,
// ir[i,v], supply[j,v].
LinearProgram build_dslp(const Instance& instance);
// Same columns; rows bic[i,a,d], bir[i,a] weighted by mu_{-i}, supply[j,v].
LinearProgram build_blp(const Instance& instance);
// Explicit dual programs (Minimize form) with columns zeta, eta, xi and one
// row per primal column.
LinearProgram build_dual_dslp(const Instance& instance);
LinearProgram build_dual_blp(const Instance& instance);

// Reads a mechanism from an optimal certificate of build_dslp/build_blp.
// Throws LabelMismatch if the program is not the matching builder's output.
Mechanism extract_mechanism(const Instance& instance, const LinearProgram& lp,
                            const LpCertificate& cert, Form form);
// Reads row multipliers of a primal certificate as a dual solution, with
// slacks filled in and feasibility re-verified.
DualSolutionDS extract_dual_ds(const Instance& instance, const LinearProgram& lp, const LpCertificate& cert);
DualSolutionBayes extract_dual_bayes(const Instance& instance, const LinearProgram& lp,
                                     const LpCertificate& cert);
// Reads the primal values of a solved explicit dual program.
DualSolutionDS dual_from_dual_dslp(const Instance& instance, const LinearProgram& lp, const LpCertificate& cert);
DualSolutionBayes dual_from_dual_blp(const Instance& instance, const LinearProgram& lp,
                                     const LpCertificate& cert);

struct DsSolution {
  LinearProgram lp;
  LpCertificate cert;
  Mechanism mechanism;
  DualSolutionDS dual;
};

struct BayesSolution {
  LinearProgram lp;
  LpCertificate cert;
  Mechanism mechanism;
  DualSolutionBayes dual;
};

DsSolution solve_ds(const Instance& instance, const SolveOptions& options = {});
BayesSolution solve_bayes(const Instance& instance, const SolveOptions& options = {});

Rational drev(const Instance& instance, const SolveOptions& options = {});
Rational brev(const Instance& instance, const SolveOptions& options = {});

// Outcome of an extended mechanism at a profile outside the support.
struct ExtendedOutcome {
  // Support index each buyer is treated as reporting.
  std::vector<std::size_t> report;
  // Buyers whose opponents are off-support are treated as the zero type and
  // receive nothing.
  std::vector<bool> excluded;
  std::vector<RationalVector> alloc;  // [i][j]
  RationalVector pay;                 // [i]
};

// Dominant-strategy extension. Buyer i's outcome: the mechanism at v when
// v is in the support; the best (lowest-index on ties) support report against
// v_{-i} when only v_i is off-support; nothing otherwise.
ExtendedOutcome extend_ds(const Instance& instance, const Mechanism& mechanism,
                          const std::vector<RationalVector>& query);

// Interim allocation and payment of buyer i reporting support type `type`.
RationalVector interim_allocation(const Instance& instance, const Mechanism& mechanism, std::size_t i,
                                  std::size_t type);
Rational interim_payment(const Instance& instance, const Mechanism& mechanism, std::size_t i, std::size_t type);

struct InterimOutcome {
  std::vector<std::size_t> report;
  std::vector<RationalVector> alloc;  // interim allocation per buyer
  RationalVector pay;                 // interim payment per buyer
};

// Bayesian extension: an off-support v_i reports the support type maximizing
// its interim utility (lowest index on ties).
InterimOutcome extend_bayes(const Instance& instance, const Mechanism& mechanism,
                            const std::vector<RationalVector>& query);

// Support index of a value vector for a buyer, if present.
std::optional<std::size_t> find_type(const Instance& instance, std::size_t buyer, const RationalVector& value);

}  // namespace vva
