#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vva/auction_lp.hpp"
#include "vva/dual.hpp"
#include "vva/instance.hpp"
#include "vva/oracles.hpp"
#include "vva/regular.hpp"

namespace vva {

// Single-item instance of item j: each buyer's marginal of coordinate j.
Instance marginal_instance(const Instance& instance, std::size_t item);

// Revenue of selling each item separately by its optimal single-item DSIC
// auction.
Rational srev(const Instance& instance, const SolveOptions& options = {});

struct IndependenceCheck {
  bool holds = true;
  // First violated identity, empty when `holds`.
  std::string witness;
};

// Agent independence of a regular DS dual: phi constant across mass-bearing
// v_{-i} slices, and eta, zeta proportional to mu_{-i} on every slice. Throws
// NotRegular.
IndependenceCheck check_agent_independence(const Instance& instance, const DualSolutionDS& dual);

// For each buyer, item j and pair of types agreeing on coordinate j: equal
// phi^j, or both nonpositive. DS tables are compared within mass-bearing
// v_{-i} slices.
IndependenceCheck check_item_independence(const Instance& instance, const VirtualValueTable& table);

// zeta(v_i, v'_i; v_{-i}) = zetabar(v_i, v'_i) mu_{-i}(v_{-i}), likewise eta;
// xi copied. Throws SolverFailure if the result is not Dual-DSLP feasible.
DualSolutionDS bic_to_dsic_dual(const Instance& instance, const DualSolutionBayes& dual);

// Inverse map, dividing by mu_{-i} on mass-bearing slices. Throws
// NotAgentIndependent when slices disagree or a massless slice carries weight.
DualSolutionBayes dsic_to_bic_dual(const Instance& instance, const DualSolutionDS& dual);

struct RevenueReport {
  std::string digest;
  std::size_t buyers = 0;
  std::size_t items = 0;
  bool iid = false;
  Rational brev;
  Rational drev;
  Rational srev;
  bool brev_eq_drev = false;
  bool drev_eq_srev = false;
  bool brev_eq_srev = false;
  // Set when brev = drev: the mapped Bayesian dual is DSLP optimal and agent
  // independent.
  bool witness = false;
  // The i.i.d. n >= 3 implication "one equality implies all"; unset when it
  // does not apply.
  std::optional<bool> corollary;
  bool ubvv_holds = true;
  std::vector<std::string> findings;

  bool all_equal() const { return brev_eq_drev && drev_eq_srev; }
};

RevenueReport characterize(const Instance& instance, const SolveOptions& options = {});

struct ScanResult {
  // Set when the family is excluded; no instances are run then.
  std::string notice;
  std::vector<RevenueReport> reports;
  std::size_t all_equal = 0;
  std::size_t corollary_violations = 0;
  std::size_t ubvv_violations = 0;
  std::size_t brev_above_drev = 0;
};

// Seed of the t-th instance of a scan.
std::uint64_t scan_seed(std::uint64_t seed, std::size_t t);

// characterize over `count` generated i.i.d. instances; families with n < 3
// or non-i.i.d. buyers are excluded with a notice.
ScanResult iid_scan(const GenSpec& family, std::uint64_t seed, std::size_t count, const SolveOptions& options = {});

}  // namespace vva
