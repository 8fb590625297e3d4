#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vva/rational.hpp"

namespace vva {

// A linear program in one of the two symmetric canonical forms:
//   Maximize:  max c.x  s.t.  A x <= b,  x >= 0
//   Minimize:  min c.x  s.t.  A x >= b,  x >= 0
// The row kind is implied by the sense, so dual_of is a plain transpose.
enum class Sense { Maximize, Minimize };

struct LpEntry {
  std::size_t column;
  Rational coef;
};

class LinearProgram {
 public:
  explicit LinearProgram(Sense sense = Sense::Maximize) : sense_(sense) {}

  Sense sense() const { return sense_; }

  std::size_t add_column(std::string label, Rational objective = 0);
  // Entries with zero coefficient are dropped; repeated columns are summed.
  std::size_t add_row(std::string label, std::vector<LpEntry> entries, Rational rhs);

  void set_objective(std::size_t column, Rational value) { objective_.at(column) = std::move(value); }

  std::size_t columns() const { return objective_.size(); }
  std::size_t rows() const { return rhs_.size(); }

  const Rational& objective(std::size_t column) const { return objective_[column]; }
  const RationalVector& objective() const { return objective_; }
  const std::vector<LpEntry>& row(std::size_t r) const { return rows_[r]; }
  const Rational& rhs(std::size_t r) const { return rhs_[r]; }
  const RationalVector& rhs() const { return rhs_; }
  const std::string& column_label(std::size_t column) const { return column_labels_[column]; }
  const std::string& row_label(std::size_t r) const { return row_labels_[r]; }
  const std::vector<std::string>& column_labels() const { return column_labels_; }
  const std::vector<std::string>& row_labels() const { return row_labels_; }

  // Throws MalformedLp if a label is missing.
  std::size_t column_index(const std::string& label) const;
  std::size_t row_index(const std::string& label) const;
  bool has_column(const std::string& label) const { return column_lookup_.count(label) > 0; }

  std::size_t nonzeros() const;

 private:
  Sense sense_;
  RationalVector objective_;
  std::vector<std::string> column_labels_;
  std::unordered_map<std::string, std::size_t> column_lookup_;
  std::vector<std::vector<LpEntry>> rows_;
  RationalVector rhs_;
  std::vector<std::string> row_labels_;
  std::unordered_map<std::string, std::size_t> row_lookup_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string_view status_name(LpStatus status);

struct LpCertificate {
  LpStatus status = LpStatus::Infeasible;
  RationalVector primal;  // one entry per column
  RationalVector dual;    // one multiplier per row, all >= 0
  Rational objective;
  // Infeasible: Farkas multipliers y >= 0 with y.A <= 0 (max) / >= 0 (min)
  //   and y.b < 0 (max) / > 0 (min).
  // Unbounded: a ray d >= 0 with A d <= 0 (max) / >= 0 (min) improving c.
  RationalVector witness;
  std::size_t pivots = 0;
};

enum class PivotRule {
  // Smallest-index entering and leaving variables; always terminates.
  Bland,
  // Most negative reduced cost, ties by index; switches to Bland for the
  // rest of the phase after `stall_limit` consecutive degenerate pivots.
  Dantzig,
};

struct SolveOptions {
  PivotRule rule = PivotRule::Bland;
  std::size_t stall_limit = 50;
  // Re-verify the returned certificate exactly; throws SolverFailure if the
  // check fails.
  bool verify = true;
};

LpCertificate solve(const LinearProgram& lp, const SolveOptions& options = {});

// Exact check of every claim the certificate makes. On failure returns false
// and, if `why` is given, a short reason.
bool verify_certificate(const LinearProgram& lp, const LpCertificate& cert, std::string* why = nullptr);

// The symmetric dual: columns become rows and vice versa, labels carried
// across, objective and right-hand side swapped, sense flipped.
LinearProgram dual_of(const LinearProgram& lp);

// CPLEX-style LP text. Rows are scaled to integer coefficients (same feasible
// set); the objective is scaled by a positive integer reported in a comment.
std::string to_lp_format(const LinearProgram& lp);

}  // namespace vva
