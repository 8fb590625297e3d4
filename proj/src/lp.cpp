#include "vva/lp.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "vva/error.hpp"

namespace vva {

std::size_t LinearProgram::add_column(std::string label, Rational objective) {
  if (column_lookup_.count(label)) {
    throw Error(ErrorCode::MalformedLp, "duplicate column label " + label);
  }
  column_lookup_.emplace(label, objective_.size());
  column_labels_.push_back(std::move(label));
  objective_.push_back(std::move(objective));
  return objective_.size() - 1;
}

std::size_t LinearProgram::add_row(std::string label, std::vector<LpEntry> entries, Rational rhs) {
  if (row_lookup_.count(label)) {
    throw Error(ErrorCode::MalformedLp, "duplicate row label " + label);
  }
  std::sort(entries.begin(), entries.end(),
            [](const LpEntry& a, const LpEntry& b) { return a.column < b.column; });
  std::vector<LpEntry> merged;
  for (auto& e : entries) {
    if (e.column >= columns()) {
      throw Error(ErrorCode::MalformedLp, "row " + label + " references an unknown column");
    }
    if (!merged.empty() && merged.back().column == e.column) {
      merged.back().coef += e.coef;
    } else {
      merged.push_back(std::move(e));
    }
  }
  std::erase_if(merged, [](const LpEntry& e) { return is_zero(e.coef); });
  row_lookup_.emplace(label, rhs_.size());
  row_labels_.push_back(std::move(label));
  rows_.push_back(std::move(merged));
  rhs_.push_back(std::move(rhs));
  return rhs_.size() - 1;
}

std::size_t LinearProgram::column_index(const std::string& label) const {
  auto it = column_lookup_.find(label);
  if (it == column_lookup_.end()) throw Error(ErrorCode::MalformedLp, "no column " + label);
  return it->second;
}

std::size_t LinearProgram::row_index(const std::string& label) const {
  auto it = row_lookup_.find(label);
  if (it == row_lookup_.end()) throw Error(ErrorCode::MalformedLp, "no row " + label);
  return it->second;
}

std::size_t LinearProgram::nonzeros() const {
  std::size_t total = 0;
  for (const auto& r : rows_) total += r.size();
  return total;
}

std::string_view status_name(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Dense simplex tableau for  max c.x  s.t.  A x <= b, x >= 0.
// Columns: structural [0, n), slack [n, n+m), artificial [n+m, n+m+a).
// Rows with b < 0 are negated on entry and start with an artificial basic.
class Tableau {
 public:
  Tableau(const std::vector<std::vector<LpEntry>>& rows, const RationalVector& b,
          std::size_t structural)
      : m_(rows.size()), n_(structural) {
    flipped_.assign(m_, false);
    std::size_t artificial = 0;
    for (std::size_t r = 0; r < m_; ++r) {
      if (sgn(b[r]) < 0) {
        flipped_[r] = true;
        ++artificial;
      }
    }
    width_ = n_ + m_ + artificial;
    cells_.assign(m_ * width_, Rational(0));
    rhs_.resize(m_);
    basis_.resize(m_);
    allowed_.assign(width_, true);
    std::size_t next_art = n_ + m_;
    for (std::size_t r = 0; r < m_; ++r) {
      const int sign = flipped_[r] ? -1 : 1;
      for (const auto& e : rows[r]) at(r, e.column) = sign * e.coef;
      at(r, n_ + r) = sign;
      rhs_[r] = sign * b[r];
      if (flipped_[r]) {
        at(r, next_art) = 1;
        basis_[r] = next_art++;
      } else {
        basis_[r] = n_ + r;
      }
    }
  }

  std::size_t width() const { return width_; }
  bool has_artificials() const { return width_ > n_ + m_; }
  bool is_artificial(std::size_t col) const { return col >= n_ + m_; }

  Rational& at(std::size_t r, std::size_t c) { return cells_[r * width_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return cells_[r * width_ + c]; }

  // Installs reduced costs for maximizing cost.x over the current basis.
  void set_objective(const RationalVector& cost) {
    reduced_.assign(width_, Rational(0));
    for (std::size_t j = 0; j < width_; ++j) {
      if (!allowed_[j]) continue;
      reduced_[j] = -cost[j];
    }
    value_ = 0;
    for (std::size_t r = 0; r < m_; ++r) {
      const Rational& cb = cost[basis_[r]];
      if (is_zero(cb)) continue;
      for (std::size_t j = 0; j < width_; ++j) {
        if (allowed_[j] && !is_zero(at(r, j))) reduced_[j] += cb * at(r, j);
      }
      value_ += cb * rhs_[r];
    }
  }

  // Runs primal simplex on the installed objective. Returns the entering
  // column that proved unboundedness, or kNone at optimality.
  std::size_t optimize(const SolveOptions& options, std::size_t& pivots) {
    bool use_bland = options.rule == PivotRule::Bland;
    std::size_t degenerate_run = 0;
    for (;;) {
      std::size_t enter = kNone;
      if (use_bland) {
        for (std::size_t j = 0; j < width_; ++j) {
          if (allowed_[j] && sgn(reduced_[j]) < 0) {
            enter = j;
            break;
          }
        }
      } else {
        for (std::size_t j = 0; j < width_; ++j) {
          if (allowed_[j] && sgn(reduced_[j]) < 0 &&
              (enter == kNone || reduced_[j] < reduced_[enter])) {
            enter = j;
          }
        }
      }
      if (enter == kNone) return kNone;

      std::size_t leave = kNone;
      Rational best_ratio;
      for (std::size_t r = 0; r < m_; ++r) {
        const Rational& a = at(r, enter);
        if (sgn(a) <= 0) continue;
        if (leave == kNone) {
          leave = r;
          best_ratio = rhs_[r] / a;
          continue;
        }
        if (is_zero(best_ratio) && !is_zero(rhs_[r])) continue;
        Rational ratio = rhs_[r] / a;
        if (ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == kNone) return enter;

      if (is_zero(best_ratio)) {
        if (++degenerate_run >= options.stall_limit) use_bland = true;
      } else {
        degenerate_run = 0;
      }
      pivot(leave, enter);
      ++pivots;
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / at(r, c);
    pivot_nz_.clear();
    for (std::size_t j = 0; j < width_; ++j) {
      if (!is_zero(at(r, j))) {
        at(r, j) *= inv;
        pivot_nz_.push_back(j);
      }
    }
    rhs_[r] *= inv;
    Rational f;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || is_zero(at(i, c))) continue;
      f = at(i, c);
      for (std::size_t j : pivot_nz_) at(i, j) -= f * at(r, j);
      if (!is_zero(rhs_[r])) rhs_[i] -= f * rhs_[r];
    }
    if (!reduced_.empty() && !is_zero(reduced_[c])) {
      f = reduced_[c];
      for (std::size_t j : pivot_nz_) reduced_[j] -= f * at(r, j);
      value_ -= f * rhs_[r];
    }
    basis_[r] = c;
  }

  // Pivots basic artificials (at level zero) out where possible and bars
  // every artificial column from re-entering.
  void retire_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      for (std::size_t j = 0; j < n_ + m_; ++j) {
        if (!is_zero(at(r, j))) {
          pivot(r, j);
          break;
        }
      }
    }
    for (std::size_t j = n_ + m_; j < width_; ++j) allowed_[j] = false;
  }

  RationalVector basic_solution() const {
    RationalVector x(width_, Rational(0));
    for (std::size_t r = 0; r < m_; ++r) x[basis_[r]] = rhs_[r];
    return x;
  }

  // Multipliers of the original (unnegated) rows: the reduced cost of each
  // slack column.
  RationalVector row_multipliers() const {
    RationalVector y(m_);
    for (std::size_t r = 0; r < m_; ++r) y[r] = reduced_[n_ + r];
    return y;
  }

  // Direction of the ray along an entering column with no blocking row.
  RationalVector ray(std::size_t enter) const {
    RationalVector d(width_, Rational(0));
    d[enter] = 1;
    for (std::size_t r = 0; r < m_; ++r) d[basis_[r]] = -at(r, enter);
    return d;
  }

  const Rational& value() const { return value_; }

 private:
  std::size_t m_;
  std::size_t n_;
  std::size_t width_ = 0;
  std::vector<bool> flipped_;
  RationalVector cells_;
  RationalVector rhs_;
  RationalVector reduced_;
  Rational value_;
  std::vector<std::size_t> basis_;
  std::vector<bool> allowed_;
  std::vector<std::size_t> pivot_nz_;
};

RationalVector row_times(const LinearProgram& lp, const RationalVector& x) {
  RationalVector out(lp.rows(), Rational(0));
  for (std::size_t r = 0; r < lp.rows(); ++r) {
    for (const auto& e : lp.row(r)) out[r] += e.coef * x[e.column];
  }
  return out;
}

RationalVector transpose_times(const LinearProgram& lp, const RationalVector& y) {
  RationalVector out(lp.columns(), Rational(0));
  for (std::size_t r = 0; r < lp.rows(); ++r) {
    if (is_zero(y[r])) continue;
    for (const auto& e : lp.row(r)) out[e.column] += e.coef * y[r];
  }
  return out;
}

}  // namespace

LpCertificate solve(const LinearProgram& lp, const SolveOptions& options) {
  const std::size_t n = lp.columns();
  const std::size_t m = lp.rows();
  const bool maximize = lp.sense() == Sense::Maximize;

  // Work in max form: a Minimize program is negated throughout.
  std::vector<std::vector<LpEntry>> rows(m);
  RationalVector b(m);
  for (std::size_t r = 0; r < m; ++r) {
    rows[r] = lp.row(r);
    b[r] = lp.rhs(r);
    if (!maximize) {
      for (auto& e : rows[r]) e.coef = -e.coef;
      b[r] = -b[r];
    }
  }

  Tableau tab(rows, b, n);
  LpCertificate cert;

  if (tab.has_artificials()) {
    RationalVector phase_one(tab.width(), Rational(0));
    for (std::size_t j = n + m; j < tab.width(); ++j) phase_one[j] = -1;
    tab.set_objective(phase_one);
    tab.optimize(options, cert.pivots);
    if (sgn(tab.value()) < 0) {
      cert.status = LpStatus::Infeasible;
      cert.witness = tab.row_multipliers();
      if (options.verify) {
        std::string why;
        if (!verify_certificate(lp, cert, &why)) throw Error(ErrorCode::SolverFailure, why);
      }
      return cert;
    }
    tab.retire_artificials();
  }

  RationalVector cost(tab.width(), Rational(0));
  for (std::size_t j = 0; j < n; ++j) cost[j] = maximize ? lp.objective(j) : Rational(-lp.objective(j));
  tab.set_objective(cost);
  const std::size_t unbounded = tab.optimize(options, cert.pivots);
  if (unbounded != kNone) {
    cert.status = LpStatus::Unbounded;
    RationalVector d = tab.ray(unbounded);
    d.resize(n);
    cert.witness = std::move(d);
  } else {
    cert.status = LpStatus::Optimal;
    RationalVector x = tab.basic_solution();
    x.resize(n);
    cert.primal = std::move(x);
    cert.dual = tab.row_multipliers();
    cert.objective = maximize ? tab.value() : Rational(-tab.value());
  }
  if (options.verify) {
    std::string why;
    if (!verify_certificate(lp, cert, &why)) throw Error(ErrorCode::SolverFailure, why);
  }
  return cert;
}

bool verify_certificate(const LinearProgram& lp, const LpCertificate& cert, std::string* why) {
  auto fail = [&](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };
  const bool maximize = lp.sense() == Sense::Maximize;
  // Orientation: s = +1 for max (<= rows), -1 for min (>= rows).
  const int s = maximize ? 1 : -1;

  switch (cert.status) {
    case LpStatus::Optimal: {
      if (cert.primal.size() != lp.columns() || cert.dual.size() != lp.rows()) {
        return fail("certificate dimensions do not match the program");
      }
      for (const auto& q : cert.primal) if (sgn(q) < 0) return fail("negative primal value");
      for (const auto& q : cert.dual) if (sgn(q) < 0) return fail("negative dual multiplier");
      RationalVector ax = row_times(lp, cert.primal);
      for (std::size_t r = 0; r < lp.rows(); ++r) {
        if (s * sgn(ax[r] - lp.rhs(r)) > 0) return fail("primal violates row " + lp.row_label(r));
      }
      RationalVector ya = transpose_times(lp, cert.dual);
      for (std::size_t j = 0; j < lp.columns(); ++j) {
        if (s * sgn(ya[j] - lp.objective(j)) < 0) {
          return fail("dual violates column " + lp.column_label(j));
        }
      }
      Rational cx = dot(lp.objective(), cert.primal);
      Rational by = dot(lp.rhs(), cert.dual);
      if (cx != by) return fail("duality gap " + to_string(by - cx));
      if (cx != cert.objective) return fail("reported objective differs from c.x");
      return true;
    }
    case LpStatus::Infeasible: {
      if (cert.witness.size() != lp.rows()) return fail("Farkas witness has the wrong length");
      for (const auto& q : cert.witness) if (sgn(q) < 0) return fail("negative Farkas multiplier");
      RationalVector ya = transpose_times(lp, cert.witness);
      for (std::size_t j = 0; j < lp.columns(); ++j) {
        if (s * sgn(ya[j]) < 0) return fail("Farkas combination has a wrong-signed column");
      }
      if (s * sgn(dot(lp.rhs(), cert.witness)) >= 0) return fail("Farkas combination is not contradictory");
      return true;
    }
    case LpStatus::Unbounded: {
      if (cert.witness.size() != lp.columns()) return fail("ray has the wrong length");
      for (const auto& q : cert.witness) if (sgn(q) < 0) return fail("ray leaves the orthant");
      RationalVector ad = row_times(lp, cert.witness);
      for (std::size_t r = 0; r < lp.rows(); ++r) {
        if (s * sgn(ad[r]) > 0) return fail("ray leaves row " + lp.row_label(r));
      }
      if (s * sgn(dot(lp.objective(), cert.witness)) <= 0) return fail("ray does not improve the objective");
      return true;
    }
  }
  return fail("unknown status");
}

LinearProgram dual_of(const LinearProgram& lp) {
  LinearProgram dual(lp.sense() == Sense::Maximize ? Sense::Minimize : Sense::Maximize);
  for (std::size_t r = 0; r < lp.rows(); ++r) dual.add_column(lp.row_label(r), lp.rhs(r));
  std::vector<std::vector<LpEntry>> transposed(lp.columns());
  for (std::size_t r = 0; r < lp.rows(); ++r) {
    for (const auto& e : lp.row(r)) transposed[e.column].push_back({r, e.coef});
  }
  for (std::size_t j = 0; j < lp.columns(); ++j) {
    dual.add_row(lp.column_label(j), std::move(transposed[j]), lp.objective(j));
  }
  return dual;
}

namespace {

mpz_class lcm_of_denominators(const std::vector<const Rational*>& values) {
  mpz_class l = 1;
  for (const Rational* q : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q->get_den().get_mpz_t());
  return l;
}

void write_term(std::ostringstream& out, const mpz_class& coef, const std::string& name, bool first) {
  if (sgn(coef) < 0) {
    out << " - ";
  } else if (!first) {
    out << " + ";
  } else {
    out << " ";
  }
  mpz_class a = abs(coef);
  if (a != 1) out << a.get_str() << " ";
  out << name;
}

}  // namespace

std::string to_lp_format(const LinearProgram& lp) {
  std::ostringstream out;
  std::vector<const Rational*> obj;
  for (const auto& q : lp.objective()) obj.push_back(&q);
  const mpz_class obj_scale = lcm_of_denominators(obj);

  out << "\\ exact LP export; objective scale " << obj_scale.get_str() << "\n";
  for (std::size_t j = 0; j < lp.columns(); ++j) out << "\\ c" << j << " = " << lp.column_label(j) << "\n";
  for (std::size_t r = 0; r < lp.rows(); ++r) out << "\\ r" << r << " = " << lp.row_label(r) << "\n";

  out << (lp.sense() == Sense::Maximize ? "Maximize\n" : "Minimize\n") << " obj:";
  bool first = true;
  for (std::size_t j = 0; j < lp.columns(); ++j) {
    if (is_zero(lp.objective(j))) continue;
    Rational scaled = lp.objective(j) * Rational(obj_scale);
    write_term(out, scaled.get_num(), "c" + std::to_string(j), first);
    first = false;
  }
  if (first) out << " 0 c0";
  out << "\nSubject To\n";
  const char* kind = lp.sense() == Sense::Maximize ? " <= " : " >= ";
  for (std::size_t r = 0; r < lp.rows(); ++r) {
    std::vector<const Rational*> vals{&lp.rhs(r)};
    for (const auto& e : lp.row(r)) vals.push_back(&e.coef);
    const mpz_class scale = lcm_of_denominators(vals);
    out << " r" << r << ":";
    bool first_term = true;
    for (const auto& e : lp.row(r)) {
      Rational scaled = e.coef * Rational(scale);
      write_term(out, scaled.get_num(), "c" + std::to_string(e.column), first_term);
      first_term = false;
    }
    if (first_term) out << " 0 c0";
    Rational rhs = lp.rhs(r) * Rational(scale);
    out << kind << rhs.get_num().get_str() << "\n";
  }
  out << "End\n";
  return out.str();
}

}  // namespace vva
