#include "vva/analysis.hpp"

#include "vva/error.hpp"

namespace vva {

namespace {

// Profile label with buyer i's coordinate shown as '*'.
std::string slice_label(const Instance& inst, ProfileId key, std::size_t i) {
  const ProfileIndex index = inst.profile_index(key);
  std::string out;
  for (std::size_t b = 0; b < index.index.size(); ++b) {
    if (b) out += '.';
    out += b == i ? std::string("*") : std::to_string(index.index[b]);
  }
  return out;
}

std::optional<ProfileId> reference_slice(const Instance& inst, std::size_t i) {
  for (ProfileId key : inst.others_keys(i)) {
    if (sgn(inst.others_mass(key, i)) > 0) return key;
  }
  return std::nullopt;
}

}  // namespace

Instance marginal_instance(const Instance& inst, std::size_t item) {
  RawInstance raw;
  raw.buyers = inst.buyers();
  raw.items = 1;
  raw.supports.resize(inst.buyers());
  raw.probs.resize(inst.buyers());
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    const Marginal marginal = item_marginal(inst, i, item);
    for (const Rational& v : marginal.values) raw.supports[i].push_back({v});
    raw.probs[i] = marginal.probs;
  }
  return validate_instance(raw);
}

Rational srev(const Instance& inst, const SolveOptions& options) {
  Rational total = 0;
  for (std::size_t j = 0; j < inst.items(); ++j) total += drev(marginal_instance(inst, j), options);
  return total;
}

IndependenceCheck check_agent_independence(const Instance& inst, const DualSolutionDS& dual) {
  const RegularityReport regular = check_regular_ds(inst, dual);
  if (!regular.ok()) throw Error(ErrorCode::NotRegular, regular.first_violation);
  IndependenceCheck out;
  auto fail = [&](const std::string& what, std::size_t i, ProfileId q, ProfileId ref) {
    out.holds = false;
    out.witness = what + " of buyer " + std::to_string(i) + " differs between slices " + slice_label(inst, q, i) +
                  " and " + slice_label(inst, ref, i);
  };
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    const auto ref = reference_slice(inst, i);
    if (!ref) continue;
    const std::size_t k = inst.support_size(i);
    const Rational& wr = inst.others_mass(*ref, i);
    for (ProfileId q : inst.others_keys(i)) {
      if (q == *ref) continue;
      const Rational& wq = inst.others_mass(q, i);
      for (std::size_t a = 0; a < k; ++a) {
        const ProfileId pq = inst.with_type(q, i, a);
        const ProfileId pr = inst.with_type(*ref, i, a);
        if (dual.eta[i][pq] * wr != dual.eta[i][pr] * wq) {
          fail("eta at type " + std::to_string(a), i, q, *ref);
          return out;
        }
        for (std::size_t d = 0; d < k; ++d) {
          if (d == a) continue;
          if (dual.zeta[i][pq * k + d] * wr != dual.zeta[i][pr * k + d] * wq) {
            fail("zeta(" + std::to_string(a) + ", " + std::to_string(d) + ")", i, q, *ref);
            return out;
          }
        }
        if (sgn(wq) == 0 || sgn(inst.prob(i, a)) == 0) continue;
        for (std::size_t j = 0; j < inst.items(); ++j) {
          if (dual.phi(inst, i, j, pq) * wr != dual.phi(inst, i, j, pr) * wq) {
            fail("virtual value of item " + std::to_string(j) + " at type " + std::to_string(a), i, q, *ref);
            return out;
          }
        }
      }
    }
  }
  return out;
}

IndependenceCheck check_item_independence(const Instance& inst, const VirtualValueTable& table) {
  IndependenceCheck out;
  auto compatible = [](const VirtualValue& x, const VirtualValue& y) {
    return x == y || (x.nonpositive() && y.nonpositive());
  };
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    const std::size_t k = inst.support_size(i);
    for (std::size_t j = 0; j < inst.items(); ++j) {
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
          if (inst.value(i, a, j) != inst.value(i, b, j)) continue;
          auto describe = [&](const VirtualValue& x, const VirtualValue& y) {
            return "buyer " + std::to_string(i) + " item " + std::to_string(j) + ": types " + std::to_string(a) +
                   " and " + std::to_string(b) + " share the coordinate but have virtual values " + x.str() +
                   " and " + y.str();
          };
          if (table.form() == Form::Bayesian) {
            const VirtualValue& x = table.at_type(i, j, a);
            const VirtualValue& y = table.at_type(i, j, b);
            if (!compatible(x, y)) return {false, describe(x, y)};
            continue;
          }
          for (ProfileId q : inst.others_keys(i)) {
            if (sgn(inst.others_mass(q, i)) == 0) continue;
            const VirtualValue& x = table.at(inst, i, j, inst.with_type(q, i, a));
            const VirtualValue& y = table.at(inst, i, j, inst.with_type(q, i, b));
            if (!compatible(x, y)) return {false, describe(x, y) + " on slice " + slice_label(inst, q, i)};
          }
        }
      }
    }
  }
  return out;
}

DualSolutionDS bic_to_dsic_dual(const Instance& inst, const DualSolutionBayes& bayes) {
  DualSolutionDS out = DualSolutionDS::zero(inst);
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    const std::size_t k = inst.support_size(i);
    for (ProfileId p = 0; p < inst.profile_count(); ++p) {
      const std::size_t a = inst.type_of(p, i);
      const Rational& w = inst.others_mass(p, i);
      out.eta[i][p] = bayes.eta[i][a] * w;
      for (std::size_t d = 0; d < k; ++d) {
        if (d != a) out.zeta[i][p * k + d] = bayes.zeta[i][a * k + d] * w;
      }
    }
  }
  out.xi = bayes.xi;
  out.update_slacks(inst);
  std::string why;
  if (!out.is_feasible(inst, &why)) throw Error(ErrorCode::SolverFailure, "mapped DS dual infeasible: " + why);
  return out;
}

DualSolutionBayes dsic_to_bic_dual(const Instance& inst, const DualSolutionDS& ds) {
  DualSolutionBayes out = DualSolutionBayes::zero(inst);
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    const auto ref = reference_slice(inst, i);
    if (!ref) continue;
    const std::size_t k = inst.support_size(i);
    const Rational& wr = inst.others_mass(*ref, i);
    // Reads one slice, then requires every slice to carry the same values scaled by its mass.
    auto lift = [&](auto&& at, const std::string& what) {
      const Rational value = at(*ref) / wr;
      for (ProfileId q : inst.others_keys(i)) {
        if (at(q) != value * inst.others_mass(q, i)) {
          throw Error(ErrorCode::NotAgentIndependent, what + " of buyer " + std::to_string(i) + " on slice " +
                                                          slice_label(inst, q, i) + " is not proportional to mu_-i");
        }
      }
      return value;
    };
    for (std::size_t a = 0; a < k; ++a) {
      out.eta[i][a] = lift([&](ProfileId q) { return ds.eta[i][inst.with_type(q, i, a)]; },
                           "eta at type " + std::to_string(a));
      for (std::size_t d = 0; d < k; ++d) {
        if (d == a) continue;
        out.zeta[i][a * k + d] = lift([&](ProfileId q) { return ds.zeta[i][inst.with_type(q, i, a) * k + d]; },
                                      "zeta(" + std::to_string(a) + ", " + std::to_string(d) + ")");
      }
    }
  }
  out.xi = ds.xi;
  out.update_slacks(inst);
  std::string why;
  if (!out.is_feasible(inst, &why)) throw Error(ErrorCode::SolverFailure, "mapped Bayesian dual infeasible: " + why);
  return out;
}

RevenueReport characterize(const Instance& inst, const SolveOptions& options) {
  RevenueReport r;
  r.digest = inst.digest();
  r.buyers = inst.buyers();
  r.items = inst.items();
  r.iid = inst.is_iid();

  const DsSolution ds = solve_ds(inst, options);
  const BayesSolution bayes = solve_bayes(inst, options);
  r.drev = ds.cert.objective;
  r.brev = bayes.cert.objective;
  r.srev = srev(inst, options);
  r.brev_eq_drev = r.brev == r.drev;
  r.drev_eq_srev = r.drev == r.srev;
  r.brev_eq_srev = r.brev == r.srev;
  if (r.brev < r.drev) r.findings.push_back("brev " + to_string(r.brev) + " below drev " + to_string(r.drev));
  if (r.drev < r.srev) r.findings.push_back("drev " + to_string(r.drev) + " below srev " + to_string(r.srev));

  const DualSolutionDS regular_ds = regularize_ds(inst, ds.mechanism, ds.dual);
  const DualSolutionBayes regular_bayes = regularize_bayes(inst, bayes.mechanism, bayes.dual);

  try {
    const UbvvReport ubvv = check_ubvv(virtual_values_ds(inst, regular_ds), inst);
    r.ubvv_holds = ubvv.holds();
    if (!ubvv.holds()) {
      r.findings.push_back("ubvv: " + std::to_string(ubvv.violations) + " of " + std::to_string(ubvv.checked) +
                           " entries exceed the value; first: " + ubvv.findings.front());
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ZeroMassNonzeroType) throw;
    r.findings.push_back(std::string("virtual values undefined: ") + e.what());
  }

  if (r.brev_eq_drev) {
    const DualSolutionDS witness = bic_to_dsic_dual(inst, regular_bayes);
    const CsLedger ledger = check_cs_ds(inst, ds.mechanism, witness);
    const IndependenceCheck ai = check_agent_independence(inst, witness);
    r.witness = ledger.optimal() && is_zero(ledger.gap()) && ai.holds;
    if (!r.witness) {
      r.findings.push_back(ai.holds ? "mapped Bayesian dual is not DSLP optimal"
                                    : "mapped Bayesian dual fails agent independence: " + ai.witness);
    }
  }

  if (r.iid && r.buyers >= 3) {
    const bool any = r.brev_eq_drev || r.drev_eq_srev || r.brev_eq_srev;
    r.corollary = !any || r.all_equal();
    if (!*r.corollary) r.findings.push_back("corollary violated: some but not all revenues are equal");
  }
  return r;
}

std::uint64_t scan_seed(std::uint64_t seed, std::size_t t) {
  // splitmix64 finalizer over the instance index.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(t) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ScanResult iid_scan(const GenSpec& family, std::uint64_t seed, std::size_t count, const SolveOptions& options) {
  ScanResult out;
  if (!family.iid || family.buyers < 3) {
    out.notice = "family excluded: the corollary needs i.i.d. buyers with n >= 3";
    return out;
  }
  for (std::size_t t = 0; t < count; ++t) {
    RevenueReport r = characterize(gen_instance(family, scan_seed(seed, t)), options);
    out.all_equal += r.all_equal();
    out.corollary_violations += r.corollary && !*r.corollary;
    out.ubvv_violations += !r.ubvv_holds;
    out.brev_above_drev += r.brev > r.drev;
    out.reports.push_back(std::move(r));
  }
  return out;
}

}  // namespace vva
