#include "vva/mechanism.hpp"

#include "vva/error.hpp"

namespace vva {

std::string_view form_name(Form form) { return form == Form::DS ? "ds" : "bic"; }

Mechanism Mechanism::zero(const Instance& instance, Form form) {
  Mechanism mech;
  mech.form = form;
  mech.buyers = instance.buyers();
  mech.items = instance.items();
  mech.profiles = instance.profile_count();
  mech.alloc.assign(mech.profiles * mech.buyers * mech.items, Rational(0));
  mech.pay.assign(mech.profiles * mech.buyers, Rational(0));
  return mech;
}

Rational Mechanism::supply(ProfileId p, std::size_t j) const {
  Rational s = 0;
  for (std::size_t i = 0; i < buyers; ++i) s += x(p, i, j);
  return s;
}

Rational Mechanism::utility(const RationalVector& true_value, ProfileId reported, std::size_t i) const {
  Rational u = -payment(reported, i);
  for (std::size_t j = 0; j < items; ++j) u += true_value[j] * x(reported, i, j);
  return u;
}

Rational Mechanism::revenue(const Instance& instance) const {
  Rational total = 0;
  for (ProfileId p = 0; p < profiles; ++p) {
    if (is_zero(instance.mass(p))) continue;
    Rational paid = 0;
    for (std::size_t i = 0; i < buyers; ++i) paid += payment(p, i);
    total += instance.mass(p) * paid;
  }
  return total;
}

bool PrimalSlacks::all_nonnegative() const {
  for (const auto* family : {&a, &b, &c}) {
    for (const auto& v : *family) {
      for (const auto& q : v) {
        if (sgn(q) < 0) return false;
      }
    }
  }
  return true;
}

PrimalSlacks mechanism_slacks(const Instance& inst, const Mechanism& mech) {
  const std::size_t n = inst.buyers();
  const std::size_t m = inst.items();
  const std::size_t P = inst.profile_count();
  if (mech.buyers != n || mech.items != m || mech.profiles != P ||
      mech.alloc.size() != P * n * m || mech.pay.size() != P * n) {
    throw Error(ErrorCode::DimensionMismatch, "mechanism does not match the instance dimensions");
  }

  PrimalSlacks s;
  s.form = mech.form;
  s.a.resize(n);
  s.b.resize(n);
  s.c.assign(m, RationalVector(P));
  for (std::size_t j = 0; j < m; ++j) {
    for (ProfileId p = 0; p < P; ++p) s.c[j][p] = 1 - mech.supply(p, j);
  }

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = inst.support_size(i);
    if (mech.form == Form::DS) {
      s.a[i].assign(P * k, Rational(0));
      s.b[i].assign(P, Rational(0));
      for (ProfileId p = 0; p < P; ++p) {
        const std::size_t vi = inst.type_of(p, i);
        const RationalVector& value = inst.value(i, vi);
        const Rational truth = mech.utility(value, p, i);
        s.b[i][p] = truth;
        for (std::size_t dev = 0; dev < k; ++dev) {
          if (dev == vi) continue;
          s.a[i][p * k + dev] = truth - mech.utility(value, inst.with_type(p, i, dev), i);
        }
      }
    } else {
      s.a[i].assign(k * k, Rational(0));
      s.b[i].assign(k, Rational(0));
      for (ProfileId p = 0; p < P; ++p) {
        const Rational& w = inst.others_mass(p, i);
        if (is_zero(w)) continue;
        const std::size_t vi = inst.type_of(p, i);
        const RationalVector& value = inst.value(i, vi);
        const Rational truth = mech.utility(value, p, i);
        s.b[i][vi] += w * truth;
        for (std::size_t dev = 0; dev < k; ++dev) {
          if (dev == vi) continue;
          s.a[i][vi * k + dev] += w * (truth - mech.utility(value, inst.with_type(p, i, dev), i));
        }
      }
    }
  }
  return s;
}

bool is_feasible(const Instance& inst, const Mechanism& mech, std::vector<std::string>* why) {
  bool ok = true;
  auto note = [&](const std::string& msg) {
    ok = false;
    if (why) why->push_back(msg);
  };
  for (const auto& q : mech.alloc) {
    if (sgn(q) < 0) {
      note("negative allocation");
      break;
    }
  }
  for (const auto& q : mech.pay) {
    if (sgn(q) < 0) {
      note("negative payment");
      break;
    }
  }
  PrimalSlacks s = mechanism_slacks(inst, mech);
  auto scan = [&](const std::vector<RationalVector>& family, const char* name) {
    for (const auto& v : family) {
      for (const auto& q : v) {
        if (sgn(q) < 0) {
          note(std::string("negative ") + name + " slack");
          return;
        }
      }
    }
  };
  scan(s.a, "incentive");
  scan(s.b, "participation");
  scan(s.c, "supply");
  return ok;
}

}  // namespace vva
