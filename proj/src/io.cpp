#include "vva/io.hpp"

#include <fstream>
#include <set>

#include "vva/error.hpp"

namespace vva {

namespace {

Rational rational_from_json(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw Error(ErrorCode::ParseError, "expected a rational string or integer, got " + v.dump());
}

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing \"") + key + "\"");
  return doc.at(key);
}

std::size_t count_field(const Json& doc, const char* key) {
  const Json& v = field(doc, key);
  if (!v.is_number_unsigned()) throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" must be a count");
  return v.get<std::size_t>();
}

// Label-keyed sparse map; absent labels read as zero and unknown labels are
// reported by finish().
class LabelReader {
 public:
  LabelReader(const Json& doc, std::string what) : doc_(doc), what_(std::move(what)) {
    if (!doc.is_object()) throw Error(ErrorCode::ParseError, what_ + " must be an object");
  }

  Rational operator()(const std::string& label) {
    auto it = doc_.find(label);
    if (it == doc_.end()) return 0;
    seen_.insert(label);
    return rational_from_json(*it);
  }

  void finish() const {
    for (const auto& [key, value] : doc_.items()) {
      if (!seen_.count(key)) throw Error(ErrorCode::LabelMismatch, what_ + " has unknown label " + key);
    }
  }

 private:
  const Json& doc_;
  std::string what_;
  std::set<std::string> seen_;
};

void put(Json& out, const std::string& label, const Rational& q) {
  if (!is_zero(q)) out[label] = to_string(q);
}

}  // namespace

RawInstance raw_instance_from_json(const Json& doc) {
  RawInstance raw;
  raw.buyers = count_field(doc, "buyers");
  raw.items = count_field(doc, "items");
  const Json& supports = field(doc, "supports");
  const Json& probs = field(doc, "probs");
  if (!supports.is_array() || !probs.is_array()) throw Error(ErrorCode::ParseError, "supports and probs must be arrays");
  if (supports.size() != raw.buyers || probs.size() != raw.buyers) {
    throw Error(ErrorCode::DimensionMismatch, "supports and probs need one entry per buyer");
  }
  for (std::size_t i = 0; i < raw.buyers; ++i) {
    std::vector<RationalVector> support;
    for (const Json& vec : supports[i]) {
      if (!vec.is_array()) throw Error(ErrorCode::ParseError, "value vectors must be arrays");
      RationalVector v;
      for (const Json& q : vec) v.push_back(rational_from_json(q));
      support.push_back(std::move(v));
    }
    RationalVector mass;
    for (const Json& q : probs[i]) mass.push_back(rational_from_json(q));
    raw.supports.push_back(std::move(support));
    raw.probs.push_back(std::move(mass));
  }
  if (doc.contains("augment_zero")) raw.augment_zero = doc.at("augment_zero").get<bool>();
  return raw;
}

Json instance_to_json(const Instance& inst) {
  Json out;
  out["buyers"] = inst.buyers();
  out["items"] = inst.items();
  Json supports = Json::array(), probs = Json::array();
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    Json support = Json::array(), mass = Json::array();
    for (std::size_t t = 0; t < inst.support_size(i); ++t) {
      Json v = Json::array();
      for (const Rational& q : inst.value(i, t)) v.push_back(to_string(q));
      support.push_back(std::move(v));
      mass.push_back(to_string(inst.prob(i, t)));
    }
    supports.push_back(std::move(support));
    probs.push_back(std::move(mass));
  }
  out["supports"] = std::move(supports);
  out["probs"] = std::move(probs);
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

Instance load_instance(const std::string& path, const ValidationOptions& options) {
  const RawInstance raw = raw_instance_from_json(read_json_file(path));
  ValidationOptions effective = options;
  effective.augment_zero = options.augment_zero || raw.augment_zero;
  return validate_instance(raw, effective);
}

Json mechanism_to_json(const Instance& inst, const Mechanism& mech) {
  Json out = Json::object();
  for (ProfileId p = 0; p < inst.profile_count(); ++p) {
    for (std::size_t i = 0; i < inst.buyers(); ++i) {
      for (std::size_t j = 0; j < inst.items(); ++j) put(out, labels::x(inst, i, j, p), mech.x(p, i, j));
    }
  }
  for (ProfileId p = 0; p < inst.profile_count(); ++p) {
    for (std::size_t i = 0; i < inst.buyers(); ++i) put(out, labels::pay(inst, i, p), mech.payment(p, i));
  }
  return out;
}

Mechanism mechanism_from_json(const Instance& inst, const Json& doc, Form form) {
  LabelReader read(doc, "primal");
  Mechanism mech = Mechanism::zero(inst, form);
  for (ProfileId p = 0; p < inst.profile_count(); ++p) {
    for (std::size_t i = 0; i < inst.buyers(); ++i) {
      for (std::size_t j = 0; j < inst.items(); ++j) mech.x(p, i, j) = read(labels::x(inst, i, j, p));
      mech.payment(p, i) = read(labels::pay(inst, i, p));
    }
  }
  read.finish();
  return mech;
}

Json dual_to_json(const Instance& inst, const DualSolutionDS& dual) {
  Json out = Json::object();
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    const std::size_t k = inst.support_size(i);
    for (ProfileId p = 0; p < inst.profile_count(); ++p) {
      for (std::size_t d = 0; d < k; ++d) {
        if (d != inst.type_of(p, i)) put(out, labels::zeta(inst, i, p, d), dual.zeta[i][p * k + d]);
      }
      put(out, labels::eta(inst, i, p), dual.eta[i][p]);
    }
  }
  for (std::size_t j = 0; j < inst.items(); ++j) {
    for (ProfileId p = 0; p < inst.profile_count(); ++p) put(out, labels::xi(inst, j, p), dual.xi[j][p]);
  }
  return out;
}

Json dual_to_json(const Instance& inst, const DualSolutionBayes& dual) {
  Json out = Json::object();
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    const std::size_t k = inst.support_size(i);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t d = 0; d < k; ++d) {
        if (d != a) put(out, labels::zeta_bar(i, a, d), dual.zeta[i][a * k + d]);
      }
      put(out, labels::eta_bar(i, a), dual.eta[i][a]);
    }
  }
  for (std::size_t j = 0; j < inst.items(); ++j) {
    for (ProfileId p = 0; p < inst.profile_count(); ++p) put(out, labels::xi(inst, j, p), dual.xi[j][p]);
  }
  return out;
}

DualSolutionDS dual_ds_from_json(const Instance& inst, const Json& doc) {
  LabelReader read(doc, "dual");
  DualSolutionDS dual = DualSolutionDS::zero(inst);
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    const std::size_t k = inst.support_size(i);
    for (ProfileId p = 0; p < inst.profile_count(); ++p) {
      for (std::size_t d = 0; d < k; ++d) {
        if (d != inst.type_of(p, i)) dual.zeta[i][p * k + d] = read(labels::zeta(inst, i, p, d));
      }
      dual.eta[i][p] = read(labels::eta(inst, i, p));
    }
  }
  for (std::size_t j = 0; j < inst.items(); ++j) {
    for (ProfileId p = 0; p < inst.profile_count(); ++p) dual.xi[j][p] = read(labels::xi(inst, j, p));
  }
  read.finish();
  dual.update_slacks(inst);
  return dual;
}

DualSolutionBayes dual_bayes_from_json(const Instance& inst, const Json& doc) {
  LabelReader read(doc, "dual");
  DualSolutionBayes dual = DualSolutionBayes::zero(inst);
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    const std::size_t k = inst.support_size(i);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t d = 0; d < k; ++d) {
        if (d != a) dual.zeta[i][a * k + d] = read(labels::zeta_bar(i, a, d));
      }
      dual.eta[i][a] = read(labels::eta_bar(i, a));
    }
  }
  for (std::size_t j = 0; j < inst.items(); ++j) {
    for (ProfileId p = 0; p < inst.profile_count(); ++p) dual.xi[j][p] = read(labels::xi(inst, j, p));
  }
  read.finish();
  dual.update_slacks(inst);
  return dual;
}

Json ledger_to_json(const CsLedger& ledger) {
  Json out;
  out["incentive"] = to_string(ledger.incentive);
  out["participation"] = to_string(ledger.participation);
  out["supply"] = to_string(ledger.supply);
  out["allocation"] = to_string(ledger.allocation);
  out["payment"] = to_string(ledger.payment);
  out["gap"] = to_string(ledger.gap());
  out["nonzero_products"] = ledger.nonzero_products;
  return out;
}

namespace {

template <typename Solution>
Json certificate_common(const Instance& inst, const Solution& s, Form form, const CsLedger& ledger) {
  Json out;
  out["format"] = "vva-certificate";
  out["version"] = 1;
  out["form"] = std::string(form_name(form));
  out["digest"] = inst.digest();
  out["instance"] = instance_to_json(inst);
  out["objective"] = to_string(s.cert.objective);
  out["primal"] = mechanism_to_json(inst, s.mechanism);
  out["dual"] = dual_to_json(inst, s.dual);
  out["ledger"] = ledger_to_json(ledger);
  return out;
}

}  // namespace

Json certificate_json(const Instance& inst, const DsSolution& s) {
  return certificate_common(inst, s, Form::DS, check_cs_ds(inst, s.mechanism, s.dual));
}

Json certificate_json(const Instance& inst, const BayesSolution& s) {
  return certificate_common(inst, s, Form::Bayesian, check_cs_bayes(inst, s.mechanism, s.dual));
}

CertificateCheck verify_certificate_json(const Json& doc) {
  CertificateCheck check;
  auto problem = [&](std::string msg) { check.problems.push_back(std::move(msg)); };
  try {
    if (field(doc, "format") != "vva-certificate" || field(doc, "version") != 1) {
      problem("not a version 1 vva certificate");
      return check;
    }
    ValidationOptions options;
    options.require_zero = false;
    const Instance inst = validate_instance(raw_instance_from_json(field(doc, "instance")), options);
    if (inst.digest() != field(doc, "digest").get<std::string>()) problem("instance digest mismatch");

    const std::string form_text = field(doc, "form").get<std::string>();
    if (form_text != "ds" && form_text != "bic") {
      problem("unknown form " + form_text);
      return check;
    }
    const Form form = form_text == "ds" ? Form::DS : Form::Bayesian;
    const Mechanism mech = mechanism_from_json(inst, field(doc, "primal"), form);
    std::vector<std::string> why;
    if (!is_feasible(inst, mech, &why)) {
      problem("primal infeasible: " + why.front());
      return check;
    }
    CsLedger ledger;
    if (form == Form::DS) {
      ledger = check_cs_ds(inst, mech, dual_ds_from_json(inst, field(doc, "dual")));
    } else {
      ledger = check_cs_bayes(inst, mech, dual_bayes_from_json(inst, field(doc, "dual")));
    }
    const Rational objective = rational_from_json(field(doc, "objective"));
    if (ledger.primal_objective != objective) problem("primal objective differs from the stated objective");
    if (ledger.dual_objective != objective) problem("dual objective differs from the stated objective");
    if (!ledger.identity_holds()) problem("gap does not equal the product sum");
    if (!ledger.optimal()) problem(std::to_string(ledger.nonzero_products) + " nonzero complementary products");
    if (ledger_to_json(ledger) != field(doc, "ledger")) problem("stored ledger differs from the recomputed one");
  } catch (const Error& e) {
    problem(e.what());
  } catch (const Json::exception& e) {
    problem(std::string("malformed document: ") + e.what());
  }
  return check;
}

Json virtual_table_to_json(const Instance& inst, const VirtualValueTable& table) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < inst.buyers(); ++i) {
    for (std::size_t j = 0; j < inst.items(); ++j) {
      if (table.form() == Form::Bayesian) {
        for (std::size_t a = 0; a < inst.support_size(i); ++a) {
          rows.push_back({{"buyer", i}, {"item", j}, {"type", a}, {"phi", table.at_type(i, j, a).str()}});
        }
        continue;
      }
      for (ProfileId p = 0; p < inst.profile_count(); ++p) {
        rows.push_back(
            {{"buyer", i}, {"item", j}, {"profile", inst.profile_label(p)}, {"phi", table.at(inst, i, j, p).str()}});
      }
    }
  }
  Json out;
  out["form"] = std::string(form_name(table.form()));
  out["digest"] = inst.digest();
  out["entries"] = std::move(rows);
  return out;
}

Json report_to_json(const RevenueReport& r) {
  Json out;
  out["digest"] = r.digest;
  out["buyers"] = r.buyers;
  out["items"] = r.items;
  out["iid"] = r.iid;
  out["brev"] = to_string(r.brev);
  out["drev"] = to_string(r.drev);
  out["srev"] = to_string(r.srev);
  out["brev_eq_drev"] = r.brev_eq_drev;
  out["drev_eq_srev"] = r.drev_eq_srev;
  out["brev_eq_srev"] = r.brev_eq_srev;
  out["witness"] = r.witness;
  out["corollary"] = r.corollary ? Json(*r.corollary) : Json(nullptr);
  out["ubvv"] = r.ubvv_holds;
  out["findings"] = r.findings;
  return out;
}

}  // namespace vva
