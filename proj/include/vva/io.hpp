#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "vva/analysis.hpp"
#include "vva/auction_lp.hpp"
#include "vva/regular.hpp"

namespace vva {

using Json = nlohmann::ordered_json;

// Instance files. Values and masses are JSON strings ("3/4") or integers.
RawInstance raw_instance_from_json(const Json& doc);
Json instance_to_json(const Instance& instance);
Instance load_instance(const std::string& path, const ValidationOptions& options = {});

// Nonzero entries keyed by LP column label (x[...], p[...]).
Json mechanism_to_json(const Instance& instance, const Mechanism& mechanism);
Mechanism mechanism_from_json(const Instance& instance, const Json& doc, Form form);
// Nonzero multipliers keyed by dual column label (zeta[...], eta[...], xi[...]).
Json dual_to_json(const Instance& instance, const DualSolutionDS& dual);
Json dual_to_json(const Instance& instance, const DualSolutionBayes& dual);
DualSolutionDS dual_ds_from_json(const Instance& instance, const Json& doc);
DualSolutionBayes dual_bayes_from_json(const Instance& instance, const Json& doc);

Json ledger_to_json(const CsLedger& ledger);

Json certificate_json(const Instance& instance, const DsSolution& solution);
Json certificate_json(const Instance& instance, const BayesSolution& solution);

struct CertificateCheck {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

// Rebuilds instance, primal and dual from the document and re-derives
// feasibility, objectives and the complementary-slackness ledger.
CertificateCheck verify_certificate_json(const Json& doc);

Json virtual_table_to_json(const Instance& instance, const VirtualValueTable& table);

// One findings record (a single JSONL line).
Json report_to_json(const RevenueReport& report);

Json read_json_file(const std::string& path);

}  // namespace vva
