// vva: solve, certify and characterize finite-type optimal auctions.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "vva/analysis.hpp"
#include "vva/error.hpp"
#include "vva/io.hpp"
#include "vva/lp.hpp"

namespace {

using namespace vva;

constexpr int kValidationExit = 2;
constexpr int kSolverExit = 3;
constexpr int kScaleExit = 4;

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ScaleLimit:
      return kScaleExit;
    case ErrorCode::InfeasibleInput:
    case ErrorCode::NotOptimal:
    case ErrorCode::NotRegular:
    case ErrorCode::NotAgentIndependent:
    case ErrorCode::SolverFailure:
      return kSolverExit;
    default:
      return kValidationExit;
  }
}

struct Common {
  std::string path;
  bool augment_zero = false;
  bool strict = false;
  std::size_t caps = 256;
  std::string rule = "bland";

  SolveOptions solve_options() const {
    SolveOptions o;
    o.rule = rule == "dantzig" ? PivotRule::Dantzig : PivotRule::Bland;
    return o;
  }

  Instance load() const {
    ValidationOptions options;
    options.augment_zero = augment_zero;
    options.strict_positive_mass = strict;
    Instance inst = load_instance(path, options);
    check_caps(inst);
    return inst;
  }

  void check_caps(const Instance& inst) const {
    if (inst.profile_count() > caps) {
      throw Error(ErrorCode::ScaleLimit, std::to_string(inst.profile_count()) + " profiles exceed the cap of " +
                                             std::to_string(caps));
    }
  }
};

void add_instance_options(CLI::App* cmd, Common& c, bool path_required = true) {
  auto* opt = cmd->add_option("instance", c.path, "Instance JSON file");
  if (path_required) opt->required();
  cmd->add_flag("--augment-zero", c.augment_zero, "Add the zero vector at mass 0 where missing");
  cmd->add_flag("--strict", c.strict, "Reject nonzero types with zero mass");
  cmd->add_option("--caps", c.caps, "Maximum number of value profiles")->capture_default_str();
  cmd->add_option("--rule", c.rule, "Simplex pivot rule")
      ->check(CLI::IsMember({"bland", "dantzig"}))
      ->capture_default_str();
}

Form parse_form(const std::string& text) { return text == "bic" ? Form::Bayesian : Form::DS; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << text;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

void print_report(const RevenueReport& r) {
  std::cout << "digest      " << r.digest << "\n"
            << "brev        " << to_string(r.brev) << "\n"
            << "drev        " << to_string(r.drev) << "\n"
            << "srev        " << to_string(r.srev) << "\n"
            << "brev=drev   " << yes_no(r.brev_eq_drev) << "\n"
            << "drev=srev   " << yes_no(r.drev_eq_srev) << "\n"
            << "brev=srev   " << yes_no(r.brev_eq_srev) << "\n"
            << "witness     " << (r.brev_eq_drev ? (r.witness ? "verified" : "failed") : "n/a") << "\n"
            << "corollary   " << (r.corollary ? (*r.corollary ? "holds" : "violated") : "n/a") << "\n"
            << "ubvv        " << (r.ubvv_holds ? "holds" : "violated") << "\n";
  for (const auto& f : r.findings) std::cout << "finding     " << f << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact optimal-auction LPs, dual certificates and virtual values"};
  app.require_subcommand(1);

  Common c;
  std::string form = "ds";
  std::string certificate;
  std::string program = "dslp";
  bool as_json = false;
  bool min_flow = false;
  GenSpec gen;
  bool use_gen = false;
  bool non_iid = false;
  std::uint64_t seed = 1;
  std::size_t count = 1;

  auto* validate = app.add_subcommand("validate", "Validate an instance and print its normalized form");
  add_instance_options(validate, c);

  auto* solve_cmd = app.add_subcommand("solve", "Solve the DS or Bayesian revenue LP");
  add_instance_options(solve_cmd, c);
  solve_cmd->add_option("--form", form, "ds or bic")->check(CLI::IsMember({"ds", "bic"}))->capture_default_str();
  solve_cmd->add_option("--certificate", certificate, "Write a certificate JSON file");

  auto* verify = app.add_subcommand("verify", "Re-check a certificate file");
  verify->add_option("certificate", certificate, "Certificate JSON file")->required();

  auto* characterize_cmd = app.add_subcommand("characterize", "Compare BRev, DRev and SRev");
  add_instance_options(characterize_cmd, c, false);
  characterize_cmd->add_flag("--gen", use_gen, "Generate instances instead of reading a file");
  characterize_cmd->add_option("--seed", seed, "Generator seed")->capture_default_str();
  characterize_cmd->add_option("--count", count, "Number of generated instances")->capture_default_str();
  characterize_cmd->add_option("--buyers", gen.buyers)->capture_default_str();
  characterize_cmd->add_option("--items", gen.items)->capture_default_str();
  characterize_cmd->add_option("--support", gen.support_size, "Nonzero types (or values per item)")
      ->capture_default_str();
  characterize_cmd->add_option("--max-value", gen.max_value)->capture_default_str();
  characterize_cmd->add_option("--denominator", gen.value_denominator)->capture_default_str();
  characterize_cmd->add_flag("--correlated", gen.correlated, "Draw joint value vectors");
  characterize_cmd->add_flag("--non-iid", non_iid, "Draw each buyer separately");

  auto* virtuals = app.add_subcommand("virtuals", "Print regularized virtual values");
  add_instance_options(virtuals, c);
  virtuals->add_option("--form", form, "ds or bic")->check(CLI::IsMember({"ds", "bic"}))->capture_default_str();
  virtuals->add_flag("--json", as_json, "Emit JSON");
  virtuals->add_flag("--min-flow", min_flow, "DS only: use the regular optimal dual of least total flow");

  auto* export_lp = app.add_subcommand("export-lp", "Write one of the four programs in LP format");
  add_instance_options(export_lp, c);
  export_lp->add_option("--program", program)
      ->check(CLI::IsMember({"dslp", "blp", "dual-dslp", "dual-blp"}))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      const Instance inst = c.load();
      std::cout << instance_to_json(inst).dump(2) << "\n" << "digest " << inst.digest() << "\n";
      return 0;
    }
    if (solve_cmd->parsed()) {
      const Instance inst = c.load();
      Json cert;
      if (parse_form(form) == Form::DS) {
        const DsSolution s = solve_ds(inst, c.solve_options());
        std::cout << to_string(s.cert.objective) << "\n";
        if (!certificate.empty()) cert = certificate_json(inst, s);
      } else {
        const BayesSolution s = solve_bayes(inst, c.solve_options());
        std::cout << to_string(s.cert.objective) << "\n";
        if (!certificate.empty()) cert = certificate_json(inst, s);
      }
      if (!certificate.empty()) write_file(certificate, cert.dump(2) + "\n");
      return 0;
    }
    if (verify->parsed()) {
      const CertificateCheck check = verify_certificate_json(read_json_file(certificate));
      if (check.ok()) {
        std::cout << "ok\n";
        return 0;
      }
      for (const auto& p : check.problems) std::cerr << "certificate: " << p << "\n";
      return kValidationExit;
    }
    if (characterize_cmd->parsed()) {
      if (!use_gen) {
        if (c.path.empty()) throw CLI::RequiredError("instance or --gen");
        print_report(characterize(c.load(), c.solve_options()));
        return 0;
      }
      gen.iid = !non_iid;
      gen.max_profiles = c.caps;
      for (std::size_t t = 0; t < count; ++t) {
        const Instance inst = gen_instance(gen, scan_seed(seed, t));
        Json line = report_to_json(characterize(inst, c.solve_options()));
        line["index"] = t;
        std::cout << line.dump() << "\n";
      }
      return 0;
    }
    if (virtuals->parsed()) {
      const Instance inst = c.load();
      VirtualValueTable table;
      VwmReport vwm;
      if (parse_form(form) == Form::DS) {
        const DsSolution s = solve_ds(inst, c.solve_options());
        const DualSolutionDS dual = min_flow ? min_flow_regular_dual_ds(inst, s.cert.objective, c.solve_options())
                                             : regularize_ds(inst, s.mechanism, s.dual);
        table = virtual_values_ds(inst, dual);
        vwm = check_vwm(inst, s.mechanism, table);
      } else {
        const BayesSolution s = solve_bayes(inst, c.solve_options());
        table = virtual_values_bayes(inst, regularize_bayes(inst, s.mechanism, s.dual));
        vwm = check_vwm(inst, s.mechanism, table);
      }
      const UbvvReport ubvv = check_ubvv(table, inst);
      if (as_json) {
        Json out = virtual_table_to_json(inst, table);
        out["vwm_violations"] = vwm.violations;
        out["ubvv_findings"] = ubvv.findings;
        std::cout << out.dump(2) << "\n";
        return 0;
      }
      const bool bayes = table.form() == Form::Bayesian;
      std::cout << "buyer item " << (bayes ? "type" : "profile") << " phi\n";
      for (std::size_t i = 0; i < inst.buyers(); ++i) {
        for (std::size_t j = 0; j < inst.items(); ++j) {
          if (bayes) {
            for (std::size_t a = 0; a < inst.support_size(i); ++a) {
              std::cout << i << " " << j << " " << a << " " << table.at_type(i, j, a).str() << "\n";
            }
            continue;
          }
          for (ProfileId p = 0; p < inst.profile_count(); ++p) {
            std::cout << i << " " << j << " " << inst.profile_label(p) << " " << table.at(inst, i, j, p).str() << "\n";
          }
        }
      }
      std::cout << "vwm " << (vwm.ok() ? "ok" : "violated") << " (" << vwm.checked_profiles << " profiles)\n";
      for (const auto& v : vwm.violations) std::cout << "vwm-violation " << v << "\n";
      std::cout << "ubvv " << (ubvv.holds() ? "holds" : "violated") << "\n";
      for (const auto& f : ubvv.findings) std::cout << "ubvv-finding " << f << "\n";
      return 0;
    }
    if (export_lp->parsed()) {
      const Instance inst = c.load();
      const LinearProgram lp = program == "dslp"        ? build_dslp(inst)
                               : program == "blp"       ? build_blp(inst)
                               : program == "dual-dslp" ? build_dual_dslp(inst)
                                                        : build_dual_blp(inst);
      std::cout << to_lp_format(lp);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const CLI::Error& e) {
    return app.exit(e);
  }
  return 0;
}
