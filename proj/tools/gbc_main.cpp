// Command-line front end: coefficient tables, identity verification suites,
// Gauss-Bonnet reports and density inspection for the model registry.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error.

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gbc/combinat.hpp"
#include "gbc/gauss_bonnet.hpp"
#include "gbc/geometry_models.hpp"
#include "gbc/json_io.hpp"
#include "gbc/metric_engine.hpp"
#include "gbc/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitConfigError = 2;

struct OutputOptions {
  std::string format = "text";  // text | json | csv
  std::string out_path;
  bool no_timestamp = false;
};

std::string iso_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

int emit(const OutputOptions& opts, const std::string& payload) {
  if (opts.out_path.empty()) {
    std::cout << payload;
    return kExitOk;
  }
  std::ofstream f(opts.out_path, std::ios::binary);
  if (!f) {
    std::cerr << "cannot open output file '" << opts.out_path << "'\n";
    return kExitConfigError;
  }
  f << payload;
  return kExitOk;
}

void add_output_flags(CLI::App* cmd, OutputOptions* opts,
                      const std::string& formats = "text,json") {
  cmd->add_option("--format", opts->format, "output format (" + formats + ")")
      ->check(CLI::IsMember(CLI::detail::split(formats, ',')));
  cmd->add_option("--out", opts->out_path, "write output to a file instead of stdout");
  cmd->add_flag("--no-timestamp", opts->no_timestamp,
                "omit the timestamp field (byte-stable output)");
}

// ---------------------------------------------------------------------------
// coefficients

int run_coefficients(int m_max, const OutputOptions& opts) {
  using namespace gbc;
  if (m_max < 2 || m_max % 2 != 0 || m_max > 20) {
    std::cerr << "--m-max must be an even integer in [2, 20]\n";
    return kExitConfigError;
  }

  // internal cross-checks; any failure is a nonzero exit naming the identity
  for (int m = 2; m <= m_max; m += 2) {
    Rational gamma_sum = 0;
    for (int k = 0; k <= m / 2 - 1; ++k) {
      if (coeff_a(m, k) != coeff_a_product_form(m, k)) {
        std::cerr << "cross-check failed: a closed form vs product form at (m,k)=(" << m
                  << "," << k << ")\n";
        return kExitVerifyFailure;
      }
      if (coeff_b(m, k) != coeff_a(m, k) * Rational(int_pow(2, k)) * Rational(factorial(k)) *
                               Rational(factorial(m - 2 * k - 1))) {
        std::cerr << "cross-check failed: b = a*2^k*k!*(m-2k-1)! at (m,k)=(" << m << "," << k
                  << ")\n";
        return kExitVerifyFailure;
      }
      Rational c_sum = 0;
      for (int p = k; p <= m / 2 - 1; ++p) c_sum += coeff_w(m, p, k) * coeff_b(m, p);
      if (coeff_c(m, k) != c_sum) {
        std::cerr << "cross-check failed: c = sum w*b at (m,k)=(" << m << "," << k << ")\n";
        return kExitVerifyFailure;
      }
      for (int r = 0; r <= m / 2 - 1; ++r) {
        Rational lhs = Rational(m - 2 * k - 1, 2 * (k + 1)) * coeff_lambda(m, k, r) +
                       (k >= 1 ? coeff_lambda(m, k - 1, r) : Rational(0));
        if (lhs != Rational(k == r ? 1 : 0)) {
          std::cerr << "cross-check failed: lambda recurrence at (m,k,r)=(" << m << "," << k
                    << "," << r << ")\n";
          return kExitVerifyFailure;
        }
      }
      gamma_sum += coeff_gamma(m, k);
    }
    if (gamma_sum != Rational(double_factorial(m - 2))) {
      std::cerr << "cross-check failed: sum gamma = (m-2)!! at m=" << m << "\n";
      return kExitVerifyFailure;
    }
  }

  // gamma diagnostic: where the second printed equality disagrees
  std::vector<std::string> gamma_diag;
  for (int m = 2; m <= m_max; m += 2)
    for (int k = 0; k <= m / 2 - 1; ++k)
      if (coeff_gamma(m, k) != coeff_gamma_alt_printed(m, k))
        gamma_diag.push_back("(m,k)=(" + std::to_string(m) + "," + std::to_string(k) +
                             "): " + coeff_gamma(m, k).str() + " vs printed alt " +
                             coeff_gamma_alt_printed(m, k).str());

  if (opts.format == "json") {
    Json j;
    j["schema"] = 1;
    if (!opts.no_timestamp) j["generated_at"] = iso_timestamp();
    Json rows = Json::array();
    for (int m = 2; m <= m_max; m += 2) {
      Json row;
      row["m"] = m;
      Json a = Json::array(), b = Json::array(), c = Json::array(), g = Json::array();
      for (int k = 0; k <= m / 2 - 1; ++k) {
        a.push_back(coeff_a(m, k).str());
        b.push_back(coeff_b(m, k).str());
        c.push_back(coeff_c(m, k).str());
        g.push_back(coeff_gamma(m, k).str());
      }
      row["a"] = a;
      row["b"] = b;
      row["c"] = c;
      row["gamma"] = g;
      Rational gs = 0;
      for (int k = 0; k <= m / 2 - 1; ++k) gs += coeff_gamma(m, k);
      row["gamma_sum"] = gs.str();
      Json lam = Json::array();
      for (int k = 0; k <= m / 2 - 1; ++k) {
        Json lr = Json::array();
        for (int r = 0; r <= k; ++r) lr.push_back(coeff_lambda(m, k, r).str());
        lam.push_back(lr);
      }
      row["lambda"] = lam;
      rows.push_back(row);
    }
    j["rows"] = rows;
    j["gamma_alt_diagnostic"] = gamma_diag;
    return emit(opts, j.dump(2) + "\n");
  }

  if (opts.format == "csv") {
    std::ostringstream os;
    os << "m,k,a,b,c,gamma\n";
    for (int m = 2; m <= m_max; m += 2)
      for (int k = 0; k <= m / 2 - 1; ++k)
        os << m << ',' << k << ',' << coeff_a(m, k) << ',' << coeff_b(m, k) << ','
           << coeff_c(m, k) << ',' << coeff_gamma(m, k) << '\n';
    return emit(opts, os.str());
  }

  std::ostringstream os;
  for (int m = 2; m <= m_max; m += 2) {
    os << "m=" << m << "\n  a     = [";
    for (int k = 0; k <= m / 2 - 1; ++k) os << (k ? ", " : "") << coeff_a(m, k);
    os << "]\n  b     = [";
    for (int k = 0; k <= m / 2 - 1; ++k) os << (k ? ", " : "") << coeff_b(m, k);
    os << "]\n  c     = [";
    for (int k = 0; k <= m / 2 - 1; ++k) os << (k ? ", " : "") << coeff_c(m, k);
    os << "]\n  gamma = [";
    Rational gs = 0;
    for (int k = 0; k <= m / 2 - 1; ++k) {
      os << (k ? ", " : "") << coeff_gamma(m, k);
      gs += coeff_gamma(m, k);
    }
    os << "]   sum = " << gs << " = (m-2)!!\n  lambda:";
    for (int k = 0; k <= m / 2 - 1; ++k) {
      os << "  k=" << k << ": [";
      for (int r = 0; r <= k; ++r) os << (r ? ", " : "") << coeff_lambda(m, k, r);
      os << "]";
    }
    os << "\n";
  }
  if (!gamma_diag.empty()) {
    os << "note: the second printed equality for gamma differs from the normative one at:\n";
    for (const auto& d : gamma_diag) os << "  " << d << "\n";
  }
  return emit(opts, os.str());
}

// ---------------------------------------------------------------------------
// verify

int run_verify(const std::string& suite, const gbc::FaultInjection& fault,
               const OutputOptions& opts) {
  using namespace gbc;
  std::vector<CriterionResult> results;
  try {
    results = run_suite(suite, fault);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitConfigError;
  }

  bool all_pass = true;
  for (const auto& cr : results)
    if (!cr.passed()) all_pass = false;

  if (opts.format == "json") {
    Json j;
    j["schema"] = 1;
    if (!opts.no_timestamp) j["generated_at"] = iso_timestamp();
    j["suite"] = suite;
    j["pass"] = all_pass;
    Json arr = Json::array();
    for (const auto& cr : results) arr.push_back(to_json(cr));
    j["criteria"] = arr;
    int rc = emit(opts, j.dump(2) + "\n");
    if (rc != kExitOk) return rc;
  } else {
    std::ostringstream os;
    for (const auto& cr : results) {
      os << (cr.passed() ? "[PASS] " : "[FAIL] ") << "criterion " << cr.id << ": " << cr.title
         << "\n";
      for (const auto& r : cr.reports)
        if (!r.pass)
          os << "    FAILED " << r.check << ": expected " << r.expected << ", computed "
             << r.computed << "\n";
    }
    os << (all_pass ? "all checks passed" : "FAILURES present") << "\n";
    int rc = emit(opts, os.str());
    if (rc != kExitOk) return rc;
  }
  return all_pass ? kExitOk : kExitVerifyFailure;
}

// ---------------------------------------------------------------------------
// gauss-bonnet

int run_gauss_bonnet(const std::vector<std::string>& selectors, const std::string& mode,
                     const std::string& formulation_str, int quad_level, int quad_nodes,
                     const OutputOptions& opts) {
  using namespace gbc;
  Formulation formulation = Formulation::both;
  if (formulation_str == "b") formulation = Formulation::b;
  else if (formulation_str == "c") formulation = Formulation::c;

  QuadConfig cfg;
  cfg.sphere_level = quad_level;
  cfg.radial_nodes = quad_nodes;

  std::vector<GBReport> reports;
  std::vector<FlatCheckReport> flat_reports;
  for (const auto& sel : selectors) {
    ModelEntry entry;
    try {
      entry = make_model(sel);
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return kExitConfigError;
    }
    try {
      if (mode == "exact") {
        if (!entry.exact) {
          std::cerr << "model '" << sel
                    << "' needs quadrature; exact mode rejects it (use --mode float)\n";
          return kExitConfigError;
        }
        if (entry.exact->dim % 2 != 0) {
          flat_reports.push_back(flat_check(*entry.exact));
        } else {
          reports.push_back(euler_estimate_exact(*entry.exact, formulation));
        }
      } else {
        if (entry.flt.dim % 2 != 0) {
          flat_reports.push_back(flat_check(entry.flt));
        } else {
          reports.push_back(euler_estimate_float(entry.flt, formulation, cfg));
        }
      }
    } catch (const std::exception& e) {
      std::cerr << "model '" << sel << "': " << e.what() << "\n";
      return kExitConfigError;
    }
  }

  if (opts.format == "json") {
    Json j;
    j["schema"] = 1;
    if (!opts.no_timestamp) j["generated_at"] = iso_timestamp();
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    for (const auto& r : flat_reports) arr.push_back(to_json(r));
    j["reports"] = arr;
    return emit(opts, j.dump(2) + "\n");
  }
  if (opts.format == "csv") {
    if (!flat_reports.empty())
      std::cerr << "note: flat-theorem reports for odd-dimensional models are not part of "
                   "the CSV table; use --format json\n";
    return emit(opts, gb_reports_csv(reports));
  }

  std::ostringstream os;
  os.precision(12);
  for (const auto& r : reports) {
    os << r.model << " (m=" << r.m << ", chi=" << r.chi_declared << ", "
       << (r.exact_mode ? "exact" : "float") << ")\n";
    os << "  interior K_m : " << (r.exact_mode ? r.interior_exact : std::to_string(r.interior))
       << "\n";
    if (r.has_b) {
      os << "  boundary b   :";
      for (size_t k = 0; k < r.boundary_b.size(); ++k)
        os << " [k=" << k << "] " << (r.exact_mode ? r.boundary_b_exact[k]
                                                   : std::to_string(r.boundary_b[k]));
      os << "\n  chi (b)      : " << (r.exact_mode ? r.chi_b_exact : std::to_string(r.chi_estimate_b))
         << "  abs err " << r.abs_err_b << "\n";
    }
    if (r.has_c) {
      os << "  boundary c   :";
      for (size_t k = 0; k < r.boundary_c.size(); ++k)
        os << " [k=" << k << "] " << (r.exact_mode ? r.boundary_c_exact[k]
                                                   : std::to_string(r.boundary_c[k]));
      os << "\n  chi (c)      : " << (r.exact_mode ? r.chi_c_exact : std::to_string(r.chi_estimate_c))
         << "  abs err " << r.abs_err_c << "\n";
    }
    if (!r.note.empty()) os << "  note: " << r.note << "\n";
  }
  for (const auto& r : flat_reports) {
    os << r.model << " (m=" << r.m << ", odd dimension -> flat-boundary theorem)\n"
       << "  int_bd K      : "
       << (r.exact_mode ? r.boundary_integral_exact : std::to_string(r.boundary_integral))
       << "\n  Vol(S^{m-1})  : " << r.sphere_volume << "\n  degree = chi? : "
       << (r.exact_mode ? r.degree_exact : std::to_string(r.degree_estimate)) << " vs "
       << r.chi_declared << (r.exact_match ? "  (match)" : "  (MISMATCH)") << "\n";
  }
  return emit(opts, os.str());
}

// ---------------------------------------------------------------------------
// density

int run_density(const std::string& selector, const std::string& mode, bool dump_curvature,
                const OutputOptions& opts) {
  using namespace gbc;
  ModelEntry entry;
  try {
    entry = make_model(selector);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitConfigError;
  }
  if (mode == "exact" && !entry.exact) {
    std::cerr << "model '" << selector << "' has no exact instance (use --mode float)\n";
    return kExitConfigError;
  }

  struct Row {
    std::string kind;
    int k;
    std::string value_exact;
    double value;
  };
  std::vector<Row> rows;
  Json curvature_json;

  if (mode == "exact") {
    for (const auto& d : density_table(*entry.exact))
      rows.push_back({density_kind_name(d.kind), d.order, d.value.str(), d.value.to_double()});
    if (dump_curvature) curvature_json = to_json(entry.exact->curvature);
  } else {
    for (const auto& d : density_table(entry.flt))
      rows.push_back({density_kind_name(d.kind), d.order, "", d.value});
    if (dump_curvature) curvature_json = to_json(entry.flt.curvature);
  }

  const auto& model_note = (mode == "exact") ? entry.exact->note : entry.flt.note;
  if (opts.format == "json") {
    Json j;
    j["schema"] = 1;
    if (!opts.no_timestamp) j["generated_at"] = iso_timestamp();
    j["model"] = selector;
    j["mode"] = mode;
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json e;
      e["kind"] = r.kind;
      e["k"] = r.k;
      if (!r.value_exact.empty()) e["value_exact"] = r.value_exact;
      e["value"] = r.value;
      arr.push_back(e);
    }
    j["densities"] = arr;
    if (dump_curvature) j["curvature"] = curvature_json;
    if (!model_note.empty()) j["note"] = model_note;
    return emit(opts, j.dump(2) + "\n");
  }

  std::ostringstream os;
  os.precision(12);
  os << selector << " (" << mode << ")\n";
  for (const auto& r : rows) {
    os << "  " << r.kind << "[k=" << r.k << "] = ";
    if (!r.value_exact.empty())
      os << r.value_exact;
    else
      os << r.value;
    os << "\n";
  }
  if (dump_curvature) os << "curvature: " << curvature_json.dump() << "\n";
  if (!model_note.empty()) os << "note: " << model_note << "\n";
  return emit(opts, os.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"double forms, curvature integrals and the Gauss-Bonnet-Chern formula"};
  app.require_subcommand(1);

  // coefficients
  auto* coeff_cmd = app.add_subcommand("coefficients", "print the exact coefficient tables");
  int m_max = 12;
  OutputOptions coeff_opts;
  coeff_cmd->add_option("--m-max", m_max, "largest even dimension (<= 20)");
  add_output_flags(coeff_cmd, &coeff_opts, "text,json,csv");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run an identity verification suite");
  std::string suite = "all";
  OutputOptions verify_opts;
  gbc::FaultInjection fault;
  std::string fault_name;
  verify_cmd->add_option("suite", suite, "algebra | coefficients | models | metric-engine | all");
  add_output_flags(verify_cmd, &verify_opts, "text,json");
  verify_cmd->add_option("--inject-fault", fault_name, "testing hook")->group("");

  // gauss-bonnet
  auto* gb_cmd = app.add_subcommand("gauss-bonnet", "Euler characteristic report for models");
  std::vector<std::string> models;
  std::string mode = "exact", formulation = "both";
  int quad_level = 3, quad_nodes = 32;
  OutputOptions gb_opts;
  gb_cmd->add_option("model", models, "model selector(s), e.g. sphere:m=4")->required();
  gb_cmd->add_option("--mode", mode, "exact | float")->check(CLI::IsMember({"exact", "float"}));
  gb_cmd->add_option("--formulation", formulation, "b | c | both")
      ->check(CLI::IsMember({"b", "c", "both"}));
  gb_cmd->add_option("--quad-level", quad_level, "sphere product-rule level");
  gb_cmd->add_option("--quad-nodes", quad_nodes, "radial Gauss-Legendre nodes");
  add_output_flags(gb_cmd, &gb_opts, "text,json,csv");

  // density
  auto* den_cmd = app.add_subcommand("density", "pointwise curvature densities of a model");
  std::string den_model, den_mode = "exact";
  bool dump_curvature = false;
  OutputOptions den_opts;
  den_cmd->add_option("model", den_model, "model selector")->required();
  den_cmd->add_option("--mode", den_mode, "exact | float")
      ->check(CLI::IsMember({"exact", "float"}));
  den_cmd->add_flag("--dump-curvature", dump_curvature, "include the curvature double form");
  add_output_flags(den_cmd, &den_opts, "text,json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (coeff_cmd->parsed()) return run_coefficients(m_max, coeff_opts);
    if (verify_cmd->parsed()) {
      if (!fault_name.empty()) {
        if (fault_name == "coeff-b") {
          fault.corrupt_coeff_b = true;
        } else {
          std::cerr << "unknown fault '" << fault_name << "'\n";
          return kExitConfigError;
        }
      }
      return run_verify(suite, fault, verify_opts);
    }
    if (gb_cmd->parsed())
      return run_gauss_bonnet(models, mode, formulation, quad_level, quad_nodes, gb_opts);
    if (den_cmd->parsed()) return run_density(den_model, den_mode, dump_curvature, den_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}
