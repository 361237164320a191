#pragma once

// JSON/CSV views of the report types. All JSON objects carry "schema": 1 and
// use ordered keys so identical runs serialize byte-identically.

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "gbc/double_forms.hpp"
#include "gbc/gauss_bonnet.hpp"
#include "gbc/verify.hpp"

namespace gbc {

using Json = nlohmann::ordered_json;

inline Json to_json(const DoubleForm<Rational>& f) {
  Json j;
  j["dims"] = f.dims();
  j["bidegree"] = {f.left_degree(), f.right_degree()};
  Json entries = Json::array();
  for (const auto& [key, v] : f.coeffs()) {
    Json e;
    e["left"] = key.first;
    e["right"] = key.second;
    e["value"] = v.str();
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

inline Json to_json(const DoubleForm<double>& f) {
  Json j;
  j["dims"] = f.dims();
  j["bidegree"] = {f.left_degree(), f.right_degree()};
  Json entries = Json::array();
  for (const auto& [key, v] : f.coeffs()) {
    Json e;
    e["left"] = key.first;
    e["right"] = key.second;
    e["value"] = v;
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

inline Json to_json(const GBReport& r) {
  Json j;
  j["schema"] = 1;
  j["model"] = r.model;
  j["m"] = r.m;
  j["chi_declared"] = r.chi_declared;
  j["chi_asserted"] = r.chi_asserted;
  j["mode"] = r.exact_mode ? "exact" : "float";
  j["interior"] = r.interior;
  j["boundary_b"] = r.boundary_b;
  j["boundary_c"] = r.boundary_c;
  j["chi_estimate_b"] = r.chi_estimate_b;
  j["chi_estimate_c"] = r.chi_estimate_c;
  j["abs_err_b"] = r.abs_err_b;
  j["abs_err_c"] = r.abs_err_c;
  j["rel_err_b"] = r.rel_err_b;
  j["rel_err_c"] = r.rel_err_c;
  if (r.exact_mode) {
    j["interior_exact"] = r.interior_exact;
    j["boundary_b_exact"] = r.boundary_b_exact;
    j["boundary_c_exact"] = r.boundary_c_exact;
    j["chi_estimate_b_exact"] = r.chi_b_exact;
    j["chi_estimate_c_exact"] = r.chi_c_exact;
    j["exact_match_b"] = r.exact_match_b;
    j["exact_match_c"] = r.exact_match_c;
  }
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline Json to_json(const FlatCheckReport& r) {
  Json j;
  j["schema"] = 1;
  j["model"] = r.model;
  j["m"] = r.m;
  j["kind"] = "flat-boundary-theorem";
  j["chi_declared"] = r.chi_declared;
  j["boundary_integral"] = r.boundary_integral;
  j["sphere_volume"] = r.sphere_volume;
  j["degree_estimate"] = r.degree_estimate;
  if (r.exact_mode) {
    j["boundary_integral_exact"] = r.boundary_integral_exact;
    j["degree_exact"] = r.degree_exact;
  }
  j["match"] = r.exact_match;
  return j;
}

inline Json to_json(const VerificationReport& r) {
  Json j;
  j["check"] = r.check;
  j["expected"] = r.expected;
  j["computed"] = r.computed;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["provenance"] = r.provenance;
  return j;
}

inline Json to_json(const CriterionResult& cr) {
  Json j;
  j["criterion"] = cr.id;
  j["title"] = cr.title;
  j["pass"] = cr.passed();
  Json checks = Json::array();
  for (const auto& r : cr.reports) checks.push_back(to_json(r));
  j["checks"] = std::move(checks);
  return j;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string gb_reports_csv(const std::vector<GBReport>& reports) {
  std::ostringstream os;
  os.precision(17);
  os << "model,m,chi_declared,chi_estimate_b,chi_estimate_c,abs_err_b,abs_err_c,"
        "interior,boundary_total_b,boundary_total_c\n";
  for (const auto& r : reports) {
    double bsum = 0, csum = 0;
    for (double v : r.boundary_b) bsum += v;
    for (double v : r.boundary_c) csum += v;
    os << csv_escape(r.model) << ',' << r.m << ',' << r.chi_declared << ','
       << r.chi_estimate_b << ',' << r.chi_estimate_c << ',' << r.abs_err_b << ','
       << r.abs_err_c << ',' << r.interior << ',' << bsum << ',' << csum << '\n';
  }
  return os.str();
}

}  // namespace gbc
