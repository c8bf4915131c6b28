#include "ellipsolve/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace ellipsolve {

namespace {

using nlohmann::json;

// JSON has no infinity; an unbounded residual is written as a string so the
// report stays parseable and distinguishes it from a missing value.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json stats(const ResidualStats& s) {
  return json{{"max", number(s.max)}, {"median", number(s.median)}, {"samples", s.samples}};
}

json report_json(const ResidualReport& r) {
  json j;
  j["subject"] = r.subject;
  j["check"] = r.check;
  json grid = json::object();
  for (const auto& [k, v] : r.grid) grid[k] = number(v);
  j["grid"] = grid;
  json params = json::object();
  for (const auto& [k, v] : r.parameters) params[k] = number(v);
  j["parameters"] = params;
  json poles = json::array();
  for (double p : r.excluded_poles) poles.push_back(number(p));
  j["excluded_poles"] = poles;
  if (r.first_form) j["first_form"] = stats(*r.first_form);
  if (r.second_form) j["second_form"] = stats(*r.second_form);
  if (r.pde) j["pde"] = stats(*r.pde);
  if (r.pde_coarse) j["pde_coarse"] = stats(*r.pde_coarse);
  j["max_residual"] = number(r.max_residual);
  j["median_residual"] = number(r.median_residual);
  j["tolerance"] = number(r.tolerance);
  j["verdict"] = std::string(to_string(r.verdict));
  j["notes"] = r.notes;
  return j;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

ResidualStats summarize(std::vector<double> values) {
  ResidualStats s;
  s.samples = static_cast<int>(values.size());
  if (values.empty()) return s;
  for (double& v : values)
    if (!std::isfinite(v)) v = std::numeric_limits<double>::infinity();
  std::sort(values.begin(), values.end());
  s.max = values.back();
  const std::size_t n = values.size();
  s.median = n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  return s;
}

std::string to_json(const ResidualReport& r, int indent) { return report_json(r).dump(indent); }

std::string to_json(const std::vector<ResidualReport>& reports, int indent) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  return arr.dump(indent);
}

}  // namespace ellipsolve
