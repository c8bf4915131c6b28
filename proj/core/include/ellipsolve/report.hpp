#pragma once

// Certification records and their JSON form. Keys are emitted sorted and
// numbers at full precision, so equal reports serialize to equal bytes.

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ellipsolve {

enum class Verdict { pass, fail, inconclusive };

std::string_view to_string(Verdict v);

struct ResidualStats {
  double max = 0.0;
  double median = 0.0;
  int samples = 0;
};

// max/median over the values; non-finite entries count as +inf.
ResidualStats summarize(std::vector<double> values);

struct ResidualReport {
  std::string subject;  // family id ("F17") or solution ("kdv_mkdv/u5")
  std::string check;    // "ode" or "pde"
  std::map<std::string, double> grid;        // exact grid specification
  std::map<std::string, double> parameters;  // bindings the subject ran with
  std::vector<double> excluded_poles;        // pole zones removed from the grid
  std::optional<ResidualStats> first_form;   // |F'^2 - quartic| / (1 + |quartic|)
  std::optional<ResidualStats> second_form;  // |F'' - cubic| / (1 + |cubic|)
  std::optional<ResidualStats> pde;          // fine stencil
  std::optional<ResidualStats> pde_coarse;   // stencil at twice the step
  double max_residual = 0.0;
  double median_residual = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::fail;
  std::vector<std::string> notes;
};

std::string to_json(const ResidualReport& r, int indent = 2);
std::string to_json(const std::vector<ResidualReport>& reports, int indent = 2);

}  // namespace ellipsolve
