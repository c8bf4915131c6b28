#pragma once

// The three registered evolution equations, their traveling-wave reductions,
// the lift from a profile F(xi) back to u(x, t), and their printed solution
// tables.
//
//   mbbm      u_t + u_x + u^2 u_x + u_xxt = 0
//   nls       i u_t + alpha u_xx + beta |u|^2 u = 0
//   kdv_mkdv  u_t + 6 (alpha u + beta u^2) u_x + gamma u_xxx = 0

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ellipsolve/catalog.hpp"
#include "ellipsolve/matcher.hpp"
#include "ellipsolve/rng.hpp"

namespace ellipsolve {

using Params = std::map<std::string, double>;
using Field = std::function<std::complex<double>(double x, double t)>;

struct PDEDefinition {
  std::string id;
  std::string equation;
  std::vector<std::string> physical;  // alpha, beta, gamma as applicable
  std::vector<std::string> wave;      // omega and the integration constant (NLS: c)
  std::string constant;               // name of K in the parameterized reduction
  bool complex_field = false;
};

const std::vector<std::string>& pde_ids();
// Throws UnknownIdError.
const PDEDefinition& pde_definition(std::string_view id);

// Required keys: mbbm {omega, B}, nls {alpha, beta, omega, c},
// kdv_mkdv {alpha, beta, gamma, omega, C}. Missing integration constants
// default to 0. Throws ParameterError naming the violated nonzero condition.
ReducedODE reduce(std::string_view pde, const Params& params);

// The reduction with omega and K open, physical constants from `params`.
ParameterizedODE parameterized(std::string_view pde, const Params& params);

// NLS wave number k = omega/(2 alpha).
double nls_wave_number(const Params& params);

// u(x, t) = F(x - omega t), times e^{i(kx + ct)} for NLS.
Field lift(std::string_view pde, std::function<double(double)> profile, const Params& params);

struct Condition {
  std::string text;
  std::function<bool(const Params&)> holds;
};

struct SolutionVariant {
  std::string formula;  // printed text of u(x, t)
  std::function<double(const Params&)> omega;
  std::function<double(double xi, const Params&)> profile;
};

struct SolutionEntry {
  std::string pde;
  std::string id;      // "u1" ... "u23"
  std::string family;  // originating catalog family
  std::vector<std::string> inputs;    // keys the caller supplies
  std::vector<std::string> optional;  // accepted, defaulted or derived when absent
  std::vector<Condition> printed_conditions;
  std::vector<Condition> conditions;  // effective
  SolutionVariant printed;
  std::optional<SolutionVariant> corrected;
  std::string erratum;  // empty if the entry passes as printed
  std::string note;
  // Fills derived keys (omega where fixed, C, c0 defaults, ...).
  std::function<void(Params&)> complete;
  // Draw from the effective admissible region.
  std::function<Params(Rng&)> sample;
  // Sign of eps in the family's closed form, when it differs from the entry's.
  std::function<double(const Params&)> family_eps;

  const SolutionVariant& effective() const { return corrected ? *corrected : printed; }
};

// The printed inventory: mbbm 11, nls 14, kdv_mkdv 23 entries.
const std::vector<SolutionEntry>& solution_table(std::string_view pde);
const SolutionEntry& solution_entry(std::string_view pde, std::string_view id);

struct SolutionOptions {
  bool unchecked = false;     // skip the validity conditions
  bool use_printed = false;   // evaluate the printed variant even if corrected
};

class TravelingWaveSolution {
 public:
  const SolutionEntry& entry() const { return *entry_; }
  const Params& params() const { return params_; }
  const SolutionVariant& variant() const { return *variant_; }
  bool unchecked() const { return unchecked_; }
  bool is_complex() const;

  double omega() const;
  double xi(double x, double t) const { return x - omega() * t; }
  double profile(double xi) const;
  std::complex<double> operator()(double x, double t) const;
  Field field() const;

  // The catalog family and its coefficients behind this solution.
  ResolvedFamily family() const;
  // Poles of the profile in xi; nullopt if not analyzable.
  std::optional<std::vector<double>> profile_poles(double lo, double hi) const;

 private:
  friend TravelingWaveSolution make_solution(std::string_view, std::string_view, Params,
                                             const SolutionOptions&);
  const SolutionEntry* entry_ = nullptr;
  const SolutionVariant* variant_ = nullptr;
  Params params_;
  bool unchecked_ = false;
};

// Throws UnknownIdError, ParameterError (missing input or zero denominator)
// or ConditionError naming the first violated printed condition.
TravelingWaveSolution make_solution(std::string_view pde, std::string_view id, Params params,
                                    const SolutionOptions& opts = {});

std::string registry_json(int indent = 2);

}  // namespace ellipsolve
