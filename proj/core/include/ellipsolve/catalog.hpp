#pragma once

// The 38 closed-form solution families of the quartic auxiliary equation
// (41 evaluators: F3, F10 and F16 carry a/b branches), their admissibility
// constraints, resolution against a given coefficient set, ODE validation,
// and the errata ledger for printed forms that fail validation.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ellipsolve/elliptic_core.hpp"
#include "ellipsolve/expression.hpp"
#include "ellipsolve/report.hpp"
#include "ellipsolve/rng.hpp"

namespace ellipsolve {

inline constexpr double kConstraintTol = 1e-9;
inline constexpr double kNumericOdeTol = 1e-6;
inline constexpr double kAnalyticOdeTol = 1e-8;
inline constexpr double kErrataPrintedMin = 1e-2;
inline constexpr double kErrataCorrectedMax = 1e-8;
inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr int kCertificationDraws = 25;

enum class ConstraintKind { zero, nonzero, positive, negative, equal };

struct Constraint {
  ConstraintKind kind = ConstraintKind::zero;
  Expr lhs = 0.0;
  Expr rhs = 0.0;  // equal only
  std::string text;
  bool inferred = false;  // not printed next to the family; see note

  // equal/zero use |lhs - rhs| <= tol * max(1, |lhs|, |rhs|).
  bool holds(const Bindings& b, double tol = kConstraintTol) const;
  bool depends_on(Symbol s) const { return lhs.depends_on(s) || rhs.depends_on(s); }
};

Constraint equals_zero(Expr e, std::string text);
Constraint nonzero(Expr e, std::string text);
Constraint positive(Expr e, std::string text);
Constraint negative(Expr e, std::string text);
Constraint equals(Expr lhs, Expr rhs, std::string text);

struct SolutionFamily {
  std::string id;     // "F1" ... "F38", "F3a", "F16b"
  int number = 0;     // 1..38
  char branch = 0;    // 'a', 'b' or 0
  int case_id = 0;    // 1..5
  std::vector<Constraint> printed_constraints;
  std::vector<Constraint> constraints;  // effective, after errata
  Expr printed_form = 0.0;
  Expr form = 0.0;  // effective, after errata
  bool uses_eps = false;
  bool uses_m = false;
  double default_m = 0.5;
  // Draw from the printed admissible region.
  std::function<Bindings(Rng&)> sample_printed;
  std::string note;

  bool form_corrected() const { return !form.same_as(printed_form); }
  bool constraints_corrected() const { return constraints.size() != printed_constraints.size(); }
  // Subset of {eps, m, c0} left open by the constraints and form.
  std::vector<std::string> free_symbols() const;
  // Draw from the effective region (rejection from the printed one).
  Bindings sample(Rng& rng) const;
};

using FamilyPtr = std::shared_ptr<const SolutionFamily>;

struct ResolvedFamily {
  FamilyPtr family;
  Bindings params;
  double residual_bound = 0.0;  // certified max residual of the family
};

enum class ErrataKind { form, constraint };

struct ErrataEntry {
  std::string family_id;
  ErrataKind kind = ErrataKind::form;
  std::string printed;    // expression or constraint text as printed
  std::string corrected;  // replacement text
  std::string change;     // the single edit, e.g. "cn -> sn"
  double printed_residual = 0.0;
  double corrected_residual = 0.0;
  int samples = 0;
  std::string note;
};

struct FamilyCertification {
  std::string id;
  double printed_residual = 0.0;
  double residual = 0.0;  // effective form on the effective region
  int draws = 0;
  bool pass = false;
};

class Catalog {
 public:
  // Families exactly as printed, no validation.
  static const Catalog& printed();
  // Errata applied: every family validated on 25 draws at seed 42.
  static const Catalog& certified();

  const std::vector<FamilyPtr>& families() const noexcept { return families_; }
  // Accepts "F17", "f17", "17", "F3a". Throws UnknownIdError.
  FamilyPtr family(std::string_view id) const;
  const std::vector<ErrataEntry>& errata() const noexcept { return errata_; }
  const std::vector<FamilyCertification>& certification() const noexcept { return cert_; }
  const std::vector<std::string>& unresolved() const noexcept { return unresolved_; }
  double residual_bound(std::string_view id) const;

 private:
  Catalog() = default;
  std::vector<FamilyPtr> families_;
  std::vector<ErrataEntry> errata_;
  std::vector<FamilyCertification> cert_;
  std::vector<std::string> unresolved_;

  friend Catalog build_printed_catalog();
  friend Catalog build_certified_catalog(std::uint64_t, int);
};

Catalog build_printed_catalog();
Catalog build_certified_catalog(std::uint64_t seed, int draws);

// Certified ledger; throws UnresolvedErrataError if some printed family
// failed and no single-edit correction passed.
std::vector<ErrataEntry> errata_ledger();

struct ResolveOptions {
  std::optional<double> c0;  // nullopt: c0 is FREE
  std::optional<double> m;   // caller-supplied modulus
  double eps = 1.0;
};

struct Exclusion {
  std::string family_id;
  std::string reason;
};

struct Resolution {
  std::vector<ResolvedFamily> admitted;  // ordered by catalog position
  std::vector<Exclusion> excluded;
};

// c.c0 is ignored when opts.c0 is nullopt.
Resolution applicable_families(const EllipticCoefficients& c, const ResolveOptions& opts = {});

// Single family; throws ParameterError carrying the reason on exclusion.
ResolvedFamily resolve_family(const FamilyPtr& family, const EllipticCoefficients& c,
                              const ResolveOptions& opts = {});

// Bind explicit parameters without resolution (constraints are not checked).
ResolvedFamily bind_family(const FamilyPtr& family, const Bindings& params);

// Throws PoleError within `pole_radius` of a pole (xi units).
double evaluate_family(const ResolvedFamily& rf, double xi, double pole_radius = 1e-6);

// Throws DomainError if the pole structure is not analyzable.
std::vector<double> family_poles(const ResolvedFamily& rf, double lo, double hi);

struct GridSpec {
  double lo = -3.0;
  double hi = 3.0;
  int n = 64;
  // Points closer than this (in units of the form's length scale) to a pole
  // are dropped. 0 keeps every point and lets stencils hit poles.
  double exclusion = 0.05;
};

struct ValidationOptions {
  GridSpec grid;
  double tol = kNumericOdeTol;
  bool second_form = false;
};

// First-form residual of the family on the grid (numeric derivatives).
ResidualReport validate_family(const ResolvedFamily& rf, const ValidationOptions& opts = {});

// As validate_family, but the right-hand sides use `target` while the form is
// evaluated with rf.params: does this profile solve a different equation?
ResidualReport validate_against(const ResolvedFamily& rf, const EllipticCoefficients& target,
                                const ValidationOptions& opts = {});

std::string catalog_json(const Catalog& catalog, int indent = 2);
std::string errata_json(const std::vector<ErrataEntry>& entries, int indent = 2);

}  // namespace ellipsolve
