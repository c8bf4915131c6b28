#include "ellipsolve/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "catalog_internal.hpp"
#include "ellipsolve/errors.hpp"
#include "ellipsolve/poles.hpp"
#include "json.hpp"

namespace ellipsolve {

bool Constraint::holds(const Bindings& b, double tol) const {
  const double l = lhs.eval(b);
  if (!std::isfinite(l)) return false;
  switch (kind) {
    case ConstraintKind::zero: return std::abs(l) <= tol * std::max(1.0, std::abs(l));
    case ConstraintKind::nonzero: return std::abs(l) > tol;
    case ConstraintKind::positive: return l > 0;
    case ConstraintKind::negative: return l < 0;
    case ConstraintKind::equal: {
      const double r = rhs.eval(b);
      if (!std::isfinite(r)) return false;
      return std::abs(l - r) <= tol * std::max({1.0, std::abs(l), std::abs(r)});
    }
  }
  return false;
}

Constraint equals_zero(Expr e, std::string text) {
  return {ConstraintKind::zero, std::move(e), 0.0, std::move(text), false};
}
Constraint nonzero(Expr e, std::string text) {
  return {ConstraintKind::nonzero, std::move(e), 0.0, std::move(text), false};
}
Constraint positive(Expr e, std::string text) {
  return {ConstraintKind::positive, std::move(e), 0.0, std::move(text), false};
}
Constraint negative(Expr e, std::string text) {
  return {ConstraintKind::negative, std::move(e), 0.0, std::move(text), false};
}
Constraint equals(Expr lhs, Expr rhs, std::string text) {
  return {ConstraintKind::equal, std::move(lhs), std::move(rhs), std::move(text), false};
}

std::vector<std::string> SolutionFamily::free_symbols() const {
  std::vector<std::string> out;
  if (uses_eps) out.emplace_back("eps");
  if (uses_m) out.emplace_back("m");
  out.emplace_back("xi0");
  const bool c0_tied = std::any_of(constraints.begin(), constraints.end(),
                                   [](const Constraint& c) { return c.depends_on(Symbol::c0); });
  if (!c0_tied && !form.depends_on(Symbol::c0)) out.emplace_back("c0");
  return out;
}

Bindings SolutionFamily::sample(Rng& rng) const {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const Bindings b = sample_printed(rng);
    if (std::all_of(constraints.begin(), constraints.end(),
                    [&](const Constraint& c) { return c.holds(b); }))
      return b;
  }
  throw ParameterError(id + ": admissible region could not be sampled", "sampling");
}

namespace {

std::string canonical_id(std::string_view raw) {
  std::string s;
  for (char ch : raw) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (!s.empty() && s[0] == 'f') s.erase(0, 1);
  if (s.empty() || !std::isdigit(static_cast<unsigned char>(s[0]))) return {};
  return "F" + s;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Effective constraints whose lhs is exactly c0 and which pin it.
const Constraint* c0_binding(const SolutionFamily& f) {
  for (const auto& c : f.constraints) {
    if ((c.kind == ConstraintKind::zero || c.kind == ConstraintKind::equal) &&
        c.lhs.op() == Op::symbol && c.lhs.sym() == Symbol::c0 && !c.rhs.depends_on(Symbol::c0))
      return &c;
  }
  return nullptr;
}

// Roots of g on (0, 1) by scan and bisection, in increasing order. Sign
// changes across poles of g are bisected too; callers check the constraint.
std::vector<double> modulus_roots(const std::function<double(double)>& g) {
  constexpr int kScan = 400;
  std::vector<double> roots;
  double prev_m = 0.0;
  double prev_g = std::numeric_limits<double>::quiet_NaN();
  for (int i = 1; i < kScan; ++i) {
    const double m = static_cast<double>(i) / kScan;
    const double v = g(m);
    if (v == 0.0) {
      roots.push_back(m);
    } else if (std::isfinite(v) && std::isfinite(prev_g) && prev_g != 0.0 &&
               (v > 0) != (prev_g > 0)) {
      double lo = prev_m, hi = m, glo = prev_g;
      for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((gm > 0) == (glo > 0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_m = m;
    prev_g = v;
  }
  return roots;
}

struct Attempt {
  std::optional<ResolvedFamily> resolved;
  std::string reason;
  std::string condition;
};

Attempt try_resolve(const FamilyPtr& fam, const EllipticCoefficients& c, const ResolveOptions& opts,
                    double bound) {
  Attempt a;
  Bindings b;
  b.c = c;
  b.eps = fam->uses_eps ? opts.eps : 1.0;
  b.m = fam->default_m;
  const bool c0_free = !opts.c0.has_value();
  if (!c0_free) b.c.c0 = *opts.c0;
  const Constraint* c0_rule = c0_free ? c0_binding(*fam) : nullptr;

  if (c0_free && !c0_rule && fam->form.depends_on(Symbol::c0)) {
    a.reason = "c0 is free but the closed form depends on it";
    a.condition = "c0 given";
    return a;
  }

  if (fam->uses_m) {
    if (opts.m) {
      if (!(*opts.m > 0.0 && *opts.m < 1.0)) {
        a.reason = "modulus " + fmt(*opts.m) + " outside (0, 1)";
        a.condition = "0 < m < 1";
        return a;
      }
      b.m = *opts.m;
    } else {
      const Constraint* pin = nullptr;
      for (const auto& con : fam->constraints) {
        if (con.kind != ConstraintKind::equal && con.kind != ConstraintKind::zero) continue;
        if (!con.depends_on(Symbol::m) || &con == c0_rule) continue;
        pin = &con;
        break;
      }
      if (pin) {
        auto g = [&](double m) {
          Bindings t = b;
          t.m = m;
          return pin->lhs.eval(t) - pin->rhs.eval(t);
        };
        const auto roots = modulus_roots(g);
        std::optional<Attempt> first_failure;
        for (double root : roots) {
          Bindings t = b;
          t.m = root;
          if (!pin->holds(t)) continue;
          if (c0_rule) t.c.c0 = c0_rule->kind == ConstraintKind::zero ? 0.0 : c0_rule->rhs.eval(t);
          const Constraint* broken = nullptr;
          for (const auto& con : fam->constraints) {
            if (!con.holds(t)) {
              broken = &con;
              break;
            }
          }
          if (!broken) {
            a.resolved = ResolvedFamily{fam, t, bound};
            return a;
          }
          if (!first_failure)
            first_failure = Attempt{std::nullopt, "violates " + broken->text + " at m = " + fmt(root),
                                    broken->text};
        }
        if (first_failure) return *first_failure;
        a.reason = "'" + pin->text + "' has no solution with m in (0, 1)";
        a.condition = pin->text;
        return a;
      }
    }
  }
  if (c0_rule) b.c.c0 = c0_rule->kind == ConstraintKind::zero ? 0.0 : c0_rule->rhs.eval(b);

  for (const auto& con : fam->constraints) {
    if (!con.holds(b)) {
      a.reason = "violates " + con.text;
      a.condition = con.text;
      return a;
    }
  }
  a.resolved = ResolvedFamily{fam, b, bound};
  return a;
}

}  // namespace

FamilyPtr Catalog::family(std::string_view id) const {
  const std::string key = canonical_id(id);
  for (const auto& f : families_)
    if (f->id == key) return f;
  throw UnknownIdError("unknown family id '" + std::string(id) + "'");
}

double Catalog::residual_bound(std::string_view id) const {
  const std::string key = family(id)->id;
  for (const auto& c : cert_)
    if (c.id == key) return c.residual;
  return 0.0;
}

Resolution applicable_families(const EllipticCoefficients& c, const ResolveOptions& opts) {
  const Catalog& cat = Catalog::certified();
  Resolution out;
  for (const auto& fam : cat.families()) {
    Attempt a = try_resolve(fam, c, opts, cat.residual_bound(fam->id));
    if (a.resolved)
      out.admitted.push_back(std::move(*a.resolved));
    else
      out.excluded.push_back({fam->id, std::move(a.reason)});
  }
  return out;
}

ResolvedFamily resolve_family(const FamilyPtr& family, const EllipticCoefficients& c,
                              const ResolveOptions& opts) {
  double bound = 0.0;
  try {
    bound = Catalog::certified().residual_bound(family->id);
  } catch (const UnknownIdError&) {
  }
  Attempt a = try_resolve(family, c, opts, bound);
  if (!a.resolved) throw ParameterError(family->id + ": " + a.reason, a.condition);
  return std::move(*a.resolved);
}

ResolvedFamily bind_family(const FamilyPtr& family, const Bindings& params) {
  double bound = 0.0;
  try {
    bound = Catalog::certified().residual_bound(family->id);
  } catch (const UnknownIdError&) {
  }
  return ResolvedFamily{family, params, bound};
}

double evaluate_family(const ResolvedFamily& rf, double xi, double pole_radius) {
  const auto poles = real_poles(rf.family->form, rf.params, xi - 1.0, xi + 1.0);
  if (poles) {
    for (double p : *poles) {
      if (std::abs(p - xi) < pole_radius || p == xi)
        throw PoleError(rf.family->id + ": pole at xi = " + fmt(p), p);
    }
  }
  const double v = rf.family->form.eval(rf.params, xi);
  if (!std::isfinite(v)) {
    if (std::isinf(v)) throw PoleError(rf.family->id + ": pole at xi = " + fmt(xi), xi);
    throw DomainError(rf.family->id + ": form is not real at xi = " + fmt(xi) +
                      " for these parameters");
  }
  return v;
}

std::vector<double> family_poles(const ResolvedFamily& rf, double lo, double hi) {
  auto poles = real_poles(rf.family->form, rf.params, lo, hi);
  if (!poles) throw DomainError(rf.family->id + ": pole structure is not analyzable");
  return *poles;
}

ResidualReport validate_against(const ResolvedFamily& rf, const EllipticCoefficients& target,
                                const ValidationOptions& opts) {
  const bool own = target == rf.params.c;
  const auto res = detail::ode_residuals(rf.family->form, rf.params, opts.grid, opts.second_form,
                                         own ? nullptr : &target);
  ResidualReport r;
  r.subject = rf.family->id;
  r.check = "ode";
  r.grid = {{"lo", opts.grid.lo},
            {"hi", opts.grid.hi},
            {"n", static_cast<double>(opts.grid.n)},
            {"exclusion", res.exclusion},
            {"h_first", res.h1}};
  if (opts.second_form) r.grid["h_second"] = res.h2;
  const Bindings& p = rf.params;
  r.parameters = {{"c0", p.c.c0}, {"c1", p.c.c1}, {"c2", p.c.c2}, {"c3", p.c.c3}, {"c4", p.c.c4}};
  if (rf.family->uses_eps) r.parameters["eps"] = p.eps;
  if (rf.family->uses_m) r.parameters["m"] = p.m;
  r.excluded_poles = res.poles;
  r.first_form = summarize(res.first);
  r.max_residual = r.first_form->max;
  r.median_residual = r.first_form->median;
  if (opts.second_form) {
    r.second_form = summarize(res.second);
    if (r.second_form->max > r.max_residual) {
      r.max_residual = r.second_form->max;
      r.median_residual = r.second_form->median;
    }
  }
  if (!own) {
    r.parameters["target_c0"] = target.c0;
    r.parameters["target_c1"] = target.c1;
    r.parameters["target_c2"] = target.c2;
    r.parameters["target_c3"] = target.c3;
    r.parameters["target_c4"] = target.c4;
  }
  r.tolerance = opts.tol;
  r.verdict = r.max_residual <= opts.tol ? Verdict::pass : Verdict::fail;
  if (!res.poles_known) r.notes.emplace_back("pole structure not analyzable; no exclusions applied");
  if (rf.family->form_corrected()) r.notes.emplace_back("form corrected (errata ledger)");
  if (rf.family->constraints_corrected())
    r.notes.emplace_back("admissible region restricted (errata ledger)");
  return r;
}

ResidualReport validate_family(const ResolvedFamily& rf, const ValidationOptions& opts) {
  return validate_against(rf, rf.params.c, opts);
}

std::string catalog_json(const Catalog& catalog, int indent) {
  using nlohmann::json;
  json arr = json::array();
  for (const auto& f : catalog.families()) {
    json j;
    j["id"] = f->id;
    j["case"] = f->case_id;
    j["printed_form"] = f->printed_form.str();
    j["form"] = f->form.str();
    json cons = json::array();
    for (const auto& c : f->constraints) {
      json cj{{"text", c.text}};
      if (c.inferred) cj["inferred"] = true;
      cons.push_back(cj);
    }
    j["constraints"] = cons;
    j["free_symbols"] = f->free_symbols();
    std::string status = "as printed";
    if (f->form_corrected()) status = "form corrected";
    if (f->constraints_corrected()) status = "region restricted";
    if (std::find(catalog.unresolved().begin(), catalog.unresolved().end(), f->id) !=
        catalog.unresolved().end())
      status = "unresolved";
    j["errata_status"] = status;
    for (const auto& c : catalog.certification()) {
      if (c.id != f->id) continue;
      j["residual_bound"] = std::isfinite(c.residual) ? json(c.residual) : json("inf");
      j["certified"] = c.pass;
    }
    if (!f->note.empty()) j["note"] = f->note;
    arr.push_back(j);
  }
  return arr.dump(indent);
}

}  // namespace ellipsolve
