#include "ellipsolve/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "ellipsolve/errors.hpp"

namespace ellipsolve {

double rhs_cubic(const ReducedODE& ode, double u) {
  return ode.a0 + u * (ode.a1 + u * (ode.a2 + u * ode.a3));
}

MatchResult match_coefficients(const ReducedODE& ode) {
  MatchResult r;
  r.coefficients.c0 = 0.0;
  r.coefficients.c1 = 2 * ode.a0;
  r.coefficients.c2 = ode.a1;
  r.coefficients.c3 = 2 * ode.a2 / 3;
  r.coefficients.c4 = ode.a3 / 2;
  return r;
}

namespace {

bool is_c0_pin(const Constraint& c) {
  return (c.kind == ConstraintKind::zero || c.kind == ConstraintKind::equal) &&
         c.lhs.op() == Op::symbol && c.lhs.sym() == Symbol::c0;
}

struct System {
  const ParameterizedODE& ode;
  const SolutionFamily& fam;
  std::vector<const Constraint*> equations;
  const Constraint* c0_rule = nullptr;
  bool solve_m = false;
  double eps = 1.0;

  Bindings bind(const Eigen::VectorXd& x, double fixed_m) const {
    Bindings b;
    b.c = match_coefficients(ode.at(x[0], x[1])).coefficients;
    b.m = solve_m ? x[2] : fixed_m;
    b.eps = eps;
    if (c0_rule) b.c.c0 = c0_rule->kind == ConstraintKind::zero ? 0.0 : c0_rule->rhs.eval(b);
    return b;
  }

  Eigen::VectorXd residual(const Eigen::VectorXd& x, double fixed_m) const {
    const Bindings b = bind(x, fixed_m);
    Eigen::VectorXd r(static_cast<Eigen::Index>(equations.size()));
    for (std::size_t i = 0; i < equations.size(); ++i) {
      const Constraint& c = *equations[i];
      const double rhs = c.kind == ConstraintKind::equal ? c.rhs.eval(b) : 0.0;
      r[static_cast<Eigen::Index>(i)] = c.lhs.eval(b) - rhs;
    }
    return r;
  }
};

double norm_inf(const Eigen::VectorXd& v) {
  double out = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) return std::numeric_limits<double>::infinity();
    out = std::max(out, std::abs(v[i]));
  }
  return out;
}

enum class NewtonEnd { converged, stationary, exhausted };

NewtonEnd damped_newton(const System& sys, Eigen::VectorXd& x, double fixed_m, double tol,
                        int max_iterations, double& final_norm) {
  Eigen::VectorXd r = sys.residual(x, fixed_m);
  double nr = norm_inf(r);
  for (int it = 0; it < max_iterations; ++it) {
    final_norm = nr;
    if (nr <= tol) return NewtonEnd::converged;
    if (!std::isfinite(nr)) return NewtonEnd::exhausted;
    Eigen::MatrixXd J(r.size(), x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      const double h = 1e-7 * std::max(1.0, std::abs(x[j]));
      Eigen::VectorXd xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      J.col(j) = (sys.residual(xp, fixed_m) - sys.residual(xm, fixed_m)) / (2 * h);
    }
    const Eigen::VectorXd step = J.completeOrthogonalDecomposition().solve(-r);
    double lambda = 1.0;
    bool improved = false;
    for (int k = 0; k < 40; ++k, lambda *= 0.5) {
      Eigen::VectorXd trial = x + lambda * step;
      if (sys.solve_m && !(trial[2] > 0.0 && trial[2] < 1.0)) continue;
      const Eigen::VectorXd rt = sys.residual(trial, fixed_m);
      const double nt = norm_inf(rt);
      if (nt < nr) {
        x = trial;
        r = rt;
        nr = nt;
        improved = true;
        break;
      }
    }
    if (!improved) {
      final_norm = nr;
      return nr <= tol ? NewtonEnd::converged : NewtonEnd::stationary;
    }
  }
  final_norm = nr;
  return nr <= tol ? NewtonEnd::converged : NewtonEnd::exhausted;
}

bool admissible(const SolutionFamily& fam, const Bindings& b) {
  return std::all_of(fam.constraints.begin(), fam.constraints.end(),
                     [&](const Constraint& c) { return c.holds(b); });
}

std::vector<double> modulus_grid(const std::optional<double>& m) {
  if (m) return {*m};
  std::vector<double> out;
  for (int i = 1; i <= 9; ++i) out.push_back(i / 10.0);
  return out;
}

std::vector<ConstrainedMatch> closed_form(const ParameterizedODE& ode, const SolutionFamily& fam,
                                          int sub_case, const ConstrainedOptions& opts) {
  const double alpha = ode.physical.at("alpha");
  const double beta = ode.physical.at("beta");
  const double gamma = ode.physical.at("gamma");
  std::vector<ConstrainedMatch> out;
  const auto ms = sub_case == 1 ? std::vector<double>{fam.default_m} : modulus_grid(opts.m);
  for (double m : ms) {
    if (sub_case != 1 && !(m > 0.0 && m < 1.0)) continue;
    const SubCaseParameters p = kdv_mkdv_subcase(sub_case, alpha, beta, gamma, m);
    Bindings b;
    b.c = p.c;
    b.m = m;
    b.eps = opts.eps;
    if (!admissible(fam, b)) continue;
    ConstrainedMatch cm;
    cm.omega = p.omega;
    cm.K = p.C;
    if (fam.uses_m) cm.m = m;
    cm.coefficients = p.c;
    cm.method = "closed form";
    out.push_back(cm);
  }
  return out;
}

}  // namespace

std::vector<ConstrainedMatch> resolve_constrained_match(const ParameterizedODE& ode,
                                                        const SolutionFamily& family,
                                                        const ConstrainedOptions& opts) {
  if (!ode.at) throw ParameterError("parameterized reduction has no evaluator", "reduction");
  if (ode.pde == "kdv_mkdv") {
    if (const int k = kdv_mkdv_subcase_of(family)) return closed_form(ode, family, k, opts);
  }

  System sys{ode, family, {}, nullptr, false, family.uses_eps ? opts.eps : 1.0};
  for (const auto& c : family.constraints) {
    if (is_c0_pin(c) && !c.rhs.depends_on(Symbol::c0)) {
      if (!sys.c0_rule) sys.c0_rule = &c;
      continue;
    }
    if (c.kind != ConstraintKind::zero && c.kind != ConstraintKind::equal) continue;
    if (c.depends_on(Symbol::c0)) continue;
    sys.equations.push_back(&c);
    if (c.depends_on(Symbol::m)) sys.solve_m = family.uses_m && !opts.m;
  }

  const auto finish = [&](const Eigen::VectorXd& x, double fixed_m, std::string method) {
    const Bindings b = sys.bind(x, fixed_m);
    ConstrainedMatch cm;
    cm.omega = x[0];
    cm.K = x[1];
    if (family.uses_m) cm.m = b.m;
    cm.coefficients = b.c;
    cm.c0_free = sys.c0_rule == nullptr;
    cm.method = std::move(method);
    return std::pair{cm, admissible(family, b)};
  };

  const double fallback_m = opts.m.value_or(family.default_m);
  std::vector<ConstrainedMatch> out;
  if (sys.equations.empty()) {
    Eigen::VectorXd x(2);
    x << ode.omega0, ode.K0;
    auto [cm, ok] = finish(x, fallback_m, "unconstrained");
    if (ok) out.push_back(cm);
    return out;
  }

  {
    Eigen::VectorXd x(sys.solve_m ? 3 : 2);
    x[0] = ode.omega0;
    x[1] = ode.K0;
    if (sys.solve_m) x[2] = fallback_m;
    const double r = norm_inf(sys.residual(x, fallback_m));
    if (r <= opts.tol) {
      auto [cm, ok] = finish(x, fallback_m, "unconstrained");
      if (ok) return {cm};
    }
  }

  std::vector<Eigen::VectorXd> starts;
  const auto ms = sys.solve_m ? modulus_grid(std::nullopt) : std::vector<double>{fallback_m};
  for (double w : {ode.omega0, ode.omega0 + 1.0, -ode.omega0 - 1.0}) {
    for (double m : ms) {
      Eigen::VectorXd x(sys.solve_m ? 3 : 2);
      x[0] = w;
      x[1] = ode.K0;
      if (sys.solve_m) x[2] = m;
      starts.push_back(x);
    }
  }

  bool any_stationary = false, any_converged = false;
  std::vector<double> finals;
  for (Eigen::VectorXd x : starts) {
    double final_norm = 0.0;
    const NewtonEnd end = damped_newton(sys, x, fallback_m, opts.tol, opts.max_iterations, final_norm);
    finals.push_back(final_norm);
    if (end == NewtonEnd::stationary) any_stationary = true;
    if (end != NewtonEnd::converged) continue;
    any_converged = true;
    auto [cm, ok] = finish(x, fallback_m, "newton");
    if (!ok) continue;
    const bool dup = std::any_of(out.begin(), out.end(), [&](const ConstrainedMatch& o) {
      return std::abs(o.omega - cm.omega) <= 1e-8 * std::max(1.0, std::abs(cm.omega)) &&
             std::abs(o.K - cm.K) <= 1e-8 * std::max(1.0, std::abs(cm.K)) &&
             std::abs(o.m.value_or(0) - cm.m.value_or(0)) <= 1e-8;
    });
    if (!dup) out.push_back(cm);
  }
  if (!any_converged && !any_stationary)
    throw ConvergenceError(family.id + ": Newton did not converge from any start", finals);
  return out;
}

namespace {

struct Texts {
  const char* omega_printed;
  const char* omega_derived;
  const char* C_printed;
  const char* C_derived;
  const char* c1_printed;
  const char* c1_derived;
  const char* c2_printed;
  const char* c2_derived;
};

const Texts kTexts[7] = {
    {"-alpha^2/gamma", "-alpha^2/beta", "-2 alpha^3/(27 beta^2)", "-2 alpha^3/(27 beta^2)",
     "-4 alpha^3/(27 beta^2 gamma)", "-4 alpha^3/(27 beta^2 gamma)", "-alpha^2/(beta gamma)",
     "-alpha^2/(beta gamma)"},
    {"-alpha^2 (5m^2-1)/(4m^2 beta)", "-alpha^2 (5m^2-1)/(4m^2 beta)",
     "-alpha^3 (m^2-1)/(8m^2 beta^2)", "-alpha^3 (m^2-1)/(8m^2 beta^2)",
     "-alpha^3 (m^2-1)/(4m^2 beta^2 gamma)", "-alpha^3 (m^2-1)/(4m^2 beta^2 gamma)",
     "-alpha^2 (5m^2-1)/(4m^2 beta gamma)", "-alpha^2 (5m^2-1)/(4m^2 beta gamma)"},
    {"alpha^2 (m^2-5)/beta", "alpha^2 (m^2-5)/(4 beta)", "-alpha^3 (m^2-1)/(8m^2 beta^2)",
     "-alpha^3 (1-m^2)/(8 beta^2)", "-alpha^3 (1-m^2)/(4 beta^2 gamma)",
     "-alpha^3 (1-m^2)/(4 beta^2 gamma)", "-alpha^2 (5-m^2)/(4 beta gamma)",
     "-alpha^2 (5-m^2)/(4 beta gamma)"},
    {"-alpha^2 (4m^2+1)/(4m^2 beta)", "-alpha^2 (4m^2+1)/(4m^2 beta)", "-alpha^3/(8m^2 beta^2)",
     "-alpha^3/(8m^2 beta^2)", "-alpha^3/(4m^2 beta^2 gamma)", "-alpha^3/(4m^2 beta^2 gamma)",
     "-alpha^2 (4m^2+1)/(4m^2 beta gamma)", "-alpha^2 (4m^2+1)/(4m^2 beta gamma)"},
    {"-alpha^2 (5m^2-4)/(4 beta (m^2-1))", "-alpha^2 (5m^2-4)/(4 beta (m^2-1))",
     "-alpha^3 m^2/(8 beta^2 (m^2-1))", "-alpha^3 m^2/(8 beta^2 (m^2-1))",
     "-alpha^3 m^2/(4 beta^2 gamma (m^2-1))", "-alpha^3 m^2/(4 beta^2 gamma (m^2-1))",
     "-alpha^2 (4m^2+1)/(4m^2 beta gamma)", "-alpha^2 (5m^2-4)/(4 beta gamma (m^2-1))"},
    {"-alpha^2 (4m^2-5)/(4 beta (m^2-1))", "-alpha^2 (4m^2-5)/(4 beta (m^2-1))",
     "alpha^3/(8 beta^2 (m^2-1))", "alpha^3/(8 beta^2 (m^2-1))",
     "alpha^3/(4 beta^2 gamma (m^2-1))", "alpha^3/(4 beta^2 gamma (m^2-1))",
     "-alpha^2 (4m^2+1)/(4m^2 beta gamma)", "-alpha^2 (4m^2-5)/(4 beta gamma (m^2-1))"},
    {"-alpha^2 (m^2+4)/(4 beta)", "-alpha^2 (m^2+4)/(4 beta)", "-alpha^3 m^2/(8 beta^2)",
     "-alpha^3 m^2/(8 beta^2)", "-alpha^3 m^2/(4 beta^2 gamma)", "-alpha^3 m^2/(4 beta^2 gamma)",
     "-alpha^2 (4m^2+1)/(4m^2 beta gamma)", "-alpha^2 (m^2+4)/(4 beta gamma)"},
};

const char* const kFamilies[7][4] = {{"F23", "F24", "F25", "F26"}, {"F27", "F28"}, {"F29", "F30"},
                                     {"F31", "F32"}, {"F33", "F34"}, {"F35", "F36"},
                                     {"F37", "F38"}};

void check_sub_case(int k) {
  if (k < 1 || k > 7) throw ParameterError("sub-case must be 1..7", "1 <= sub_case <= 7");
}

SubCaseParameters assemble(int k, double alpha, double beta, double gamma, double omega, double C,
                           double c1, double c2) {
  SubCaseParameters p;
  p.sub_case = k;
  p.omega = omega;
  p.C = C;
  p.c = {0.0, c1, c2, -2 * alpha / gamma, -beta / gamma};
  for (const char* f : kFamilies[k - 1])
    if (f) p.families.emplace_back(f);
  return p;
}

}  // namespace

SubCaseParameters kdv_mkdv_subcase(int k, double alpha, double beta, double gamma, double m) {
  check_sub_case(k);
  if (beta == 0.0 || gamma == 0.0)
    throw ParameterError("beta and gamma must be nonzero", "beta*gamma != 0");
  const double a2 = alpha * alpha, a3 = a2 * alpha, b2 = beta * beta, m2 = m * m;
  double omega = 0, C = 0;
  switch (k) {
    case 1:
      omega = -a2 / beta;
      C = -2 * a3 / (27 * b2);
      break;
    case 2:
      omega = -a2 * (5 * m2 - 1) / (4 * m2 * beta);
      C = -a3 * (m2 - 1) / (8 * m2 * b2);
      break;
    case 3:
      omega = a2 * (m2 - 5) / (4 * beta);
      C = -a3 * (1 - m2) / (8 * b2);
      break;
    case 4:
      omega = -a2 * (4 * m2 + 1) / (4 * m2 * beta);
      C = -a3 / (8 * m2 * b2);
      break;
    case 5:
      omega = -a2 * (5 * m2 - 4) / (4 * beta * (m2 - 1));
      C = -a3 * m2 / (8 * b2 * (m2 - 1));
      break;
    case 6:
      omega = -a2 * (4 * m2 - 5) / (4 * beta * (m2 - 1));
      C = a3 / (8 * b2 * (m2 - 1));
      break;
    case 7:
      omega = -a2 * (m2 + 4) / (4 * beta);
      C = -a3 * m2 / (8 * b2);
      break;
  }
  return assemble(k, alpha, beta, gamma, omega, C, 2 * C / gamma, omega / gamma);
}

SubCaseParameters kdv_mkdv_printed(int k, double alpha, double beta, double gamma, double m) {
  check_sub_case(k);
  if (beta == 0.0 || gamma == 0.0)
    throw ParameterError("beta and gamma must be nonzero", "beta*gamma != 0");
  const double a2 = alpha * alpha, a3 = a2 * alpha, b2 = beta * beta, m2 = m * m;
  const double c2_copied = -a2 * (4 * m2 + 1) / (4 * m2 * beta * gamma);
  switch (k) {
    case 1:
      return assemble(k, alpha, beta, gamma, -a2 / gamma, -2 * a3 / (27 * b2),
                      -4 * a3 / (27 * b2 * gamma), -a2 / (beta * gamma));
    case 2:
      return assemble(k, alpha, beta, gamma, -a2 * (5 * m2 - 1) / (4 * m2 * beta),
                      -a3 * (m2 - 1) / (8 * m2 * b2), -a3 * (m2 - 1) / (4 * m2 * b2 * gamma),
                      -a2 * (5 * m2 - 1) / (4 * m2 * beta * gamma));
    case 3:
      return assemble(k, alpha, beta, gamma, a2 * (m2 - 5) / beta, -a3 * (m2 - 1) / (8 * m2 * b2),
                      -a3 * (1 - m2) / (4 * b2 * gamma), -a2 * (5 - m2) / (4 * beta * gamma));
    case 4:
      return assemble(k, alpha, beta, gamma, -a2 * (4 * m2 + 1) / (4 * m2 * beta),
                      -a3 / (8 * m2 * b2), -a3 / (4 * m2 * b2 * gamma), c2_copied);
    case 5:
      return assemble(k, alpha, beta, gamma, -a2 * (5 * m2 - 4) / (4 * beta * (m2 - 1)),
                      -a3 * m2 / (8 * b2 * (m2 - 1)), -a3 * m2 / (4 * b2 * gamma * (m2 - 1)),
                      c2_copied);
    case 6:
      return assemble(k, alpha, beta, gamma, -a2 * (4 * m2 - 5) / (4 * beta * (m2 - 1)),
                      a3 / (8 * b2 * (m2 - 1)), a3 / (4 * b2 * gamma * (m2 - 1)), c2_copied);
    default:
      return assemble(k, alpha, beta, gamma, -a2 * (m2 + 4) / (4 * beta), -a3 * m2 / (8 * b2),
                      -a3 * m2 / (4 * b2 * gamma), c2_copied);
  }
}

int kdv_mkdv_subcase_of(const SolutionFamily& family) {
  for (int k = 0; k < 7; ++k)
    for (const char* f : kFamilies[k])
      if (f && family.id == f) return k + 1;
  return 0;
}

KdvSample kdv_mkdv_canonical(int k) {
  check_sub_case(k);
  // beta*gamma > 0 where the family needs c4 = -beta/gamma < 0 (or c2 < 0 in (1)).
  const bool bg_positive = k == 1 || k == 4 || k == 5 || k == 7;
  return {1.0, 0.5, bg_positive ? 1.0 : -1.0, 0.5};
}

std::vector<Discrepancy> kdv_mkdv_discrepancies(int k, const KdvSample& at) {
  check_sub_case(k);
  const auto [alpha, beta, gamma, m] = at;
  const SubCaseParameters d = kdv_mkdv_subcase(k, alpha, beta, gamma, m);
  const SubCaseParameters p = kdv_mkdv_printed(k, alpha, beta, gamma, m);
  const Texts& t = kTexts[k - 1];
  const FamilyPtr fam = Catalog::certified().family(d.families.front());
  ResolveOptions ro;
  ro.c0 = 0.0;
  if (fam->uses_m) ro.m = m;
  const ResolvedFamily rf = resolve_family(fam, d.c, ro);

  std::vector<Discrepancy> out;
  auto add = [&](const char* q, const char* pt, const char* dt, double pv, double dv,
                 EllipticCoefficients target) {
    if (std::abs(pv - dv) <= 1e-12 * std::max({1.0, std::abs(pv), std::abs(dv)})) return;
    Discrepancy e;
    e.sub_case = k;
    e.quantity = q;
    e.printed = pt;
    e.derived = dt;
    e.at = at;
    e.printed_value = pv;
    e.derived_value = dv;
    e.printed_residual = validate_against(rf, target).max_residual;
    out.push_back(e);
  };
  EllipticCoefficients tc = d.c;
  tc.c2 = p.omega / gamma;
  add("omega", t.omega_printed, t.omega_derived, p.omega, d.omega, tc);
  tc = d.c;
  tc.c1 = 2 * p.C / gamma;
  add("C", t.C_printed, t.C_derived, p.C, d.C, tc);
  tc = d.c;
  tc.c1 = p.c.c1;
  add("c1", t.c1_printed, t.c1_derived, p.c.c1, d.c.c1, tc);
  tc = d.c;
  tc.c2 = p.c.c2;
  add("c2", t.c2_printed, t.c2_derived, p.c.c2, d.c.c2, tc);
  return out;
}

std::vector<Discrepancy> kdv_mkdv_discrepancies(double m) {
  std::vector<Discrepancy> out;
  for (int k = 1; k <= 7; ++k) {
    KdvSample at = kdv_mkdv_canonical(k);
    at.m = m;
    for (auto& d : kdv_mkdv_discrepancies(k, at)) out.push_back(std::move(d));
  }
  return out;
}

}  // namespace ellipsolve
