#include <algorithm>
#include <cmath>
#include <limits>

#include "catalog_internal.hpp"
#include "ellipsolve/errors.hpp"
#include "ellipsolve/numeric_diff.hpp"
#include "ellipsolve/poles.hpp"

namespace ellipsolve::detail {

namespace {

double finite_or_inf(double r) {
  return std::isfinite(r) ? r : std::numeric_limits<double>::infinity();
}

}  // namespace

OdeResiduals ode_residuals(const Expr& form, const Bindings& b, const GridSpec& grid,
                           bool second_form, const EllipticCoefficients* target) {
  if (grid.n < 2 || !(grid.hi > grid.lo))
    throw InvalidGridError("grid needs hi > lo and at least two points");
  const double scale = 1.0 / std::max(1.0, max_argument_slope(form, b));
  OdeResiduals out;
  out.h1 = 1e-4 * scale;
  out.h2 = 1e-3 * scale;
  out.exclusion = grid.exclusion * scale;

  const auto poles_opt = real_poles(form, b, grid.lo - 1.0, grid.hi + 1.0);
  out.poles_known = poles_opt.has_value();
  const std::vector<double> poles = poles_opt.value_or(std::vector<double>{});
  const double skip = grid.exclusion > 0 ? out.exclusion + 4 * out.h2 : 0.0;

  const EllipticCoefficients& c = target ? *target : b.c;
  auto f = [&](double x) { return form.eval(b, x); };
  const double dx = (grid.hi - grid.lo) / (grid.n - 1);
  for (int i = 0; i < grid.n; ++i) {
    const double x = i + 1 == grid.n ? grid.hi : grid.lo + i * dx;
    bool excluded = false;
    for (double p : poles) {
      if (std::abs(x - p) < skip) {
        excluded = true;
        if (out.poles.empty() || out.poles.back() != p) out.poles.push_back(p);
      }
    }
    if (excluded) continue;
    const double F = f(x);
    const double d1 = numeric_derivative<double>(f, x, 1, out.h1, poles, 0.0);
    const double q = c.c0 + F * (c.c1 + F * (c.c2 + F * (c.c3 + F * c.c4)));
    out.first.push_back(finite_or_inf(std::abs(d1 * d1 - q) / (1 + std::abs(q))));
    if (second_form) {
      const double d2 = numeric_derivative<double>(f, x, 2, out.h2, poles, 0.0);
      const double s =
          0.5 * c.c1 + F * (c.c2 + F * (1.5 * c.c3 + F * 2.0 * c.c4));
      out.second.push_back(finite_or_inf(std::abs(d2 - s) / (1 + std::abs(s))));
    }
  }
  std::sort(out.poles.begin(), out.poles.end());
  out.poles.erase(std::unique(out.poles.begin(), out.poles.end()), out.poles.end());
  if (out.first.empty()) throw InvalidGridError("every grid point lies inside a pole exclusion");
  return out;
}

double sweep_residual(const Expr& form, const std::vector<Bindings>& draws, bool uses_eps,
                      const GridSpec& grid) {
  double worst = 0.0;
  for (const Bindings& d : draws) {
    for (double e : {1.0, -1.0}) {
      if (!uses_eps && e < 0) break;
      Bindings b = d;
      if (uses_eps) b.eps = e;
      double r;
      try {
        const OdeResiduals res = ode_residuals(form, b, grid, true);
        r = std::max(*std::max_element(res.first.begin(), res.first.end()),
                     *std::max_element(res.second.begin(), res.second.end()));
      } catch (const Error&) {
        r = std::numeric_limits<double>::infinity();
      }
      worst = std::max(worst, r);
    }
  }
  return worst;
}

}  // namespace ellipsolve::detail
