#pragma once

#include <vector>

#include "ellipsolve/catalog.hpp"

namespace ellipsolve::detail {

// F1..F38 exactly as printed, in catalog order.
std::vector<SolutionFamily> printed_families();

struct OdeResiduals {
  std::vector<double> first;   // |F'^2 - quartic| / (1 + |quartic|)
  std::vector<double> second;  // |F'' - cubic| / (1 + |cubic|), empty unless requested
  std::vector<double> poles;   // poles whose exclusion zone met the grid
  double h1 = 0.0;             // step for F'
  double h2 = 0.0;             // step for F''
  double exclusion = 0.0;      // effective exclusion radius
  bool poles_known = true;
};

// Pointwise residuals of `form` on the grid. Throws InvalidGridError when the
// exclusions remove every point, PoleError when a stencil reaches a pole
// (only possible with exclusion 0).
// `target`, when given, replaces b.c on the right-hand side only.
OdeResiduals ode_residuals(const Expr& form, const Bindings& b, const GridSpec& grid,
                           bool second_form, const EllipticCoefficients* target = nullptr);

// Worst residual over both forms and, when the form carries eps, both signs.
double sweep_residual(const Expr& form, const std::vector<Bindings>& draws, bool uses_eps,
                      const GridSpec& grid = {});

}  // namespace ellipsolve::detail
