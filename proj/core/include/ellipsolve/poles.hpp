#pragma once

// Real poles of a closed form, read off its structure: singular primitives
// (coth, cot, tan, the Jacobi ratios with sn or cn below the bar, lattice
// points of wp) and zeros of denominators. A denominator is solved when it
// is at most quadratic in a single xi-dependent primitive whose argument is
// affine in xi; anything else is reported as unanalyzable.

#include <optional>
#include <vector>

#include "ellipsolve/expression.hpp"

namespace ellipsolve {

// Sorted pole locations in [lo, hi], or nullopt when the structure is outside
// what the analyzer handles.
std::optional<std::vector<double>> real_poles(const Expr& form, const Bindings& b, double lo,
                                              double hi);

// Largest |d arg/d xi| over the xi-dependent primitive arguments; the inverse
// sets the length scale used for derivative steps. 0 for forms with no
// primitive (polynomials, rational functions of xi).
double max_argument_slope(const Expr& form, const Bindings& b);

}  // namespace ellipsolve
