#pragma once

// Central differences with Richardson extrapolation.
//   order 1, 2: base stencils at steps 4h, 2h, h, two extrapolation levels,
//               error O(h^6); footprint [x - 4h, x + 4h].
//   order 3:    base stencil at steps 2h, h, one level, error O(h^4);
//               footprint [x - 4h, x + 4h].
// Templated on the floating type so convergence can be observed in long
// double where double round-off would hide it.

#include <cmath>
#include <span>
#include <sstream>

#include "ellipsolve/errors.hpp"

namespace ellipsolve {

namespace detail {

template <class T, class F>
T central(const F& f, T x, int order, T s) {
  switch (order) {
    case 1: return (f(x + s) - f(x - s)) / (2 * s);
    case 2: return (f(x + s) - 2 * f(x) + f(x - s)) / (s * s);
    case 3:
      return (f(x + 2 * s) - 2 * f(x + s) + 2 * f(x - s) - f(x - 2 * s)) / (2 * s * s * s);
    default: throw DomainError("numeric_derivative: order must be 1, 2 or 3");
  }
}

}  // namespace detail

template <class T, class F>
T numeric_derivative(const F& f, T x, int order, T h) {
  if (!(h > 0)) throw DomainError("numeric_derivative: step must be positive");
  if (order == 3) {
    const T coarse = detail::central<T>(f, x, 3, 2 * h);
    const T fine = detail::central<T>(f, x, 3, h);
    return (4 * fine - coarse) / 3;
  }
  const T d4 = detail::central<T>(f, x, order, 4 * h);
  const T d2 = detail::central<T>(f, x, order, 2 * h);
  const T d1 = detail::central<T>(f, x, order, h);
  const T l1a = (4 * d2 - d4) / 3;
  const T l1b = (4 * d1 - d2) / 3;
  return (16 * l1b - l1a) / 15;
}

// As above, but throws PoleError when any pole lies within `exclusion` of the
// stencil footprint [x - 4h, x + 4h].
template <class T, class F>
T numeric_derivative(const F& f, T x, int order, T h, std::span<const double> poles,
                     double exclusion) {
  const T reach = 4 * h;
  for (double p : poles) {
    const T gap = std::abs(static_cast<T>(p) - x) - reach;
    if (gap <= static_cast<T>(exclusion)) {
      std::ostringstream os;
      os.precision(17);
      os << "numeric_derivative: stencil at " << static_cast<double>(x) << " reaches pole at " << p;
      throw PoleError(os.str(), p);
    }
  }
  return numeric_derivative<T>(f, x, order, h);
}

}  // namespace ellipsolve
