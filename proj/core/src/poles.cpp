#include "ellipsolve/poles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ellipsolve/special_functions.hpp"

namespace ellipsolve {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxPoles = 100000;

using Points = std::optional<std::vector<double>>;

struct Affine {
  double slope = 0.0;
  double offset = 0.0;
};

// arg(xi) = slope*xi + offset, checked at three points.
std::optional<Affine> affine_in_xi(const Expr& arg, const Bindings& b) {
  const double f0 = arg.eval(b, 0.0);
  const double f1 = arg.eval(b, 1.0);
  const double fm = arg.eval(b, -1.0);
  if (!std::isfinite(f0) || !std::isfinite(f1) || !std::isfinite(fm)) return std::nullopt;
  const double s = 0.5 * (f1 - fm);
  const double scale = 1.0 + std::abs(f0) + std::abs(s);
  if (std::abs(f1 - f0 - s) > 1e-12 * scale || std::abs(f0 - fm - s) > 1e-12 * scale) {
    return std::nullopt;
  }
  return Affine{s, f0};
}

// Argument values base + j*period (period <= 0 means the base values only),
// mapped back to xi and clipped to [lo, hi].
Points pull_back(const Affine& a, const std::vector<double>& base, double period, double lo,
                 double hi) {
  std::vector<double> out;
  if (a.slope == 0.0) return out;
  const double u1 = a.slope * lo + a.offset;
  const double u2 = a.slope * hi + a.offset;
  const double ulo = std::min(u1, u2);
  const double uhi = std::max(u1, u2);
  for (double u0 : base) {
    if (period > 0.0 && std::isfinite(period)) {
      const double first = std::ceil((ulo - u0) / period);
      const double last = std::floor((uhi - u0) / period);
      if (last - first > static_cast<double>(kMaxPoles)) return std::nullopt;
      for (double j = first; j <= last; j += 1.0) {
        out.push_back((u0 + j * period - a.offset) / a.slope);
      }
    } else if (u0 >= ulo && u0 <= uhi) {
      out.push_back((u0 - a.offset) / a.slope);
    }
  }
  return out;
}

bool merge(Points& into, const Points& from) {
  if (!into || !from) {
    into.reset();
    return false;
  }
  into->insert(into->end(), from->begin(), from->end());
  return true;
}

double modulus_of(const Expr& jac, const Bindings& b) { return jac.children()[1].eval(b); }

// Where a Jacobi function of argument u takes the value 0.
std::optional<std::pair<std::vector<double>, double>> jacobi_zero_set(JacobiKind k, double m) {
  if (!(m >= 0.0 && m <= 1.0)) return std::nullopt;
  using R = std::pair<std::vector<double>, double>;
  if (m == 1.0) {
    switch (k) {
      case JacobiKind::sn:
      case JacobiKind::sc:
      case JacobiKind::sd: return R{{0.0}, 0.0};
      default: return R{{}, 0.0};
    }
  }
  const double K = complete_K(Modulus(m));
  switch (k) {
    case JacobiKind::sn:
    case JacobiKind::sc:
    case JacobiKind::sd: return R{{0.0}, 2.0 * K};
    case JacobiKind::cn:
    case JacobiKind::cd:
    case JacobiKind::cs: return R{{K}, 2.0 * K};
    case JacobiKind::ns_plus_cs: return R{{2.0 * K}, 4.0 * K};
    default: return R{{}, 0.0};
  }
}

// Where a Jacobi function of argument u is infinite.
std::optional<std::pair<std::vector<double>, double>> jacobi_pole_set(JacobiKind k, double m) {
  if (!(m >= 0.0 && m <= 1.0)) return std::nullopt;
  using R = std::pair<std::vector<double>, double>;
  if (m == 1.0) {
    switch (k) {
      case JacobiKind::ns:
      case JacobiKind::cs:
      case JacobiKind::ds:
      case JacobiKind::ns_plus_cs: return R{{0.0}, 0.0};
      default: return R{{}, 0.0};
    }
  }
  const double K = complete_K(Modulus(m));
  switch (k) {
    case JacobiKind::ns:
    case JacobiKind::cs:
    case JacobiKind::ds: return R{{0.0}, 2.0 * K};
    case JacobiKind::sc:
    case JacobiKind::dc: return R{{K}, 2.0 * K};
    case JacobiKind::ns_plus_cs: return R{{0.0}, 4.0 * K};
    default: return R{{}, 0.0};
  }
}

Points poles_of(const Expr& e, const Bindings& b, double lo, double hi);
Points zeros_of(const Expr& e, const Bindings& b, double lo, double hi);

// Arguments u with primitive(u) == v, as (base values, period).
std::optional<std::pair<std::vector<double>, double>> level_set(const Expr& prim, double v,
                                                                 const Bindings& b) {
  using R = std::pair<std::vector<double>, double>;
  if (prim.op() == Op::fn) {
    switch (prim.fn()) {
      case Fn::sinh: return R{{std::asinh(v)}, 0.0};
      case Fn::cosh:
        if (v < 1.0) return R{{}, 0.0};
        if (v == 1.0) return R{{0.0}, 0.0};
        return R{{-std::acosh(v), std::acosh(v)}, 0.0};
      case Fn::tanh:
        if (std::abs(v) >= 1.0) return R{{}, 0.0};
        return R{{std::atanh(v)}, 0.0};
      case Fn::coth:
        if (std::abs(v) <= 1.0) return R{{}, 0.0};
        return R{{std::atanh(1.0 / v)}, 0.0};
      case Fn::exp:
        if (v <= 0.0) return R{{}, 0.0};
        return R{{std::log(v)}, 0.0};
      case Fn::sin:
        if (std::abs(v) > 1.0) return R{{}, 0.0};
        return R{{std::asin(v), kPi - std::asin(v)}, 2.0 * kPi};
      case Fn::cos:
        if (std::abs(v) > 1.0) return R{{}, 0.0};
        return R{{std::acos(v), -std::acos(v)}, 2.0 * kPi};
      case Fn::tan: return R{{std::atan(v)}, kPi};
      case Fn::cot: return R{{v == 0.0 ? kPi / 2.0 : std::atan(1.0 / v)}, kPi};
      case Fn::sqrt: return std::nullopt;
    }
  }
  if (prim.op() == Op::jacobi && v == 0.0) return jacobi_zero_set(prim.jacobi_kind(), modulus_of(prim, b));
  return std::nullopt;
}

// The single xi-dependent primitive a denominator is built from.
bool collect_primitive(const Expr& e, std::optional<Expr>& found) {
  if (!e.depends_on(Symbol::xi)) return true;
  switch (e.op()) {
    case Op::symbol:
    case Op::fn:
    case Op::jacobi:
    case Op::wp:
      if (found && !found->same_as(e)) return false;
      found = e;
      return true;
    default:
      for (const auto& k : e.children()) {
        if (!collect_primitive(k, found)) return false;
      }
      return true;
  }
}

// Real roots of q(v) = A + B v + C v^2.
std::vector<double> quadratic_roots(double A, double B, double C) {
  const double scale = std::abs(A) + std::abs(B) + std::abs(C);
  if (std::abs(C) <= 1e-12 * scale) {
    if (B == 0.0) return {};
    return {-A / B};
  }
  const double disc = B * B - 4.0 * A * C;
  if (disc < -1e-12 * B * B) return {};
  const double s = std::sqrt(std::max(disc, 0.0));
  const double q = -0.5 * (B + std::copysign(s, B));
  if (q == 0.0) return {0.0};
  return {q / C, A / q};
}

Points zeros_generic(const Expr& e, const Bindings& b, double lo, double hi) {
  std::optional<Expr> prim;
  if (!collect_primitive(e, prim) || !prim) return std::nullopt;
  const double d0 = e.eval_pinned(b, 0.0, *prim, 0.0);
  const double d1 = e.eval_pinned(b, 0.0, *prim, 1.0);
  const double d2 = e.eval_pinned(b, 0.0, *prim, 2.0);
  const double d3 = e.eval_pinned(b, 0.0, *prim, -1.0);
  if (!std::isfinite(d0) || !std::isfinite(d1) || !std::isfinite(d2) || !std::isfinite(d3)) {
    return std::nullopt;
  }
  const double C = 0.5 * (d2 - 2.0 * d1 + d0);
  const double B = d1 - d0 - C;
  const double A = d0;
  const double scale = std::abs(d0) + std::abs(d1) + std::abs(d2) + std::abs(d3);
  if (std::abs(A - B + C - d3) > 1e-10 * scale) return std::nullopt;

  Points out = std::vector<double>{};
  for (double v : quadratic_roots(A, B, C)) {
    if (prim->op() == Op::symbol) {
      if (v >= lo && v <= hi) out->push_back(v);
      continue;
    }
    const auto arg = affine_in_xi(prim->children()[0], b);
    if (!arg) return std::nullopt;
    const auto ls = level_set(*prim, v, b);
    if (!ls) return std::nullopt;
    if (!merge(out, pull_back(*arg, ls->first, ls->second, lo, hi))) return std::nullopt;
  }
  return out;
}

Points zeros_of(const Expr& e, const Bindings& b, double lo, double hi) {
  if (!e.depends_on(Symbol::xi)) {
    const double v = e.eval(b);
    if (v == 0.0 || !std::isfinite(v)) return std::nullopt;
    return std::vector<double>{};
  }
  const auto& k = e.children();
  switch (e.op()) {
    case Op::symbol:
      if (0.0 >= lo && 0.0 <= hi) return std::vector<double>{0.0};
      return std::vector<double>{};
    case Op::mul: {
      Points out = zeros_of(k[0], b, lo, hi);
      merge(out, zeros_of(k[1], b, lo, hi));
      return out;
    }
    case Op::neg: return zeros_of(k[0], b, lo, hi);
    case Op::div: return zeros_of(k[0], b, lo, hi);
    case Op::pow:
      if (e.exponent() > 0.0) return zeros_of(k[0], b, lo, hi);
      return std::vector<double>{};
    case Op::fn: {
      if (e.fn() == Fn::sqrt) return zeros_of(k[0], b, lo, hi);
      const auto arg = affine_in_xi(k[0], b);
      if (!arg) return std::nullopt;
      switch (e.fn()) {
        case Fn::sinh:
        case Fn::tanh: return pull_back(*arg, {0.0}, 0.0, lo, hi);
        case Fn::sin:
        case Fn::tan: return pull_back(*arg, {0.0}, kPi, lo, hi);
        case Fn::cos:
        case Fn::cot: return pull_back(*arg, {kPi / 2.0}, kPi, lo, hi);
        default: return std::vector<double>{};
      }
    }
    case Op::jacobi: {
      const auto arg = affine_in_xi(k[0], b);
      const auto zs = jacobi_zero_set(e.jacobi_kind(), modulus_of(e, b));
      if (!arg || !zs) return std::nullopt;
      return pull_back(*arg, zs->first, zs->second, lo, hi);
    }
    case Op::wp: return std::nullopt;
    default: return zeros_generic(e, b, lo, hi);
  }
}

Points poles_of(const Expr& e, const Bindings& b, double lo, double hi) {
  if (!e.depends_on(Symbol::xi)) return std::vector<double>{};
  const auto& k = e.children();
  switch (e.op()) {
    case Op::symbol:
    case Op::constant: return std::vector<double>{};
    case Op::add:
    case Op::sub:
    case Op::mul: {
      Points out = poles_of(k[0], b, lo, hi);
      merge(out, poles_of(k[1], b, lo, hi));
      return out;
    }
    case Op::neg: return poles_of(k[0], b, lo, hi);
    case Op::div: {
      Points out = poles_of(k[0], b, lo, hi);
      merge(out, poles_of(k[1], b, lo, hi));
      merge(out, zeros_of(k[1], b, lo, hi));
      return out;
    }
    case Op::pow: {
      Points out = poles_of(k[0], b, lo, hi);
      if (e.exponent() < 0.0) merge(out, zeros_of(k[0], b, lo, hi));
      return out;
    }
    case Op::fn: {
      Points out = poles_of(k[0], b, lo, hi);
      Points own = std::vector<double>{};
      if (e.fn() == Fn::coth || e.fn() == Fn::cot || e.fn() == Fn::tan) {
        const auto arg = affine_in_xi(k[0], b);
        if (!arg) return std::nullopt;
        if (e.fn() == Fn::coth) own = pull_back(*arg, {0.0}, 0.0, lo, hi);
        if (e.fn() == Fn::cot) own = pull_back(*arg, {0.0}, kPi, lo, hi);
        if (e.fn() == Fn::tan) own = pull_back(*arg, {kPi / 2.0}, kPi, lo, hi);
      }
      merge(out, own);
      return out;
    }
    case Op::jacobi: {
      Points out = poles_of(k[0], b, lo, hi);
      const auto ps = jacobi_pole_set(e.jacobi_kind(), modulus_of(e, b));
      if (!ps) return std::nullopt;
      if (!ps->first.empty()) {
        const auto arg = affine_in_xi(k[0], b);
        if (!arg) return std::nullopt;
        merge(out, pull_back(*arg, ps->first, ps->second, lo, hi));
      }
      return out;
    }
    case Op::wp: {
      Points out = poles_of(k[0], b, lo, hi);
      const double g2 = k[1].eval(b);
      const double g3 = k[2].eval(b);
      const auto arg = affine_in_xi(k[0], b);
      if (!arg || !std::isfinite(g2) || !std::isfinite(g3)) return std::nullopt;
      const WeierstrassP P({g2, g3});
      const double period = P.real_period();
      merge(out, pull_back(*arg, {0.0}, std::isfinite(period) ? period : 0.0, lo, hi));
      return out;
    }
  }
  return std::nullopt;
}

void slopes(const Expr& e, const Bindings& b, double& best) {
  if (!e.depends_on(Symbol::xi)) return;
  if (e.op() == Op::fn || e.op() == Op::jacobi || e.op() == Op::wp) {
    if (const auto arg = affine_in_xi(e.children()[0], b)) {
      best = std::max(best, std::abs(arg->slope));
    }
  }
  for (const auto& k : e.children()) slopes(k, b, best);
}

}  // namespace

std::optional<std::vector<double>> real_poles(const Expr& form, const Bindings& b, double lo,
                                              double hi) {
  Points p = poles_of(form, b, lo, hi);
  if (!p) return std::nullopt;
  auto& v = *p;
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v) {
    if (!std::isfinite(x)) return std::nullopt;
    if (out.empty() || std::abs(x - out.back()) > 1e-12 * (1.0 + std::abs(x))) out.push_back(x);
  }
  return out;
}

double max_argument_slope(const Expr& form, const Bindings& b) {
  double best = 0.0;
  slopes(form, b, best);
  return best;
}

}  // namespace ellipsolve
