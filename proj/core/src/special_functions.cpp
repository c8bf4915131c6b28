#include "ellipsolve/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ellipsolve/errors.hpp"

namespace ellipsolve {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Descending Landen levels needed before the AGM difference drops below
// 1e-14; the iteration converges quadratically so 16 is never reached for
// m' >= 1e-300.
constexpr int kMaxLandenLevels = 16;
constexpr double kLandenTol = 1e-14;

std::string describe(const char* what, double where) {
  std::ostringstream os;
  os.precision(17);
  os << what << " near pole at " << where;
  return os.str();
}

double nearest_multiple(double u, double period, double offset) {
  return offset + period * std::nearbyint((u - offset) / period);
}

std::vector<double> lattice(double lo, double hi, double period, double offset) {
  std::vector<double> out;
  if (!(hi >= lo)) return out;
  const double first = std::ceil((lo - offset) / period);
  const double last = std::floor((hi - offset) / period);
  for (double j = first; j <= last; j += 1.0) out.push_back(offset + j * period);
  return out;
}

}  // namespace

Modulus::Modulus(double m) : m_(m) {
  if (!(m >= 0.0 && m <= 1.0)) {
    std::ostringstream os;
    os << "elliptic modulus " << m << " outside [0, 1]";
    throw DomainError(os.str());
  }
}

double Modulus::complementary() const noexcept {
  return std::sqrt((1.0 - m_) * (1.0 + m_));
}

JacobiTriple jacobi(double u, Modulus mod) {
  if (!std::isfinite(u)) throw DomainError("jacobi: non-finite argument");
  const double k = mod.value();
  if (k == 1.0) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }
  if (k == 0.0) return {std::sin(u), std::cos(u), 1.0};

  // Bulirsch's sncndn: AGM descent on (1, m'), then ascend through the
  // stored Landen levels.
  double mc = (1.0 - k) * (1.0 + k);
  std::array<double, kMaxLandenLevels> ms{};
  std::array<double, kMaxLandenLevels> ns{};
  int levels = 0;
  double c = 1.0;
  for (double a = 1.0; levels < kMaxLandenLevels; ++levels) {
    ms[levels] = a;
    ns[levels] = mc = std::sqrt(mc);
    c = 0.5 * (a + mc);
    if (std::abs(a - mc) <= kLandenTol * a) {
      ++levels;
      break;
    }
    mc *= a;
    a = c;
  }
  const double x = c * u;
  double sn = std::sin(x);
  double cn = std::cos(x);
  double dn = 1.0;
  if (sn != 0.0) {
    double a = cn / sn;
    c *= a;
    while (levels-- > 0) {
      const double b = ms[levels];
      a *= c;
      c *= dn;
      dn = (ns[levels] + a) / (b + a);
      a = c / b;
    }
    a = 1.0 / std::sqrt(c * c + 1.0);
    sn = sn < 0.0 ? -a : a;
    cn = c * sn;
  }
  return {sn, cn, dn};
}

std::string_view to_string(JacobiRatio kind) {
  switch (kind) {
    case JacobiRatio::ns: return "ns";
    case JacobiRatio::cs: return "cs";
    case JacobiRatio::ds: return "ds";
    case JacobiRatio::sc: return "sc";
    case JacobiRatio::sd: return "sd";
    case JacobiRatio::nd: return "nd";
    case JacobiRatio::cd: return "cd";
    case JacobiRatio::dc: return "dc";
  }
  return "?";
}

double complete_K(Modulus m) {
  if (m.value() == 1.0) throw DomainError("complete_K: diverges at m = 1");
  double a = 1.0;
  double b = m.complementary();
  for (int i = 0; i < 64 && std::abs(a - b) > 4.0 * std::numeric_limits<double>::epsilon() * a; ++i) {
    const double next = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = next;
  }
  return kPi / (a + b);
}

std::vector<double> sn_zeros(Modulus m, double lo, double hi) {
  if (m.value() == 1.0) {
    return (lo <= 0.0 && 0.0 <= hi) ? std::vector<double>{0.0} : std::vector<double>{};
  }
  return lattice(lo, hi, 2.0 * complete_K(m), 0.0);
}

std::vector<double> cn_zeros(Modulus m, double lo, double hi) {
  if (m.value() == 1.0) return {};
  const double K = complete_K(m);
  return lattice(lo, hi, 2.0 * K, K);
}

double jacobi_ratio(JacobiRatio kind, double u, Modulus m, double pole_radius) {
  if (!std::isfinite(u)) throw DomainError("jacobi_ratio: non-finite argument");
  const bool sn_pole = kind == JacobiRatio::ns || kind == JacobiRatio::cs || kind == JacobiRatio::ds;
  const bool cn_pole = kind == JacobiRatio::sc || kind == JacobiRatio::dc;
  if (sn_pole || (cn_pole && m.value() < 1.0)) {
    double pole;
    if (m.value() == 1.0) {
      pole = 0.0;
    } else {
      const double K = complete_K(m);
      pole = sn_pole ? nearest_multiple(u, 2.0 * K, 0.0) : nearest_multiple(u, 2.0 * K, K);
    }
    if (std::abs(u - pole) < pole_radius) {
      throw PoleError(describe(to_string(kind).data(), pole), pole);
    }
  }
  const auto [sn, cn, dn] = jacobi(u, m);
  switch (kind) {
    case JacobiRatio::ns: return 1.0 / sn;
    case JacobiRatio::cs: return cn / sn;
    case JacobiRatio::ds: return dn / sn;
    case JacobiRatio::sc: return sn / cn;
    case JacobiRatio::sd: return sn / dn;
    case JacobiRatio::nd: return 1.0 / dn;
    case JacobiRatio::cd: return cn / dn;
    case JacobiRatio::dc: return dn / cn;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double ns_plus_cs(double u, Modulus m, double pole_radius) {
  if (!std::isfinite(u)) throw DomainError("ns_plus_cs: non-finite argument");
  const double pole = m.value() == 1.0 ? 0.0 : nearest_multiple(u, 4.0 * complete_K(m), 0.0);
  if (std::abs(u - pole) < pole_radius) throw PoleError(describe("ns+cs", pole), pole);
  const auto [sn, cn, dn] = jacobi(u, m);
  (void)dn;
  // (1 + cn)/sn == sn/(1 - cn); pick the form without cancellation.
  return cn >= 0.0 ? (1.0 + cn) / sn : sn / (1.0 - cn);
}

WeierstrassP::WeierstrassP(WeierstrassInvariants inv) : inv_(inv) {
  const double g2 = inv.g2;
  const double g3 = inv.g3;
  if (!std::isfinite(g2) || !std::isfinite(g3)) {
    throw DomainError("weierstrass_p: non-finite invariants");
  }

  // Laurent coefficients c_k of z^(2k-2), k >= 2.
  laurent_ = {g2 / 20.0, g3 / 28.0};
  for (int k = 4; k <= 14; ++k) {
    double s = 0.0;
    for (int j = 2; j <= k - 2; ++j) s += laurent_[j - 2] * laurent_[k - j - 2];
    laurent_.push_back(3.0 * s / ((2.0 * k + 1.0) * (k - 3.0)));
  }
  const double size = std::max({std::pow(std::abs(g2), 0.25), std::cbrt(std::sqrt(std::abs(g3))), 1e-300});
  laurent_radius_ = 0.05 / size;

  if (g2 == 0.0 && g3 == 0.0) {
    form_ = Form::degenerate;
    period_ = kInf;
    return;
  }

  const double disc = g2 * g2 * g2 - 27.0 * g3 * g3;
  if (disc >= 0.0) {
    // Three real roots of t^3 - (g2/4) t - g3/4 (g2 > 0 here).
    form_ = Form::three_real_roots;
    const double r = std::sqrt(g2 / 12.0);
    const double arg = std::clamp(g3 / (8.0 * r * r * r), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    std::array<double, 3> e = {2.0 * r * std::cos(theta), 2.0 * r * std::cos(theta - 2.0 * kPi / 3.0),
                               2.0 * r * std::cos(theta + 2.0 * kPi / 3.0)};
    std::sort(e.begin(), e.end(), std::greater<>());
    root_ = e[2];
    const double spread = e[0] - e[2];
    scale_ = std::sqrt(spread);
    modulus_ = std::clamp(std::sqrt(std::max(0.0, (e[1] - e[2]) / spread)), 0.0, 1.0);
    period_ = modulus_ == 1.0 ? kInf : 2.0 * complete_K(Modulus(modulus_)) / scale_;
  } else {
    form_ = Form::one_real_root;
    const double p = -g2 / 4.0;
    const double q = -g3 / 4.0;
    const double d = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    root_ = std::cbrt(-q / 2.0 + d) + std::cbrt(-q / 2.0 - d);
    const double h2 = std::sqrt(3.0 * root_ * root_ - g2 / 4.0);
    scale_ = std::sqrt(h2);
    modulus_ = std::clamp(std::sqrt(std::max(0.0, 0.5 - 0.75 * root_ / h2)), 0.0, 1.0);
    period_ = modulus_ == 1.0 ? kInf : 2.0 * complete_K(Modulus(modulus_)) / scale_;
  }
}

double WeierstrassP::nearest_pole(double z) const noexcept {
  if (!std::isfinite(period_)) return 0.0;
  return nearest_multiple(z, period_, 0.0);
}

std::vector<double> WeierstrassP::poles(double lo, double hi) const {
  if (!std::isfinite(period_)) {
    return (lo <= 0.0 && 0.0 <= hi) ? std::vector<double>{0.0} : std::vector<double>{};
  }
  return lattice(lo, hi, period_, 0.0);
}

void WeierstrassP::check_pole(double z, double pole_radius) const {
  if (!std::isfinite(z)) throw DomainError("weierstrass_p: non-finite argument");
  const double pole = nearest_pole(z);
  if (std::abs(z - pole) < pole_radius || z == pole) {
    throw PoleError(describe("weierstrass_p", pole), pole);
  }
}

bool WeierstrassP::use_laurent(double z) const noexcept {
  return std::abs(z) < laurent_radius_;
}

double WeierstrassP::laurent_value(double z) const noexcept {
  const double z2 = z * z;
  double sum = 0.0;
  for (std::size_t i = laurent_.size(); i-- > 0;) sum = sum * z2 + laurent_[i];
  return 1.0 / z2 + sum * z2;
}

double WeierstrassP::laurent_derivative(double z) const noexcept {
  // d/dz sum c_k z^(2k-2) = sum (2k-2) c_k z^(2k-3)
  const double z2 = z * z;
  double sum = 0.0;
  for (std::size_t i = laurent_.size(); i-- > 0;) {
    const double power = 2.0 * static_cast<double>(i + 2) - 2.0;
    sum = sum * z2 + power * laurent_[i];
  }
  return -2.0 / (z2 * z) + sum * z;
}

double WeierstrassP::value(double z, double pole_radius) const {
  check_pole(z, pole_radius);
  if (form_ == Form::degenerate) return 1.0 / (z * z);
  if (use_laurent(z)) return laurent_value(z);
  const Modulus k(modulus_);
  if (form_ == Form::three_real_roots) {
    const double sn = jacobi(scale_ * z, k).sn;
    return root_ + scale_ * scale_ / (sn * sn);
  }
  const auto [sn, cn, dn] = jacobi(2.0 * scale_ * z, k);
  (void)dn;
  // (1 + cn)/(1 - cn) without cancellation on either side.
  const double ratio = cn >= 0.0 ? (1.0 + cn) * (1.0 + cn) / (sn * sn) : (sn * sn) / ((1.0 - cn) * (1.0 - cn));
  return root_ + scale_ * scale_ * ratio;
}

double WeierstrassP::derivative(double z, double pole_radius) const {
  check_pole(z, pole_radius);
  if (form_ == Form::degenerate) return -2.0 / (z * z * z);
  if (use_laurent(z)) return laurent_derivative(z);
  const Modulus k(modulus_);
  if (form_ == Form::three_real_roots) {
    const auto [sn, cn, dn] = jacobi(scale_ * z, k);
    return -2.0 * scale_ * scale_ * scale_ * cn * dn / (sn * sn * sn);
  }
  const auto [sn, cn, dn] = jacobi(2.0 * scale_ * z, k);
  const double one_minus = cn >= 0.0 ? sn * sn / (1.0 + cn) : 1.0 - cn;
  const double h2 = scale_ * scale_;
  return -4.0 * h2 * scale_ * sn * dn / (one_minus * one_minus);
}

double weierstrass_p(double z, WeierstrassInvariants inv, double pole_radius) {
  return WeierstrassP(inv).value(z, pole_radius);
}

}  // namespace ellipsolve
