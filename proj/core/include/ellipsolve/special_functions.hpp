#pragma once

// Real-argument elliptic function kernel: Jacobi sn/cn/dn and their ratios,
// the complete integral K, and Weierstrass P on the real axis.
//
// Modulus convention: the second argument is the modulus m (not the
// parameter m^2), so dn^2 + m^2 sn^2 = 1.

#include <span>
#include <string_view>
#include <vector>

namespace ellipsolve {

inline constexpr double kDefaultPoleRadius = 1e-6;

class Modulus {
 public:
  // Throws DomainError unless 0 <= m <= 1.
  explicit Modulus(double m);

  double value() const noexcept { return m_; }
  double parameter() const noexcept { return m_ * m_; }
  // m' = sqrt(1 - m^2)
  double complementary() const noexcept;

 private:
  double m_;
};

struct JacobiTriple {
  double sn;
  double cn;
  double dn;
};

JacobiTriple jacobi(double u, Modulus m);

enum class JacobiRatio { ns, cs, ds, sc, sd, nd, cd, dc };

std::string_view to_string(JacobiRatio kind);

// Quotient of Jacobi functions, e.g. ds = dn/sn. Within `pole_radius` of a
// pole (in u) a PoleError carrying the nearest pole is thrown.
double jacobi_ratio(JacobiRatio kind, double u, Modulus m,
                    double pole_radius = kDefaultPoleRadius);

// ns(u) + cs(u) = (1 + cn)/sn. The poles of the sum are at u = 4jK only; at
// u = (4j+2)K both terms diverge but the sum vanishes.
double ns_plus_cs(double u, Modulus m, double pole_radius = kDefaultPoleRadius);

// Complete elliptic integral of the first kind by the AGM. m = 1 diverges and
// throws DomainError.
double complete_K(Modulus m);

// Real poles of the Jacobi ratios in [lo, hi]: zeros of sn are 2jK, zeros of
// cn are (2j+1)K. At m = 1 sn vanishes only at 0 and cn has no real zeros.
std::vector<double> sn_zeros(Modulus m, double lo, double hi);
std::vector<double> cn_zeros(Modulus m, double lo, double hi);

struct WeierstrassInvariants {
  double g2 = 0.0;
  double g3 = 0.0;
};

// P(z; g2, g3) restricted to the real axis. Construction factors
// 4t^3 - g2 t - g3 once; evaluation reduces to Jacobi functions, with the
// Laurent series near z = 0.
class WeierstrassP {
 public:
  explicit WeierstrassP(WeierstrassInvariants inv);

  double value(double z, double pole_radius = kDefaultPoleRadius) const;
  double derivative(double z, double pole_radius = kDefaultPoleRadius) const;

  // Spacing of the real lattice points; +inf when z = 0 is the only real pole.
  double real_period() const noexcept { return period_; }
  double nearest_pole(double z) const noexcept;
  std::vector<double> poles(double lo, double hi) const;

  WeierstrassInvariants invariants() const noexcept { return inv_; }

 private:
  enum class Form { degenerate, three_real_roots, one_real_root };

  bool use_laurent(double z) const noexcept;
  double laurent_value(double z) const noexcept;
  double laurent_derivative(double z) const noexcept;
  void check_pole(double z, double pole_radius) const;

  WeierstrassInvariants inv_;
  Form form_ = Form::degenerate;
  double root_ = 0.0;   // e3 (three real roots) or e2 (one real root)
  double scale_ = 0.0;  // sqrt(e1 - e3), or sqrt(H2) for one real root
  double modulus_ = 0.0;
  double period_ = 0.0;
  double laurent_radius_ = 0.0;
  std::vector<double> laurent_;  // coefficients of z^(2k-2), k = 2, 3, ...
};

double weierstrass_p(double z, WeierstrassInvariants inv,
                     double pole_radius = kDefaultPoleRadius);

}  // namespace ellipsolve
