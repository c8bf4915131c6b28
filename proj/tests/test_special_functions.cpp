#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <cmath>
#include <cstring>
#include <numbers>

#include "doctest.h"
#include "ellipsolve/errors.hpp"
#include "ellipsolve/numeric_diff.hpp"
#include "ellipsolve/rng.hpp"
#include "ellipsolve/special_functions.hpp"

using namespace ellipsolve;

namespace {

struct BoostJacobi {
  double sn, cn, dn;
};

BoostJacobi boost_jacobi(double u, double m) {
  BoostJacobi r{};
  r.sn = boost::math::jacobi_elliptic(m, u, &r.cn, &r.dn);
  return r;
}

// K(m) by adaptive Gauss-Kronrod on the defining integral.
double K_quadrature(double m) {
  auto f = [m](double th) { return 1.0 / std::sqrt(1.0 - m * m * std::sin(th) * std::sin(th)); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, std::numbers::pi / 2,
                                                                       15, 1e-15);
}

}  // namespace

TEST_CASE("modulus range is enforced") {
  CHECK_THROWS_AS(Modulus(-0.1), DomainError);
  CHECK_THROWS_AS(Modulus(1.0000001), DomainError);
  CHECK_THROWS_AS(Modulus(NAN), DomainError);
  CHECK(Modulus(0.6).complementary() == doctest::Approx(0.8).epsilon(1e-15));
  CHECK_THROWS_AS(jacobi(INFINITY, Modulus(0.5)), DomainError);
}

TEST_CASE("jacobi at trivial points") {
  const auto z = jacobi(0.0, Modulus(0.7));
  CHECK(z.sn == 0.0);
  CHECK(z.cn == 1.0);
  CHECK(z.dn == 1.0);

  const auto q = jacobi(std::numbers::pi / 2, Modulus(0.0));
  CHECK(q.sn == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(q.cn) < 1e-15);
  CHECK(q.dn == 1.0);

  const auto h = jacobi(1.0, Modulus(1.0));
  CHECK(h.sn == doctest::Approx(std::tanh(1.0)).epsilon(1e-15));
  CHECK(h.cn == doctest::Approx(1.0 / std::cosh(1.0)).epsilon(1e-15));
  CHECK(h.dn == doctest::Approx(1.0 / std::cosh(1.0)).epsilon(1e-15));
}

TEST_CASE("jacobi agrees with boost over the modulus range") {
  Rng rng(7);
  double worst = 0.0;
  for (int i = 0; i < 4000; ++i) {
    const double m = rng.uniform(0.0, 1.0);
    const double u = rng.uniform(-20.0, 20.0);
    const auto a = jacobi(u, Modulus(m));
    const auto b = boost_jacobi(u, m);
    worst = std::max({worst, std::abs(a.sn - b.sn), std::abs(a.cn - b.cn), std::abs(a.dn - b.dn)});
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("jacobi identities and bounds") {
  Rng rng(11);
  for (int i = 0; i < 10000; ++i) {
    const double m = rng.uniform(0.0, 1.0);
    const double u = rng.uniform(-30.0, 30.0);
    const auto j = jacobi(u, Modulus(m));
    REQUIRE(std::abs(j.sn * j.sn + j.cn * j.cn - 1.0) <= 1e-12);
    REQUIRE(std::abs(j.dn * j.dn + m * m * j.sn * j.sn - 1.0) <= 1e-12);
    REQUIRE(std::abs(j.sn) <= 1.0 + 1e-15);
    REQUIRE(j.dn <= 1.0 + 1e-15);
    REQUIRE(j.dn >= std::sqrt(1 - m * m) - 1e-12);
  }
}

TEST_CASE("periodicity") {
  for (double m : {0.2, 0.5, 0.9}) {
    const double K = complete_K(Modulus(m));
    for (double u : {-1.3, 0.1, 0.77, 2.5}) {
      const auto a = jacobi(u, Modulus(m));
      const auto b = jacobi(u + 4 * K, Modulus(m));
      const auto c = jacobi(u + 2 * K, Modulus(m));
      CHECK(std::abs(a.sn - b.sn) < 1e-12);
      CHECK(std::abs(a.cn - b.cn) < 1e-12);
      CHECK(std::abs(a.dn - c.dn) < 1e-12);
      CHECK(std::abs(a.sn + c.sn) < 1e-12);
    }
  }
}

TEST_CASE("degenerate limits") {
  double e0 = 0.0, e1 = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double u = -5.0 + 10.0 * i / 2000;
    e0 = std::max(e0, std::abs(jacobi(u, Modulus(0.0)).sn - std::sin(u)));
    e1 = std::max(e1, std::abs(jacobi(u, Modulus(1.0)).sn - std::tanh(u)));
  }
  CHECK(e0 <= 1e-12);
  CHECK(e1 <= 1e-10);
}

TEST_CASE("quarter period") {
  for (int k = 1; k <= 9; ++k) {
    const double m = 0.1 * k;
    const double K = complete_K(Modulus(m));
    CHECK(std::abs(jacobi(K, Modulus(m)).sn - 1.0) <= 1e-10);
    CHECK(std::abs(jacobi(K, Modulus(m)).cn) <= 1e-10);
  }
}

TEST_CASE("complete K") {
  CHECK(complete_K(Modulus(0.0)) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
  CHECK_THROWS_AS(complete_K(Modulus(1.0)), DomainError);
  for (double m : {0.1, 0.5, 0.8, 0.99, 0.999999}) {
    const double K = complete_K(Modulus(m));
    CHECK(K == doctest::Approx(boost::math::ellint_1(m)).epsilon(1e-14));
    if (m < 0.99) CHECK(K == doctest::Approx(K_quadrature(m)).epsilon(1e-13));
  }
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    double a = rng.uniform(0.0, 0.999), b = rng.uniform(0.0, 0.999);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    REQUIRE(complete_K(Modulus(a)) < complete_K(Modulus(b)));
  }
}

TEST_CASE("ratios") {
  CHECK(jacobi_ratio(JacobiRatio::ns, std::numbers::pi / 2, Modulus(0.0)) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(jacobi_ratio(JacobiRatio::ds, 0.001, Modulus(0.5)) * 0.001 ==
        doctest::Approx(1.0).epsilon(1e-5));
  const double m = std::sqrt(2.0) / 2;
  const auto b = boost_jacobi(1.0, m);
  CHECK(jacobi_ratio(JacobiRatio::cs, 1.0, Modulus(m)) == doctest::Approx(b.cn / b.sn).epsilon(1e-13));
  CHECK(jacobi_ratio(JacobiRatio::sd, 1.0, Modulus(m)) == doctest::Approx(b.sn / b.dn).epsilon(1e-13));
  CHECK(jacobi_ratio(JacobiRatio::dc, 1.0, Modulus(m)) == doctest::Approx(b.dn / b.cn).epsilon(1e-13));

  const double K = complete_K(Modulus(0.5));
  try {
    jacobi_ratio(JacobiRatio::ns, 2 * K + 1e-8, Modulus(0.5));
    FAIL("expected a pole error");
  } catch (const PoleError& e) {
    CHECK(e.location() == doctest::Approx(2 * K).epsilon(1e-13));
  }
  CHECK_THROWS_AS(jacobi_ratio(JacobiRatio::sc, K, Modulus(0.5)), PoleError);
  CHECK_NOTHROW(jacobi_ratio(JacobiRatio::sc, K, Modulus(0.5), 0.0));
}

TEST_CASE("ns + cs keeps only the poles of the sum") {
  const Modulus m(std::sqrt(2.0) / 2);
  const double K = complete_K(m);
  CHECK(std::abs(ns_plus_cs(2 * K, m)) < 1e-12);
  CHECK_THROWS_AS(ns_plus_cs(0.0, m), PoleError);
  CHECK_THROWS_AS(ns_plus_cs(4 * K, m), PoleError);
  const auto b = boost_jacobi(0.9, m.value());
  CHECK(ns_plus_cs(0.9, m) == doctest::Approx((1 + b.cn) / b.sn).epsilon(1e-13));
}

TEST_CASE("pole lists") {
  const Modulus m(0.5);
  const double K = complete_K(m);
  const auto s = sn_zeros(m, -0.1, 4 * K + 0.1);
  REQUIRE(s.size() == 3);
  CHECK(s[1] == doctest::Approx(2 * K));
  const auto c = cn_zeros(m, 0.0, 4 * K);
  REQUIRE(c.size() == 2);
  CHECK(c[0] == doctest::Approx(K));
  CHECK(cn_zeros(Modulus(1.0), -10, 10).empty());
  CHECK(sn_zeros(Modulus(1.0), -10, 10).size() == 1);
}

TEST_CASE("weierstrass trivial and series values") {
  CHECK(weierstrass_p(2.0, {0.0, 0.0}) == doctest::Approx(0.25).epsilon(1e-15));
  const double z = 0.1;
  const double laurent = 1 / (z * z) + 1.0 * z * z / 20;
  CHECK(weierstrass_p(z, {1.0, 0.0}) == doctest::Approx(laurent).epsilon(1e-9));
  CHECK(weierstrass_p(0.1, {1.0, 0.0}) == doctest::Approx(100.0005).epsilon(1e-8));
  CHECK_THROWS_AS(weierstrass_p(0.0, {1.0, 1.0}), PoleError);
}

TEST_CASE("weierstrass differential equation") {
  auto de = [](double z, WeierstrassInvariants inv) {
    const WeierstrassP P(inv);
    const double h = 1e-3 * std::min(1.0, std::abs(z - P.nearest_pole(z)));
    const double p = P.value(z);
    const double dp = numeric_derivative<double>([&](double s) { return P.value(s); }, z, 1, h);
    const double rhs = 4 * p * p * p - inv.g2 * p - inv.g3;
    const double scale = 1 + std::abs(4 * p * p * p) + std::abs(inv.g2 * p) + std::abs(inv.g3);
    return std::abs(dp * dp - rhs) / scale;
  };
  CHECK(de(0.7, {2.0, 1.0}) <= 1e-8);

  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const WeierstrassInvariants inv{rng.uniform(-10, 10), rng.uniform(-10, 10)};
    const WeierstrassP P(inv);
    const double z = rng.sign() * rng.uniform(0.05, 3.0);
    if (std::abs(z - P.nearest_pole(z)) < 0.05) continue;
    const double p = P.value(z), dp = P.derivative(z);
    const double rhs = 4 * p * p * p - inv.g2 * p - inv.g3;
    const double scale = 1 + std::abs(4 * p * p * p) + std::abs(inv.g2 * p) + std::abs(inv.g3);
    INFO("g2=", inv.g2, " g3=", inv.g3, " z=", z);
    REQUIRE(std::abs(dp * dp - rhs) / scale <= 1e-8);
    REQUIRE(de(z, inv) <= 1e-8);
  }
}

TEST_CASE("weierstrass lattice") {
  const WeierstrassP P({4.0, 0.0});
  const double w = P.real_period();
  REQUIRE(std::isfinite(w));
  CHECK(P.value(0.3) == doctest::Approx(P.value(0.3 + w)).epsilon(1e-10));
  CHECK(P.value(0.3) == doctest::Approx(P.value(-0.3)).epsilon(1e-14));
  CHECK_THROWS_AS(P.value(w), PoleError);
  CHECK(P.poles(-0.5, 2.5 * w).size() == 3);
}

TEST_CASE("evaluation is pure") {
  const auto a = jacobi(1.2345, Modulus(0.321));
  const auto b = jacobi(1.2345, Modulus(0.321));
  CHECK(std::memcmp(&a, &b, sizeof a) == 0);
}

TEST_CASE("numeric derivative") {
  CHECK(std::abs(numeric_derivative<double>([](double x) { return std::sin(x); }, 0.0, 1, 1e-3) - 1) <
        1e-12);
  CHECK(std::abs(numeric_derivative<double>([](double x) { return x * x * x * x; }, 1.0, 2, 1e-3) -
                 12) < 1e-8);
  // Order 3 convergence is observed in long double; double round-off hides it.
  auto f = [](long double x) { return std::tanh(x); };
  auto d3 = [](long double x) {
    const long double s = 1 / std::cosh(x);
    const long double t = std::tanh(x);
    return -2 * s * s * (s * s - 2 * t * t);
  };
  const long double e1 = std::abs(numeric_derivative<long double>(f, 0.5L, 3, 1e-2L) - d3(0.5L));
  const long double e2 = std::abs(numeric_derivative<long double>(f, 0.5L, 3, 5e-3L) - d3(0.5L));
  CHECK(std::log2(static_cast<double>(e1 / e2)) >= 3.8);
  // footprint reaches 4e-3; exclusion 1e-3 beyond it
  const double near[] = {4.5e-3};
  CHECK_THROWS_AS(numeric_derivative<double>([](double x) { return x; }, 0.0, 1, 1e-3, near, 1e-3),
                  PoleError);
  const double far[] = {6e-3};
  CHECK(numeric_derivative<double>([](double x) { return x; }, 0.0, 1, 1e-3, far, 1e-3) ==
        doctest::Approx(1.0));
  CHECK_THROWS_AS(numeric_derivative<double>([](double x) { return x; }, 0.0, 4, 1e-3), DomainError);
}
