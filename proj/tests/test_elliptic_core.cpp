#include <cmath>

#include "doctest.h"
#include "ellipsolve/elliptic_core.hpp"
#include "ellipsolve/errors.hpp"
#include "ellipsolve/numeric_diff.hpp"
#include "ellipsolve/rng.hpp"

using namespace ellipsolve;

TEST_CASE("quartic right-hand side") {
  Rng rng(1);
  const EllipticCoefficients r{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3),
                               rng.uniform(-3, 3), rng.uniform(-3, 3)};
  CHECK(rhs_quartic(0.0, r) == r.c0);
  CHECK(rhs_quartic(1.0, {1, 1, 1, 1, 1}) == 5.0);
  CHECK(rhs_quartic(2.0, {0, 0, 1, 0, -1}) == -12.0);
}

TEST_CASE("second form") {
  const EllipticCoefficients c{0.3, 2, 3, 4, 5};
  CHECK(rhs_second_form(0.0, c) == 1.0);
  CHECK(rhs_second_form(1.0, {0, 2, 3, 4, 5}) == 20.0);

  // 1/2 d/dF of the quartic, written out
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const EllipticCoefficients r{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3),
                                 rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const double u = 0.37;
    const double half_derivative = 0.5 * (r.c1 + 2 * r.c2 * u + 3 * r.c3 * u * u + 4 * r.c4 * u * u * u);
    REQUIRE(std::abs(rhs_second_form(u, r) - half_derivative) <= 1e-14);
  }
}

TEST_CASE("second form against a differenced quartic") {
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const EllipticCoefficients r{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3),
                                 rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const double u = rng.uniform(-2, 2);
    const double d = numeric_derivative<double>([&](double F) { return rhs_quartic(F, r); }, u, 1, 1e-3);
    REQUIRE(std::abs(rhs_second_form(u, r) - 0.5 * d) <= 1e-9);
  }
}

TEST_CASE("discriminants") {
  const auto d = discriminants({0, 0, 1, 0, -1});
  CHECK(d.delta_case1 == 4.0);
  CHECK(d.delta_case2 == 0.0);
  CHECK(d.delta_case3 == 1.0);
  CHECK(discriminants({0, 0, 1, 2, 1}).delta_case1 == 0.0);
  CHECK(discriminants({1, 0, -2, 0, 1}).delta_case3 == 0.0);

  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    EllipticCoefficients c;
    for (int k = 0; k < 5; ++k) c[k] = std::round(rng.uniform(-50, 50));
    const auto e = discriminants(c);
    REQUIRE(e.delta_case1 == c.c3 * c.c3 - 4 * c.c2 * c.c4);
    REQUIRE(e.delta_case2 == c.c1 * c.c1 - 4 * c.c0 * c.c2);
    REQUIRE(e.delta_case3 == c.c2 * c.c2 - 4 * c.c0 * c.c4);
    REQUIRE(std::floor(e.delta_case1) == e.delta_case1);
  }
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(validate({0, 0, 0, 0, 0}), ParameterError);
  CHECK_THROWS_AS(validate({0, NAN, 1, 0, 0}), ParameterError);
  CHECK_NOTHROW(validate({1, 0, 0, 0, 0}));
  EllipticCoefficients c{1, 2, 3, 4, 5};
  c[2] = 7;
  CHECK(c.c2 == 7);
  CHECK(c.as_array()[4] == 5);
}
