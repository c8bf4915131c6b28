#include <cmath>
#include <set>

#include "doctest.h"
#include "ellipsolve/errors.hpp"
#include "ellipsolve/matcher.hpp"
#include "ellipsolve/pde.hpp"
#include "ellipsolve/verifier.hpp"

using namespace ellipsolve;

namespace {

ReducedODE raw(double a0, double a1, double a2, double a3) {
  ReducedODE o;
  o.a0 = a0;
  o.a1 = a1;
  o.a2 = a2;
  o.a3 = a3;
  return o;
}

}  // namespace

TEST_CASE("matching map") {
  const MatchResult r = match_coefficients(raw(0.5, -1.5, 3.0, 4.0));
  CHECK(r.coefficients.c1 == 1.0);
  CHECK(r.coefficients.c2 == -1.5);
  CHECK(r.coefficients.c3 == 2.0);
  CHECK(r.coefficients.c4 == 2.0);
  CHECK(r.coefficients.c0 == 0.0);
  CHECK(r.c0_free);
  CHECK(r.mapping[0] == "c1 = 2*a0");
}

TEST_CASE("registered reductions") {
  const double w = 4, B = 0.25;
  const auto mb = match_coefficients(reduce("mbbm", {{"omega", w}, {"B", B}})).coefficients;
  CHECK(mb.c1 == 2 * B / w);
  CHECK(mb.c2 == (1 - w) / w);
  CHECK(mb.c3 == 0.0);
  CHECK(mb.c4 == 1 / (6 * w));

  const auto nl = match_coefficients(
                      reduce("nls", {{"alpha", 1}, {"beta", 2}, {"omega", 2}, {"c", 1}}))
                      .coefficients;
  CHECK(nl.c2 == 2.0);
  CHECK(nl.c4 == -1.0);
  CHECK(nl.c1 == 0.0);
  CHECK(nl.c3 == 0.0);

  const auto kd = match_coefficients(reduce("kdv_mkdv", {{"alpha", 1}, {"beta", 1}, {"gamma", 1},
                                                         {"omega", 1}, {"C", 0}}))
                      .coefficients;
  CHECK(kd.c1 == 0.0);
  CHECK(kd.c2 == 1.0);
  CHECK(kd.c3 == -2.0);
  CHECK(kd.c4 == -1.0);
}

TEST_CASE("round trip on random reductions") {
  Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    const ReducedODE o = raw(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5),
                             rng.uniform(-5, 5));
    const EllipticCoefficients c = match_coefficients(o).coefficients;
    for (double u : {-2.0, -1.0, 1.0, 3.0}) {
      const double scale = 1 + std::abs(o.a0) + std::abs(o.a1 * u) + std::abs(o.a2 * u * u) +
                           std::abs(o.a3 * u * u * u);
      REQUIRE(std::abs(rhs_second_form(u, c) - rhs_cubic(o, u)) <= 1e-13 * scale);
    }
  }
}

TEST_CASE("unconstrained family keeps the start") {
  const ParameterizedODE p =
      parameterized("kdv_mkdv", {{"alpha", 1}, {"beta", 1}, {"gamma", 1}, {"omega", 1}});
  const auto r = resolve_constrained_match(p, *Catalog::certified().family("F1"));
  REQUIRE(r.size() == 1);
  CHECK(r[0].omega == 1.0);
  CHECK(r[0].K == 0.0);
  CHECK(r[0].method == "unconstrained");
}

TEST_CASE("sub-case (1) anchor") {
  const ParameterizedODE p =
      parameterized("kdv_mkdv", {{"alpha", 1}, {"beta", 1}, {"gamma", 1}});
  const auto r = resolve_constrained_match(p, *Catalog::certified().family("F23"));
  REQUIRE(r.size() == 1);
  CHECK(r[0].omega == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(r[0].K == doctest::Approx(-2.0 / 27).epsilon(1e-14));
  CHECK(r[0].method == "closed form");
}

TEST_CASE("sub-case (2) degenerates to the kink speed") {
  const double a = 1.5, b = 0.5, g = -1;
  const SubCaseParameters s = kdv_mkdv_subcase(2, a, b, g, 1 - 1e-9);
  CHECK(s.omega == doctest::Approx(-a * a / b).epsilon(1e-8));
  const TravelingWaveSolution kink =
      make_solution("kdv_mkdv", "u5", {{"alpha", a}, {"beta", b}, {"gamma", g}, {"eps", 1}});
  CHECK(kink.omega() == doctest::Approx(s.omega).epsilon(1e-8));
}

TEST_CASE("newton fallback") {
  // mbbm F6 needs c2 = 0, i.e. omega = 1, with B = 0
  ParameterizedODE p = parameterized("mbbm", {{"omega", 2.0}});
  const auto r = resolve_constrained_match(p, *Catalog::certified().family("F6"));
  REQUIRE(!r.empty());
  CHECK(r[0].omega == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r[0].K == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(r[0].method == "newton");

  CHECK(resolve_constrained_match(p, *Catalog::certified().family("F18")).empty());
  CHECK(resolve_constrained_match(p, *Catalog::certified().family("F19")).empty());

  ParameterizedODE broken;
  broken.pde = "raw";
  broken.at = [](double, double) { return raw(NAN, NAN, NAN, NAN); };
  CHECK_THROWS_AS(resolve_constrained_match(broken, *Catalog::certified().family("F6")),
                  ConvergenceError);
}

TEST_CASE("every sub-case output validates") {
  for (int k = 1; k <= 7; ++k) {
    const KdvSample s = kdv_mkdv_canonical(k);
    for (const auto& id : kdv_mkdv_subcase(k, s.alpha, s.beta, s.gamma, s.m).families) {
      const FamilyPtr fam = Catalog::certified().family(id);
      CHECK(kdv_mkdv_subcase_of(*fam) == k);
      // the sign of gamma decides which members of a sub-case are admissible
      int resolved = 0;
      for (double gamma : {s.gamma, -s.gamma}) {
        const SubCaseParameters d = kdv_mkdv_subcase(k, s.alpha, s.beta, gamma, s.m);
        const ParameterizedODE p =
            parameterized("kdv_mkdv", {{"alpha", s.alpha}, {"beta", s.beta}, {"gamma", gamma}});
        ConstrainedOptions co;
        co.m = s.m;
        for (const auto& x : resolve_constrained_match(p, *fam, co)) {
          ++resolved;
          ResolveOptions ro;
          ro.c0 = 0.0;
          if (x.m) ro.m = *x.m;
          const ResolvedFamily rf = resolve_family(fam, x.coefficients, ro);
          INFO("sub-case ", k, " ", id, " gamma ", gamma);
          CHECK(verify_ode(rf).max_residual <= kNumericOdeTol);
          CHECK(x.omega == doctest::Approx(d.omega).epsilon(1e-12));
          CHECK(x.K == doctest::Approx(d.C).epsilon(1e-12));
        }
      }
      INFO(id);
      CHECK(resolved >= 1);
    }
  }
  CHECK(kdv_mkdv_subcase_of(*Catalog::certified().family("F1")) == 0);
  CHECK_THROWS_AS(kdv_mkdv_subcase(8, 1, 1, 1), ParameterError);
}

TEST_CASE("discrepancy log") {
  const auto log = kdv_mkdv_discrepancies();
  std::set<std::pair<int, std::string>> got;
  for (const auto& d : log) {
    got.insert({d.sub_case, d.quantity});
    INFO(d.sub_case, " ", d.quantity);
    CHECK(d.printed_residual > 1e-2);
    CHECK(d.printed_value != d.derived_value);
    CHECK(!d.printed.empty());
  }
  const std::set<std::pair<int, std::string>> expected = {
      {1, "omega"}, {3, "omega"}, {3, "C"}, {5, "c2"}, {6, "c2"}, {7, "c2"}};
  CHECK(got == expected);

  // (1): omega is -alpha^2/beta, not -alpha^2/gamma
  const auto one = kdv_mkdv_discrepancies(1, {2.0, 0.5, 1.0, 0.5});
  REQUIRE(one.size() == 1);
  CHECK(one[0].derived_value == doctest::Approx(-8.0));
  CHECK(one[0].printed_value == doctest::Approx(-4.0));
}
