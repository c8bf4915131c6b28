#include <cmath>
#include <complex>

#include "doctest.h"
#include "ellipsolve/errors.hpp"
#include "ellipsolve/pde.hpp"
#include "ellipsolve/verifier.hpp"
#include "json.hpp"

using namespace ellipsolve;

TEST_CASE("registered equations") {
  CHECK(pde_ids() == std::vector<std::string>{"mbbm", "nls", "kdv_mkdv"});
  CHECK(pde_definition("nls").complex_field);
  CHECK(!pde_definition("kdv_mkdv").complex_field);
  CHECK(pde_definition("kdv_mkdv").physical == std::vector<std::string>{"alpha", "beta", "gamma"});
  CHECK_THROWS_AS(pde_definition("kdv"), UnknownIdError);
}

TEST_CASE("reductions") {
  const ReducedODE mb = reduce("mbbm", {{"omega", 2}, {"B", 0.5}});
  CHECK(mb.a0 == 0.25);
  CHECK(mb.a1 == -0.5);
  CHECK(mb.a2 == 0.0);
  CHECK(mb.a3 == 1.0 / 6);

  const ReducedODE nl = reduce("nls", {{"alpha", 1}, {"beta", 2}, {"omega", 2}, {"c", 1}});
  CHECK(nl.a0 == 0.0);
  CHECK(nl.a1 == 2.0);
  CHECK(nl.a2 == 0.0);
  CHECK(nl.a3 == -2.0);

  const ReducedODE kd =
      reduce("kdv_mkdv", {{"alpha", 1}, {"beta", 0.5}, {"gamma", -1}, {"omega", 2}, {"C", 0.25}});
  CHECK(kd.a0 == -0.25);
  CHECK(kd.a1 == -2.0);
  CHECK(kd.a2 == 3.0);
  CHECK(kd.a3 == 1.0);

  // integration constants default to zero
  CHECK(reduce("mbbm", {{"omega", 2}}).a0 == 0.0);

  try {
    reduce("mbbm", {{"omega", 0}});
    FAIL("expected ParameterError");
  } catch (const ParameterError& e) {
    CHECK(e.condition() == "omega != 0");
  }
  CHECK_THROWS_AS(reduce("nls", {{"alpha", 0}, {"beta", 1}, {"omega", 1}, {"c", 0}}), ParameterError);
  CHECK_THROWS_AS(reduce("kdv_mkdv", {{"alpha", 1}, {"beta", 1}, {"gamma", 0}, {"omega", 1}}),
                  ParameterError);
  CHECK_THROWS_AS(reduce("nls", {{"alpha", 1}, {"beta", 1}}), ParameterError);
}

TEST_CASE("wave number and lift") {
  CHECK(nls_wave_number({{"alpha", 2}, {"omega", 3}}) == 0.75);

  const Params p = {{"alpha", 2}, {"beta", 1}, {"omega", 3}, {"c", 0.5}};
  const Field u = lift("nls", [](double xi) { return std::exp(-xi * xi); }, p);
  const double x = 0.3, t = 0.2, xi = x - 3 * t;
  const std::complex<double> want = std::exp(-xi * xi) * std::polar(1.0, 0.75 * x + 0.5 * t);
  CHECK(std::abs(u(x, t) - want) <= 1e-15);

  const Field v = lift("kdv_mkdv", [](double xi) { return xi; }, {{"omega", -2}});
  CHECK(v(1, 1).real() == 3.0);
  CHECK(v(1, 1).imag() == 0.0);
}

TEST_CASE("table inventory") {
  CHECK(solution_table("mbbm").size() == 11);
  CHECK(solution_table("nls").size() == 14);
  CHECK(solution_table("kdv_mkdv").size() == 23);
  CHECK(solution_entry("kdv_mkdv", "u10").family == "F25");
  CHECK(solution_entry("mbbm", "u9").family == "F17");
  CHECK_THROWS_AS(solution_entry("mbbm", "u12"), UnknownIdError);
  for (const auto& id : pde_ids())
    for (const auto& e : solution_table(id)) {
      INFO(id, " ", e.id);
      CHECK(!e.printed.formula.empty());
      CHECK(e.pde == id);
      CHECK(e.sample != nullptr);
      if (e.corrected) CHECK(!e.erratum.empty());
    }
}

TEST_CASE("lifted values") {
  const auto kink = make_solution("mbbm", "u5", {{"omega", 2}, {"eps", 1}});
  CHECK(kink(0, 0).real() == 0.0);
  CHECK(kink.omega() == 2.0);

  const auto soliton =
      make_solution("nls", "u1", {{"alpha", 1}, {"beta", 2}, {"omega", 2}, {"c", 1}, {"eps", 1}});
  CHECK(soliton.is_complex());
  CHECK(std::abs(soliton(0, 0) - std::sqrt(2.0)) <= 1e-15);
  CHECK(std::abs(soliton(0.7, 0.3)) == doctest::Approx(soliton.profile(0.7 - 2 * 0.3)).epsilon(1e-14));

  // a traveling wave is constant along x - omega t = const
  const auto sn = make_solution("kdv_mkdv", "u12",
                                {{"alpha", 1}, {"beta", 0.5}, {"gamma", -1}, {"eps", 1}, {"m", 0.6}});
  const double w = sn.omega();
  for (double s : {-0.5, 0.25, 1.0})
    CHECK(sn(0.3 + w * s, 0.1 + s).real() == doctest::Approx(sn(0.3, 0.1).real()).epsilon(1e-12));
}

TEST_CASE("conditions") {
  try {
    make_solution("mbbm", "u5", {{"omega", 0.5}, {"eps", 1}});
    FAIL("expected ConditionError");
  } catch (const ConditionError& e) {
    CHECK(e.condition() == "omega > 1");
  }
  SolutionOptions unchecked;
  unchecked.unchecked = true;
  const auto s = make_solution("mbbm", "u5", {{"omega", 0.5}, {"eps", 1}}, unchecked);
  CHECK(s.unchecked());

  CHECK_THROWS_AS(make_solution("mbbm", "u5", {{"eps", 1}}), ParameterError);
  CHECK_THROWS_AS(make_solution("mbbm", "u99", {{"omega", 2}}), UnknownIdError);

  // the rational kdv entry is stationary
  const auto r = make_solution("kdv_mkdv", "u7", {{"alpha", 1}, {"beta", 1}, {"gamma", 1}});
  CHECK(r.omega() == 0.0);
  CHECK_THROWS_AS(
      make_solution("kdv_mkdv", "u7", {{"alpha", 1}, {"beta", 1}, {"gamma", 1}, {"omega", 1}}),
      ConditionError);

  CHECK_THROWS_AS(make_solution("kdv_mkdv", "u10", {{"alpha", 1}, {"beta", 1}, {"gamma", 1}}),
                  ConditionError);
  CHECK_NOTHROW(make_solution("kdv_mkdv", "u10", {{"alpha", 1}, {"beta", 1}, {"gamma", -1}}));
}

TEST_CASE("profile matches its catalog family") {
  const auto s = make_solution("mbbm", "u5", {{"omega", 2}, {"eps", -1}});
  const ResolvedFamily rf = s.family();
  CHECK(rf.family->id == "F14");
  CHECK(verify_ode(rf).verdict == Verdict::pass);
  for (double xi : {-1.5, 0.2, 2.0})
    CHECK(s.profile(xi) == doctest::Approx(evaluate_family(rf, xi)).epsilon(1e-13));

  const auto tn = make_solution("mbbm", "u7", {{"omega", 0.5}, {"eps", 1}});
  const auto poles = tn.profile_poles(-5, 5);
  REQUIRE(poles);
  REQUIRE(!poles->empty());
  for (double p : *poles) CHECK(std::abs(std::cos(std::sqrt(0.5) * p)) <= 1e-12);
}

TEST_CASE("printed and corrected variants") {
  const Params p = {{"alpha", 1}, {"beta", 1}, {"gamma", 1}};
  const auto fixed = make_solution("kdv_mkdv", "u8", p);
  CHECK(fixed.variant().formula == fixed.entry().corrected->formula);
  CHECK(verify_pde(fixed).verdict == Verdict::pass);
  SolutionOptions printed;
  printed.use_printed = true;
  const auto as_printed = make_solution("kdv_mkdv", "u8", p, printed);
  CHECK(as_printed.variant().formula == as_printed.entry().printed.formula);
  CHECK(verify_pde(as_printed).verdict == Verdict::fail);
}

TEST_CASE("registry export") {
  const auto j = nlohmann::json::parse(registry_json());
  REQUIRE(j.size() == 3);
  CHECK(j[0]["id"] == "mbbm");
  CHECK(j[1]["solutions"].size() == 14);
  CHECK(j[2]["solutions"].size() == 23);
  CHECK(registry_json() == registry_json());
}

TEST_CASE("every entry passes on sampled admissible parameters") {
  for (const auto& id : pde_ids())
    for (const auto& e : solution_table(id)) {
      Rng rng(fnv1a(id + "/" + e.id));
      for (int k = 0; k < 10; ++k) {
        const Params p = e.sample(rng);
        const auto s = make_solution(id, e.id, p);
        const ResidualReport r = verify_pde(s);
        INFO(id, " ", e.id, " draw ", k, " residual ", r.max_residual);
        CHECK(r.verdict == Verdict::pass);
      }
    }
}
