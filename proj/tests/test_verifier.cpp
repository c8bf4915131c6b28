#include <cmath>
#include <complex>

#include "doctest.h"
#include "ellipsolve/errors.hpp"
#include "ellipsolve/pde.hpp"
#include "ellipsolve/verifier.hpp"
#include "json.hpp"

using namespace ellipsolve;
using cd = std::complex<double>;

namespace {

double g0(double x) { return std::exp(-x * x); }
double g1(double x) { return -2 * x * g0(x); }
double g2(double x) { return (4 * x * x - 2) * g0(x); }
double g3(double x) { return (-8 * x * x * x + 12 * x) * g0(x); }

const Params kKdv = {{"alpha", 1.0}, {"beta", 0.5}, {"gamma", -1.0}};
const Params kNls = {{"alpha", 1.0}, {"beta", 2.0}};

PdeOptions coarse_grid(double h) {
  PdeOptions o;
  o.grid.h = h;
  o.grid.h_t = h;
  o.grid.nx = 33;
  o.grid.nt = 4;
  return o;
}

}  // namespace

TEST_CASE("zero field") {
  const Field zero = [](double, double) { return cd{}; };
  for (const auto& id : pde_ids()) {
    const Params phys = id == "nls" ? kNls : kKdv;
    const ResidualReport r = verify_field(id, zero, phys);
    CHECK(r.max_residual == 0.0);
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.pde->samples == 128 * 16);
  }
}

TEST_CASE("operator against hand-derived values") {
  // u = exp(-x^2) cos t (real) or exp(-x^2) e^{it} (nls)
  const Field real = [](double x, double t) { return cd{g0(x) * std::cos(t)}; };
  const Field phase = [](double x, double t) { return g0(x) * std::polar(1.0, t); };
  for (double x : {-1.2, -0.3, 0.0, 0.8, 1.7})
    for (double t : {0.0, 0.4, 1.0}) {
      const double c = std::cos(t), s = std::sin(t);
      const double u = g0(x) * c, ux = g1(x) * c;

      const double mb = -g0(x) * s + ux + u * u * ux - g2(x) * s;
      const OperatorValue vm = pde_operator("mbbm", real, {}, x, t, 5e-3, 1.25e-3);
      CHECK(std::abs(vm.value - mb) <= 1e-6 * (1 + std::abs(mb)));

      const double a = 1, b = 0.5, g = -1;
      const double kd = -g0(x) * s + 6 * (a * u + b * u * u) * ux + g * g3(x) * c;
      const OperatorValue vk = pde_operator("kdv_mkdv", real, kKdv, x, t, 5e-3, 1.25e-3);
      CHECK(std::abs(vk.value - kd) <= 1e-6 * (1 + std::abs(kd)));

      const cd e = std::polar(1.0, t);
      const cd nl = (-g0(x) + 1.0 * g2(x) + 2.0 * g0(x) * g0(x) * g0(x)) * e;
      const OperatorValue vn = pde_operator("nls", phase, kNls, x, t, 5e-3, 1.25e-3);
      CHECK(std::abs(vn.value - nl) <= 1e-6 * (1 + std::abs(nl)));
    }
}

TEST_CASE("nls plane wave") {
  // A e^{i(kx + ct)} with c = -alpha k^2 + beta A^2
  const double A = 0.8, k = 1.3, alpha = 1.0, beta = 2.0;
  const double c = -alpha * k * k + beta * A * A;
  const Field u = [=](double x, double t) { return A * std::polar(1.0, k * x + c * t); };
  const ResidualReport r = verify_field("nls", u, kNls);
  CHECK(r.max_residual <= 1e-10);
  CHECK(r.verdict == Verdict::pass);
}

TEST_CASE("known solutions pass") {
  CHECK(verify_pde(make_solution("mbbm", "u5", {{"omega", 2}, {"eps", 1}})).verdict == Verdict::pass);
  CHECK(verify_pde(make_solution("nls", "u1",
                                 {{"alpha", 1}, {"beta", 2}, {"omega", 2}, {"c", 1}, {"eps", 1}}))
            .max_residual <= kPdeTol);
  CHECK(verify_pde(make_solution("kdv_mkdv", "u5",
                                 {{"alpha", 1}, {"beta", 1}, {"gamma", -1}, {"eps", 1}}))
            .max_residual <= 1e-4);
}

TEST_CASE("poles are excluded, not sampled") {
  const auto s = make_solution("mbbm", "u6", {{"omega", 2}, {"eps", 1}});
  const ResidualReport r = verify_pde(s);
  CHECK(r.verdict == Verdict::pass);
  REQUIRE(r.excluded_poles.size() == 1);
  CHECK(r.excluded_poles[0] == 0.0);
  CHECK(r.pde->samples < 128 * 16);
}

TEST_CASE("negative control") {
  const auto bump = [](double x, double) { return 1e-3 * g0(x); };
  struct Case {
    const char* pde;
    const char* id;
    Params p;
  };
  for (const Case& c :
       {Case{"mbbm", "u5", {{"omega", 2}, {"eps", 1}}},
        Case{"nls", "u1", {{"alpha", 1}, {"beta", 2}, {"omega", 2}, {"c", 1}, {"eps", 1}}},
        Case{"kdv_mkdv", "u5", {{"alpha", 1}, {"beta", 1}, {"gamma", -1}, {"eps", 1}}}}) {
    const auto s = make_solution(c.pde, c.id, c.p);
    const ResidualReport good = verify_pde(s);
    Params phys;
    for (const auto& k : pde_definition(c.pde).physical) phys[k] = s.params().at(k);
    const Field u = s.field();
    const Field bad = [&](double x, double t) { return u(x, t) + bump(x, t); };
    const ResidualReport r = verify_field(c.pde, bad, phys, {}, {}, s.omega());
    INFO(c.pde, " ", good.max_residual, " ", r.max_residual);
    CHECK(r.verdict == Verdict::fail);
    CHECK(r.max_residual >= 1e3 * std::max(good.max_residual, 1e-12));
  }
}

TEST_CASE("refinement in the truncation regime") {
  const auto s = make_solution("mbbm", "u5", {{"omega", 2}, {"eps", 1}});
  double prev = INFINITY;
  for (double h : {0.4, 0.2, 0.1}) {
    const ResidualReport r = verify_pde(s, coarse_grid(h));
    INFO("h ", h, " residual ", r.max_residual);
    CHECK(r.max_residual < prev / 8);
    CHECK(r.pde_coarse->max > r.pde->max);
    prev = r.max_residual;
  }
}

TEST_CASE("inconclusive when stencils disagree") {
  const auto s = make_solution("mbbm", "u5", {{"omega", 2}, {"eps", 1}});
  PdeOptions loose = coarse_grid(0.4);
  loose.tol = 0.3;
  const ResidualReport r = verify_pde(s, loose);
  CHECK(r.max_residual <= loose.tol);
  CHECK(r.verdict == Verdict::inconclusive);
  CHECK(r.grid.at("truncation_estimate") > loose.tol / 10);

  // a measured failure stays a failure when the stencils agree
  const auto wrong = make_solution("kdv_mkdv", "u8", {{"alpha", 1}, {"beta", 1}, {"gamma", 1}},
                                   {false, true});
  CHECK(verify_pde(wrong).verdict == Verdict::fail);
}

TEST_CASE("grid validation") {
  const Field zero = [](double, double) { return cd{}; };
  PdeOptions o;
  o.grid.nx = 1;
  CHECK_THROWS_AS(verify_field("mbbm", zero, {}, o), InvalidGridError);
  o = {};
  o.grid.x_hi = o.grid.x_lo;
  CHECK_THROWS_AS(verify_field("mbbm", zero, {}, o), InvalidGridError);
  o = {};
  o.grid.h = 0;
  CHECK_THROWS_AS(verify_field("mbbm", zero, {}, o), InvalidGridError);
}

TEST_CASE("arbitrary c0 audit") {
  const std::vector<double> c0s = {0.0, 0.3, -0.5, 2.0};
  const C0Audit mb = arbitrary_c0_audit("mbbm", {"u5"}, c0s, {{"omega", 3}, {"eps", 1}});
  CHECK(mb.claim_holds);
  REQUIRE(mb.entries.size() == 1);
  CHECK(mb.entries[0].reports.size() == 4);
  CHECK(!mb.entries[0].profile_uses_c0);

  const C0Audit sn = arbitrary_c0_audit("mbbm", {"u9"}, c0s, {{"omega", 2}, {"m", 0.5}});
  CHECK(sn.claim_holds);

  const C0Audit dn = arbitrary_c0_audit("nls", {"u12"}, c0s);
  CHECK(dn.claim_holds);
  CHECK(to_json(dn) == to_json(arbitrary_c0_audit("nls", {"u12"}, c0s)));
  CHECK(nlohmann::json::parse(to_json(dn))["claim_holds"].get<bool>());

  CHECK_THROWS_AS(arbitrary_c0_audit("mbbm", {"u1"}, c0s), ParameterError);
}

TEST_CASE("report json is stable") {
  const auto s = make_solution("mbbm", "u5", {{"omega", 2}, {"eps", 1}});
  const std::string a = to_json(verify_pde(s));
  CHECK(a == to_json(verify_pde(s)));
  const auto j = nlohmann::json::parse(a);
  CHECK(j["verdict"] == "pass");
  CHECK(j["check"] == "pde");
  CHECK(j["subject"] == "mbbm/u5");
}
