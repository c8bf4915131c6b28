#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "ellipsolve/catalog.hpp"
#include "ellipsolve/errors.hpp"
#include "ellipsolve/poles.hpp"
#include "ellipsolve/verifier.hpp"
#include "json.hpp"

using namespace ellipsolve;

namespace {

bool admits(const Resolution& r, const std::string& id) {
  return std::any_of(r.admitted.begin(), r.admitted.end(),
                     [&](const ResolvedFamily& f) { return f.family->id == id; });
}

bool excludes(const Resolution& r, const std::string& id) {
  return std::any_of(r.excluded.begin(), r.excluded.end(),
                     [&](const Exclusion& e) { return e.family_id == id; });
}

ResolvedFamily bound(const char* id, EllipticCoefficients c, double eps = 1.0, double m = 0.5) {
  Bindings b;
  b.c = c;
  b.eps = eps;
  b.m = m;
  return bind_family(Catalog::certified().family(id), b);
}

}  // namespace

TEST_CASE("inventory") {
  const auto& fams = Catalog::certified().families();
  CHECK(fams.size() == 41);
  std::set<int> numbers;
  int branches = 0;
  for (const auto& f : fams) {
    numbers.insert(f->number);
    if (f->branch) ++branches;
    CHECK(f->case_id >= 1);
    CHECK(f->case_id <= 5);
  }
  CHECK(numbers.size() == 38);
  CHECK(branches == 6);
  CHECK(Catalog::printed().families().size() == 41);
  CHECK(Catalog::certified().family("f17")->id == "F17");
  CHECK(Catalog::certified().family("17")->id == "F17");
  CHECK(Catalog::certified().family("F16b")->branch == 'b');
  CHECK_THROWS_AS(Catalog::certified().family("F99"), UnknownIdError);
  CHECK_THROWS_AS(Catalog::certified().family("F3"), UnknownIdError);
}

TEST_CASE("constraint transcription") {
  const auto f1 = Catalog::certified().family("F1");
  std::vector<std::string> t;
  for (const auto& c : f1->constraints) t.push_back(c.text);
  CHECK(t == std::vector<std::string>{"c0 = 0", "c1 = 0", "Delta > 0", "c2 > 0"});
  const auto f18 = Catalog::certified().family("F18");
  CHECK(std::any_of(f18->constraints.begin(), f18->constraints.end(),
                    [](const Constraint& c) { return c.inferred; }));
}

TEST_CASE("applicable families") {
  const Resolution r = applicable_families({0, 0, 1, 0, -1}, {0.0, std::nullopt, 1.0});
  CHECK(admits(r, "F1"));
  CHECK(excludes(r, "F2"));

  const Resolution r3 = applicable_families({0, 0, -2, 0, 1});
  CHECK(admits(r3, "F14"));
  CHECK(admits(r3, "F15"));
  for (const auto& a : r3.admitted)
    if (a.family->id == "F14") CHECK(a.params.c.c0 == doctest::Approx(1.0).epsilon(1e-14));

  // mbbm reduction at omega = 3, B = 0
  const double w = 3.0;
  const Resolution rm = applicable_families({0, 0, (1 - w) / w, 0, 1 / (6 * w)});
  CHECK(admits(rm, "F14"));
  CHECK(admits(rm, "F17"));
  CHECK(excludes(rm, "F18"));
  for (std::size_t i = 1; i < rm.admitted.size(); ++i) {
    const auto& fams = Catalog::certified().families();
    auto pos = [&](const std::string& id) {
      return std::find_if(fams.begin(), fams.end(), [&](const FamilyPtr& f) { return f->id == id; });
    };
    CHECK(pos(rm.admitted[i - 1].family->id) < pos(rm.admitted[i].family->id));
  }
  for (const auto& e : rm.excluded) CHECK(!e.reason.empty());
}

TEST_CASE("caller-supplied modulus gives the implied c0") {
  ResolveOptions ro;
  ro.m = 0.6;
  const ResolvedFamily rf = resolve_family(Catalog::certified().family("F17"), {0, 0, -1, 0, 1}, ro);
  const double m = 0.6;
  CHECK(rf.params.c.c0 == doctest::Approx(m * m / ((m * m + 1) * (m * m + 1))).epsilon(1e-14));
  CHECK(verify_ode(rf).verdict == Verdict::pass);
  CHECK(verify_ode(rf).max_residual <= kNumericOdeTol);

  // with c0 fixed, m is solved for
  ResolveOptions ro2;
  ro2.c0 = m * m / ((m * m + 1) * (m * m + 1));
  const ResolvedFamily rf2 =
      resolve_family(Catalog::certified().family("F17"), {0, 0, -1, 0, 1}, ro2);
  CHECK(rf2.params.m == doctest::Approx(0.6).epsilon(1e-9));
}

TEST_CASE("evaluation") {
  CHECK(evaluate_family(bound("F14", {1, 0, -2, 0, 1}), 0.0) == 0.0);
  // F1 with c2 = 1, c3 = 0, c4 = -1 is sech
  const ResolvedFamily f1 = bound("F1", {0, 0, 1, 0, -1});
  CHECK(evaluate_family(f1, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  for (double xi : {-2.0, -0.3, 1.7})
    CHECK(evaluate_family(f1, xi) == doctest::Approx(1 / std::cosh(xi)).epsilon(1e-14));
  CHECK(evaluate_family(bound("F6", {0, 0, 0, 0, 4}), 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(evaluate_family(bound("F15", {1, 0, -2, 0, 1}), 0.0), PoleError);
}

TEST_CASE("pole locations") {
  const auto p = family_poles(bound("F15", {1, 0, -2, 0, 1}), -3, 3);
  REQUIRE(p.size() == 1);
  CHECK(p[0] == 0.0);
  // tan(xi): poles at pi/2 + k pi
  const auto t = family_poles(bound("F16a", {1, 0, 2, 0, 1}), -4, 4);
  REQUIRE(t.size() == 2);
  CHECK(t[1] == doctest::Approx(M_PI / 2).epsilon(1e-14));
}

TEST_CASE("ode validation") {
  const ResidualReport r1 = validate_family(bound("F1", {0, 0, 1, 0, -1}));
  CHECK(r1.max_residual <= 1e-8);
  CHECK(r1.verdict == Verdict::pass);
  CHECK(r1.first_form->samples >= 32);

  ValidationOptions wp;
  wp.grid = {0.2, 2.0, 64, 0.05};
  CHECK(validate_family(bound("F22", {0, -1, 0, 4, 0}), wp).verdict == Verdict::pass);

  const ResidualReport k = verify_ode(bound("F4", {0, 0, 1, -2, 1}), {}, kAnalyticOdeTol);
  CHECK(k.verdict == Verdict::pass);
  for (double xi : {-1.0, 0.0, 2.0})
    CHECK(evaluate_family(bound("F4", {0, 0, 1, -2, 1}), xi) ==
          doctest::Approx(0.5 * (1 + std::tanh(xi / 2))).epsilon(1e-14));

  const double m = 0.6;
  CHECK(verify_ode(bound("F17", {m * m / ((m * m + 1) * (m * m + 1)), 0, -1, 0, 1}, 1.0, m)).verdict ==
        Verdict::pass);

  ValidationOptions straddle;
  straddle.grid = {-3.0, 3.0, 65, 0.0};
  CHECK_THROWS_AS(validate_family(bound("F15", {1, 0, -2, 0, 1}), straddle), PoleError);

  ValidationOptions all_poles;
  all_poles.grid = {-1e-3, 1e-3, 40, 0.05};
  CHECK_THROWS_AS(validate_family(bound("F15", {1, 0, -2, 0, 1}), all_poles), InvalidGridError);
}

TEST_CASE("the second form catches what the squared form misses") {
  // F = 1 sits on a simple root of 1 - F^2: F'^2 = 0 holds, F'' = -F does not.
  auto fam = std::make_shared<SolutionFamily>();
  fam->id = "root";
  fam->form = 1.0;
  fam->printed_form = 1.0;
  Bindings b;
  b.c = {1, 0, -1, 0, 0};
  const ResolvedFamily rf{fam, b, 0.0};
  CHECK(validate_family(rf).verdict == Verdict::pass);
  const ResidualReport both = verify_ode(rf);
  CHECK(both.verdict == Verdict::fail);
  CHECK(both.second_form->max > 0.1);
}

TEST_CASE("printed F23 passes and is absent from the ledger") {
  const double c2 = -3, c3 = 1;
  const ResolvedFamily rf =
      bound("F23", {0, 8 * c2 * c2 / (27 * c3), c2, c3, c3 * c3 / (4 * c2)});
  CHECK(rf.family->form.same_as(rf.family->printed_form));
  CHECK(verify_ode(rf).max_residual <= kNumericOdeTol);
  for (const auto& e : errata_ledger()) CHECK(e.family_id != "F23");
  for (const auto& e : errata_ledger()) CHECK(e.family_id != "F4");
}

TEST_CASE("errata ledger evidence") {
  const auto ledger = errata_ledger();
  REQUIRE(!ledger.empty());
  for (const auto& e : ledger) {
    INFO(e.family_id);
    CHECK(e.printed_residual > kErrataPrintedMin);
    CHECK(e.corrected_residual <= kErrataCorrectedMax);
    CHECK(e.samples > 0);
    CHECK(e.printed != e.corrected);
  }
  CHECK(Catalog::certified().unresolved().empty());
  CHECK(errata_json(ledger) == errata_json(errata_ledger()));
  const Catalog again = build_certified_catalog(kDefaultSeed, kCertificationDraws);
  CHECK(errata_json(again.errata()) == errata_json(ledger));
  CHECK(catalog_json(again) == catalog_json(Catalog::certified()));
}

TEST_CASE("every family certifies on 25 draws") {
  for (const auto& c : Catalog::certified().certification()) {
    INFO(c.id);
    CHECK(c.pass);
    CHECK(c.draws == kCertificationDraws);
    CHECK(c.residual <= kNumericOdeTol);
  }
}

TEST_CASE("eps symmetry") {
  for (const auto& f : Catalog::certified().families()) {
    if (!f->uses_eps) continue;
    Rng rng(fnv1a(f->id) ^ 99);
    for (int k = 0; k < 5; ++k) {
      Bindings b = f->sample(rng);
      b.eps = 1;
      const double plus = verify_ode(bind_family(f, b)).max_residual;
      b.eps = -1;
      const double minus = verify_ode(bind_family(f, b)).max_residual;
      INFO(f->id);
      CHECK(plus <= kNumericOdeTol);
      CHECK(minus <= kNumericOdeTol);
    }
  }
}

TEST_CASE("F17 tends to the tanh profile as m -> 1") {
  const double c2 = -1, c4 = 1, m = 0.999;
  const ResolvedFamily sn = bound("F17", {c2 * c2 * m * m / (c4 * (m * m + 1) * (m * m + 1)), 0, c2, 0, c4}, 1, m);
  const ResolvedFamily th = bound("F14", {c2 * c2 / (4 * c4), 0, c2, 0, c4});
  double sup = 0;
  for (int i = 0; i <= 200; ++i) {
    const double xi = -2 + 4.0 * i / 200;
    sup = std::max(sup, std::abs(evaluate_family(sn, xi) - evaluate_family(th, xi)));
  }
  CHECK(sup <= 1e-2);
}

TEST_CASE("catalog export") {
  const auto j = nlohmann::json::parse(catalog_json(Catalog::certified()));
  REQUIRE(j.size() == 41);
  for (const auto& f : j) {
    CHECK(f.contains("constraints"));
    CHECK(f.contains("errata_status"));
    CHECK(f["certified"].get<bool>());
  }
  CHECK(j[0]["id"] == "F1");
}

TEST_CASE("argument slope") {
  const ResolvedFamily rf = bound("F14", {1, 0, -8, 0, 1});
  CHECK(max_argument_slope(rf.family->form, rf.params) == doctest::Approx(2.0));
}
