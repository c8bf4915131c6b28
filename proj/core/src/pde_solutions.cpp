#include <cmath>
#include <numbers>

#include "ellipsolve/errors.hpp"
#include "ellipsolve/matcher.hpp"
#include "ellipsolve/pde.hpp"
#include "ellipsolve/special_functions.hpp"

namespace ellipsolve {

namespace {

using std::sqrt;
using P = const Params&;

constexpr double kHalfRoot2 = std::numbers::sqrt2 / 2;

double sgn(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

bool near_zero(double v, double scale) { return std::abs(v) <= 1e-9 * std::max(1.0, scale); }

JacobiTriple J(double u, double m) { return jacobi(u, Modulus(m)); }

double sec(double z) { return 1 / std::cos(z); }
double csc(double z) { return 1 / std::sin(z); }
double cot(double z) { return 1 / std::tan(z); }
// (1 + cn)/sn, switched to sn/(1 - cn) where cn < 0 to avoid the 0/0 at 2K.
double ns_cs(const JacobiTriple& j) { return j.cn >= 0 ? (1 + j.cn) / j.sn : j.sn / (1 - j.cn); }
double sech(double z) { return 1 / std::cosh(z); }
double csch(double z) { return 1 / std::sinh(z); }
double coth(double z) { return 1 / std::tanh(z); }

Condition cond(std::string text, std::function<bool(P)> f) { return {std::move(text), std::move(f)}; }

SolutionVariant variant(std::string formula, std::function<double(P)> omega,
                        std::function<double(double, P)> profile) {
  return {std::move(formula), std::move(omega), std::move(profile)};
}

std::function<double(P)> omega_input() {
  return [](P p) { return p.at("omega"); };
}

std::function<double(P)> omega_const(double w) {
  return [w](P) { return w; };
}

// sec and csc entries carry the opposite sign to the F3 closed form when c2 < 0.
double flip_eps(P p) { return -p.at("eps"); }

// Fills constants that must take a fixed value unless already given.
void put_default(Params& p, const std::string& k, double v) {
  if (!p.count(k)) p[k] = v;
}

// ---------------------------------------------------------------------------
// mBBM

std::vector<SolutionEntry> mbbm_table() {
  std::vector<SolutionEntry> t;
  const Condition B0 = cond("B = 0", [](P p) { return near_zero(p.at("B"), 0.0); });
  const Condition w01 = cond("0 < omega < 1", [](P p) { return p.at("omega") > 0 && p.at("omega") < 1; });
  const Condition w1 = cond("omega > 1", [](P p) { return p.at("omega") > 1; });
  const Condition weq1 = cond("omega = 1", [](P p) { return near_zero(p.at("omega") - 1, 1.0); });

  auto fill_B = [](Params& p) { put_default(p, "B", 0.0); };
  auto fill_B_w1 = [](Params& p) {
    put_default(p, "B", 0.0);
    put_default(p, "omega", 1.0);
  };
  auto slow = [](Rng& r) { return Params{{"omega", r.uniform(0.2, 0.9)}, {"eps", r.sign()}}; };
  auto fast = [](Rng& r) { return Params{{"omega", r.uniform(1.2, 3.0)}, {"eps", r.sign()}}; };

  auto add = [&](std::string id, std::string fam, std::vector<std::string> in,
                 std::vector<std::string> opt, std::vector<Condition> conds, SolutionVariant v,
                 std::function<void(Params&)> complete, std::function<Params(Rng&)> sample) {
    SolutionEntry e;
    e.pde = "mbbm";
    e.id = std::move(id);
    e.family = std::move(fam);
    e.inputs = std::move(in);
    e.optional = std::move(opt);
    conds.insert(conds.begin(), B0);
    e.printed_conditions = conds;
    e.conditions = conds;
    e.printed = std::move(v);
    e.complete = std::move(complete);
    e.sample = std::move(sample);
    t.push_back(std::move(e));
  };

  add("u1", "F2", {"omega", "eps"}, {"B"}, {w01},
      variant("eps*sqrt(6(1-omega))*csch(sqrt((1-omega)/omega)*(x-omega*t))", omega_input(),
              [](double xi, P p) {
                const double w = p.at("omega");
                return p.at("eps") * sqrt(6 * (1 - w)) * csch(sqrt((1 - w) / w) * xi);
              }),
      fill_B, slow);
  add("u2", "F3a", {"omega", "eps"}, {"B"}, {w1},
      variant("eps*sqrt(6(omega-1))*sec(sqrt((omega-1)/omega)*(x-omega*t))", omega_input(),
              [](double xi, P p) {
                const double w = p.at("omega");
                return p.at("eps") * sqrt(6 * (w - 1)) * sec(sqrt((w - 1) / w) * xi);
              }),
      fill_B, fast);
  t.back().family_eps = flip_eps;
  add("u3", "F3b", {"omega", "eps"}, {"B"}, {w1},
      variant("eps*sqrt(6(omega-1))*csc(sqrt((omega-1)/omega)*(x-omega*t))", omega_input(),
              [](double xi, P p) {
                const double w = p.at("omega");
                return p.at("eps") * sqrt(6 * (w - 1)) * csc(sqrt((w - 1) / w) * xi);
              }),
      fill_B, fast);
  t.back().family_eps = flip_eps;
  add("u4", "F6", {"eps", "xi0"}, {"B", "omega"}, {weq1},
      variant("sqrt(6)*eps/(x-t+xi0)", omega_const(1.0),
              [](double xi, P p) { return sqrt(6.0) * p.at("eps") / (xi + p.at("xi0")); }),
      fill_B_w1,
      [](Rng& r) { return Params{{"eps", r.sign()}, {"xi0", r.uniform(-1, 1)}}; });
  add("u5", "F14", {"omega", "eps"}, {"B", "c0"}, {w1},
      variant("eps*sqrt(3(omega-1))*tanh(sqrt((omega-1)/(2 omega))*(x-omega*t))", omega_input(),
              [](double xi, P p) {
                const double w = p.at("omega");
                return p.at("eps") * sqrt(3 * (w - 1)) * std::tanh(sqrt((w - 1) / (2 * w)) * xi);
              }),
      fill_B, fast);
  add("u6", "F15", {"omega", "eps"}, {"B", "c0"}, {w1},
      variant("eps*sqrt(3(omega-1))*coth(sqrt((omega-1)/(2 omega))*(x-omega*t))", omega_input(),
              [](double xi, P p) {
                const double w = p.at("omega");
                return p.at("eps") * sqrt(3 * (w - 1)) * coth(sqrt((w - 1) / (2 * w)) * xi);
              }),
      fill_B, fast);
  add("u7", "F16a", {"omega", "eps"}, {"B", "c0"}, {w01},
      variant("eps*sqrt(3(1-omega))*tan(sqrt((1-omega)/(2 omega))*(x-omega*t))", omega_input(),
              [](double xi, P p) {
                const double w = p.at("omega");
                return p.at("eps") * sqrt(3 * (1 - w)) * std::tan(sqrt((1 - w) / (2 * w)) * xi);
              }),
      fill_B, slow);
  add("u8", "F16b", {"omega", "eps"}, {"B", "c0"}, {w01},
      variant("eps*sqrt(3(1-omega))*cot(sqrt((1-omega)/(2 omega))*(x-omega*t))", omega_input(),
              [](double xi, P p) {
                const double w = p.at("omega");
                return p.at("eps") * sqrt(3 * (1 - w)) * cot(sqrt((1 - w) / (2 * w)) * xi);
              }),
      fill_B, slow);
  add("u9", "F17", {"omega", "m"}, {"B", "c0"}, {w1},
      variant("sqrt(6(omega-1)m^2/(m^2+1))*sn(sqrt((omega-1)/(omega(m^2+1)))*(x-omega*t), m)",
              omega_input(),
              [](double xi, P p) {
                const double w = p.at("omega"), m = p.at("m");
                return sqrt(6 * (w - 1) * m * m / (m * m + 1)) *
                       J(sqrt((w - 1) / (w * (m * m + 1))) * xi, m).sn;
              }),
      fill_B, [](Rng& r) { return Params{{"omega", r.uniform(1.2, 3.0)}, {"m", r.uniform(0.1, 0.9)}}; });
  t.back().note =
      "the printed c0 relation for this entry carries the (2m^2-1)^2 denominator of the cn "
      "family; the profile does not depend on c0";
  add("u10", "F20", {"eps", "c0"}, {"B", "omega"},
      {weq1, cond("c0 < 0", [](P p) { return p.at("c0") < 0; })},
      variant("eps*(-24 c0)^(1/4)*ds((-2 c0/3)^(1/4)*(x-t), sqrt(2)/2)", omega_const(1.0),
              [](double xi, P p) {
                const double c0 = p.at("c0");
                const auto j = J(std::pow(-2 * c0 / 3, 0.25) * xi, kHalfRoot2);
                return p.at("eps") * std::pow(-24 * c0, 0.25) * j.dn / j.sn;
              }),
      fill_B_w1, [](Rng& r) { return Params{{"eps", r.sign()}, {"c0", -r.uniform(0.2, 2)}}; });
  add("u11", "F21", {"eps", "c0"}, {"B", "omega"},
      {weq1, cond("c0 > 0", [](P p) { return p.at("c0") > 0; })},
      variant("eps*(6 c0)^(1/4)*[ns + cs](2 (c0/6)^(1/4)*(x-t), sqrt(2)/2)", omega_const(1.0),
              [](double xi, P p) {
                const double c0 = p.at("c0");
                const auto j = J(2 * std::pow(c0 / 6, 0.25) * xi, kHalfRoot2);
                return p.at("eps") * std::pow(6 * c0, 0.25) * ns_cs(j);
              }),
      fill_B_w1, [](Rng& r) { return Params{{"eps", r.sign()}, {"c0", r.uniform(0.2, 2)}}; });
  return t;
}

// ---------------------------------------------------------------------------
// NLS

double W(P p) { return p.at("omega") * p.at("omega") + 4 * p.at("alpha") * p.at("c"); }
double AB(P p) { return p.at("alpha") * p.at("beta"); }
double W_scale(P p) { return std::max(p.at("omega") * p.at("omega"), std::abs(4 * p.at("alpha") * p.at("c"))); }

std::function<Params(Rng&)> nls_draw(double sgnW, double sgnAB) {
  return [sgnW, sgnAB](Rng& r) {
    const double al = r.uniform(0.5, 2) * r.sign();
    const double be = r.uniform(0.5, 2) * sgnAB * sgn(al);
    const double w = r.uniform(-2, 2);
    const double D = r.uniform(0.3, 3) * sgnW;
    return Params{{"alpha", al}, {"beta", be}, {"omega", w}, {"c", (D - w * w) / (4 * al)},
                  {"eps", r.sign()}};
  };
}

// beta c > 0 so that beta c0 c takes the sign of c0.
std::function<Params(Rng&)> nls_degenerate_draw(double sgn_c0) {
  return [sgn_c0](Rng& r) {
    const double w = r.uniform(0.5, 2) * r.sign();
    const double c = r.uniform(0.3, 2) * r.sign();
    const double be = r.uniform(0.3, 2) * sgn(c);
    return Params{{"alpha", -w * w / (4 * c)}, {"beta", be}, {"omega", w}, {"c", c},
                  {"c0", r.uniform(0.3, 2) * sgn_c0}, {"eps", r.sign()}};
  };
}

std::vector<SolutionEntry> nls_table() {
  std::vector<SolutionEntry> t;
  const Condition Wpos = cond("omega^2 + 4*alpha*c > 0", [](P p) { return W(p) > 0; });
  const Condition Wneg = cond("omega^2 + 4*alpha*c < 0", [](P p) { return W(p) < 0; });
  const Condition W0 = cond("omega^2 + 4*alpha*c = 0", [](P p) { return near_zero(W(p), W_scale(p)); });
  const Condition abpos = cond("alpha*beta > 0", [](P p) { return AB(p) > 0; });
  const Condition abneg = cond("alpha*beta < 0", [](P p) { return AB(p) < 0; });
  const std::string phase = "*exp(i(omega/(2 alpha) x + c t))";
  const std::vector<std::string> base = {"alpha", "beta", "omega", "c", "eps"};
  const std::vector<std::string> elliptic = {"alpha", "beta", "omega", "c", "m"};

  auto add = [&](std::string id, std::string fam, std::vector<std::string> in,
                 std::vector<std::string> opt, std::vector<Condition> conds, SolutionVariant v,
                 std::function<Params(Rng&)> sample) -> SolutionEntry& {
    SolutionEntry e;
    e.pde = "nls";
    e.id = std::move(id);
    e.family = std::move(fam);
    e.inputs = std::move(in);
    e.optional = std::move(opt);
    e.printed_conditions = conds;
    e.conditions = std::move(conds);
    v.formula += phase;
    e.printed = std::move(v);
    e.sample = std::move(sample);
    t.push_back(std::move(e));
    return t.back();
  };

  add("u1", "F1", base, {}, {Wpos, abpos},
      variant("eps*sqrt(W/(2 alpha beta))*sech(1/2 sqrt(W/alpha^2)*(x-omega*t))", omega_input(),
              [](double xi, P p) {
                const double a = p.at("alpha");
                return p.at("eps") * sqrt(W(p) / (2 * AB(p))) * sech(0.5 * sqrt(W(p) / (a * a)) * xi);
              }),
      nls_draw(1, 1));
  add("u2", "F2", base, {}, {Wpos, abneg},
      variant("eps*sqrt(-W/(2 alpha beta))*csch(1/2 sqrt(W/alpha^2)*(x-omega*t))", omega_input(),
              [](double xi, P p) {
                const double a = p.at("alpha");
                return p.at("eps") * sqrt(-W(p) / (2 * AB(p))) * csch(0.5 * sqrt(W(p) / (a * a)) * xi);
              }),
      nls_draw(1, -1));
  add("u3", "F3a", base, {}, {Wneg, abneg},
      variant("eps*sqrt(W/(2 alpha beta))*sec(1/2 sqrt(-W/alpha^2)*(x-omega*t))", omega_input(),
              [](double xi, P p) {
                const double a = p.at("alpha");
                return p.at("eps") * sqrt(W(p) / (2 * AB(p))) * sec(0.5 * sqrt(-W(p) / (a * a)) * xi);
              }),
      nls_draw(-1, -1));
  t.back().family_eps = flip_eps;
  add("u4", "F3b", base, {}, {Wneg, abneg},
      variant("eps*sqrt(W/(2 alpha beta))*csc(1/2 sqrt(-W/alpha^2)*(x-omega*t))", omega_input(),
              [](double xi, P p) {
                const double a = p.at("alpha");
                return p.at("eps") * sqrt(W(p) / (2 * AB(p))) * csc(0.5 * sqrt(-W(p) / (a * a)) * xi);
              }),
      nls_draw(-1, -1));
  t.back().family_eps = flip_eps;
  {
    SolutionEntry& e = add(
        "u5", "F6", {"alpha", "beta", "omega", "eps", "xi0"}, {"c"}, {W0, abpos},
        variant("eps/(sqrt(-beta/(2 alpha))*(x-omega*t+xi0))", omega_input(),
                [](double xi, P p) {
                  return p.at("eps") / (sqrt(-p.at("beta") / (2 * p.at("alpha"))) * (xi + p.at("xi0")));
                }),
        [](Rng& r) {
          const double al = r.uniform(0.5, 2) * r.sign();
          const double w = r.uniform(0.5, 2);
          return Params{{"alpha", al}, {"beta", -r.uniform(0.5, 2) * sgn(al)}, {"omega", w},
                        {"eps", r.sign()}, {"xi0", r.uniform(-1, 1)}};
        });
    e.conditions = {W0, abneg};
    e.erratum = "condition alpha*beta > 0 -> alpha*beta < 0 (the profile is real only for alpha*beta < 0)";
    e.complete = [](Params& p) { p["c"] = -p.at("omega") * p.at("omega") / (4 * p.at("alpha")); };
  }
  add("u6", "F14", base, {"c0"}, {Wneg, abneg},
      variant("eps/2*sqrt(W/(alpha beta))*tanh(1/4 sqrt(-2W/alpha^2)*(x-omega*t))", omega_input(),
              [](double xi, P p) {
                const double a = p.at("alpha");
                return p.at("eps") / 2 * sqrt(W(p) / AB(p)) * std::tanh(0.25 * sqrt(-2 * W(p) / (a * a)) * xi);
              }),
      nls_draw(-1, -1));
  add("u7", "F15", base, {"c0"}, {Wneg, abneg},
      variant("eps/2*sqrt(W/(alpha beta))*coth(1/4 sqrt(-2W/alpha^2)*(x-omega*t))", omega_input(),
              [](double xi, P p) {
                const double a = p.at("alpha");
                return p.at("eps") / 2 * sqrt(W(p) / AB(p)) * coth(0.25 * sqrt(-2 * W(p) / (a * a)) * xi);
              }),
      nls_draw(-1, -1));
  add("u8", "F16a", base, {"c0"}, {Wpos, abneg},
      variant("eps/2*sqrt(-W/(alpha beta))*tan(1/4 sqrt(2W/alpha^2)*(x-omega*t))", omega_input(),
              [](double xi, P p) {
                const double a = p.at("alpha");
                return p.at("eps") / 2 * sqrt(-W(p) / AB(p)) * std::tan(0.25 * sqrt(2 * W(p) / (a * a)) * xi);
              }),
      nls_draw(1, -1));
  add("u9", "F16b", base, {"c0"}, {Wpos, abneg},
      variant("eps/2*sqrt(-W/(alpha beta))*cot(1/4 sqrt(2W/alpha^2)*(x-omega*t))", omega_input(),
              [](double xi, P p) {
                const double a = p.at("alpha");
                return p.at("eps") / 2 * sqrt(-W(p) / AB(p)) * cot(0.25 * sqrt(2 * W(p) / (a * a)) * xi);
              }),
      nls_draw(1, -1));
  add("u10", "F18", elliptic, {"c0"},
      {Wpos, abpos, cond("1/2 < m^2 < 1", [](P p) {
         const double m2 = p.at("m") * p.at("m");
         return m2 > 0.5 && m2 < 1;
       })},
      variant("sqrt(m^2 W/(2 alpha beta (2m^2-1)))*cn(1/2 sqrt(W/(alpha^2 (2m^2-1)))*(x-omega*t), m)",
              omega_input(),
              [](double xi, P p) {
                const double a = p.at("alpha"), m2 = p.at("m") * p.at("m");
                return sqrt(m2 * W(p) / (2 * AB(p) * (2 * m2 - 1))) *
                       J(0.5 * sqrt(W(p) / (a * a * (2 * m2 - 1))) * xi, p.at("m")).cn;
              }),
      [](Rng& r) {
        Params p = nls_draw(1, 1)(r);
        p.erase("eps");
        p["m"] = sqrt(r.uniform(0.55, 0.95));
        return p;
      });
  add("u11", "F17", elliptic, {"c0"}, {Wneg, abneg},
      variant("sqrt(m^2 W/(2 alpha beta (m^2+1)))*sn(1/2 sqrt(-W/(alpha^2 (m^2+1)))*(x-omega*t), m)",
              omega_input(),
              [](double xi, P p) {
                const double a = p.at("alpha"), m2 = p.at("m") * p.at("m");
                return sqrt(m2 * W(p) / (2 * AB(p) * (m2 + 1))) *
                       J(0.5 * sqrt(-W(p) / (a * a * (m2 + 1))) * xi, p.at("m")).sn;
              }),
      [](Rng& r) {
        Params p = nls_draw(-1, -1)(r);
        p.erase("eps");
        p["m"] = r.uniform(0.1, 0.9);
        return p;
      });
  add("u12", "F19", elliptic, {"c0"}, {Wpos, abpos},
      variant("sqrt(W/(2 alpha beta (2-m^2)))*dn(1/2 sqrt(W/(alpha^2 (2-m^2)))*(x-omega*t), m)",
              omega_input(),
              [](double xi, P p) {
                const double a = p.at("alpha"), m2 = p.at("m") * p.at("m");
                return sqrt(W(p) / (2 * AB(p) * (2 - m2))) *
                       J(0.5 * sqrt(W(p) / (a * a * (2 - m2))) * xi, p.at("m")).dn;
              }),
      [](Rng& r) {
        Params p = nls_draw(1, 1)(r);
        p.erase("eps");
        p["m"] = r.uniform(0.1, 0.9);
        return p;
      });
  const std::vector<std::string> degenerate = {"alpha", "beta", "omega", "c", "c0", "eps"};
  {
    const Condition neg = cond("beta*c0*c < 0", [](P p) { return p.at("beta") * p.at("c0") * p.at("c") < 0; });
    SolutionEntry& e = add(
        "u13", "F20", degenerate, {}, {W0, neg},
        variant("eps*(-2 omega^2 c0/(beta c))^(1/4)*ds((-8 beta c0 c/omega^2)^(1/4)*(x-omega*t), sqrt(2)/2)",
                omega_input(),
                [](double xi, P p) {
                  const double w2 = p.at("omega") * p.at("omega"), b = p.at("beta"), c = p.at("c"),
                               c0 = p.at("c0");
                  const auto j = J(std::pow(-8 * b * c0 * c / w2, 0.25) * xi, kHalfRoot2);
                  return p.at("eps") * std::pow(-2 * w2 * c0 / (b * c), 0.25) * j.dn / j.sn;
                }),
        nls_degenerate_draw(-1));
    e.conditions.push_back(cond("c0 < 0", [](P p) { return p.at("c0") < 0; }));
    e.erratum = "adds c0 < 0: for c0 > 0 the profile is not real";
  }
  {
    const Condition pos = cond("beta*c0*c > 0", [](P p) { return p.at("beta") * p.at("c0") * p.at("c") > 0; });
    SolutionEntry& e = add(
        "u14", "F21", degenerate, {}, {W0, pos},
        variant("eps*(omega^2 c0/(2 beta c))^(1/4)*[ns + cs](2 (2 beta c0 c/omega^2)^(1/4)*(x-omega*t), sqrt(2)/2)",
                omega_input(),
                [](double xi, P p) {
                  const double w2 = p.at("omega") * p.at("omega"), b = p.at("beta"), c = p.at("c"),
                               c0 = p.at("c0");
                  const auto j = J(2 * std::pow(2 * b * c0 * c / w2, 0.25) * xi, kHalfRoot2);
                  return p.at("eps") * std::pow(w2 * c0 / (2 * b * c), 0.25) * ns_cs(j);
                }),
        nls_degenerate_draw(1));
    e.conditions.push_back(cond("c0 > 0", [](P p) { return p.at("c0") > 0; }));
    e.erratum = "adds c0 > 0: for c0 < 0 the auxiliary equation has no real solution";
  }
  return t;
}

// ---------------------------------------------------------------------------
// KdV-mKdV

double a2b(P p) { return -p.at("alpha") / (2 * p.at("beta")); }
double BG(P p) { return p.at("beta") * p.at("gamma"); }

std::function<Params(Rng&)> kdv_draw(double sgnBG, bool with_eps, bool with_m) {
  return [=](Rng& r) {
    const double al = r.uniform(0.5, 2) * r.sign();
    const double be = r.uniform(0.5, 2) * r.sign();
    const double ga = r.uniform(0.5, 2) * sgnBG * sgn(be);
    Params p{{"alpha", al}, {"beta", be}, {"gamma", ga}};
    if (with_m) p["m"] = r.uniform(0.15, 0.9);
    if (with_eps) p["eps"] = r.sign();
    return p;
  };
}

// Rational-trigonometric entries: omega with sign(omega gamma) = sgnWG and
// sign(alpha^2 + beta omega) = sgnD, away from the degenerate boundary.
std::function<Params(Rng&)> kdv_rational_draw(double sgnD, double sgnWG) {
  return [=](Rng& r) {
    for (;;) {
      const double al = r.uniform(0.5, 2) * r.sign();
      const double be = r.uniform(0.5, 2) * r.sign();
      const double ga = r.uniform(0.5, 2) * r.sign();
      const double eps = r.sign();
      for (int i = 0; i < 2000; ++i) {
        const double w = r.uniform(-12, 12);
        const double D = al * al + be * w;
        if (sgn(w * ga) == sgnWG && sgn(D) == sgnD && std::abs(D) > 0.1)
          return Params{{"alpha", al}, {"beta", be}, {"gamma", ga}, {"omega", w}, {"eps", eps}};
      }
    }
  };
}

void fill_subcase(Params& p, int k) {
  const SubCaseParameters s =
      kdv_mkdv_subcase(k, p.at("alpha"), p.at("beta"), p.at("gamma"), p.count("m") ? p.at("m") : 0.5);
  p["omega"] = s.omega;
  p["C"] = s.C;
}

std::function<double(P)> subcase_omega(int k) {
  return [k](P p) {
    return kdv_mkdv_subcase(k, p.at("alpha"), p.at("beta"), p.at("gamma"),
                            p.count("m") ? p.at("m") : 0.5)
        .omega;
  };
}

std::vector<SolutionEntry> kdv_table() {
  std::vector<SolutionEntry> t;
  const Condition bgpos = cond("beta*gamma > 0", [](P p) { return BG(p) > 0; });
  const Condition bgneg = cond("beta*gamma < 0", [](P p) { return BG(p) < 0; });
  const Condition C0 = cond("C = 0", [](P p) { return near_zero(p.at("C"), 0.0); });
  const std::vector<std::string> pmg = {"alpha", "beta", "gamma"};
  const std::vector<std::string> pmge = {"alpha", "beta", "gamma", "eps"};
  const std::vector<std::string> pmgem = {"alpha", "beta", "gamma", "eps", "m"};
  const std::vector<std::string> wc = {"omega", "C"};

  auto add = [&](std::string id, std::string fam, std::vector<std::string> in,
                 std::vector<std::string> opt, std::vector<Condition> conds, SolutionVariant v,
                 std::function<void(Params&)> complete,
                 std::function<Params(Rng&)> sample) -> SolutionEntry& {
    SolutionEntry e;
    e.pde = "kdv_mkdv";
    e.id = std::move(id);
    e.family = std::move(fam);
    e.inputs = std::move(in);
    e.optional = std::move(opt);
    e.printed_conditions = conds;
    e.conditions = std::move(conds);
    e.printed = std::move(v);
    e.complete = std::move(complete);
    e.sample = std::move(sample);
    t.push_back(std::move(e));
    return t.back();
  };

  const auto fill_C0 = [](Params& p) { put_default(p, "C", 0.0); };
  const auto eps_times_sign_gamma = [](P p) { return p.at("eps") * sgn(p.at("gamma")); };
  const Condition Dpos = cond("alpha^2 + beta*omega > 0", [](P p) {
    return p.at("alpha") * p.at("alpha") + p.at("beta") * p.at("omega") > 0;
  });
  const Condition Dneg = cond("alpha^2 + beta*omega < 0", [](P p) {
    return p.at("alpha") * p.at("alpha") + p.at("beta") * p.at("omega") < 0;
  });
  const Condition wgpos = cond("omega*gamma > 0", [](P p) { return p.at("omega") * p.at("gamma") > 0; });
  const Condition wgneg = cond("omega*gamma < 0", [](P p) { return p.at("omega") * p.at("gamma") < 0; });
  const std::vector<std::string> rational_in = {"alpha", "beta", "gamma", "omega", "eps"};

  add("u1", "F1", rational_in, {"C"}, {C0, Dpos, wgpos},
      variant("omega/(eps*sqrt(alpha^2+beta omega)*cosh(sqrt(omega/gamma)*(x-omega*t)) + alpha)",
              omega_input(),
              [](double xi, P p) {
                const double a = p.at("alpha"), w = p.at("omega");
                return w / (p.at("eps") * sqrt(a * a + p.at("beta") * w) *
                                std::cosh(sqrt(w / p.at("gamma")) * xi) + a);
              }),
      fill_C0, kdv_rational_draw(1, 1))
      .family_eps = eps_times_sign_gamma;
  add("u2", "F2", rational_in, {"C"}, {C0, Dneg, wgpos},
      variant("omega/(eps*sqrt(-(alpha^2+beta omega))*sinh(sqrt(omega/gamma)*(x-omega*t)) + alpha)",
              omega_input(),
              [](double xi, P p) {
                const double a = p.at("alpha"), w = p.at("omega");
                return w / (p.at("eps") * sqrt(-(a * a + p.at("beta") * w)) *
                                std::sinh(sqrt(w / p.at("gamma")) * xi) + a);
              }),
      fill_C0, kdv_rational_draw(-1, 1))
      .family_eps = eps_times_sign_gamma;
  add("u3", "F3a", rational_in, {"C"}, {C0, Dpos, wgneg},
      variant("omega/(eps*sqrt(alpha^2+beta omega)*cos(sqrt(-omega/gamma)*(x-omega*t)) + alpha)",
              omega_input(),
              [](double xi, P p) {
                const double a = p.at("alpha"), w = p.at("omega");
                return w / (p.at("eps") * sqrt(a * a + p.at("beta") * w) *
                                std::cos(sqrt(-w / p.at("gamma")) * xi) + a);
              }),
      fill_C0, kdv_rational_draw(1, -1))
      .family_eps = eps_times_sign_gamma;
  add("u4", "F3b", rational_in, {"C"}, {C0, Dpos, wgneg},
      variant("omega/(eps*sqrt(alpha^2+beta omega)*sin(sqrt(-omega/gamma)*(x-omega*t)) + alpha)",
              omega_input(),
              [](double xi, P p) {
                const double a = p.at("alpha"), w = p.at("omega");
                return w / (p.at("eps") * sqrt(a * a + p.at("beta") * w) *
                                std::sin(sqrt(-w / p.at("gamma")) * xi) + a);
              }),
      fill_C0, kdv_rational_draw(1, -1))
      .family_eps = eps_times_sign_gamma;

  const auto kink_omega = [](P p) { return -p.at("alpha") * p.at("alpha") / p.at("beta"); };
  const auto fill_kink = [kink_omega](Params& p) {
    p["omega"] = kink_omega(p);
    p["C"] = 0.0;
  };
  add("u5", "F4", pmge, wc, {bgneg},
      variant("-alpha/(2 beta)*[1 + eps*tanh(1/2 sqrt(-alpha^2/(beta gamma))*(x + alpha^2/beta t))]",
              kink_omega,
              [](double xi, P p) {
                const double a = p.at("alpha");
                return a2b(p) * (1 + p.at("eps") * std::tanh(0.5 * sqrt(-a * a / BG(p)) * xi));
              }),
      fill_kink, kdv_draw(-1, true, false));
  add("u6", "F5", pmge, wc, {bgneg},
      variant("-alpha/(2 beta)*[1 + eps*coth(1/2 sqrt(-alpha^2/(beta gamma))*(x + alpha^2/beta t))]",
              kink_omega,
              [](double xi, P p) {
                const double a = p.at("alpha");
                return a2b(p) * (1 + p.at("eps") * coth(0.5 * sqrt(-a * a / BG(p)) * xi));
              }),
      fill_kink, kdv_draw(-1, true, false));
  add("u7", "F7", pmg, wc, {cond("omega = 0", [](P p) { return near_zero(p.at("omega"), 0.0); })},
      variant("-2 alpha gamma/(alpha^2 x^2 + beta gamma)", omega_const(0.0),
              [](double xi, P p) {
                const double a = p.at("alpha");
                return -2 * a * p.at("gamma") / (a * a * xi * xi + BG(p));
              }),
      [](Params& p) {
        put_default(p, "omega", 0.0);
        p["C"] = 0.0;
      },
      [](Rng& r) {
        return Params{{"alpha", r.uniform(0.5, 2) * r.sign()}, {"beta", r.uniform(0.5, 2) * r.sign()},
                      {"gamma", r.uniform(0.5, 2) * r.sign()}};
      });

  // Sub-case (1): T = f^2(1/6 sqrt(+-3 alpha^2/(beta gamma)) xi).
  struct Rational {
    const char* id;
    const char* fam;
    const char* fn;
    double (*f)(double);
    double s;  // +1: beta gamma > 0 (hyperbolic), -1: beta gamma < 0 (circular)
  };
  static double (*const th)(double) = [](double z) { return std::tanh(z); };
  static double (*const cth)(double) = [](double z) { return 1 / std::tanh(z); };
  static double (*const tn)(double) = [](double z) { return std::tan(z); };
  static double (*const ctn)(double) = [](double z) { return 1 / std::tan(z); };
  for (const Rational& q : {Rational{"u8", "F23", "tanh", th, 1}, Rational{"u9", "F24", "coth", cth, 1},
                            Rational{"u10", "F25", "tan", tn, -1}, Rational{"u11", "F26", "cot", ctn, -1}}) {
    const double s = q.s;
    const auto f = q.f;
    auto T = [s, f](double xi, P p) {
      const double a = p.at("alpha");
      const double v = f(sqrt(s * 3 * a * a / BG(p)) / 6 * xi);
      return v * v;
    };
    const std::string fn = q.fn;
    const std::string arg = s > 0 ? "(1/6 sqrt(3 alpha^2/(beta gamma))*(x + alpha^2/beta t))"
                                  : "(1/6 sqrt(-3 alpha^2/(beta gamma))*(x + alpha^2/beta t))";
    const std::string lead = s > 0 ? "-4 alpha " : "4 alpha ";
    const std::string den = s > 0 ? "(3 + " : "(3 - ";
    SolutionEntry& e = add(
        q.id, q.fam, pmg, wc, {s > 0 ? bgpos : bgneg},
        variant(lead + fn + "^2" + arg + "/(3 beta " + den + fn + "^2" + arg + ")^2)", kink_omega,
                [s, T](double xi, P p) {
                  const double v = T(xi, p), d = 3 + s * v;
                  return -s * 4 * p.at("alpha") * v / (3 * p.at("beta") * d * d);
                }),
        [](Params& p) { fill_subcase(p, 1); }, kdv_draw(s, false, false));
    e.corrected = variant(lead + fn + "^2" + arg + "/(3 beta " + den + fn + "^2" + arg + "))",
                          kink_omega, [s, T](double xi, P p) {
                            const double v = T(xi, p);
                            return -s * 4 * p.at("alpha") * v / (3 * p.at("beta") * (3 + s * v));
                          });
    e.erratum = "the denominator is squared as printed; unsquared it solves the equation";
  }

  // Sub-case (2)
  const auto arg2 = [](double xi, P p) {
    const double m = p.at("m");
    return p.at("alpha") / (2 * m * p.at("beta")) * sqrt(-p.at("beta") / p.at("gamma")) * xi;
  };
  const std::string x2 = "(alpha/(2 m beta) sqrt(-beta/gamma)*(x + alpha^2 (5m^2-1)/(4 m^2 beta) t), m)";
  add("u12", "F27", pmgem, wc, {bgneg},
      variant("-alpha/(2 beta)*[1 + eps*sn" + x2 + "]", subcase_omega(2),
              [arg2](double xi, P p) {
                return a2b(p) * (1 + p.at("eps") * J(arg2(xi, p), p.at("m")).sn);
              }),
      [](Params& p) { fill_subcase(p, 2); }, kdv_draw(-1, true, true));
  add("u13", "F28", pmgem, wc, {bgneg},
      variant("-alpha/(2 beta)*[1 + eps/(m sn" + x2 + ")]", subcase_omega(2),
              [arg2](double xi, P p) {
                const double m = p.at("m");
                return a2b(p) * (1 + p.at("eps") / (m * J(arg2(xi, p), m).sn));
              }),
      [](Params& p) { fill_subcase(p, 2); }, kdv_draw(-1, true, true));

  // Sub-case (3)
  const auto arg3 = [](double xi, P p) {
    return p.at("alpha") / (2 * p.at("gamma")) * sqrt(-p.at("gamma") / p.at("beta")) * xi;
  };
  const auto printed_omega3 = [](P p) {
    const double a = p.at("alpha"), m = p.at("m");
    return a * a * (m * m - 5) / p.at("beta");
  };
  const std::string x3p = "(alpha/(2 gamma) sqrt(-gamma/beta)*(x - alpha^2 (m^2-5)/beta t), m)";
  const std::string x3c = "(alpha/(2 gamma) sqrt(-gamma/beta)*(x - alpha^2 (m^2-5)/(4 beta) t), m)";
  const auto sn_profile3 = [arg3](double xi, P p) {
    const double m = p.at("m");
    return a2b(p) * (1 - p.at("eps") * m * J(arg3(xi, p), m).sn);
  };
  const auto ns_profile3 = [arg3](double xi, P p) {
    return a2b(p) * (1 - p.at("eps") / J(arg3(xi, p), p.at("m")).sn);
  };
  for (auto [id, fam, head, tail, prof] :
       {std::tuple{"u14", "F29", "-alpha/(2 beta)*[1 - eps*m*sn", "]",
                   std::function<double(double, P)>(sn_profile3)},
        std::tuple{"u15", "F30", "-alpha/(2 beta)*[1 - eps/sn", "]",
                   std::function<double(double, P)>(ns_profile3)}}) {
    SolutionEntry& e = add(id, fam, pmgem, wc, {bgneg},
                           variant(std::string(head) + x3p + tail, printed_omega3, prof),
                           [](Params& p) { fill_subcase(p, 3); }, kdv_draw(-1, true, true));
    e.corrected = variant(std::string(head) + x3c + tail, subcase_omega(3), prof);
    e.erratum = "wave speed alpha^2 (m^2-5)/beta -> alpha^2 (m^2-5)/(4 beta)";
  }

  // Sub-case (4)
  const auto arg4 = [](double xi, P p) {
    return p.at("alpha") / (2 * p.at("m") * p.at("gamma")) * sqrt(p.at("gamma") / p.at("beta")) * xi;
  };
  const std::string x4 = "(alpha/(2 m gamma) sqrt(gamma/beta)*(x + alpha^2 (4m^2+1)/(4 m^2 beta) t), m)";
  add("u16", "F31", pmgem, wc, {bgpos},
      variant("-alpha/(2 beta)*[1 + eps*cn" + x4 + "]", subcase_omega(4),
              [arg4](double xi, P p) {
                return a2b(p) * (1 + p.at("eps") * J(arg4(xi, p), p.at("m")).cn);
              }),
      [](Params& p) { fill_subcase(p, 4); }, kdv_draw(1, true, true));
  add("u17", "F32", pmgem, wc, {bgpos},
      variant("-alpha/(2 beta)*[1 + eps*sqrt(1-m^2)*sn" + x4 + "/dn" + x4 + "]", subcase_omega(4),
              [arg4](double xi, P p) {
                const double m = p.at("m");
                const auto j = J(arg4(xi, p), m);
                return a2b(p) * (1 + p.at("eps") * sqrt(1 - m * m) * j.sn / j.dn);
              }),
      [](Params& p) { fill_subcase(p, 4); }, kdv_draw(1, true, true));

  // Sub-case (5)
  const auto arg5 = [](double xi, P p) {
    const double m = p.at("m");
    return p.at("alpha") / (2 * p.at("gamma")) * sqrt(p.at("gamma") / (p.at("beta") * (1 - m * m))) * xi;
  };
  const std::string x5 =
      "(alpha/(2 gamma) sqrt(gamma/(beta (1-m^2)))*(x + alpha^2 (5m^2-4)/(4 beta (m^2-1)) t), m)";
  add("u18", "F33", pmgem, wc, {bgpos},
      variant("-alpha/(2 beta)*[1 + eps/sqrt(1-m^2)*dn" + x5 + "]", subcase_omega(5),
              [arg5](double xi, P p) {
                const double m = p.at("m");
                return a2b(p) * (1 + p.at("eps") / sqrt(1 - m * m) * J(arg5(xi, p), m).dn);
              }),
      [](Params& p) { fill_subcase(p, 5); }, kdv_draw(1, true, true));
  add("u19", "F34", pmgem, wc, {bgpos},
      variant("-alpha/(2 beta)*[1 + eps/dn" + x5 + "]", subcase_omega(5),
              [arg5](double xi, P p) {
                return a2b(p) * (1 + p.at("eps") / J(arg5(xi, p), p.at("m")).dn);
              }),
      [](Params& p) { fill_subcase(p, 5); }, kdv_draw(1, true, true));

  // Sub-case (6)
  const auto arg6 = [](double xi, P p) {
    const double m = p.at("m");
    return p.at("alpha") / (2 * p.at("gamma")) * sqrt(-p.at("gamma") / (p.at("beta") * (1 - m * m))) * xi;
  };
  const std::string x6 =
      "(alpha/(2 gamma) sqrt(-gamma/(beta (1-m^2)))*(x + alpha^2 (4m^2-5)/(4 beta (m^2-1)) t), m)";
  add("u20", "F35", pmgem, wc, {bgneg},
      variant("-alpha/(2 beta)*[1 + eps/cn" + x6 + "]", subcase_omega(6),
              [arg6](double xi, P p) {
                return a2b(p) * (1 + p.at("eps") / J(arg6(xi, p), p.at("m")).cn);
              }),
      [](Params& p) { fill_subcase(p, 6); }, kdv_draw(-1, true, true));
  add("u21", "F36", pmgem, wc, {bgneg},
      variant("-alpha/(2 beta)*[1 - eps*dn" + x6 + "/(sqrt(1-m^2)*sn" + x6 + ")]", subcase_omega(6),
              [arg6](double xi, P p) {
                const double m = p.at("m");
                const auto j = J(arg6(xi, p), m);
                return a2b(p) * (1 - p.at("eps") * j.dn / (sqrt(1 - m * m) * j.sn));
              }),
      [](Params& p) { fill_subcase(p, 6); }, kdv_draw(-1, true, true));
  t.back().note = "agrees with the corrected catalog form of its family (sn in the denominator)";

  // Sub-case (7)
  const auto arg7 = [](double xi, P p) {
    return p.at("alpha") / (2 * p.at("gamma")) * sqrt(p.at("gamma") / p.at("beta")) * xi;
  };
  const std::string x7 = "(alpha/(2 gamma) sqrt(gamma/beta)*(x + alpha^2 (m^2+4)/(4 beta) t), m)";
  add("u22", "F37", pmgem, wc, {bgpos},
      variant("-alpha/(2 beta)*[1 + eps*dn" + x7 + "]", subcase_omega(7),
              [arg7](double xi, P p) {
                return a2b(p) * (1 + p.at("eps") * J(arg7(xi, p), p.at("m")).dn);
              }),
      [](Params& p) { fill_subcase(p, 7); }, kdv_draw(1, true, true));
  add("u23", "F38", pmgem, wc, {bgpos},
      variant("-alpha/(2 beta)*[1 + eps*sqrt(1-m^2)/dn" + x7 + "]", subcase_omega(7),
              [arg7](double xi, P p) {
                const double m = p.at("m");
                return a2b(p) * (1 + p.at("eps") * sqrt(1 - m * m) / J(arg7(xi, p), m).dn);
              }),
      [](Params& p) { fill_subcase(p, 7); }, kdv_draw(1, true, true));
  return t;
}

}  // namespace

const std::vector<SolutionEntry>& solution_table(std::string_view pde) {
  static const std::vector<SolutionEntry> mbbm = mbbm_table();
  static const std::vector<SolutionEntry> nls = nls_table();
  static const std::vector<SolutionEntry> kdv = kdv_table();
  const std::string id = pde_definition(pde).id;
  if (id == "mbbm") return mbbm;
  if (id == "nls") return nls;
  return kdv;
}

}  // namespace ellipsolve
