// Printed forms, side conditions and sampling regions of F1..F38.

#include <cctype>
#include <cmath>

#include "catalog_internal.hpp"

namespace ellipsolve::detail {

namespace {

using namespace sym;

const Expr kDelta = pow(c3, 2) - 4 * c2 * c4;
const Expr kDeltaSmall = pow(c1, 2) - 4 * c0 * c2;
const Expr kHalfRoot2 = sqrt(Expr(2)) / 2;
const Expr kM2 = pow(m, 2);

Constraint delta_positive() { return positive(kDelta, "Delta > 0"); }
Constraint delta_negative() { return negative(kDelta, "Delta < 0"); }

std::vector<Constraint> case_membership(int case_id) {
  switch (case_id) {
    case 1: return {equals_zero(c0, "c0 = 0"), equals_zero(c1, "c1 = 0")};
    case 2: return {equals_zero(c3, "c3 = 0"), equals_zero(c4, "c4 = 0")};
    case 3: return {equals_zero(c1, "c1 = 0"), equals_zero(c3, "c3 = 0")};
    case 4: return {equals_zero(c2, "c2 = 0"), equals_zero(c4, "c4 = 0")};
    default: return {equals_zero(c0, "c0 = 0")};
  }
}

struct Spec {
  std::string id;
  int case_id;
  Expr form;
  std::vector<Constraint> side;
  bool uses_eps;
  bool uses_m;
  std::function<void(Rng&, Bindings&)> draw;
  double default_m = 0.5;
  std::string note;
};

SolutionFamily build(Spec s) {
  SolutionFamily f;
  f.id = s.id;
  std::size_t pos = 1;
  while (pos < s.id.size() && std::isdigit(static_cast<unsigned char>(s.id[pos]))) ++pos;
  f.number = std::stoi(s.id.substr(1, pos - 1));
  f.branch = pos < s.id.size() ? s.id[pos] : 0;
  f.case_id = s.case_id;
  f.printed_constraints = case_membership(s.case_id);
  for (auto& c : s.side) f.printed_constraints.push_back(std::move(c));
  f.constraints = f.printed_constraints;
  f.printed_form = s.form;
  f.form = s.form;
  f.uses_eps = s.uses_eps;
  f.uses_m = s.uses_m;
  f.default_m = s.default_m;
  f.note = s.note;
  const bool eps = s.uses_eps;
  const bool usem = s.uses_m;
  auto draw = s.draw;
  f.sample_printed = [draw, eps, usem](Rng& rng) {
    Bindings b;
    if (usem) b.m = rng.uniform(0.1, 0.9);
    draw(rng, b);
    b.eps = eps ? rng.sign() : 1.0;
    return b;
  };
  return f;
}

double u(Rng& r, double a, double b) { return r.uniform(a, b); }

// Case 1: c0 = c1 = 0 and c4 fixed by the drawn discriminant.
std::function<void(Rng&, Bindings&)> case1_draw(double c2_sign, int delta_sign) {
  return [=](Rng& r, Bindings& b) {
    b.c.c2 = c2_sign * u(r, 0.3, 2.0);
    b.c.c3 = u(r, 0.3, 2.0) * r.sign();
    const double delta = delta_sign == 0 ? 0.0 : delta_sign * u(r, 0.3, 3.0);
    b.c.c4 = (b.c.c3 * b.c.c3 - delta) / (4.0 * b.c.c2);
  };
}

std::function<void(Rng&, Bindings&)> case2_draw(double c2_sign, int delta_sign) {
  return [=](Rng& r, Bindings& b) {
    b.c.c2 = c2_sign * u(r, 0.3, 2.0);
    b.c.c1 = u(r, 0.3, 2.0) * r.sign();
    const double delta = delta_sign == 0 ? 0.0 : delta_sign * u(r, 0.3, 3.0);
    b.c.c0 = (b.c.c1 * b.c.c1 - delta) / (4.0 * b.c.c2);
  };
}

std::function<void(Rng&, Bindings&)> case3_delta1_zero(double c2_sign) {
  return [=](Rng& r, Bindings& b) {
    b.c.c2 = c2_sign * u(r, 0.3, 2.0);
    b.c.c4 = u(r, 0.3, 2.0);
    b.c.c0 = b.c.c2 * b.c.c2 / (4.0 * b.c.c4);
  };
}

std::function<void(Rng&, Bindings&)> case5_quadratic(double c2_sign) {
  return [=](Rng& r, Bindings& b) {
    b.c.c2 = c2_sign * u(r, 0.3, 2.0);
    b.c.c3 = u(r, 0.3, 2.0) * r.sign();
    b.c.c1 = 8.0 * b.c.c2 * b.c.c2 / (27.0 * b.c.c3);
    b.c.c4 = b.c.c3 * b.c.c3 / (4.0 * b.c.c2);
  };
}

// Case 5 elliptic pairs: c1, c2 in terms of (c3, c4, m).
using Relation = double (*)(double c3, double c4, double m2);

std::function<void(Rng&, Bindings&)> case5_elliptic(double c4_sign, Relation rel1, Relation rel2) {
  return [=](Rng& r, Bindings& b) {
    b.c.c3 = u(r, 0.3, 2.0) * r.sign();
    b.c.c4 = c4_sign * u(r, 0.3, 2.0);
    const double m2 = b.m * b.m;
    b.c.c1 = rel1(b.c.c3, b.c.c4, m2);
    b.c.c2 = rel2(b.c.c3, b.c.c4, m2);
  };
}

Expr p5() { return -c3 / (4 * c4); }

}  // namespace

std::vector<SolutionFamily> printed_families() {
  std::vector<Spec> specs;

  // Case 1
  specs.push_back({"F1", 1, 2 * c2 / (eps * sqrt(kDelta) * cosh(sqrt(c2) * xi) - c3),
                   {delta_positive(), positive(c2, "c2 > 0")}, true, false, case1_draw(1, 1)});
  specs.push_back({"F2", 1, 2 * c2 / (eps * sqrt(-kDelta) * sinh(sqrt(c2) * xi) - c3),
                   {delta_negative(), positive(c2, "c2 > 0")}, true, false, case1_draw(1, -1)});
  specs.push_back({"F3a", 1, 2 * c2 / (eps * sqrt(kDelta) * cos(sqrt(-c2) * xi) - c3),
                   {delta_positive(), negative(c2, "c2 < 0")}, true, false, case1_draw(-1, 1)});
  specs.push_back({"F3b", 1, 2 * c2 / (eps * sqrt(kDelta) * sin(sqrt(-c2) * xi) - c3),
                   {delta_positive(), negative(c2, "c2 < 0")}, true, false, case1_draw(-1, 1)});
  {
    Constraint c3nz = nonzero(c3, "c3 != 0");
    c3nz.inferred = true;
    specs.push_back({"F4", 1, -c2 / c3 * (1 + eps * tanh(sqrt(c2) / 2 * xi)),
                     {equals_zero(kDelta, "Delta = 0"), positive(c2, "c2 > 0"), c3nz}, true, false,
                     case1_draw(1, 0), 0.5, "c3 != 0 is implied by the -c2/c3 prefactor"});
    specs.push_back({"F5", 1, -c2 / c3 * (1 + eps * coth(sqrt(c2) / 2 * xi)),
                     {equals_zero(kDelta, "Delta = 0"), positive(c2, "c2 > 0"), c3nz}, true, false,
                     case1_draw(1, 0), 0.5, "c3 != 0 is implied by the -c2/c3 prefactor"});
  }
  specs.push_back({"F6", 1, eps / (sqrt(c4) * xi),
                   {equals_zero(c2, "c2 = 0"), equals_zero(c3, "c3 = 0"), positive(c4, "c4 > 0")},
                   true, false, [](Rng& r, Bindings& b) { b.c.c4 = u(r, 0.3, 2.0); }});
  specs.push_back({"F7", 1, 4 * c3 / (pow(c3, 2) * pow(xi, 2) - 4 * c4), {equals_zero(c2, "c2 = 0")},
                   false, false, [](Rng& r, Bindings& b) {
                     b.c.c3 = u(r, 0.3, 2.0) * r.sign();
                     b.c.c4 = u(r, 0.3, 2.0) * r.sign();
                   }});

  // Case 2
  const Expr shift = -c1 / (2 * c2);
  specs.push_back({"F8", 2, shift + eps * sqrt(kDeltaSmall) / (2 * c2) * cosh(sqrt(c2) * xi),
                   {positive(kDeltaSmall, "delta > 0"), positive(c2, "c2 > 0")}, true, false,
                   case2_draw(1, 1)});
  specs.push_back({"F9", 2, shift + eps * sqrt(-kDeltaSmall) / (2 * c2) * sinh(sqrt(c2) * xi),
                   {negative(kDeltaSmall, "delta < 0"), positive(c2, "c2 > 0")}, true, false,
                   case2_draw(1, -1)});
  specs.push_back({"F10a", 2, shift + eps * sqrt(kDeltaSmall) / (2 * c2) * cos(sqrt(-c2) * xi),
                   {positive(kDeltaSmall, "delta > 0"), negative(c2, "c2 < 0")}, true, false,
                   case2_draw(-1, 1)});
  specs.push_back({"F10b", 2, shift + eps * sqrt(kDeltaSmall) / (2 * c2) * sin(sqrt(-c2) * xi),
                   {positive(kDeltaSmall, "delta > 0"), negative(c2, "c2 < 0")}, true, false,
                   case2_draw(-1, 1)});
  specs.push_back({"F11", 2, shift + exp(eps * sqrt(c2) * xi),
                   {equals(c0, pow(c1, 2) / (4 * c2), "delta = 0"), positive(c2, "c2 > 0")}, true,
                   false, case2_draw(1, 0)});
  specs.push_back({"F12", 2, eps * sqrt(c0) * xi,
                   {equals_zero(c1, "c1 = 0"), equals_zero(c2, "c2 = 0")}, true, false,
                   [](Rng& r, Bindings& b) { b.c.c0 = u(r, 0.3, 2.0); }});
  {
    Constraint c1nz = nonzero(c1, "c1 != 0");
    c1nz.inferred = true;
    specs.push_back({"F13", 2, -c0 / c1 + c1 / 4 * pow(xi, 2), {equals_zero(c2, "c2 = 0"), c1nz},
                     false, false,
                     [](Rng& r, Bindings& b) {
                       b.c.c1 = u(r, 0.3, 2.0) * r.sign();
                       b.c.c0 = u(r, -2.0, 2.0);
                     },
                     0.5, "c1 != 0 is implied by the -c0/c1 term"});
  }

  // Case 3
  const Constraint delta1_zero = equals(c0, pow(c2, 2) / (4 * c4), "Delta1 = 0");
  specs.push_back({"F14", 3, eps * sqrt(-c2 / (2 * c4)) * tanh(sqrt(-c2 / 2) * xi),
                   {delta1_zero, negative(c2, "c2 < 0"), positive(c4, "c4 > 0")}, true, false,
                   case3_delta1_zero(-1)});
  specs.push_back({"F15", 3, eps * sqrt(-c2 / (2 * c4)) * coth(sqrt(-c2 / 2) * xi),
                   {delta1_zero, negative(c2, "c2 < 0"), positive(c4, "c4 > 0")}, true, false,
                   case3_delta1_zero(-1)});
  specs.push_back({"F16a", 3, eps * sqrt(c2 / (2 * c4)) * tan(sqrt(c2 / 2) * xi),
                   {delta1_zero, positive(c2, "c2 > 0"), positive(c4, "c4 > 0")}, true, false,
                   case3_delta1_zero(1)});
  specs.push_back({"F16b", 3, eps * sqrt(c2 / (2 * c4)) * cot(sqrt(c2 / 2) * xi),
                   {delta1_zero, positive(c2, "c2 > 0"), positive(c4, "c4 > 0")}, true, false,
                   case3_delta1_zero(1)});
  specs.push_back({"F17", 3, sqrt(-c2 * kM2 / (c4 * (kM2 + 1))) * sn(sqrt(-c2 / (kM2 + 1)) * xi, m),
                   {equals(c0, pow(c2, 2) * kM2 / (c4 * pow(kM2 + 1, 2)),
                           "c0 = c2^2 m^2/(c4 (m^2+1)^2)"),
                    negative(c2, "c2 < 0"), positive(c4, "c4 > 0")},
                   false, true, [](Rng& r, Bindings& b) {
                     b.c.c2 = -u(r, 0.3, 2.0);
                     b.c.c4 = u(r, 0.3, 2.0);
                     const double m2 = b.m * b.m;
                     b.c.c0 = b.c.c2 * b.c.c2 * m2 / (b.c.c4 * (m2 + 1) * (m2 + 1));
                   }});
  {
    Constraint half = positive(2 * kM2 - 1, "m^2 > 1/2");
    half.inferred = true;
    specs.push_back(
        {"F18", 3, sqrt(-c2 * kM2 / (c4 * (2 * kM2 - 1))) * cn(sqrt(c2 / (2 * kM2 - 1)) * xi, m),
         {equals(c0, pow(c2, 2) * kM2 * (kM2 - 1) / (c4 * pow(2 * kM2 - 1, 2)),
                 "c0 = c2^2 m^2 (m^2-1)/(c4 (2m^2-1)^2)"),
          positive(c2, "c2 > 0"), negative(c4, "c4 < 0"), half},
         false, true,
         [](Rng& r, Bindings& b) {
           b.m = std::sqrt(u(r, 0.55, 0.95));
           b.c.c2 = u(r, 0.3, 2.0);
           b.c.c4 = -u(r, 0.3, 2.0);
           const double m2 = b.m * b.m;
           b.c.c0 = b.c.c2 * b.c.c2 * m2 * (m2 - 1) / (b.c.c4 * (2 * m2 - 1) * (2 * m2 - 1));
         },
         std::sqrt(0.75),
         "m^2 > 1/2 is needed for a real amplitude and argument; printed only with a later "
         "solution"});
  }
  specs.push_back({"F19", 3, sqrt(-c2 / (c4 * (2 - kM2))) * dn(sqrt(c2 / (2 - kM2)) * xi, m),
                   {equals(c0, pow(c2, 2) * (1 - kM2) / (c4 * pow(2 - kM2, 2)),
                           "c0 = c2^2 (1-m^2)/(c4 (2-m^2)^2)"),
                    positive(c2, "c2 > 0"), negative(c4, "c4 < 0")},
                   false, true, [](Rng& r, Bindings& b) {
                     b.c.c2 = u(r, 0.3, 2.0);
                     b.c.c4 = -u(r, 0.3, 2.0);
                     const double m2 = b.m * b.m;
                     b.c.c0 = b.c.c2 * b.c.c2 * (1 - m2) / (b.c.c4 * (2 - m2) * (2 - m2));
                   }});
  specs.push_back({"F20", 3, eps * pow(-4 * c0 / c4, 0.25) * ds(pow(-4 * c0 * c4, 0.25) * xi, kHalfRoot2),
                   {equals_zero(c2, "c2 = 0"), negative(c0 * c4, "c0 c4 < 0")}, true, false,
                   [](Rng& r, Bindings& b) {
                     b.c.c4 = u(r, 0.3, 2.0) * r.sign();
                     b.c.c0 = -u(r, 0.3, 2.0) * (b.c.c4 > 0 ? 1.0 : -1.0);
                   }});
  specs.push_back({"F21", 3,
                   eps * pow(c0 / c4, 0.25) * ns_plus_cs(2 * pow(c0 * c4, 0.25) * xi, kHalfRoot2),
                   {equals_zero(c2, "c2 = 0"), positive(c0 * c4, "c0 c4 > 0")}, true, false,
                   [](Rng& r, Bindings& b) {
                     b.c.c4 = u(r, 0.3, 2.0) * r.sign();
                     b.c.c0 = u(r, 0.3, 2.0) * (b.c.c4 > 0 ? 1.0 : -1.0);
                   }});

  // Case 4
  specs.push_back({"F22", 4, wp(sqrt(c3) / 2 * xi, -4 * c1 / c3, -4 * c0 / c3),
                   {positive(c3, "c3 > 0")}, false, false, [](Rng& r, Bindings& b) {
                     b.c.c3 = u(r, 0.8, 2.0);
                     b.c.c1 = u(r, -2.0, 2.0);
                     b.c.c0 = u(r, -2.0, 2.0);
                   }});

  // Case 5
  const Expr c1_quad = 8 * pow(c2, 2) / (27 * c3);
  const Expr c4_quad = pow(c3, 2) / (4 * c2);
  auto quad_side = [&](bool c2_negative) {
    return std::vector<Constraint>{
        c2_negative ? negative(c2, "c2 < 0") : positive(c2, "c2 > 0"),
        equals(c1, c1_quad, "c1 = 8 c2^2/(27 c3)"), equals(c4, c4_quad, "c4 = c3^2/(4 c2)")};
  };
  const Expr th = tanh(sqrt(-c2 / 12) * xi);
  const Expr ct = coth(sqrt(-c2 / 12) * xi);
  const Expr tn = tan(sqrt(c2 / 12) * xi);
  const Expr cg = cot(sqrt(c2 / 12) * xi);
  specs.push_back({"F23", 5, -(8 * c2 * pow(th, 2)) / (3 * c3 * (3 + pow(th, 2))), quad_side(true),
                   false, false, case5_quadratic(-1)});
  specs.push_back({"F24", 5, -(8 * c2 * pow(ct, 2)) / (3 * c3 * (3 + pow(ct, 2))), quad_side(true),
                   false, false, case5_quadratic(-1)});
  specs.push_back({"F25", 5, 8 * c2 * pow(tn, 2) / (3 * c3 * (3 - pow(tn, 2))), quad_side(false),
                   false, false, case5_quadratic(1)});
  specs.push_back({"F26", 5, 8 * c2 * pow(cg, 2) / (3 * c3 * (3 - pow(cg, 2))), quad_side(false),
                   false, false, case5_quadratic(1)});

  auto pair_side = [](bool c4_positive, Expr rel1, std::string t1, Expr rel2, std::string t2) {
    return std::vector<Constraint>{c4_positive ? positive(c4, "c4 > 0") : negative(c4, "c4 < 0"),
                                   equals(c1, rel1, std::move(t1)), equals(c2, rel2, std::move(t2))};
  };

  // (27, 28)
  {
    const Expr r1 = pow(c3, 3) * (kM2 - 1) / (32 * kM2 * pow(c4, 2));
    const Expr r2 = pow(c3, 2) * (5 * kM2 - 1) / (16 * kM2 * c4);
    auto side = pair_side(true, r1, "c1 = c3^3 (m^2-1)/(32 m^2 c4^2)", r2,
                          "c2 = c3^2 (5m^2-1)/(16 m^2 c4)");
    auto draw = case5_elliptic(
        1, [](double a, double c, double m2) { return a * a * a * (m2 - 1) / (32 * m2 * c * c); },
        [](double a, double c, double m2) { return a * a * (5 * m2 - 1) / (16 * m2 * c); });
    const Expr arg = c3 / (4 * m * sqrt(c4)) * xi;
    specs.push_back({"F27", 5, p5() * (1 + eps * sn(arg, m)), side, true, true, draw});
    specs.push_back({"F28", 5, p5() * (1 + eps / (m * sn(arg, m))), side, true, true, draw});
  }
  // (29, 30)
  {
    const Expr r1 = pow(c3, 3) * (1 - kM2) / (32 * pow(c4, 2));
    const Expr r2 = pow(c3, 2) * (5 - kM2) / (16 * c4);
    auto side =
        pair_side(true, r1, "c1 = c3^3 (1-m^2)/(32 c4^2)", r2, "c2 = c3^2 (5-m^2)/(16 c4)");
    auto draw = case5_elliptic(
        1, [](double a, double c, double m2) { return a * a * a * (1 - m2) / (32 * c * c); },
        [](double a, double c, double m2) { return a * a * (5 - m2) / (16 * c); });
    const Expr arg = c3 / (4 * sqrt(c4)) * xi;
    specs.push_back({"F29", 5, p5() * (1 + eps * m * sn(arg, m)), side, true, true, draw});
    specs.push_back({"F30", 5, p5() * (1 + eps / sn(arg, m)), side, true, true, draw});
  }
  // (31, 32)
  {
    const Expr r1 = pow(c3, 3) / (32 * kM2 * pow(c4, 2));
    const Expr r2 = pow(c3, 2) * (4 * kM2 + 1) / (16 * kM2 * c4);
    auto side = pair_side(false, r1, "c1 = c3^3/(32 m^2 c4^2)", r2,
                          "c2 = c3^2 (4m^2+1)/(16 m^2 c4)");
    auto draw = case5_elliptic(
        -1, [](double a, double c, double m2) { return a * a * a / (32 * m2 * c * c); },
        [](double a, double c, double m2) { return a * a * (4 * m2 + 1) / (16 * m2 * c); });
    const Expr arg = -c3 / (4 * m * sqrt(-c4)) * xi;
    specs.push_back({"F31", 5, p5() * (1 + eps * cn(arg, m)), side, true, true, draw});
    specs.push_back({"F32", 5, p5() * (1 + eps * sqrt(1 - kM2) * sn(arg, m) / dn(arg, m)), side,
                     true, true, draw, 0.5,
                     "listed with the cn-type pair but built from sn/dn; validated as printed"});
  }
  // (33, 34)
  {
    const Expr r1 = pow(c3, 3) * kM2 / (32 * pow(c4, 2) * (kM2 - 1));
    const Expr r2 = pow(c3, 2) * (5 * kM2 - 4) / (16 * c4 * (kM2 - 1));
    auto side = pair_side(false, r1, "c1 = c3^3 m^2/(32 c4^2 (m^2-1))", r2,
                          "c2 = c3^2 (5m^2-4)/(16 c4 (m^2-1))");
    auto draw = case5_elliptic(
        -1, [](double a, double c, double m2) { return a * a * a * m2 / (32 * c * c * (m2 - 1)); },
        [](double a, double c, double m2) { return a * a * (5 * m2 - 4) / (16 * c * (m2 - 1)); });
    const Expr arg = c3 / (4 * sqrt(c4 * (kM2 - 1))) * xi;
    specs.push_back({"F33", 5, p5() * (1 + eps / sqrt(1 - kM2) * dn(arg, m)), side, true, true, draw});
    specs.push_back({"F34", 5, p5() * (1 + eps / dn(arg, m)), side, true, true, draw});
  }
  // (35, 36)
  {
    const Expr r1 = pow(c3, 3) / (32 * pow(c4, 2) * (1 - kM2));
    const Expr r2 = pow(c3, 2) * (4 * kM2 - 5) / (16 * c4 * (kM2 - 1));
    auto side = pair_side(true, r1, "c1 = c3^3/(32 c4^2 (1-m^2))", r2,
                          "c2 = c3^2 (4m^2-5)/(16 c4 (m^2-1))");
    auto draw = case5_elliptic(
        1, [](double a, double c, double m2) { return a * a * a / (32 * c * c * (1 - m2)); },
        [](double a, double c, double m2) { return a * a * (4 * m2 - 5) / (16 * c * (m2 - 1)); });
    const Expr arg = c3 / (4 * sqrt(c4 * (1 - kM2))) * xi;
    specs.push_back({"F35", 5, p5() * (1 + eps / cn(arg, m)), side, true, true, draw});
    specs.push_back({"F36", 5, p5() * (1 + eps * dn(arg, m) / (sqrt(1 - kM2) * cn(arg, m))), side,
                     true, true, draw});
  }
  // (37, 38)
  {
    const Expr r1 = pow(c3, 3) * kM2 / (32 * pow(c4, 2));
    const Expr r2 = pow(c3, 2) * (kM2 + 4) / (16 * c4);
    auto side =
        pair_side(false, r1, "c1 = c3^3 m^2/(32 c4^2)", r2, "c2 = c3^2 (m^2+4)/(16 c4)");
    auto draw = case5_elliptic(
        -1, [](double a, double c, double m2) { return a * a * a * m2 / (32 * c * c); },
        [](double a, double c, double m2) { return a * a * (m2 + 4) / (16 * c); });
    const Expr arg = -c3 / (4 * sqrt(-c4)) * xi;
    specs.push_back({"F37", 5, p5() * (1 + eps * dn(arg, m)), side, true, true, draw});
    specs.push_back({"F38", 5, p5() * (1 + eps * sqrt(1 - kM2) / dn(arg, m)), side, true, true, draw});
  }

  std::vector<SolutionFamily> out;
  out.reserve(specs.size());
  for (auto& s : specs) out.push_back(build(std::move(s)));
  return out;
}

}  // namespace ellipsolve::detail
