#include "ellipsolve/verifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "ellipsolve/errors.hpp"
#include "ellipsolve/poles.hpp"
#include "json.hpp"
#include "parallel.hpp"

namespace ellipsolve {

namespace {

using cplx = std::complex<double>;

constexpr std::array<double, 7> kD1 = {-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0, 3.0 / 4, -3.0 / 20, 1.0 / 60};
constexpr std::array<double, 7> kD2 = {1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90};
constexpr std::array<double, 9> kD3 = {-7.0 / 240, 3.0 / 10, -169.0 / 120, 61.0 / 30, 0.0,
                                       -61.0 / 30, 169.0 / 120, -3.0 / 10, 7.0 / 240};
constexpr std::array<double, 5> kT1 = {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};

template <std::size_t N, class F>
cplx stencil(const std::array<double, N>& w, const F& f, double h, int power) {
  constexpr int half = static_cast<int>(N / 2);
  cplx s = 0.0;
  for (int k = 0; k < static_cast<int>(N); ++k)
    if (w[k] != 0.0) s += w[k] * f((k - half) * h);
  return s / std::pow(h, power);
}

double param(const Params& p, const char* k) {
  const auto it = p.find(k);
  if (it == p.end()) throw ParameterError(std::string("missing parameter '") + k + "'", std::string(k) + " given");
  return it->second;
}

double normalized(const OperatorValue& v) {
  const double r = std::abs(v.value) / (1 + v.scale);
  return std::isfinite(r) ? r : std::numeric_limits<double>::infinity();
}

// Sign changes of the profile through large values, located by bisection.
std::vector<double> scan_poles(const std::function<double(double)>& f, double lo, double hi) {
  const int n = static_cast<int>(std::min(200000.0, std::ceil((hi - lo) / 2e-3))) + 1;
  const double dx = (hi - lo) / (n - 1);
  std::vector<double> xs(n), fs(n), mags;
  for (int i = 0; i < n; ++i) {
    xs[i] = lo + i * dx;
    fs[i] = f(xs[i]);
    if (std::isfinite(fs[i])) mags.push_back(std::abs(fs[i]));
  }
  double typical = 1.0;
  if (!mags.empty()) {
    std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
    typical += mags[mags.size() / 2];
  }
  std::vector<double> poles;
  for (int i = 0; i + 1 < n; ++i) {
    if (!std::isfinite(fs[i])) {
      poles.push_back(xs[i]);
      continue;
    }
    const double a = fs[i], b = fs[i + 1];
    if (!std::isfinite(b) || (a > 0) == (b > 0)) continue;
    if (std::min(std::abs(a), std::abs(b)) < 20 * typical) continue;
    double l = xs[i], r = xs[i + 1];
    const bool lpos = a > 0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (l + r);
      const double v = f(mid);
      if (!std::isfinite(v)) {
        l = r = mid;
        break;
      }
      ((v > 0) == lpos ? l : r) = mid;
    }
    poles.push_back(0.5 * (l + r));
  }
  return poles;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ResidualReport verify_ode(const ResolvedFamily& rf, const GridSpec& grid, double tol) {
  ValidationOptions o;
  o.grid = grid;
  o.tol = tol;
  o.second_form = true;
  return validate_family(rf, o);
}

OperatorValue pde_operator(std::string_view pde, const Field& u, const Params& physical, double x,
                           double t, double hx, double ht) {
  const std::string id = pde_definition(pde).id;
  auto along_x = [&](double tt) { return [&u, x, tt](double d) { return u(x + d, tt); }; };
  auto along_t = [&](double xx) { return [&u, xx, t](double d) { return u(xx, t + d); }; };
  const cplx v = u(x, t);
  const cplx ut = stencil(kT1, along_t(x), ht, 1);
  OperatorValue out;
  if (id == "mbbm") {
    const cplx ux = stencil(kD1, along_x(t), hx, 1);
    const cplx uxxt = stencil(kD2, [&](double d) { return stencil(kT1, along_t(x + d), ht, 1); }, hx, 2);
    const cplx nl = v * v * ux;
    out.value = ut + ux + nl + uxxt;
    out.scale = std::abs(ut) + std::abs(ux) + std::abs(nl) + std::abs(uxxt);
  } else if (id == "nls") {
    const double alpha = param(physical, "alpha"), beta = param(physical, "beta");
    const cplx uxx = stencil(kD2, along_x(t), hx, 2);
    const cplx a = cplx(0, 1) * ut, b = alpha * uxx, c = beta * std::norm(v) * v;
    out.value = a + b + c;
    out.scale = std::abs(a) + std::abs(b) + std::abs(c);
  } else {
    const double alpha = param(physical, "alpha"), beta = param(physical, "beta"),
                 gamma = param(physical, "gamma");
    const cplx ux = stencil(kD1, along_x(t), hx, 1);
    const cplx uxxx = stencil(kD3, along_x(t), hx, 3);
    const cplx nl = 6.0 * (alpha * v + beta * v * v) * ux, disp = gamma * uxxx;
    out.value = ut + nl + disp;
    out.scale = std::abs(ut) + std::abs(nl) + std::abs(disp);
  }
  return out;
}

ResidualReport verify_field(std::string_view pde, const Field& u, const Params& physical,
                            const PdeOptions& opts, const std::vector<double>& poles, double omega,
                            std::string subject, const FieldScales& scales) {
  const PdeGrid& g = opts.grid;
  if (g.nx < 2 || g.nt < 1 || !(g.x_hi > g.x_lo) || !(g.t_hi >= g.t_lo) || !(g.h > 0) ||
      !(g.h_t > 0))
    throw InvalidGridError("pde grid needs x_hi > x_lo, t_hi >= t_lo, nx >= 2, nt >= 1, h > 0");
  const double hx = g.h / std::max(1.0, scales.x);
  const double ht = g.h_t / std::max(1.0, scales.t);
  const double dx = (g.x_hi - g.x_lo) / (g.nx - 1);
  const double dt = g.nt > 1 ? (g.t_hi - g.t_lo) / (g.nt - 1) : 0.0;
  const double reach = 8 * hx + 4 * std::abs(omega) * ht;
  const double keep = g.pole_margin / std::max(1.0, scales.xi) + reach;

  std::vector<double> fine(static_cast<std::size_t>(g.nx) * g.nt, -1.0);
  std::vector<double> coarse(fine.size(), -1.0);
  detail::parallel_for(static_cast<std::size_t>(g.nt), [&](std::size_t j) {
    const double t = j + 1 == static_cast<std::size_t>(g.nt) && g.nt > 1 ? g.t_hi : g.t_lo + j * dt;
    for (int i = 0; i < g.nx; ++i) {
      const double x = i + 1 == g.nx ? g.x_hi : g.x_lo + i * dx;
      const double xi = x - omega * t;
      bool skip = false;
      for (double p : poles)
        if (std::abs(xi - p) < keep) skip = true;
      if (skip) continue;
      const std::size_t k = j * g.nx + i;
      fine[k] = normalized(pde_operator(pde, u, physical, x, t, hx, ht));
      coarse[k] = normalized(pde_operator(pde, u, physical, x, t, 2 * hx, 2 * ht));
    }
  });
  std::vector<double> f, c;
  double est = 0.0;
  for (std::size_t k = 0; k < fine.size(); ++k) {
    if (fine[k] < 0) continue;
    f.push_back(fine[k]);
    c.push_back(coarse[k]);
    const double d = std::abs(coarse[k] - fine[k]);
    est = std::max(est, std::isfinite(d) ? d : std::numeric_limits<double>::infinity());
  }
  if (f.empty()) throw InvalidGridError("every grid point lies inside a pole exclusion");

  ResidualReport r;
  r.subject = std::move(subject);
  r.check = "pde";
  r.grid = {{"x_lo", g.x_lo}, {"x_hi", g.x_hi}, {"t_lo", g.t_lo}, {"t_hi", g.t_hi},
            {"nx", static_cast<double>(g.nx)}, {"nt", static_cast<double>(g.nt)},
            {"h", g.h}, {"h_t", g.h_t}, {"hx", hx}, {"ht", ht}, {"pole_margin", g.pole_margin},
            {"excluded_width", keep}};
  r.parameters = physical;
  r.parameters["omega"] = omega;
  const double span_lo = g.x_lo - omega * (omega > 0 ? g.t_hi : g.t_lo) - keep;
  const double span_hi = g.x_hi - omega * (omega > 0 ? g.t_lo : g.t_hi) + keep;
  for (double p : poles)
    if (p >= span_lo && p <= span_hi) r.excluded_poles.push_back(p);
  r.pde = summarize(f);
  r.pde_coarse = summarize(c);
  r.max_residual = r.pde->max;
  r.median_residual = r.pde->median;
  r.tolerance = opts.tol;
  r.grid["truncation_estimate"] = est;
  if (r.max_residual <= opts.tol) {
    r.verdict = est <= opts.tol / 10 ? Verdict::pass : Verdict::inconclusive;
  } else {
    r.verdict = est <= 0.5 * r.max_residual ? Verdict::fail : Verdict::inconclusive;
  }
  if (r.verdict == Verdict::inconclusive)
    r.notes.push_back("coarse/fine stencils disagree by " + fmt(est) + "; refine the grid");
  r.notes.push_back(std::to_string(fine.size() - f.size()) + " of " + std::to_string(fine.size()) +
                    " grid points excluded near poles");
  return r;
}

ResidualReport verify_pde(const TravelingWaveSolution& sol, const PdeOptions& opts) {
  const PdeGrid& g = opts.grid;
  const double omega = sol.omega();
  const double reach = 8 * g.h + 4 * std::abs(omega) * g.h_t + g.pole_margin + 1.0;
  const double lo = std::min(g.x_lo - omega * g.t_lo, g.x_lo - omega * g.t_hi) - reach;
  const double hi = std::max(g.x_hi - omega * g.t_lo, g.x_hi - omega * g.t_hi) + reach;

  std::vector<std::string> notes;
  std::optional<std::vector<double>> poles;
  try {
    poles = sol.profile_poles(lo, hi);
  } catch (const Error& e) {
    notes.push_back(std::string("family pole analysis unavailable: ") + e.what());
  }
  if (!poles) {
    poles = scan_poles([&](double xi) { return sol.profile(xi); }, lo, hi);
    notes.push_back("poles located numerically from the profile");
  }

  FieldScales scales;
  try {
    const ResolvedFamily rf = sol.family();
    scales.xi = max_argument_slope(rf.family->form, rf.params);
  } catch (const Error&) {
    notes.push_back("argument slope unavailable; unit scales used");
  }
  if (!std::isfinite(scales.xi)) scales.xi = 1.0;
  scales.x = scales.xi;
  scales.t = std::abs(omega) * scales.xi;
  if (sol.is_complex()) {
    scales.x = std::max(scales.x, std::abs(nls_wave_number(sol.params())));
    scales.t = std::max(scales.t, std::abs(sol.params().at("c")));
  }

  Params physical;
  for (const auto& k : pde_definition(sol.entry().pde).physical) physical[k] = sol.params().at(k);
  ResidualReport r = verify_field(sol.entry().pde, sol.field(), physical, opts, *poles, omega,
                                  sol.entry().pde + "/" + sol.entry().id, scales);
  r.parameters = sol.params();
  r.parameters["omega"] = omega;
  for (auto& n : notes) r.notes.push_back(std::move(n));
  if (sol.unchecked()) r.notes.push_back("validity conditions not enforced (unchecked)");
  if (&sol.variant() == &sol.entry().printed && sol.entry().corrected)
    r.notes.push_back("printed variant evaluated; a corrected variant exists");
  if (!sol.entry().erratum.empty()) r.notes.push_back("erratum: " + sol.entry().erratum);
  return r;
}

C0Audit arbitrary_c0_audit(std::string_view pde, const std::vector<std::string>& ids,
                           const std::vector<double>& c0_values, const Params& params,
                           const PdeOptions& opts, std::uint64_t seed) {
  C0Audit audit;
  audit.pde = pde_definition(pde).id;
  audit.claim_holds = !ids.empty() && !c0_values.empty();
  for (const auto& id : ids) {
    const SolutionEntry& e = solution_entry(pde, id);
    if (std::find(e.optional.begin(), e.optional.end(), "c0") == e.optional.end())
      throw ParameterError(audit.pde + " " + id + " does not take c0", "c0 accepted");
    C0AuditEntry entry;
    entry.solution = id;
    entry.c0_values = c0_values;
    if (params.empty()) {
      Rng rng(seed ^ fnv1a(audit.pde + "/" + id));
      entry.params = e.sample(rng);
    } else {
      for (const auto& k : e.inputs)
        if (params.count(k)) entry.params[k] = params.at(k);
    }
    entry.passes = true;
    std::vector<double> reference;
    for (double c0 : c0_values) {
      Params p = entry.params;
      p["c0"] = c0;
      const TravelingWaveSolution sol = make_solution(pde, id, p);
      std::vector<double> values;
      for (double xi : {-1.3, -0.4, 0.35, 1.1}) values.push_back(sol.profile(xi));
      if (reference.empty())
        reference = values;
      else if (values != reference)
        entry.profile_uses_c0 = true;
      entry.reports.push_back(verify_pde(sol, opts));
      if (entry.reports.back().verdict != Verdict::pass) entry.passes = false;
    }
    if (!entry.passes || entry.profile_uses_c0) audit.claim_holds = false;
    audit.entries.push_back(std::move(entry));
  }
  return audit;
}

std::string to_json(const C0Audit& audit, int indent) {
  using nlohmann::json;
  json j;
  j["pde"] = audit.pde;
  j["claim_holds"] = audit.claim_holds;
  json entries = json::array();
  for (const auto& e : audit.entries) {
    json ej;
    ej["solution"] = e.solution;
    ej["params"] = e.params;
    ej["c0_values"] = e.c0_values;
    ej["profile_uses_c0"] = e.profile_uses_c0;
    ej["passes"] = e.passes;
    json reports = json::array();
    for (const auto& r : e.reports) reports.push_back(json::parse(to_json(r, -1)));
    ej["reports"] = reports;
    entries.push_back(ej);
  }
  j["entries"] = entries;
  return j.dump(indent);
}

}  // namespace ellipsolve
