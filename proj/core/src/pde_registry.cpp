#include <algorithm>
#include <cmath>
#include <sstream>

#include "ellipsolve/errors.hpp"
#include "ellipsolve/pde.hpp"
#include "ellipsolve/poles.hpp"
#include "json.hpp"

namespace ellipsolve {

namespace {

const std::vector<PDEDefinition>& definitions() {
  static const std::vector<PDEDefinition> defs = {
      {"mbbm", "u_t + u_x + u^2 u_x + u_xxt = 0", {}, {"omega", "B"}, "B", false},
      {"nls", "i u_t + alpha u_xx + beta |u|^2 u = 0", {"alpha", "beta"}, {"omega", "c"}, "c",
       true},
      {"kdv_mkdv", "u_t + 6 (alpha u + beta u^2) u_x + gamma u_xxx = 0", {"alpha", "beta", "gamma"},
       {"omega", "C"}, "C", false},
  };
  return defs;
}

double need(const Params& p, const std::string& key, std::string_view pde) {
  const auto it = p.find(key);
  if (it == p.end())
    throw ParameterError(std::string(pde) + ": missing parameter '" + key + "'", key + " given");
  if (!std::isfinite(it->second))
    throw ParameterError(std::string(pde) + ": parameter '" + key + "' is not finite",
                         key + " finite");
  return it->second;
}

double opt(const Params& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

ReducedODE reduce_with(std::string_view pde, const Params& p, double omega, double K) {
  ReducedODE r;
  r.source = std::string(pde);
  r.params = p;
  r.params["omega"] = omega;
  if (pde == "mbbm") {
    if (omega == 0.0) throw ParameterError("mbbm: omega must be nonzero", "omega != 0");
    r.params["B"] = K;
    r.a0 = K / omega;
    r.a1 = (1 - omega) / omega;
    r.a2 = 0.0;
    r.a3 = 1 / (3 * omega);
  } else if (pde == "nls") {
    const double alpha = need(p, "alpha", pde);
    const double beta = need(p, "beta", pde);
    if (alpha == 0.0) throw ParameterError("nls: alpha must be nonzero", "alpha != 0");
    r.params["c"] = K;
    r.a0 = 0.0;
    r.a1 = (omega * omega + 4 * alpha * K) / (4 * alpha * alpha);
    r.a2 = 0.0;
    r.a3 = -beta / alpha;
  } else {
    const double alpha = need(p, "alpha", pde);
    const double beta = need(p, "beta", pde);
    const double gamma = need(p, "gamma", pde);
    if (gamma == 0.0) throw ParameterError("kdv_mkdv: gamma must be nonzero", "gamma != 0");
    r.params["C"] = K;
    r.a0 = K / gamma;
    r.a1 = omega / gamma;
    r.a2 = -3 * alpha / gamma;
    r.a3 = -2 * beta / gamma;
  }
  return r;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

const std::vector<std::string>& pde_ids() {
  static const std::vector<std::string> ids = {"mbbm", "nls", "kdv_mkdv"};
  return ids;
}

const PDEDefinition& pde_definition(std::string_view id) {
  for (const auto& d : definitions())
    if (d.id == id) return d;
  throw UnknownIdError("unknown pde '" + std::string(id) + "' (expected mbbm, nls or kdv_mkdv)");
}

ReducedODE reduce(std::string_view pde, const Params& params) {
  const PDEDefinition& def = pde_definition(pde);
  const double omega = need(params, "omega", pde);
  return reduce_with(def.id, params, omega, opt(params, def.constant, 0.0));
}

ParameterizedODE parameterized(std::string_view pde, const Params& params) {
  const PDEDefinition& def = pde_definition(pde);
  ParameterizedODE out;
  out.pde = def.id;
  for (const auto& k : def.physical) out.physical[k] = need(params, k, pde);
  Params fixed;
  for (const auto& [k, v] : out.physical) fixed[k] = v;
  const std::string id = def.id;
  out.at = [id, fixed](double omega, double K) { return reduce_with(id, fixed, omega, K); };
  out.omega0 = opt(params, "omega", 1.0);
  out.K0 = opt(params, def.constant, 0.0);
  return out;
}

double nls_wave_number(const Params& params) {
  const double alpha = need(params, "alpha", "nls");
  if (alpha == 0.0) throw ParameterError("nls: alpha must be nonzero", "alpha != 0");
  return need(params, "omega", "nls") / (2 * alpha);
}

Field lift(std::string_view pde, std::function<double(double)> profile, const Params& params) {
  const PDEDefinition& def = pde_definition(pde);
  const double omega = need(params, "omega", pde);
  if (!def.complex_field) {
    return [profile, omega](double x, double t) {
      return std::complex<double>(profile(x - omega * t), 0.0);
    };
  }
  const double k = nls_wave_number(params);
  const double c = need(params, "c", pde);
  return [profile, omega, k, c](double x, double t) {
    return profile(x - omega * t) * std::polar(1.0, k * x + c * t);
  };
}

const SolutionEntry& solution_entry(std::string_view pde, std::string_view id) {
  for (const auto& e : solution_table(pde))
    if (e.id == id) return e;
  throw UnknownIdError("unknown solution '" + std::string(id) + "' for " + std::string(pde));
}

bool TravelingWaveSolution::is_complex() const {
  return pde_definition(entry_->pde).complex_field;
}

double TravelingWaveSolution::omega() const { return variant_->omega(params_); }

double TravelingWaveSolution::profile(double xi) const { return variant_->profile(xi, params_); }

std::complex<double> TravelingWaveSolution::operator()(double x, double t) const {
  const double v = profile(xi(x, t));
  if (!is_complex()) return {v, 0.0};
  const double k = nls_wave_number(params_);
  return v * std::polar(1.0, k * x + params_.at("c") * t);
}

Field TravelingWaveSolution::field() const {
  const TravelingWaveSolution self = *this;
  return [self](double x, double t) { return self(x, t); };
}

ResolvedFamily TravelingWaveSolution::family() const {
  const FamilyPtr fam = Catalog::certified().family(entry_->family);
  Params p = params_;
  p["omega"] = opt(params_, "omega", omega());
  const EllipticCoefficients c = match_coefficients(reduce(entry_->pde, p)).coefficients;
  ResolveOptions ro;
  if (params_.count("c0")) ro.c0 = params_.at("c0");
  if (params_.count("m")) ro.m = params_.at("m");
  ro.eps = entry_->family_eps ? entry_->family_eps(params_) : opt(params_, "eps", 1.0);
  try {
    return resolve_family(fam, c, ro);
  } catch (const ParameterError&) {
    Bindings b;
    b.c = c;
    b.c.c0 = ro.c0.value_or(0.0);
    b.m = ro.m.value_or(fam->default_m);
    b.eps = ro.eps;
    return bind_family(fam, b);
  }
}

std::optional<std::vector<double>> TravelingWaveSolution::profile_poles(double lo,
                                                                        double hi) const {
  const double shift = opt(params_, "xi0", 0.0);
  const ResolvedFamily rf = family();
  auto poles = real_poles(rf.family->form, rf.params, lo + shift, hi + shift);
  if (!poles) return std::nullopt;
  for (double& p : *poles) p -= shift;
  return poles;
}

TravelingWaveSolution make_solution(std::string_view pde, std::string_view id, Params params,
                                    const SolutionOptions& opts) {
  const SolutionEntry& e = solution_entry(pde, id);
  for (const auto& [k, v] : params) {
    const bool known = std::find(e.inputs.begin(), e.inputs.end(), k) != e.inputs.end() ||
                       std::find(e.optional.begin(), e.optional.end(), k) != e.optional.end();
    if (!known)
      throw ParameterError(std::string(pde) + " " + std::string(id) + ": unexpected parameter '" +
                               k + "'",
                           k + " not used");
  }
  for (const auto& k : e.inputs) need(params, k, pde);
  const Params given = params;
  if (e.complete) e.complete(params);
  if (!opts.unchecked) {
    for (const auto& [k, v] : given) {
      const double d = params.at(k);
      if (std::abs(v - d) > 1e-9 * std::max({1.0, std::abs(v), std::abs(d)}))
        throw ConditionError(std::string(pde) + " " + std::string(id) + ": " + k + " = " + fmt(v) +
                                 " but the solution fixes " + k + " = " + fmt(d),
                             k + " = " + fmt(d));
    }
  }
  if (params.count("m") && !(params.at("m") > 0.0 && params.at("m") < 1.0))
    throw ParameterError("modulus m = " + fmt(params.at("m")) + " outside (0, 1)", "0 < m < 1");
  if (params.count("eps") && std::abs(params.at("eps")) != 1.0)
    throw ParameterError("eps must be +1 or -1", "eps = +-1");

  TravelingWaveSolution s;
  s.entry_ = &e;
  s.variant_ = opts.use_printed ? &e.printed : &e.effective();
  s.params_ = std::move(params);
  s.unchecked_ = opts.unchecked;
  if (!opts.unchecked) {
    const auto& conds = opts.use_printed ? e.printed_conditions : e.conditions;
    for (const auto& c : conds) {
      if (!c.holds(s.params_))
        throw ConditionError(std::string(pde) + " " + std::string(id) + ": condition " + c.text +
                                 " does not hold",
                             c.text);
    }
  }
  return s;
}

std::string registry_json(int indent) {
  using nlohmann::json;
  json arr = json::array();
  for (const auto& d : definitions()) {
    json j;
    j["id"] = d.id;
    j["equation"] = d.equation;
    j["physical"] = d.physical;
    j["wave"] = d.wave;
    j["complex"] = d.complex_field;
    json sols = json::array();
    for (const auto& e : solution_table(d.id)) {
      json s;
      s["id"] = e.id;
      s["family"] = e.family;
      s["inputs"] = e.inputs;
      s["optional"] = e.optional;
      s["formula"] = e.printed.formula;
      std::vector<std::string> pc, ec;
      for (const auto& c : e.printed_conditions) pc.push_back(c.text);
      for (const auto& c : e.conditions) ec.push_back(c.text);
      s["printed_conditions"] = pc;
      s["conditions"] = ec;
      if (e.corrected) s["corrected_formula"] = e.corrected->formula;
      if (!e.erratum.empty()) s["erratum"] = e.erratum;
      if (!e.note.empty()) s["note"] = e.note;
      sols.push_back(s);
    }
    j["solutions"] = sols;
    arr.push_back(j);
  }
  return arr.dump(indent);
}

}  // namespace ellipsolve
