#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "ellipsolve/catalog.hpp"
#include "ellipsolve/errors.hpp"
#include "ellipsolve/matcher.hpp"
#include "ellipsolve/pde.hpp"
#include "ellipsolve/verifier.hpp"
#include "json.hpp"

namespace ellipsolve::cli {

namespace {

using nlohmann::json;

// Exit with a code and a message for `err`.
struct Abort {
  int code;
  std::string message;
};

struct Global {
  std::uint64_t seed = kDefaultSeed;
  std::optional<double> tol;
  std::string format;  // empty: the command's default
  std::string out_path;
};

std::string num(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

json jnum(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json jparams(const std::map<std::string, double>& p) {
  json j = json::object();
  for (const auto& [k, v] : p) j[k] = jnum(v);
  return j;
}

json jbindings(const Bindings& b, bool uses_m, bool uses_eps) {
  json j = {{"c0", jnum(b.c.c0)}, {"c1", jnum(b.c.c1)}, {"c2", jnum(b.c.c2)},
            {"c3", jnum(b.c.c3)}, {"c4", jnum(b.c.c4)}};
  if (uses_m) j["m"] = jnum(b.m);
  if (uses_eps) j["eps"] = jnum(b.eps);
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::pass: return kPass;
    case Verdict::fail: return kFail;
    case Verdict::inconclusive: return kInconclusive;
  }
  return kFail;
}

// Worst of two verdicts: fail over inconclusive over pass.
Verdict worse(Verdict a, Verdict b) {
  auto rank = [](Verdict v) { return v == Verdict::fail ? 2 : v == Verdict::inconclusive ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

std::vector<double> parse_list(const std::string& s, char sep, const std::string& what) {
  std::vector<double> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    double v = 0.0;
    const auto r = std::from_chars(item.data(), item.data() + item.size(), v);
    if (r.ec != std::errc() || r.ptr != item.data() + item.size())
      throw Abort{kUsage, "cannot parse " + what + " '" + s + "'"};
    out.push_back(v);
  }
  return out;
}

// The bindable parameters, shared by solve, verify and eval.
const std::vector<std::string> kParamKeys = {"alpha", "beta", "gamma", "omega", "B",  "c",
                                             "C",     "c0",   "c1",    "c2",    "c3", "c4",
                                             "m",     "eps",  "xi0"};

struct ParamOptions {
  std::map<std::string, double> values;
  std::map<std::string, CLI::Option*> options;

  void attach(CLI::App* app, const std::vector<std::string>& keys) {
    for (const auto& k : keys) {
      values[k] = 0.0;
      options[k] = app->add_option("--" + k, values[k], "parameter " + k);
    }
  }
  Params given() const {
    Params p;
    for (const auto& [k, opt] : options)
      if (opt->count()) p[k] = values.at(k);
    return p;
  }
};

// Required-but-absent branch inputs get their conventional defaults.
void fill_defaults(const SolutionEntry& e, Params& p) {
  const std::map<std::string, double> defaults = {{"eps", 1.0}, {"m", 0.5}, {"xi0", 0.0}};
  for (const auto& k : e.inputs)
    if (!p.count(k) && defaults.count(k)) p[k] = defaults.at(k);
}

void check_keys(const Params& p, const std::vector<std::string>& allowed, const std::string& who) {
  for (const auto& [k, v] : p)
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw Abort{kUsage, who + " does not take --" + k + " (accepts: " + join(allowed, ", ") + ")"};
}

std::vector<std::string> entry_keys(const SolutionEntry& e) {
  std::vector<std::string> k = e.inputs;
  k.insert(k.end(), e.optional.begin(), e.optional.end());
  return k;
}

std::string errata_status(const Catalog& cat, const SolutionFamily& f) {
  if (std::find(cat.unresolved().begin(), cat.unresolved().end(), f.id) != cat.unresolved().end())
    return "unresolved";
  if (f.constraints_corrected()) return "region restricted";
  if (f.form_corrected()) return "form corrected";
  return "as printed";
}

std::vector<std::string> constraint_texts(const SolutionFamily& f) {
  std::vector<std::string> out;
  for (const auto& c : f.constraints) out.push_back(c.text);
  return out;
}

// ---- catalog -------------------------------------------------------------

std::string catalog_list(const std::string& format) {
  const Catalog& cat = Catalog::certified();
  if (format == "json") return catalog_json(cat) + "\n";
  std::ostringstream os;
  if (format == "csv") {
    os << "id,case,constraints,errata_status,form\n";
    for (const auto& f : cat.families())
      os << f->id << ',' << f->case_id << ',' << csv_field(join(constraint_texts(*f), "; ")) << ','
         << errata_status(cat, *f) << ',' << csv_field(f->form.str()) << '\n';
    return os.str();
  }
  for (const auto& f : cat.families()) {
    std::string id = f->id;
    id.resize(6, ' ');
    std::string status = errata_status(cat, *f);
    status.resize(18, ' ');
    os << id << "case " << f->case_id << "  " << status << join(constraint_texts(*f), "; ")
       << "  |  " << f->form.str() << '\n';
  }
  return os.str();
}

struct CheckResult {
  std::string text;
  int code;
};

CheckResult catalog_check(const std::string& family, int samples, const Global& g,
                          const std::string& format) {
  if (samples < 1) throw Abort{kUsage, "--samples must be at least 1"};
  const Catalog& cat = Catalog::certified();
  std::vector<FamilyPtr> fams;
  if (family.empty()) {
    fams = cat.families();
  } else {
    try {
      fams.push_back(cat.family(family));
    } catch (const UnknownIdError& e) {
      throw Abort{kUsage, e.what()};
    }
  }
  const double tol = g.tol.value_or(kNumericOdeTol);

  json rows = json::array();
  Verdict overall = Verdict::pass;
  std::ostringstream text, csv;
  csv << "id,draws,max_residual,median_residual,verdict\n";
  for (const auto& f : fams) {
    Rng rng(g.seed ^ fnv1a(f->id));
    Verdict v = Verdict::pass;
    std::optional<ResidualReport> worst;
    std::vector<double> maxima;
    for (int k = 0; k < samples; ++k) {
      const ResolvedFamily rf = bind_family(f, f->sample(rng));
      ResidualReport r = verify_ode(rf, {}, tol);
      maxima.push_back(r.max_residual);
      v = worse(v, r.verdict);
      if (!worst || !(r.max_residual <= worst->max_residual)) worst = std::move(r);
    }
    const ResidualStats s = summarize(maxima);
    overall = worse(overall, v);
    json row = {{"id", f->id},
                {"draws", samples},
                {"max_residual", jnum(s.max)},
                {"median_residual", jnum(s.median)},
                {"verdict", std::string(to_string(v))},
                {"worst", json::parse(to_json(*worst, -1))}};
    rows.push_back(row);
    csv << f->id << ',' << samples << ',' << num(s.max) << ',' << num(s.median) << ','
        << to_string(v) << '\n';
    std::string id = f->id;
    id.resize(6, ' ');
    text << id << to_string(v) << "  max " << num(s.max) << "  median " << num(s.median) << '\n';
  }
  json doc = {{"command", "catalog check"}, {"seed", g.seed},         {"samples", samples},
              {"tolerance", tol},           {"families", rows},       {"verdict", std::string(to_string(overall))}};
  std::string out;
  if (format == "json") out = doc.dump(2) + "\n";
  else if (format == "csv") out = csv.str();
  else out = text.str() + "verdict " + std::string(to_string(overall)) + "\n";
  return {out, verdict_code(overall)};
}

// ---- solve ---------------------------------------------------------------

std::string solve(const std::optional<std::string>& pde, const std::string& raw, const Params& given,
                  const Global& g, const std::string& format) {
  ReducedODE ode;
  bool matched = true;
  if (!raw.empty()) {
    if (pde) throw Abort{kUsage, "give either --pde or --raw, not both"};
    check_keys(given, {"c0", "m", "eps"}, "solve --raw");
    const auto a = parse_list(raw, ',', "--raw");
    if (a.size() != 4) throw Abort{kUsage, "--raw needs four values a0,a1,a2,a3"};
    ode.a0 = a[0];
    ode.a1 = a[1];
    ode.a2 = a[2];
    ode.a3 = a[3];
  } else {
    if (!pde) throw Abort{kUsage, "solve needs --pde or --raw"};
    const PDEDefinition& def = pde_definition(*pde);
    std::vector<std::string> allowed = def.physical;
    allowed.insert(allowed.end(), def.wave.begin(), def.wave.end());
    for (const char* k : {"c0", "m", "eps"}) allowed.emplace_back(k);
    check_keys(given, allowed, "solve --pde " + def.id);
    for (const auto& k : def.physical)
      if (!given.count(k)) throw Abort{kUsage, "solve --pde " + def.id + " needs --" + k};
    Params p;
    for (const auto& [k, v] : given)
      if (k != "c0" && k != "m" && k != "eps") p[k] = v;
    // Without omega only the constrained resolution and the table apply.
    matched = given.count("omega") > 0;
    if (matched) ode = reduce(def.id, p);
  }

  ResolveOptions ro;
  if (given.count("c0")) ro.c0 = given.at("c0");
  if (given.count("m")) ro.m = given.at("m");
  if (given.count("eps")) ro.eps = given.at("eps");
  const double tol = g.tol.value_or(kNumericOdeTol);

  json doc;
  doc["command"] = "solve";
  doc["source"] = pde ? pde_definition(*pde).id : std::string("raw");
  doc["parameters"] = jparams(given);
  std::ostringstream text, csv;
  csv << "kind,id,admissible,residual,verdict,detail\n";

  std::vector<std::string> unmatched;
  if (matched) {
    const MatchResult mr = match_coefficients(ode);
    EllipticCoefficients c = mr.coefficients;
    if (ro.c0) c.c0 = *ro.c0;
    const Resolution res = applicable_families(c, ro);
    doc["reduced"] = {{"a0", jnum(ode.a0)}, {"a1", jnum(ode.a1)}, {"a2", jnum(ode.a2)},
                      {"a3", jnum(ode.a3)}};
    doc["coefficients"] = {{"c0", ro.c0 ? jnum(c.c0) : json("free")},
                           {"c1", jnum(c.c1)}, {"c2", jnum(c.c2)}, {"c3", jnum(c.c3)},
                           {"c4", jnum(c.c4)}};
    doc["mapping"] = mr.mapping;
    text << "reduced  u'' = " << num(ode.a0) << " + " << num(ode.a1) << " u + " << num(ode.a2)
         << " u^2 + " << num(ode.a3) << " u^3\n";
    text << "matched  c0 = " << (ro.c0 ? num(c.c0) : "free") << ", c1 = " << num(c.c1)
         << ", c2 = " << num(c.c2) << ", c3 = " << num(c.c3) << ", c4 = " << num(c.c4) << "\n";

    json admitted = json::array();
    text << "admitted families\n";
    for (const auto& rf : res.admitted) {
      const ResidualReport r = verify_ode(rf, {}, tol);
      admitted.push_back({{"id", rf.family->id},
                          {"form", rf.family->form.str()},
                          {"bindings", jbindings(rf.params, rf.family->uses_m, rf.family->uses_eps)},
                          {"conditions", constraint_texts(*rf.family)},
                          {"ode_residual", jnum(r.max_residual)},
                          {"ode_verdict", std::string(to_string(r.verdict))}});
      text << "  " << rf.family->id << "  " << to_string(r.verdict) << " ("
           << num(r.max_residual) << ")  " << rf.family->form.str() << '\n';
      csv << "family," << rf.family->id << ",true," << num(r.max_residual) << ','
          << to_string(r.verdict) << ',' << csv_field(rf.family->form.str()) << '\n';
    }
    json excluded = json::array();
    for (const auto& e : res.excluded) {
      excluded.push_back({{"id", e.family_id}, {"reason", e.reason}});
      csv << "family," << e.family_id << ",false,,," << csv_field(e.reason) << '\n';
      unmatched.push_back(e.family_id);
    }
    doc["admitted"] = admitted;
    doc["excluded"] = excluded;
  } else {
    text << "omega not given: families are resolved for omega and the constant\n";
    for (const auto& f : Catalog::certified().families()) unmatched.push_back(f->id);
  }

  if (pde) {
    const PDEDefinition& def = pde_definition(*pde);
    const std::string& K = def.constant;
    // Families that need (omega, K) tied together: solve for them.
    json constrained = json::array();
    const ParameterizedODE pode = parameterized(def.id, given);
    ConstrainedOptions co;
    if (given.count("m")) co.m = given.at("m");
    if (given.count("eps")) co.eps = given.at("eps");
    for (const auto& id : unmatched) {
      const FamilyPtr fam = Catalog::certified().family(id);
      std::vector<ConstrainedMatch> ms;
      try {
        ms = resolve_constrained_match(pode, *fam, co);
      } catch (const Error&) {
        continue;
      }
      // With m open the starts on the m grid trace a continuum; report the
      // member nearest m = 1/2.
      const bool m_free = !co.m && ms.size() > 1 &&
                          std::all_of(ms.begin(), ms.end(), [](const auto& x) { return x.m.has_value(); });
      if (m_free) {
        const auto best = std::min_element(ms.begin(), ms.end(), [](const auto& a, const auto& b) {
          return std::abs(*a.m - 0.5) < std::abs(*b.m - 0.5);
        });
        ms = {*best};
      }
      std::vector<std::pair<double, double>> seen;
      for (const auto& m : ms) {
        const bool dup = std::any_of(seen.begin(), seen.end(), [&](const auto& s) {
          return std::abs(s.first - m.omega) <= 1e-9 * std::max(1.0, std::abs(m.omega)) &&
                 std::abs(s.second - m.K) <= 1e-9 * std::max(1.0, std::abs(m.K));
        });
        if (dup) continue;
        seen.emplace_back(m.omega, m.K);
        json j = {{"family", fam->id}, {"omega", jnum(m.omega)}, {K, jnum(m.K)},
                  {"method", m.method}};
        std::string line = "  " + fam->id + "  omega = " + num(m.omega) + ", " + K + " = " + num(m.K);
        if (m.m) {
          j["m"] = jnum(*m.m);
          j["m_free"] = m_free;
          line += ", m = " + num(*m.m) + (m_free ? " (any m)" : "");
        }
        constrained.push_back(j);
        text << line << "  (" << m.method << ")\n";
        csv << "constrained," << fam->id << ",true,,," << csv_field(line.substr(2)) << '\n';
      }
    }
    doc["constrained"] = constrained;

    json sols = json::array();
    text << "solutions of " << def.id << "\n";
    for (const auto& e : solution_table(def.id)) {
      Params p;
      const auto keys = entry_keys(e);
      for (const auto& [k, v] : given)
        if (std::find(keys.begin(), keys.end(), k) != keys.end()) p[k] = v;
      fill_defaults(e, p);
      json j = {{"id", e.id}, {"family", e.family}, {"formula", e.effective().formula}};
      std::vector<std::string> ct;
      for (const auto& cnd : e.conditions) ct.push_back(cnd.text);
      j["conditions"] = ct;
      std::string detail;
      try {
        const TravelingWaveSolution s = make_solution(def.id, e.id, p);
        j["admissible"] = true;
        j["omega"] = jnum(s.omega());
        detail = "omega = " + num(s.omega());
      } catch (const ConditionError& err) {
        j["admissible"] = false;
        j["violated"] = err.condition();
        detail = "violates " + err.condition();
      } catch (const ParameterError& err) {
        j["admissible"] = false;
        j["violated"] = err.condition();
        detail = "needs " + err.condition();
      }
      if (!e.erratum.empty()) j["erratum"] = e.erratum;
      const bool ok = j["admissible"].get<bool>();
      std::string id = e.id;
      id.resize(5, ' ');
      text << "  " << id << (ok ? "admissible    " : "inadmissible  ") << detail << "  |  "
           << e.effective().formula << '\n';
      csv << "solution," << e.id << ',' << (ok ? "true" : "false") << ",,," << csv_field(detail)
          << '\n';
      sols.push_back(j);
    }
    doc["solutions"] = sols;
  }

  if (format == "json") return doc.dump(2) + "\n";
  if (format == "csv") return csv.str();
  return text.str();
}

// ---- verify --------------------------------------------------------------

struct GridOptions {
  std::string x_range, t_range;
  int nx = 0, nt = 0;
  double h = 0.0, h_t = 0.0, pole_margin = -1.0;

  void attach(CLI::App* app) {
    app->add_option("--x-range", x_range, "x interval lo:hi");
    app->add_option("--t-range", t_range, "t interval lo:hi");
    app->add_option("--nx", nx, "x grid points");
    app->add_option("--nt", nt, "t grid points");
    app->add_option("--hx", h, "x stencil step");
    app->add_option("--ht", h_t, "t stencil step");
    app->add_option("--pole-margin", pole_margin, "xi distance kept from poles");
  }
  PdeGrid apply(PdeGrid g) const {
    auto interval = [](const std::string& s, double& lo, double& hi, const char* what) {
      const auto v = parse_list(s, ':', what);
      if (v.size() != 2) throw Abort{kUsage, std::string(what) + " needs lo:hi"};
      lo = v[0];
      hi = v[1];
    };
    if (!x_range.empty()) interval(x_range, g.x_lo, g.x_hi, "--x-range");
    if (!t_range.empty()) interval(t_range, g.t_lo, g.t_hi, "--t-range");
    if (nx) g.nx = nx;
    if (nt) g.nt = nt;
    if (h > 0) g.h = h;
    if (h_t > 0) g.h_t = h_t;
    if (pole_margin >= 0) g.pole_margin = pole_margin;
    return g;
  }
};

TravelingWaveSolution build_solution(const std::string& pde, const std::string& id, Params p,
                                     const SolutionOptions& so) {
  const SolutionEntry* e = nullptr;
  try {
    e = &solution_entry(pde_definition(pde).id, id);
  } catch (const UnknownIdError& err) {
    throw Abort{kUsage, err.what()};
  }
  check_keys(p, entry_keys(*e), pde + " " + id);
  fill_defaults(*e, p);
  try {
    return make_solution(e->pde, e->id, p, so);
  } catch (const ConditionError& err) {
    throw Abort{kCondition, std::string(err.what())};
  } catch (const ParameterError& err) {
    throw Abort{kCondition, std::string(err.what())};
  }
}

std::string report_text(const ResidualReport& r) {
  std::ostringstream os;
  os << r.subject << "  " << r.check << "  " << to_string(r.verdict) << "\n";
  os << "  max " << num(r.max_residual) << "  median " << num(r.median_residual) << "  tol "
     << num(r.tolerance) << "\n";
  if (r.pde_coarse) os << "  coarse max " << num(r.pde_coarse->max) << "\n";
  os << "  parameters";
  for (const auto& [k, v] : r.parameters) os << ' ' << k << '=' << num(v);
  os << "\n";
  for (const auto& n : r.notes) os << "  note: " << n << "\n";
  return os.str();
}

std::string report_csv(const ResidualReport& r) {
  std::ostringstream os;
  os << "subject,check,verdict,max_residual,median_residual,tolerance\n";
  os << r.subject << ',' << r.check << ',' << to_string(r.verdict) << ',' << num(r.max_residual)
     << ',' << num(r.median_residual) << ',' << num(r.tolerance) << '\n';
  return os.str();
}

// ---- eval ----------------------------------------------------------------

struct Range {
  double lo, hi;
  int n;
};

Range parse_range(const std::string& s) {
  const auto v = parse_list(s, ':', "--range");
  if (v.size() != 3 || v[2] != std::floor(v[2]))
    throw Abort{kUsage, "--range needs lo:hi:n with integer n"};
  Range r{v[0], v[1], static_cast<int>(v[2])};
  if (r.n < 2 || !(r.hi > r.lo) || !std::isfinite(r.lo) || !std::isfinite(r.hi))
    throw Abort{kDegenerateGrid, "degenerate range '" + s + "'"};
  return r;
}

double at(const Range& r, int i) { return r.lo + (r.hi - r.lo) * i / (r.n - 1); }

struct Table {
  std::map<std::string, double> params;
  std::string subject;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  int skipped = 0;
};

std::string table_out(const Table& t, const std::string& format) {
  if (format == "json") {
    json rows = json::array();
    for (const auto& r : t.rows) {
      json row = json::array();
      for (double v : r) row.push_back(jnum(v));
      rows.push_back(row);
    }
    json doc = {{"subject", t.subject}, {"parameters", jparams(t.params)},
                {"columns", t.columns}, {"rows", rows}, {"skipped_poles", t.skipped}};
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "# " << t.subject;
  for (const auto& [k, v] : t.params) os << ' ' << k << '=' << num(v);
  os << '\n' << join(t.columns, ",") << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << num(r[i]);
    os << '\n';
  }
  return os.str();
}

Table eval_family(const std::string& id, const Params& given, const Range& range, bool skip_poles,
                  const Global& g) {
  FamilyPtr f;
  try {
    f = Catalog::certified().family(id);
  } catch (const UnknownIdError& e) {
    throw Abort{kUsage, e.what()};
  }
  check_keys(given, {"c0", "c1", "c2", "c3", "c4", "m", "eps"}, "eval --family");
  const bool coefficients_given = std::any_of(given.begin(), given.end(), [](const auto& kv) {
    return kv.first.size() == 2 && kv.first[0] == 'c';
  });
  ResolvedFamily rf;
  if (coefficients_given) {
    EllipticCoefficients c;
    for (int i = 0; i < 5; ++i) {
      const std::string k = "c" + std::to_string(i);
      if (given.count(k)) c[i] = given.at(k);
    }
    ResolveOptions ro;
    if (given.count("c0")) ro.c0 = given.at("c0");
    if (given.count("m")) ro.m = given.at("m");
    if (given.count("eps")) ro.eps = given.at("eps");
    try {
      rf = resolve_family(f, c, ro);
    } catch (const ParameterError& e) {
      throw Abort{kCondition, std::string(e.what())};
    }
  } else {
    // No coefficients: a seeded point of the family's admissible region.
    Rng rng(g.seed ^ fnv1a(f->id));
    Bindings b = f->sample(rng);
    if (given.count("m")) b.m = given.at("m");
    if (given.count("eps")) b.eps = given.at("eps");
    rf = bind_family(f, b);
  }

  Table t;
  t.subject = "family " + f->id;
  t.params = {{"c0", rf.params.c.c0}, {"c1", rf.params.c.c1}, {"c2", rf.params.c.c2},
              {"c3", rf.params.c.c3}, {"c4", rf.params.c.c4}};
  if (f->uses_m) t.params["m"] = rf.params.m;
  if (f->uses_eps) t.params["eps"] = rf.params.eps;
  t.columns = {"xi", "value"};
  for (int i = 0; i < range.n; ++i) {
    const double xi = at(range, i);
    double v = 0.0;
    bool pole = false;
    try {
      v = evaluate_family(rf, xi);
      pole = !std::isfinite(v);
    } catch (const PoleError&) {
      pole = true;
    }
    if (pole) {
      if (!skip_poles)
        throw Abort{kDegenerateGrid, "grid point xi = " + num(xi) + " lies on a pole of " + f->id +
                                         " (use --skip-poles)"};
      ++t.skipped;
      continue;
    }
    t.rows.push_back({xi, v});
  }
  if (t.rows.empty()) throw Abort{kDegenerateGrid, "every grid point lies on a pole"};
  return t;
}

Table eval_solution(const std::string& pde, const std::string& id, const Params& given,
                    const Range& range, double time, bool skip_poles, bool unchecked) {
  SolutionOptions so;
  so.unchecked = unchecked;
  const TravelingWaveSolution s = build_solution(pde, id, given, so);
  Table t;
  t.subject = s.entry().pde + "/" + s.entry().id;
  t.params = s.params();
  t.params["omega"] = s.omega();
  t.columns = s.is_complex() ? std::vector<std::string>{"x", "t", "re", "im"}
                             : std::vector<std::string>{"x", "t", "value"};
  const double xi_a = s.xi(range.lo, time), xi_b = s.xi(range.hi, time);
  const auto poles = s.profile_poles(std::min(xi_a, xi_b) - 1e-6, std::max(xi_a, xi_b) + 1e-6);
  for (int i = 0; i < range.n; ++i) {
    const double x = at(range, i);
    const double xi = s.xi(x, time);
    bool pole = false;
    if (poles)
      for (double p : *poles)
        if (std::abs(xi - p) <= 1e-6) pole = true;
    std::complex<double> v;
    if (!pole) {
      v = s(x, time);
      pole = !std::isfinite(v.real()) || !std::isfinite(v.imag());
    }
    if (pole) {
      if (!skip_poles)
        throw Abort{kDegenerateGrid, "grid point x = " + num(x) + " lies on a pole of " +
                                         t.subject + " (use --skip-poles)"};
      ++t.skipped;
      continue;
    }
    if (s.is_complex())
      t.rows.push_back({x, time, v.real(), v.imag()});
    else
      t.rows.push_back({x, time, v.real()});
  }
  if (t.rows.empty()) throw Abort{kDegenerateGrid, "every grid point lies on a pole"};
  return t;
}

// ---- errata --------------------------------------------------------------

CheckResult errata(bool evidence, const Global& g, const std::string& format) {
  std::vector<ErrataEntry> ledger;
  int code = kPass;
  std::string unresolved;
  try {
    ledger = errata_ledger();
  } catch (const UnresolvedErrataError& e) {
    ledger = Catalog::certified().errata();
    unresolved = join(e.families(), ", ");
    code = kFail;
  }
  json doc;
  doc["catalog"] = json::parse(errata_json(ledger, -1));
  if (!unresolved.empty()) doc["unresolved"] = unresolved;

  std::ostringstream text, csv;
  csv << "scope,id,change,printed_residual,corrected_residual\n";
  for (const auto& e : ledger) {
    text << e.family_id << "  " << e.change << "  printed " << num(e.printed_residual)
         << "  corrected " << num(e.corrected_residual) << "\n    " << e.printed << "  ->  "
         << e.corrected << "\n";
    csv << "catalog," << e.family_id << ',' << csv_field(e.change) << ',' << num(e.printed_residual)
        << ',' << num(e.corrected_residual) << '\n';
  }

  json sols = json::array();
  for (const auto& pde : pde_ids()) {
    for (const auto& e : solution_table(pde)) {
      if (e.erratum.empty()) continue;
      json j = {{"pde", pde}, {"id", e.id}, {"family", e.family}, {"erratum", e.erratum},
                {"printed_formula", e.printed.formula}};
      if (e.corrected) j["corrected_formula"] = e.corrected->formula;
      // Condition errata keep the formula; only the in-region residual applies.
      double pr = NAN, cr = NAN;
      if (evidence) {
        Rng rng(g.seed ^ fnv1a(pde + "/" + e.id));
        const Params p = e.sample(rng);
        cr = verify_pde(make_solution(pde, e.id, p)).max_residual;
        j["parameters"] = jparams(p);
        j["corrected_residual"] = jnum(cr);
        if (e.corrected) {
          SolutionOptions printed_opts;
          printed_opts.use_printed = true;
          printed_opts.unchecked = true;
          pr = verify_pde(make_solution(pde, e.id, p, printed_opts)).max_residual;
          j["printed_residual"] = jnum(pr);
        }
      }
      sols.push_back(j);
      text << pde << "/" << e.id << "  " << e.erratum;
      if (evidence && e.corrected) text << "  printed " << num(pr);
      if (evidence) text << "  corrected " << num(cr);
      text << "\n";
      csv << "solution," << pde << "/" << e.id << ',' << csv_field(e.erratum) << ','
          << (evidence && e.corrected ? num(pr) : "") << ',' << (evidence ? num(cr) : "") << '\n';
    }
  }
  doc["solutions"] = sols;
  if (!unresolved.empty()) text << "unresolved: " << unresolved << "\n";

  if (format == "json") return {doc.dump(2) + "\n", code};
  if (format == "csv") return {csv.str(), code};
  return {text.str(), code};
}

void write(const Global& g, std::ostream& out, const std::string& text) {
  if (g.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(g.out_path, std::ios::binary);
  if (!f) throw Abort{kUsage, "cannot write '" + g.out_path + "'"};
  f << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Traveling-wave solutions by elliptic auxiliary-equation matching", "ellipsolve"};
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  app.add_option("--seed", g.seed, "seed for sampled sweeps")->capture_default_str();
  app.add_option("--tol", g.tol, "residual tolerance override");
  app.add_option("--format", g.format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", g.out_path, "write the result to a file");

  auto* catalog = app.add_subcommand("catalog", "list or check the solution families");
  catalog->require_subcommand(1);
  auto* cat_list = catalog->add_subcommand("list", "families with constraints and errata status");
  auto* cat_check = catalog->add_subcommand("check", "residual sweeps over admissible draws");
  auto* cat_pdes = catalog->add_subcommand("pdes", "registered equations and solution tables");
  std::string family;
  int samples = kCertificationDraws;
  cat_check->add_option("--family", family, "family id, e.g. F17");
  cat_check->add_option("--samples", samples, "draws per family")->capture_default_str();

  auto* solve_cmd = app.add_subcommand("solve", "match a reduction and list its solutions");
  std::optional<std::string> pde;
  std::string raw;
  bool as_json = false;
  ParamOptions solve_params;
  solve_cmd->add_option("--pde", pde, "mbbm, nls or kdv_mkdv");
  solve_cmd->add_option("--raw", raw, "reduced cubic a0,a1,a2,a3");
  solve_cmd->add_flag("--json", as_json, "same as --format json");
  solve_params.attach(solve_cmd, kParamKeys);

  auto* verify_cmd = app.add_subcommand("verify", "PDE residual of a tabulated solution");
  std::string vpde, solution;
  bool unchecked = false, printed = false;
  ParamOptions verify_params;
  GridOptions grid;
  verify_cmd->add_option("--pde", vpde, "mbbm, nls or kdv_mkdv")->required();
  verify_cmd->add_option("--solution", solution, "solution id, e.g. u5")->required();
  verify_cmd->add_flag("--unchecked", unchecked, "skip the validity conditions");
  verify_cmd->add_flag("--printed", printed, "use the printed formula even if corrected");
  verify_params.attach(verify_cmd, kParamKeys);
  grid.attach(verify_cmd);

  auto* eval_cmd = app.add_subcommand("eval", "tabulate a family or a solution");
  std::string efamily, epde, esolution, range;
  double time = 0.0;
  bool skip_poles = false, eunchecked = false;
  ParamOptions eval_params;
  auto* fam_opt = eval_cmd->add_option("--family", efamily, "family id");
  auto* pde_opt = eval_cmd->add_option("--pde", epde, "equation id");
  eval_cmd->add_option("--solution", esolution, "solution id")->needs(pde_opt);
  pde_opt->excludes(fam_opt);
  eval_cmd->add_option("--range", range, "lo:hi:n in xi (family) or x (solution)")->required();
  eval_cmd->add_option("--t", time, "time for solution tables");
  eval_cmd->add_flag("--skip-poles", skip_poles, "drop grid points on poles");
  eval_cmd->add_flag("--unchecked", eunchecked, "skip the validity conditions");
  eval_params.attach(eval_cmd, kParamKeys);

  auto* errata_cmd = app.add_subcommand("errata", "corrections to the printed tables");
  bool evidence = false;
  errata_cmd->add_flag("--evidence", evidence, "measure printed and corrected PDE residuals");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  auto fmt = [&](const char* fallback) { return g.format.empty() ? std::string(fallback) : g.format; };
  try {
    if (catalog->parsed()) {
      if (cat_list->parsed()) {
        write(g, out, catalog_list(fmt("text")));
        return kPass;
      }
      if (cat_pdes->parsed()) {
        write(g, out, registry_json() + "\n");
        return kPass;
      }
      const CheckResult r = catalog_check(family, samples, g, fmt("text"));
      write(g, out, r.text);
      return r.code;
    }
    if (solve_cmd->parsed()) {
      write(g, out, solve(pde, raw, solve_params.given(), g, as_json ? "json" : fmt("text")));
      return kPass;
    }
    if (verify_cmd->parsed()) {
      SolutionOptions so;
      so.unchecked = unchecked;
      so.use_printed = printed;
      const TravelingWaveSolution s = build_solution(vpde, solution, verify_params.given(), so);
      PdeOptions po;
      po.grid = grid.apply(po.grid);
      if (g.tol) po.tol = *g.tol;
      const ResidualReport r = verify_pde(s, po);
      const std::string f = fmt("json");
      write(g, out, f == "json" ? to_json(r) + "\n" : f == "csv" ? report_csv(r) : report_text(r));
      return verdict_code(r.verdict);
    }
    if (eval_cmd->parsed()) {
      const Range rg = parse_range(range);
      Table t;
      if (!efamily.empty())
        t = eval_family(efamily, eval_params.given(), rg, skip_poles, g);
      else if (!esolution.empty())
        t = eval_solution(epde, esolution, eval_params.given(), rg, time, skip_poles, eunchecked);
      else
        throw Abort{kUsage, "eval needs --family or --pde with --solution"};
      write(g, out, table_out(t, fmt("csv")));
      return kPass;
    }
    const CheckResult r = errata(evidence, g, fmt("text"));
    write(g, out, r.text);
    return r.code;
  } catch (const Abort& a) {
    err << "error: " << a.message << "\n";
    return a.code;
  } catch (const UnknownIdError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConditionError& e) {
    err << "error: " << e.what() << "\n";
    return kCondition;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << " (requires " << e.condition() << ")\n";
    return kCondition;
  } catch (const InvalidGridError& e) {
    err << "error: " << e.what() << "\n";
    return kDegenerateGrid;
  }
}

}  // namespace ellipsolve::cli
