// Certification of the printed catalog and adjudication of failures.
//
// A printed family that fails is corrected by the first single-node edit of
// its form (pre-order) that validates, and failing that by the first
// single-coefficient sign restriction of its region that separates passing
// from failing draws. Either way the printed residual must exceed
// kErrataPrintedMin and the corrected one stay below kErrataCorrectedMax.

#include <algorithm>
#include <optional>

#include "catalog_internal.hpp"
#include "ellipsolve/catalog.hpp"
#include "ellipsolve/errors.hpp"
#include "json.hpp"
#include "parallel.hpp"

namespace ellipsolve {

namespace {

struct Outcome {
  SolutionFamily family;
  std::optional<ErrataEntry> entry;
  FamilyCertification cert;
  bool unresolved = false;
};

std::string join_texts(const std::vector<Constraint>& cs) {
  std::string out;
  for (const auto& c : cs) {
    if (!out.empty()) out += ", ";
    out += c.text;
  }
  return out;
}

std::optional<ErrataEntry> try_form_edits(SolutionFamily& f, const std::vector<Bindings>& draws,
                                          double printed) {
  if (printed <= kErrataPrintedMin) return std::nullopt;
  for (const Mutation& mut : single_node_mutations(f.printed_form)) {
    const double r = detail::sweep_residual(mut.result, draws, f.uses_eps);
    if (r > kErrataCorrectedMax) continue;
    ErrataEntry e;
    e.family_id = f.id;
    e.kind = ErrataKind::form;
    e.printed = f.printed_form.str();
    e.corrected = mut.result.str();
    e.change = mut.description;
    e.printed_residual = printed;
    e.corrected_residual = r;
    e.samples = static_cast<int>(draws.size());
    f.form = mut.result;
    return e;
  }
  return std::nullopt;
}

std::optional<ErrataEntry> try_restrictions(SolutionFamily& f, std::uint64_t seed, int draws,
                                            double& corrected_out) {
  const Symbol coeffs[] = {Symbol::c0, Symbol::c1, Symbol::c2, Symbol::c3, Symbol::c4};
  for (int i = 0; i < 5; ++i) {
    for (int s : {1, -1}) {
      const std::string name = "c" + std::to_string(i);
      const Expr ci = Expr::symbol(coeffs[i]);
      const Constraint restriction =
          s > 0 ? positive(ci, name + " > 0") : negative(ci, name + " < 0");
      Rng rng(seed ^ fnv1a(f.id + "/restrict"));
      std::vector<Bindings> kept, dropped;
      const std::size_t want = static_cast<std::size_t>(draws);
      for (int attempt = 0; attempt < draws * 400 && (kept.size() < want || dropped.size() < want);
           ++attempt) {
        Bindings b = f.sample(rng);
        auto& bucket = restriction.holds(b) ? kept : dropped;
        if (bucket.size() < want) bucket.push_back(b);
      }
      if (kept.size() < want || dropped.empty()) continue;
      const double corrected = detail::sweep_residual(f.form, kept, f.uses_eps);
      if (corrected > kErrataCorrectedMax) continue;
      const double excluded = detail::sweep_residual(f.form, dropped, f.uses_eps);
      if (excluded <= kErrataPrintedMin) continue;
      ErrataEntry e;
      e.family_id = f.id;
      e.kind = ErrataKind::constraint;
      e.printed = join_texts(f.printed_constraints);
      e.corrected = e.printed + ", " + restriction.text;
      e.change = "restrict to " + restriction.text;
      e.printed_residual = excluded;
      e.corrected_residual = corrected;
      e.samples = static_cast<int>(kept.size());
      e.note = "printed residual measured on " + std::to_string(dropped.size()) +
               " draws outside the restriction";
      f.constraints.push_back(restriction);
      corrected_out = corrected;
      return e;
    }
  }
  return std::nullopt;
}

Outcome certify(SolutionFamily f, std::uint64_t seed, int draws) {
  Outcome out;
  Rng rng(seed ^ fnv1a(f.id));
  std::vector<Bindings> sample;
  sample.reserve(static_cast<std::size_t>(draws));
  for (int k = 0; k < draws; ++k) sample.push_back(f.sample(rng));

  const double printed = detail::sweep_residual(f.printed_form, sample, f.uses_eps);
  out.cert.id = f.id;
  out.cert.draws = draws;
  out.cert.printed_residual = printed;
  out.cert.residual = printed;
  if (printed <= kNumericOdeTol) {
    out.cert.pass = true;
  } else if (auto e = try_form_edits(f, sample, printed)) {
    out.cert.residual = e->corrected_residual;
    out.cert.pass = true;
    out.entry = std::move(e);
  } else {
    double corrected = printed;
    if (auto r = try_restrictions(f, seed, draws, corrected)) {
      out.cert.residual = corrected;
      out.cert.pass = true;
      out.entry = std::move(r);
    } else {
      out.unresolved = true;
    }
  }
  out.family = std::move(f);
  return out;
}

}  // namespace

Catalog build_printed_catalog() {
  Catalog c;
  for (auto& f : detail::printed_families())
    c.families_.push_back(std::make_shared<const SolutionFamily>(std::move(f)));
  return c;
}

Catalog build_certified_catalog(std::uint64_t seed, int draws) {
  auto families = detail::printed_families();
  std::vector<Outcome> outcomes(families.size());
  detail::parallel_for(families.size(), [&](std::size_t i) {
    outcomes[i] = certify(std::move(families[i]), seed, draws);
  });
  Catalog c;
  for (auto& o : outcomes) {
    if (o.entry) c.errata_.push_back(std::move(*o.entry));
    if (o.unresolved) c.unresolved_.push_back(o.family.id);
    c.cert_.push_back(o.cert);
    c.families_.push_back(std::make_shared<const SolutionFamily>(std::move(o.family)));
  }
  return c;
}

const Catalog& Catalog::printed() {
  static const Catalog instance = build_printed_catalog();
  return instance;
}

const Catalog& Catalog::certified() {
  static const Catalog instance = build_certified_catalog(kDefaultSeed, kCertificationDraws);
  return instance;
}

std::vector<ErrataEntry> errata_ledger() {
  const Catalog& c = Catalog::certified();
  if (!c.unresolved().empty()) {
    std::string list;
    for (const auto& id : c.unresolved()) list += (list.empty() ? "" : ", ") + id;
    throw UnresolvedErrataError("no printed or single-edit form validates for: " + list,
                                c.unresolved());
  }
  return c.errata();
}

std::string errata_json(const std::vector<ErrataEntry>& entries, int indent) {
  using nlohmann::json;
  json arr = json::array();
  for (const auto& e : entries) {
    json j;
    j["family"] = e.family_id;
    j["kind"] = e.kind == ErrataKind::form ? "form" : "constraint";
    j["printed"] = e.printed;
    j["corrected"] = e.corrected;
    j["change"] = e.change;
    j["printed_residual"] = std::isfinite(e.printed_residual) ? json(e.printed_residual) : json("inf");
    j["corrected_residual"] = e.corrected_residual;
    j["samples"] = e.samples;
    if (!e.note.empty()) j["note"] = e.note;
    arr.push_back(j);
  }
  return arr.dump(indent);
}

}  // namespace ellipsolve
