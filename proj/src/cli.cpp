#include "groupoidal/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "groupoidal/io.hpp"
#include "groupoidal/kernels.hpp"
#include "groupoidal/tannaka.hpp"

namespace groupoidal::cli {

namespace {

using io::Json;
namespace fs = std::filesystem;

constexpr std::size_t kMaxWitnesses = 100;

struct Options {
  std::string command;
  std::string builtin;
  std::string groupoid;
  std::string group;
  std::vector<std::string> functions;
  std::string weights;
  std::string kernel;
  std::string measure;
  std::string modular;
  std::vector<std::string> reps;
  std::string object;
  std::string omega;
  std::string u;
  std::string v;
  std::string out_dir;
  std::string name;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::size_t samples = 100;
  bool alt_reading = false;
  bool pretty = false;
};

/// Input problems that are not tied to a specific library exception.
class UsageError : public Error {
 public:
  using Error::Error;
};

class Context {
 public:
  explicit Context(Options o) : opts(std::move(o)) {
    tol = opts.tol.value_or(kDefaultTolerance.eq);
    if (!opts.builtin.empty()) {
      base = io::builtin(opts.builtin);
      base_ref = opts.builtin;
    } else if (!opts.groupoid.empty()) {
      base = io::load_groupoid(opts.groupoid);
      base_ref = opts.groupoid;
    } else if (!opts.group.empty()) {
      base_ref = "group:" + opts.group;
      base = io::builtin(base_ref);
    }
  }

  const GroupoidPtr& need_base() {
    if (!base) throw UsageError("no groupoid given: use --builtin, --groupoid or --group");
    return base;
  }

  /// Loads a data file and pins the groupoid in use to the one it names.
  Json load(const std::string& path, const char* flag) {
    if (path.empty()) throw UsageError(std::string("missing ") + flag);
    auto doc = io::load_json(path);
    auto g = io::resolve_groupoid(doc, path, base);
    if (!base) {
      base = g;
      const auto it = doc.find("groupoid");
      base_ref = it != doc.end() && it->is_string() ? it->get<std::string>() : path;
    }
    return doc;
  }

  GFunction function(const std::string& path) { return io::function_from_json(load(path, "--function"), base, path); }
  GKernel kernel() { return io::kernel_from_json(load(opts.kernel, "--kernel"), base, opts.kernel); }
  ObjectMeasure measure() { return io::measure_from_json(load(opts.measure, "--measure"), base, opts.measure); }
  ModularFunction modular() { return io::modular_from_json(load(opts.modular, "--modular"), base, opts.modular); }
  Representation rep(const std::string& path) { return io::representation_from_json(load(path, "--rep"), base, path); }
  Representation single_rep() {
    if (opts.reps.size() != 1) throw UsageError("exactly one --rep is required");
    return rep(opts.reps.front());
  }

  ObjectIndex object(const std::string& id, const char* flag) {
    if (id.empty()) throw UsageError(std::string("missing ") + flag);
    return need_base()->object_index(id);
  }

  Json report(const std::string& check) const {
    Json r;
    r["check"] = check;
    r["groupoid"] = base_ref.empty() ? Json(nullptr) : Json(base_ref);
    r["seed"] = opts.seed;
    r["tolerance"] = tol;
    r["witnesses"] = Json::array();
    r["max_residual"] = 0.0;
    r["status"] = "pass";
    return r;
  }

  Options opts;
  GroupoidPtr base;
  std::string base_ref;
  double tol = kDefaultTolerance.eq;
};

const std::string& mid(const FiniteGroupoid& g, MorphismIndex m) { return g.morphism_id(m); }

void set_status(Json& r, bool pass) { r["status"] = pass ? "pass" : "fail"; }

void push_witness(Json& r, Json w) {
  auto& list = r["witnesses"];
  if (list.size() < kMaxWitnesses) list.push_back(std::move(w));
  r["witness_count"] = r.value("witness_count", 0) + 1;
}

Json vector_json(const std::vector<Complex>& values, const FiniteGroupoid& g) {
  Json out = Json::object();
  for (ObjectIndex a = 0; a < values.size(); ++a) out[g.object_id(a)] = io::to_json(values[a]);
  return out;
}

Vector parse_vector_option(const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string("missing ") + flag);
  return io::vector_from_json(io::parse_json(text, flag), flag);
}

std::string file_stem_for(const std::string& name) {
  std::string s = name;
  for (auto& c : s) {
    if (c == ':' || c == ',' || c == '/') c = '_';
  }
  return s;
}

FamilyPtr family_for(Context& ctx) {
  const auto& base = ctx.need_base();
  if (ctx.opts.reps.empty()) return separating_family(base, ctx.opts.seed);
  std::vector<Representation> gens;
  for (const auto& path : ctx.opts.reps) gens.push_back(ctx.rep(path));
  return RepFamily::generate(ctx.base, gens);
}

// Commands. Each fills the report and returns whether the check passed; a
// thrown exception becomes an input-error report.

bool cmd_validate(Context& ctx, Json& r) {
  const auto& g = *ctx.need_base();
  const auto report = validate(g);
  for (const auto& v : report.violations) push_witness(r, {{"axiom", v.axiom}, {"witness", v.witness}, {"detail", v.detail}});
  r["objects"] = g.object_count();
  r["morphisms"] = g.morphism_count();
  Json units = Json::object();
  for (ObjectIndex a = 0; a < g.object_count(); ++a) units[g.object_id(a)] = g.morphism_id(g.unit(a));
  r["units"] = units;
  r["violations"] = report.violations.size();
  return report.ok();
}

bool cmd_convolve(Context& ctx, Json& r) {
  if (ctx.opts.functions.size() != 2) throw UsageError("convolve needs --function twice");
  const auto f = ctx.function(ctx.opts.functions[0]);
  const auto h = ctx.function(ctx.opts.functions[1]);
  if (!ctx.opts.kernel.empty()) {
    r["result"] = io::to_json(convolve_haar(f, h, ctx.kernel()), ctx.base_ref);
    r["product"] = "haar";
  } else {
    r["result"] = io::to_json(convolve(f, h), ctx.base_ref);
    r["product"] = "plain";
  }
  return true;
}

bool cmd_adjoint(Context& ctx, Json& r) {
  if (ctx.opts.functions.size() != 1) throw UsageError("adjoint needs exactly one --function");
  r["result"] = io::to_json(adjoint(ctx.function(ctx.opts.functions[0])), ctx.base_ref);
  return true;
}

bool cmd_density(Context& ctx, Json& r) {
  if (ctx.opts.functions.size() != 1) throw UsageError("density needs exactly one --function");
  if (ctx.opts.weights.empty()) throw UsageError("missing --weights");
  const auto w = io::function_from_json(ctx.load(ctx.opts.weights, "--weights"), ctx.base, ctx.opts.weights);
  const DensityWeights rho(w, ctx.tol);
  r["value"] = io::to_json(apply_density(rho, ctx.function(ctx.opts.functions[0])));
  Json lint = Json::array();
  for (auto m : rho.positivity_lint(ctx.tol)) lint.push_back(mid(*ctx.base, m));
  r["positivity_lint"] = lint;
  return true;
}

bool cmd_kernel_apply(Context& ctx, Json& r) {
  if (ctx.opts.functions.size() != 1) throw UsageError("kernel-apply needs exactly one --function");
  const auto lambda = ctx.kernel();
  r["result"] = vector_json(apply_kernel(lambda, ctx.function(ctx.opts.functions[0])), *ctx.base);
  return true;
}

bool cmd_check_transverse(Context& ctx, Json& r) {
  const auto lambda = ctx.kernel();
  const auto& g = *ctx.base;
  const auto report = check_transverse(lambda, ctx.tol);
  for (const auto& v : report.violations) {
    push_witness(r, {{"alpha", mid(g, v.alpha)}, {"basis", mid(g, v.gamma)}, {"lhs", v.lhs}, {"rhs", v.rhs}});
  }
  r["max_residual"] = report.max_residual;
  r["transverse"] = report.transverse();
  r["faithful"] = check_faithful(lambda);
  r["full_support"] = lambda.full_support();
  return report.transverse();
}

bool cmd_check_modular(Context& ctx, Json& r) {
  const auto delta = ctx.modular();
  const auto& g = *ctx.base;
  const auto report = check_modular(delta, ctx.tol);
  for (auto m : report.nonpositive) push_witness(r, {{"nonpositive", mid(g, m)}});
  for (const auto& v : report.violations) {
    push_witness(r, {{"alpha", mid(g, v.alpha)}, {"beta", mid(g, v.beta)}, {"lhs", v.lhs}, {"rhs", v.rhs}});
  }
  r["max_residual"] = report.max_residual;
  return report.valid();
}

bool cmd_check_quasi_invariant(Context& ctx, Json& r) {
  const auto lambda = ctx.kernel();
  const auto m = ctx.measure();
  const auto delta = ctx.modular();
  const auto reading = ctx.opts.alt_reading ? InverseCoefficient::InverseRange : InverseCoefficient::Literal;
  r["reading"] = ctx.opts.alt_reading ? "inverse-range" : "literal";
  const auto& g = *ctx.base;
  if (!ctx.opts.functions.empty()) {
    if (ctx.opts.functions.size() != 1) throw UsageError("check-quasi-invariant takes at most one --function");
    const auto sides = quasi_invariant_sides(m, lambda, delta, ctx.function(ctx.opts.functions[0]), reading);
    r["lhs"] = io::to_json(sides.lhs);
    r["rhs"] = io::to_json(sides.rhs);
    r["max_residual"] = std::abs(sides.residual());
    return std::abs(sides.residual()) <= ctx.tol;
  }
  const auto report = is_quasi_invariant(m, lambda, delta, reading, ctx.tol);
  for (const auto& [gamma, res] : report.violations) push_witness(r, {{"basis", mid(g, gamma)}, {"residual", io::to_json(res)}});
  r["max_residual"] = report.max_residual;
  return report.quasi_invariant();
}

bool cmd_rep_check(Context& ctx, Json& r) {
  const auto rep = ctx.single_rep();
  const auto functor = check_representation(rep, ctx.tol);
  const auto unitary = check_unitary(rep, ctx.tol);
  for (const auto* report : {&functor, &unitary}) {
    for (const auto& v : report->violations) push_witness(r, {{"kind", v.kind}, {"witness", v.witness}, {"residual", v.residual}});
  }
  r["functor"] = functor.ok();
  r["unitary"] = unitary.ok();
  r["max_residual"] = std::max(functor.max_residual, unitary.max_residual);
  return functor.ok() && unitary.ok();
}

bool cmd_rep_decompose(Context& ctx, Json& r) {
  const auto rep = ctx.single_rep();
  const auto d = decompose(rep, ctx.opts.seed, {ctx.tol, kDefaultTolerance.cluster});
  const auto& g = *ctx.base;
  Json pieces = Json::array();
  bool pieces_ok = true;
  Eigen::Index total = 0;
  Representation sum = d.pieces.front().rep;
  for (std::size_t i = 0; i < d.pieces.size(); ++i) {
    const auto& p = d.pieces[i];
    if (i > 0) sum = direct_sum(sum, p.rep);
    Json dims = Json::object();
    for (ObjectIndex a = 0; a < g.object_count(); ++a) {
      dims[g.object_id(a)] = p.rep.dim(a);
      total += p.rep.dim(a);
    }
    const auto commutant = commutant_dimension(p.rep, ctx.tol);
    const bool unitary = check_unitary(p.rep, ctx.tol).ok();
    pieces_ok = pieces_ok && commutant == 1 && unitary;
    pieces.push_back({{"dims", dims}, {"commutant_dimension", commutant}, {"unitary", unitary}});
  }
  Eigen::Index original = 0;
  for (auto x : rep.dims()) original += x;
  const double reassembly = [&] {
    double worst = 0.0;
    const auto back = reassemble(rep, d);
    for (MorphismIndex m = 0; m < g.morphism_count(); ++m) worst = std::max(worst, max_abs(back(m) - rep(m)));
    return worst;
  }();
  const auto equivalence = are_equivalent(sum, rep, ctx.opts.seed, ctx.tol);
  r["pieces"] = pieces;
  r["dimension_accounting"] = total == original;
  r["stability_residual"] = d.stability_residual;
  r["reassembly_residual"] = reassembly;
  r["equivalence"] = equivalence.verdict == Equivalence::Equivalent     ? "equivalent"
                     : equivalence.verdict == Equivalence::Inequivalent ? "inequivalent"
                                                                        : "undecided";
  r["max_residual"] = std::max({d.stability_residual, d.orthonormality_residual, reassembly});
  if (equivalence.verdict == Equivalence::Undecided) {
    r["status"] = "undecided";
    return false;
  }
  return pieces_ok && total == original && equivalence.verdict == Equivalence::Equivalent &&
         r["max_residual"].get<double>() <= ctx.tol;
}

bool cmd_rep_split(Context& ctx, Json& r) {
  const auto rep = ctx.single_rep();
  const auto& g = *ctx.base;
  const auto anchor = ctx.opts.object.empty() ? ObjectIndex{0} : ctx.object(ctx.opts.object, "--object");
  const auto section = section_omega(g, anchor);
  const auto pair = split_H(rep, section);
  const auto back = rebuild_H(ctx.base, pair, section);
  const auto again = split_H(back, section);
  double rebuild = 0.0;
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) rebuild = std::max(rebuild, max_abs(back(m) - rep(m)));
  double resplit = 0.0;
  for (std::size_t i = 0; i < pair.lambda.mats().size(); ++i) {
    resplit = std::max(resplit, max_abs(again.lambda.mats()[i] - pair.lambda.mats()[i]));
  }
  for (ObjectIndex a = 0; a < g.object_count(); ++a) resplit = std::max(resplit, max_abs(again.mu[a] - pair.mu[a]));

  Json omega = Json::object();
  Json mu = Json::object();
  for (ObjectIndex a = 0; a < g.object_count(); ++a) {
    omega[g.object_id(a)] = mid(g, section.omega[a]);
    mu[g.object_id(a)] = io::to_json(pair.mu[a]);
  }
  r["base_object"] = g.object_id(anchor);
  r["section"] = omega;
  r["lambda"] = io::to_json(pair.lambda, ctx.base_ref + "@" + g.object_id(anchor));
  r["mu"] = mu;
  r["rebuild_residual"] = rebuild;
  r["resplit_residual"] = resplit;
  r["max_residual"] = std::max(rebuild, resplit);
  return std::max(rebuild, resplit) <= ctx.tol;
}

bool cmd_rep_extend(Context& ctx, Json& r) {
  const auto& base = ctx.need_base();
  const auto& g = *base;
  const auto x = ctx.object(ctx.opts.object, "--object");
  if (ctx.opts.omega.empty()) throw UsageError("missing --omega");
  const auto w = g.morphism_index(ctx.opts.omega);
  if (ctx.opts.reps.size() != 1) throw UsageError("exactly one --rep is required");
  const auto iso = isotropy_group(g, x);
  const auto& path = ctx.opts.reps.front();
  const auto doc = io::load_json(path);
  io::resolve_groupoid(doc, path, iso);
  const auto lambda_x = io::representation_from_json(doc, iso, path);
  const auto section = section_omega(g, g.rng(w));
  const auto extended = extend_from_isotropy(base, lambda_x, x, w, section);
  const auto restricted = restrict_to_isotropy(extended, x);
  double residual = 0.0;
  for (std::size_t i = 0; i < restricted.mats().size(); ++i) residual = std::max(residual, max_abs(restricted.mats()[i] - lambda_x.mats()[i]));
  const auto functor = check_representation(extended, ctx.tol);
  const auto unitary = check_unitary(extended, ctx.tol);
  r["representation"] = io::to_json(extended, ctx.base_ref);
  r["restriction_residual"] = residual;
  r["functor"] = functor.ok();
  r["unitary"] = unitary.ok();
  r["max_residual"] = std::max({residual, functor.max_residual, unitary.max_residual});
  return residual <= ctx.tol && functor.ok() && unitary.ok();
}

bool cmd_coeff(Context& ctx, Json& r) {
  const auto rep = ctx.single_rep();
  const auto f = matrix_coefficient(rep, parse_vector_option(ctx.opts.u, "--u"), parse_vector_option(ctx.opts.v, "--v"));
  r["result"] = io::to_json(f, ctx.base_ref);
  return true;
}

bool cmd_mean(Context& ctx, Json& r) {
  if (ctx.opts.functions.size() != 1) throw UsageError("mean needs exactly one --function");
  const auto f = ctx.function(ctx.opts.functions[0]);
  const auto m = mean_value(f);
  r["value"] = io::to_json(m);
  r["sup_norm"] = f.sup_norm();
  return std::abs(m) <= f.sup_norm() + ctx.tol;
}

bool cmd_mv_lemma(Context& ctx, Json& r) {
  const auto rep = ctx.single_rep();
  const auto report = check_mv_lemma(rep, ctx.opts.seed, ctx.opts.samples, ctx.tol);
  r["irreducible"] = report.irreducible;
  r["trivial"] = report.trivial;
  r["samples"] = report.samples;
  r["max_residual"] = report.max_residual;
  if (!report.irreducible) push_witness(r, {{"reason", "representation is not irreducible"}});
  return report.irreducible && report.max_residual <= ctx.tol;
}

bool cmd_dec_lemma(Context& ctx, Json& r) {
  const auto rep = ctx.single_rep();
  if (!ctx.opts.u.empty() || !ctx.opts.v.empty()) {
    const double res = dec_lemma_residual(rep, parse_vector_option(ctx.opts.u, "--u"), parse_vector_option(ctx.opts.v, "--v"));
    r["samples"] = 1;
    r["max_residual"] = res;
    return res <= ctx.tol;
  }
  const auto report = check_dec_lemma(rep, ctx.opts.seed, ctx.opts.samples);
  r["samples"] = report.samples;
  r["max_residual"] = report.max_residual;
  return report.max_residual <= ctx.tol;
}

bool cmd_separation(Context& ctx, Json& r) {
  const auto family = family_for(ctx);
  const auto report = separation_check(*family, ctx.tol);
  const auto& g = *ctx.base;
  for (const auto& [a, b] : report.unseparated) push_witness(r, {{"pair", {mid(g, a), mid(g, b)}}});
  r["family"] = family->labels();
  r["pairs"] = report.pairs;
  r["separated_by_endpoints"] = report.separated_by_endpoints;
  r["separated_by_coefficients"] = report.separated_by_coefficients;
  return report.separates();
}

bool cmd_phi_check(Context& ctx, Json& r) {
  const auto family = family_for(ctx);
  const auto report = phi_check(family, ctx.tol);
  const auto& g = *ctx.base;
  for (const auto& [a, b] : report.collisions) push_witness(r, {{"collision", {mid(g, a), mid(g, b)}}});
  for (const auto& [a, b] : report.composability_mismatches) push_witness(r, {{"composability", {mid(g, a), mid(g, b)}}});
  r["family"] = family->labels();
  r["pairs_checked"] = report.pairs_checked;
  r["composable_pairs"] = report.composable_pairs;
  r["injective"] = report.injective();
  r["homomorphism_residual"] = report.homomorphism_residual;
  r["unit_residual"] = report.unit_residual;
  r["inverse_residual"] = report.inverse_residual;
  r["ideal_residual"] = report.ideal_residual;
  r["max_residual"] = std::max({report.homomorphism_residual, report.unit_residual, report.inverse_residual, report.ideal_residual});
  r["scope"] = "injectivity, homomorphism, units, inverses and ideal condition; surjectivity is decided only for abelian groups (abelian-duality)";
  return report.ok(ctx.tol);
}

bool cmd_abelian_duality(Context& ctx, Json& r) {
  const auto report = abelian_tannaka_surjectivity(ctx.need_base(), ctx.tol);
  r["group_order"] = report.group_order;
  r["characters"] = report.characters;
  r["assignments"] = report.assignments;
  r["matched"] = report.matched;
  r["elements_hit"] = report.elements_hit;
  return report.ok();
}

bool cmd_builtin(Context& ctx, Json& r) {
  if (ctx.opts.name.empty()) throw UsageError("builtin needs a name");
  const auto g = io::builtin(ctx.opts.name);
  r["groupoid"] = ctx.opts.name;
  r["objects"] = g->object_count();
  r["morphisms"] = g->morphism_count();
  const auto report = validate(*g);
  if (ctx.opts.out_dir.empty()) {
    r["presentation"] = io::to_json(g->presentation());
    return report.ok();
  }
  fs::create_directories(ctx.opts.out_dir);
  Json files = Json::array();
  const auto path = fs::path(ctx.opts.out_dir) / (file_stem_for(ctx.opts.name) + ".json");
  std::ofstream(path) << io::serialize_groupoid(*g);
  files.push_back(path.string());
  if (ctx.opts.name == "quantum-ratchet") {
    const auto inv_path = fs::path(ctx.opts.out_dir) / "quantum-ratchet.inverse.json";
    Json inv = Json::object();
    for (MorphismIndex m = 0; m < g->morphism_count(); ++m) inv[mid(*g, m)] = mid(*g, g->inv(m));
    std::ofstream(inv_path) << Json{{"inv", inv}}.dump(2) << "\n";
    files.push_back(inv_path.string());
  }
  r["files"] = files;
  return report.ok();
}

const std::map<std::string, std::pair<const char*, std::function<bool(Context&, Json&)>>>& commands() {
  static const std::map<std::string, std::pair<const char*, std::function<bool(Context&, Json&)>>> table{
      {"validate", {"check the groupoid axioms", cmd_validate}},
      {"convolve", {"f * g (or the Haar product with --kernel)", cmd_convolve}},
      {"adjoint", {"f*", cmd_adjoint}},
      {"density", {"apply a density operator given by --weights", cmd_density}},
      {"kernel-apply", {"evaluate a kernel on a function", cmd_kernel_apply}},
      {"check-transverse", {"transversality of a kernel", cmd_check_transverse}},
      {"check-modular", {"cocycle identity of a modular function", cmd_check_modular}},
      {"check-quasi-invariant", {"quasi-invariance of a measure", cmd_check_quasi_invariant}},
      {"rep-check", {"functoriality and unitarity", cmd_rep_check}},
      {"rep-decompose", {"split into irreducible pieces", cmd_rep_decompose}},
      {"rep-split", {"representation -> (lambda, mu) and back", cmd_rep_split}},
      {"rep-extend", {"extend an isotropy representation", cmd_rep_extend}},
      {"coeff", {"matrix coefficient for --u, --v", cmd_coeff}},
      {"mean", {"mean value over a finite group", cmd_mean}},
      {"mv-lemma", {"mean of coefficients of an irreducible", cmd_mv_lemma}},
      {"dec-lemma", {"mean of coefficients vs fixed-space projection", cmd_dec_lemma}},
      {"separation", {"does the family separate morphisms", cmd_separation}},
      {"phi-check", {"reconstruction map checks", cmd_phi_check}},
      {"abelian-duality", {"surjectivity for abelian groups", cmd_abelian_duality}},
      {"builtin", {"emit a builtin groupoid", cmd_builtin}},
  };
  return table;
}

const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const io::GroupoidMismatch*>(&e)) return "groupoid-mismatch";
  if (dynamic_cast<const io::ParseError*>(&e)) return "parse";
  if (dynamic_cast<const StructuralError*>(&e)) return "structure";
  if (dynamic_cast<const UnknownId*>(&e)) return "unknown-id";
  if (dynamic_cast<const NotConnected*>(&e)) return "not-connected";
  if (dynamic_cast<const NotComposable*>(&e)) return "not-composable";
  if (dynamic_cast<const BaseMismatch*>(&e)) return "base-mismatch";
  if (dynamic_cast<const ShapeMismatch*>(&e)) return "shape";
  if (dynamic_cast<const UsageError*>(&e)) return "usage";
  return "input";
}

void render_pretty(const Json& r, std::ostream& err) {
  std::size_t width = 0;
  for (const auto& [k, v] : r.items()) width = std::max(width, k.size());
  for (const auto& [k, v] : r.items()) {
    if (k == "witnesses") continue;
    auto text = v.is_string() ? v.get<std::string>() : v.dump();
    if (text.size() > 100) text = text.substr(0, 97) + "...";
    err << std::left << std::setw(static_cast<int>(width) + 2) << k << text << "\n";
  }
  const auto it = r.find("witnesses");
  if (it != r.end() && !it->empty()) {
    err << "witnesses:\n";
    for (const auto& w : *it) err << "  " << w.dump() << "\n";
  }
}

Json error_report(const std::string& command, const Options& opts, const std::exception& e) {
  return {{"check", command}, {"status", "error"}, {"error", e.what()}, {"error_kind", error_kind(e)},
          {"seed", opts.seed}, {"witnesses", Json::array()}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"Finite groupoid algebras, kernels and representations"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--builtin", opts.builtin, "builtin groupoid name");
  app.add_option("--groupoid", opts.groupoid, "groupoid presentation file");
  app.add_option("--group", opts.group, "named finite group (Z3, Z2xZ2, S3, D4, ...)");
  app.add_option("--function", opts.functions, "function file (repeatable)");
  app.add_option("--weights", opts.weights, "density weights (function file format)");
  app.add_option("--kernel", opts.kernel, "kernel file");
  app.add_option("--measure", opts.measure, "measure file");
  app.add_option("--modular", opts.modular, "modular function file");
  app.add_option("--rep", opts.reps, "representation file (repeatable)");
  app.add_option("--object", opts.object, "object id");
  app.add_option("--omega", opts.omega, "morphism id of the transport ω");
  app.add_option("--u", opts.u, "vector u as JSON");
  app.add_option("--v", opts.v, "vector v as JSON");
  app.add_option("--samples", opts.samples, "random samples for lemma checks");
  app.add_option("--seed", opts.seed, "random seed (GROUPOIDAL_SEED overrides)");
  app.add_option("--tol", opts.tol, "equality tolerance");
  app.add_option("--out", opts.out_dir, "output directory for builtin");
  app.add_flag("--alt-reading", opts.alt_reading, "inverse-range reading of the quasi-invariance sum");
  app.add_flag("--pretty", opts.pretty, "also print a table on stderr");
  for (const auto& [name, entry] : commands()) {
    auto* sub = app.add_subcommand(name, entry.first);
    sub->fallthrough();
    sub->callback([&opts, name = name] { opts.command = name; });
    if (name == "builtin") sub->add_option("name", opts.name, "builtin name");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    out << error_report(opts.command, opts, UsageError(e.what())).dump(2) << "\n";
    return kExitInputError;
  }

  if (const char* env = std::getenv("GROUPOIDAL_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      opts.seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      out << error_report(opts.command, opts, UsageError("GROUPOIDAL_SEED is not an unsigned integer")).dump(2) << "\n";
      return kExitInputError;
    }
  }

  Json report;
  int code = kExitPass;
  try {
    Context ctx(opts);
    report = ctx.report(opts.command);
    const bool pass = commands().at(opts.command).second(ctx, report);
    if (!report.contains("witness_count")) report["witness_count"] = report["witnesses"].size();
    if (report["groupoid"].is_null() && !ctx.base_ref.empty()) report["groupoid"] = ctx.base_ref;
    if (report["status"] != "undecided") set_status(report, pass);
    code = pass ? kExitPass : kExitFail;
  } catch (const std::exception& e) {
    report = error_report(opts.command, opts, e);
    code = kExitInputError;
  }
  out << report.dump(2) << "\n";
  if (opts.pretty) render_pretty(report, err);
  return code;
}

}  // namespace groupoidal::cli
