#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "generators.hpp"
#include "groupoidal/cli.hpp"
#include "groupoidal/io.hpp"
#include "groupoidal/tannaka.hpp"
#include "oracles.hpp"

using namespace groupoidal;
using io::Json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  Json report;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, Json::parse(out.str()), err.str()};
}

/// Fresh scratch directory per test case.
struct Scratch {
  fs::path dir;
  Scratch() {
    static int counter = 0;
    dir = fs::temp_directory_path() / ("groupoidal-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }

  std::string write(const std::string& name, const std::string& text) const {
    const auto p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string write(const std::string& name, const Json& j) const { return write(name, j.dump(2)); }
};

Json z3_character_file(int k) {
  Json values = Json::object();
  const auto chars = oracle::dft_characters(3);
  for (int j = 0; j < 3; ++j) values["g" + std::to_string(j)] = {chars[k][j].real(), chars[k][j].imag()};
  return {{"groupoid", "group:Z3"}, {"values", values}};
}

}  // namespace

TEST_CASE("serialization round-trips bit-exactly") {
  for (const auto& name : gen::all_builtins()) {
    CAPTURE(name);
    const auto g = io::builtin(name);
    const auto text = io::serialize_groupoid(*g);
    const auto back = io::parse_groupoid(text);
    CHECK(*back == *g);
    CHECK(io::serialize_groupoid(*back) == text);
  }
}

TEST_CASE("builtin names") {
  CHECK(io::is_builtin_name("pair:4"));
  CHECK(io::is_builtin_name("action:1.2.0,3"));
  CHECK_FALSE(io::is_builtin_name("pear:4"));
  CHECK(io::builtin("action:3cycle,3")->morphism_count() == 9);
  CHECK_THROWS_AS(io::builtin("group:Q8"), InvalidArgument);
  CHECK_THROWS_AS(io::builtin("action:1.2.0,2"), InvalidArgument);
}

TEST_CASE("parse errors carry position or field path") {
  try {
    io::parse_groupoid("{\n  \"objects\": [\"a\",\n  }", "broken.json");
    FAIL("expected ParseError");
  } catch (const io::ParseError& e) {
    const std::string what = e.what();
    CHECK(what.find("broken.json") != std::string::npos);
    CHECK(what.find("3:") != std::string::npos);
  }
  const auto g = build_quantum_ratchet();
  try {
    io::function_from_json(Json{{"values", {{"γ", 1.0}}}}, g, "f.json");
    FAIL("expected ParseError");
  } catch (const io::ParseError& e) {
    CHECK(std::string(e.what()).find("values.γ") != std::string::npos);
  }
  CHECK_THROWS_AS(io::function_from_json(Json{{"values", {{"+", "one"}}}}, g, "f.json"), io::ParseError);
  CHECK_THROWS_AS(io::representation_from_json(Json{{"dims", {{"+", 1}}}, {"mats", Json::object()}}, g, "r.json"),
                  io::ParseError);
}

TEST_CASE("data files round-trip") {
  const auto g = build_quantum_ratchet();
  Rng rng(51);
  const auto f = gen::function(g, rng);
  CHECK(io::function_from_json(io::to_json(f, "quantum-ratchet"), g, "f").approx_equal(f, 0.0));
  const auto rep = induced_regular_representation(g, 0, 2);
  const auto back = io::representation_from_json(io::to_json(rep, "quantum-ratchet"), g, "r");
  for (MorphismIndex m = 0; m < 12; ++m) CHECK(max_abs(back(m) - rep(m)) == 0.0);
}

TEST_CASE("cli: validate and builtin") {
  Scratch s;
  auto r = run({"validate", "--builtin", "quantum-ratchet"});
  CHECK(r.code == cli::kExitPass);
  CHECK(r.report["status"] == "pass");
  CHECK(r.report["witnesses"].empty());
  CHECK(r.report["morphisms"] == 12);
  CHECK(r.report["seed"] == 0);

  for (const auto* name : {"quantum-ratchet", "pair:3", "action:3cycle,3", "group:S3"}) {
    CAPTURE(name);
    r = run({"builtin", name, "--out", s.dir.string()});
    REQUIRE(r.code == cli::kExitPass);
    const auto file = r.report["files"][0].get<std::string>();
    const auto v = run({"validate", "--groupoid", file});
    CHECK(v.code == cli::kExitPass);
    CHECK(*io::load_groupoid(file) == *io::builtin(name));
  }
  CHECK(io::load_groupoid(s.dir / "pair_3.json")->morphism_count() == 9);
  CHECK(io::load_groupoid(s.dir / "action_3cycle_3.json")->morphism_count() == 9);
  const auto inv = io::load_json(s.dir / "quantum-ratchet.inverse.json");
  for (const auto& [id, target] : oracle::ratchet_inverse_table()) CHECK(inv["inv"][id] == target);

  r = run({"builtin", "pair:x"});
  CHECK(r.code == cli::kExitInputError);
  CHECK(r.report["status"] == "error");
}

TEST_CASE("cli: axiom failure names a witness") {
  Scratch s;
  auto p = build_quantum_ratchet()->presentation();
  p.inv["β1"] = "α1";
  const auto file = s.write("mutant.json", io::to_json(p));
  const auto r = run({"validate", "--groupoid", file});
  CHECK(r.code == cli::kExitFail);
  CHECK(r.report["status"] == "fail");
  bool found = false;
  for (const auto& w : r.report["witnesses"]) found |= w["axiom"] == "i" && w["witness"][0] == "β1";
  CHECK(found);
}

TEST_CASE("cli: mean of a character and mismatched groupoids") {
  Scratch s;
  const auto f = s.write("chi1.json", z3_character_file(1));
  auto r = run({"mean", "--group", "Z3", "--function", f});
  CHECK(r.code == cli::kExitPass);
  CHECK(std::abs(io::complex_from_json(r.report["value"], "value")) < 1e-9);

  r = run({"mean", "--group", "Z4", "--function", f});
  CHECK(r.code == cli::kExitInputError);
  CHECK(r.report["error_kind"] == "groupoid-mismatch");

  r = run({"mean", "--function", f});
  CHECK(r.code == cli::kExitPass);
  CHECK(r.report["groupoid"] == "group:Z3");

  const auto bad = s.write("bad.json", std::string("{\"values\": {\"g0\": [1, }"));
  r = run({"mean", "--group", "Z3", "--function", bad});
  CHECK(r.code == cli::kExitInputError);
  CHECK(r.report["error_kind"] == "parse");
}

TEST_CASE("cli: phi-check and the seed override") {
  auto r = run({"phi-check", "--builtin", "quantum-ratchet", "--seed", "7"});
  CHECK(r.code == cli::kExitPass);
  CHECK(r.report["pairs_checked"] == 144);
  CHECK(r.report["composable_pairs"] == 72);
  CHECK(r.report["injective"] == true);
  CHECK(r.report["seed"] == 7);

  ::setenv("GROUPOIDAL_SEED", "12", 1);
  r = run({"separation", "--builtin", "pair:3", "--seed", "7"});
  ::unsetenv("GROUPOIDAL_SEED");
  CHECK(r.report["seed"] == 12);
  CHECK(r.code == cli::kExitPass);

  r = run({"abelian-duality", "--group", "Z4"});
  CHECK(r.code == cli::kExitPass);
  CHECK(r.report["assignments"] == 4);
  r = run({"abelian-duality", "--group", "S3"});
  CHECK(r.code == cli::kExitInputError);
}

TEST_CASE("cli: kernels, measures and modular functions") {
  Scratch s;
  Json coeffs = {{"+", Json::object()}, {"-", Json::object()}};
  const auto g = build_quantum_ratchet();
  for (MorphismIndex m = 0; m < 12; ++m) coeffs[g->object_id(g->rng(m))][g->morphism_id(m)] = 1.0;
  const auto counting = s.write("k.json", Json{{"groupoid", "quantum-ratchet"}, {"coeffs", coeffs}});
  coeffs["+"]["σ+"] = 2.0;
  const auto mutant = s.write("k2.json", Json{{"groupoid", "quantum-ratchet"}, {"coeffs", coeffs}, {"full_support", true}});

  auto r = run({"check-transverse", "--builtin", "quantum-ratchet", "--kernel", counting});
  CHECK(r.code == cli::kExitPass);
  r = run({"check-transverse", "--kernel", mutant});
  CHECK(r.code == cli::kExitFail);
  CHECK(r.report["witness_count"].get<int>() > 0);

  const auto measure = s.write("m.json", Json{{"groupoid", "quantum-ratchet"}, {"weights", {{"+", 1.0}, {"-", 1.0}}}});
  const auto modular = s.write("d.json", Json{{"groupoid", "quantum-ratchet"}, {"potential", {{"+", 0.0}, {"-", 0.0}}}});
  r = run({"check-modular", "--modular", modular});
  CHECK(r.code == cli::kExitPass);
  r = run({"check-quasi-invariant", "--kernel", counting, "--measure", measure, "--modular", modular, "--alt-reading"});
  CHECK(r.code == cli::kExitPass);
  CHECK(r.report["reading"] == "inverse-range");
  r = run({"check-quasi-invariant", "--kernel", counting, "--measure", measure, "--modular", modular});
  CHECK(r.code == cli::kExitFail);

  Rng rng(52);
  const auto f = s.write("f.json", io::to_json(gen::function(g, rng), "quantum-ratchet"));
  r = run({"kernel-apply", "--kernel", counting, "--function", f});
  CHECK(r.code == cli::kExitPass);
  CHECK(r.report["result"].contains("+"));
  r = run({"convolve", "--function", f, "--function", f, "--kernel", counting});
  CHECK(r.report["product"] == "haar");
  r = run({"convolve", "--function", f, "--function", f});
  CHECK(r.report["product"] == "plain");
  r = run({"adjoint", "--function", f});
  CHECK(r.code == cli::kExitPass);

  std::vector<Complex> w(12, 1.0 / 12.0);
  const auto weights = s.write("w.json", io::to_json(GFunction::from_dense(g, w), "quantum-ratchet"));
  r = run({"density", "--weights", weights, "--function", f});
  CHECK(r.code == cli::kExitPass);
}

TEST_CASE("cli: representations") {
  Scratch s;
  const auto g = build_quantum_ratchet();
  const auto rep = induced_regular_representation(g, 0, 3);
  const auto file = s.write("rep.json", io::to_json(rep, "quantum-ratchet"));

  auto r = run({"rep-check", "--rep", file});
  CHECK(r.code == cli::kExitPass);
  r = run({"rep-decompose", "--rep", file, "--seed", "4"});
  CHECK(r.code == cli::kExitPass);
  CHECK(r.report["pieces"].size() == 3);
  CHECK(r.report["equivalence"] == "equivalent");
  r = run({"rep-split", "--rep", file, "--object", "-"});
  CHECK(r.code == cli::kExitPass);
  CHECK(r.report["base_object"] == "-");
  r = run({"coeff", "--rep", file, "--u", "[1, 0, 0]", "--v", "[0, 1, 0]"});
  CHECK(r.code == cli::kExitPass);
  r = run({"coeff", "--rep", file, "--u", "[1, 0]", "--v", "[0, 1, 0]"});
  CHECK(r.code == cli::kExitInputError);
  CHECK(r.report["error_kind"] == "shape");

  const auto iso = isotropy_group(*g, g->object_index("-"));
  const auto lambda = s.write("iso.json", io::to_json(regular_representation(iso), "iso"));
  auto doc = io::load_json(lambda);
  doc["groupoid"] = io::to_json(iso->presentation());
  s.write("iso.json", doc);
  r = run({"rep-extend", "--builtin", "quantum-ratchet", "--rep", lambda, "--object", "-", "--omega", "α1"});
  CHECK(r.code == cli::kExitPass);

  auto mats = rep.mats();
  mats[1] *= Complex{2.0};
  const auto broken = s.write("broken.json", io::to_json(Representation(g, rep.dims(), mats), "quantum-ratchet"));
  r = run({"rep-check", "--rep", broken, "--pretty"});
  CHECK(r.code == cli::kExitFail);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("cli: lemma checks on groups") {
  Scratch s;
  const auto z3 = io::builtin("group:Z3");
  std::vector<Matrix> mats;
  const auto chars = oracle::dft_characters(3);
  for (int j = 0; j < 3; ++j) mats.push_back(Matrix::Constant(1, 1, chars[2][j]));
  const auto chi = s.write("chi.json", io::to_json(Representation(z3, {1}, mats), "group:Z3"));
  auto r = run({"mv-lemma", "--rep", chi, "--samples", "20"});
  CHECK(r.code == cli::kExitPass);
  CHECK(r.report["samples"] == 20);
  const auto reg = s.write("reg.json", io::to_json(regular_representation(z3), "group:Z3"));
  r = run({"mv-lemma", "--rep", reg});
  CHECK(r.code == cli::kExitFail);
  r = run({"dec-lemma", "--rep", reg});
  CHECK(r.code == cli::kExitPass);
  r = run({"dec-lemma", "--rep", reg, "--u", "[1, 2, 3]", "--v", "[[0, 1], 1, 0]"});
  CHECK(r.code == cli::kExitPass);
}

TEST_CASE("cli: usage errors still produce JSON") {
  auto r = run({"no-such-command"});
  CHECK(r.code == cli::kExitInputError);
  CHECK(r.report["status"] == "error");
  r = run({"convolve", "--builtin", "pair:2"});
  CHECK(r.code == cli::kExitInputError);
  CHECK(r.report["error_kind"] == "usage");
  r = run({"validate"});
  CHECK(r.code == cli::kExitInputError);
  r = run({"separation", "--builtin", "action:1.0.2,2"});
  CHECK(r.code == cli::kExitInputError);
  CHECK(r.report["error_kind"] == "not-connected");
}
