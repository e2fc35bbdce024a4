#include "doctest.h"

#include "lie2kit/corpus.hpp"
#include "lie2kit/driver.hpp"

using namespace lie2kit;

namespace {

StructureFile construct(const std::string &recipe, std::vector<StructureFile> in, ConstructOptions o = {}) {
  return run_construct(recipe, in, o);
}

bool passes(const StructureFile &f, const std::string &mode = "") { return run_check(f, nullptr, mode, kDefaultSeed).pass(); }

} // namespace

TEST_CASE("default modes") {
  CHECK(resolve_mode(example("so3_string"), nullptr, "") == "dorfman");
  CHECK(resolve_mode(example("so3_symplectic_pair"), nullptr, "") == "la-pair");
  CHECK(resolve_mode(example("so3_dirac_e3"), nullptr, "") == "la-dirac");
  CHECK(resolve_mode(broken_examples()[0].file, nullptr, "") == "lie-algebroid");
  CHECK_THROWS_AS(resolve_mode(example("so3_string"), nullptr, "courant"), StructuralError);
  for (auto &b : broken_examples())
    CHECK(resolve_mode(b.file, nullptr, "") == b.mode);
}

TEST_CASE("corpus verdicts through the driver") {
  for (auto &name : example_names())
    CHECK_MESSAGE(passes(example(name)), name);
  for (auto &b : broken_examples()) {
    CheckReport r = run_check(b.file, nullptr, b.mode, kDefaultSeed);
    REQUIRE(r.first_failure());
    CHECK(r.first_failure()->label == b.label);
    CHECK(r.first_failure()->witness == b.witness);
  }
}

TEST_CASE("every check mode runs on the so(3) Poisson pair") {
  StructureFile pair = example("so3_poisson_pair"), e3 = example("so3_dirac_e3");
  for (auto &mode : check_modes("lapair"))
    CHECK_MESSAGE(run_check(pair, &e3, mode, kDefaultSeed).pass(), mode);
  CHECK_THROWS_AS(run_check(pair, nullptr, "manin", kDefaultSeed), StructuralError);
}

TEST_CASE("constructions pass their checkers") {
  CHECK(passes(construct("dorfman-from-split", {example("so3_string")})));
  StructureFile split = construct("split-from-dorfman", {example("tm_r1_lie1")});
  CHECK(kind_of(split.value) == "splitlie2");
  CHECK(passes(split));

  StructureFile bx = construct("bicrossproduct", {example("axb_matched")});
  CHECK(std::get<SplitLie2>(bx.value).l3.is_zero());
  CHECK(passes(bx, "homological"));

  StructureFile matched = example("tangent_double_r2_matched");
  ConstructOptions o;
  o.rank_a = 2;
  StructureFile dec = construct("decompose", {construct("bicrossproduct", {matched})}, o);
  CHECK(dec.value == matched.value);
  CHECK_THROWS_AS(construct("decompose", {bx}), StructuralError);

  CHECK(construct("core-courant", {example("so3_symplectic_pair")}).value == example("so3_quadratic").value);
  o = {};
  o.side = "core";
  StructureFile core = construct("core-courant", {example("tangent_double_pair_r1")}, o);
  CHECK(passes(core));
  o.side = "q";
  CHECK_THROWS_AS(construct("core-courant", {example("so3_poisson_pair")}, o), PreconditionError);

  CHECK(passes(construct("adjoint", {example("so3_quadratic")})));
  o = {};
  o.pair = true;
  CHECK(construct("adjoint", {example("standard_courant_r1"), example("standard_r1_metric_connection")}, o).value ==
        example("tangent_double_pair_r1").value);

  o = {};
  o.dim = 1;
  StructureFile std1 = construct("standard", {}, o);
  CHECK(std1.value == example("standard_courant_r1").value);
  CHECK_THROWS_AS(construct("standard", {}), StructuralError);

  StructureFile on_b{"on_b", std::get<MatchedPair2Reps>(matched.value).on_b};
  CHECK(passes(construct("semidirect", {on_b})));
  CHECK(passes(construct("dualize-2rep", {on_b})));

  StructureFile full = example("so3_dirac_full");
  StructureFile manin = construct("manin-pair", {full});
  CHECK(passes(manin));
  StructureFile manin_sep = construct("manin-pair", {example("so3_poisson_pair"), full});
  CHECK(manin_sep.value == manin.value);
  StructureFile u = construct("induced-la", {example("so3_dirac_e3")});
  CHECK(kind_of(u.value) == "liealgebroid");
  CHECK(passes(u));

  CHECK_THROWS_AS(construct("semidirect", {example("so3_string")}), StructuralError);
  CHECK_THROWS_AS(construct("bicrossproduct", {}), StructuralError);
}

TEST_CASE("change of splitting") {
  for (const char *name : {"tangent_double_pair_r1", "semidirect_curved", "euclidean_selfdual_r2"}) {
    StructureFile f = example(name);
    CHECK(dump_structure(construct("change-splitting", {f})) == dump_structure(f));
  }
  PolyTensor phi(1, {2, 2, 1}, {{0, 2}});
  phi.set({0, 1, 0}, Poly::var(1, 0));
  ConstructOptions o;
  o.phi = StructureFile{"phi", SplittingDoc{phi}};
  StructureFile moved = construct("change-splitting", {example("tangent_double_pair_r1")}, o);
  CHECK(passes(moved));
  CHECK_FALSE(moved.value == example("tangent_double_pair_r1").value);
  CHECK(passes(moved, "core"));

  o.phi = StructureFile{"phi", SplittingDoc{PolyTensor(1, {3, 3, 1}, {{0, 2}})}};
  CHECK_THROWS_AS(construct("change-splitting", {example("tangent_double_pair_r1")}, o), StructuralError);
}

TEST_CASE("reports are deterministic and carry their metadata") {
  StructureFile f = example("semidirect_curved");
  ReportMeta meta{"test", "check", "dorfman", "dorfman2rep", digest_hex("x"), 11};
  std::string a = render_json(run_check(f, nullptr, "", 11), meta);
  std::string b = render_json(run_check(f, nullptr, "", 11), meta);
  CHECK(a == b);
  CHECK(a.find("\"seed\": 11") != std::string::npos);
  CHECK(a.find("\"verdict\": \"pass\"") != std::string::npos);

  BrokenExample bad = broken_examples()[0];
  std::string t = render_text(run_check(bad.file, nullptr, "", 11), meta);
  CHECK(t.find("witness  " + bad.witness) != std::string::npos);
  CHECK(t.find("verdict: FAIL (first failure " + bad.label + ")") != std::string::npos);
}
