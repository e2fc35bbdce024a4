// Acceptance run: one PASS/FAIL line per criterion.
// usage: acceptance <lie2kit-cli> <data-dir>
#include "json.hpp"

#include "lie2kit/corpus.hpp"
#include "lie2kit/courant.hpp"
#include "lie2kit/driver.hpp"
#include "lie2kit/matched.hpp"
#include "lie2kit/poisson.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace lie2kit;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void expect(bool ok, const std::string &what) {
    if (!ok) {
      pass = false;
      problems.push_back(what);
    }
  }
};

std::string first_failure(const CheckReport &r) {
  const CheckEntry *f = r.first_failure();
  return f ? f->label + " " + f->witness : "none";
}

// Verdict over the identity entries only; drops the checkers' own biconditional flag.
bool verdict(const CheckReport &r) {
  for (auto &e : r.entries)
    if (!e.pass && e.label != "cross-check")
      return false;
  return true;
}

template <class T> T value_of(const std::string &name) { return std::get<T>(example(name).value); }

const BrokenExample &broken(const std::string &name) {
  static const std::vector<BrokenExample> all = broken_examples();
  for (auto &b : all)
    if (b.name == name)
      return b;
  throw std::out_of_range(name);
}
template <class T> T broken_value(const std::string &name) { return std::get<T>(broken(name).file.value); }

PolyTensor random_phi(int p, int rq, int rb, Rng &rng) {
  PolyTensor phi(p, {rq, rq, rb}, {{0, 2}});
  while (phi.is_zero())
    for (int i = 0; i < rq; ++i)
      for (int j = i + 1; j < rq; ++j)
        for (int l = 0; l < rb; ++l)
          phi.set({i, j, l}, rng.poly(p, 1));
  return phi;
}

PolyMatrix antisym(int p, int n, int i, int j, const Poly &v) {
  PolyMatrix K(p, n, n);
  K(i, j) = v;
  K(j, i) = -v;
  return K;
}

LinearConnection flat(int p, int n) { return LinearConnection::zero(PolyMatrix::identity(p, p), n); }

// ---- criteria ---------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, Dorfman2Rep>> good{
      {"so3_string", dorfman_from_split(value_of<SplitLie2>("so3_string"))},
      {"tm_r1_lie1", value_of<Dorfman2Rep>("tm_r1_lie1")},
      {"standard_dorfman_r1", value_of<Dorfman2Rep>("standard_dorfman_r1")},
      {"adjoint_so3", value_of<Dorfman2Rep>("adjoint_so3")},
      {"adjoint(standard_courant_r2)", adjoint_dorfman2rep(standard_courant(2), flat(2, 4))},
      {"semidirect_flat", value_of<Dorfman2Rep>("semidirect_flat")},
      {"semidirect_curved", value_of<Dorfman2Rep>("semidirect_curved")},
      {"bicrossproduct(axb_matched)", dorfman_from_split(bicrossproduct(value_of<MatchedPair2Reps>("axb_matched")))},
      {"bicrossproduct(tangent_double_r2_matched)",
       dorfman_from_split(bicrossproduct(value_of<MatchedPair2Reps>("tangent_double_r2_matched")))},
      {"tangent_double_pair_r1.D", value_of<LAPair>("tangent_double_pair_r1").D},
  };
  std::vector<std::pair<std::string, Dorfman2Rep>> bad{
      {"open_l3", dorfman_from_split(broken_value<SplitLie2>("open_l3"))},
      {"semidirect_printed_sign", broken_value<Dorfman2Rep>("semidirect_printed_sign")},
      {"semidirect_bad_dB", broken_value<Dorfman2Rep>("semidirect_bad_dB")},
  };
  for (auto &[name, D] : good) {
    bool a = check_dorfman2rep(D).pass(), b = check_homological(D).pass();
    o.expect(a && b, name + ": expected pass/pass, got " + (a ? "pass" : "fail") + "/" + (b ? "pass" : "fail"));
  }
  for (auto &[name, D] : bad) {
    bool a = check_dorfman2rep(D).pass(), b = check_homological(D).pass();
    o.expect(!a && !b, name + ": expected fail/fail, got " + (a ? "pass" : "fail") + "/" + (b ? "pass" : "fail"));
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.expect(secs < 10.0, "runtime " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << good.size() << " valid agree pass/pass, " << bad.size() << " broken agree fail/fail, " << std::fixed;
  d.precision(2);
  d << secs << " s";
  o.detail = d.str();
  return o;
}

Outcome criterion2() {
  Outcome o;
  DegenerateCourant C2 = standard_courant(2);
  std::vector<std::pair<std::string, SelfDual2Rep>> good{
      {"euclidean_selfdual_r1", value_of<SelfDual2Rep>("euclidean_selfdual_r1")},
      {"euclidean_selfdual_r2", value_of<SelfDual2Rep>("euclidean_selfdual_r2")},
      {"so3_symplectic_pair.S", value_of<LAPair>("so3_symplectic_pair").S},
      {"so3_poisson_pair.S", value_of<LAPair>("so3_poisson_pair").S},
      {"tangent_double_pair_r1.S", value_of<LAPair>("tangent_double_pair_r1").S},
      {"adjoint(standard_courant_r2, curved)",
       adjoint_selfdual2rep(C2, metric_connection(C2, {antisym(2, 4, 0, 1, Poly::var(2, 1)),
                                                       antisym(2, 4, 2, 3, Poly::var(2, 0))}))},
  };
  std::vector<std::pair<std::string, SelfDual2Rep>> bad{
      {"euclidean_r2_bad_RB", broken_value<SelfDual2Rep>("euclidean_r2_bad_RB")},
      {"euclidean_r1_asymmetric_dQ", broken_value<SelfDual2Rep>("euclidean_r1_asymmetric_dQ")},
  };
  for (auto &[name, S] : good) {
    bool a = verdict(check_graded_jacobi(S)), b = check_selfdual2rep(S).pass();
    o.expect(a && b, name + ": expected pass/pass");
  }
  for (auto &[name, S] : bad) {
    bool a = verdict(check_graded_jacobi(S)), b = check_selfdual2rep(S).pass();
    o.expect(!a && !b, name + ": expected fail/fail, got " + (a ? "pass" : "fail") + "/" + (b ? "pass" : "fail"));
  }
  o.detail = std::to_string(good.size()) + " valid pass/pass, " + std::to_string(bad.size()) + " broken fail/fail";
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::vector<std::pair<std::string, LAPair>> good{
      {"so3_symplectic_pair", value_of<LAPair>("so3_symplectic_pair")},
      {"tangent_double_pair_r1", value_of<LAPair>("tangent_double_pair_r1")},
      {"so3_poisson_pair", value_of<LAPair>("so3_poisson_pair")},
  };
  std::vector<std::pair<std::string, LAPair>> bad{
      {"so3_pair_bad_dQ", broken_value<LAPair>("so3_pair_bad_dQ")},
      {"tangent_double_r1_mismatched_splitting", broken_value<LAPair>("tangent_double_r1_mismatched_splitting")},
  };
  for (auto &[name, P] : good) {
    bool a = verdict(check_q_preserves_poisson(P)), b = check_la_matched_pair(P).pass();
    o.expect(a && b, name + ": expected pass/pass");
  }
  for (auto &[name, P] : bad) {
    bool a = verdict(check_q_preserves_poisson(P)), b = check_la_matched_pair(P).pass();
    o.expect(!a && !b, name + ": expected fail/fail, got " + (a ? "pass" : "fail") + "/" + (b ? "pass" : "fail"));
  }
  o.detail = std::to_string(good.size()) + " valid pass/pass, " + std::to_string(bad.size()) + " broken fail/fail";
  return o;
}

Outcome criterion4() {
  Outcome o;
  int n = 0, flat_c = 0;
  for (auto &name : example_names()) {
    StructureFile f = example(name);
    auto *M = std::get_if<MatchedPair2Reps>(&f.value);
    if (!M)
      continue;
    ++n;
    SplitLie2 S = bicrossproduct(*M);
    CheckReport h = check_homological(dorfman_from_split(S));
    o.expect(h.pass(), name + ": bicrossproduct fails " + first_failure(h));
    o.expect(decompose_bicrossproduct(S, M->rank_a()) == *M, name + ": decompose(bicrossproduct) differs");
    if (M->rank_c() == 0) {
      ++flat_c;
      o.expect(S.l3.is_zero(), name + ": C = 0 but l3 != 0");
    }
  }
  o.expect(n >= 1 && flat_c >= 1, "corpus lacks matched pairs or a C = 0 case");
  o.detail = std::to_string(n) + " corpus matched pairs, " + std::to_string(flat_c) + " with C = 0 and l3 = 0";
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::vector<std::pair<std::string, LAPair>> pairs;
  for (auto &name : example_names()) {
    StructureFile f = example(name);
    if (auto *P = std::get_if<LAPair>(&f.value))
      pairs.push_back({name, *P});
  }
  DegenerateCourant so3r1 = so3_killing(1);
  pairs.push_back({"tangent_double(so3 over R, curved)",
                   tangent_double_pair(so3r1, metric_connection(so3r1, {antisym(1, 3, 0, 2, Poly::var(1, 0))}))});
  pairs.push_back({"tangent_double(standard_courant_r2)", tangent_double_pair(standard_courant(2), flat(2, 4))});
  Rng rng(kDefaultSeed);
  int phis = 0, vacuous = 0;
  for (auto &[name, P] : pairs) {
    DegenerateCourant core = core_courant(P);
    CheckReport c = check_courant_axioms(core);
    o.expect(c.pass(), name + ": core fails " + first_failure(c));
    if (P.rank_q() < 2 || P.rank_b() == 0) {
      ++vacuous;
      continue;
    }
    for (int k = 0; k < 3; ++k) {
      PolyTensor phi = random_phi(P.dim(), P.rank_q(), P.rank_b(), rng);
      o.expect(core_courant(change_splitting(P, phi)) == core, name + ": core changes with the splitting");
      ++phis;
    }
  }
  o.detail = std::to_string(pairs.size()) + " pairs pass the Courant axioms; " + std::to_string(phis) +
             " nonzero phi leave the core unchanged (" + std::to_string(vacuous) + " pairs have B = 0, no nonzero phi)";
  return o;
}

Outcome criterion6() {
  Outcome o;
  int n = 0;
  for (auto &[cname, C] : std::vector<std::pair<std::string, DegenerateCourant>>{
           {"so3 Killing over R", so3_killing(1)}, {"standard Courant over R", standard_courant(1)}}) {
    int r = C.rank();
    Poly x = Poly::var(1, 0), one = Poly::constant(1, 1);
    std::vector<LinearConnection> conns{flat(1, r), metric_connection(C, {antisym(1, r, 0, 1, x)}),
                                        metric_connection(C, {antisym(1, r, 0, r - 1, x * x + one)})};
    for (std::size_t k = 0; k < conns.size(); ++k) {
      std::string tag = cname + " connection " + std::to_string(k);
      o.expect(check_metric_connection(C, conns[k]).pass(), tag + ": not metric");
      auto core = core_courant_on_q(tangent_double_pair(C, conns[k]));
      if (!core) {
        o.expect(false, tag + ": dQ not invertible");
        continue;
      }
      o.expect(core->rho == C.rho, tag + ": anchor differs");
      o.expect(core->pairing == C.pairing, tag + ": pairing differs");
      o.expect(core->bracket == C.bracket, tag + ": bracket differs");
      o.expect(core->dmap == C.dmap, tag + ": D-map differs");
      ++n;
    }
  }
  o.detail = std::to_string(n) + " (C, metric connection) cases recover anchor, pairing, bracket and D exactly";
  return o;
}

Outcome criterion7() {
  Outcome o;
  int n = 0;
  for (auto &name : example_names()) {
    StructureFile f = example(name);
    auto *d = std::get_if<DiracDoc>(&f.value);
    if (!d)
      continue;
    auto *P = std::get_if<LAPair>(&d->structure);
    if (!P || !check_dirac(P->D, &P->S, d->data, DiracMode::la_dirac).pass())
      continue;
    ManinPairResult M = manin_pair(*P, d->data);
    CheckReport r = check_manin_pair(M);
    o.expect(r.pass(), name + ": Manin pair fails " + first_failure(r));
    o.expect(M.courant.pairing.inverse().has_value(), name + ": pairing degenerate");
    ++n;
  }
  o.expect(n >= 2, "fewer than 2 LA-Dirac inputs");
  o.detail = std::to_string(n) + " LA-Dirac inputs give Manin pairs with U isotropic and closed";
  return o;
}

Outcome criterion8() {
  Outcome o;
  LAPair P = value_of<LAPair>("so3_symplectic_pair");
  DiracDoc e3doc = std::get<DiracDoc>(example("so3_dirac_e3").value);
  const LAPair &Pp = std::get<LAPair>(e3doc.structure);
  DiracData e3 = e3doc.data;
  DiracData e12 = std::get<DiracDoc>(broken("so3_dirac_e12").file.value).data;
  o.expect(check_dirac(P.D, nullptr, e3, DiracMode::vb_dirac).pass(), "span(e_3) not VB-Dirac");
  o.expect(check_dirac(Pp.D, &Pp.S, e3, DiracMode::la_dirac).pass(), "span(e_3) not LA-Dirac in the Poisson pair");
  CheckReport r12 = check_dirac(P.D, nullptr, e12, DiracMode::vb_dirac);
  o.expect(!r12.pass(), "span(e_1,e_2) accepted");

  // Every coordinate choice of U in Q and B' in B.
  std::vector<std::pair<std::string, Dorfman2Rep>> ambient{
      {"so3_symplectic_pair", P.D},
      {"so3_poisson_pair", value_of<LAPair>("so3_poisson_pair").D},
      {"tangent_double_pair_r1", value_of<LAPair>("tangent_double_pair_r1").D},
      {"standard_dorfman_r1", value_of<Dorfman2Rep>("standard_dorfman_r1")},
      {"tm_r1_lie1", value_of<Dorfman2Rep>("tm_r1_lie1")},
      {"semidirect_curved", value_of<Dorfman2Rep>("semidirect_curved")},
  };
  int tried = 0, induced = 0;
  for (auto &[name, D] : ambient) {
    int rq = D.rank_q(), rb = D.nabla.shape()[1];
    auto rows = [](int r, unsigned mask) {
      std::vector<std::vector<Rational>> m;
      for (int i = 0; i < r; ++i)
        if (mask >> i & 1) {
          std::vector<Rational> v(r, Rational(0));
          v[i] = 1;
          m.push_back(v);
        }
      return m;
    };
    for (unsigned mu = 0; mu < (1u << rq); ++mu)
      for (unsigned mb = 0; mb < (1u << rb); ++mb) {
        DiracData data{rq, rb, rows(rq, mu), rows(rb, mb)};
        ++tried;
        try {
          LieAlgebroid A = induced_lie_algebroid_on_U(D, data);
          ++induced;
          CheckReport r = check_lie_algebroid(A);
          o.expect(r.pass(), name + ": induced algebroid fails " + first_failure(r));
        } catch (const PreconditionError &) {
        }
      }
  }
  o.expect(induced > 0, "no subspace met the precondition");
  o.detail = "span(e_3) Dirac, span(e_1,e_2) rejected at " + first_failure(r12) + "; " + std::to_string(induced) +
             " of " + std::to_string(tried) + " coordinate subspaces meet the precondition, all induce Lie algebroids";
  return o;
}

// ---- CLI -------------------------------------------------------------------------

struct Run {
  int status = -1;
  std::string out;
};

std::string quote(const std::string &s) {
  std::string r = "'";
  for (char c : s)
    r += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return r + "'";
}

Run run(const std::string &cli, const std::string &args) {
  Run r;
  std::string cmd = quote(cli) + " " + args + " 2>/dev/null";
  FILE *p = popen(cmd.c_str(), "r");
  if (!p)
    return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0)
    r.out.append(buf, n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion9(const std::string &cli, const fs::path &data) {
  Outcome o;
  fs::path tmp = fs::temp_directory_path() / ("lie2kit_acceptance_" + std::to_string(getpid()));
  fs::create_directories(tmp);
  auto q = [](const fs::path &p) { return quote(p.string()); };

  int checked = 0;
  std::set<std::string> names;
  for (auto &name : example_names()) {
    names.insert(name + ".json");
    fs::path f = tmp / (name + ".json");
    Run e = run(cli, "example " + name + " --out " + q(f));
    o.expect(e.status == 0, "example " + name + " exit " + std::to_string(e.status));
    o.expect(slurp(f) == slurp(data / "examples" / (name + ".json")), "data/examples/" + name + ".json is stale");
    Run a = run(cli, "check " + q(f) + " --format json"), b = run(cli, "check " + q(f) + " --format json");
    o.expect(a.status == 0, "check " + name + " exit " + std::to_string(a.status));
    o.expect(a.out == b.out && !a.out.empty(), "check " + name + " report not byte-stable");
    Run t1 = run(cli, "check " + q(f) + " --seed 7"), t2 = run(cli, "check " + q(f) + " --seed 7");
    o.expect(t1.out == t2.out && t1.status == 0, "check " + name + " --seed 7 text report not stable");
    ++checked;
  }
  for (auto &entry : fs::directory_iterator(data / "examples"))
    o.expect(names.count(entry.path().filename().string()) == 1,
             "unexpected file data/examples/" + entry.path().filename().string());

  int failed_as_advertised = 0;
  std::ifstream manifest(data / "broken" / "MANIFEST");
  std::string line;
  std::set<std::string> listed;
  while (std::getline(manifest, line)) {
    std::vector<std::string> col;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, '\t');)
      col.push_back(c);
    if (col.size() != 4) {
      o.expect(false, "bad MANIFEST line: " + line);
      continue;
    }
    listed.insert(col[0]);
    fs::path f = data / "broken" / (col[0] + ".json");
    const BrokenExample &b = broken(col[0]);
    o.expect(slurp(f) == dump_structure(b.file), "data/broken/" + col[0] + ".json is stale");
    o.expect(b.mode == col[1] && b.label == col[2] && b.witness == col[3], "MANIFEST entry stale: " + col[0]);
    Run a = run(cli, "check " + q(f) + " --format json"), a2 = run(cli, "check " + q(f) + " --format json");
    o.expect(a.out == a2.out, col[0] + ": report not byte-stable");
    o.expect(a.status == 1, col[0] + ": exit " + std::to_string(a.status));
    if (a.status != 1)
      continue;
    auto j = nlohmann::json::parse(a.out);
    std::string witness;
    for (auto &e : j["entries"])
      if (e["label"] == col[2])
        witness = e["witness"];
    bool ok = j["mode"] == col[1] && j.value("first_failure", "") == col[2] && witness == col[3];
    o.expect(ok, col[0] + ": first failure " + j.value("first_failure", "") + " " + witness + ", advertised " +
                     col[2] + " " + col[3]);
    failed_as_advertised += ok;
  }
  o.expect(listed.size() == broken_examples().size(), "MANIFEST does not list every broken example");

  // Documented invocations.
  fs::path ex = data / "examples";
  o.expect(run(cli, "check --mode la-pair " + q(ex / "so3_symplectic_pair.json")).status == 0,
           "check --mode la-pair so3_symplectic_pair");
  Run bj = run(cli, "check " + q(data / "broken" / "so3_bad_jacobi.json"));
  o.expect(bj.status == 1 && bj.out.find("(e_1,e_2,e_3)") != std::string::npos, "so3_bad_jacobi witness not printed");
  Run core = run(cli, "construct core-courant " + q(ex / "so3_symplectic_pair.json"));
  o.expect(core.status == 0 && parse_structure(core.out, ex).value == example("so3_quadratic").value,
           "core-courant(so3_symplectic_pair) != so3_quadratic");
  Run bx = run(cli, "construct bicrossproduct " + q(ex / "axb_matched.json"));
  o.expect(bx.status == 0 && std::get<SplitLie2>(parse_structure(bx.out, ex).value).l3.is_zero(),
           "bicrossproduct(axb_matched) has l3 != 0");
  Run cs = run(cli, "construct change-splitting --phi zero " + q(ex / "tangent_double_pair_r1.json"));
  o.expect(cs.status == 0 && cs.out == slurp(ex / "tangent_double_pair_r1.json"),
           "change-splitting --phi zero not byte-identical");
  o.expect(run(cli, "example no_such_example").status == 2, "unknown example exit code");
  std::ofstream(tmp / "bad.json") << R"({"format": 1, "kind": "courant", "value": {}, "extra": 0})";
  o.expect(run(cli, "check " + q(tmp / "bad.json")).status == 2, "schema error exit code");

  fs::remove_all(tmp);
  o.detail = std::to_string(checked) + " examples exit 0 with stable reports, " +
             std::to_string(failed_as_advertised) + " broken files fail as advertised";
  return o;
}

} // namespace

int main(int argc, char **argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <lie2kit-cli> <data-dir>\n";
    return 2;
  }
  std::string cli = argv[1];
  fs::path data = argv[2];
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"[Q,Q]=0 equivalence", criterion1},
      {"Poisson biconditional", criterion2},
      {"matched-pair biconditional", criterion3},
      {"bicrossproduct", criterion4},
      {"core Courant algebroid", criterion5},
      {"Courant bracket recovery", criterion6},
      {"Manin pair", criterion7},
      {"Dirac criteria", criterion8},
      {"CLI determinism and corpus health", [&] { return criterion9(cli, data); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << i + 1 << "  " << criteria[i].first << ": "
              << o.detail << "\n";
    for (auto &p : o.problems)
      std::cout << "      " << p << "\n";
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
