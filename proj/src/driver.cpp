#include "lie2kit/driver.hpp"

#include "json.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace lie2kit {

namespace {

[[noreturn]] void usage(const std::string &what) { throw StructuralError(what); }

template <class T> const T &as(const StructureFile &f, const std::string &where) {
  if (auto *v = std::get_if<T>(&f.value))
    return *v;
  usage(where + ": unexpected kind " + kind_of(f.value));
}

CheckReport flag_report(const std::string &title, const std::string &label, const std::string &anchor,
                        bool pass, const std::string &witness = "") {
  CheckReport rep;
  rep.title = title;
  rep.add_flag(label, anchor, pass, witness);
  return rep;
}

DiracMode dirac_mode(const std::string &mode) {
  if (mode == "vb-dirac")
    return DiracMode::vb_dirac;
  if (mode == "la-subalgebroid")
    return DiracMode::la_subalgebroid;
  return DiracMode::la_dirac;
}

CheckReport check_dirac_doc(const DiracDoc &d, const std::string &mode, std::uint64_t seed) {
  const Dorfman2Rep *D = nullptr;
  const LAPair *P = std::get_if<LAPair>(&d.structure);
  if (P)
    D = &P->D;
  else if (auto *DD = std::get_if<Dorfman2Rep>(&d.structure))
    D = DD;
  else
    usage("dirac data needs an ambient structure (embedded or as second file)");
  if (mode == "manin" || mode == "induced-la") {
    if (mode == "induced-la") {
      LieAlgebroid A = induced_lie_algebroid_on_U(*D, d.data, seed);
      CheckReport rep = check_lie_algebroid(A, seed, "u");
      rep.title = "induced Lie algebroid on U";
      return rep;
    }
    if (!P)
      usage("manin mode needs an LA pair");
    CheckReport rep = check_manin_pair(manin_pair(*P, d.data, seed), seed);
    return rep;
  }
  if (mode != "vb-dirac" && !P)
    usage(mode + " mode needs an LA pair");
  return check_dirac(*D, P ? &P->S : nullptr, d.data, dirac_mode(mode), seed);
}

DiracDoc attach(DiracDoc d, const StructureFile *second) {
  if (!second)
    return d;
  if (auto *P = std::get_if<LAPair>(&second->value))
    d.structure = *P;
  else if (auto *D = std::get_if<Dorfman2Rep>(&second->value))
    d.structure = *D;
  else
    usage("second file must be a dorfman2rep or an lapair");
  return d;
}

int rank_b_of(const Dorfman2Rep &D) { return D.nabla.shape()[1]; }

} // namespace

std::vector<std::string> check_modes(const std::string &kind) {
  static const std::map<std::string, std::vector<std::string>> m{
      {"liealgebroid", {"lie-algebroid"}},
      {"connection", {"well-formed", "metric"}},
      {"tworep", {"two-rep"}},
      {"dorfman2rep", {"dorfman", "homological", "vb-dirac", "induced-la"}},
      {"splitlie2", {"dorfman", "homological"}},
      {"selfdual2rep", {"selfdual", "poisson"}},
      {"matched2reps", {"matched", "bicrossproduct"}},
      {"lapair", {"la-pair", "q-poisson", "core", "vb-dirac", "la-subalgebroid", "la-dirac", "manin", "induced-la"}},
      {"courant", {"courant"}},
      {"dirac", {"la-dirac", "vb-dirac", "la-subalgebroid", "manin", "induced-la"}},
      {"lie2morphism", {"morphism"}},
      {"splitting", {"well-formed"}},
  };
  auto it = m.find(kind);
  return it == m.end() ? std::vector<std::string>{} : it->second;
}

std::string resolve_mode(const StructureFile &f, const StructureFile *second, const std::string &mode) {
  std::string kind = kind_of(f.value);
  auto modes = check_modes(kind);
  if (mode.empty()) {
    // a dirac file over a bare Dorfman 2-rep
    if (kind == "dirac" && std::holds_alternative<Dorfman2Rep>(attach(std::get<DiracDoc>(f.value), second).structure))
      return "vb-dirac";
    return modes.front();
  }
  if (std::find(modes.begin(), modes.end(), mode) == modes.end()) {
    std::string list;
    for (auto &m : modes)
      list += (list.empty() ? "" : ", ") + m;
    usage("mode " + mode + " does not apply to kind " + kind + " (modes: " + list + ")");
  }
  return mode;
}

CheckReport run_check(const StructureFile &f, const StructureFile *second, const std::string &mode_in,
                      std::uint64_t seed) {
  std::string kind = kind_of(f.value);
  std::string mode = resolve_mode(f, second, mode_in);

  try {
    if (kind == "liealgebroid")
      return check_lie_algebroid(std::get<LieAlgebroid>(f.value), seed);
    if (kind == "connection") {
      const LinearConnection &n = std::get<LinearConnection>(f.value);
      if (mode == "metric") {
        if (!second)
          usage("metric mode needs a courant file as second input");
        return check_metric_connection(as<DegenerateCourant>(*second, "second file"), n);
      }
      return flag_report("connection", "well-formed", "shapes agree with the declared ranks",
                         n.gamma.shape() == std::vector<int>{n.acting_rank(), n.module_rank(), n.module_rank()});
    }
    if (kind == "tworep")
      return check_two_rep(std::get<TwoRep>(f.value), seed);
    if (kind == "dorfman2rep" || kind == "splitlie2") {
      Dorfman2Rep D = kind == "splitlie2" ? dorfman_from_split(std::get<SplitLie2>(f.value))
                                          : std::get<Dorfman2Rep>(f.value);
      if (mode == "dorfman")
        return check_dorfman2rep(D, seed);
      if (mode == "homological")
        return check_homological(D, seed);
      if (!second)
        usage(mode + " mode needs a dirac file as second input");
      DiracDoc d{as<DiracDoc>(*second, "second file").data, D};
      return check_dirac_doc(d, mode, seed);
    }
    if (kind == "selfdual2rep") {
      const SelfDual2Rep &S = std::get<SelfDual2Rep>(f.value);
      return mode == "poisson" ? check_graded_jacobi(S, seed) : check_selfdual2rep(S, seed);
    }
    if (kind == "matched2reps") {
      const MatchedPair2Reps &M = std::get<MatchedPair2Reps>(f.value);
      if (mode == "matched")
        return check_matched_two_reps(M, seed);
      CheckReport rep = check_homological(dorfman_from_split(bicrossproduct(M, seed)), seed);
      rep.title = "bicrossproduct: " + rep.title;
      return rep;
    }
    if (kind == "lapair") {
      const LAPair &P = std::get<LAPair>(f.value);
      if (mode == "la-pair")
        return check_la_matched_pair(P, seed);
      if (mode == "q-poisson")
        return check_q_preserves_poisson(P, seed);
      if (mode == "core") {
        CheckReport rep;
        rep.title = "core Courant algebroid";
        rep.seed = seed;
        rep.append(check_courant_axioms(core_courant(P, seed), seed, "eps"));
        rep.append(check_core_morphism(P, seed), "morphism.");
        return rep;
      }
      if (!second)
        usage(mode + " mode needs a dirac file as second input");
      DiracDoc d{as<DiracDoc>(*second, "second file").data, P};
      return check_dirac_doc(d, mode, seed);
    }
    if (kind == "courant")
      return check_courant_axioms(std::get<DegenerateCourant>(f.value), seed);
    if (kind == "dirac")
      return check_dirac_doc(attach(std::get<DiracDoc>(f.value), second), mode, seed);
    if (kind == "lie2morphism") {
      const MorphismDoc &m = std::get<MorphismDoc>(f.value);
      return check_lie2_morphism(m.source, m.target, m.mu, seed);
    }
    return flag_report("splitting", "well-formed", "phi is antisymmetric in its Q-slots", true);
  } catch (const PreconditionError &e) {
    CheckReport rep = flag_report(kind, "precondition", "hypotheses of the selected check", false, e.what());
    rep.seed = seed;
    return rep;
  }
}

// ---- constructions ----------------------------------------------------------------

std::vector<std::string> construct_recipes() {
  return {"dorfman-from-split", "split-from-dorfman", "bicrossproduct", "decompose",
          "core-courant",       "adjoint",            "standard",       "semidirect",
          "change-splitting",   "manin-pair",         "dualize-2rep",   "induced-la"};
}

StructureFile run_construct(const std::string &recipe, const std::vector<StructureFile> &in,
                            const ConstructOptions &o) {
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (in.size() < lo || in.size() > hi)
      usage(recipe + ": expected " + std::to_string(lo) + (lo == hi ? "" : "-" + std::to_string(hi)) +
            " input file(s)");
  };
  std::string src = in.empty() ? std::string() : in[0].name;
  auto out = [&](Structure s) { return StructureFile{src.empty() ? recipe : recipe + "(" + src + ")", std::move(s)}; };

  if (recipe == "dorfman-from-split") {
    need(1, 1);
    return out(dorfman_from_split(as<SplitLie2>(in[0], recipe)));
  }
  if (recipe == "split-from-dorfman") {
    need(1, 1);
    return out(split_from_dorfman(as<Dorfman2Rep>(in[0], recipe)));
  }
  if (recipe == "bicrossproduct") {
    need(1, 1);
    return out(bicrossproduct(as<MatchedPair2Reps>(in[0], recipe), o.seed));
  }
  if (recipe == "decompose") {
    need(1, 1);
    if (!o.rank_a)
      usage("decompose needs --rank-a");
    return out(decompose_bicrossproduct(as<SplitLie2>(in[0], recipe), *o.rank_a));
  }
  if (recipe == "core-courant") {
    need(1, 1);
    const LAPair &P = as<LAPair>(in[0], recipe);
    if (o.side == "core")
      return out(core_courant(P, o.seed));
    auto q = core_courant_on_q(P, o.seed);
    if (q)
      return out(*q);
    if (o.side == "q")
      throw PreconditionError("core-courant --side q: dQ has no polynomial inverse");
    return out(core_courant(P, o.seed));
  }
  if (recipe == "adjoint") {
    need(1, 2);
    auto connection = [&](int p, int n) {
      if (in.size() == 2)
        return as<LinearConnection>(in[1], "adjoint connection");
      return LinearConnection::zero(PolyMatrix::identity(p, p), n);
    };
    if (auto *C = std::get_if<DegenerateCourant>(&in[0].value)) {
      LinearConnection n = connection(C->dim(), C->rank());
      if (o.pair)
        return out(tangent_double_pair(*C, n, o.seed));
      return out(adjoint_dorfman2rep(*C, n, o.seed));
    }
    const LieAlgebroid &A = as<LieAlgebroid>(in[0], recipe);
    return out(adjoint_two_rep(A, connection(A.dim(), A.rank())));
  }
  if (recipe == "standard") {
    need(0, 1);
    if (in.empty()) {
      if (!o.dim)
        usage("standard needs an input Lie algebroid on TM + E^* or --dim");
      return out(standard_courant(*o.dim));
    }
    const LieAlgebroid &A = as<LieAlgebroid>(in[0], recipe);
    return out(standard_dorfman2rep(A.rank() - A.dim(), A.bracket()));
  }
  if (recipe == "semidirect") {
    need(1, 1);
    return out(semidirect_dorfman2rep(as<TwoRep>(in[0], recipe), o.seed));
  }
  if (recipe == "change-splitting") {
    need(1, 1);
    auto phi_for = [&](int p, int rq, int rb) {
      PolyTensor phi(p, {rq, rq, rb}, {{0, 2}});
      if (o.phi) {
        const PolyTensor &given = as<SplittingDoc>(*o.phi, "--phi").phi;
        if (!given.same_shape(phi))
          usage("--phi has the wrong shape for this structure");
        phi = given;
      }
      return phi;
    };
    StructureFile r = in[0];
    if (auto *D = std::get_if<Dorfman2Rep>(&in[0].value))
      r.value = change_splitting(*D, phi_for(D->dim(), D->rank_q(), rank_b_of(*D)));
    else if (auto *P = std::get_if<LAPair>(&in[0].value))
      r.value = change_splitting(*P, phi_for(P->dim(), P->rank_q(), rank_b_of(P->D)));
    else if (auto *S = std::get_if<SelfDual2Rep>(&in[0].value))
      r.value = change_splitting(*S, phi_for(S->dim(), S->rank_q(), S->rank_b()));
    else
      usage("change-splitting applies to dorfman2rep, lapair and selfdual2rep");
    return r;
  }
  if (recipe == "manin-pair" || recipe == "induced-la") {
    need(1, 2);
    const DiracDoc *d0 = std::get_if<DiracDoc>(&in[0].value);
    const StructureFile *other = in.size() == 2 ? &in[1] : nullptr;
    if (!d0 && other) {
      d0 = &as<DiracDoc>(in[1], recipe);
      other = &in[0];
    }
    if (!d0)
      usage(recipe + " needs a dirac file");
    DiracDoc d = attach(*d0, other);
    if (recipe == "manin-pair") {
      auto *P = std::get_if<LAPair>(&d.structure);
      if (!P)
        usage("manin-pair needs an LA pair");
      return out(manin_pair(*P, d.data, o.seed).courant);
    }
    if (auto *P = std::get_if<LAPair>(&d.structure))
      return out(induced_lie_algebroid_on_U(P->D, d.data, o.seed));
    if (auto *D = std::get_if<Dorfman2Rep>(&d.structure))
      return out(induced_lie_algebroid_on_U(*D, d.data, o.seed));
    usage("induced-la needs a dorfman2rep or an lapair");
  }
  if (recipe == "dualize-2rep") {
    need(1, 1);
    return out(dualize_two_rep(as<TwoRep>(in[0], recipe)));
  }
  usage("unknown recipe " + recipe);
}

// ---- rendering ----------------------------------------------------------------------

std::string render_text(const CheckReport &rep, const ReportMeta &m) {
  std::ostringstream os;
  os << "lie2kit " << m.version << "  " << m.command << " " << m.mode << "  kind " << m.kind << "  seed "
     << m.seed << "  input " << m.digest << "\n";
  os << rep.title << "\n";
  std::size_t w = 0;
  for (auto &e : rep.entries)
    w = std::max(w, e.label.size());
  for (auto &e : rep.entries) {
    os << (e.pass ? "PASS  " : "FAIL  ") << e.label << std::string(w - e.label.size() + 2, ' ') << e.anchor
       << "\n";
    if (!e.pass) {
      if (!e.witness.empty())
        os << "      witness  " << e.witness << "\n";
      if (!e.residual.empty())
        os << "      residual " << e.residual << "\n";
    }
  }
  const CheckEntry *f = rep.first_failure();
  os << "verdict: " << (f ? "FAIL (first failure " + f->label + ")" : std::string("PASS")) << "\n";
  return os.str();
}

std::string render_json(const CheckReport &rep, const ReportMeta &m) {
  nlohmann::ordered_json j{{"tool", "lie2kit"},     {"version", m.version}, {"command", m.command},
                           {"mode", m.mode},        {"kind", m.kind},       {"input_digest", m.digest},
                           {"seed", m.seed},        {"title", rep.title}};
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (auto &e : rep.entries)
    entries.push_back({{"label", e.label},
                       {"anchor", e.anchor},
                       {"pass", e.pass},
                       {"witness", e.witness},
                       {"residual", e.residual},
                       {"evaluations", e.evaluations}});
  j["entries"] = entries;
  j["verdict"] = rep.pass() ? "pass" : "fail";
  if (const CheckEntry *f = rep.first_failure())
    j["first_failure"] = f->label;
  return format_json(j.dump());
}

} // namespace lie2kit
