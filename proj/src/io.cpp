#include "lie2kit/io.hpp"

#include "json.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace lie2kit {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string &where, const std::string &what) {
  throw StructuralError(where + ": " + what);
}

void require_keys(const json &j, const std::string &where, const std::set<std::string> &required,
                  const std::set<std::string> &optional = {}) {
  if (!j.is_object())
    fail(where, "expected an object");
  for (auto &[k, v] : j.items())
    if (!required.count(k) && !optional.count(k))
      fail(where, "unknown field \"" + k + "\"");
  for (auto &k : required)
    if (!j.contains(k))
      fail(where, "missing field \"" + k + "\"");
}

int get_count(const json &j, const std::string &key, const std::string &where) {
  const json &v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 64)
    fail(where + "." + key, "expected a small non-negative integer");
  return static_cast<int>(v.get<long long>());
}

Rational get_rational(const json &j, const std::string &where) {
  if (!j.is_string())
    fail(where, "rationals are strings \"a/b\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception &e) {
    fail(where, e.what());
  }
}

// ---- polynomials, matrices, tensors -------------------------------------------

json poly_to_json(const Poly &f) {
  json out = json::array();
  for (auto &[m, c] : f.terms())
    out.push_back(json{{"coeff", rational_str(c)}, {"exps", f.exponents(m)}});
  return out;
}

Poly poly_from_json(const json &j, int dim, const std::string &where) {
  if (!j.is_array())
    fail(where, "a polynomial is a list of terms");
  Poly f(dim);
  std::set<std::vector<int>> seen;
  for (std::size_t t = 0; t < j.size(); ++t) {
    std::string w = where + "[" + std::to_string(t) + "]";
    require_keys(j[t], w, {"coeff", "exps"});
    Rational c = get_rational(j[t]["coeff"], w + ".coeff");
    const json &e = j[t]["exps"];
    if (!e.is_array() || static_cast<int>(e.size()) != dim)
      fail(w + ".exps", "expected " + std::to_string(dim) + " exponents");
    std::vector<int> exps;
    for (auto &x : e) {
      if (!x.is_number_integer() || x.get<long long>() < 0 || x.get<long long>() > kMaxExponent)
        fail(w + ".exps", "exponents are integers in [0, 127]");
      exps.push_back(static_cast<int>(x.get<long long>()));
    }
    if (!seen.insert(exps).second)
      fail(w, "repeated monomial");
    if (c == 0)
      fail(w, "zero coefficient");
    f.add_term(exps, c);
  }
  return f;
}

json matrix_to_json(const PolyMatrix &m) {
  json out = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c)
      row.push_back(poly_to_json(m(r, c)));
    out.push_back(row);
  }
  return out;
}

PolyMatrix matrix_from_json(const json &j, int dim, int rows, int cols, const std::string &where) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    fail(where, "expected " + std::to_string(rows) + " rows");
  PolyMatrix m(dim, rows, cols);
  for (int r = 0; r < rows; ++r) {
    std::string w = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
      fail(w, "expected " + std::to_string(cols) + " columns");
    for (int c = 0; c < cols; ++c)
      m(r, c) = poly_from_json(j[r][c], dim, w + "[" + std::to_string(c) + "]");
  }
  return m;
}

json tensor_to_json(const PolyTensor &t) {
  json out = json::array();
  for (auto &[idx, v] : t.entries())
    out.push_back(json{{"index", idx}, {"value", poly_to_json(v)}});
  return out;
}

/// Fills a tensor of known shape; entries must sit on ordered tuples.
void tensor_from_json(PolyTensor &t, const json &j, const std::string &where) {
  if (!j.is_array())
    fail(where, "a tensor is a list of {index, value} entries");
  for (std::size_t n = 0; n < j.size(); ++n) {
    std::string w = where + "[" + std::to_string(n) + "]";
    require_keys(j[n], w, {"index", "value"});
    const json &ji = j[n]["index"];
    if (!ji.is_array() || static_cast<int>(ji.size()) != t.rank())
      fail(w + ".index", "expected " + std::to_string(t.rank()) + " indices");
    std::vector<int> idx;
    for (std::size_t k = 0; k < ji.size(); ++k) {
      if (!ji[k].is_number_integer() || ji[k].get<long long>() < 0 ||
          ji[k].get<long long>() >= t.shape()[k])
        fail(w + ".index", "index out of range");
      idx.push_back(static_cast<int>(ji[k].get<long long>()));
    }
    std::vector<int> c = idx;
    if (t.canonical(c) != 1 || c != idx)
      fail(w + ".index", "antisymmetric slots must be strictly increasing");
    if (t.entries().count(idx))
      fail(w + ".index", "repeated entry");
    Poly v = poly_from_json(j[n]["value"], t.dim(), w + ".value");
    if (v.is_zero())
      fail(w + ".value", "zero entry");
    t.set(idx, v);
  }
}

json rational_rows_to_json(const std::vector<std::vector<Rational>> &rows) {
  json out = json::array();
  for (auto &r : rows) {
    json row = json::array();
    for (auto &x : r)
      row.push_back(rational_str(x));
    out.push_back(row);
  }
  return out;
}

std::vector<std::vector<Rational>> rational_rows_from_json(const json &j, int cols, const std::string &where) {
  if (!j.is_array())
    fail(where, "expected a list of basis vectors");
  std::vector<std::vector<Rational>> out;
  for (std::size_t r = 0; r < j.size(); ++r) {
    std::string w = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
      fail(w, "expected " + std::to_string(cols) + " entries");
    std::vector<Rational> row;
    for (std::size_t c = 0; c < j[r].size(); ++c)
      row.push_back(get_rational(j[r][c], w + "[" + std::to_string(c) + "]"));
    out.push_back(row);
  }
  return out;
}

// ---- payloads -------------------------------------------------------------------

json algebroid_json(const LieAlgebroid &A) {
  return json{{"dim", A.dim()}, {"rank", A.rank()}, {"rho", matrix_to_json(A.rho)},
              {"bracket", tensor_to_json(A.c)}};
}

json connection_json(const LinearConnection &n) {
  return json{{"dim", n.dim()},
              {"acting_rank", n.acting_rank()},
              {"module_rank", n.module_rank()},
              {"rho", matrix_to_json(n.rho)},
              {"gamma", tensor_to_json(n.gamma)}};
}

json tworep_json(const TwoRep &T) {
  return json{{"algebroid", algebroid_json(T.A)},
              {"rank_b", T.nabla_b.module_rank()},
              {"rank_c", T.nabla_c.module_rank()},
              {"d", matrix_to_json(T.d)},
              {"nabla_b", tensor_to_json(T.nabla_b.gamma)},
              {"nabla_c", tensor_to_json(T.nabla_c.gamma)},
              {"R", tensor_to_json(T.r)}};
}

json dorfman_json(const Dorfman2Rep &D) {
  return json{{"dim", D.dim()},
              {"rank_q", D.rank_q()},
              {"rank_b", D.nabla.shape()[1]},
              {"rho", matrix_to_json(D.rho)},
              {"dB", matrix_to_json(D.dB)},
              {"delta", tensor_to_json(D.delta)},
              {"nabla", tensor_to_json(D.nabla)},
              {"R", tensor_to_json(D.r)}};
}

json split_json(const SplitLie2 &S) {
  return json{{"dim", S.dim()},
              {"rank_q", S.rank_q()},
              {"rank_b", S.nabla.shape()[1]},
              {"rho", matrix_to_json(S.rho)},
              {"l1", matrix_to_json(S.l1)},
              {"bracket", tensor_to_json(S.bracket)},
              {"nabla", tensor_to_json(S.nabla)},
              {"l3", tensor_to_json(S.l3)}};
}

json selfdual_json(const SelfDual2Rep &S) {
  return json{{"algebroid", algebroid_json(S.B)},
              {"rank_q", S.rank_q()},
              {"dQ", matrix_to_json(S.dQ)},
              {"nabla", tensor_to_json(S.nabla)},
              {"RB", tensor_to_json(S.rb)}};
}

json lapair_json(const LAPair &P) {
  return json{{"selfdual", selfdual_json(P.S)}, {"dorfman", dorfman_json(P.D)}};
}

json courant_json(const DegenerateCourant &C) {
  return json{{"dim", C.dim()},
              {"rank", C.rank()},
              {"rho", matrix_to_json(C.rho)},
              {"pairing", matrix_to_json(C.pairing)},
              {"bracket", tensor_to_json(C.bracket)},
              {"Dmap", matrix_to_json(C.dmap)}};
}

json payload_json(const Structure &s) {
  return std::visit(
      [](const auto &v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, LieAlgebroid>)
          return algebroid_json(v);
        else if constexpr (std::is_same_v<T, LinearConnection>)
          return connection_json(v);
        else if constexpr (std::is_same_v<T, TwoRep>)
          return tworep_json(v);
        else if constexpr (std::is_same_v<T, Dorfman2Rep>)
          return dorfman_json(v);
        else if constexpr (std::is_same_v<T, SplitLie2>)
          return split_json(v);
        else if constexpr (std::is_same_v<T, SelfDual2Rep>)
          return selfdual_json(v);
        else if constexpr (std::is_same_v<T, MatchedPair2Reps>)
          return json{{"on_b", tworep_json(v.on_b)}, {"on_a", tworep_json(v.on_a)}};
        else if constexpr (std::is_same_v<T, LAPair>)
          return lapair_json(v);
        else if constexpr (std::is_same_v<T, DegenerateCourant>)
          return courant_json(v);
        else if constexpr (std::is_same_v<T, DiracDoc>) {
          json j{{"rank_q", v.data.rank_q},
                 {"rank_b", v.data.rank_b},
                 {"U", rational_rows_to_json(v.data.u)},
                 {"Bprime", rational_rows_to_json(v.data.b_prime)}};
          if (auto *D = std::get_if<Dorfman2Rep>(&v.structure))
            j["structure"] = json{{"kind", "dorfman2rep"}, {"value", dorfman_json(*D)}};
          else if (auto *P = std::get_if<LAPair>(&v.structure))
            j["structure"] = json{{"kind", "lapair"}, {"value", lapair_json(*P)}};
          return j;
        } else if constexpr (std::is_same_v<T, MorphismDoc>)
          return json{{"source", split_json(v.source)},
                      {"target", split_json(v.target)},
                      {"mu_q", matrix_to_json(v.mu.mu_q)},
                      {"mu_b", matrix_to_json(v.mu.mu_b)},
                      {"mu12", tensor_to_json(v.mu.mu12)}};
        else
          return json{{"dim", v.phi.dim()},
                      {"rank_q", v.phi.shape()[0]},
                      {"rank_b", v.phi.shape()[2]},
                      {"phi", tensor_to_json(v.phi)}};
      },
      s);
}

// ---- reading ----------------------------------------------------------------------

struct Reader {
  std::filesystem::path base;
  // Bounds reference cycles.
  mutable int loaded = 0;

  /// Inline payload, or a path to a file of the given kind.
  json block(const json &j, const std::string &kind, const std::string &where) const {
    if (!j.is_string())
      return j;
    if (++loaded > 64)
      fail(where, "too many referenced files (cycle?)");
    std::filesystem::path p = base / j.get<std::string>();
    std::ifstream in(p, std::ios::binary);
    if (!in)
      fail(where, "cannot read referenced file " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    json doc;
    try {
      doc = json::parse(ss.str());
    } catch (const json::parse_error &e) {
      fail(p.string(), e.what());
    }
    require_keys(doc, p.string(), {"format", "kind"}, {"name", "value"});
    if (doc["format"] != kFormatVersion)
      fail(p.string(), "unsupported format version");
    if (doc["kind"] != kind)
      fail(where, "referenced file has kind " + doc["kind"].dump() + ", expected \"" + kind + "\"");
    if (!doc.contains("value"))
      fail(p.string(), "missing field \"value\"");
    return doc["value"];
  }

  LieAlgebroid algebroid(const json &j, const std::string &w) const {
    require_keys(j, w, {"dim", "rank", "rho", "bracket"});
    int p = get_count(j, "dim", w), r = get_count(j, "rank", w);
    LieAlgebroid A = LieAlgebroid::zero(p, r);
    A.rho = matrix_from_json(j["rho"], p, p, r, w + ".rho");
    tensor_from_json(A.c, j["bracket"], w + ".bracket");
    return A;
  }

  LinearConnection connection(const json &j, const std::string &w) const {
    require_keys(j, w, {"dim", "acting_rank", "module_rank", "rho", "gamma"});
    int p = get_count(j, "dim", w), a = get_count(j, "acting_rank", w), m = get_count(j, "module_rank", w);
    LinearConnection n = LinearConnection::zero(matrix_from_json(j["rho"], p, p, a, w + ".rho"), m);
    tensor_from_json(n.gamma, j["gamma"], w + ".gamma");
    return n;
  }

  TwoRep tworep(const json &j, const std::string &w) const {
    require_keys(j, w, {"algebroid", "rank_b", "rank_c", "d", "nabla_b", "nabla_c", "R"});
    LieAlgebroid A = algebroid(block(j["algebroid"], "liealgebroid", w + ".algebroid"), w + ".algebroid");
    int p = A.dim(), ra = A.rank(), rb = get_count(j, "rank_b", w), rc = get_count(j, "rank_c", w);
    TwoRep T{A, matrix_from_json(j["d"], p, rb, rc, w + ".d"), LinearConnection::zero(A.rho, rb),
             LinearConnection::zero(A.rho, rc), PolyTensor(p, {ra, ra, rb, rc}, {{0, 2}})};
    tensor_from_json(T.nabla_b.gamma, j["nabla_b"], w + ".nabla_b");
    tensor_from_json(T.nabla_c.gamma, j["nabla_c"], w + ".nabla_c");
    tensor_from_json(T.r, j["R"], w + ".R");
    validate(T);
    return T;
  }

  Dorfman2Rep dorfman(const json &j, const std::string &w) const {
    require_keys(j, w, {"dim", "rank_q", "rank_b", "rho", "dB", "delta", "nabla", "R"});
    int p = get_count(j, "dim", w), rq = get_count(j, "rank_q", w), rb = get_count(j, "rank_b", w);
    Dorfman2Rep D = Dorfman2Rep::zero(p, rq, rb);
    D.rho = matrix_from_json(j["rho"], p, p, rq, w + ".rho");
    D.dB = matrix_from_json(j["dB"], p, rb, rq, w + ".dB");
    tensor_from_json(D.delta, j["delta"], w + ".delta");
    tensor_from_json(D.nabla, j["nabla"], w + ".nabla");
    tensor_from_json(D.r, j["R"], w + ".R");
    validate(D);
    return D;
  }

  SplitLie2 split(const json &j, const std::string &w) const {
    require_keys(j, w, {"dim", "rank_q", "rank_b", "rho", "l1", "bracket", "nabla", "l3"});
    int p = get_count(j, "dim", w), rq = get_count(j, "rank_q", w), rb = get_count(j, "rank_b", w);
    SplitLie2 S = SplitLie2::zero(p, rq, rb);
    S.rho = matrix_from_json(j["rho"], p, p, rq, w + ".rho");
    S.l1 = matrix_from_json(j["l1"], p, rq, rb, w + ".l1");
    tensor_from_json(S.bracket, j["bracket"], w + ".bracket");
    tensor_from_json(S.nabla, j["nabla"], w + ".nabla");
    tensor_from_json(S.l3, j["l3"], w + ".l3");
    validate(S);
    return S;
  }

  SelfDual2Rep selfdual(const json &j, const std::string &w) const {
    require_keys(j, w, {"algebroid", "rank_q", "dQ", "nabla", "RB"});
    LieAlgebroid B = algebroid(block(j["algebroid"], "liealgebroid", w + ".algebroid"), w + ".algebroid");
    int p = B.dim(), rq = get_count(j, "rank_q", w);
    SelfDual2Rep S = SelfDual2Rep::zero(p, rq, B.rank());
    S.B = B;
    S.dQ = matrix_from_json(j["dQ"], p, rq, rq, w + ".dQ");
    tensor_from_json(S.nabla, j["nabla"], w + ".nabla");
    tensor_from_json(S.rb, j["RB"], w + ".RB");
    validate(S);
    return S;
  }

  LAPair lapair(const json &j, const std::string &w) const {
    require_keys(j, w, {"selfdual", "dorfman"});
    LAPair P{selfdual(block(j["selfdual"], "selfdual2rep", w + ".selfdual"), w + ".selfdual"),
             dorfman(block(j["dorfman"], "dorfman2rep", w + ".dorfman"), w + ".dorfman")};
    validate(P);
    return P;
  }

  DegenerateCourant courant(const json &j, const std::string &w) const {
    require_keys(j, w, {"dim", "rank", "rho", "pairing", "bracket", "Dmap"});
    int p = get_count(j, "dim", w), n = get_count(j, "rank", w);
    DegenerateCourant C = DegenerateCourant::zero(p, n);
    C.rho = matrix_from_json(j["rho"], p, p, n, w + ".rho");
    C.pairing = matrix_from_json(j["pairing"], p, n, n, w + ".pairing");
    tensor_from_json(C.bracket, j["bracket"], w + ".bracket");
    C.dmap = matrix_from_json(j["Dmap"], p, n, p, w + ".Dmap");
    validate(C);
    return C;
  }

  DiracDoc dirac(const json &j, const std::string &w) const {
    require_keys(j, w, {"rank_q", "rank_b", "U", "Bprime"}, {"structure"});
    DiracDoc d;
    d.data.rank_q = get_count(j, "rank_q", w);
    d.data.rank_b = get_count(j, "rank_b", w);
    d.data.u = rational_rows_from_json(j["U"], d.data.rank_q, w + ".U");
    d.data.b_prime = rational_rows_from_json(j["Bprime"], d.data.rank_b, w + ".Bprime");
    validate(d.data);
    if (j.contains("structure")) {
      std::string ws = w + ".structure";
      const json &s = j["structure"];
      require_keys(s, ws, {"kind", "value"});
      if (s["kind"] == "dorfman2rep")
        d.structure = dorfman(block(s["value"], "dorfman2rep", ws), ws);
      else if (s["kind"] == "lapair")
        d.structure = lapair(block(s["value"], "lapair", ws), ws);
      else
        fail(ws, "structure kind must be dorfman2rep or lapair");
      int rq = 0, rb = 0;
      if (auto *D = std::get_if<Dorfman2Rep>(&d.structure))
        rq = D->rank_q(), rb = D->nabla.shape()[1];
      else if (auto *P = std::get_if<LAPair>(&d.structure))
        rq = P->rank_q(), rb = P->D.nabla.shape()[1];
      if (rq != d.data.rank_q || rb != d.data.rank_b)
        fail(ws, "ranks do not match the subbundle data");
    }
    return d;
  }

  MorphismDoc morphism(const json &j, const std::string &w) const {
    require_keys(j, w, {"source", "target", "mu_q", "mu_b", "mu12"});
    MorphismDoc m;
    m.source = split(block(j["source"], "splitlie2", w + ".source"), w + ".source");
    m.target = split(block(j["target"], "splitlie2", w + ".target"), w + ".target");
    int p = m.source.dim(), rq1 = m.source.rank_q(), rq2 = m.target.rank_q();
    int rb1 = m.source.nabla.shape()[1], rb2 = m.target.nabla.shape()[1];
    if (m.target.dim() != p)
      fail(w, "source and target live over different bases");
    m.mu.mu_q = matrix_from_json(j["mu_q"], p, rq2, rq1, w + ".mu_q");
    m.mu.mu_b = matrix_from_json(j["mu_b"], p, rb2, rb1, w + ".mu_b");
    m.mu.mu12 = PolyTensor(p, {rq1, rq1, rb2}, {{0, 2}});
    tensor_from_json(m.mu.mu12, j["mu12"], w + ".mu12");
    return m;
  }

  SplittingDoc splitting(const json &j, const std::string &w) const {
    require_keys(j, w, {"dim", "rank_q", "rank_b", "phi"});
    int p = get_count(j, "dim", w), rq = get_count(j, "rank_q", w), rb = get_count(j, "rank_b", w);
    SplittingDoc s{PolyTensor(p, {rq, rq, rb}, {{0, 2}})};
    tensor_from_json(s.phi, j["phi"], w + ".phi");
    return s;
  }

  Structure payload(const std::string &kind, const json &j) const {
    const std::string w = "value";
    if (kind == "liealgebroid")
      return algebroid(j, w);
    if (kind == "connection")
      return connection(j, w);
    if (kind == "tworep")
      return tworep(j, w);
    if (kind == "dorfman2rep")
      return dorfman(j, w);
    if (kind == "splitlie2")
      return split(j, w);
    if (kind == "selfdual2rep")
      return selfdual(j, w);
    if (kind == "matched2reps") {
      require_keys(j, w, {"on_b", "on_a"});
      MatchedPair2Reps M{tworep(block(j["on_b"], "tworep", w + ".on_b"), w + ".on_b"),
                         tworep(block(j["on_a"], "tworep", w + ".on_a"), w + ".on_a")};
      validate(M);
      return M;
    }
    if (kind == "lapair")
      return lapair(j, w);
    if (kind == "courant")
      return courant(j, w);
    if (kind == "dirac")
      return dirac(j, w);
    if (kind == "lie2morphism")
      return morphism(j, w);
    if (kind == "splitting")
      return splitting(j, w);
    fail("kind", "unknown kind \"" + kind + "\"");
  }
};

} // namespace

std::string kind_of(const Structure &s) {
  static const char *names[] = {"liealgebroid", "connection",   "tworep", "dorfman2rep",
                                "splitlie2",    "selfdual2rep", "matched2reps", "lapair",
                                "courant",      "dirac",        "lie2morphism", "splitting"};
  return names[s.index()];
}

StructureFile parse_structure(const std::string &text, const std::filesystem::path &base) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw StructuralError(std::string("invalid JSON: ") + e.what());
  }
  require_keys(doc, "document", {"format", "kind", "value"}, {"name"});
  if (!doc["format"].is_number_integer() || doc["format"].get<long long>() != kFormatVersion)
    fail("format", "unsupported format version (expected 1)");
  if (!doc["kind"].is_string())
    fail("kind", "expected a string");
  StructureFile f;
  if (doc.contains("name")) {
    if (!doc["name"].is_string())
      fail("name", "expected a string");
    f.name = doc["name"].get<std::string>();
  }
  Reader r{base};
  f.value = r.payload(doc["kind"].get<std::string>(), doc["value"]);
  return f;
}

StructureFile load_structure(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw StructuralError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_structure(ss.str(), path.parent_path());
}

namespace {

std::string compact(const json &j) {
  if (j.is_object()) {
    std::string s = "{";
    bool first = true;
    for (auto &[k, v] : j.items()) {
      s += (first ? "" : ", ") + json(k).dump() + ": " + compact(v);
      first = false;
    }
    return s + "}";
  }
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i)
      s += (i ? ", " : "") + compact(j[i]);
    return s + "]";
  }
  return j.dump();
}

// Breaks containers only when their one-line form does not fit.
void pretty(const json &j, int indent, std::string &out) {
  constexpr std::size_t width = 100;
  std::string one = compact(j);
  if ((!j.is_object() && !j.is_array()) || one.size() + indent <= width || j.empty()) {
    out += one;
    return;
  }
  std::string pad(indent + 2, ' ');
  if (j.is_object()) {
    out += "{\n";
    std::size_t n = 0;
    for (auto &[k, v] : j.items()) {
      out += pad + json(k).dump() + ": ";
      pretty(v, indent + 2, out);
      out += ++n < j.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + "}";
    return;
  }
  out += "[\n";
  for (std::size_t i = 0; i < j.size(); ++i) {
    out += pad;
    pretty(j[i], indent + 2, out);
    out += i + 1 < j.size() ? ",\n" : "\n";
  }
  out += std::string(indent, ' ') + "]";
}

} // namespace

std::string format_json(const std::string &text) {
  std::string out;
  pretty(json::parse(text), 0, out);
  return out + "\n";
}

std::string dump_structure(const StructureFile &f) {
  json doc{{"format", kFormatVersion}, {"kind", kind_of(f.value)}};
  if (!f.name.empty())
    doc["name"] = f.name;
  doc["value"] = payload_json(f.value);
  std::string out;
  pretty(doc, 0, out);
  return out + "\n";
}

std::string digest_hex(const std::string &bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace lie2kit
