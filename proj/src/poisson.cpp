#include "lie2kit/poisson.hpp"

namespace lie2kit {

namespace {

void require(bool ok, const std::string &what) {
  if (!ok)
    throw StructuralError(what);
}

std::uint32_t bit(int i) { return std::uint32_t(1) << i; }

} // namespace

SelfDual2Rep SelfDual2Rep::zero(int dim, int rq, int rb) {
  return {LieAlgebroid::zero(dim, rb), PolyMatrix(dim, rq, rq), PolyTensor(dim, {rb, rq, rq}),
          PolyTensor(dim, {rb, rb, rq, rq}, {{0, 2}, {2, 2}})};
}

void validate(const SelfDual2Rep &S) {
  int p = S.dim(), rq = S.rank_q(), rb = S.rank_b();
  require(S.B.rho.rows() == p && S.B.c.shape() == std::vector<int>{rb, rb, rb},
          "selfdual2rep: Lie algebroid shape");
  require(S.dQ.dim() == p && S.dQ.cols() == rq, "selfdual2rep: dQ must be square");
  require(S.nabla.dim() == p && S.nabla.shape() == std::vector<int>{rb, rq, rq} &&
              S.nabla.groups().empty(),
          "selfdual2rep: nabla shape");
  require(S.rb.dim() == p && S.rb.shape() == std::vector<int>{rb, rb, rq, rq} &&
              S.rb.groups() == std::vector<PolyTensor::Group>{{0, 2}, {2, 2}},
          "selfdual2rep: R_B shape");
}

TwoRep SelfDual2Rep::two_rep() const {
  validate(*this);
  int p = dim(), rq = rank_q(), rbk = rank_b();
  LinearConnection nq = connection();
  TwoRep T{B, dQ, nq, nq.dual(), PolyTensor(p, {rbk, rbk, rq, rq}, {{0, 2}})};
  for (auto &[idx, v] : rb.entries()) {
    T.r.set(idx, v);
    T.r.set({idx[0], idx[1], idx[3], idx[2]}, -v);
  }
  return T;
}

CheckReport check_selfdual2rep(const SelfDual2Rep &S, std::uint64_t seed) {
  validate(S);
  CheckReport rep;
  rep.title = "self-dual 2-representation";
  rep.seed = seed;
  int rq = S.rank_q();
  auto coords = coordinate_names(S.dim());
  std::string w, res;
  for (int i = 0; i < rq && w.empty(); ++i)
    for (int j = i + 1; j < rq && w.empty(); ++j)
      if (S.dQ(i, j) != S.dQ(j, i)) {
        w = "(eps_" + std::to_string(i + 1) + ",eps_" + std::to_string(j + 1) + ")";
        res = (S.dQ(j, i) - S.dQ(i, j)).str(coords);
      }
  rep.add_flag("(1)", "dQ = dQ^*", w.empty(), w, res);
  rep.add_flag("(2)", "Q and Q^* carry dual connections (one stored connection)", true);
  rep.add_flag("(3)", "R_B^* = -R_B (antisymmetric storage)", true);
  CheckReport t = check_two_rep(S.two_rep(), seed, {"b", "e", "eps"});
  for (auto &e : t.entries) {
    if (e.label.rfind("A.", 0) == 0)
      e.label = "B." + e.label.substr(2);
    else
      e.label = "2rep" + e.label;
  }
  // Rewrite the generic 2-rep anchors in self-dual notation.
  for (auto &e : t.entries) {
    if (e.label == "2rep(1)")
      e.anchor = "dQ o nabla^* = nabla o dQ";
    else if (e.label == "2rep(2C)")
      e.anchor = "R_{nabla^*} = R_B o dQ";
    else if (e.label == "2rep(2B)")
      e.anchor = "R_nabla = dQ o R_B";
    else if (e.label == "2rep(3)")
      e.anchor = "d_{nabla^Hom} R_B = 0";
  }
  rep.append(t);
  return rep;
}

// ---- the Poisson bracket -----------------------------------------------------

GradedDerivation hamiltonian(const SelfDual2Rep &S, const Poly &f) {
  GradedSignature sig = S.signature();
  GradedDerivation H = GradedDerivation::zero(sig, -2);
  // {f, b_l} = -rho_B(b_l)(f)
  for (int l = 0; l < sig.rb; ++l)
    H.img_b[l] = GradedFunction::scalar(sig, -anchor_derive(S.B.rho, frame_section(sig.dim, sig.rb, l), f));
  return H;
}

GradedDerivation hamiltonian(const SelfDual2Rep &S, int g) {
  validate(S);
  GradedSignature sig = S.signature();
  int p = sig.dim, rq = sig.rq, rbk = sig.rb;
  require(g >= 0 && g < p + rq + rbk, "hamiltonian: generator index out of range");
  if (g < p)
    return hamiltonian(S, Poly::var(p, g));
  if (g < p + rq) {
    int k = g - p;
    GradedDerivation H = GradedDerivation::zero(sig, -1);
    // {tau_k, tau_j} = <tau_j, dQ tau_k>
    for (int j = 0; j < rq; ++j)
      H.img_tau[j] = GradedFunction::scalar(sig, S.dQ(j, k));
    // {tau_k, b_l} = -nabla^*_{b_l} tau_k = sum_j nabla[l][j][k] tau_j
    for (int l = 0; l < rbk; ++l)
      for (int j = 0; j < rq; ++j)
        H.img_b[l].add_term({bit(j), 0}, S.nabla.get({l, j, k}));
    return H;
  }
  int l = g - p - rq;
  GradedDerivation H = GradedDerivation::zero(sig, 0);
  for (int m = 0; m < p; ++m)
    H.img_x[m] = GradedFunction::scalar(sig, S.B.rho(m, l));
  // {b_l, tau_k} = nabla^*_{b_l} tau_k
  for (int k = 0; k < rq; ++k)
    for (int j = 0; j < rq; ++j)
      H.img_tau[k].add_term({bit(j), 0}, -S.nabla.get({l, j, k}));
  // {b_l, b_j} = [b_l, b_j] - R_B(b_l, b_j), R_B as sum_{k<m} <R q_k, q_m> tau_k tau_m
  for (int j = 0; j < rbk; ++j) {
    for (int k = 0; k < rbk; ++k)
      H.img_b[j].add_term({0, mono_with(0, k, 1)}, S.B.c.get({l, j, k}));
    for (int k = 0; k < rq; ++k)
      for (int m = k + 1; m < rq; ++m)
        H.img_b[j].add_term({bit(k) | bit(m), 0}, -S.rb.get({l, j, k, m}));
  }
  return H;
}

namespace {

struct Bracket {
  const SelfDual2Rep &S;
  GradedSignature sig;
  std::vector<GradedDerivation> gens;

  explicit Bracket(const SelfDual2Rep &s) : S(s), sig(s.signature()) {
    for (int g = 0; g < sig.dim + sig.rq + sig.rb; ++g)
      gens.push_back(hamiltonian(S, g));
  }

  // {c z_1 ... z_n, eta} for homogeneous eta, peeling the last factor:
  // {A z, eta} = A {z, eta} + (-1)^{|eta||z|} {A, eta} z.
  GradedFunction monomial(const Poly &c, const std::vector<int> &factors, std::size_t n,
                          const GradedFunction &eta, int deg_eta) const {
    if (n == 0)
      return hamiltonian(S, c).apply(eta);
    int z = factors[n - 1];
    int dz = z < sig.dim ? 0 : (z < sig.dim + sig.rq ? 1 : 2);
    GradedFunction A = GradedFunction::scalar(sig, c);
    for (std::size_t i = 0; i + 1 < n; ++i)
      A = A * generator(factors[i]);
    GradedFunction out = A * gens[z].apply(eta);
    GradedFunction rest = monomial(c, factors, n - 1, eta, deg_eta) * generator(z);
    return (deg_eta * dz) % 2 ? out - rest : out + rest;
  }

  GradedFunction generator(int g) const {
    if (g < sig.dim)
      return GradedFunction::x(sig, g);
    if (g < sig.dim + sig.rq)
      return GradedFunction::tau(sig, g - sig.dim);
    return GradedFunction::b(sig, g - sig.dim - sig.rq);
  }

  GradedFunction operator()(const GradedFunction &xi, const GradedFunction &eta) const {
    GradedFunction out(sig);
    for (auto &[deg, part] : eta.by_degree())
      for (auto &[k, c] : xi.terms()) {
        std::vector<int> factors;
        for (int i : tau_indices(k.tau))
          factors.push_back(sig.dim + i);
        for (int l = 0; l < sig.rb; ++l)
          for (int e = 0; e < mono_exp(k.b, l); ++e)
            factors.push_back(sig.dim + sig.rq + l);
        out += monomial(c, factors, factors.size(), part, deg);
      }
    return out;
  }
};

} // namespace

GradedFunction poisson_bracket(const SelfDual2Rep &S, const GradedFunction &xi,
                               const GradedFunction &eta) {
  require(xi.signature() == S.signature() && eta.signature() == S.signature(),
          "poisson_bracket: functions over different generators");
  return Bracket(S)(xi, eta);
}

CheckReport check_graded_jacobi(const SelfDual2Rep &S, std::uint64_t seed) {
  validate(S);
  CheckReport rep;
  rep.title = "degree -2 Poisson bracket";
  rep.seed = seed;
  GradedSignature sig = S.signature();
  Bracket br(S);
  auto gens = generators(sig);
  auto names = generator_names(sig);
  std::vector<int> deg;
  std::vector<std::string> kind;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    bool x = g < std::size_t(sig.dim), t = !x && g < std::size_t(sig.dim + sig.rq);
    deg.push_back(x ? 0 : t ? 1 : 2);
    kind.push_back(x ? "x" : t ? "tau" : "b");
  }

  CheckEntry skew;
  skew.label = "skew";
  skew.anchor = "{z1,z2} = -(-1)^{|z1||z2|} {z2,z1}";
  std::vector<std::vector<GradedFunction>> table(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j)
      table[i].push_back(br(gens[i], gens[j]));
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i; j < gens.size(); ++j) {
      ++skew.evaluations;
      GradedFunction r = (deg[i] * deg[j]) % 2 ? table[i][j] - table[j][i] : table[i][j] + table[j][i];
      if (!r.is_zero() && skew.pass) {
        skew.pass = false;
        skew.witness = "(" + names[i] + "," + names[j] + ")";
        skew.residual = r.str();
      }
    }
  rep.add(std::move(skew));

  // Jacobi, grouped by the generator types involved.
  struct Group {
    std::string label, anchor;
  };
  auto group_of = [&](std::size_t a, std::size_t b, std::size_t c) -> Group {
    int nb = (kind[a] == "b") + (kind[b] == "b") + (kind[c] == "b");
    int nt = (kind[a] == "tau") + (kind[b] == "tau") + (kind[c] == "tau");
    if (nb == 3)
      return {"jacobi(b,b,b)", "Jacobi of [.,.]_B and d_{nabla^Hom} R_B = 0"};
    if (nb == 2 && nt == 1)
      return {"jacobi(b,b,tau)", "R_{nabla^*} = R_B o dQ"};
    if (nb == 2)
      return {"jacobi(b,b,x)", "rho_B[b1,b2] = [rho_B b1, rho_B b2]"};
    if (nb == 1 && nt == 2)
      return {"jacobi(b,tau,tau)", "dQ o nabla^* = nabla o dQ"};
    return {"jacobi(other)", "vanishes for degree reasons"};
  };
  std::vector<CheckEntry> entries;
  auto entry = [&](const Group &g) -> CheckEntry & {
    for (auto &e : entries)
      if (e.label == g.label)
        return e;
    CheckEntry e;
    e.label = g.label;
    e.anchor = g.anchor;
    entries.push_back(e);
    return entries.back();
  };
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = 0; b < gens.size(); ++b)
      for (std::size_t c = 0; c < gens.size(); ++c) {
        CheckEntry &e = entry(group_of(a, b, c));
        ++e.evaluations;
        if (deg[a] + deg[b] + deg[c] < 4)
          continue;
        GradedFunction lhs = br(gens[a], table[b][c]);
        GradedFunction r1 = br(table[a][b], gens[c]);
        GradedFunction r2 = br(gens[b], table[a][c]);
        GradedFunction res = (deg[a] * deg[b]) % 2 ? lhs - r1 + r2 : lhs - r1 - r2;
        if (!res.is_zero() && e.pass) {
          e.pass = false;
          e.witness = "(" + names[a] + "," + names[b] + "," + names[c] + ")";
          e.residual = res.str();
        }
      }
  std::vector<std::string> order = {"jacobi(b,b,x)", "jacobi(b,tau,tau)", "jacobi(b,b,tau)",
                                    "jacobi(b,b,b)", "jacobi(other)"};
  for (auto &l : order)
    for (auto &e : entries)
      if (e.label == l)
        rep.add(e);

  bool poisson = rep.pass();
  bool axioms = check_selfdual2rep(S, seed).pass();
  rep.add_flag("cross-check", "Poisson axioms hold iff the self-dual 2-rep axioms hold",
               poisson == axioms, "",
               poisson == axioms ? ""
                                 : std::string("poisson=") + (poisson ? "pass" : "fail") +
                                       " selfdual=" + (axioms ? "pass" : "fail"));
  return rep;
}

bool is_symplectic(const SelfDual2Rep &S) {
  validate(S);
  if (S.rank_b() != S.dim())
    return false;
  auto iso = [](const PolyMatrix &m) {
    if (m.rows() != m.cols())
      return false;
    if (m.rows() == 0)
      return true;
    Poly d = m.det();
    return d.is_constant() && !d.is_zero();
  };
  return iso(S.B.rho) && iso(S.dQ);
}

} // namespace lie2kit
