#include "lie2kit/corpus.hpp"

#include <functional>
#include <map>
#include <stdexcept>

namespace lie2kit {

LinearConnection metric_connection(const DegenerateCourant &C, const std::vector<PolyMatrix> &K) {
  int p = C.dim(), n = C.rank();
  auto Gi = C.pairing.inverse();
  if (!Gi)
    throw PreconditionError("metric_connection: pairing is not invertible");
  if (static_cast<int>(K.size()) != p)
    throw StructuralError("metric_connection: one matrix per coordinate");
  LinearConnection nabla = LinearConnection::zero(PolyMatrix::identity(p, p), n);
  for (int m = 0; m < p; ++m) {
    if (K[m].transpose() != K[m].scale(-1))
      throw PreconditionError("metric_connection: K is not antisymmetric");
    PolyMatrix G = K[m] * *Gi;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        nabla.gamma.set({m, j, k}, G(j, k));
  }
  return nabla;
}

namespace {

Poly c(int p, long v) { return Poly::constant(p, v); }
Poly x(int p, int i) { return Poly::var(p, i); }

PolyMatrix antisym(int p, int n, int i, int j, const Poly &v) {
  PolyMatrix K(p, n, n);
  K(i, j) = v;
  K(j, i) = -v;
  return K;
}

LinearConnection flat(int p, int n) { return LinearConnection::zero(PolyMatrix::identity(p, p), n); }

// [e_i, e_j] = eps_ijk e_k over a point.
PolyTensor so3_constants() { return so3_killing(0).bracket; }

SplitLie2 so3_string() {
  SplitLie2 S = SplitLie2::zero(0, 3, 1);
  S.bracket = so3_constants();
  S.l3.set({0, 1, 2, 0}, c(0, 1));
  return S;
}

Dorfman2Rep tm_r1_lie1() {
  Dorfman2Rep D = Dorfman2Rep::zero(1, 1, 0);
  D.rho(0, 0) = c(1, 1);
  return D;
}

// Standard Courant algebroid over R with nabla_{d/dx} = x (e_1 ^ e_2) G^{-1}.
LinearConnection standard_r1_metric() {
  DegenerateCourant C = standard_courant(1);
  return metric_connection(C, {antisym(1, 2, 0, 1, x(1, 0))});
}

LAPair tangent_double_pair_r1() { return tangent_double_pair(standard_courant(1), standard_r1_metric()); }

// E = R^2 with the standard metric over R, B = TR, dQ = Id and nabla_{d/dx} = x J.
SelfDual2Rep euclidean_selfdual_r1() {
  SelfDual2Rep S = SelfDual2Rep::zero(1, 2, 1);
  S.B.rho(0, 0) = c(1, 1);
  S.dQ = PolyMatrix::identity(1, 2);
  S.nabla.set({0, 0, 1}, -x(1, 0));
  S.nabla.set({0, 1, 0}, x(1, 0));
  return S;
}

// Same over R^2 with nabla_{d/dx} = xy J, nabla_{d/dy} = x J, and R_B read through the metric.
SelfDual2Rep euclidean_selfdual_r2() {
  SelfDual2Rep S = SelfDual2Rep::zero(2, 2, 2);
  S.B.rho = PolyMatrix::identity(2, 2);
  S.dQ = PolyMatrix::identity(2, 2);
  Poly a = x(2, 0) * x(2, 1), b = x(2, 0);
  S.nabla.set({0, 0, 1}, -a);
  S.nabla.set({0, 1, 0}, a);
  S.nabla.set({1, 0, 1}, -b);
  S.nabla.set({1, 1, 0}, b);
  PolyTensor R = curvature_form(S.connection(), S.B.bracket());
  S.rb.set({0, 1, 0, 1}, R.get({0, 1, 0, 1}));
  return S;
}

// A = R a acts on B = R b by nabla_a b = b; B acts trivially; C = 0.
MatchedPair2Reps axb_matched() {
  LieAlgebroid A = LieAlgebroid::zero(0, 1), B = LieAlgebroid::zero(0, 1);
  TwoRep on_b{A, PolyMatrix(0, 1, 0), LinearConnection::zero(A.rho, 1), LinearConnection::zero(A.rho, 0),
              PolyTensor(0, {1, 1, 1, 0}, {{0, 2}})};
  on_b.nabla_b.gamma.set({0, 0, 0}, c(0, 1));
  TwoRep on_a{B, PolyMatrix(0, 1, 0), LinearConnection::zero(B.rho, 1), LinearConnection::zero(B.rho, 0),
              PolyTensor(0, {1, 1, 1, 0}, {{0, 2}})};
  return {on_b, on_a};
}

// nabla_dx e_1 = y e_2, nabla_dy e_2 = x e_1 + e_2 on TR^2.
LinearConnection curved_r2() {
  LinearConnection n = flat(2, 2);
  n.gamma.set({0, 0, 1}, x(2, 1));
  n.gamma.set({1, 1, 0}, x(2, 0));
  n.gamma.set({1, 1, 1}, c(2, 1));
  return n;
}

MatchedPair2Reps tangent_double_r2() {
  LinearConnection n = curved_r2();
  return {adjoint_two_rep(tangent_algebroid(2), n), connection_two_rep(n)};
}

Dorfman2Rep semidirect_flat() {
  LinearConnection n = flat(1, 2);
  n.gamma.set({0, 0, 1}, x(1, 0));
  return semidirect_dorfman2rep(connection_two_rep(n));
}

// Semidirect product of the curved 2-rep (Id, nabla, nabla, R_nabla) on TR^2.
Dorfman2Rep semidirect_curved() {
  LinearConnection n = flat(2, 2);
  n.gamma.set({0, 0, 1}, x(2, 1));
  n.gamma.set({1, 1, 0}, x(2, 0));
  return semidirect_dorfman2rep(connection_two_rep(n));
}

LAPair so3_symplectic_pair() { return tangent_double_pair(so3_killing(0), flat(0, 3)); }

LAPair so3_poisson_pair() {
  LAPair P = so3_symplectic_pair();
  P.S.dQ = PolyMatrix(0, 3, 3);
  return P;
}

Dorfman2Rep standard_dorfman_r1() {
  DullBracket b = DullBracket::zero(PolyMatrix::from_rationals(1, {{1, 0, 0}}));
  b.c.set({0, 1, 2}, x(1, 0));
  b.c.set({1, 0, 2}, -x(1, 0));
  b.c.set({1, 2, 1}, c(1, 1));
  b.c.set({2, 1, 1}, c(1, -1));
  return standard_dorfman2rep(2, b);
}

DiracDoc dirac_doc(const LAPair &P, RatMatrix u, RatMatrix bp) {
  return {{P.rank_q(), P.rank_b(), std::move(u), std::move(bp)}, P};
}

using Maker = std::function<Structure()>;

const std::map<std::string, Maker> &makers() {
  static const std::map<std::string, Maker> m{
      {"so3_quadratic", [] { return so3_killing(0); }},
      {"so3_r1_quadratic", [] { return so3_killing(1); }},
      {"so3_string", [] { return so3_string(); }},
      {"tm_r1_lie1", [] { return tm_r1_lie1(); }},
      {"standard_courant_r1", [] { return standard_courant(1); }},
      {"standard_courant_r2", [] { return standard_courant(2); }},
      {"standard_r1_metric_connection", [] { return standard_r1_metric(); }},
      {"euclidean_selfdual_r1", [] { return euclidean_selfdual_r1(); }},
      {"euclidean_selfdual_r2", [] { return euclidean_selfdual_r2(); }},
      {"tangent_double_pair_r1", [] { return tangent_double_pair_r1(); }},
      {"axb_matched", [] { return axb_matched(); }},
      {"tangent_double_r2_matched", [] { return tangent_double_r2(); }},
      {"semidirect_flat", [] { return semidirect_flat(); }},
      {"semidirect_curved", [] { return semidirect_curved(); }},
      {"adjoint_so3", [] { return adjoint_dorfman2rep(so3_killing(0), flat(0, 3)); }},
      {"standard_dorfman_r1", [] { return standard_dorfman_r1(); }},
      {"so3_symplectic_pair", [] { return so3_symplectic_pair(); }},
      {"so3_poisson_pair", [] { return so3_poisson_pair(); }},
      {"so3_dirac_e3", [] { return dirac_doc(so3_poisson_pair(), {{0, 0, 1}}, {}); }},
      {"so3_dirac_full", [] { return dirac_doc(so3_poisson_pair(), {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {}); }},
      {"tangent_double_r1_dirac_tm", [] { return dirac_doc(tangent_double_pair_r1(), {{1, 0}}, {{1}}); }},
  };
  return m;
}

} // namespace

std::vector<std::string> example_names() {
  std::vector<std::string> out;
  for (auto &[k, v] : makers())
    out.push_back(k);
  return out;
}

StructureFile example(const std::string &name) {
  auto it = makers().find(name);
  if (it == makers().end())
    throw std::out_of_range("unknown example " + name);
  return {name, it->second()};
}

std::vector<BrokenExample> broken_examples() {
  std::vector<BrokenExample> out;
  auto add = [&](std::string name, std::string mode, std::string label, std::string witness, Structure s) {
    out.push_back({name, std::move(mode), std::move(label), std::move(witness), {name, std::move(s)}});
  };

  // [e_1, e_2] = e_3 + e_1 keeps skew-symmetry but breaks Jacobi.
  LieAlgebroid g = LieAlgebroid::zero(0, 3);
  g.c = so3_constants();
  g.c.set({0, 1, 0}, c(0, 1));
  g.c.set({1, 0, 0}, c(0, -1));
  add("so3_bad_jacobi", "lie-algebroid", "jacobi", "(e_1,e_2,e_3)", g);

  // l3 = x e^{234} over R with rho(e_1) = d/dx is not closed.
  SplitLie2 l3 = SplitLie2::zero(1, 4, 1);
  l3.rho(0, 0) = c(1, 1);
  l3.l3.set({1, 2, 3, 0}, x(1, 0));
  add("open_l3", "dorfman", "D6", "(e_1,e_2,e_3,b_1)", l3);

  // The printed sign of the mixed curvature block of the semidirect product.
  const Dorfman2Rep good = semidirect_curved();
  Dorfman2Rep sd = good;
  for (auto &[idx, v] : good.r.entries())
    if (idx[3] < 2)
      sd.r.set(idx, -v);
  add("semidirect_printed_sign", "dorfman", "D4b", "(e_1,e_3,eps_3)", sd);

  // dB no longer intertwines Delta and nabla.
  Dorfman2Rep d1 = semidirect_flat();
  d1.dB(0, 1) = x(1, 0);
  add("semidirect_bad_dB", "dorfman", "D1", "(e_1,eps_2)", d1);

  SelfDual2Rep rb = euclidean_selfdual_r2();
  rb.rb = -rb.rb;
  add("euclidean_r2_bad_RB", "selfdual", "2rep(2C)", "(b_1,b_2,eps_1)", rb);

  SelfDual2Rep dq = euclidean_selfdual_r1();
  dq.dQ(0, 1) = c(1, 1);
  add("euclidean_r1_asymmetric_dQ", "selfdual", "(1)", "(eps_1,eps_2)", dq);

  LAPair p1 = so3_symplectic_pair();
  p1.S.dQ = PolyMatrix::from_rationals(0, {{1, 0, 0}, {0, 1, 0}, {0, 0, 2}});
  add("so3_pair_bad_dQ", "la-pair", "M1", "(e_1,eps_2)", p1);

  // Self-dual side moved to another splitting while the Dorfman side stays put.
  LAPair p2 = tangent_double_pair_r1();
  PolyTensor phi(1, {2, 2, 1}, {{0, 2}});
  phi.set({0, 1, 0}, x(1, 0));
  p2.S = change_splitting(p2.S, phi);
  add("tangent_double_r1_mismatched_splitting", "la-pair", "M1", "(e_1,eps_1)", p2);

  DegenerateCourant q = so3_killing(0);
  q.pairing(2, 2) = c(0, 1);
  q.pairing(0, 0) = c(0, -1);
  add("so3_bad_pairing", "courant", "CA2", "(e_1,e_2,e_3)", q);

  add("so3_dirac_e12", "vb-dirac", "(3)", "(e_1,e_2)",
      DiracDoc{{3, 0, {{1, 0, 0}, {0, 1, 0}}, {}}, so3_symplectic_pair().D});

  // Flat tangent double of TR^2 with dA doubled: both 2-reps stay valid.
  LinearConnection n = flat(2, 2);
  n.gamma.set({0, 0, 1}, x(2, 0));
  MatchedPair2Reps m{adjoint_two_rep(tangent_algebroid(2), n), connection_two_rep(n)};
  m.on_a.d = m.on_a.d.scale(2);
  add("tangent_double_r2_doubled_dA", "matched", "(1)", "(c_1,c_1)", m);
  return out;
}

} // namespace lie2kit
