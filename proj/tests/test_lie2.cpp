#include "doctest.h"

#include "lie2kit/lie2.hpp"

using namespace lie2kit;

namespace {

// so(3) with [e_i, e_j] = eps_ijk e_k and B = R carrying the Cartan 3-form.
SplitLie2 so3_string() {
  SplitLie2 S = SplitLie2::zero(0, 3, 1);
  Poly one = Poly::constant(0, 1);
  int eps[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (auto &t : eps) {
    S.bracket.set({t[0], t[1], t[2]}, one);
    S.bracket.set({t[1], t[0], t[2]}, -one);
  }
  S.l3.set({0, 1, 2, 0}, one);
  return S;
}

} // namespace

TEST_CASE("so(3) string data passes both D-axioms and Q^2 = 0") {
  Dorfman2Rep D = dorfman_from_split(so3_string());
  CheckReport a = check_dorfman2rep(D), h = check_homological(D);
  CHECK(a.pass());
  CHECK(h.pass());
  // <R(q_i,q_j) b, q_k> = eps_ijk
  CHECK(D.r.get({0, 1, 0, 2}) == Poly::constant(0, 1));
  CHECK(D.r.get({1, 2, 0, 0}) == Poly::constant(0, 1));
  CHECK(D.r.get({0, 2, 0, 1}) == Poly::constant(0, -1));
  CHECK(split_from_dorfman(D) == so3_string());
}

TEST_CASE("non-closed l3 breaks D6 and the tau^4 part of Q^2(b)") {
  // Over R with rho(e_1) = d/dx and l3 = x e^{234}: d l3 (e_1,..,e_4) = 1.
  SplitLie2 S = SplitLie2::zero(1, 4, 1);
  S.rho(0, 0) = Poly::constant(1, 1);
  S.l3.set({1, 2, 3, 0}, Poly::var(1, 0));
  Dorfman2Rep D = dorfman_from_split(S);
  CheckReport a = check_dorfman2rep(D), h = check_homological(D);
  CHECK_FALSE(a.find("D6")->pass);
  CHECK_FALSE(h.find("Q2(b):tttt")->pass);
}

namespace {

// Strict Lie 2-algebra so(3) -> so(3) with l1 = id and coadjoint nabla.
SplitLie2 so3_crossed() {
  SplitLie2 S = SplitLie2::zero(0, 3, 3);
  Poly one = Poly::constant(0, 1);
  int eps[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (auto &t : eps) {
    S.bracket.set({t[0], t[1], t[2]}, one);
    S.bracket.set({t[1], t[0], t[2]}, -one);
    S.nabla.set({t[0], t[1], t[2]}, one);
    S.nabla.set({t[1], t[0], t[2]}, -one);
  }
  S.l1 = PolyMatrix::identity(0, 3);
  return S;
}

PolyTensor sample_phi(int dim, int rq, int rb, std::uint64_t seed) {
  Rng rng(seed);
  PolyTensor phi(dim, {rq, rq, rb}, {{0, 2}});
  for (int i = 0; i < rq; ++i)
    for (int j = i + 1; j < rq; ++j)
      for (int l = 0; l < rb; ++l)
        phi.set({i, j, l}, rng.poly(dim, dim == 0 ? 0 : 1));
  return phi;
}

// Oracle: the algebra morphism mu^* : C(M2) -> C(M1) on generators,
//   tau2_k -> sum_i muQ(k,i) tau1_i
//   b2_l   -> sum_m muB(l,m) b1_m + sign * sum_{i<j} mu12(q_i,q_j)(b_l) tau1_i tau1_j
struct Pullback {
  GradedSignature s1, s2;
  std::vector<GradedFunction> tau, b;

  GradedFunction apply(const GradedFunction &f) const {
    GradedFunction out(s1);
    for (auto &[k, c] : f.terms()) {
      GradedFunction m = GradedFunction::scalar(s1, c);
      for (int i : tau_indices(k.tau))
        m = m * tau[i];
      for (int l = 0; l < s2.rb; ++l)
        for (int e = 0; e < mono_exp(k.b, l); ++e)
          m = m * b[l];
      out += m;
    }
    return out;
  }
};

Pullback make_pullback(const Dorfman2Rep &D1, const Dorfman2Rep &D2, const Lie2Morphism &mu,
                       int sign) {
  Pullback P{D1.signature(), D2.signature(), {}, {}};
  for (int k = 0; k < P.s2.rq; ++k) {
    GradedFunction g(P.s1);
    for (int i = 0; i < P.s1.rq; ++i)
      g.add_term({std::uint32_t(1) << i, 0}, mu.mu_q(k, i));
    P.tau.push_back(g);
  }
  for (int l = 0; l < P.s2.rb; ++l) {
    GradedFunction g(P.s1);
    for (int m = 0; m < P.s1.rb; ++m)
      g.add_term({0, mono_with(0, m, 1)}, mu.mu_b(l, m));
    for (int i = 0; i < P.s1.rq; ++i)
      for (int j = i + 1; j < P.s1.rq; ++j) {
        Poly v = mu.mu12.get({i, j, l});
        g.add_term({(std::uint32_t(1) << i) | (std::uint32_t(1) << j), 0},
                   sign > 0 ? v : -v);
      }
    P.b.push_back(g);
  }
  return P;
}

bool intertwines(const Dorfman2Rep &D1, const Dorfman2Rep &D2, const Pullback &P) {
  GradedDerivation Q1 = build_homological_field(D1), Q2 = build_homological_field(D2);
  for (auto &g : generators(D2.signature()))
    if (!(P.apply(Q2.apply(g)) == Q1.apply(P.apply(g))))
      return false;
  return true;
}

} // namespace

TEST_CASE("strict so(3) crossed module is a Lie 2-algebra") {
  Dorfman2Rep D = dorfman_from_split(so3_crossed());
  CHECK(check_dorfman2rep(D).pass());
  CHECK(check_homological(D).pass());
}

TEST_CASE("change of splitting: phi then -phi restores, and axioms are preserved") {
  Dorfman2Rep D = dorfman_from_split(so3_crossed());
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    PolyTensor phi = sample_phi(0, 3, 3, seed);
    Dorfman2Rep D2 = change_splitting(D, phi);
    CHECK_FALSE(D2 == D);
    CHECK(check_dorfman2rep(D2).pass());
    CHECK(check_homological(D2).pass());
    CHECK(change_splitting(D2, -phi) == D);
    PolyTensor psi = sample_phi(0, 3, 3, seed + 10);
    Dorfman2Rep a = change_splitting(change_splitting(D, phi), psi), b = change_splitting(D, phi + psi);
    CHECK(a.delta == b.delta);
    CHECK(a.nabla == b.nabla);
  }
}

TEST_CASE("change of splitting as a morphism, against the pullback oracle") {
  Dorfman2Rep D = dorfman_from_split(so3_crossed());
  PolyTensor phi = sample_phi(0, 3, 3, 7);
  Dorfman2Rep D2 = change_splitting(D, phi);
  SplitLie2 S = split_from_dorfman(D), S2 = split_from_dorfman(D2);
  Lie2Morphism fwd{PolyMatrix::identity(0, 3), PolyMatrix::identity(0, 3), phi};
  Lie2Morphism bwd{PolyMatrix::identity(0, 3), PolyMatrix::identity(0, 3), -phi};
  // The oracle is a chain map for the + sign in both directions.
  CHECK(intertwines(D2, D, make_pullback(D2, D, fwd, 1)));
  CHECK(intertwines(D, D2, make_pullback(D, D2, bwd, 1)));
  CHECK_FALSE(intertwines(D2, D, make_pullback(D2, D, fwd, -1)));
  CHECK_FALSE(intertwines(D, D2, make_pullback(D, D2, fwd, 1)));
  CHECK(check_lie2_morphism(S2, S, fwd).pass());
  CHECK(check_lie2_morphism(S, S2, bwd).pass());
  CHECK_FALSE(check_lie2_morphism(S, S2, fwd).pass());
}
