#include "doctest.h"

#include "lie2kit/courant.hpp"

using namespace lie2kit;

namespace {

// Metric TM-connection nabla_{d_m} = K_m G^{-1} for antisymmetric K_m.
LinearConnection metric_connection(const DegenerateCourant &C, const std::vector<PolyMatrix> &K) {
  int p = C.dim(), n = C.rank();
  PolyMatrix Gi = *C.pairing.inverse();
  LinearConnection nabla = LinearConnection::zero(PolyMatrix::identity(p, p), n);
  for (int m = 0; m < p; ++m) {
    PolyMatrix G = K[m] * Gi;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        nabla.gamma.set({m, j, k}, G(j, k));
  }
  return nabla;
}

PolyMatrix antisym(int p, int n, const std::vector<std::tuple<int, int, Poly>> &entries) {
  PolyMatrix K(p, n, n);
  for (auto &[i, j, v] : entries) {
    K(i, j) = v;
    K(j, i) = -v;
  }
  return K;
}

Poly c(int p, long v) { return Poly::constant(p, v); }
Poly x(int p, int i) { return Poly::var(p, i); }

// Standard Courant over R^2 with a curved metric connection.
LinearConnection curved_standard_r2() {
  DegenerateCourant C = standard_courant(2);
  return metric_connection(C, {antisym(2, 4, {{0, 1, x(2, 1)}, {0, 2, c(2, 1)}}),
                               antisym(2, 4, {{2, 3, x(2, 0)}, {1, 3, x(2, 0)}})});
}

LinearConnection flat(int p, int n) { return LinearConnection::zero(PolyMatrix::identity(p, p), n); }

// so(3) over a point as a Lie 2-algebroid with B = 0 and the symplectic partner dQ = -1/2.
LAPair so3_pair() { return tangent_double_pair(so3_killing(0), flat(0, 3)); }

} // namespace

TEST_CASE("so(3) with the Killing form is a quadratic Lie algebra") {
  CHECK(check_courant_axioms(so3_killing()).pass());
  DegenerateCourant bad = so3_killing();
  bad.pairing(0, 0) = c(0, 1);
  bad.pairing(1, 1) = c(0, 1);
  bad.pairing(2, 2) = c(0, 2);
  CheckReport rep = check_courant_axioms(bad);
  const CheckEntry *e = rep.first_failure();
  REQUIRE(e);
  CHECK(e->label == "CA2");
  CHECK(e->witness == "(e_1,e_2,e_3)");
}

TEST_CASE("quadratic Lie algebra corner cases") {
  PolyMatrix G = PolyMatrix::from_rationals(0, {{1, 3}, {3, -5}});
  CHECK(check_courant_axioms(quadratic_lie_algebra(2, PolyTensor(0, {2, 2, 2}), G)).pass());
  DegenerateCourant z = quadratic_lie_algebra(0, PolyTensor(0, {0, 0, 0}), PolyMatrix(0, 0, 0));
  CHECK(z.rank() == 0);
  CHECK(check_courant_axioms(z).pass());
  CHECK_THROWS_AS(quadratic_lie_algebra(2, PolyTensor(0, {2, 2, 2}),
                                        PolyMatrix::from_rationals(0, {{1, 1}, {0, 1}})),
                  PreconditionError);
}

TEST_CASE("standard Courant algebroid") {
  CHECK(standard_courant(0).rank() == 0);
  CHECK(check_courant_axioms(standard_courant(0)).pass());
  CHECK(check_courant_axioms(standard_courant(1)).pass());
  CHECK(check_courant_axioms(standard_courant(2)).pass());
  // [[(d_x, 0), (0, x dx)]] = L_{d_x}(x dx) = dx
  DegenerateCourant C = standard_courant(1);
  Section v = C.apply({c(1, 1), c(1, 0)}, {c(1, 0), x(1, 0)});
  CHECK(v == Section{c(1, 0), c(1, 1)});
  // i_Y d(xi) term: [[(0, x dx), (d_x, 0)]] = -i_{d_x} d(x dx) + d<..> = dx
  CHECK(C.apply({c(1, 0), x(1, 0)}, {c(1, 1), c(1, 0)}) == Section{c(1, 0), c(1, 0)});
}

TEST_CASE("a non-Leibniz D-map is detected") {
  DegenerateCourant C = standard_courant(1);
  C.dmap(1, 0) = c(1, 2);
  CheckReport rep = check_courant_axioms(C);
  CHECK_FALSE(rep.find("D-compat")->pass);
  CHECK_FALSE(rep.pass());
}

TEST_CASE("adjoint Dorfman 2-representations") {
  Dorfman2Rep D = adjoint_dorfman2rep(so3_killing(), flat(0, 3));
  CHECK(check_dorfman2rep(D).pass());
  CHECK(D.r.is_zero());
  CHECK(D.nabla.is_zero());
  // Delta_{e_1} eps_2 = eps_3 (coadjoint action through the Killing form)
  CHECK(D.delta.get({0, 1, 2}) == c(0, 1));

  Dorfman2Rep D1 = adjoint_dorfman2rep(standard_courant(1), flat(1, 2));
  CHECK(check_dorfman2rep(D1).pass());
  CHECK(D1.r.is_zero());
  CHECK(check_homological(D1).pass());

  Dorfman2Rep D2 = adjoint_dorfman2rep(standard_courant(2), curved_standard_r2());
  CHECK(check_dorfman2rep(D2).pass());
  CHECK(check_homological(D2).pass());

  Dorfman2Rep Z = adjoint_dorfman2rep(DegenerateCourant::zero(1, 0), flat(1, 0));
  CHECK(Z == Dorfman2Rep::zero(1, 0, 1));

  LinearConnection bad = flat(1, 2);
  bad.gamma.set({0, 0, 1}, c(1, 1));
  CHECK_THROWS_WITH_AS(adjoint_dorfman2rep(standard_courant(1), bad),
                       doctest::Contains("metric fails at (x,e_1,e_1)"), PreconditionError);
}

TEST_CASE("tangent double LA pairs") {
  struct Case {
    DegenerateCourant C;
    LinearConnection nabla;
  };
  DegenerateCourant so3r1 = so3_killing(1);
  std::vector<Case> cases{
      {so3_killing(), flat(0, 3)},
      {standard_courant(1), flat(1, 2)},
      {standard_courant(1), metric_connection(standard_courant(1), {antisym(1, 2, {{0, 1, x(1, 0)}})})},
      {so3r1, metric_connection(so3r1, {antisym(1, 3, {{0, 1, x(1, 0)}, {1, 2, c(1, 3)}})})},
      {standard_courant(2), curved_standard_r2()},
  };
  for (auto &k : cases) {
    LAPair P = tangent_double_pair(k.C, k.nabla);
    CheckReport rep = check_la_matched_pair(P);
    CHECK(rep.pass());
    if (!rep.pass())
      MESSAGE(rep.first_failure()->label << " " << rep.first_failure()->witness << " "
                                         << rep.first_failure()->residual);
    CHECK(check_q_preserves_poisson(P).pass());
    CHECK(check_core_morphism(P).pass());
    DegenerateCourant core = core_courant(P);
    CHECK(check_courant_axioms(core).pass());
    auto onq = core_courant_on_q(P);
    REQUIRE(onq.has_value());
    CHECK(*onq == k.C);
  }
}

namespace {

PolyTensor random_phi(int p, int rq, int rb, Rng &rng) {
  PolyTensor phi(p, {rq, rq, rb}, {{0, 2}});
  while (phi.is_zero())
    for (int i = 0; i < rq; ++i)
      for (int j = i + 1; j < rq; ++j)
        for (int l = 0; l < rb; ++l)
          phi.set({i, j, l}, rng.poly(p, 1));
  return phi;
}

DiracData dirac(int rq, int rb, std::vector<std::vector<Rational>> u,
                std::vector<std::vector<Rational>> bp) {
  return {rq, rb, std::move(u), std::move(bp)};
}

// so(3) with the coadjoint Dorfman connection, B = 0 and dQ = 0.
LAPair so3_poisson_pair() {
  LAPair P = so3_pair();
  P.S.dQ = PolyMatrix(0, 3, 3);
  return P;
}

} // namespace

TEST_CASE("so(3) symplectic pair") {
  LAPair P = so3_pair();
  CHECK(P.S.dQ == PolyMatrix::identity(0, 3).scale(Rational(-1, 2)));
  CHECK(check_la_matched_pair(P).pass());
  CheckReport q = check_q_preserves_poisson(P);
  CHECK(q.pass());
  // the core on Q^* transported back by dQ is so(3) with its Killing form
  CHECK(*core_courant_on_q(P) == so3_killing());

  LAPair bad = P;
  bad.S.dQ = PolyMatrix::from_rationals(0, {{1, 0, 0}, {0, 1, 0}, {0, 0, 2}});
  CheckReport rep = check_la_matched_pair(bad);
  const CheckEntry *m1 = rep.find("M1");
  REQUIRE(m1);
  CHECK_FALSE(m1->pass);
  CHECK(m1->witness == "(e_1,eps_2)");
  CHECK_FALSE(matched_conditions_pass(rep));
  CheckReport qb = check_q_preserves_poisson(bad);
  CHECK_FALSE(qb.find("(tau,tau)")->pass);
  CHECK(qb.find("cross-check")->pass);
  // almost_C agrees with M1 when the anchors agree (both anchors vanish here)
  CHECK(rep.find("almost_C")->pass == m1->pass);
  CHECK_THROWS_AS(core_courant(bad), PreconditionError);
}

TEST_CASE("zero LA pair has a zero core") {
  LAPair Z{SelfDual2Rep::zero(1, 2, 1), Dorfman2Rep::zero(1, 2, 1)};
  CHECK(check_la_matched_pair(Z).pass());
  CHECK(check_q_preserves_poisson(Z).pass());
  CHECK(core_courant(Z) == DegenerateCourant::zero(1, 2));
}

TEST_CASE("core Courant algebroid does not depend on the splitting") {
  DegenerateCourant so3r1 = so3_killing(1);
  std::vector<LAPair> pairs{
      tangent_double_pair(standard_courant(1),
                          metric_connection(standard_courant(1), {antisym(1, 2, {{0, 1, x(1, 0)}})})),
      tangent_double_pair(so3r1, metric_connection(so3r1, {antisym(1, 3, {{0, 2, x(1, 0)}})})),
      tangent_double_pair(standard_courant(2), curved_standard_r2()),
  };
  Rng rng(11);
  for (auto &P : pairs) {
    DegenerateCourant core = core_courant(P);
    for (int t = 0; t < 3; ++t) {
      PolyTensor phi = random_phi(P.dim(), P.rank_q(), P.rank_b(), rng);
      REQUIRE_FALSE(phi.is_zero());
      LAPair P2 = change_splitting(P, phi);
      CHECK_FALSE(P2 == P);
      CHECK(check_la_matched_pair(P2).pass());
      CHECK(check_q_preserves_poisson(P2).pass());
      CHECK(core_courant(P2) == core);
    }
    CHECK(change_splitting(P, PolyTensor(P.dim(), {P.rank_q(), P.rank_q(), P.rank_b()}, {{0, 2}})) == P);
  }
}

TEST_CASE("pullbacks of exact forms are central in the core") {
  LAPair P = tangent_double_pair(standard_courant(2), curved_standard_r2());
  DegenerateCourant core = core_courant(P);
  Rng rng(5);
  for (int t = 0; t < 4; ++t) {
    Poly f = rng.poly(2, 2);
    Section df = rho_star_d(P.D.rho, f);
    CHECK(df == core.D(f));
    for (int i = 0; i < core.rank(); ++i)
      CHECK(is_zero(core.apply(df, frame_section(2, core.rank(), i))));
    CHECK(is_zero(core.apply(df, rng.section(2, core.rank()))));
  }
}

TEST_CASE("standard Dorfman 2-representations") {
  // E of rank 1 over R, bracket = Lie bracket + 0
  DullBracket br = DullBracket::zero(PolyMatrix::from_rationals(1, {{1, 0}}));
  Dorfman2Rep D = standard_dorfman2rep(1, br);
  CHECK(check_dorfman2rep(D).pass());
  CHECK(check_homological(D).pass());
  CHECK(D.dB == PolyMatrix::from_rationals(1, {{0, 1}}));

  // A non-flat skew bracket with a Jacobiator: [[d_x, eps_1]] = x eps_2, [[eps_1, eps_2]] = eps_1
  DullBracket b2 = DullBracket::zero(PolyMatrix::from_rationals(1, {{1, 0, 0}}));
  b2.c.set({0, 1, 2}, x(1, 0));
  b2.c.set({1, 0, 2}, -x(1, 0));
  b2.c.set({1, 2, 1}, c(1, 1));
  b2.c.set({2, 1, 1}, c(1, -1));
  Dorfman2Rep D2 = standard_dorfman2rep(2, b2);
  CHECK(check_dorfman2rep(D2).pass());
  CHECK(check_homological(D2).pass());
  CHECK(split_from_dorfman(D2).l3 != PolyTensor(1, {3, 3, 3, 2}, {{0, 3}}));

  CHECK(standard_dorfman2rep(0, DullBracket::zero(PolyMatrix(0, 0, 0))) == Dorfman2Rep::zero(0, 0, 0));

  DullBracket bad = br;
  bad.c.set({0, 1, 0}, c(1, 1));
  bad.c.set({1, 0, 0}, c(1, -1));
  CHECK_THROWS_WITH_AS(standard_dorfman2rep(1, bad), doctest::Contains("not the Lie bracket"),
                       PreconditionError);
}

TEST_CASE("semi-direct Dorfman 2-representations") {
  // zero 2-rep
  LieAlgebroid A = LieAlgebroid::zero(1, 1);
  TwoRep Z{A, PolyMatrix(1, 1, 1), LinearConnection::zero(A.rho, 1), LinearConnection::zero(A.rho, 1),
           PolyTensor(1, {1, 1, 1, 1}, {{0, 2}})};
  CHECK(semidirect_dorfman2rep(Z) == Dorfman2Rep::zero(1, 2, 1));

  // (Id_E, nabla, nabla, 0) over R with a flat connection on E of rank 2
  LinearConnection n = LinearConnection::zero(PolyMatrix::identity(1, 1), 2);
  n.gamma.set({0, 0, 1}, x(1, 0));
  Dorfman2Rep D = semidirect_dorfman2rep(connection_two_rep(n));
  CHECK(check_dorfman2rep(D).pass());
  CHECK(check_homological(D).pass());

  // adjoint 2-rep of so(3) over a point
  LieAlgebroid g = LieAlgebroid::zero(0, 3);
  g.c = so3_killing().bracket;
  Dorfman2Rep Dg = semidirect_dorfman2rep(adjoint_two_rep(g, LinearConnection::zero(PolyMatrix::identity(0, 0), 3)));
  CHECK(check_dorfman2rep(Dg).pass());
  CHECK(check_homological(Dg).pass());

  // curved: tangent double 2-rep of TR^2 with a non-flat connection
  LinearConnection cr = LinearConnection::zero(PolyMatrix::identity(2, 2), 2);
  cr.gamma.set({0, 0, 1}, x(2, 1));
  cr.gamma.set({1, 1, 0}, x(2, 0));
  TwoRep T = connection_two_rep(cr);
  REQUIRE_FALSE(T.r.is_zero());
  Dorfman2Rep Dc = semidirect_dorfman2rep(T);
  CHECK(check_dorfman2rep(Dc).pass());
  CHECK(check_homological(Dc).pass());

  // the opposite sign on the A^* block breaks D4b
  Dorfman2Rep flipped = Dc;
  for (auto &[idx, v] : Dc.r.entries())
    if (idx[3] < 2)
      flipped.r.set(idx, -v);
  CHECK(check_dorfman2rep(flipped).find("D4b")->pass == false);
  CHECK_FALSE(check_homological(flipped).pass());

  TwoRep broken = T;
  broken.r.add({0, 1, 0, 0}, c(2, 1));
  CHECK_THROWS_AS(semidirect_dorfman2rep(broken), PreconditionError);
}

TEST_CASE("Dirac structures in so(3)") {
  LAPair P = so3_pair();
  DiracData e3 = dirac(3, 0, {{0, 0, 1}}, {});
  CHECK(check_dirac(P.D, nullptr, e3, DiracMode::vb_dirac).pass());
  DiracData e12 = dirac(3, 0, {{1, 0, 0}, {0, 1, 0}}, {});
  CheckReport rep = check_dirac(P.D, nullptr, e12, DiracMode::vb_dirac);
  const CheckEntry *f = rep.first_failure();
  REQUIRE(f);
  CHECK(f->label == "(3)");
  CHECK(f->witness == "(e_1,e_2)");
  CHECK(f->residual == "e_3");

  LieAlgebroid A = induced_lie_algebroid_on_U(P.D, e3);
  CHECK(A == LieAlgebroid::zero(0, 1));
  LieAlgebroid full = induced_lie_algebroid_on_U(P.D, dirac(3, 0, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {}));
  CHECK(full.c == so3_killing().bracket);
  CHECK(check_lie_algebroid(full).pass());
  // a non-unit basis of span(e_1 + e_2, e_3) is not closed: [e_1+e_2, e_3] = e_2 - e_1
  CHECK_FALSE(check_dirac(P.D, nullptr, dirac(3, 0, {{1, 1, 0}, {0, 0, 1}}, {}), DiracMode::vb_dirac).pass());
  CHECK_THROWS_AS(induced_lie_algebroid_on_U(P.D, e12), PreconditionError);

  // With the symplectic dQ, U^0 = span(eps_1, eps_2) is not mapped into span(e_3).
  CHECK_FALSE(check_dirac(P.D, &P.S, e3, DiracMode::la_subalgebroid).pass());
  LAPair Pp = so3_poisson_pair();
  CHECK(check_dirac(Pp.D, &Pp.S, e3, DiracMode::la_dirac).pass());
  CHECK_THROWS_AS(check_dirac(P.D, nullptr, e3, DiracMode::la_dirac), PreconditionError);
  CHECK_THROWS_AS(check_dirac(P.D, nullptr, dirac(3, 0, {{1, 0, 0}, {2, 0, 0}}, {}), DiracMode::vb_dirac),
                  StructuralError);
}

TEST_CASE("zero structure: every subspace is Dirac") {
  LAPair Z{SelfDual2Rep::zero(1, 3, 2), Dorfman2Rep::zero(1, 3, 2)};
  std::vector<DiracData> data{dirac(3, 2, {}, {}), dirac(3, 2, {{1, 2, 0}}, {{0, 1}}),
                              dirac(3, 2, {{1, 0, 0}, {0, 1, 1}}, {{1, 0}, {0, 1}})};
  for (auto &d : data)
    for (DiracMode m : {DiracMode::vb_dirac, DiracMode::la_subalgebroid, DiracMode::la_dirac})
      CHECK(check_dirac(Z.D, &Z.S, d, m).pass());
  LieAlgebroid A = induced_lie_algebroid_on_U(Z.D, data[2]);
  CHECK(A == LieAlgebroid::zero(1, 2));
}

TEST_CASE("Manin pairs from LA-Dirac structures") {
  LAPair Pp = so3_poisson_pair();
  // U = Q: the double g + g^* with the coadjoint action
  ManinPairResult M = manin_pair(Pp, dirac(3, 0, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {}));
  CHECK(check_manin_pair(M).pass());
  DegenerateCourant &B = M.courant;
  REQUIRE(B.rank() == 6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(B.pairing(i, 3 + j) == c(0, i == j));
      CHECK(B.pairing(i, j).is_zero());
      CHECK(B.pairing(3 + i, 3 + j).is_zero());
      for (int k = 0; k < 3; ++k) {
        // eps_{ijk}: [e_i,e_j] = e_k, ad^*_{e_i} eps_j = eps_{ijk} eps_k
        int s = (j - i + 3) % 3 == 1 && (k - j + 3) % 3 == 1 ? 1 : (i - j + 3) % 3 == 1 && (j - k + 3) % 3 == 1 ? -1 : 0;
        if (i == j || j == k || i == k)
          s = 0;
        CHECK(B.bracket.get({i, j, k}) == c(0, s));
        CHECK(B.bracket.get({i, 3 + j, 3 + k}) == c(0, s));
        CHECK(B.bracket.get({3 + j, i, 3 + k}) == c(0, -s));
        CHECK(B.bracket.get({3 + i, 3 + j, k}).is_zero());
        CHECK(B.bracket.get({3 + i, 3 + j, 3 + k}).is_zero());
      }
    }

  ManinPairResult M3 = manin_pair(Pp, dirac(3, 0, {{0, 0, 1}}, {}));
  CHECK(check_manin_pair(M3).pass());
  CHECK(M3.courant.rank() == 2);
  CHECK(M3.complement == std::vector<std::vector<Rational>>{{0, 0, 1}});

  // TM inside the tangent double of the standard Courant algebroid over R
  DegenerateCourant C = standard_courant(1);
  LAPair Pt = tangent_double_pair(C, metric_connection(C, {antisym(1, 2, {{0, 1, x(1, 0)}})}));
  DiracData tm = dirac(2, 1, {{1, 0}}, {{1}});
  CHECK(check_dirac(Pt.D, &Pt.S, tm, DiracMode::la_dirac).pass());
  ManinPairResult Mt = manin_pair(Pt, tm);
  CheckReport rt = check_manin_pair(Mt);
  CHECK(rt.pass());

  // symplectic so(3) with U = 0 is rejected; rank-0 output for the zero pair
  LAPair P = so3_pair();
  CHECK_THROWS_AS(manin_pair(P, dirac(3, 0, {}, {})), PreconditionError);
  LAPair Z{SelfDual2Rep::zero(0, 2, 0), Dorfman2Rep::zero(0, 2, 0)};
  ManinPairResult Mz = manin_pair(Z, dirac(2, 0, {}, {}));
  CHECK(Mz.courant.rank() == 0);
  CHECK(check_manin_pair(Mz).pass());
  LAPair Z0{SelfDual2Rep::zero(0, 0, 0), Dorfman2Rep::zero(0, 0, 0)};
  CHECK(manin_pair(Z0, dirac(0, 0, {}, {})).courant.rank() == 0);
}
