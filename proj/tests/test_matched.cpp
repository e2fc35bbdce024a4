#include "doctest.h"

#include "lie2kit/matched.hpp"

using namespace lie2kit;

namespace {

// Over a point: A = R a acts on the abelian B = R b by nabla_a b = b, B acts trivially, C = 0.
MatchedPair2Reps axb() {
  LieAlgebroid A = LieAlgebroid::zero(0, 1), B = LieAlgebroid::zero(0, 1);
  TwoRep on_b{A, PolyMatrix(0, 1, 0), LinearConnection::zero(A.rho, 1),
              LinearConnection::zero(A.rho, 0), PolyTensor(0, {1, 1, 1, 0}, {{0, 2}})};
  on_b.nabla_b.gamma.set({0, 0, 0}, Poly::constant(0, 1));
  TwoRep on_a{B, PolyMatrix(0, 1, 0), LinearConnection::zero(B.rho, 1),
              LinearConnection::zero(B.rho, 0), PolyTensor(0, {1, 1, 1, 0}, {{0, 2}})};
  return {on_b, on_a};
}

// Curved TM-connection on TR^2: nabla_dx e1 = y e2, nabla_dy e2 = x e1 + e2.
LinearConnection curved_r2() {
  LinearConnection n = LinearConnection::zero(PolyMatrix::identity(2, 2), 2);
  n.gamma.set({0, 0, 1}, Poly::var(2, 1));
  n.gamma.set({1, 1, 0}, Poly::var(2, 0));
  n.gamma.set({1, 1, 1}, Poly::constant(2, 1));
  return n;
}

// Tangent double of the Lie algebroid A with a TM-connection: A acts on
// rho: A -> TM by the adjoint 2-rep, TM acts on id: A -> A by (nabla, nabla, R_nabla).
MatchedPair2Reps tangent_double(const LieAlgebroid &A, const LinearConnection &n) {
  return {adjoint_two_rep(A, n), connection_two_rep(n)};
}

// Over R: rho(e1) = d/dx, rho(e2) = x d/dx, [e1, e2] = e1.
LieAlgebroid action_r1() {
  LieAlgebroid A = LieAlgebroid::zero(1, 2);
  A.rho(0, 0) = Poly::constant(1, 1);
  A.rho(0, 1) = Poly::var(1, 0);
  A.c.set({0, 1, 0}, Poly::constant(1, 1));
  A.c.set({1, 0, 0}, Poly::constant(1, -1));
  return A;
}

} // namespace

TEST_CASE("C = 0 matched pair of Lie algebras gives the ax+b algebra") {
  MatchedPair2Reps M = axb();
  CHECK(check_matched_two_reps(M).pass());
  SplitLie2 S = bicrossproduct(M);
  CHECK(S.l3.is_zero());
  CHECK(S.rank_b() == 0);
  // [a, b] = b
  CHECK(S.bracket.get({0, 1, 1}) == Poly::constant(0, 1));
  CHECK(S.bracket.get({0, 1, 0}).is_zero());
  CHECK(check_homological(dorfman_from_split(S)).pass());
  CHECK(decompose_bicrossproduct(S, 1) == M);
}

TEST_CASE("tangent double of TR^2 with a curved connection is a matched pair") {
  MatchedPair2Reps M = tangent_double(tangent_algebroid(2), curved_r2());
  CHECK_FALSE(M.on_b.r.is_zero());
  CHECK_FALSE(M.on_a.r.is_zero());
  CheckReport rep = check_matched_two_reps(M);
  CHECK(rep.pass());
  SplitLie2 S = bicrossproduct(M);
  Dorfman2Rep D = dorfman_from_split(S);
  CHECK(check_dorfman2rep(D).pass());
  CHECK(check_homological(D).pass());
  CHECK(decompose_bicrossproduct(S, 2) == M);
  CHECK(bicrossproduct(decompose_bicrossproduct(S, 2)) == S);
}

TEST_CASE("tangent double of an action algebroid over R") {
  LinearConnection n = LinearConnection::zero(PolyMatrix::identity(1, 1), 2);
  n.gamma.set({0, 0, 1}, Poly::var(1, 0));
  n.gamma.set({0, 1, 0}, Poly::constant(1, 1));
  MatchedPair2Reps M = tangent_double(action_r1(), n);
  CHECK(check_matched_two_reps(M).pass());
  CHECK(check_homological(dorfman_from_split(bicrossproduct(M))).pass());
}

TEST_CASE("condition (7) detects a perturbed curvature") {
  MatchedPair2Reps M = tangent_double(tangent_algebroid(2), curved_r2());
  M.on_a.r.add({0, 1, 0, 0}, Poly::var(2, 0));
  CHECK_FALSE(check_matched_two_reps(M).pass());
}

TEST_CASE("breaking condition (2)") {
  MatchedPair2Reps M = tangent_double(tangent_algebroid(2), curved_r2());
  M.on_a.nabla_b.gamma.add({0, 0, 0}, Poly::constant(2, 1));
  CheckReport rep = check_matched_two_reps(M);
  const CheckEntry *e = rep.find("(2)");
  REQUIRE(e);
  CHECK_FALSE(e->pass);
  CHECK_FALSE(e->witness.empty());
  CHECK_THROWS_AS(bicrossproduct(M), PreconditionError);
}

TEST_CASE("all-zero matched pair and zero bicrossproduct") {
  LieAlgebroid A = LieAlgebroid::zero(1, 1), B = LieAlgebroid::zero(1, 2);
  MatchedPair2Reps M{TwoRep{A, PolyMatrix(1, 2, 1), LinearConnection::zero(A.rho, 2),
                            LinearConnection::zero(A.rho, 1), PolyTensor(1, {1, 1, 2, 1}, {{0, 2}})},
                     TwoRep{B, PolyMatrix(1, 1, 1), LinearConnection::zero(B.rho, 1),
                            LinearConnection::zero(B.rho, 1), PolyTensor(1, {2, 2, 1, 1}, {{0, 2}})}};
  CHECK(check_matched_two_reps(M).pass());
  SplitLie2 S = bicrossproduct(M);
  CHECK(S == SplitLie2::zero(1, 3, 1));
  CHECK(decompose_bicrossproduct(S, 1) == M);
}

TEST_CASE("decompose rejects a bracket leaking from A into B") {
  SplitLie2 S = SplitLie2::zero(0, 3, 0);
  S.bracket.set({0, 1, 2}, Poly::constant(0, 1));
  S.bracket.set({1, 0, 2}, Poly::constant(0, -1));
  CHECK_THROWS_WITH_AS(decompose_bicrossproduct(S, 2),
                       doctest::Contains("A-frame bracket leaks into B at (a_1,a_2)"),
                       PreconditionError);
}
