#ifndef LIE2KIT_MATCHED_HPP
#define LIE2KIT_MATCHED_HPP

#include "lie2kit/lie2.hpp"
#include "lie2kit/poisson.hpp"

namespace lie2kit {

// ---- matched pairs of 2-representations ---------------------------------------

/// A acts on dB: C -> B (on_b) and B acts on dA: C -> A (on_a). The Lie
/// algebroids are on_b.A (= A) and on_a.A (= B).
struct MatchedPair2Reps {
  TwoRep on_b;
  TwoRep on_a;

  int dim() const { return on_b.dim(); }
  int rank_a() const { return on_b.A.rank(); }
  int rank_b() const { return on_a.A.rank(); }
  int rank_c() const { return on_b.rank_c(); }
  const LieAlgebroid &A() const { return on_b.A; }
  const LieAlgebroid &B() const { return on_a.A; }
  bool operator==(const MatchedPair2Reps &o) const { return on_b == o.on_b && on_a == o.on_a; }
};

void validate(const MatchedPair2Reps &M);

/// Conditions (1)-(7), the two derived anchor identities and the component
/// 2-rep checks (prefixed "A:" and "B:").
CheckReport check_matched_two_reps(const MatchedPair2Reps &M, std::uint64_t seed = kDefaultSeed);

/// Split Lie 2-algebroid on (A + B) + C. The Q-frame is a_1..a_rA, b_1..b_rB;
/// the B^*-frame of the split Lie 2-algebroid is the frame of C.
SplitLie2 bicrossproduct(const MatchedPair2Reps &M, std::uint64_t seed = kDefaultSeed);

/// Inverse of bicrossproduct; the first rank_a frame elements span A.
MatchedPair2Reps decompose_bicrossproduct(const SplitLie2 &S, int rank_a);

// ---- matched pairs of a self-dual 2-rep and a Dorfman 2-rep ----------------------

/// S: B acting on dQ: Q^* -> Q; D: Q acting on dB: Q^* -> B.
struct LAPair {
  SelfDual2Rep S;
  Dorfman2Rep D;

  int dim() const { return D.dim(); }
  int rank_q() const { return D.rank_q(); }
  int rank_b() const { return D.rank_b(); }
  bool operator==(const LAPair &o) const { return S == o.S && D == o.D; }
};

void validate(const LAPair &P);

/// M1-M5, the redundant forms almost_C and LC10, the anchor identities and
/// the component checks (prefixed "S:" and "D:").
CheckReport check_la_matched_pair(const LAPair &P, std::uint64_t seed = kDefaultSeed);

/// Verdict of the matched-pair conditions alone (no component checks).
bool matched_conditions_pass(const CheckReport &la_report);

/// Q{xi,eta} = {Q xi, eta} + (-1)^|xi| {xi, Q eta} on all generator pairs,
/// plus a cross-check against check_la_matched_pair.
CheckReport check_q_preserves_poisson(const LAPair &P, std::uint64_t seed = kDefaultSeed);

/// Change of Lagrangian splitting by phi in Gamma(Q^* ^ Q^* (x) B^*), phi[i][j][l] =
/// phi(q_i,q_j)(b_l). On the self-dual side phi_12(b)(q) = sum_k phi(q,q_k)(b) eps_k
/// shifts nabla by dQ o phi_12 and R_B by the Hom-differential of phi_12 plus the quadratic term.
SelfDual2Rep change_splitting(const SelfDual2Rep &S, const PolyTensor &phi);
LAPair change_splitting(const LAPair &P, const PolyTensor &phi);

} // namespace lie2kit

#endif
