#ifndef LIE2KIT_LIE2_HPP
#define LIE2KIT_LIE2_HPP

#include "lie2kit/bundle.hpp"
#include "lie2kit/graded.hpp"

namespace lie2kit {

/// Dorfman 2-representation (dB, Delta, nabla, R) of an anchored bundle Q on
/// B + Q^*, in frame components:
///   dB(tau_k) = sum_l dB(l, k) b_l
///   Delta_{q_i} tau_j = sum_k delta[i][j][k] tau_k
///   nabla_{q_i} b_j = sum_k nabla[i][j][k] b_k
///   R(q_i, q_j) b_l = sum_k r[i][j][l][k] tau_k   (antisymmetric in i, j)
struct Dorfman2Rep {
  PolyMatrix rho; // p x rQ
  PolyMatrix dB;  // rB x rQ
  PolyTensor delta;
  PolyTensor nabla;
  PolyTensor r;

  static Dorfman2Rep zero(int dim, int rq, int rb);
  int dim() const { return rho.dim(); }
  int rank_q() const { return rho.cols(); }
  int rank_b() const { return dB.rows(); }
  GradedSignature signature() const { return {dim(), rank_q(), rank_b()}; }

  DorfmanConnection dorfman() const { return {rho, delta}; }
  DullBracket bracket() const { return dorfman().dual_bracket(); }
  LinearConnection connection() const { return {rho, nabla}; }
  /// R(q1,q2) b in Q^*.
  Section curv(const Section &q1, const Section &q2, const Section &b) const;
  /// omega_R(q1,q2,q3) = R(q1,q2)^* q3 in B^*.
  Section omega(const Section &q1, const Section &q2, const Section &q3) const;
  Section d_b(const Section &tau) const { return dB.apply(tau); }
  Section d_b_star(const Section &xi) const { return dB.transpose().apply(xi); }

  bool operator==(const Dorfman2Rep &o) const {
    return rho == o.rho && dB == o.dB && delta == o.delta && nabla == o.nabla && r == o.r;
  }
};

/// Split Lie 2-algebroid on Q + B^*: l1: B^* -> Q, skew dull bracket on Q,
/// connection nabla of Q on B, l3 in Omega^3(Q, B^*) with
/// l3(q_i,q_j,q_k)(b_l) = l3[i][j][k][l].
struct SplitLie2 {
  PolyMatrix rho; // p x rQ
  PolyMatrix l1;  // rQ x rB
  PolyTensor bracket;
  PolyTensor nabla;
  PolyTensor l3;

  static SplitLie2 zero(int dim, int rq, int rb);
  int dim() const { return rho.dim(); }
  int rank_q() const { return rho.cols(); }
  int rank_b() const { return l1.cols(); }
  bool operator==(const SplitLie2 &o) const {
    return rho == o.rho && l1 == o.l1 && bracket == o.bracket && nabla == o.nabla && l3 == o.l3;
  }
};

void validate(const Dorfman2Rep &D);
void validate(const SplitLie2 &S);

Dorfman2Rep dorfman_from_split(const SplitLie2 &S);
/// Inverse of dorfman_from_split; requires a skew bracket and an alternating omega_R.
SplitLie2 split_from_dorfman(const Dorfman2Rep &D);

CheckReport check_dorfman2rep(const Dorfman2Rep &D, std::uint64_t seed = kDefaultSeed);

GradedDerivation build_homological_field(const Dorfman2Rep &D);
CheckReport check_homological(const Dorfman2Rep &D, std::uint64_t seed = kDefaultSeed);

/// phi(q_i, q_j)(b_l) = phi[i][j][l], antisymmetric in i, j.
Dorfman2Rep change_splitting(const Dorfman2Rep &D, const PolyTensor &phi);
/// d_{nabla^*} phi (q1,q2,q3) in B^* with the connection nabla and the bracket br.
Section cartan_d2(const LinearConnection &nabla_b, const DullBracket &br, const PolyTensor &phi,
                  const Section &q1, const Section &q2, const Section &q3);
/// phi(q1,q2) in B^* for phi in Gamma(Q^* ^ Q^* (x) B^*).
Section eval_two_form(const PolyTensor &phi, const Section &q1, const Section &q2);

/// Morphism (muQ: Q1 -> Q2, muB: B1^* -> B2^*, mu12 in Omega^2(Q1, B2^*))
/// over the identity on the base.
struct Lie2Morphism {
  PolyMatrix mu_q;  // rQ2 x rQ1
  PolyMatrix mu_b;  // rB2 x rB1
  PolyTensor mu12;  // [rQ1, rQ1, rB2], antisymmetric in the first two slots
};

CheckReport check_lie2_morphism(const SplitLie2 &S1, const SplitLie2 &S2, const Lie2Morphism &mu,
                                std::uint64_t seed = kDefaultSeed);

} // namespace lie2kit

#endif
