#ifndef LIE2KIT_BUNDLE_HPP
#define LIE2KIT_BUNDLE_HPP

#include "lie2kit/report.hpp"
#include "lie2kit/section.hpp"

#include <cstdint>

namespace lie2kit {

// ---- connections and brackets -------------------------------------------------

/// Connection of an anchored bundle A (anchor p x rA) on a bundle B:
/// nabla_{a_i} b_j = sum_k gamma[i][j][k] b_k.
struct LinearConnection {
  PolyMatrix rho;
  PolyTensor gamma;

  static LinearConnection zero(const PolyMatrix &rho, int module_rank);
  int dim() const { return rho.dim(); }
  int acting_rank() const { return rho.cols(); }
  int module_rank() const { return gamma.shape()[1]; }
  Section apply(const Section &a, const Section &b) const;
  /// Dual connection on B^*.
  LinearConnection dual() const;
  bool operator==(const LinearConnection &o) const { return rho == o.rho && gamma == o.gamma; }
};

struct DullBracket;

/// Dorfman connection of Q on Q^*: Delta_{q_i} tau_j = sum_k d[i][j][k] tau_k.
struct DorfmanConnection {
  PolyMatrix rho;
  PolyTensor d;

  static DorfmanConnection zero(const PolyMatrix &rho);
  int dim() const { return rho.dim(); }
  int rank() const { return rho.cols(); }
  Section apply(const Section &q, const Section &tau) const;
  DullBracket dual_bracket() const;
  bool operator==(const DorfmanConnection &o) const { return rho == o.rho && d == o.d; }
};

/// Dull bracket on Q: [[q_i, q_j]] = sum_k c[i][j][k] q_k, extended by
/// [[f q1, g q2]] = f g [[q1,q2]] + f rho(q1)(g) q2 - g rho(q2)(f) q1.
struct DullBracket {
  PolyMatrix rho;
  PolyTensor c;

  static DullBracket zero(const PolyMatrix &rho);
  int dim() const { return rho.dim(); }
  int rank() const { return rho.cols(); }
  Section apply(const Section &a, const Section &b) const;
  bool skew() const;
  DorfmanConnection dual_dorfman() const;
  bool operator==(const DullBracket &o) const { return rho == o.rho && c == o.c; }
};

/// R_nabla(a1,a2) b.
Section curvature(const LinearConnection &nabla, const DullBracket &br, const Section &a1,
                  const Section &a2, const Section &b);
/// R_Delta(q1,q2) tau.
Section curvature(const DorfmanConnection &delta, const DullBracket &br, const Section &q1,
                  const Section &q2, const Section &tau);
/// [[[[q1,q2]],q3]] + [[q2,[[q1,q3]]]] - [[q1,[[q2,q3]]]].
Section jacobiator(const DullBracket &br, const Section &q1, const Section &q2, const Section &q3);

/// Frame components: [i][j][l][k] = coefficient of the k-th frame element.
PolyTensor curvature_form(const LinearConnection &nabla, const DullBracket &br);
PolyTensor curvature_form(const DorfmanConnection &delta, const DullBracket &br);
PolyTensor jacobiator_form(const DullBracket &br);

CheckReport check_dorfman_duality(const DorfmanConnection &delta, std::uint64_t seed = kDefaultSeed);
CheckReport check_curv_dual_jac(const DorfmanConnection &delta, std::uint64_t seed = kDefaultSeed);

// ---- Lie algebroids and 2-representations ------------------------------------

struct LieAlgebroid {
  PolyMatrix rho;
  PolyTensor c;

  static LieAlgebroid zero(int dim, int rank);
  int dim() const { return rho.dim(); }
  int rank() const { return rho.cols(); }
  DullBracket bracket() const { return {rho, c}; }
  bool operator==(const LieAlgebroid &o) const { return rho == o.rho && c == o.c; }
};

/// stem names the frame in witnesses (e_1, e_2, ... by default).
CheckReport check_lie_algebroid(const LieAlgebroid &A, std::uint64_t seed = kDefaultSeed,
                                const std::string &stem = "e");

/// 2-representation of A on d: C -> B with connections nabla_b (on B),
/// nabla_c (on C) and curvature r: R(a_i,a_j) b_l = sum_k r[i][j][l][k] c_k.
struct TwoRep {
  LieAlgebroid A;
  PolyMatrix d; // rB x rC
  LinearConnection nabla_b;
  LinearConnection nabla_c;
  PolyTensor r;

  int dim() const { return A.dim(); }
  int rank_b() const { return d.rows(); }
  int rank_c() const { return d.cols(); }
  Section curv(const Section &a1, const Section &a2, const Section &b) const;
  bool operator==(const TwoRep &o) const {
    return A == o.A && d == o.d && nabla_b == o.nabla_b && nabla_c == o.nabla_c && r == o.r;
  }
};

/// Frame stems used in witnesses: the algebroid, the module B and C.
struct TwoRepFrames {
  std::string a = "a", b = "b", c = "c";
};

void validate(const TwoRep &T);
CheckReport check_two_rep(const TwoRep &T, std::uint64_t seed = kDefaultSeed,
                          const TwoRepFrames &names = {});
TwoRep dualize_two_rep(const TwoRep &T);

/// TM in the coordinate frame: rho = id, zero brackets.
LieAlgebroid tangent_algebroid(int dim);
/// (Id_E, nabla, nabla, R_nabla) for a TM-connection nabla on E.
TwoRep connection_two_rep(const LinearConnection &nabla);
/// Adjoint 2-representation of A on rho: A -> TM for a TM-connection nabla on A:
/// basic connections on TM and A and the basic curvature.
TwoRep adjoint_two_rep(const LieAlgebroid &A, const LinearConnection &nabla);

} // namespace lie2kit

#endif
