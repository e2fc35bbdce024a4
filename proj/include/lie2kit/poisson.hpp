#ifndef LIE2KIT_POISSON_HPP
#define LIE2KIT_POISSON_HPP

#include "lie2kit/bundle.hpp"
#include "lie2kit/graded.hpp"

namespace lie2kit {

/// Self-dual 2-representation of a Lie algebroid B on dQ: Q^* -> Q.
///   dQ(tau_j) = sum_k dQ(k, j) q_k
///   nabla_{b_i} q_j = sum_k nabla[i][j][k] q_k      (nabla^* acts on Q^*)
///   <R_B(b_i,b_j) q_k, q_l> = rb[i][j][k][l]          (antisymmetric in i,j and in k,l)
struct SelfDual2Rep {
  LieAlgebroid B;
  PolyMatrix dQ;
  PolyTensor nabla;
  PolyTensor rb;

  static SelfDual2Rep zero(int dim, int rq, int rb);
  int dim() const { return B.dim(); }
  int rank_q() const { return dQ.rows(); }
  int rank_b() const { return B.rank(); }
  GradedSignature signature() const { return {dim(), rank_q(), rank_b()}; }
  LinearConnection connection() const { return {B.rho, nabla}; }
  /// The underlying 2-representation: A = B, module Q, C = Q^*, d = dQ.
  TwoRep two_rep() const;
  bool operator==(const SelfDual2Rep &o) const {
    return B == o.B && dQ == o.dQ && nabla == o.nabla && rb == o.rb;
  }
};

void validate(const SelfDual2Rep &S);

CheckReport check_selfdual2rep(const SelfDual2Rep &S, std::uint64_t seed = kDefaultSeed);

/// Hamiltonian derivation {z, .} of a generator (order x, tau, b as in generators()).
GradedDerivation hamiltonian(const SelfDual2Rep &S, int generator);
/// Hamiltonian derivation {f, .} of a degree-0 function.
GradedDerivation hamiltonian(const SelfDual2Rep &S, const Poly &f);

/// Degree -2 Poisson bracket, extended from generator values by the graded
/// Leibniz rule in both slots.
GradedFunction poisson_bracket(const SelfDual2Rep &S, const GradedFunction &xi,
                               const GradedFunction &eta);

/// Graded skew-symmetry and Jacobi on all generator pairs and triples, plus a
/// cross-check entry comparing the verdict with check_selfdual2rep.
CheckReport check_graded_jacobi(const SelfDual2Rep &S, std::uint64_t seed = kDefaultSeed);

/// rho_B and dQ are isomorphisms (determinants are nonzero constants).
bool is_symplectic(const SelfDual2Rep &S);

} // namespace lie2kit

#endif
