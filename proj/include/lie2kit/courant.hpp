#ifndef LIE2KIT_COURANT_HPP
#define LIE2KIT_COURANT_HPP

#include "lie2kit/matched.hpp"

#include <optional>

namespace lie2kit {

// ---- degenerate Courant algebroids -------------------------------------------

/// Degenerate Courant algebroid on a trivialized bundle E of rank n:
///   rho        p x n anchor
///   pairing    n x n symmetric, possibly degenerate
///   bracket    [[e_i, e_j]] = sum_k bracket[i][j][k] e_k (no symmetry assumed)
///   dmap       n x p, D f = sum_m (d_m f) * column m
/// The bracket is extended to all sections by
///   [[e1, g e2]] = g [[e1,e2]] + rho(e1)(g) e2
///   [[f e1, e2]] = f [[e1,e2]] - rho(e2)(f) e1 + <e1,e2> D f.
struct DegenerateCourant {
  PolyMatrix rho;
  PolyMatrix pairing;
  PolyTensor bracket;
  PolyMatrix dmap;

  static DegenerateCourant zero(int dim, int rank);
  int dim() const { return rho.dim(); }
  int rank() const { return rho.cols(); }

  Section anchor(const Section &e) const { return rho.apply(e); }
  Poly pair(const Section &e1, const Section &e2) const;
  Section D(const Poly &f) const;
  Section apply(const Section &e1, const Section &e2) const;

  bool operator==(const DegenerateCourant &o) const {
    return rho == o.rho && pairing == o.pairing && bracket == o.bracket && dmap == o.dmap;
  }
};

void validate(const DegenerateCourant &C);

/// CA1-CA5 on frame and random sections, D-compatibility, rho o D = 0 and
/// symmetry of the pairing. stem names the frame in witnesses.
CheckReport check_courant_axioms(const DegenerateCourant &C, std::uint64_t seed = kDefaultSeed,
                                 const std::string &stem = "e");

/// Structure transported along a bundle isomorphism M: E -> E' (constant-determinant).
DegenerateCourant transport(const DegenerateCourant &C, const PolyMatrix &M);

// ---- example classes -----------------------------------------------------------

/// Over a point: rho = 0, D = 0.
DegenerateCourant quadratic_lie_algebra(int rank, const PolyTensor &structure_constants,
                                        const PolyMatrix &pairing);
/// Over R^dim (dim = 0 or the dimension of the constants), structure constants
/// c[i][j][k] of so(3) in the frame with [e_1,e_2] = e_3 and Killing form -2 I.
DegenerateCourant so3_killing(int dim = 0);
/// TM + T^*M with the Dorfman bracket; frame d/dx_1.., dx_1...
DegenerateCourant standard_courant(int p);

/// (rho G^{-1}, basic Dorfman connection, basic connection, basic curvature) of
/// a Courant algebroid with a metric TM-connection; Q = E, Q^* = E^* in the dual frame.
Dorfman2Rep adjoint_dorfman2rep(const DegenerateCourant &C, const LinearConnection &nabla,
                                std::uint64_t seed = kDefaultSeed);
/// Self-dual partner of the adjoint Dorfman 2-rep: TM acting on G^{-1}: E^* -> E
/// by the metric connection, with its curvature.
SelfDual2Rep adjoint_selfdual2rep(const DegenerateCourant &C, const LinearConnection &nabla);
/// The LA pair of the tangent double of C.
LAPair tangent_double_pair(const DegenerateCourant &C, const LinearConnection &nabla,
                           std::uint64_t seed = kDefaultSeed);
/// <nabla_X e1, e2> + <e1, nabla_X e2> = X <e1, e2>.
CheckReport check_metric_connection(const DegenerateCourant &C, const LinearConnection &nabla);

/// Q = TM + E^* anchored by the projection, B = E, Q^* = T^*M + E in the dual frame.
Dorfman2Rep standard_dorfman2rep(int rank_e, const DullBracket &bracket);
/// Q = A + C^*, B, Q^* = A^* + C in the dual frame.
Dorfman2Rep semidirect_dorfman2rep(const TwoRep &T, std::uint64_t seed = kDefaultSeed);

// ---- core of an LA pair ---------------------------------------------------------

/// Degenerate Courant algebroid on Q^* (frame eps_i).
DegenerateCourant core_courant(const LAPair &P, std::uint64_t seed = kDefaultSeed);
/// Same structure transported to Q by dQ, if dQ has a polynomial inverse.
std::optional<DegenerateCourant> core_courant_on_q(const LAPair &P, std::uint64_t seed = kDefaultSeed);
/// dB: Q^* -> B preserves anchors and brackets.
CheckReport check_core_morphism(const LAPair &P, std::uint64_t seed = kDefaultSeed);

// ---- Dirac structures -------------------------------------------------------------

/// Constant subbundles U of Q and B' of B, each given by basis vectors.
struct DiracData {
  int rank_q = 0;
  int rank_b = 0;
  std::vector<std::vector<Rational>> u;
  std::vector<std::vector<Rational>> b_prime;

  bool operator==(const DiracData &o) const {
    return rank_q == o.rank_q && rank_b == o.rank_b && u == o.u && b_prime == o.b_prime;
  }
};

void validate(const DiracData &data);

enum class DiracMode { vb_dirac, la_subalgebroid, la_dirac };

CheckReport check_dirac(const Dorfman2Rep &D, const SelfDual2Rep *S, const DiracData &data,
                        DiracMode mode, std::uint64_t seed = kDefaultSeed);

LieAlgebroid induced_lie_algebroid_on_U(const Dorfman2Rep &D, const DiracData &data,
                                        std::uint64_t seed = kDefaultSeed);

struct ManinPairResult {
  DegenerateCourant courant;
  /// Basis of the chosen complement W of U^0 in Q^*; the frame of the
  /// quotient is u_1..u_k followed by w_1..w_k.
  std::vector<std::vector<Rational>> complement;
  int rank_u = 0;
};

ManinPairResult manin_pair(const LAPair &P, const DiracData &data, std::uint64_t seed = kDefaultSeed);

/// Courant axioms, nondegeneracy, and U isotropic, maximal and closed.
CheckReport check_manin_pair(const ManinPairResult &M, std::uint64_t seed = kDefaultSeed);

} // namespace lie2kit

#endif
