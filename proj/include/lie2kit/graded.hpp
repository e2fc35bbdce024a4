#ifndef LIE2KIT_GRADED_HPP
#define LIE2KIT_GRADED_HPP

#include "lie2kit/poly.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace lie2kit {

/// Monomial tau_S b^m of the split [2]-manifold Q[-1] + B^*[-2]: S is a bit
/// set over the odd generators tau_1..tau_rQ (degree 1), m a packed multiset
/// over the even generators b_1..b_rB (degree 2).
struct GKey {
  std::uint32_t tau = 0;
  Monomial b = 0;
  bool operator<(const GKey &o) const { return tau != o.tau ? tau < o.tau : b < o.b; }
  bool operator==(const GKey &o) const { return tau == o.tau && b == o.b; }
};

struct GradedSignature {
  int dim = 0;
  int rq = 0;
  int rb = 0;
  bool operator==(const GradedSignature &o) const {
    return dim == o.dim && rq == o.rq && rb == o.rb;
  }
  bool operator!=(const GradedSignature &o) const { return !(*this == o); }
};

int key_degree(const GKey &k, int rb);

class GradedFunction {
public:
  explicit GradedFunction(GradedSignature sig) : sig_(sig) { validate(); }

  static GradedFunction scalar(GradedSignature sig, const Poly &f);
  static GradedFunction x(GradedSignature sig, int i);
  static GradedFunction tau(GradedSignature sig, int k);
  static GradedFunction b(GradedSignature sig, int l);

  const GradedSignature &signature() const { return sig_; }
  const std::map<GKey, Poly> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Poly coeff(const GKey &k) const;
  void add_term(const GKey &k, const Poly &c);

  /// Degree if homogeneous; -1 for zero; throws on mixed degree.
  int degree() const;
  /// Splits into homogeneous parts.
  std::map<int, GradedFunction> by_degree() const;

  GradedFunction operator+(const GradedFunction &o) const;
  GradedFunction operator-(const GradedFunction &o) const;
  GradedFunction operator-() const;
  GradedFunction operator*(const GradedFunction &o) const;
  GradedFunction scale(const Poly &f) const;
  GradedFunction &operator+=(const GradedFunction &o);
  bool operator==(const GradedFunction &o) const { return sig_ == o.sig_ && terms_ == o.terms_; }

  std::string str() const;

private:
  void validate() const;
  void require_same(const GradedFunction &o) const;

  GradedSignature sig_;
  std::map<GKey, Poly> terms_;
};

/// Koszul sign of tau_S * tau_T (0 if S and T overlap).
int tau_merge_sign(std::uint32_t s, std::uint32_t t);
std::vector<int> tau_indices(std::uint32_t s);

/// Graded derivation determined by its images on the generators x_i, tau_k, b_l.
struct GradedDerivation {
  GradedSignature sig;
  int degree = 0;
  std::vector<GradedFunction> img_x, img_tau, img_b;

  static GradedDerivation zero(GradedSignature sig, int degree);
  /// Extends by phi(fg) = phi(f) g + (-1)^{|phi||f|} f phi(g).
  GradedFunction apply(const GradedFunction &f) const;
  /// Image degrees agree with the declared degree.
  bool degrees_consistent() const;
};

/// [phi, psi] = phi psi - (-1)^{|phi||psi|} psi phi.
GradedDerivation graded_commutator(const GradedDerivation &phi, const GradedDerivation &psi);

/// phi(psi(g)) for every generator g, in the order x, tau, b.
std::vector<GradedFunction> compose_on_generators(const GradedDerivation &phi,
                                                  const GradedDerivation &psi);

std::vector<GradedFunction> generators(GradedSignature sig);
std::vector<std::string> generator_names(GradedSignature sig);

} // namespace lie2kit

#endif
