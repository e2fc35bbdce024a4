#ifndef LIE2KIT_POLY_HPP
#define LIE2KIT_POLY_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lie2kit {

using Rational = mpq_class;

/// Raised on shape, index and schema violations.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exponent vectors are packed 8 bits per coordinate.
/// At most 8 coordinates and per-coordinate degree below 128.
using Monomial = std::uint64_t;

constexpr int kMaxBaseDim = 8;
constexpr int kMaxExponent = 127;

int mono_exp(Monomial m, int i);
Monomial mono_with(Monomial m, int i, int e);
Monomial mono_mul(Monomial a, Monomial b);
int mono_degree(Monomial m, int dim);

/// Multivariate polynomial over Q in x_1..x_p. Terms are kept sorted by
/// packed monomial with no zero coefficients, so equality is structural.
class Poly {
public:
  explicit Poly(int dim = 0) : dim_(dim) { check_dim(dim); }

  static Poly constant(int dim, const Rational &c);
  static Poly var(int dim, int i);
  static Poly monomial(int dim, const std::vector<int> &exps, const Rational &c);

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term; meaningful for constant polynomials.
  Rational constant_term() const;
  int degree() const;
  std::size_t size() const { return terms_.size(); }
  const std::vector<std::pair<Monomial, Rational>> &terms() const { return terms_; }

  Poly operator+(const Poly &o) const;
  Poly operator-(const Poly &o) const;
  Poly operator-() const;
  Poly operator*(const Poly &o) const;
  Poly scale(const Rational &r) const;
  Poly &operator+=(const Poly &o);
  Poly &operator-=(const Poly &o);

  Poly diff(int i) const;
  Rational eval(const std::vector<Rational> &point) const;

  bool operator==(const Poly &o) const;
  bool operator!=(const Poly &o) const { return !(*this == o); }

  /// Human rendering with the given coordinate names (x1.. by default).
  std::string str(const std::vector<std::string> &names = {}) const;

  /// Used by the parser; adds c·x^exps.
  void add_term(const std::vector<int> &exps, const Rational &c);
  std::vector<int> exponents(Monomial m) const;

private:
  static void check_dim(int dim);
  void require_same_dim(const Poly &o) const;

  int dim_;
  std::vector<std::pair<Monomial, Rational>> terms_;
};

std::string rational_str(const Rational &r);
/// Accepts "a/b", "a" and surrounding whitespace; rejects anything else.
Rational parse_rational(const std::string &s);

} // namespace lie2kit

#endif
