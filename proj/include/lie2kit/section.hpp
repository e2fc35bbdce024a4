#ifndef LIE2KIT_SECTION_HPP
#define LIE2KIT_SECTION_HPP

#include "lie2kit/tensor.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace lie2kit {

// ---- sections over a trivialized bundle -------------------------------------

Section zero_section(int dim, int rank);
Section frame_section(int dim, int rank, int i);
Section operator+(const Section &a, const Section &b);
Section operator-(const Section &a, const Section &b);
Section operator-(const Section &a);
Section operator*(const Poly &f, const Section &s);
Section &operator+=(Section &a, const Section &b);
Section &operator-=(Section &a, const Section &b);
bool is_zero(const Section &s);
/// Natural pairing of a section with a section of the dual bundle.
Poly pairing(const Section &a, const Section &b);
/// sum_i s_i e_i rendered with the given frame names.
std::string section_str(const Section &s, const std::vector<std::string> &frame,
                        const std::vector<std::string> &coords = {});
std::vector<std::string> frame_names(const std::string &stem, int rank);

// ---- vector fields -----------------------------------------------------------

/// X(f) for a vector field given by its coordinate components.
Poly derive(const Section &X, const Poly &f);
Section vf_bracket(const Section &X, const Section &Y);
/// rho^* d f as a section of the dual of the anchored bundle (rho is p x r).
Section rho_star_d(const PolyMatrix &rho, const Poly &f);
/// rho(q)(f).
Poly anchor_derive(const PolyMatrix &rho, const Section &q, const Poly &f);

// ---- seeded randomness -------------------------------------------------------

class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  int small_int(int lo, int hi);
  /// Random polynomial of degree <= maxdeg with small integer coefficients.
  Poly poly(int dim, int maxdeg = 2);
  Section section(int dim, int rank, int maxdeg = 2);

private:
  std::mt19937_64 gen_;
};

constexpr std::uint64_t kDefaultSeed = 20240611;

} // namespace lie2kit

#endif
