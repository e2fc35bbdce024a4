#include "lie2kit/section.hpp"

#include <sstream>

namespace lie2kit {

Section zero_section(int dim, int rank) { return Section(rank, Poly(dim)); }

Section frame_section(int dim, int rank, int i) {
  Section s = zero_section(dim, rank);
  s.at(i) = Poly::constant(dim, 1);
  return s;
}

namespace {
void require_same(const Section &a, const Section &b) {
  if (a.size() != b.size())
    throw StructuralError("section rank mismatch: " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
}
} // namespace

Section &operator+=(Section &a, const Section &b) {
  require_same(a, b);
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] += b[i];
  return a;
}

Section &operator-=(Section &a, const Section &b) {
  require_same(a, b);
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] -= b[i];
  return a;
}

Section operator+(const Section &a, const Section &b) {
  Section r = a;
  r += b;
  return r;
}

Section operator-(const Section &a, const Section &b) {
  Section r = a;
  r -= b;
  return r;
}

Section operator-(const Section &a) {
  Section r = a;
  for (auto &p : r)
    p = -p;
  return r;
}

Section operator*(const Poly &f, const Section &s) {
  Section r = s;
  for (auto &p : r)
    p = f * p;
  return r;
}

bool is_zero(const Section &s) {
  for (auto &p : s)
    if (!p.is_zero())
      return false;
  return true;
}

Poly pairing(const Section &a, const Section &b) {
  require_same(a, b);
  if (a.empty())
    return Poly(0);
  Poly r(a[0].dim());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero())
      r += a[i] * b[i];
  return r;
}

std::vector<std::string> frame_names(const std::string &stem, int rank) {
  std::vector<std::string> n;
  for (int i = 0; i < rank; ++i)
    n.push_back(stem + "_" + std::to_string(i + 1));
  return n;
}

std::string section_str(const Section &s, const std::vector<std::string> &frame,
                        const std::vector<std::string> &coords) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].is_zero())
      continue;
    std::string name = i < frame.size() ? frame[i] : "#" + std::to_string(i + 1);
    std::string c = s[i].str(coords);
    if (!first)
      os << " + ";
    first = false;
    if (name.empty())
      os << c;
    else if (c == "1")
      os << name;
    else if (c == "-1")
      os << "-" << name;
    else if (s[i].size() == 1 && c.find(' ') == std::string::npos)
      os << c << "*" << name;
    else
      os << "(" << c << ")*" << name;
  }
  return first ? "0" : os.str();
}

Poly derive(const Section &X, const Poly &f) {
  Poly r(f.dim());
  for (int i = 0; i < static_cast<int>(X.size()); ++i)
    if (!X[i].is_zero())
      r += X[i] * f.diff(i);
  return r;
}

Section vf_bracket(const Section &X, const Section &Y) {
  Section r(X.size(), Poly(X.empty() ? 0 : X[0].dim()));
  for (std::size_t k = 0; k < X.size(); ++k)
    r[k] = derive(X, Y[k]) - derive(Y, X[k]);
  return r;
}

Section rho_star_d(const PolyMatrix &rho, const Poly &f) {
  Section r = zero_section(rho.dim(), rho.cols());
  for (int m = 0; m < rho.rows(); ++m) {
    Poly df = f.diff(m);
    if (df.is_zero())
      continue;
    for (int k = 0; k < rho.cols(); ++k)
      if (!rho(m, k).is_zero())
        r[k] += rho(m, k) * df;
  }
  return r;
}

Poly anchor_derive(const PolyMatrix &rho, const Section &q, const Poly &f) {
  return derive(rho.apply(q), f);
}

int Rng::small_int(int lo, int hi) {
  auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(gen_() % span);
}

Poly Rng::poly(int dim, int maxdeg) {
  Poly p(dim);
  // Enumerate exponent vectors of total degree <= maxdeg in a fixed order.
  std::vector<int> e(dim, 0);
  auto visit = [&](auto &&self, int var, int left) -> void {
    if (var == dim) {
      if (small_int(0, 2) != 0)
        p.add_term(e, small_int(-3, 3));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[var] = k;
      self(self, var + 1, left - k);
    }
    e[var] = 0;
  };
  visit(visit, 0, maxdeg);
  return p;
}

Section Rng::section(int dim, int rank, int maxdeg) {
  Section s;
  for (int i = 0; i < rank; ++i)
    s.push_back(poly(dim, maxdeg));
  return s;
}

} // namespace lie2kit
