#include "lie2kit/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace lie2kit {

namespace {
constexpr Monomial kHighBits = 0x8080808080808080ULL;
}

int mono_exp(Monomial m, int i) { return static_cast<int>((m >> (8 * i)) & 0xff); }

Monomial mono_with(Monomial m, int i, int e) {
  if (e < 0 || e > kMaxExponent)
    throw StructuralError("exponent out of range: " + std::to_string(e));
  m &= ~(Monomial(0xff) << (8 * i));
  return m | (Monomial(e) << (8 * i));
}

Monomial mono_mul(Monomial a, Monomial b) {
  Monomial s = a + b;
  if (s & kHighBits)
    throw StructuralError("polynomial degree overflow");
  return s;
}

int mono_degree(Monomial m, int dim) {
  int d = 0;
  for (int i = 0; i < dim; ++i)
    d += mono_exp(m, i);
  return d;
}

void Poly::check_dim(int dim) {
  if (dim < 0 || dim > kMaxBaseDim)
    throw StructuralError("base dimension out of range: " + std::to_string(dim));
}

void Poly::require_same_dim(const Poly &o) const {
  if (dim_ != o.dim_)
    throw StructuralError("polynomial base dimension mismatch: " + std::to_string(dim_) +
                          " vs " + std::to_string(o.dim_));
}

Poly Poly::constant(int dim, const Rational &c) {
  Poly p(dim);
  if (sgn(c) != 0)
    p.terms_.emplace_back(0, c);
  return p;
}

Poly Poly::var(int dim, int i) {
  if (i < 0 || i >= dim)
    throw StructuralError("coordinate index out of range");
  Poly p(dim);
  p.terms_.emplace_back(mono_with(0, i, 1), Rational(1));
  return p;
}

Poly Poly::monomial(int dim, const std::vector<int> &exps, const Rational &c) {
  Poly p(dim);
  p.add_term(exps, c);
  return p;
}

void Poly::add_term(const std::vector<int> &exps, const Rational &c) {
  if (static_cast<int>(exps.size()) != dim_)
    throw StructuralError("exponent vector length " + std::to_string(exps.size()) +
                          " does not match base dimension " + std::to_string(dim_));
  Monomial m = 0;
  for (int i = 0; i < dim_; ++i)
    m = mono_with(m, i, exps[i]);
  Poly t(dim_);
  if (sgn(c) != 0)
    t.terms_.emplace_back(m, c);
  *this += t;
}

std::vector<int> Poly::exponents(Monomial m) const {
  std::vector<int> e(dim_);
  for (int i = 0; i < dim_; ++i)
    e[i] = mono_exp(m, i);
  return e;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0);
}

Rational Poly::constant_term() const {
  if (!terms_.empty() && terms_[0].first == 0)
    return terms_[0].second;
  return Rational(0);
}

int Poly::degree() const {
  int d = -1;
  for (auto &[m, c] : terms_)
    d = std::max(d, mono_degree(m, dim_));
  return d;
}

Poly &Poly::operator+=(const Poly &o) {
  require_same_dim(o);
  if (o.terms_.empty())
    return *this;
  std::vector<std::pair<Monomial, Rational>> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), ae = terms_.end();
  auto b = o.terms_.begin(), be = o.terms_.end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == ae || b->first < a->first) {
      out.push_back(*b++);
    } else {
      Rational s = a->second + b->second;
      if (sgn(s) != 0)
        out.emplace_back(a->first, s);
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Poly &Poly::operator-=(const Poly &o) { return *this += -o; }

Poly Poly::operator+(const Poly &o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly Poly::operator-(const Poly &o) const {
  Poly r = *this;
  r += -o;
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto &t : r.terms_)
    t.second = -t.second;
  return r;
}

Poly Poly::operator*(const Poly &o) const {
  require_same_dim(o);
  Poly r(dim_);
  if (terms_.empty() || o.terms_.empty())
    return r;
  if (o.is_constant())
    return scale(o.terms_[0].second);
  if (is_constant())
    return o.scale(terms_[0].second);
  std::map<Monomial, Rational> acc;
  for (auto &[ma, ca] : terms_)
    for (auto &[mb, cb] : o.terms_)
      acc[mono_mul(ma, mb)] += ca * cb;
  for (auto &[m, c] : acc)
    if (sgn(c) != 0)
      r.terms_.emplace_back(m, c);
  return r;
}

Poly Poly::scale(const Rational &r) const {
  Poly out(dim_);
  if (sgn(r) == 0)
    return out;
  out.terms_ = terms_;
  for (auto &t : out.terms_)
    t.second *= r;
  return out;
}

Poly Poly::diff(int i) const {
  if (i < 0 || i >= dim_)
    throw StructuralError("derivative index out of range: " + std::to_string(i));
  Poly r(dim_);
  std::map<Monomial, Rational> acc;
  for (auto &[m, c] : terms_) {
    int e = mono_exp(m, i);
    if (e == 0)
      continue;
    acc[mono_with(m, i, e - 1)] += c * e;
  }
  for (auto &[m, c] : acc)
    r.terms_.emplace_back(m, c);
  return r;
}

Rational Poly::eval(const std::vector<Rational> &point) const {
  if (static_cast<int>(point.size()) != dim_)
    throw StructuralError("evaluation point has wrong dimension");
  Rational s = 0;
  for (auto &[m, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < dim_; ++i)
      for (int k = 0; k < mono_exp(m, i); ++k)
        t *= point[i];
    s += t;
  }
  return s;
}

bool Poly::operator==(const Poly &o) const {
  return dim_ == o.dim_ && terms_ == o.terms_;
}

std::string rational_str(const Rational &r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(const std::string &s) {
  std::string t;
  for (char ch : s)
    if (ch != ' ')
      t.push_back(ch);
  auto ok = [](const std::string &part, bool allow_sign) {
    if (part.empty())
      return false;
    std::size_t k = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+'))
      k = 1;
    if (k == part.size())
      return false;
    for (; k < part.size(); ++k)
      if (part[k] < '0' || part[k] > '9')
        return false;
    return true;
  };
  auto slash = t.find('/');
  std::string num = t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!ok(num, true) || !ok(den, false))
    throw StructuralError("malformed rational: \"" + s + "\"");
  if (num[0] == '+')
    num = num.substr(1);
  mpz_class d(den);
  if (d == 0)
    throw StructuralError("zero denominator in rational: \"" + s + "\"");
  Rational r(mpz_class(num), d);
  r.canonicalize();
  return r;
}

std::string Poly::str(const std::vector<std::string> &names) const {
  if (terms_.empty())
    return "0";
  // Print highest total degree first.
  std::vector<std::pair<Monomial, Rational>> ts = terms_;
  std::stable_sort(ts.begin(), ts.end(), [&](auto &a, auto &b) {
    int da = mono_degree(a.first, dim_), db = mono_degree(b.first, dim_);
    if (da != db)
      return da > db;
    for (int i = 0; i < dim_; ++i)
      if (mono_exp(a.first, i) != mono_exp(b.first, i))
        return mono_exp(a.first, i) > mono_exp(b.first, i);
    return false;
  });
  std::ostringstream os;
  bool first = true;
  for (auto &[m, c] : ts) {
    Rational a = abs(c);
    if (first)
      os << (sgn(c) < 0 ? "-" : "");
    else
      os << (sgn(c) < 0 ? " - " : " + ");
    first = false;
    std::string mono;
    for (int i = 0; i < dim_; ++i) {
      int e = mono_exp(m, i);
      if (e == 0)
        continue;
      if (!mono.empty())
        mono += "*";
      mono += i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i + 1);
      if (e > 1)
        mono += "^" + std::to_string(e);
    }
    if (mono.empty())
      os << a.get_str();
    else if (a == 1)
      os << mono;
    else
      os << a.get_str() << "*" << mono;
  }
  return os.str();
}

} // namespace lie2kit
