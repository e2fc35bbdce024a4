#include "lie2kit/graded.hpp"

#include "lie2kit/report.hpp"

#include <bit>
#include <sstream>

namespace lie2kit {

int key_degree(const GKey &k, int rb) {
  return std::popcount(k.tau) + 2 * mono_degree(k.b, rb);
}

int tau_merge_sign(std::uint32_t s, std::uint32_t t) {
  if (s & t)
    return 0;
  // Count pairs (i in s, j in t) with i > j.
  int inv = 0;
  for (std::uint32_t rest = t; rest; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    inv += std::popcount(s >> (j + 1));
  }
  return inv % 2 ? -1 : 1;
}

std::vector<int> tau_indices(std::uint32_t s) {
  std::vector<int> v;
  for (; s; s &= s - 1)
    v.push_back(std::countr_zero(s));
  return v;
}

void GradedFunction::validate() const {
  if (sig_.rq < 0 || sig_.rq > 31 || sig_.rb < 0 || sig_.rb > kMaxBaseDim)
    throw StructuralError("graded signature out of supported range");
}

void GradedFunction::require_same(const GradedFunction &o) const {
  if (sig_ != o.sig_)
    throw StructuralError("graded functions over different generator sets");
}

GradedFunction GradedFunction::scalar(GradedSignature sig, const Poly &f) {
  GradedFunction g(sig);
  g.add_term({}, f);
  return g;
}

GradedFunction GradedFunction::x(GradedSignature sig, int i) {
  return scalar(sig, Poly::var(sig.dim, i));
}

GradedFunction GradedFunction::tau(GradedSignature sig, int k) {
  if (k < 0 || k >= sig.rq)
    throw StructuralError("tau index out of range");
  GradedFunction g(sig);
  g.add_term({std::uint32_t(1) << k, 0}, Poly::constant(sig.dim, 1));
  return g;
}

GradedFunction GradedFunction::b(GradedSignature sig, int l) {
  if (l < 0 || l >= sig.rb)
    throw StructuralError("b index out of range");
  GradedFunction g(sig);
  g.add_term({0, mono_with(0, l, 1)}, Poly::constant(sig.dim, 1));
  return g;
}

Poly GradedFunction::coeff(const GKey &k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Poly(sig_.dim) : it->second;
}

void GradedFunction::add_term(const GKey &k, const Poly &c) {
  if (c.is_zero())
    return;
  if (c.dim() != sig_.dim)
    throw StructuralError("graded coefficient over wrong base");
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero())
    terms_.erase(it);
}

int GradedFunction::degree() const {
  int d = -1;
  for (auto &[k, c] : terms_) {
    int kd = key_degree(k, sig_.rb);
    if (d >= 0 && kd != d)
      throw StructuralError("graded function is not homogeneous");
    d = kd;
  }
  return d;
}

std::map<int, GradedFunction> GradedFunction::by_degree() const {
  std::map<int, GradedFunction> parts;
  for (auto &[k, c] : terms_)
    parts.try_emplace(key_degree(k, sig_.rb), sig_).first->second.add_term(k, c);
  return parts;
}

GradedFunction &GradedFunction::operator+=(const GradedFunction &o) {
  require_same(o);
  for (auto &[k, c] : o.terms_)
    add_term(k, c);
  return *this;
}

GradedFunction GradedFunction::operator+(const GradedFunction &o) const {
  GradedFunction r = *this;
  r += o;
  return r;
}

GradedFunction GradedFunction::operator-() const {
  GradedFunction r = *this;
  for (auto &[k, c] : r.terms_)
    c = -c;
  return r;
}

GradedFunction GradedFunction::operator-(const GradedFunction &o) const { return *this + (-o); }

GradedFunction GradedFunction::operator*(const GradedFunction &o) const {
  require_same(o);
  GradedFunction r(sig_);
  for (auto &[ka, ca] : terms_)
    for (auto &[kb, cb] : o.terms_) {
      int s = tau_merge_sign(ka.tau, kb.tau);
      if (s == 0)
        continue;
      Poly c = ca * cb;
      r.add_term({ka.tau | kb.tau, mono_mul(ka.b, kb.b)}, s > 0 ? c : -c);
    }
  return r;
}

GradedFunction GradedFunction::scale(const Poly &f) const {
  GradedFunction r(sig_);
  if (f.is_zero())
    return r;
  for (auto &[k, c] : terms_)
    r.add_term(k, f * c);
  return r;
}

std::string GradedFunction::str() const {
  if (terms_.empty())
    return "0";
  auto coords = coordinate_names(sig_.dim);
  std::ostringstream os;
  bool first = true;
  for (auto &[k, c] : terms_) {
    std::string mono;
    for (int i : tau_indices(k.tau))
      mono += (mono.empty() ? "" : "*") + std::string("tau_") + std::to_string(i + 1);
    for (int l = 0; l < sig_.rb; ++l) {
      int e = mono_exp(k.b, l);
      if (e == 0)
        continue;
      mono += (mono.empty() ? "" : "*") + std::string("b_") + std::to_string(l + 1);
      if (e > 1)
        mono += "^" + std::to_string(e);
    }
    std::string cs = c.str(coords);
    if (!first)
      os << " + ";
    first = false;
    if (mono.empty())
      os << cs;
    else if (cs == "1")
      os << mono;
    else if (cs == "-1")
      os << "-" << mono;
    else
      os << "(" << cs << ")*" << mono;
  }
  return os.str();
}

std::vector<GradedFunction> generators(GradedSignature sig) {
  std::vector<GradedFunction> g;
  for (int i = 0; i < sig.dim; ++i)
    g.push_back(GradedFunction::x(sig, i));
  for (int k = 0; k < sig.rq; ++k)
    g.push_back(GradedFunction::tau(sig, k));
  for (int l = 0; l < sig.rb; ++l)
    g.push_back(GradedFunction::b(sig, l));
  return g;
}

std::vector<std::string> generator_names(GradedSignature sig) {
  std::vector<std::string> n;
  auto coords = coordinate_names(sig.dim);
  for (int i = 0; i < sig.dim; ++i)
    n.push_back(coords[i]);
  for (int k = 0; k < sig.rq; ++k)
    n.push_back("tau_" + std::to_string(k + 1));
  for (int l = 0; l < sig.rb; ++l)
    n.push_back("b_" + std::to_string(l + 1));
  return n;
}

GradedDerivation GradedDerivation::zero(GradedSignature sig, int degree) {
  GradedDerivation d;
  d.sig = sig;
  d.degree = degree;
  d.img_x.assign(sig.dim, GradedFunction(sig));
  d.img_tau.assign(sig.rq, GradedFunction(sig));
  d.img_b.assign(sig.rb, GradedFunction(sig));
  return d;
}

bool GradedDerivation::degrees_consistent() const {
  auto ok = [&](const std::vector<GradedFunction> &v, int want) {
    for (auto &f : v) {
      if (f.is_zero())
        continue;
      for (auto &[k, c] : f.terms())
        if (key_degree(k, sig.rb) != want)
          return false;
    }
    return true;
  };
  return ok(img_x, degree) && ok(img_tau, degree + 1) && ok(img_b, degree + 2);
}

GradedFunction GradedDerivation::apply(const GradedFunction &f) const {
  if (f.signature() != sig)
    throw StructuralError("derivation applied to function over different generators");
  GradedFunction out(sig);
  bool odd = degree % 2 != 0;
  for (auto &[k, c] : f.terms()) {
    GradedFunction mono(sig);
    mono.add_term(k, Poly::constant(sig.dim, 1));
    // Coefficient part.
    for (int i = 0; i < sig.dim; ++i) {
      Poly dc = c.diff(i);
      if (!dc.is_zero())
        out += (img_x[i] * mono).scale(dc);
    }
    // Odd generators, left to right.
    auto idx = tau_indices(k.tau);
    std::uint32_t left = 0;
    for (std::size_t s = 0; s < idx.size(); ++s) {
      std::uint32_t right = k.tau & ~left & ~(std::uint32_t(1) << idx[s]);
      GradedFunction L(sig), R(sig);
      L.add_term({left, 0}, Poly::constant(sig.dim, 1));
      R.add_term({right, k.b}, Poly::constant(sig.dim, 1));
      GradedFunction term = L * img_tau[idx[s]] * R;
      if (odd && s % 2 == 1)
        term = -term;
      out += term.scale(c);
      left |= std::uint32_t(1) << idx[s];
    }
    // Even generators.
    bool flip = odd && idx.size() % 2 == 1;
    for (int l = 0; l < sig.rb; ++l) {
      int e = mono_exp(k.b, l);
      if (e == 0)
        continue;
      // tau_S * phi(b_l) * b^(m - e_l); b's are even so they can be moved freely.
      GradedFunction L(sig);
      L.add_term({k.tau, 0}, Poly::constant(sig.dim, 1));
      GradedFunction B(sig);
      B.add_term({0, mono_with(k.b, l, e - 1)}, Poly::constant(sig.dim, e));
      GradedFunction term = L * img_b[l] * B;
      if (flip)
        term = -term;
      out += term.scale(c);
    }
  }
  return out;
}

GradedDerivation graded_commutator(const GradedDerivation &phi, const GradedDerivation &psi) {
  if (phi.sig != psi.sig)
    throw StructuralError("commutator of derivations over different generators");
  GradedDerivation r = GradedDerivation::zero(phi.sig, phi.degree + psi.degree);
  bool minus = (phi.degree * psi.degree) % 2 == 0;
  auto gens = generators(phi.sig);
  std::vector<GradedFunction *> slots;
  for (auto &g : r.img_x)
    slots.push_back(&g);
  for (auto &g : r.img_tau)
    slots.push_back(&g);
  for (auto &g : r.img_b)
    slots.push_back(&g);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    GradedFunction a = phi.apply(psi.apply(gens[i]));
    GradedFunction b = psi.apply(phi.apply(gens[i]));
    *slots[i] = minus ? a - b : a + b;
  }
  return r;
}

std::vector<GradedFunction> compose_on_generators(const GradedDerivation &phi,
                                                  const GradedDerivation &psi) {
  std::vector<GradedFunction> out;
  for (auto &g : generators(phi.sig))
    out.push_back(phi.apply(psi.apply(g)));
  return out;
}

} // namespace lie2kit
