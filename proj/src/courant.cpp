#include "lie2kit/courant.hpp"

namespace lie2kit {

namespace {

void require(bool ok, const std::string &what) {
  if (!ok)
    throw StructuralError(what);
}

void precondition(bool ok, const std::string &what) {
  if (!ok)
    throw PreconditionError(what);
}

Section constant_section(int dim, const std::vector<Rational> &v) {
  Section s;
  for (auto &c : v)
    s.push_back(Poly::constant(dim, c));
  return s;
}

PolyMatrix columns_matrix(int dim, int rows, const std::vector<std::vector<Rational>> &cols) {
  PolyMatrix m(dim, rows, static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < rows; ++i)
      m(i, static_cast<int>(j)) = Poly::constant(dim, cols[j][i]);
  return m;
}

// Left inverse (V^T V)^{-1} V^T of a full-column-rank constant matrix given by columns.
RatMatrix left_inverse(const std::vector<std::vector<Rational>> &cols, int n) {
  int k = static_cast<int>(cols.size());
  RatMatrix gram(k, std::vector<Rational>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int i = 0; i < n; ++i)
        gram[a][b] += cols[a][i] * cols[b][i];
  RatMatrix gi = rat_inverse(gram);
  RatMatrix L(k, std::vector<Rational>(n));
  for (int a = 0; a < k; ++a)
    for (int i = 0; i < n; ++i)
      for (int b = 0; b < k; ++b)
        L[a][i] += gi[a][b] * cols[b][i];
  return L;
}

Section apply_rat(const RatMatrix &m, const Section &s, int dim) {
  Section out = zero_section(dim, static_cast<int>(m.size()));
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t i = 0; i < s.size(); ++i)
      if (m[a][i] != 0)
        out[a] += s[i].scale(m[a][i]);
  return out;
}

Poly vf_apply(const Section &X, const Poly &f) { return derive(X, f); }

} // namespace

// ---- degenerate Courant algebroids -------------------------------------------

DegenerateCourant DegenerateCourant::zero(int dim, int rank) {
  return {PolyMatrix(dim, dim, rank), PolyMatrix(dim, rank, rank), PolyTensor(dim, {rank, rank, rank}),
          PolyMatrix(dim, rank, dim)};
}

void validate(const DegenerateCourant &C) {
  int p = C.dim(), n = C.rank();
  require(C.rho.rows() == p, "courant: anchor must be p x n");
  require(C.pairing.dim() == p && C.pairing.rows() == n && C.pairing.cols() == n,
          "courant: pairing must be n x n");
  require(C.bracket.dim() == p && C.bracket.shape() == std::vector<int>{n, n, n} &&
              C.bracket.groups().empty(),
          "courant: bracket shape");
  require(C.dmap.dim() == p && C.dmap.rows() == n && C.dmap.cols() == p,
          "courant: D-map must be n x p");
}

Poly DegenerateCourant::pair(const Section &e1, const Section &e2) const {
  return lie2kit::pairing(e1, pairing.apply(e2));
}

Section DegenerateCourant::D(const Poly &f) const {
  Section s = zero_section(dim(), rank());
  for (int m = 0; m < dim(); ++m) {
    Poly g = f.diff(m);
    if (!g.is_zero())
      s += g * dmap.column(m);
  }
  return s;
}

Section DegenerateCourant::apply(const Section &e1, const Section &e2) const {
  require(static_cast<int>(e1.size()) == rank() && static_cast<int>(e2.size()) == rank(),
          "Courant bracket applied to sections of wrong rank");
  Section r = zero_section(dim(), rank());
  for (auto &[idx, v] : bracket.entries()) {
    const Poly &a = e1[idx[0]], &b = e2[idx[1]];
    if (!a.is_zero() && !b.is_zero())
      r[idx[2]] += a * b * v;
  }
  Section X1 = anchor(e1), X2 = anchor(e2);
  Section Ge2 = pairing.apply(e2);
  for (int i = 0; i < rank(); ++i) {
    r[i] += vf_apply(X1, e2[i]) - vf_apply(X2, e1[i]);
    if (!e1[i].is_zero() && !Ge2[i].is_zero())
      r += Ge2[i] * D(e1[i]);
  }
  return r;
}

CheckReport check_courant_axioms(const DegenerateCourant &C, std::uint64_t seed, const std::string &stem) {
  validate(C);
  CheckReport rep;
  rep.title = "degenerate Courant algebroid";
  rep.seed = seed;
  Rng rng(seed);
  int p = C.dim(), n = C.rank();
  auto coords = coordinate_names(p);
  auto fe = frame_names(stem, n);
  Probes e1 = make_probes(stem, p, n, rng), e2 = make_probes(stem, p, n, rng),
         e3 = make_probes(stem, p, n, rng);
  std::vector<std::string> fnames{"1"};
  std::vector<Section> fvals{{Poly::constant(p, 1)}};
  for (int m = 0; m < p; ++m) {
    fnames.push_back(coords[m]);
    fvals.push_back({Poly::var(p, m)});
  }
  Probes f = make_probes(fnames, fvals, p, rng);
  auto br = [&](const Section &a, const Section &b) { return C.apply(a, b); };

  rep.add(check_identity(
      "CA1", "[[e1,[[e2,e3]]]] = [[[[e1,e2]],e3]] + [[e2,[[e1,e3]]]]", {&e1, &e2, &e3},
      [&](auto &s) {
        const Section &a = *s[0], &b = *s[1], &c = *s[2];
        return br(a, br(b, c)) - br(br(a, b), c) - br(b, br(a, c));
      },
      fe, coords));
  rep.add(check_scalar_identity(
      "CA2", "rho(e1)<e2,e3> = <[[e1,e2]],e3> + <e2,[[e1,e3]]>", {&e1, &e2, &e3},
      [&](auto &s) {
        const Section &a = *s[0], &b = *s[1], &c = *s[2];
        return vf_apply(C.anchor(a), C.pair(b, c)) - C.pair(br(a, b), c) - C.pair(b, br(a, c));
      },
      coords));
  rep.add(check_identity(
      "CA3", "[[e1,e2]] + [[e2,e1]] = D<e1,e2>", {&e1, &e2},
      [&](auto &s) {
        const Section &a = *s[0], &b = *s[1];
        return br(a, b) + br(b, a) - C.D(C.pair(a, b));
      },
      fe, coords));
  rep.add(check_identity(
      "CA4", "rho[[e1,e2]] = [rho e1, rho e2]", {&e1, &e2},
      [&](auto &s) {
        const Section &a = *s[0], &b = *s[1];
        return C.anchor(br(a, b)) - vf_bracket(C.anchor(a), C.anchor(b));
      },
      coords, coords));
  rep.add(check_identity(
      "CA5", "[[e1, f e2]] = f [[e1,e2]] + rho(e1)(f) e2", {&e1, &f, &e2},
      [&](auto &s) {
        const Section &a = *s[0], &b = *s[2];
        const Poly &g = (*s[1])[0];
        return br(a, g * b) - g * br(a, b) - vf_apply(C.anchor(a), g) * b;
      },
      fe, coords));
  rep.add(check_scalar_identity(
      "D-compat", "<D f, e> = rho(e)(f)", {&f, &e1},
      [&](auto &s) {
        const Poly &g = (*s[0])[0];
        return C.pair(C.D(g), *s[1]) - vf_apply(C.anchor(*s[1]), g);
      },
      coords));
  rep.add(check_identity(
      "rho-D", "rho o D = 0", {&f}, [&](auto &s) { return C.anchor(C.D((*s[0])[0])); }, coords,
      coords));
  std::string w, res;
  for (int i = 0; i < n && w.empty(); ++i)
    for (int j = i + 1; j < n && w.empty(); ++j)
      if (C.pairing(i, j) != C.pairing(j, i)) {
        w = "(" + fe[i] + "," + fe[j] + ")";
        res = (C.pairing(i, j) - C.pairing(j, i)).str(coords);
      }
  rep.add_flag("symmetric", "<e1,e2> = <e2,e1>", w.empty(), w, res);
  return rep;
}

DegenerateCourant transport(const DegenerateCourant &C, const PolyMatrix &M) {
  validate(C);
  int p = C.dim(), n = C.rank();
  require(M.rows() == n && M.cols() == n, "transport: isomorphism must be n x n");
  auto Mi = M.inverse();
  require(Mi.has_value(), "transport: map has no polynomial inverse");
  DegenerateCourant out = DegenerateCourant::zero(p, n);
  out.rho = C.rho * *Mi;
  out.pairing = Mi->transpose() * C.pairing * *Mi;
  out.dmap = M * C.dmap;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Section v = M.apply(C.apply(Mi->column(i), Mi->column(j)));
      for (int k = 0; k < n; ++k)
        out.bracket.set({i, j, k}, v[k]);
    }
  return out;
}

// ---- example classes -----------------------------------------------------------

DegenerateCourant quadratic_lie_algebra(int rank, const PolyTensor &c, const PolyMatrix &pairing) {
  DegenerateCourant C = DegenerateCourant::zero(0, rank);
  require(c.dim() == 0 && c.shape() == std::vector<int>{rank, rank, rank},
          "quadratic_lie_algebra: structure constants shape");
  require(pairing.dim() == 0 && pairing.rows() == rank && pairing.cols() == rank,
          "quadratic_lie_algebra: pairing shape");
  precondition(pairing == pairing.transpose(), "quadratic_lie_algebra: pairing is not symmetric");
  c.for_each_index([&](const std::vector<int> &idx) { C.bracket.set(idx, c.get(idx)); });
  C.pairing = pairing;
  return C;
}

DegenerateCourant so3_killing(int dim) {
  DegenerateCourant C = DegenerateCourant::zero(dim, 3);
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    C.bracket.set({i, j, k}, Poly::constant(dim, 1));
    C.bracket.set({j, i, k}, Poly::constant(dim, -1));
    C.pairing(i, i) = Poly::constant(dim, -2);
  }
  return C;
}

DegenerateCourant standard_courant(int p) {
  require(p >= 0, "standard_courant: negative dimension");
  DegenerateCourant C = DegenerateCourant::zero(p, 2 * p);
  for (int m = 0; m < p; ++m) {
    C.rho(m, m) = Poly::constant(p, 1);
    C.pairing(m, p + m) = Poly::constant(p, 1);
    C.pairing(p + m, m) = Poly::constant(p, 1);
    C.dmap(p + m, m) = Poly::constant(p, 1);
  }
  return C;
}

CheckReport check_metric_connection(const DegenerateCourant &C, const LinearConnection &nabla) {
  validate(C);
  int p = C.dim(), n = C.rank();
  require(nabla.rho == PolyMatrix::identity(p, p) && nabla.module_rank() == n,
          "metric connection: expected a TM-connection on E");
  CheckReport rep;
  rep.title = "metric connection";
  auto coords = coordinate_names(p);
  auto fe = frame_names("e", n);
  std::string w, res;
  long evals = 0;
  for (int m = 0; m < p && w.empty(); ++m) {
    Section X = frame_section(p, p, m);
    for (int a = 0; a < n && w.empty(); ++a)
      for (int b = a; b < n && w.empty(); ++b) {
        Section ea = frame_section(p, n, a), eb = frame_section(p, n, b);
        Poly r = C.pair(nabla.apply(X, ea), eb) + C.pair(ea, nabla.apply(X, eb)) -
                 C.pairing(a, b).diff(m);
        ++evals;
        if (!r.is_zero()) {
          w = "(" + coords[m] + "," + fe[a] + "," + fe[b] + ")";
          res = r.str(coords);
        }
      }
  }
  rep.add_flag("metric", "X<e1,e2> = <nabla_X e1,e2> + <e1,nabla_X e2>", w.empty(), w, res);
  rep.entries.back().evaluations = evals;
  return rep;
}

Dorfman2Rep adjoint_dorfman2rep(const DegenerateCourant &C, const LinearConnection &nabla,
                                std::uint64_t seed) {
  require_pass(check_courant_axioms(C, seed), "adjoint_dorfman2rep");
  require_pass(check_metric_connection(C, nabla), "adjoint_dorfman2rep");
  int p = C.dim(), n = C.rank();
  auto Gi = C.pairing.inverse();
  precondition(Gi.has_value(), "adjoint_dorfman2rep: pairing is not invertible");
  Dorfman2Rep D = Dorfman2Rep::zero(p, n, p);
  D.rho = C.rho;
  D.dB = C.rho * *Gi;
  // Delta_e e' = [[e,e']] + nabla_{rho e'} e, transported to E^* by the pairing.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Section e = frame_section(p, n, i), ep = Gi->column(j);
      Section t = C.pairing.apply(C.apply(e, ep) + nabla.apply(C.anchor(ep), e));
      for (int k = 0; k < n; ++k)
        D.delta.set({i, j, k}, t[k]);
    }
  // basic connection on TM
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) {
      Section X = frame_section(p, p, j);
      Section v = vf_bracket(C.rho.column(i), X) + C.anchor(nabla.apply(X, frame_section(p, n, i)));
      for (int k = 0; k < p; ++k)
        D.nabla.set({i, j, k}, v[k]);
    }
  LinearConnection bas = D.connection();
  DullBracket br = D.bracket(), lie = tangent_algebroid(p).bracket();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int l = 0; l < p; ++l) {
        Section e1 = frame_section(p, n, i), e2 = frame_section(p, n, j), X = frame_section(p, p, l);
        Section v = -nabla.apply(X, br.apply(e1, e2)) + br.apply(nabla.apply(X, e1), e2) +
                    br.apply(e1, nabla.apply(X, e2)) + nabla.apply(bas.apply(e2, X), e1) -
                    nabla.apply(bas.apply(e1, X), e2);
        Section t = C.pairing.apply(v);
        for (int k = 0; k < n; ++k) {
          Section Y = C.rho.column(k);
          t[k] -= C.pair(curvature(nabla, lie, X, Y, e1), e2);
          D.r.set({i, j, l, k}, t[k]);
        }
      }
  return D;
}

SelfDual2Rep adjoint_selfdual2rep(const DegenerateCourant &C, const LinearConnection &nabla) {
  require_pass(check_metric_connection(C, nabla), "adjoint_selfdual2rep");
  int p = C.dim(), n = C.rank();
  auto Gi = C.pairing.inverse();
  precondition(Gi.has_value(), "adjoint_selfdual2rep: pairing is not invertible");
  SelfDual2Rep S = SelfDual2Rep::zero(p, n, p);
  S.B = tangent_algebroid(p);
  S.dQ = *Gi;
  S.nabla = nabla.gamma;
  DullBracket lie = S.B.bracket();
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j)
      for (int k = 0; k < n; ++k) {
        Section v = curvature(nabla, lie, frame_section(p, p, i), frame_section(p, p, j),
                              frame_section(p, n, k));
        for (int l = k + 1; l < n; ++l)
          S.rb.set({i, j, k, l}, C.pair(v, frame_section(p, n, l)));
      }
  return S;
}

LAPair tangent_double_pair(const DegenerateCourant &C, const LinearConnection &nabla, std::uint64_t seed) {
  return {adjoint_selfdual2rep(C, nabla), adjoint_dorfman2rep(C, nabla, seed)};
}

Dorfman2Rep standard_dorfman2rep(int m, const DullBracket &bracket) {
  int p = bracket.dim(), rq = p + m;
  require(m >= 0 && bracket.rank() == rq, "standard_dorfman2rep: bracket must live on TM + E^*");
  PolyMatrix pr(p, p, rq);
  for (int i = 0; i < p; ++i)
    pr(i, i) = Poly::constant(p, 1);
  precondition(bracket.rho == pr, "standard_dorfman2rep: anchor is not the projection to TM");
  precondition(bracket.skew(), "standard_dorfman2rep: bracket is not skew-symmetric");
  auto names = frame_names("e", rq);
  for (auto &[idx, v] : bracket.c.entries())
    precondition(idx[2] >= p, "standard_dorfman2rep: TM-part of [[" + names[idx[0]] + "," +
                                  names[idx[1]] + "]] is not the Lie bracket of vector fields");
  Dorfman2Rep D = Dorfman2Rep::zero(p, rq, m);
  D.rho = pr;
  for (int l = 0; l < m; ++l)
    D.dB(l, p + l) = Poly::constant(p, 1);
  DorfmanConnection delta = bracket.dual_dorfman();
  D.delta = delta.d;
  for (int i = 0; i < rq; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        D.nabla.set({i, j, k}, D.delta.get({i, p + j, p + k}));
  for (int i = 0; i < rq; ++i)
    for (int j = i + 1; j < rq; ++j)
      for (int l = 0; l < m; ++l) {
        Section v = curvature(delta, bracket, frame_section(p, rq, i), frame_section(p, rq, j),
                              frame_section(p, rq, p + l));
        for (int k = 0; k < rq; ++k)
          D.r.set({i, j, l, k}, v[k]);
      }
  return D;
}

Dorfman2Rep semidirect_dorfman2rep(const TwoRep &T, std::uint64_t seed) {
  require_pass(check_two_rep(T, seed), "semidirect_dorfman2rep");
  int p = T.dim(), ra = T.A.rank(), rb = T.nabla_b.module_rank(), rc = T.nabla_c.module_rank(), rq = ra + rc;
  Dorfman2Rep D = Dorfman2Rep::zero(p, rq, rb);
  for (int m = 0; m < p; ++m)
    for (int i = 0; i < ra; ++i)
      D.rho(m, i) = T.A.rho(m, i);
  for (int l = 0; l < rb; ++l)
    for (int k = 0; k < rc; ++k)
      D.dB(l, ra + k) = T.d(l, k);
  // Delta_a alpha = L_a alpha, Delta_a c = nabla_a c, Delta_gamma c = <nabla^*_. gamma, c>.
  PolyTensor lie = T.A.bracket().dual_dorfman().d;
  for (auto &[idx, v] : lie.entries())
    D.delta.set(idx, v);
  for (auto &[idx, v] : T.nabla_c.gamma.entries()) {
    int i = idx[0], j = idx[1], k = idx[2];
    D.delta.set({i, ra + j, ra + k}, v);
    D.delta.set({ra + k, ra + j, i}, -v);
  }
  for (auto &[idx, v] : T.nabla_b.gamma.entries())
    D.nabla.set(idx, v);
  // R((a1,g1),(a2,g2)) = (R(a1,a2), -<g2, R(a1,.)> - <g1, R(.,a2)>)
  for (auto &[idx, v] : T.r.entries()) {
    int i = idx[0], j = idx[1], l = idx[2], k = idx[3];
    D.r.set({i, j, l, ra + k}, v);
    D.r.set({i, ra + k, l, j}, -v);
    D.r.set({j, ra + k, l, i}, v);
  }
  return D;
}

// ---- core of an LA pair ---------------------------------------------------------

namespace {

Section core_bracket(const LAPair &P, const TwoRep &T, const Section &t1, const Section &t2) {
  return P.D.dorfman().apply(P.S.dQ.apply(t1), t2) - T.nabla_c.apply(P.D.d_b(t2), t1);
}

} // namespace

DegenerateCourant core_courant(const LAPair &P, std::uint64_t seed) {
  require_pass(check_la_matched_pair(P, seed), "core_courant");
  int p = P.dim(), n = P.rank_q();
  TwoRep T = P.S.two_rep();
  DegenerateCourant C = DegenerateCourant::zero(p, n);
  C.rho = P.D.rho * P.S.dQ;
  C.pairing = P.S.dQ;
  C.dmap = P.D.rho.transpose();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Section v = core_bracket(P, T, frame_section(p, n, i), frame_section(p, n, j));
      for (int k = 0; k < n; ++k)
        C.bracket.set({i, j, k}, v[k]);
    }
  return C;
}

std::optional<DegenerateCourant> core_courant_on_q(const LAPair &P, std::uint64_t seed) {
  DegenerateCourant C = core_courant(P, seed);
  if (!P.S.dQ.inverse())
    return std::nullopt;
  return transport(C, P.S.dQ);
}

CheckReport check_core_morphism(const LAPair &P, std::uint64_t seed) {
  validate(P);
  CheckReport rep;
  rep.title = "core of an LA pair";
  rep.seed = seed;
  Rng rng(seed);
  int p = P.dim(), n = P.rank_q();
  auto coords = coordinate_names(p);
  Probes t1 = make_probes("eps", p, n, rng), t2 = make_probes("eps", p, n, rng);
  TwoRep T = P.S.two_rep();
  DegenerateCourant C = DegenerateCourant::zero(p, n);
  C.rho = P.D.rho * P.S.dQ;
  C.pairing = P.S.dQ;
  C.dmap = P.D.rho.transpose();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Section v = core_bracket(P, T, frame_section(p, n, i), frame_section(p, n, j));
      for (int k = 0; k < n; ++k)
        C.bracket.set({i, j, k}, v[k]);
    }
  DullBracket brB = P.S.B.bracket();
  rep.add(check_identity(
      "extension", "[[s1,s2]] = Delta_{dQ s1} s2 - nabla_{dB s2} s1 on all sections", {&t1, &t2},
      [&](auto &s) { return C.apply(*s[0], *s[1]) - core_bracket(P, T, *s[0], *s[1]); },
      frame_names("eps", n), coords));
  rep.add(check_identity(
      "dB-bracket", "dB [[s1,s2]] = [dB s1, dB s2]", {&t1, &t2},
      [&](auto &s) {
        return P.D.d_b(core_bracket(P, T, *s[0], *s[1])) -
               brB.apply(P.D.d_b(*s[0]), P.D.d_b(*s[1]));
      },
      frame_names("b", P.rank_b()), coords));
  rep.add(check_identity(
      "dB-anchor", "rho_B dB = rho_Q dQ", {&t1},
      [&](auto &s) { return P.S.B.rho.apply(P.D.d_b(*s[0])) - C.anchor(*s[0]); }, coords, coords));
  return rep;
}

// ---- Dirac structures -------------------------------------------------------------

namespace {

// Constant subbundle given by basis vectors, with the basis of its annihilator.
struct Subspace {
  int n = 0;
  std::vector<std::vector<Rational>> basis;
  RatMatrix ann;

  Subspace(int n_, std::vector<std::vector<Rational>> b) : n(n_), basis(std::move(b)) {
    ann = rat_nullspace(basis, n);
  }
  Subspace annihilator() const { return Subspace(n, ann); }
  int rank() const { return static_cast<int>(basis.size()); }

  // s itself if it leaves the subspace, zero otherwise.
  Section outside(const Section &s) const {
    for (auto &row : ann) {
      Poly c(s.empty() ? 0 : s[0].dim());
      for (int i = 0; i < n; ++i)
        if (row[i] != 0)
          c += s[i].scale(row[i]);
      if (!c.is_zero())
        return s;
    }
    return zero_section(s.empty() ? 0 : s[0].dim(), static_cast<int>(s.size()));
  }

  Probes probes(int dim, const std::string &stem, const std::string &ambient, Rng &rng) const {
    std::vector<std::string> names;
    std::vector<Section> frame;
    for (int a = 0; a < rank(); ++a) {
      const auto &v = basis[a];
      int nz = 0, at = -1;
      for (int i = 0; i < n; ++i)
        if (v[i] != 0)
          ++nz, at = i;
      bool unit = nz == 1 && v[at] == 1;
      names.push_back(unit ? ambient + "_" + std::to_string(at + 1) : stem + "_" + std::to_string(a + 1));
      frame.push_back(constant_section(dim, v));
    }
    return make_probes(names, frame, dim, rng);
  }
};

} // namespace

void validate(const DiracData &d) {
  require(d.rank_q >= 0 && d.rank_b >= 0, "dirac: negative rank");
  for (auto &v : d.u)
    require(static_cast<int>(v.size()) == d.rank_q, "dirac: U vectors must have length rank Q");
  for (auto &v : d.b_prime)
    require(static_cast<int>(v.size()) == d.rank_b, "dirac: B' vectors must have length rank B");
  require(rat_rank(d.u, d.rank_q) == static_cast<int>(d.u.size()),
          "dirac: U basis is not linearly independent");
  require(rat_rank(d.b_prime, d.rank_b) == static_cast<int>(d.b_prime.size()),
          "dirac: B' basis is not linearly independent");
}

CheckReport check_dirac(const Dorfman2Rep &D, const SelfDual2Rep *S, const DiracData &data,
                        DiracMode mode, std::uint64_t seed) {
  validate(D);
  validate(data);
  require(data.rank_q == D.rank_q() && data.rank_b == D.rank_b(),
          "dirac: ranks do not match the structure");
  bool la = mode != DiracMode::vb_dirac;
  if (la) {
    precondition(S != nullptr, "check_dirac: this mode needs the self-dual 2-representation");
    require_pass(check_la_matched_pair({*S, D}, seed), "check_dirac");
  }
  CheckReport rep;
  rep.title = mode == DiracMode::vb_dirac          ? "VB-Dirac structure"
              : mode == DiracMode::la_subalgebroid ? "isotropic subalgebroid"
                                                   : "LA-Dirac structure";
  rep.seed = seed;
  Rng rng(seed);
  int p = D.dim(), rq = D.rank_q(), rbk = D.rank_b();
  auto coords = coordinate_names(p);
  auto fq = frame_names("e", rq), ft = frame_names("eps", rq), fb = frame_names("b", rbk);
  Subspace U(rq, data.u), B1(rbk, data.b_prime);
  Subspace U0 = U.annihilator();
  Probes u1 = U.probes(p, "u", "e", rng), u2 = U.probes(p, "u", "e", rng),
         n0 = U0.probes(p, "n", "eps", rng), b1 = B1.probes(p, "bp", "b", rng),
         b2 = B1.probes(p, "bp", "b", rng);
  DullBracket brQ = D.bracket();
  LinearConnection nq = D.connection();

  auto dB_in = [&](const std::string &label) {
    return check_identity(
        label, "dB(U^0) in B'", {&n0}, [&](auto &s) { return B1.outside(D.d_b(*s[0])); }, fb, coords);
  };
  auto nabla_ub = [&](const std::string &label) {
    return check_identity(
        label, "nabla_u b in B' for u in U, b in B'", {&u1, &b1},
        [&](auto &s) { return B1.outside(nq.apply(*s[0], *s[1])); }, fb, coords);
  };
  auto closed_u = [&](const std::string &label) {
    return check_identity(
        label, "[[u1,u2]] in U", {&u1, &u2},
        [&](auto &s) { return U.outside(brQ.apply(*s[0], *s[1])); }, fq, coords);
  };
  auto curv_u = [&](const std::string &label) {
    return check_identity(
        label, "R(u1,u2) maps B' to U^0", {&u1, &u2, &b1},
        [&](auto &s) { return U0.outside(D.curv(*s[0], *s[1], *s[2])); }, ft, coords);
  };
  if (mode == DiracMode::vb_dirac) {
    rep.add(dB_in("(1)"));
    rep.add(nabla_ub("(2)"));
    rep.add(closed_u("(3)"));
    rep.add(curv_u("(4)"));
    return rep;
  }
  TwoRep T = S->two_rep();
  DullBracket brB = S->B.bracket();
  auto dQ_in = [&](const std::string &label) {
    return check_identity(
        label, "dQ(U^0) in U", {&n0}, [&](auto &s) { return U.outside(S->dQ.apply(*s[0])); }, fq,
        coords);
  };
  auto nabla_bu = [&](const std::string &label) {
    return check_identity(
        label, "nabla_b u in U for b in B', u in U", {&b1, &u1},
        [&](auto &s) { return U.outside(T.nabla_b.apply(*s[0], *s[1])); }, fq, coords);
  };
  auto closed_b = [&](const std::string &label) {
    return check_identity(
        label, "[b1,b2] in B'", {&b1, &b2},
        [&](auto &s) { return B1.outside(brB.apply(*s[0], *s[1])); }, fb, coords);
  };
  auto curv_b = [&](const std::string &label) {
    return check_identity(
        label, "R(b1,b2) maps U to U^0", {&b1, &b2, &u1},
        [&](auto &s) { return U0.outside(T.curv(*s[0], *s[1], *s[2])); }, ft, coords);
  };
  if (mode == DiracMode::la_subalgebroid) {
    rep.add(dQ_in("(1)"));
    rep.add(nabla_bu("(2)"));
    rep.add(closed_b("(3)"));
    rep.add(curv_b("(4)"));
    return rep;
  }
  rep.add(dB_in("(1)B"));
  rep.add(dQ_in("(1)Q"));
  rep.add(nabla_ub("(2)"));
  rep.add(nabla_bu("(3)"));
  rep.add(closed_u("(4)"));
  rep.add(closed_b("(5)"));
  rep.add(curv_u("(6)"));
  rep.add(curv_b("(9)"));
  return rep;
}

LieAlgebroid induced_lie_algebroid_on_U(const Dorfman2Rep &D, const DiracData &data, std::uint64_t seed) {
  validate(data);
  precondition(static_cast<int>(data.b_prime.size()) == data.rank_b,
               "induced_lie_algebroid_on_U: B' must be all of B");
  require_pass(check_dirac(D, nullptr, data, DiracMode::vb_dirac, seed), "induced_lie_algebroid_on_U");
  int p = D.dim(), rq = D.rank_q(), k = static_cast<int>(data.u.size());
  RatMatrix L = left_inverse(data.u, rq);
  LieAlgebroid A = LieAlgebroid::zero(p, k);
  A.rho = D.rho * columns_matrix(p, rq, data.u);
  DullBracket br = D.bracket();
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      Section v = apply_rat(L, br.apply(constant_section(p, data.u[a]), constant_section(p, data.u[b])), p);
      for (int c = 0; c < k; ++c)
        A.c.set({a, b, c}, v[c]);
    }
  return A;
}

ManinPairResult manin_pair(const LAPair &P, const DiracData &data, std::uint64_t seed) {
  validate(data);
  precondition(static_cast<int>(data.b_prime.size()) == data.rank_b,
               "manin_pair: B' must be all of B");
  require_pass(check_dirac(P.D, &P.S, data, DiracMode::la_dirac, seed), "manin_pair");
  int p = P.dim(), n = P.rank_q(), k = static_cast<int>(data.u.size());
  Subspace U(n, data.u);
  RatMatrix u0 = U.ann;

  // Complement W of U^0 in Q^*: unit vectors in pivot order.
  ManinPairResult out;
  out.rank_u = k;
  RatMatrix span = u0;
  for (int i = 0; i < n && static_cast<int>(out.complement.size()) < k; ++i) {
    std::vector<Rational> v(n);
    v[i] = 1;
    span.push_back(v);
    if (rat_rank(span, n) == static_cast<int>(span.size()))
      out.complement.push_back(v);
    else
      span.pop_back();
  }
  require(static_cast<int>(out.complement.size()) == k, "manin_pair: no complement of U^0");
  // tau = sum alpha_b w_b + sum beta_c nu_c
  RatMatrix basis = out.complement;
  basis.insert(basis.end(), u0.begin(), u0.end());
  RatMatrix coeff = rat_inverse(rat_transpose(basis, n, n));
  RatMatrix L = left_inverse(data.u, n);

  TwoRep T = P.S.two_rep();
  DullBracket brQ = P.D.bracket();
  DorfmanConnection delta = P.D.dorfman();
  struct Elem {
    Section u, tau;
  };
  // (u, tau) ~ (u + dQ(nu), w) for tau = w + nu.
  auto project = [&](const Elem &x) {
    Section c = apply_rat(coeff, x.tau, p);
    Section nu = zero_section(p, n);
    for (int a = k; a < n; ++a)
      nu += c[a] * constant_section(p, u0[a - k]);
    Section uu = apply_rat(L, x.u + P.S.dQ.apply(nu), p);
    uu.insert(uu.end(), c.begin(), c.begin() + k);
    return uu;
  };
  auto lift = [&](int a) {
    if (a < k)
      return Elem{constant_section(p, data.u[a]), zero_section(p, n)};
    return Elem{zero_section(p, n), constant_section(p, out.complement[a - k])};
  };
  DegenerateCourant &C = out.courant;
  C = DegenerateCourant::zero(p, 2 * k);
  for (int a = 0; a < 2 * k; ++a) {
    Elem x = lift(a);
    Section X = P.D.rho.apply(x.u) + P.S.B.rho.apply(P.D.d_b(x.tau));
    for (int m = 0; m < p; ++m)
      C.rho(m, a) = X[m];
    for (int b = 0; b < 2 * k; ++b) {
      Elem y = lift(b);
      C.pairing(a, b) = pairing(x.u, y.tau) + pairing(y.u, x.tau) + pairing(x.tau, P.S.dQ.apply(y.tau));
      Elem z{brQ.apply(x.u, y.u) + T.nabla_b.apply(P.D.d_b(x.tau), y.u) -
                 T.nabla_b.apply(P.D.d_b(y.tau), x.u),
             core_bracket(P, T, x.tau, y.tau) + delta.apply(x.u, y.tau) - delta.apply(y.u, x.tau) +
                 rho_star_d(P.D.rho, pairing(x.tau, y.u))};
      Section v = project(z);
      for (int c = 0; c < 2 * k; ++c)
        C.bracket.set({a, b, c}, v[c]);
    }
  }
  for (int m = 0; m < p; ++m) {
    Section tau = zero_section(p, n);
    for (int i = 0; i < n; ++i)
      tau[i] = P.D.rho(m, i);
    Section v = project({zero_section(p, n), tau});
    for (int a = 0; a < 2 * k; ++a)
      C.dmap(a, m) = v[a];
  }
  precondition(k == 0 || !C.pairing.det().is_zero(), "manin_pair: quotient pairing is degenerate");
  return out;
}

CheckReport check_manin_pair(const ManinPairResult &M, std::uint64_t seed) {
  const DegenerateCourant &C = M.courant;
  validate(C);
  int p = C.dim(), n = C.rank(), k = M.rank_u;
  require(k >= 0 && 2 * k <= n, "manin pair: rank of U out of range");
  CheckReport rep;
  rep.title = "Manin pair";
  rep.seed = seed;
  rep.append(check_courant_axioms(C, seed, "f"));
  auto coords = coordinate_names(p);
  Poly det = C.pairing.det();
  rep.add_flag("nondegenerate", "det <.,.> is a nonzero constant", n == 0 || (det.is_constant() && !det.is_zero()),
               "", det.str(coords));
  rep.add_flag("maximal", "rank U = rank / 2", 2 * k == n, "",
               std::to_string(k) + " of " + std::to_string(n));
  std::string w, res;
  for (int a = 0; a < k && w.empty(); ++a)
    for (int b = a; b < k && w.empty(); ++b)
      if (!C.pairing(a, b).is_zero()) {
        w = "(f_" + std::to_string(a + 1) + ",f_" + std::to_string(b + 1) + ")";
        res = C.pairing(a, b).str(coords);
      }
  rep.add_flag("isotropic", "<u1,u2> = 0", w.empty(), w, res);
  Rng rng(seed);
  std::vector<std::string> names;
  std::vector<Section> frame;
  for (int a = 0; a < k; ++a) {
    names.push_back("f_" + std::to_string(a + 1));
    frame.push_back(frame_section(p, n, a));
  }
  Probes u1 = make_probes(names, frame, p, rng), u2 = make_probes(names, frame, p, rng);
  rep.add(check_identity(
      "closed", "[[u1,u2]] in U", {&u1, &u2},
      [&](auto &s) {
        Section v = C.apply(*s[0], *s[1]);
        for (int a = 0; a < k; ++a)
          v[a] = Poly(p);
        return v;
      },
      frame_names("f", n), coords));
  return rep;
}

} // namespace lie2kit
