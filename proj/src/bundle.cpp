#include "lie2kit/bundle.hpp"

namespace lie2kit {

namespace {

PolyTensor cube(int dim, int a, int b, int c) { return PolyTensor(dim, {a, b, c}); }

void require(bool ok, const std::string &what) {
  if (!ok)
    throw StructuralError(what);
}

} // namespace

LinearConnection LinearConnection::zero(const PolyMatrix &rho, int module_rank) {
  return {rho, cube(rho.dim(), rho.cols(), module_rank, module_rank)};
}

Section LinearConnection::apply(const Section &a, const Section &b) const {
  require(static_cast<int>(a.size()) == acting_rank() && static_cast<int>(b.size()) == module_rank(),
          "connection applied to sections of wrong rank");
  Section r = zero_section(dim(), module_rank());
  for (auto &[idx, v] : gamma.entries()) {
    const Poly &ai = a[idx[0]], &bj = b[idx[1]];
    if (!ai.is_zero() && !bj.is_zero())
      r[idx[2]] += ai * bj * v;
  }
  Section X = rho.apply(a);
  for (int k = 0; k < module_rank(); ++k)
    r[k] += derive(X, b[k]);
  return r;
}

LinearConnection LinearConnection::dual() const {
  LinearConnection d{rho, cube(dim(), acting_rank(), module_rank(), module_rank())};
  for (auto &[idx, v] : gamma.entries())
    d.gamma.set({idx[0], idx[2], idx[1]}, -v);
  return d;
}

DorfmanConnection DorfmanConnection::zero(const PolyMatrix &rho) {
  return {rho, cube(rho.dim(), rho.cols(), rho.cols(), rho.cols())};
}

Section DorfmanConnection::apply(const Section &q, const Section &tau) const {
  require(static_cast<int>(q.size()) == rank() && static_cast<int>(tau.size()) == rank(),
          "Dorfman connection applied to sections of wrong rank");
  Section r = zero_section(dim(), rank());
  for (auto &[idx, v] : d.entries()) {
    const Poly &qi = q[idx[0]], &tj = tau[idx[1]];
    if (!qi.is_zero() && !tj.is_zero())
      r[idx[2]] += qi * tj * v;
  }
  Section X = rho.apply(q);
  for (int k = 0; k < rank(); ++k)
    r[k] += derive(X, tau[k]);
  for (int i = 0; i < rank(); ++i)
    if (!tau[i].is_zero())
      r += tau[i] * rho_star_d(rho, q[i]);
  return r;
}

DullBracket DorfmanConnection::dual_bracket() const {
  DullBracket b{rho, cube(dim(), rank(), rank(), rank())};
  for (auto &[idx, v] : d.entries())
    b.c.set({idx[0], idx[2], idx[1]}, -v);
  return b;
}

DullBracket DullBracket::zero(const PolyMatrix &rho) {
  return {rho, cube(rho.dim(), rho.cols(), rho.cols(), rho.cols())};
}

Section DullBracket::apply(const Section &a, const Section &b) const {
  require(static_cast<int>(a.size()) == rank() && static_cast<int>(b.size()) == rank(),
          "bracket applied to sections of wrong rank");
  Section r = zero_section(dim(), rank());
  for (auto &[idx, v] : c.entries()) {
    const Poly &ai = a[idx[0]], &bj = b[idx[1]];
    if (!ai.is_zero() && !bj.is_zero())
      r[idx[2]] += ai * bj * v;
  }
  Section X = rho.apply(a), Y = rho.apply(b);
  for (int k = 0; k < rank(); ++k)
    r[k] += derive(X, b[k]) - derive(Y, a[k]);
  return r;
}

bool DullBracket::skew() const {
  for (auto &[idx, v] : c.entries())
    if (c.get({idx[1], idx[0], idx[2]}) != -v)
      return false;
  return true;
}

DorfmanConnection DullBracket::dual_dorfman() const {
  DorfmanConnection d{rho, cube(dim(), rank(), rank(), rank())};
  for (auto &[idx, v] : c.entries())
    d.d.set({idx[0], idx[2], idx[1]}, -v);
  return d;
}

Section curvature(const LinearConnection &nabla, const DullBracket &br, const Section &a1,
                  const Section &a2, const Section &b) {
  return nabla.apply(a1, nabla.apply(a2, b)) - nabla.apply(a2, nabla.apply(a1, b)) -
         nabla.apply(br.apply(a1, a2), b);
}

Section curvature(const DorfmanConnection &delta, const DullBracket &br, const Section &q1,
                  const Section &q2, const Section &tau) {
  return delta.apply(q1, delta.apply(q2, tau)) - delta.apply(q2, delta.apply(q1, tau)) -
         delta.apply(br.apply(q1, q2), tau);
}

Section jacobiator(const DullBracket &br, const Section &q1, const Section &q2, const Section &q3) {
  return br.apply(br.apply(q1, q2), q3) + br.apply(q2, br.apply(q1, q3)) -
         br.apply(q1, br.apply(q2, q3));
}

PolyTensor curvature_form(const LinearConnection &nabla, const DullBracket &br) {
  int ra = nabla.acting_rank(), rb = nabla.module_rank(), p = nabla.dim();
  PolyTensor t(p, {ra, ra, rb, rb}, {{0, 2}});
  for (int i = 0; i < ra; ++i)
    for (int j = i + 1; j < ra; ++j)
      for (int l = 0; l < rb; ++l) {
        Section v = curvature(nabla, br, frame_section(p, ra, i), frame_section(p, ra, j),
                              frame_section(p, rb, l));
        for (int k = 0; k < rb; ++k)
          t.set({i, j, l, k}, v[k]);
      }
  return t;
}

PolyTensor curvature_form(const DorfmanConnection &delta, const DullBracket &br) {
  int r = delta.rank(), p = delta.dim();
  PolyTensor t(p, {r, r, r, r}, {{0, 2}});
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      for (int l = 0; l < r; ++l) {
        Section v = curvature(delta, br, frame_section(p, r, i), frame_section(p, r, j),
                              frame_section(p, r, l));
        for (int k = 0; k < r; ++k)
          t.set({i, j, l, k}, v[k]);
      }
  return t;
}

PolyTensor jacobiator_form(const DullBracket &br) {
  int r = br.rank(), p = br.dim();
  PolyTensor t(p, {r, r, r, r});
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int l = 0; l < r; ++l) {
        Section v = jacobiator(br, frame_section(p, r, i), frame_section(p, r, j),
                               frame_section(p, r, l));
        for (int k = 0; k < r; ++k)
          t.set({i, j, l, k}, v[k]);
      }
  return t;
}

CheckReport check_dorfman_duality(const DorfmanConnection &delta, std::uint64_t seed) {
  CheckReport rep;
  rep.title = "Dorfman connection / dull bracket duality";
  rep.seed = seed;
  Rng rng(seed);
  int p = delta.dim(), r = delta.rank();
  Probes q = make_probes("e", p, r, rng), t = make_probes("eps", p, r, rng);
  DullBracket br = delta.dual_bracket();
  rep.add(check_scalar_identity(
      "duality", "<[[q1,q2]],tau> + <q2, Delta_q1 tau> = rho(q1)<q2,tau>", {&q, &q, &t},
      [&](auto &a) {
        return pairing(br.apply(*a[0], *a[1]), *a[2]) + pairing(*a[1], delta.apply(*a[0], *a[2])) -
               anchor_derive(delta.rho, *a[0], pairing(*a[1], *a[2]));
      },
      coordinate_names(p)));
  return rep;
}

CheckReport check_curv_dual_jac(const DorfmanConnection &delta, std::uint64_t seed) {
  CheckReport rep;
  rep.title = "curvature of a Dorfman connection versus the Jacobiator";
  rep.seed = seed;
  Rng rng(seed);
  int p = delta.dim(), r = delta.rank();
  Probes q = make_probes("e", p, r, rng), t = make_probes("eps", p, r, rng);
  DullBracket br = delta.dual_bracket();
  rep.add(check_scalar_identity(
      "curv-dual-jac", "<tau, Jac(q1,q2,q3)> = <R_Delta(q1,q2) tau, q3>", {&q, &q, &q, &t},
      [&](auto &a) {
        return pairing(*a[3], jacobiator(br, *a[0], *a[1], *a[2])) -
               pairing(curvature(delta, br, *a[0], *a[1], *a[3]), *a[2]);
      },
      coordinate_names(p)));
  return rep;
}

LieAlgebroid LieAlgebroid::zero(int dim, int rank) {
  return {PolyMatrix(dim, dim, rank), cube(dim, rank, rank, rank)};
}

CheckReport check_lie_algebroid(const LieAlgebroid &A, std::uint64_t seed, const std::string &stem) {
  CheckReport rep;
  rep.title = "Lie algebroid";
  rep.seed = seed;
  Rng rng(seed);
  int p = A.dim(), r = A.rank();
  auto coords = coordinate_names(p);
  Probes a = make_probes(stem, p, r, rng);
  DullBracket br = A.bracket();
  rep.add_flag("skew", "bracket skew-symmetric", br.skew());
  rep.add(check_identity(
      "anchor", "rho[[a1,a2]] = [rho a1, rho a2]", {&a, &a},
      [&](auto &s) {
        return A.rho.apply(br.apply(*s[0], *s[1])) -
               vf_bracket(A.rho.apply(*s[0]), A.rho.apply(*s[1]));
      },
      coords, coords));
  rep.add(check_identity(
      "jacobi", "[[a1,[[a2,a3]]]] = [[[[a1,a2]],a3]] + [[a2,[[a1,a3]]]]", {&a, &a, &a},
      [&](auto &s) { return jacobiator(br, *s[0], *s[1], *s[2]); }, frame_names(stem, r), coords));
  return rep;
}

Section TwoRep::curv(const Section &a1, const Section &a2, const Section &b) const {
  Section out = zero_section(dim(), rank_c());
  for (auto &[idx, v] : r.entries()) {
    // Stored tuples have idx[0] < idx[1]; add both orderings.
    Poly w = a1[idx[0]] * a2[idx[1]] - a1[idx[1]] * a2[idx[0]];
    if (w.is_zero() || b[idx[2]].is_zero())
      continue;
    out[idx[3]] += w * b[idx[2]] * v;
  }
  return out;
}

void validate(const TwoRep &T) {
  int p = T.dim(), ra = T.A.rank(), rb = T.rank_b(), rc = T.rank_c();
  require(T.A.rho.rows() == p && T.A.c.shape() == std::vector<int>{ra, ra, ra},
          "2-rep: Lie algebroid shape");
  require(T.nabla_b.acting_rank() == ra && T.nabla_b.module_rank() == rb, "2-rep: nabla on B shape");
  require(T.nabla_c.acting_rank() == ra && T.nabla_c.module_rank() == rc, "2-rep: nabla on C shape");
  require(T.r.shape() == std::vector<int>{ra, ra, rb, rc} && T.r.groups().size() == 1,
          "2-rep: curvature shape");
}

CheckReport check_two_rep(const TwoRep &T, std::uint64_t seed, const TwoRepFrames &names) {
  validate(T);
  CheckReport rep;
  rep.title = "2-representation";
  rep.seed = seed;
  rep.append(check_lie_algebroid(T.A, seed, names.a), "A.");
  Rng rng(seed);
  int p = T.dim(), ra = T.A.rank(), rb = T.rank_b(), rc = T.rank_c();
  auto coords = coordinate_names(p);
  Probes a = make_probes(names.a, p, ra, rng), b = make_probes(names.b, p, rb, rng),
         c = make_probes(names.c, p, rc, rng);
  DullBracket br = T.A.bracket();
  auto fb = frame_names(names.b, rb), fc = frame_names(names.c, rc);
  rep.add(check_identity(
      "(1)", "d(nabla_a c) = nabla_a(d c)", {&a, &c},
      [&](auto &s) {
        return T.d.apply(T.nabla_c.apply(*s[0], *s[1])) - T.nabla_b.apply(*s[0], T.d.apply(*s[1]));
      },
      fb, coords));
  rep.add(check_identity(
      "(2C)", "R_nabla^C(a1,a2) c = R(a1,a2)(d c)", {&a, &a, &c},
      [&](auto &s) {
        return curvature(T.nabla_c, br, *s[0], *s[1], *s[2]) - T.curv(*s[0], *s[1], T.d.apply(*s[2]));
      },
      fc, coords));
  rep.add(check_identity(
      "(2B)", "R_nabla^B(a1,a2) b = d(R(a1,a2) b)", {&a, &a, &b},
      [&](auto &s) {
        return curvature(T.nabla_b, br, *s[0], *s[1], *s[2]) - T.d.apply(T.curv(*s[0], *s[1], *s[2]));
      },
      fb, coords));
  auto hom = [&](const Section &x, auto &&phi, const Section &bb) {
    return T.nabla_c.apply(x, phi(bb)) - phi(T.nabla_b.apply(x, bb));
  };
  rep.add(check_identity(
      "(3)", "d_nabla^Hom R = 0", {&a, &a, &a, &b},
      [&](auto &s) {
        const Section &a1 = *s[0], &a2 = *s[1], &a3 = *s[2], &bb = *s[3];
        auto R = [&](const Section &x, const Section &y) {
          return [&, x, y](const Section &v) { return T.curv(x, y, v); };
        };
        return hom(a1, R(a2, a3), bb) - hom(a2, R(a1, a3), bb) + hom(a3, R(a1, a2), bb) -
               T.curv(br.apply(a1, a2), a3, bb) + T.curv(br.apply(a1, a3), a2, bb) -
               T.curv(br.apply(a2, a3), a1, bb);
      },
      fc, coords));
  return rep;
}

TwoRep dualize_two_rep(const TwoRep &T) {
  validate(T);
  int p = T.dim(), ra = T.A.rank(), rb = T.rank_b(), rc = T.rank_c();
  TwoRep D{T.A, T.d.transpose(), T.nabla_c.dual(), T.nabla_b.dual(),
           PolyTensor(p, {ra, ra, rc, rb}, {{0, 2}})};
  for (auto &[idx, v] : T.r.entries())
    D.r.set({idx[0], idx[1], idx[3], idx[2]}, -v);
  return D;
}

LieAlgebroid tangent_algebroid(int dim) {
  LieAlgebroid T = LieAlgebroid::zero(dim, dim);
  T.rho = PolyMatrix::identity(dim, dim);
  return T;
}

TwoRep connection_two_rep(const LinearConnection &nabla) {
  int p = nabla.dim(), r = nabla.module_rank();
  require(nabla.rho == PolyMatrix::identity(p, p), "connection_two_rep: expects a TM-connection");
  LieAlgebroid T = tangent_algebroid(p);
  return {T, PolyMatrix::identity(p, r), nabla, nabla, curvature_form(nabla, T.bracket())};
}

TwoRep adjoint_two_rep(const LieAlgebroid &A, const LinearConnection &nabla) {
  int p = A.dim(), r = A.rank();
  require(nabla.rho == PolyMatrix::identity(p, p) && nabla.module_rank() == r,
          "adjoint_two_rep: expects a TM-connection on A");
  DullBracket br = A.bracket();
  auto rho = [&](const Section &a) { return A.rho.apply(a); };
  // nabla^bas_a X = [rho a, X] + rho(nabla_X a), nabla^bas_a1 a2 = [a1,a2] + nabla_{rho a2} a1
  auto bas_tm = [&](const Section &a, const Section &X) {
    return vf_bracket(rho(a), X) + rho(nabla.apply(X, a));
  };
  auto bas_a = [&](const Section &a1, const Section &a2) {
    return br.apply(a1, a2) + nabla.apply(rho(a2), a1);
  };
  TwoRep T{A, A.rho, {A.rho, cube(p, r, p, p)}, {A.rho, cube(p, r, r, r)},
           PolyTensor(p, {r, r, p, r}, {{0, 2}})};
  for (int i = 0; i < r; ++i) {
    Section ai = frame_section(p, r, i);
    for (int m = 0; m < p; ++m) {
      Section v = bas_tm(ai, frame_section(p, p, m));
      for (int k = 0; k < p; ++k)
        T.nabla_b.gamma.set({i, m, k}, v[k]);
    }
    for (int j = 0; j < r; ++j) {
      Section v = bas_a(ai, frame_section(p, r, j));
      for (int k = 0; k < r; ++k)
        T.nabla_c.gamma.set({i, j, k}, v[k]);
    }
  }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      for (int m = 0; m < p; ++m) {
        Section a1 = frame_section(p, r, i), a2 = frame_section(p, r, j), X = frame_section(p, p, m);
        Section v = br.apply(nabla.apply(X, a1), a2) + br.apply(a1, nabla.apply(X, a2)) -
                    nabla.apply(X, br.apply(a1, a2)) + nabla.apply(bas_tm(a2, X), a1) -
                    nabla.apply(bas_tm(a1, X), a2);
        for (int k = 0; k < r; ++k)
          T.r.set({i, j, m, k}, v[k]);
      }
  return T;
}

} // namespace lie2kit
