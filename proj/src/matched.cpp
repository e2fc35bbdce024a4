#include "lie2kit/matched.hpp"

namespace lie2kit {

namespace {

void require(bool ok, const std::string &what) {
  if (!ok)
    throw StructuralError(what);
}

Section head(const Section &s, int n) { return Section(s.begin(), s.begin() + n); }
Section tail(const Section &s, int n) { return Section(s.begin() + n, s.end()); }

// Section of a dual bundle from the values of a C-infinity-linear functional on a frame.
template <class F> Section from_frame(int dim, int rank, F &&value) {
  Section r = zero_section(dim, rank);
  for (int k = 0; k < rank; ++k)
    r[k] = value(frame_section(dim, rank, k));
  return r;
}

} // namespace

// ---- matched pairs of 2-representations ---------------------------------------

void validate(const MatchedPair2Reps &M) {
  validate(M.on_b);
  validate(M.on_a);
  require(M.on_b.dim() == M.on_a.dim(), "matched pair: base dimensions differ");
  require(M.on_b.rank_b() == M.rank_b(), "matched pair: A must act on the bundle B");
  require(M.on_a.rank_b() == M.rank_a(), "matched pair: B must act on the bundle A");
  require(M.on_a.rank_c() == M.rank_c(), "matched pair: core ranks differ");
}

CheckReport check_matched_two_reps(const MatchedPair2Reps &M, std::uint64_t seed) {
  validate(M);
  CheckReport rep;
  rep.title = "matched pair of 2-representations";
  rep.seed = seed;
  rep.append(check_two_rep(M.on_b, seed, {"a", "b", "c"}), "A:");
  rep.append(check_two_rep(M.on_a, seed, {"b", "a", "c"}), "B:");

  Rng rng(seed);
  int p = M.dim(), ra = M.rank_a(), rb = M.rank_b(), rc = M.rank_c();
  auto coords = coordinate_names(p);
  Probes a = make_probes("a", p, ra, rng), b = make_probes("b", p, rb, rng),
         c = make_probes("c", p, rc, rng);
  auto fa = frame_names("a", ra), fb = frame_names("b", rb), fc = frame_names("c", rc);
  const TwoRep &TA = M.on_b, &TB = M.on_a;
  DullBracket brA = M.A().bracket(), brB = M.B().bracket();
  auto dA = [&](const Section &x) { return TB.d.apply(x); };
  auto dB = [&](const Section &x) { return TA.d.apply(x); };
  auto nab = [&](const Section &x, const Section &y) { return TA.nabla_b.apply(x, y); };
  auto nac = [&](const Section &x, const Section &y) { return TA.nabla_c.apply(x, y); };
  auto nba = [&](const Section &x, const Section &y) { return TB.nabla_b.apply(x, y); };
  auto nbc = [&](const Section &x, const Section &y) { return TB.nabla_c.apply(x, y); };
  auto rab = [&](const Section &x, const Section &y, const Section &z) { return TA.curv(x, y, z); };
  auto rba = [&](const Section &x, const Section &y, const Section &z) { return TB.curv(x, y, z); };

  rep.add(check_identity(
      "(1)", "nabla_{dA c1} c2 - nabla_{dB c2} c1 = -nabla_{dA c2} c1 + nabla_{dB c1} c2", {&c, &c},
      [&](auto &s) {
        const Section &c1 = *s[0], &c2 = *s[1];
        return nac(dA(c1), c2) - nbc(dB(c2), c1) + nac(dA(c2), c1) - nbc(dB(c1), c2);
      },
      fc, coords));
  rep.add(check_identity(
      "(2)", "[a, dA c] = dA(nabla_a c) - nabla_{dB c} a", {&a, &c},
      [&](auto &s) {
        const Section &x = *s[0], &y = *s[1];
        return brA.apply(x, dA(y)) - dA(nac(x, y)) + nba(dB(y), x);
      },
      fa, coords));
  rep.add(check_identity(
      "(3)", "[b, dB c] = dB(nabla_b c) - nabla_{dA c} b", {&b, &c},
      [&](auto &s) {
        const Section &x = *s[0], &y = *s[1];
        return brB.apply(x, dB(y)) - dB(nbc(x, y)) + nab(dA(y), x);
      },
      fb, coords));
  rep.add(check_identity(
      "(4)",
      "nabla_b nabla_a c - nabla_a nabla_b c - nabla_{nabla_b a} c + nabla_{nabla_a b} c = "
      "R_BA(b, dB c) a - R_AB(a, dA c) b",
      {&a, &b, &c},
      [&](auto &s) {
        const Section &x = *s[0], &y = *s[1], &z = *s[2];
        return nbc(y, nac(x, z)) - nac(x, nbc(y, z)) - nac(nba(y, x), z) + nbc(nab(x, y), z) -
               rba(y, dB(z), x) + rab(x, dA(z), y);
      },
      fc, coords));
  rep.add(check_identity(
      "(5)",
      "dA(R_AB(a1,a2) b) = -nabla_b[a1,a2] + [nabla_b a1, a2] + [a1, nabla_b a2] + "
      "nabla_{nabla_a2 b} a1 - nabla_{nabla_a1 b} a2",
      {&a, &a, &b},
      [&](auto &s) {
        const Section &a1 = *s[0], &a2 = *s[1], &y = *s[2];
        return dA(rab(a1, a2, y)) + nba(y, brA.apply(a1, a2)) - brA.apply(nba(y, a1), a2) -
               brA.apply(a1, nba(y, a2)) - nba(nab(a2, y), a1) + nba(nab(a1, y), a2);
      },
      fa, coords));
  rep.add(check_identity(
      "(6)",
      "dB(R_BA(b1,b2) a) = -nabla_a[b1,b2] + [nabla_a b1, b2] + [b1, nabla_a b2] + "
      "nabla_{nabla_b2 a} b1 - nabla_{nabla_b1 a} b2",
      {&b, &b, &a},
      [&](auto &s) {
        const Section &b1 = *s[0], &b2 = *s[1], &x = *s[2];
        return dB(rba(b1, b2, x)) + nab(x, brB.apply(b1, b2)) - brB.apply(nab(x, b1), b2) -
               brB.apply(b1, nab(x, b2)) - nab(nba(b2, x), b1) + nab(nba(b1, x), b2);
      },
      fb, coords));
  rep.add(check_identity(
      "(7)", "d_{nabla^A} R_BA = d_{nabla^B} R_AB on (a1,a2,b1,b2)", {&a, &a, &b, &b},
      [&](auto &s) {
        const Section &a1 = *s[0], &a2 = *s[1], &b1 = *s[2], &b2 = *s[3];
        // R_BA as a 1-form on A with values in B^* ^ B^* (x) C, and symmetrically.
        auto lhs_half = [&](const Section &x, const Section &y) {
          return nac(x, rba(b1, b2, y)) - rba(nab(x, b1), b2, y) - rba(b1, nab(x, b2), y);
        };
        auto rhs_half = [&](const Section &x, const Section &y) {
          return nbc(x, rab(a1, a2, y)) - rab(nba(x, a1), a2, y) - rab(a1, nba(x, a2), y);
        };
        Section lhs = lhs_half(a1, a2) - lhs_half(a2, a1) - rba(b1, b2, brA.apply(a1, a2));
        Section rhs = rhs_half(b1, b2) - rhs_half(b2, b1) - rab(a1, a2, brB.apply(b1, b2));
        return lhs - rhs;
      },
      fc, coords));
  rep.add(check_identity(
      "anchor:C", "rho_A dA = rho_B dB", {&c},
      [&](auto &s) { return M.A().rho.apply(dA(*s[0])) - M.B().rho.apply(dB(*s[0])); }, coords,
      coords));
  rep.add(check_identity(
      "anchor:AB", "[rho_A a, rho_B b] = rho_B(nabla_a b) - rho_A(nabla_b a)", {&a, &b},
      [&](auto &s) {
        const Section &x = *s[0], &y = *s[1];
        return vf_bracket(M.A().rho.apply(x), M.B().rho.apply(y)) - M.B().rho.apply(nab(x, y)) +
               M.A().rho.apply(nba(y, x));
      },
      coords, coords));
  return rep;
}

SplitLie2 bicrossproduct(const MatchedPair2Reps &M, std::uint64_t seed) {
  require_pass(check_matched_two_reps(M, seed), "bicrossproduct");
  int p = M.dim(), ra = M.rank_a(), rb = M.rank_b(), rc = M.rank_c(), rq = ra + rb;
  const TwoRep &TA = M.on_b, &TB = M.on_a;
  SplitLie2 S = SplitLie2::zero(p, rq, rc);
  for (int m = 0; m < p; ++m) {
    for (int i = 0; i < ra; ++i)
      S.rho(m, i) = M.A().rho(m, i);
    for (int j = 0; j < rb; ++j)
      S.rho(m, ra + j) = M.B().rho(m, j);
  }
  // l1 = dB pr_B - dA pr_A on C.
  for (int k = 0; k < rc; ++k) {
    for (int i = 0; i < ra; ++i)
      S.l1(i, k) = -TB.d(i, k);
    for (int j = 0; j < rb; ++j)
      S.l1(ra + j, k) = TA.d(j, k);
  }
  // [[(a,b),(a',b')]] = ([a,a'] + nabla_b a' - nabla_b' a, [b,b'] + nabla_a b' - nabla_a' b)
  // on frames; the Leibniz extension is the one of the anchored bracket.
  for (auto &[idx, v] : M.A().c.entries())
    S.bracket.set(idx, v);
  for (auto &[idx, v] : M.B().c.entries())
    S.bracket.set({ra + idx[0], ra + idx[1], ra + idx[2]}, v);
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < rb; ++j) {
      for (int k = 0; k < ra; ++k) {
        Poly v = TB.nabla_b.gamma.get({j, i, k});
        S.bracket.set({i, ra + j, k}, -v);
        S.bracket.set({ra + j, i, k}, v);
      }
      for (int k = 0; k < rb; ++k) {
        Poly v = TA.nabla_b.gamma.get({i, j, k});
        S.bracket.set({i, ra + j, ra + k}, v);
        S.bracket.set({ra + j, i, ra + k}, -v);
      }
    }
  // nabla_{(a,b)} c = nabla_a c + nabla_b c; the split data stores its dual on C^*.
  LinearConnection onc{S.rho, PolyTensor(p, {rq, rc, rc})};
  for (auto &[idx, v] : TA.nabla_c.gamma.entries())
    onc.gamma.set(idx, v);
  for (auto &[idx, v] : TB.nabla_c.gamma.entries())
    onc.gamma.set({ra + idx[0], idx[1], idx[2]}, v);
  S.nabla = onc.dual().gamma;
  // l3 = omega_R, evaluated on frame triples.
  auto omega = [&](const Section &q1, const Section &q2, const Section &q3) {
    Section a1 = head(q1, ra), a2 = head(q2, ra), a3 = head(q3, ra);
    Section b1 = tail(q1, ra), b2 = tail(q2, ra), b3 = tail(q3, ra);
    return TA.curv(a1, a2, b3) + TA.curv(a2, a3, b1) + TA.curv(a3, a1, b2) - TB.curv(b1, b2, a3) -
           TB.curv(b2, b3, a1) - TB.curv(b3, b1, a2);
  };
  for (int i = 0; i < rq; ++i)
    for (int j = i + 1; j < rq; ++j)
      for (int k = j + 1; k < rq; ++k) {
        Section w = omega(frame_section(p, rq, i), frame_section(p, rq, j), frame_section(p, rq, k));
        for (int l = 0; l < rc; ++l)
          S.l3.set({i, j, k, l}, w[l]);
      }
  return S;
}

MatchedPair2Reps decompose_bicrossproduct(const SplitLie2 &S, int ra) {
  validate(S);
  int p = S.dim(), rq = S.rank_q(), rc = S.rank_b(), rb = rq - ra;
  if (ra < 0 || rb < 0)
    throw PreconditionError("decompose: rank of A outside [0, rank Q]");
  auto name = [&](int i) {
    return i < ra ? "a_" + std::to_string(i + 1) : "b_" + std::to_string(i - ra + 1);
  };
  auto coords = coordinate_names(p);
  for (auto &[idx, v] : S.bracket.entries()) {
    bool aa = idx[0] < ra && idx[1] < ra, bb = idx[0] >= ra && idx[1] >= ra;
    if ((aa && idx[2] >= ra) || (bb && idx[2] < ra))
      throw PreconditionError(std::string("decompose: ") + (aa ? "A" : "B") +
                              "-frame bracket leaks into " + (aa ? "B" : "A") + " at (" +
                              name(idx[0]) + "," + name(idx[1]) + "), coefficient " +
                              v.str(coords) + " on " + name(idx[2]));
  }
  for (auto &[idx, v] : S.l3.entries()) {
    bool aaa = idx[2] < ra, bbb = idx[0] >= ra;
    if (aaa || bbb)
      throw PreconditionError(std::string("decompose: l3 does not vanish on pure ") +
                              (aaa ? "A" : "B") + "-triples at (" + name(idx[0]) + "," +
                              name(idx[1]) + "," + name(idx[2]) + ")");
  }
  LieAlgebroid A = LieAlgebroid::zero(p, ra), B = LieAlgebroid::zero(p, rb);
  for (int m = 0; m < p; ++m) {
    for (int i = 0; i < ra; ++i)
      A.rho(m, i) = S.rho(m, i);
    for (int j = 0; j < rb; ++j)
      B.rho(m, j) = S.rho(m, ra + j);
  }
  PolyMatrix dA(p, ra, rc), dB(p, rb, rc);
  for (int k = 0; k < rc; ++k) {
    for (int i = 0; i < ra; ++i)
      dA(i, k) = -S.l1(i, k);
    for (int j = 0; j < rb; ++j)
      dB(j, k) = S.l1(ra + j, k);
  }
  PolyTensor nab(p, {ra, rb, rb}), nba(p, {rb, ra, ra});
  for (auto &[idx, v] : S.bracket.entries()) {
    int i = idx[0], j = idx[1], k = idx[2];
    if (i < ra && j < ra)
      A.c.set(idx, v);
    else if (i >= ra && j >= ra)
      B.c.set({i - ra, j - ra, k - ra}, v);
    else if (i < ra && k >= ra) // nabla_a b = pr_B [[a, b]]
      nab.set({i, j - ra, k - ra}, v);
    else if (i >= ra && k < ra) // nabla_b a = pr_A [[b, a]]
      nba.set({i - ra, j, k}, v);
  }
  LinearConnection onc = LinearConnection{S.rho, S.nabla}.dual();
  PolyTensor nac(p, {ra, rc, rc}), nbc(p, {rb, rc, rc});
  for (auto &[idx, v] : onc.gamma.entries()) {
    if (idx[0] < ra)
      nac.set(idx, v);
    else
      nbc.set({idx[0] - ra, idx[1], idx[2]}, v);
  }
  PolyTensor rab(p, {ra, ra, rb, rc}, {{0, 2}}), rba(p, {rb, rb, ra, rc}, {{0, 2}});
  for (auto &[idx, v] : S.l3.entries()) {
    int i = idx[0], j = idx[1], k = idx[2], l = idx[3];
    if (j < ra) // (a, a, b): R_AB(a1,a2) b = l3(a1,a2,b)
      rab.set({i, j, k - ra, l}, v);
    else if (i < ra) // (a, b, b): R_BA(b1,b2) a = -l3(b1,b2,a) = -l3(a,b1,b2)
      rba.set({j - ra, k - ra, i, l}, -v);
  }
  MatchedPair2Reps M{TwoRep{A, dB, {A.rho, nab}, {A.rho, nac}, rab},
                     TwoRep{B, dA, {B.rho, nba}, {B.rho, nbc}, rba}};
  validate(M);
  return M;
}

// ---- matched pairs of a self-dual 2-rep and a Dorfman 2-rep ----------------------

void validate(const LAPair &P) {
  validate(P.S);
  validate(P.D);
  require(P.S.dim() == P.D.dim(), "LA pair: base dimensions differ");
  require(P.S.rank_q() == P.D.rank_q(), "LA pair: ranks of Q differ");
  require(P.S.rank_b() == P.D.rank_b(), "LA pair: ranks of B differ");
}

namespace {

const char *const kMatchedLabels[] = {"M1", "M2", "M3", "M4", "M5", "almost_C", "LC10",
                                      "anchor:Q*", "anchor:QB"};

} // namespace

bool matched_conditions_pass(const CheckReport &rep) {
  for (const char *l : kMatchedLabels) {
    const CheckEntry *e = rep.find(l);
    if (e && !e->pass)
      return false;
  }
  return true;
}

CheckReport check_la_matched_pair(const LAPair &P, std::uint64_t seed) {
  validate(P);
  CheckReport rep;
  rep.title = "matched pair of a self-dual 2-representation and a Dorfman 2-representation";
  rep.seed = seed;
  rep.append(check_selfdual2rep(P.S, seed), "S:");
  rep.append(check_dorfman2rep(P.D, seed), "D:");

  Rng rng(seed);
  int p = P.dim(), rq = P.rank_q(), rbk = P.rank_b();
  auto coords = coordinate_names(p);
  Probes q = make_probes("e", p, rq, rng), t = make_probes("eps", p, rq, rng),
         b = make_probes("b", p, rbk, rng);
  auto fq = frame_names("e", rq), ft = frame_names("eps", rq), fb = frame_names("b", rbk);

  const SelfDual2Rep &S = P.S;
  const Dorfman2Rep &D = P.D;
  TwoRep T = S.two_rep();
  DullBracket brQ = D.bracket(), brB = S.B.bracket();
  DorfmanConnection delta = D.dorfman();
  LinearConnection nqb = D.connection();
  auto dQ = [&](const Section &x) { return S.dQ.apply(x); };
  auto dB = [&](const Section &x) { return D.d_b(x); };
  auto dBs = [&](const Section &x) { return D.d_b_star(x); };
  auto nbq = [&](const Section &x, const Section &y) { return T.nabla_b.apply(x, y); };
  auto nbt = [&](const Section &x, const Section &y) { return T.nabla_c.apply(x, y); };
  auto nq = [&](const Section &x, const Section &y) { return nqb.apply(x, y); };
  auto dl = [&](const Section &x, const Section &y) { return delta.apply(x, y); };
  auto RQ = [&](const Section &x, const Section &y, const Section &z) { return D.curv(x, y, z); };
  auto RB = [&](const Section &x, const Section &y, const Section &z) { return T.curv(x, y, z); };
  auto rq_star_d = [&](const Poly &f) { return rho_star_d(D.rho, f); };

  rep.add(check_identity(
      "M1", "dQ(Delta_q tau) = nabla_{dB tau} q + [[q, dQ tau]] + dB^* <tau, nabla_. q>", {&q, &t},
      [&](auto &s) {
        const Section &x = *s[0], &y = *s[1];
        Section w = from_frame(p, rbk, [&](const Section &bb) { return pairing(nbq(bb, x), y); });
        return dQ(dl(x, y)) - nbq(dB(y), x) - brQ.apply(x, dQ(y)) - dBs(w);
      },
      fq, coords));
  rep.add(check_identity(
      "M2", "dB(nabla_b tau) = [b, dB tau] + nabla_{dQ tau} b", {&b, &t},
      [&](auto &s) {
        const Section &x = *s[0], &y = *s[1];
        return dB(nbt(x, y)) - brB.apply(x, dB(y)) - nq(dQ(y), x);
      },
      fb, coords));
  rep.add(check_identity(
      "M3",
      "dB R(b1,b2) q = -nabla_q[b1,b2] + [nabla_q b1, b2] + [b1, nabla_q b2] + "
      "nabla_{nabla_b2 q} b1 - nabla_{nabla_b1 q} b2",
      {&b, &b, &q},
      [&](auto &s) {
        const Section &b1 = *s[0], &b2 = *s[1], &x = *s[2];
        return dB(RB(b1, b2, x)) + nq(x, brB.apply(b1, b2)) - brB.apply(nq(x, b1), b2) -
               brB.apply(b1, nq(x, b2)) - nq(nbq(b2, x), b1) + nq(nbq(b1, x), b2);
      },
      fb, coords));
  rep.add(check_identity(
      "M4",
      "dQ R(q1,q2) b = -nabla_b[[q1,q2]] + [[q1, nabla_b q2]] + [[nabla_b q1, q2]] + "
      "nabla_{nabla_q2 b} q1 - nabla_{nabla_q1 b} q2 + dB^* <R(., b) q1, q2>",
      {&q, &q, &b},
      [&](auto &s) {
        const Section &q1 = *s[0], &q2 = *s[1], &y = *s[2];
        Section w = from_frame(p, rbk, [&](const Section &bb) { return pairing(q2, RB(bb, y, q1)); });
        return dQ(RQ(q1, q2, y)) + nbq(y, brQ.apply(q1, q2)) - brQ.apply(q1, nbq(y, q2)) -
               brQ.apply(nbq(y, q1), q2) - nbq(nq(q2, y), q1) + nbq(nq(q1, y), q2) - dBs(w);
      },
      fq, coords));
  rep.add(check_identity(
      "M5", "d_{nabla^B} omega_R = d_{nabla^Q} omega_B, expanded on (q1,q2,b1,b2)",
      {&q, &q, &b, &b},
      [&](auto &s) {
        const Section &q1 = *s[0], &q2 = *s[1], &b1 = *s[2], &b2 = *s[3];
        Section lhs = nbt(b2, RQ(q1, q2, b1)) - nbt(b1, RQ(q1, q2, b2)) +
                      RQ(q1, q2, brB.apply(b1, b2)) + RQ(nbq(b1, q1), q2, b2) +
                      RQ(q1, nbq(b1, q2), b2) - RQ(nbq(b2, q1), q2, b1) - RQ(q1, nbq(b2, q2), b1) +
                      dl(q1, RB(b1, b2, q2)) - dl(q2, RB(b1, b2, q1)) - RB(b1, b2, brQ.apply(q1, q2)) -
                      RB(nq(q1, b1), b2, q2) - RB(b1, nq(q1, b2), q2) + RB(nq(q2, b1), b2, q1) +
                      RB(b1, nq(q2, b2), q1);
        Section rhs = from_frame(p, rq, [&](const Section &qq) {
                        return pairing(q2, RB(b1, nq(qq, b2), q1) + RB(nq(qq, b1), b2, q1));
                      }) -
                      rq_star_d(pairing(q2, RB(b1, b2, q1)));
        return lhs - rhs;
      },
      ft, coords));
  rep.add(check_identity(
      "almost_C",
      "(Delta_{dQ s1} s2 - nabla_{dB s2} s1) + (Delta_{dQ s2} s1 - nabla_{dB s1} s2) = "
      "rho_Q^* d <s1, dQ s2>",
      {&t, &t},
      [&](auto &s) {
        const Section &s1 = *s[0], &s2 = *s[1];
        return dl(dQ(s1), s2) - nbt(dB(s2), s1) + dl(dQ(s2), s1) - nbt(dB(s1), s2) -
               rq_star_d(pairing(dQ(s2), s1));
      },
      ft, coords));
  rep.add(check_identity(
      "LC10",
      "R(q, dQ tau) b - R(b, dB tau) q = Delta_q nabla_b tau - nabla_b Delta_q tau + "
      "Delta_{nabla_b q} tau - nabla_{nabla_q b} tau - <nabla_{nabla_. b} q, tau>",
      {&q, &t, &b},
      [&](auto &s) {
        const Section &x = *s[0], &y = *s[1], &z = *s[2];
        Section w = from_frame(p, rq, [&](const Section &qq) { return pairing(nbq(nq(qq, z), x), y); });
        return RQ(x, dQ(y), z) - RB(z, dB(y), x) -
               (dl(x, nbt(z, y)) - nbt(z, dl(x, y)) + dl(nbq(z, x), y) - nbt(nq(x, z), y) - w);
      },
      ft, coords));
  rep.add(check_identity(
      "anchor:Q*", "rho_Q dQ = rho_B dB", {&t},
      [&](auto &s) { return D.rho.apply(dQ(*s[0])) - S.B.rho.apply(dB(*s[0])); }, coords, coords));
  rep.add(check_identity(
      "anchor:QB", "[rho_Q q, rho_B b] = rho_B(nabla_q b) - rho_Q(nabla_b q)", {&q, &b},
      [&](auto &s) {
        const Section &x = *s[0], &y = *s[1];
        return vf_bracket(D.rho.apply(x), S.B.rho.apply(y)) - S.B.rho.apply(nq(x, y)) +
               D.rho.apply(nbq(y, x));
      },
      coords, coords));
  return rep;
}

CheckReport check_q_preserves_poisson(const LAPair &P, std::uint64_t seed) {
  validate(P);
  CheckReport rep;
  rep.title = "homological vector field preserves the Poisson bracket";
  rep.seed = seed;
  GradedSignature sig = P.D.signature();
  GradedDerivation Q = build_homological_field(P.D);
  auto gens = generators(sig);
  auto names = generator_names(sig);
  int p = sig.dim, rq = sig.rq;
  auto kind = [&](std::size_t g) { return g < std::size_t(p) ? 0 : g < std::size_t(p + rq) ? 1 : 2; };
  const char *kinds[] = {"x", "tau", "b"};
  for (int k1 = 0; k1 < 3; ++k1)
    for (int k2 = 0; k2 <= k1; ++k2) {
      CheckEntry e;
      e.label = std::string("(") + kinds[k1] + "," + kinds[k2] + ")";
      e.anchor = "Q{xi,eta} = {Q xi, eta} + (-1)^|xi| {xi, Q eta}";
      for (std::size_t g1 = 0; g1 < gens.size() && e.pass; ++g1)
        for (std::size_t g2 = 0; g2 <= g1 && e.pass; ++g2) {
          if (kind(g1) != k1 || kind(g2) != k2)
            continue;
          const GradedFunction &xi = gens[g1], &eta = gens[g2];
          int sign = kind(g1) == 1 ? -1 : 1;
          GradedFunction r = Q.apply(poisson_bracket(P.S, xi, eta)) -
                             poisson_bracket(P.S, Q.apply(xi), eta) -
                             poisson_bracket(P.S, xi, Q.apply(eta)).scale(Poly::constant(p, sign));
          ++e.evaluations;
          if (!r.is_zero()) {
            e.pass = false;
            e.witness = "(" + names[g1] + "," + names[g2] + ")";
            e.residual = r.str();
          }
        }
      rep.add(e);
    }
  bool verdict = rep.pass();
  bool matched = matched_conditions_pass(check_la_matched_pair(P, seed));
  rep.add_flag("cross-check", "Q preserves {,} iff M1-M5 hold", verdict == matched, "",
               std::string("Q-preservation ") + (verdict ? "pass" : "fail") + ", matched pair " +
                   (matched ? "pass" : "fail"));
  return rep;
}

// ---- change of Lagrangian splitting ---------------------------------------------

SelfDual2Rep change_splitting(const SelfDual2Rep &S, const PolyTensor &phi) {
  validate(S);
  int p = S.dim(), rq = S.rank_q(), rb = S.rank_b();
  require(phi.dim() == p && phi.shape() == std::vector<int>{rq, rq, rb} &&
              phi.groups() == std::vector<PolyTensor::Group>{{0, 2}},
          "change_splitting: phi must be antisymmetric of shape [rQ, rQ, rB]");
  auto phi12 = [&](const Section &b, const Section &q) {
    return from_frame(p, rq, [&](const Section &qk) { return pairing(eval_two_form(phi, q, qk), b); });
  };
  SelfDual2Rep out = S;
  for (int l = 0; l < rb; ++l)
    for (int j = 0; j < rq; ++j) {
      Section v = S.dQ.apply(phi12(frame_section(p, rb, l), frame_section(p, rq, j)));
      for (int k = 0; k < rq; ++k)
        out.nabla.add({l, j, k}, v[k]);
    }
  // Hom-connection of the old splitting.
  TwoRep T = S.two_rep();
  DullBracket br = S.B.bracket();
  auto hom = [&](const Section &b1, const Section &b2, const Section &q) {
    return T.nabla_c.apply(b1, phi12(b2, q)) - phi12(b2, T.nabla_b.apply(b1, q));
  };
  for (int i = 0; i < rb; ++i)
    for (int j = i + 1; j < rb; ++j)
      for (int k = 0; k < rq; ++k) {
        Section b1 = frame_section(p, rb, i), b2 = frame_section(p, rb, j), q = frame_section(p, rq, k);
        Section r = hom(b1, b2, q) - hom(b2, b1, q) - phi12(br.apply(b1, b2), q) +
                    phi12(b1, S.dQ.apply(phi12(b2, q))) - phi12(b2, S.dQ.apply(phi12(b1, q)));
        for (int l = k + 1; l < rq; ++l)
          out.rb.add({i, j, k, l}, r[l]);
      }
  return out;
}

LAPair change_splitting(const LAPair &P, const PolyTensor &phi) {
  validate(P);
  return {change_splitting(P.S, phi), change_splitting(P.D, phi)};
}

} // namespace lie2kit
