// Copyright 2026 The fqcircle Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FQCIRCLE_CHARSUM_HPP
#define FQCIRCLE_CHARSUM_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fqcircle/combinat.hpp"
#include "fqcircle/cyclo.hpp"
#include "fqcircle/laurent.hpp"

namespace fqcircle {

/// The additive character e(x) = zeta_p^{tr(x_{-1})}: a p-th root of unity
/// depending only on the T^{-1} coefficient.
inline CycloVal char_e(const Fq& F, const TruncatedLaurent& x) {
  return CycloVal::zeta_pow(static_cast<unsigned>(F.p()), F.trace(x.at(-1)));
}

/// S(alpha) = sum over monic irreducibles of degree X of e(pi * alpha).
/// Needs alpha on exponents -1 .. -(X+1).
inline CycloVal S_full(const Fq& F, unsigned X, const TruncatedLaurent& alpha, IrredTable& irr,
                       const Int& budget = kDefaultBudget) {
  charge_budget(pi_q(F.q(), X), budget, "sum over irreducibles");
  const unsigned p = static_cast<unsigned>(F.p());
  std::vector<Int> counts(p, 0);
  for (const Poly& w : irr.of_degree(X)) {
    // (w * alpha)_{-1} = sum_j w_j * alpha_{-1-j}
    FqElem s = F.zero();
    for (std::size_t j = 0; j < w.c.size(); ++j) {
      if (w.c[j].code == 0) continue;
      s = F.add(s, F.mul(w.c[j], alpha.at(-1 - static_cast<int>(j))));
    }
    counts[F.trace(s)] += 1;
  }
  return CycloVal::from_zeta_counts(p, counts);
}

/// Value of S_I(alpha) in factored form: either 0 or q^{X-|I|} * zeta^exp.
/// Nonzero exactly when alpha_{-j-1} = 0 for every unprescribed j < X.
struct SITerm {
  bool nonzero = false;
  unsigned zetaExp = 0;
};

inline SITerm S_I_term(const Fq& F, const Prescription& P, const TruncatedLaurent& alpha) {
  for (unsigned j = 0; j < P.X; ++j) {
    if (P.fixed.count(j)) continue;
    if (alpha.at(-1 - static_cast<int>(j)).code != 0) return {};
  }
  // phase: e(alpha T^X) * prod_{j in I} e(a_j T^j alpha)
  FqElem s = alpha.at(-1 - static_cast<int>(P.X));
  for (const auto& [j, aj] : P.fixed) s = F.add(s, F.mul(aj, alpha.at(-1 - static_cast<int>(j))));
  return {true, F.trace(s)};
}

/// Closed form of S_I(alpha) from the factored product over coefficient
/// positions. Exact; needs alpha on exponents -1 .. -(X+1).
inline CycloVal S_I_closed(const Fq& F, const Prescription& P, const TruncatedLaurent& alpha) {
  SITerm t = S_I_term(F, P, alpha);
  const unsigned p = static_cast<unsigned>(F.p());
  if (!t.nonzero) return CycloVal::zero(p);
  return CycloVal::zeta_pow(p, t.zetaExp).scale(Rat(int_pow(F.q(), P.freeCount())));
}

/// Term-by-term S_I(alpha) over the enumerated prescribed set; the closed
/// form's independent oracle.
inline CycloVal S_I_brute(const Fq& F, const Prescription& P, const TruncatedLaurent& alpha,
                          const Int& budget = kDefaultBudget) {
  const unsigned p = static_cast<unsigned>(F.p());
  std::vector<Int> counts(p, 0);
  PrescribedSet S(F, P);
  S.for_each(budget, [&](const Poly& m) {
    FqElem s = F.zero();
    for (std::size_t j = 0; j < m.c.size(); ++j) {
      if (m.c[j].code == 0) continue;
      s = F.add(s, F.mul(m.c[j], alpha.at(-1 - static_cast<int>(j))));
    }
    counts[F.trace(s)] += 1;
  });
  return CycloVal::from_zeta_counts(p, counts);
}

/// Discretized L1 norm (1/q^X) sum_{|a| < q^X} |S_I(a/T^X)|, exact.
/// Each |S_I| is 0 or q^{X-|I|}, so the result is rational; it must be 1.
inline Rat l1_norm(const Fq& F, const Prescription& P, const Int& budget = kDefaultBudget) {
  P.validate(F);
  Int points = int_pow(F.q(), P.X);
  charge_budget(points, budget, "L1 norm scan");
  Int nonzero = 0;
  std::vector<std::uint64_t> a(P.X, 0);  // coefficients of a, deg < X
  while (true) {
    // alpha = a/T^X has alpha_{-j-1} = a_{X-1-j}
    bool cond = true;
    for (unsigned j = 0; j < P.X && cond; ++j) {
      if (P.fixed.count(j)) continue;
      if (a[P.X - 1 - j] != 0) cond = false;
    }
    if (cond) nonzero += 1;
    std::size_t k = 0;
    while (k < a.size() && ++a[k] == F.q()) a[k++] = 0;
    if (k == a.size()) break;
  }
  Rat r(nonzero * int_pow(F.q(), P.freeCount()), points);
  r.canonicalize();
  return r;
}

/// Discretized mean square (1/q^{X+1}) sum |S_I(a/T^{X+1})|^2, exact.
/// Parseval: must equal q^{X-|I|} (the size of the prescribed set).
inline Rat parseval_mean_square(const Fq& F, const Prescription& P,
                                const Int& budget = kDefaultBudget) {
  P.validate(F);
  Int points = int_pow(F.q(), P.X + 1);
  charge_budget(points, budget, "Parseval scan");
  Int nonzero = 0;
  std::vector<std::uint64_t> a(P.X + 1, 0);
  while (true) {
    // alpha = a/T^{X+1} has alpha_{-j-1} = a_{X-j}
    bool cond = true;
    for (unsigned j = 0; j < P.X && cond; ++j) {
      if (P.fixed.count(j)) continue;
      if (a[P.X - j] != 0) cond = false;
    }
    if (cond) nonzero += 1;
    std::size_t k = 0;
    while (k < a.size() && ++a[k] == F.q()) a[k++] = 0;
    if (k == a.size()) break;
  }
  Rat r(nonzero * int_pow(Int(int_pow(F.q(), P.freeCount())), 2), points);
  r.canonicalize();
  return r;
}

struct VanishingViolation {
  Poly a, g;
  CycloVal value;
};

struct VanishingReport {
  unsigned J = 0;
  Int fractionsChecked = 0;
  std::vector<VanishingViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Scans reduced fractions a/g with g = g0 T^k, 1 < |g0| <= q^{J-1}
/// (J = ceil(X/(|I|+1))) and deg g <= gmaxDeg; S_I(a/g) must vanish on all
/// of them.
inline VanishingReport vanishing_check(const Fq& F, const Prescription& P, unsigned gmaxDeg,
                                       const Int& budget = kDefaultBudget) {
  P.validate(F);
  VanishingReport rep;
  rep.J = (P.X + P.prescribed()) / (P.prescribed() + 1);  // ceil(X/(|I|+1))
  const int window = static_cast<int>(P.X) + 1;
  Int work = 0;
  for (unsigned D = 1; D <= gmaxDeg; ++D) work += int_pow(F.q(), 2 * D);
  charge_budget(work, budget, "vanishing scan");

  for (unsigned D = 1; D <= gmaxDeg; ++D) {
    for_each_monic(F, D, [&](const Poly& g) {
      // split g = g0 * T^k
      unsigned k = 0;
      while (k < g.c.size() && g.c[k].code == 0) ++k;
      unsigned degG0 = D - k;
      if (degG0 < 1 || degG0 > rep.J - 1) return;  // lemma silent outside this range
      // all a with |a| < |g|, gcd(a, g) = 1
      Poly a;
      a.c.assign(D, F.zero());
      while (true) {
        Poly aa = a;
        poly_trim(aa);
        if (!aa.is_zero() && poly_gcd(F, aa, g).deg() == 0) {
          rep.fractionsChecked += 1;
          auto alpha = laurent_expand(F, aa, g, -window);
          CycloVal v = S_I_closed(F, P, alpha);
          if (!v.is_zero()) rep.violations.push_back({aa, g, v});
        }
        std::size_t kk = 0;
        while (kk < D && (a.c[kk] = F.from_code((a.c[kk].code + 1) % F.q())).code == 0) ++kk;
        if (kk == D) break;
      }
    });
  }
  return rep;
}

struct WeilReport {
  CycloVal mainTerm, actual;
  long double residualMagnitude = 0;
  long double bound = 0;         // sqrt(phi(g) max(1, |gamma T^X|)) * qhat(X)^{1/2}
  long double boundRelaxed = 0;  // qhat(X)^{3/4}
  bool holds = false, holdsRelaxed = false;
  long double margin = 0, marginRelaxed = 0;
};

/// Compares S(a/g + gamma) with its predicted main term
/// (mu(g)/phi(g)) pi_q(X) e(gamma T^X) 1_{|gamma| < 1/qhat(X)} and checks the
/// square-root cancellation bound on the residual. Both the sharp and the
/// relaxed bound are evaluated.
inline WeilReport weil_check(const Fq& F, unsigned X, const Poly& a, const Poly& g,
                             const TruncatedLaurent& gamma, IrredTable& irr,
                             const Int& budget = kDefaultBudget) {
  if (!poly_is_monic(g)) fail(errc::non_monic_input, "weil_check modulus must be monic");
  const int D = g.deg();
  if (!(a.deg() < D || a.is_zero()) || poly_gcd(F, a, g).deg() != 0)
    fail(errc::precondition_violated, "weil_check needs a reduced fraction in the torus");
  if (2 * D >= static_cast<int>(X))
    fail(errc::precondition_violated, "weil_check needs |g| < qhat(X)^{1/2}");
  const int half = static_cast<int>(X) / 2;
  if (!gamma.norm_lt(-(D + half)))
    fail(errc::precondition_violated, "weil_check needs |gamma| < 1/(|g| qhat(X)^{1/2})");

  const unsigned p = static_cast<unsigned>(F.p());
  WeilReport rep;

  // main term
  bool indicator = gamma.norm_lt(-static_cast<int>(X));
  if (!indicator) {
    rep.mainTerm = CycloVal::zero(p);
  } else {
    CycloVal phase = CycloVal::zeta_pow(p, F.trace(gamma.at(-1 - static_cast<int>(X))));
    int mu = mobius(F, g, budget);
    Rat coef = Rat(Int(mu) * pi_q(F.q(), X), euler_phi(F, g, budget));
    coef.canonicalize();
    rep.mainTerm = phase.scale(coef);
  }

  // actual sum at alpha = a/g + gamma
  TruncatedLaurent alpha =
      laurent_expand(F, a, g, -static_cast<int>(X) - 1).add(F, gamma);
  rep.actual = S_full(F, X, alpha, irr, budget);

  rep.residualMagnitude = (rep.actual - rep.mainTerm).abs();
  auto gammaNorm = gamma.norm_exponent();  // nullopt when gamma = 0
  long double gtx = 1.0L;
  if (gammaNorm && *gammaNorm + static_cast<int>(X) > 0)
    gtx = powl(static_cast<long double>(F.q()), *gammaNorm + static_cast<int>(X));
  long double phiG = to_ldouble(euler_phi(F, g, budget));
  long double qd = static_cast<long double>(F.q());
  rep.bound = sqrtl(phiG * gtx) * powl(qd, X / 2.0L);
  rep.boundRelaxed = powl(qd, 3.0L * X / 4.0L);
  rep.holds = rep.residualMagnitude <= rep.bound + kEmbedPad;
  rep.holdsRelaxed = rep.residualMagnitude <= rep.boundRelaxed + kEmbedPad;
  rep.margin = rep.bound - rep.residualMagnitude;
  rep.marginRelaxed = rep.boundRelaxed - rep.residualMagnitude;
  return rep;
}

struct BourgainReport {
  Int lhs = 0;  // sum of |S_I(a/g)|, exact (each term is 0 or q^{X-|I|})
  Rat rhsExponent;
  long double rhs = 0;
  Rat kappaUsed;
  Int fractions = 0;
  bool holds = false;
};

/// L1 bound over low fractions: sum over |g| < q^Q, (aT, g) = 1 of
/// |S_I(a/g)| <= q^{X-|I|} * q^{2 Q kappa |I| / X}.
inline BourgainReport bourgain_sum_check(const Fq& F, const Prescription& P, unsigned Q,
                                         const Int& budget = kDefaultBudget) {
  P.validate(F);
  if (2 * Q > P.X) fail(errc::precondition_violated, "bourgain bound needs qhat(Q)^2 <= qhat(X)");
  if (Q < 1) fail(errc::invalid_range, "Q must be >= 1");
  const int window = static_cast<int>(P.X) + 1;
  Int work = 0;
  for (unsigned D = 0; D + 1 <= Q; ++D) work += int_pow(F.q(), 2 * D);
  charge_budget(work, budget, "low-fraction scan");

  BourgainReport rep;
  Int termMag = int_pow(F.q(), P.freeCount());
  for (unsigned D = 0; D + 1 <= Q; ++D) {
    for_each_monic(F, D, [&](const Poly& g) {
      if (g.coeff(0).code == 0) return;  // (aT, g) = 1 forces T coprime to g
      if (D == 0) {
        // only a = 0 pairs with g = 1
        rep.fractions += 1;
        auto alpha = TruncatedLaurent();  // exact zero
        if (S_I_term(F, P, alpha).nonzero) rep.lhs += termMag;
        return;
      }
      Poly a;
      a.c.assign(D, F.zero());
      while (true) {
        Poly aa = a;
        poly_trim(aa);
        if (!aa.is_zero() && poly_gcd(F, aa, g).deg() == 0) {
          rep.fractions += 1;
          auto alpha = laurent_expand(F, aa, g, -window);
          if (S_I_term(F, P, alpha).nonzero) rep.lhs += termMag;
        }
        std::size_t kk = 0;
        while (kk < D && (a.c[kk] = F.from_code((a.c[kk].code + 1) % F.q())).code == 0) ++kk;
        if (kk == D) break;
      }
    });
  }

  Rat rho(P.prescribed(), P.X);
  rho.canonicalize();
  rep.kappaUsed = kappa(P.X, 2 * Q, rho).kappaUsed;
  rep.rhsExponent = Rat(P.freeCount()) + Rat(2 * Q) * rep.kappaUsed * rho;
  rep.rhs = powl(static_cast<long double>(F.q()), to_ldouble(rep.rhsExponent));
  rep.holds = to_ldouble(rep.lhs) <= rep.rhs * (1.0L + kEmbedPad) + kEmbedPad;
  return rep;
}

}  // namespace fqcircle

#endif  // FQCIRCLE_CHARSUM_HPP
