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

#ifndef FQCIRCLE_CIRCLE_HPP
#define FQCIRCLE_CIRCLE_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fqcircle/charsum.hpp"
#include "fqcircle/constants.hpp"

namespace fqcircle {

/// The singular series: 1 when the constant term is free, 1 + 1/(q-1) when
/// it is prescribed nonzero, 0 when it is prescribed to zero.
inline Rat singular_series(const Fq& F, const Prescription& P) {
  auto it = P.fixed.find(0);
  if (it == P.fixed.end()) return 1;
  if (it->second.code == 0) return 0;
  Rat r = 1 + Rat(1, Int(F.q()) - 1);
  r.canonicalize();
  return r;
}

/// Exact number of irreducibles in the prescribed set, by enumeration.
inline Int count_bruteforce(const Fq& F, const Prescription& P,
                            const Int& budget = kDefaultBudget) {
  P.validate(F);
  Int n = 0;
  PrescribedSet S(F, P);
  S.for_each(budget, [&](const Poly& m) {
    if (is_irreducible(F, m)) n += 1;
  });
  return n;
}

/// Cached values of S(a/T^{X+1}) for every |a| < q^{X+1}: the discretized
/// torus at the exact resolution for degree-X summands. Reusable across
/// prescriptions of the same degree.
class CircleTable {
 public:
  CircleTable(const Fq& F, unsigned X, IrredTable& irr, const Int& budget = kDefaultBudget)
      : F_(F), X_(X) {
    Int points = int_pow(F.q(), X + 1);
    charge_budget(points * Int(static_cast<unsigned long>(irr.of_degree(X).size()) + 1), budget,
                  "character table");
    const unsigned p = static_cast<unsigned>(F.p());
    const auto& irreds = irr.of_degree(X);
    table_.reserve(points.get_ui());
    std::vector<std::uint64_t> a(X + 1, 0);  // coefficients of a, deg <= X
    std::vector<Int> counts(p);
    while (true) {
      std::fill(counts.begin(), counts.end(), 0);
      for (const Poly& w : irreds) {
        // coefficient of T^X in w*a: sum_j w_j a_{X-j}
        FqElem s = F.zero();
        for (std::size_t j = 0; j < w.c.size(); ++j) {
          if (w.c[j].code == 0) continue;
          s = F.add(s, F.mul(w.c[j], F.from_code(a[X - j])));
        }
        counts[F.trace(s)] += 1;
      }
      table_.push_back(CycloVal::from_zeta_counts(p, counts));
      std::size_t k = 0;
      while (k <= X && ++a[k] == F.q()) a[k++] = 0;
      if (k == X + 1) break;
    }
  }

  const Fq& field() const { return F_; }
  unsigned X() const { return X_; }
  std::size_t points() const { return table_.size(); }
  const CycloVal& S_at(std::size_t aCode) const { return table_[aCode]; }

 private:
  const Fq& F_;
  unsigned X_;
  std::vector<CycloVal> table_;
};

/// Exact count via the discretized correlation integral
/// (1/q^{X+1}) sum_{|a| < q^{X+1}} S(a/T^{X+1}) conj(S_I(a/T^{X+1})).
/// Must equal count_bruteforce; a non-integer result signals an arithmetic
/// bug, never a rounding issue.
inline Int count_via_integral(const Fq& F, const Prescription& P, const CircleTable& table,
                              const Int& budget = kDefaultBudget) {
  P.validate(F);
  if (table.X() != P.X || !table.field().same_field(F))
    fail(errc::precondition_violated, "character table does not match the prescription");
  const unsigned X = P.X;
  const unsigned p = static_cast<unsigned>(F.p());
  Int points = int_pow(F.q(), X + 1);
  charge_budget(points, budget, "correlation integral");

  CycloVal acc = CycloVal::zero(p);
  std::vector<std::uint64_t> a(X + 1, 0);
  std::size_t aCode = 0;
  while (true) {
    // alpha = a/T^{X+1}: alpha_{-k} = a_{X+1-k}; the S_I support condition
    // and phase are read off the digits directly
    bool cond = true;
    for (unsigned j = 0; j < X && cond; ++j) {
      if (P.fixed.count(j)) continue;
      if (a[X - j] != 0) cond = false;
    }
    if (cond) {
      FqElem s = F.from_code(a[0]);  // alpha_{-X-1}
      for (const auto& [j, aj] : P.fixed) s = F.add(s, F.mul(aj, F.from_code(a[X - j])));
      unsigned t = F.trace(s);
      acc += table.S_at(aCode).mul_zeta_pow((p - t) % p);  // times conj(zeta^t)
    }
    std::size_t k = 0;
    while (k <= X && ++a[k] == F.q()) a[k++] = 0;
    if (k == X + 1) break;
    ++aCode;
  }
  Rat scale(int_pow(F.q(), X - P.prescribed()), points);
  scale.canonicalize();
  auto r = acc.scale(scale).as_rational();
  if (!r) fail(errc::non_integer_result, "correlation integral is not rational");
  if (r->get_den() != 1) fail(errc::non_integer_result, "correlation integral is not an integer");
  return r->get_num();
}

inline Int count_via_integral(const Fq& F, const Prescription& P, IrredTable& irr,
                              const Int& budget = kDefaultBudget) {
  CircleTable table(F, P.X, irr, budget);
  return count_via_integral(F, P, table, budget);
}

/// The expected main term M = (1/qhat(X)) (S(0) conj(S_I(0)) +
/// sum_{b in F_q^*} S(b/T) conj(S_I(b/T))), evaluated exactly. The Galois
/// action permutes the b-terms, so M is rational.
inline Rat main_term_M(const Fq& F, const Prescription& P, IrredTable& irr,
                       const Int& budget = kDefaultBudget) {
  P.validate(F);
  const unsigned p = static_cast<unsigned>(F.p());
  CycloVal acc = S_full(F, P.X, TruncatedLaurent(), irr, budget) *
                 S_I_closed(F, P, TruncatedLaurent()).conj();
  for (std::uint64_t b = 1; b < F.q(); ++b) {
    auto alpha = TruncatedLaurent::from_window(-1, {F.from_code(b)}, true);
    acc += S_full(F, P.X, alpha, irr, budget) * S_I_closed(F, P, alpha).conj();
  }
  (void)p;
  Rat scale(1, int_pow(F.q(), P.X));
  scale.canonicalize();
  auto r = acc.scale(scale).as_rational();
  if (!r) fail(errc::non_integer_result, "main term M is not rational");
  return *r;
}

/// Major-arc portion of the integral: (1/qhat(X)) sum over reduced fractions
/// with |g| <= qhat(X)^{1/2} of S(a/g) conj(S_I(a/g)); exact and rational.
inline Rat major_arc_sum(const Fq& F, const Prescription& P, IrredTable& irr,
                         const Int& budget = kDefaultBudget) {
  P.validate(F);
  const unsigned X = P.X;
  const unsigned half = X / 2;
  const int window = static_cast<int>(X) + 1;
  const unsigned p = static_cast<unsigned>(F.p());
  CycloVal acc = CycloVal::zero(p);
  for (unsigned D = 0; D <= half; ++D) {
    for_each_monic(F, D, [&](const Poly& g) {
      if (D == 0) {
        TruncatedLaurent zero;
        acc += S_full(F, X, zero, irr, budget) * S_I_closed(F, P, zero).conj();
        return;
      }
      Poly a;
      a.c.assign(D, F.zero());
      while (true) {
        Poly aa = a;
        poly_trim(aa);
        if (!aa.is_zero() && poly_gcd(F, aa, g).deg() == 0) {
          auto alpha = laurent_expand(F, aa, g, -window);
          acc += S_full(F, X, alpha, irr, budget) * S_I_closed(F, P, alpha).conj();
        }
        std::size_t kk = 0;
        while (kk < D && (a.c[kk] = F.from_code((a.c[kk].code + 1) % F.q())).code == 0) ++kk;
        if (kk == D) break;
      }
    });
  }
  Rat scale(1, int_pow(F.q(), X));
  scale.canonicalize();
  auto r = acc.scale(scale).as_rational();
  if (!r) fail(errc::non_integer_result, "major arc sum is not rational");
  return *r;
}

struct MinorArcReport {
  Int pointsScanned = 0;
  Int minorPoints = 0;
  long double maxAbsS = 0;   // observed max of |S(alpha)| on the minor arcs
  long double bound = 0;     // qhat(X)^{3/4}
  bool withinBound = false;
};

/// Exhaustive maximum of |S| over the discretized minor arcs.
inline MinorArcReport minor_arc_max(const Fq& F, unsigned X, IrredTable& irr,
                                    const Int& budget = kDefaultBudget) {
  const int window = static_cast<int>(X) + 1;
  Int points = int_pow(F.q(), window);
  charge_budget(points * pi_q(F.q(), X), budget, "minor arc scan");
  MinorArcReport rep;
  std::vector<std::uint64_t> pt(window, 0);
  while (true) {
    std::vector<FqElem> coeffs(window);
    for (int k = 0; k < window; ++k) coeffs[window - 1 - k] = F.from_code(pt[k]);
    auto alpha = TruncatedLaurent::from_window(-window, std::move(coeffs), true);
    rep.pointsScanned += 1;
    if (!classify_arc(F, alpha, X).major) {
      rep.minorPoints += 1;
      long double v = S_full(F, X, alpha, irr, budget).abs();
      if (v > rep.maxAbsS) rep.maxAbsS = v;
    }
    std::size_t k = 0;
    while (k < pt.size() && ++pt[k] == F.q()) pt[k++] = 0;
    if (k == pt.size()) break;
  }
  rep.bound = powl(static_cast<long double>(F.q()), 3.0L * X / 4.0L);
  rep.withinBound = rep.maxAbsS <= rep.bound + kEmbedPad;
  return rep;
}

/// End-to-end evaluation of the count formula at desk scale.
struct Theorem1Report {
  std::string field;
  Prescription P;
  Int N_brute, N_integral;
  Rat M_exact, frakS, mainPrediction;
  unsigned J = 1;
  ErrorConstants consts;
  long double R1_bound = 0, R2_bound = 0, relativeError = 0;
  bool boundApplicable = false;  // |I| <= X/4
  bool boundsHold = false;       // meaningful only when applicable
};

inline Theorem1Report theorem1_report(const Fq& F, const Prescription& P, IrredTable& irr,
                                      const Int& budget = kDefaultBudget) {
  P.validate(F);
  Theorem1Report rep;
  rep.field = F.to_string();
  rep.P = P;
  rep.N_brute = count_bruteforce(F, P, budget);
  rep.N_integral = count_via_integral(F, P, irr, budget);
  rep.M_exact = main_term_M(F, P, irr, budget);
  rep.frakS = singular_series(F, P);
  rep.mainPrediction = rep.frakS * Rat(pi_q(F.q(), P.X), int_pow(F.q(), P.prescribed()));
  rep.mainPrediction.canonicalize();

  const unsigned r = P.prescribed();
  rep.J = (P.X + r) / (r + 1);  // ceil(X/(r+1))
  const long double qd = static_cast<long double>(F.q());
  rep.R2_bound = powl(qd, 3.0L * P.X / 4.0L) + powl(qd, 0.5L - static_cast<long double>(r) +
                                                            static_cast<long double>(P.X) / 2.0L);
  rep.boundApplicable = 4 * r <= P.X;
  if (rep.boundApplicable) {
    Rat rho(r, P.X);
    rho.canonicalize();
    rep.consts = error_constants(static_cast<unsigned>(F.q()), rho);
    long double lqJ = rep.J > 1 ? log_base(qd, static_cast<long double>(rep.J)) : 0.0L;
    rep.R1_bound = to_ldouble(Rat(pi_q(F.q(), P.X), int_pow(F.q(), r))) *
                   (rep.consts.CJ4 * lqJ + rep.consts.CJ5) *
                   powl(qd, -to_ldouble(rep.consts.Cexp) * rep.J);
    long double dev = to_ldouble(Rat(Rat(rep.N_brute) - rep.mainPrediction));
    rep.boundsHold = fabsl(dev) <= rep.R1_bound + rep.R2_bound + kEmbedPad;
  }
  long double denom = std::max(1.0L, fabsl(to_ldouble(rep.mainPrediction)));
  rep.relativeError = fabsl(to_ldouble(Rat(Rat(rep.N_brute) - rep.mainPrediction))) / denom;
  return rep;
}

struct ExistenceReport {
  Int prescriptionsChecked = 0;
  Int candidatesTried = 0;
  Int excluded = 0;  // prescriptions with the constant term fixed to zero
  std::vector<Prescription> failures;
  bool ok() const { return failures.empty(); }
};

/// For every X in [Xlo, Xhi] and every prescription with at most rRule(X)
/// prescribed positions (excluding a constant term fixed to zero), searches
/// the prescribed set for an irreducible witness; failures are reported,
/// not asserted.
inline ExistenceReport existence_scan(const Fq& F, unsigned Xlo, unsigned Xhi,
                                      const std::function<unsigned(unsigned)>& rRule,
                                      const Int& budget = kDefaultBudget) {
  if (Xlo < 1 || Xhi < Xlo) fail(errc::invalid_range, "existence scan needs 1 <= Xlo <= Xhi");
  if (Xhi > 24) fail(errc::invalid_range, "existence scan degree too large");
  ExistenceReport rep;
  Int used = 0;
  for (unsigned X = Xlo; X <= Xhi; ++X) {
    unsigned rmax = rRule(X);
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << X); ++mask) {
      if (static_cast<unsigned>(__builtin_popcount(mask)) > rmax) continue;
      std::vector<unsigned> idx;
      for (unsigned i = 0; i < X; ++i)
        if (mask & (std::uint32_t(1) << i)) idx.push_back(i);
      // odometer over the prescribed values, element-code order
      std::vector<std::uint64_t> val(idx.size(), 0);
      while (true) {
        Prescription P;
        P.X = X;
        for (std::size_t i = 0; i < idx.size(); ++i) P.fixed[idx[i]] = F.from_code(val[i]);
        if (P.constantFixedToZero()) {
          rep.excluded += 1;
        } else {
          PrescribedSet S(F, P);
          used += S.size();
          charge_budget(used, budget, "existence scan");
          rep.prescriptionsChecked += 1;
          bool found = false;
          Int tried = 0;
          S.for_each(budget, [&](const Poly& m) -> bool {
            tried += 1;
            if (is_irreducible(F, m)) {
              found = true;
              return false;  // stop
            }
            return true;
          });
          rep.candidatesTried += tried;
          if (!found) rep.failures.push_back(P);
        }
        std::size_t k = 0;
        while (k < val.size() && ++val[k] == F.q()) val[k++] = 0;
        if (k == val.size() || val.empty()) break;
      }
    }
  }
  return rep;
}

/// First irreducible in enumeration order, for the search command.
inline std::optional<Poly> search_witness(const Fq& F, const Prescription& P,
                                          const Int& budget = kDefaultBudget) {
  P.validate(F);
  std::optional<Poly> hit;
  PrescribedSet S(F, P);
  S.for_each(budget, [&](const Poly& m) -> bool {
    if (is_irreducible(F, m)) {
      hit = m;
      return false;
    }
    return true;
  });
  return hit;
}

}  // namespace fqcircle

#endif  // FQCIRCLE_CIRCLE_HPP
