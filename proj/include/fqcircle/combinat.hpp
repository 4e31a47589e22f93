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

#ifndef FQCIRCLE_COMBINAT_HPP
#define FQCIRCLE_COMBINAT_HPP

#include <optional>
#include <string>
#include <vector>

#include "fqcircle/poly.hpp"

namespace fqcircle {

/// Window-covering constant: for I inside [1,x] of density rho, some window
/// of y consecutive integers has density <= kappa * rho. The source states
/// one formula for the u >= 3 case and derives a different one in its proof;
/// both are computed, and kappaUsed is their maximum capped at 2 (the cap is
/// the classical always-valid choice). covering_verify_exhaustive certifies
/// each variant separately.
struct KappaResult {
  unsigned x = 0, y = 0;
  Rat rho;
  Rat kappaStatement, kappaProof, kappaUsed;
  // witness fields, filled by covering_witness
  std::optional<unsigned> windowStart;  // window is [start, start+y-1]
  unsigned windowCount = 0;             // |I intersect window|
};

inline KappaResult kappa(unsigned x, unsigned y, const Rat& rho) {
  if (y < 1 || y > x) fail(errc::invalid_range, "kappa needs 1 <= y <= x");
  if (rho < 0 || rho > 1) fail(errc::invalid_range, "kappa needs 0 <= rho <= 1");
  KappaResult r;
  r.x = x;
  r.y = y;
  r.rho = rho;
  if (x % y == 0) {
    r.kappaStatement = r.kappaProof = r.kappaUsed = 1;
    return r;
  }
  unsigned u = (x + y - 1) / y;  // ceil(x/y), >= 2 since y does not divide x
  if (u == 2) {
    r.kappaStatement = r.kappaProof = Rat(2) / (rho + 1);
  } else {
    r.kappaStatement = Rat(2 * u) / (Rat(u + 1) * rho + Rat(u - 1));
    r.kappaProof = Rat(2 * u) / (Rat(u - 1) * rho + Rat(u + 1));
  }
  r.kappaUsed = std::max(r.kappaStatement, r.kappaProof);
  if (r.kappaUsed > 2) r.kappaUsed = 2;
  return r;
}

/// Scans every length-y window inside [1,x], returns one with the fewest
/// elements of I (leftmost tie-break) and checks the covering inequality
/// against kappaUsed.
inline KappaResult covering_witness(unsigned x, unsigned y, const std::vector<unsigned>& I) {
  if (y < 1 || y > x) fail(errc::invalid_range, "covering_witness needs 1 <= y <= x");
  std::vector<bool> in(x + 2, false);
  for (unsigned v : I) {
    if (v < 1 || v > x) fail(errc::invalid_range, "I must be a subset of [1, x]");
    in[v] = true;
  }
  Rat rho(static_cast<unsigned long>(I.size()), x);
  rho.canonicalize();
  KappaResult r = kappa(x, y, rho);

  unsigned best = y + 1, bestStart = 1;
  for (unsigned s = 1; s + y - 1 <= x; ++s) {
    unsigned cnt = 0;
    for (unsigned t = s; t < s + y; ++t) cnt += in[t] ? 1 : 0;
    if (cnt < best) {
      best = cnt;
      bestStart = s;
    }
  }
  r.windowStart = bestStart;
  r.windowCount = best;
  // |I ∩ J| <= kappaUsed * rho * y
  if (Rat(best) > r.kappaUsed * rho * y)
    fail(errc::lemma_violation, "covering lemma failed at x=" + std::to_string(x) +
                                    " y=" + std::to_string(y) + " |I|=" + std::to_string(I.size()));
  return r;
}

struct CoveringCase {
  unsigned x, y;
  std::uint32_t mask;  // the adversarial I as a bitmask over [1, x]
  unsigned minCount;
};

struct CoveringReport {
  unsigned xmax = 0;
  Int casesChecked = 0;
  Int statementViolations = 0;
  Int proofViolations = 0;
  Int usedViolations = 0;
  std::vector<CoveringCase> statementWorst, proofWorst;  // first few failing cases
  // per-(x,y) comparison rows for the report table
  struct Row {
    unsigned x, y;
    Rat worstDensityRatio;  // max over I of min-window density / rho
    Rat kappaStatementAtWorst, kappaProofAtWorst;
  };
  std::vector<Row> table;
  bool statementOk() const { return statementViolations == 0; }
  bool proofOk() const { return proofViolations == 0; }
  bool usedOk() const { return usedViolations == 0; }
};

/// Exhaustive validation of the covering lemma over every I subset of [1,x]
/// for all x <= xmax, 1 <= y <= x. Reports which formula variant survives;
/// never throws on a violation.
inline CoveringReport covering_verify_exhaustive(unsigned xmax) {
  if (xmax < 1 || xmax > 16) fail(errc::invalid_range, "exhaustive covering scan needs xmax in [1,16]");
  CoveringReport rep;
  rep.xmax = xmax;
  for (unsigned x = 1; x <= xmax; ++x) {
    std::vector<std::uint32_t> windowMask;  // per start s, bits of [s, s+y-1]
    for (unsigned y = 1; y <= x; ++y) {
      windowMask.clear();
      for (unsigned s = 1; s + y - 1 <= x; ++s) {
        std::uint32_t m = 0;
        for (unsigned t = s; t < s + y; ++t) m |= (std::uint32_t(1) << (t - 1));
        windowMask.push_back(m);
      }
      bool divides = (x % y == 0);
      unsigned u = (x + y - 1) / y;

      Rat worstRatio = 0, kStmtWorst = 0, kProofWorst = 0;
      for (std::uint32_t I = 0; I < (std::uint32_t(1) << x); ++I) {
        unsigned z = static_cast<unsigned>(__builtin_popcount(I));
        unsigned best = y + 1;
        for (auto m : windowMask) {
          unsigned cnt = static_cast<unsigned>(__builtin_popcount(I & m));
          if (cnt < best) best = cnt;
        }
        rep.casesChecked += 1;

        // kappa * rho * y with rho = z/x, cross-multiplied in 64-bit
        // statement: 2uzy / ((u+1)z + (u-1)x); proof: 2uzy / ((u-1)z + (u+1)x)
        std::uint64_t lhsS, rhsS, lhsP, rhsP;
        if (divides) {
          lhsS = lhsP = std::uint64_t(best) * x;
          rhsS = rhsP = std::uint64_t(z) * y;
        } else if (u == 2) {
          lhsS = lhsP = std::uint64_t(best) * (z + x);
          rhsS = rhsP = 2ull * z * y;
        } else {
          lhsS = std::uint64_t(best) * ((std::uint64_t(u) + 1) * z + (std::uint64_t(u) - 1) * x);
          rhsS = 2ull * u * z * y;
          lhsP = std::uint64_t(best) * ((std::uint64_t(u) - 1) * z + (std::uint64_t(u) + 1) * x);
          rhsP = rhsS;
        }
        bool stmtOk = lhsS <= rhsS;
        bool proofOk = lhsP <= rhsP;
        if (!stmtOk) {
          rep.statementViolations += 1;
          if (rep.statementWorst.size() < 8) rep.statementWorst.push_back({x, y, I, best});
        }
        if (!proofOk) {
          rep.proofViolations += 1;
          if (rep.proofWorst.size() < 8) rep.proofWorst.push_back({x, y, I, best});
        }
        // kappaUsed = min(2, max(statement, proof)); for u >= 3 the statement
        // form is the larger one, and it exceeds 2 exactly when (u+1)z < x.
        bool usedOk;
        if (divides || u == 2)
          usedOk = stmtOk;
        else if ((std::uint64_t(u) + 1) * z >= x)
          usedOk = stmtOk;
        else
          usedOk = std::uint64_t(best) * x <= 2ull * z * y;
        if (!usedOk) rep.usedViolations += 1;

        if (z > 0) {
          Rat ratio(std::uint64_t(best) * x, std::uint64_t(z) * y);
          ratio.canonicalize();
          if (ratio > worstRatio) {
            worstRatio = ratio;
            Rat rho(z, x);
            rho.canonicalize();
            auto k = kappa(x, y, rho);
            kStmtWorst = k.kappaStatement;
            kProofWorst = k.kappaProof;
          }
        }
      }
      rep.table.push_back({x, y, worstRatio, kStmtWorst, kProofWorst});
    }
  }
  return rep;
}

/// Product of every monic irreducible of degree <= A except T.
inline Poly primorial_P(IrredTable& table, unsigned A, const Int& budget = kDefaultBudget) {
  const Fq& F = table.field();
  Int degSum = 0;
  for (unsigned k = 1; k <= A; ++k) degSum += Int(k) * table.count(k);
  charge_budget(degSum, budget, "primorial product degree");
  Poly acc = poly_one(F);
  Poly T = poly_T(F);
  for (unsigned k = 1; k <= A; ++k)
    for (const Poly& w : table.of_degree(k)) {
      if (w == T) continue;
      acc = poly_mul(F, acc, w);
    }
  return acc;
}

struct PhiRatioViolation {
  Poly m;
  Rat ratio;
};

struct PhiRatioReport {
  unsigned maxDeg = 0;
  Int checked = 0;
  Rat maxRatio;
  Poly argmax;
  Int smallBranch = 0, largeBranch = 0;  // how many cases hit each bound
  std::vector<PhiRatioViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks |m|/phi(m) < e (deg m <= q) or <= e^gamma (loglog|m| + 1)
/// (deg m > q) for every monic m with T not dividing m up to maxDeg.
/// Exact rational on the left, padded long double on the right, so a
/// reported violation is genuine.
inline PhiRatioReport phi_ratio_check(const Fq& F, unsigned maxDeg,
                                      const Int& budget = kDefaultBudget) {
  const long double e = expl(1.0L);
  const long double eGamma = expl(0.577215664901532860606512090082402431L);
  Int total = 0;
  for (unsigned D = 1; D <= maxDeg; ++D) total += int_pow(F.q(), D);
  charge_budget(total, budget, "totient ratio scan");

  PhiRatioReport rep;
  rep.maxDeg = maxDeg;
  rep.maxRatio = 0;
  for (unsigned D = 1; D <= maxDeg; ++D) {
    for_each_monic(F, D, [&](const Poly& m) {
      if (m.coeff(0).code == 0) return;  // T | m
      rep.checked += 1;
      Rat ratio(int_pow(F.q(), D), euler_phi(F, m));
      ratio.canonicalize();
      if (ratio > rep.maxRatio) {
        rep.maxRatio = ratio;
        rep.argmax = m;
      }
      long double bound;
      if (D <= F.q()) {
        rep.smallBranch += 1;
        bound = e;
      } else {
        rep.largeBranch += 1;
        // LL(|m|) = log_q(deg m)
        bound = eGamma * (log_base(static_cast<long double>(F.q()), D) + 1.0L);
      }
      if (to_ldouble(ratio) > bound + kEmbedPad) rep.violations.push_back({m, ratio});
    });
  }
  return rep;
}

}  // namespace fqcircle

#endif  // FQCIRCLE_COMBINAT_HPP
