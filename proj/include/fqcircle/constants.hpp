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

#ifndef FQCIRCLE_CONSTANTS_HPP
#define FQCIRCLE_CONSTANTS_HPP

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "fqcircle/combinat.hpp"

namespace fqcircle {

inline constexpr long double kEulerGamma = 0.577215664901532860606512090082402431L;

/// C_{(q^B)} = q^B / (q^B - 1), the geometric-tail constant.
inline long double c_qB(long double q, long double B) {
  if (q < 2 || B <= 0) fail(errc::invalid_range, "c_qB needs q >= 2 and B > 0");
  long double t = powl(q, B);
  return t / (t - 1.0L);
}

/// Exact form for integral exponents: qB is the integer q^B >= 2.
inline Rat c_qB_exact(const Int& qPowB) {
  if (qPowB < 2) fail(errc::invalid_range, "c_qB_exact needs q^B >= 2");
  Rat r(qPowB, qPowB - 1);
  r.canonicalize();
  return r;
}

struct TailBoundReport {
  unsigned q = 0;
  long double Cexp = 0;
  unsigned A = 0;
  long double bound = 0;       // (log_q A + 1/A) C_{(q^Cexp)} q^{-Cexp A}
  long double partialSum = 0;  // sum_{n=A}^{A+200} log_q(n) q^{-Cexp n}
  bool holds = false;
};

/// The displayed tail estimate for sum_{n>=A} log_q(n) q^{-Cexp n} next to
/// its 200-term partial sum. The display is not a valid bound for every
/// (q, Cexp): domination requires roughly C_{(q^Cexp)} q^{-Cexp} <= ln q,
/// so the report carries the comparison instead of asserting it.
inline TailBoundReport tail_bound(unsigned q, const Rat& Cexp, unsigned A) {
  if (q < 2 || A < 1 || Cexp <= 0) fail(errc::invalid_range, "tail_bound needs q >= 2, A >= 1, Cexp > 0");
  TailBoundReport rep;
  rep.q = q;
  rep.Cexp = to_ldouble(Cexp);
  rep.A = A;
  long double qd = q;
  rep.bound = (log_base(qd, A) + 1.0L / A) * c_qB(qd, rep.Cexp) * powl(qd, -rep.Cexp * A);
  long double s = 0;
  for (unsigned n = A; n <= A + 200; ++n) s += log_base(qd, n) * powl(qd, -rep.Cexp * n);
  rep.partialSum = s;
  rep.holds = s <= rep.bound + kEmbedPad;
  return rep;
}

/// The explicit constants of the error analysis at density rho = |I|/X:
/// kappa = 2/(rho+1) (the two-window covering case, which matches the main
/// theorem's displayed exponent 1/rho - 4/(rho+1)), Cexp = 1 - 2 kappa rho,
/// and the geometric/totient composite constants CJ1..CJ5.
struct ErrorConstants {
  unsigned q = 0;
  Rat rho;
  Rat kappaUsed;
  Rat Cexp;  // exact: 1 - 4 rho / (rho + 1)
  long double CqCexp = 0;
  long double CJ1 = 0, CJ2 = 0, CJ3 = 0, CJ4 = 0, CJ5 = 0;
};

inline ErrorConstants error_constants(unsigned q, const Rat& rho) {
  if (q < 2) fail(errc::invalid_range, "q must be >= 2");
  if (rho < 0 || rho > Rat(1, 4)) fail(errc::invalid_range, "error constants need 0 <= rho <= 1/4");
  ErrorConstants ec;
  ec.q = q;
  ec.rho = rho;
  ec.kappaUsed = Rat(2) / (rho + 1);
  ec.Cexp = 1 - 2 * ec.kappaUsed * rho;
  const long double e = expl(1.0L);
  const long double eG = expl(kEulerGamma);
  const long double qd = q;
  const long double lnq = logl(qd);
  ec.CqCexp = c_qB(qd, to_ldouble(ec.Cexp));
  ec.CJ1 = ec.CqCexp * (e + eG + eG / (qd * lnq));
  ec.CJ2 = eG * ec.CqCexp;
  ec.CJ3 = eG * ec.CqCexp * (1.0L + 1.0L / (qd * lnq));
  ec.CJ4 = 2.0L * ec.CJ2 * ec.CqCexp;
  ec.CJ5 = 2.0L * (ec.CJ1 + ec.CJ3) * ec.CqCexp;
  return ec;
}

/// Scale-free bundle for the sufficient-condition table. Cq1 keeps the exact
/// starting indices of the two tail sums (branch J < q keeps the log-weighted
/// sum at its true start n = q); the fully lumped display value is also
/// reported, since the source's own numeric ceilings sit between the two.
struct ConstantsBundle {
  unsigned q = 0;
  Rat rho;
  long double B = 0;
  ErrorConstants ec;
  long double J = 0;            // 1/rho (scale-free) or ceil(X/(|I|+1))
  long double CqB = 0;          // C_{(q^B)}
  long double Cq1 = 0;          // branch-aware value used for the feasibility test
  long double Cq1Display = 0;   // C_{(q)} max{CJ1, CJ2 log_q(1/rho) + CJ3}
  long double feasibilityRHS = 0;  // Cq1 q^{-Cexp/rho} + q^{-B}
  std::string trace;            // derivation with intermediate values
};

inline ConstantsBundle constants_bundle(unsigned q, const Rat& rho, unsigned X, long double B) {
  if (rho <= 0) fail(errc::invalid_range, "constants_bundle needs rho > 0");
  ConstantsBundle b;
  b.q = q;
  b.rho = rho;
  b.B = B;
  b.ec = error_constants(q, rho);
  const long double qd = q, lnq = logl(qd);
  const long double e = expl(1.0L), eG = expl(kEulerGamma);
  const long double Cexp = to_ldouble(b.ec.Cexp);
  const long double Cp = b.ec.CqCexp;

  if (X == 0) {
    b.J = 1.0L / to_ldouble(rho);
  } else {
    Rat rX = rho * X;
    if (rX.get_den() != 1) fail(errc::invalid_range, "rho*X must be the integer |I|");
    unsigned long r = rX.get_num().get_ui();
    b.J = static_cast<long double>((X + r) / (r + 1));  // ceil(X/(r+1))
  }

  long double inner;
  const char* branch;
  if (b.J < qd) {
    // e sum_{n>=J} q^{-Cn} + e^gamma sum_{n>=q} log_q(n) q^{-Cn}, both tails
    // at their true starting index, normalized by q^{-C J}
    inner = e * Cp + eG * Cp * (1.0L + 1.0L / (qd * lnq)) * powl(qd, -Cexp * (qd - b.J));
    branch = "J < q";
  } else {
    inner = eG * Cp * (log_base(qd, b.J) + 1.0L + 1.0L / (b.J * lnq));
    branch = "J >= q";
  }
  const long double Cq = qd / (qd - 1.0L);
  b.Cq1 = Cq * inner;
  b.Cq1Display =
      Cq * std::max(b.ec.CJ1, b.ec.CJ2 * log_base(qd, 1.0L / to_ldouble(rho)) + b.ec.CJ3);
  b.CqB = B > 0 ? c_qB(qd, B) : std::numeric_limits<long double>::quiet_NaN();
  long double term1 = b.Cq1 * powl(qd, -Cexp / to_ldouble(rho));
  long double term2 = powl(qd, -B);
  b.feasibilityRHS = term1 + term2;

  char buf[1024];
  std::snprintf(buf, sizeof buf,
                "kappa=2/(rho+1)=%.6Lf  Cexp=1-2*kappa*rho=%.6Lf  C_(q^Cexp)=%.6Lf\n"
                "CJ1=%.6Lf CJ2=%.6Lf CJ3=%.6Lf CJ4=2*CJ2*C=%.6Lf CJ5=2*(CJ1+CJ3)*C=%.6Lf\n"
                "J=%.4Lf (%s)  inner=%.6Lf  Cq1=C_(q)*inner=%.6Lf  [lumped display Cq1=%.6Lf]\n"
                "RHS=Cq1*q^(-Cexp/rho)+q^(-B)=%.6Lf+%.6Lf=%.6Lf",
                to_ldouble(b.ec.kappaUsed), Cexp, Cp, b.ec.CJ1, b.ec.CJ2, b.ec.CJ3, b.ec.CJ4,
                b.ec.CJ5, b.J, branch, inner, b.Cq1, b.Cq1Display, term1, term2,
                b.feasibilityRHS);
  b.trace = buf;
  return b;
}

/// The three reference configurations of the sufficient-condition table and
/// their ceilings, used by the verification suite and the CLI table.
struct ReferenceConfig {
  unsigned q;
  Rat rho;
  long double B;
  long double cq1Ceiling;
  long double rhsCeiling;
};

inline const std::array<ReferenceConfig, 3>& reference_configs() {
  static const std::array<ReferenceConfig, 3> cfgs = {{
      {16, Rat(1, 4), 1.0L, 8.552L, 0.994L},
      {5, Rat(1, 5), 2.0L, 12.335L, 0.884L},
      {2, Rat(1, 10), 2.0L, 42.342L, 0.764L},
  }};
  return cfgs;
}

struct Thm2Result {
  bool feasible = false;
  ConstantsBundle bundle;
  long double margin = 0;     // 1 - (term1 + q^{-B} + third)
  long double thirdTerm = 0;  // sqrt(q) qhat(X)^{1/2} / pi_q(X), computed exactly
  std::string reason;
};

/// Feasibility of the explicit existence criterion at concrete (q, n, r):
/// 1 > Cq1 q^{-Cexp/rho} + q^{-B} + sqrt(q) q^{n/2}/pi_q(n), with rho = r/n
/// and B = n/4 - log_q(n) - r. The third term is included, not waved away.
inline Thm2Result thm2_feasible(unsigned q, unsigned n, unsigned r) {
  if (n < 1 || r >= n) fail(errc::invalid_range, "thm2_feasible needs 1 <= n and 0 <= r < n");
  Thm2Result res;
  const long double qd = q;
  res.thirdTerm =
      sqrtl(qd) * powl(qd, n / 2.0L) / to_ldouble(pi_q(q, n));
  long double B = n / 4.0L - log_base(qd, n) - static_cast<long double>(r);

  if (r == 0) {
    // no prescribed coefficients: only the geometric and third terms remain
    long double rhs = powl(qd, -B) + res.thirdTerm;
    res.feasible = rhs + kEmbedPad < 1.0L;
    res.margin = 1.0L - rhs;
    res.reason = "rho = 0";
    res.bundle.q = q;
    res.bundle.B = B;
    return res;
  }

  Rat rho(r, n);
  rho.canonicalize();
  if (rho > Rat(1, 4)) {
    res.feasible = false;
    res.margin = -std::numeric_limits<long double>::infinity();
    res.reason = "rho > 1/4 is outside the derivation range";
    res.bundle.q = q;
    res.bundle.rho = rho;
    res.bundle.B = B;
    return res;
  }

  res.bundle = constants_bundle(q, rho, n, B);
  long double rhs = res.bundle.feasibilityRHS + res.thirdTerm;
  res.feasible = rhs + kEmbedPad < 1.0L;
  res.margin = 1.0L - rhs;
  if (B <= 0) res.reason = "B = n/4 - log_q(n) - r is not positive";
  return res;
}

}  // namespace fqcircle

#endif  // FQCIRCLE_CONSTANTS_HPP
