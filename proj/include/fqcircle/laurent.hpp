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

#ifndef FQCIRCLE_LAURENT_HPP
#define FQCIRCLE_LAURENT_HPP

#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fqcircle/poly.hpp"

namespace fqcircle {

/// Element of K_infinity = F_q((1/T)) known exactly on exponents >= floor
/// (or everywhere, when exact). Reading an unknown coefficient is a hard
/// error, never a silent zero: truncated series must not compare equal by
/// accident.
class TruncatedLaurent {
 public:
  TruncatedLaurent() = default;  // exact zero

  /// Exact value from a coefficient window: c[k] is the coefficient of
  /// T^{floor+k}. With exact=false the value is only known on >= floor.
  static TruncatedLaurent from_window(int floor, std::vector<FqElem> c, bool exact) {
    TruncatedLaurent x;
    x.floor_ = floor;
    x.exact_ = exact;
    x.c_ = std::move(c);
    x.trim();
    return x;
  }

  static TruncatedLaurent from_poly(const Fq& F, const Poly& m) {
    (void)F;
    return from_window(0, m.c, true);
  }

  bool exact() const { return exact_; }
  int floor() const { return floor_; }

  /// Smallest exponent that can be read without error.
  bool knows(int e) const { return exact_ || e >= floor_; }

  FqElem at(int e) const {
    if (e < floor_) {
      if (exact_) return FqElem{};
      fail(errc::insufficient_precision,
           "coefficient at exponent " + std::to_string(e) + " is below the precision floor " +
               std::to_string(floor_));
    }
    std::size_t k = static_cast<std::size_t>(e - floor_);
    return k < c_.size() ? c_[k] : FqElem{};
  }

  /// |x| < q^e  <=>  every coefficient at exponent >= e vanishes.
  bool norm_lt(int e) const {
    for (std::size_t k = c_.size(); k-- > 0;) {
      int ek = floor_ + static_cast<int>(k);
      if (ek < e) break;
      if (c_[k].code != 0) return false;
    }
    if (!exact_ && floor_ > e)
      fail(errc::insufficient_precision, "norm comparison reads below the precision floor");
    return true;
  }

  /// Exponent of the norm (|x| = q^e); nullopt means the value is exactly 0.
  /// Undecidable for an all-zero truncated window.
  std::optional<int> norm_exponent() const {
    for (std::size_t k = c_.size(); k-- > 0;)
      if (c_[k].code != 0) return floor_ + static_cast<int>(k);
    if (!exact_)
      fail(errc::insufficient_precision, "norm of an all-zero truncated window is undecidable");
    return std::nullopt;
  }

  bool is_known_zero() const {
    auto e = norm_exponent();
    return !e.has_value();
  }

  TruncatedLaurent add(const Fq& F, const TruncatedLaurent& o) const {
    TruncatedLaurent r;
    r.exact_ = exact_ && o.exact_;
    int lo;
    if (r.exact_)
      lo = std::min(floor_, o.floor_);
    else if (exact_)
      lo = o.floor_;
    else if (o.exact_)
      lo = floor_;
    else
      lo = std::max(floor_, o.floor_);
    int hi = std::max(top(), o.top());
    r.floor_ = lo;
    if (hi >= lo) {
      r.c_.resize(static_cast<std::size_t>(hi - lo + 1), FqElem{});
      for (int e = lo; e <= hi; ++e)
        r.c_[static_cast<std::size_t>(e - lo)] = F.add(at_or_zero(e), o.at_or_zero(e));
    }
    r.trim();
    return r;
  }

  TruncatedLaurent negate(const Fq& F) const {
    TruncatedLaurent r = *this;
    for (auto& x : r.c_) x = F.neg(x);
    return r;
  }

  TruncatedLaurent sub(const Fq& F, const TruncatedLaurent& o) const {
    return add(F, o.negate(F));
  }

  /// Multiplication by a polynomial. Knowledge shrinks: the product is known
  /// only from floor + deg m upward (from floor, when exact).
  TruncatedLaurent mul_poly(const Fq& F, const Poly& m) const {
    if (m.is_zero()) return {};
    TruncatedLaurent r;
    r.exact_ = exact_;
    int dm = m.deg();
    int lo = exact_ ? floor_ : floor_ + dm;
    int hi = top() + dm;
    r.floor_ = lo;
    if (hi >= lo) {
      r.c_.resize(static_cast<std::size_t>(hi - lo + 1), FqElem{});
      for (int e = lo; e <= hi; ++e) {
        FqElem acc{};
        for (int j = 0; j <= dm; ++j) {
          FqElem mj = m.coeff(static_cast<std::size_t>(j));
          if (mj.code == 0) continue;
          acc = F.add(acc, F.mul(mj, at_or_zero(e - j)));
        }
        r.c_[static_cast<std::size_t>(e - lo)] = acc;
      }
    }
    r.trim();
    return r;
  }

  TruncatedLaurent mul_Tpow(int s) const {
    TruncatedLaurent r = *this;
    r.floor_ += s;
    return r;
  }

  /// Fractional part: drop all exponents >= 0.
  TruncatedLaurent fractional(const Fq& F) const {
    (void)F;
    TruncatedLaurent r;
    r.exact_ = exact_;
    r.floor_ = floor_;
    if (floor_ < 0) {
      std::size_t n = std::min<std::size_t>(c_.size(), static_cast<std::size_t>(-floor_));
      r.c_.assign(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n));
    }
    r.trim();
    return r;
  }

 private:
  int floor_ = 0;
  bool exact_ = true;
  std::vector<FqElem> c_;  // c_[k] is the coefficient of T^{floor_+k}; trimmed at the top

  int top() const { return floor_ + static_cast<int>(c_.size()) - 1; }  // < floor_ when empty
  FqElem at_or_zero(int e) const {
    if (e < floor_) return FqElem{};  // callers guarantee e is known
    std::size_t k = static_cast<std::size_t>(e - floor_);
    return k < c_.size() ? c_[k] : FqElem{};
  }
  void trim() {
    while (!c_.empty() && c_.back().code == 0) c_.pop_back();
  }
};

/// Laurent expansion of a/g down to exponent floor, by dividing a*T^{-floor}
/// by g: the quotient carries exactly the coefficients at exponents >= floor.
/// When the division terminates the expansion is exact.
inline TruncatedLaurent laurent_expand(const Fq& F, const Poly& a, const Poly& g, int floor) {
  if (g.is_zero()) fail(errc::division_by_zero, "expansion of a/0");
  if (a.is_zero()) return {};
  int K = std::max(0, -floor);
  Poly shifted = a;
  shifted.c.insert(shifted.c.begin(), static_cast<std::size_t>(K), F.zero());
  auto dm = poly_divmod(F, shifted, g);
  std::vector<FqElem> window(dm.quot.c.begin(), dm.quot.c.end());
  return TruncatedLaurent::from_window(-K, std::move(window), dm.rem.is_zero());
}

/// Reduced fraction a/g in the unit torus: g monic, gcd(a, g) = 1, |a| < |g|.
struct RationalPoint {
  Poly a, g;

  static RationalPoint reduce(const Fq& F, Poly num, Poly den) {
    if (den.is_zero()) fail(errc::division_by_zero, "fraction with zero denominator");
    num = poly_mod(F, num, den);
    Poly c = poly_gcd(F, num, den);
    if (c.deg() > 0) {
      num = poly_divmod(F, num, c).quot;
      den = poly_divmod(F, den, c).quot;
    }
    FqElem lead = den.c.back();
    if (lead.code != 1) {
      FqElem li = F.inv(lead);
      num = poly_scale(F, num, li);
      den = poly_scale(F, den, li);
    }
    return {num, den};
  }

  TruncatedLaurent expand(const Fq& F, int floor) const { return laurent_expand(F, a, g, floor); }

  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

/// Farey arc {alpha : |alpha - a/g| < q^{-radiusExp}} around a rational point.
struct ArcSpec {
  RationalPoint center;
  int radiusExp = 1;
};

/// Best rational approximation: the unique (a, g) with g monic,
/// |a| < |g| <= q^{floor(X/2)} and |alpha - a/g| < 1/(|g| q^{X/2}),
/// computed by the continued-fraction algorithm on the truncation of alpha
/// at exponent -(X+1). Norms are integral powers of q, so the X/2 bounds
/// reduce to integer window conditions.
inline RationalPoint rational_approx(const Fq& F, const TruncatedLaurent& alpha, unsigned X) {
  if (!alpha.norm_lt(0))
    fail(errc::precondition_violated, "rational_approx needs |alpha| < 1");
  if (!alpha.knows(-static_cast<int>(X) - 1))
    fail(errc::insufficient_precision, "rational_approx needs exponents down to -(X+1)");
  unsigned half = X / 2;

  Poly num;
  num.c.assign(X + 1, F.zero());
  for (unsigned k = 1; k <= X + 1; ++k) num.c[X + 1 - k] = alpha.at(-static_cast<int>(k));
  poly_trim(num);

  Poly rPrev = poly_Tpow(F, X + 1), rCur = num;
  Poly hPrev = poly_one(F), hCur;                 // convergent numerators, h_{-1}=1, h_0=0
  Poly kPrev, kCur = poly_one(F);                 // convergent denominators, k_{-1}=0, k_0=1
  while (!rCur.is_zero()) {
    auto dm = poly_divmod(F, rPrev, rCur);
    Poly hNext = poly_add(F, poly_mul(F, dm.quot, hCur), hPrev);
    Poly kNext = poly_add(F, poly_mul(F, dm.quot, kCur), kPrev);
    if (kNext.deg() > static_cast<int>(half)) break;
    hPrev = std::move(hCur);
    hCur = std::move(hNext);
    kPrev = std::move(kCur);
    kCur = std::move(kNext);
    rPrev = std::move(rCur);
    rCur = std::move(dm.rem);
  }
  FqElem li = F.inv(kCur.c.back());
  return {poly_scale(F, hCur, li), poly_scale(F, kCur, li)};
}

struct ArcClass {
  bool major = false;
  RationalPoint center;
};

/// Major arc test: |alpha - a/g| < q^{-X} against the rational_approx center.
inline ArcClass classify_arc(const Fq& F, const TruncatedLaurent& alpha, unsigned X) {
  RationalPoint c = rational_approx(F, alpha, X);
  TruncatedLaurent diff = alpha.sub(F, c.expand(F, -static_cast<int>(X)));
  return {diff.norm_lt(-static_cast<int>(X)), c};
}

struct FareyViolation {
  Int pointIndex;            // code of the discretized point
  std::size_t arcsContaining;  // expected exactly 1
  bool approxMismatch;       // containing arc disagreed with rational_approx
};

struct FareyCoverReport {
  Int pointsChecked = 0;
  std::size_t centers = 0;
  std::vector<FareyViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Exhaustive check of the Farey decomposition at resolution q^{-(X+1)}:
/// every discretized point of the torus must lie in exactly one arc
/// F(a/g, |g| q^{X/2}), and that arc must be the rational_approx center.
inline FareyCoverReport farey_cover_check(const Fq& F, unsigned X,
                                          const Int& budget = kDefaultBudget) {
  const unsigned half = X / 2;
  const int window = static_cast<int>(X) + 1;
  Int points = int_pow(F.q(), window);
  charge_budget(points, budget, "farey cover scan");

  // precompute all centers with their expansions on exponents -1..-(X+1)
  struct Center {
    RationalPoint rp;
    int degG;
    std::vector<std::uint64_t> w;  // w[k] = coefficient at exponent -(k+1)
  };
  std::vector<Center> centers;
  for (unsigned D = 0; D <= half; ++D) {
    for_each_monic(F, D, [&](const Poly& g) {
      if (D == 0) {
        Center c;
        c.rp = {poly_zero(), g};
        c.degG = 0;
        c.w.assign(window, 0);
        centers.push_back(std::move(c));
        return;
      }
      // all a with |a| < |g|, gcd(a, g) = 1 — includes a over every degree < D
      Poly a;
      a.c.assign(D, F.zero());
      while (true) {
        Poly aa = a;
        poly_trim(aa);
        if (!aa.is_zero() && poly_gcd(F, aa, g).deg() == 0) {
          Center c;
          c.rp = {aa, g};
          c.degG = static_cast<int>(D);
          auto exp = laurent_expand(F, aa, g, -window);
          c.w.resize(window);
          for (int k = 1; k <= window; ++k) c.w[k - 1] = exp.at(-k).code;
          centers.push_back(std::move(c));
        }
        std::size_t kk = 0;
        while (kk < D && (a.c[kk] = F.from_code((a.c[kk].code + 1) % F.q())).code == 0) ++kk;
        if (kk == D) break;
      }
    });
  }

  FareyCoverReport rep;
  rep.centers = centers.size();

  std::vector<std::uint64_t> pt(window, 0);  // pt[k] = coefficient at exponent -(k+1)
  Int pointIndex = 0;
  while (true) {
    const Center* found = nullptr;
    std::size_t count = 0;
    for (const auto& c : centers) {
      // membership: agree on exponents -1 .. -(degG + half)
      int agree = c.degG + static_cast<int>(half);
      bool in = true;
      for (int k = 0; k < agree; ++k)
        if (pt[k] != c.w[k]) {
          in = false;
          break;
        }
      if (in) {
        ++count;
        found = &c;
      }
    }
    bool mismatch = false;
    if (count == 1) {
      std::vector<FqElem> coeffs(window);
      for (int k = 0; k < window; ++k) coeffs[window - 1 - k] = F.from_code(pt[k]);
      auto alpha = TruncatedLaurent::from_window(-window, std::move(coeffs), true);
      mismatch = !(rational_approx(F, alpha, X) == found->rp);
    }
    if (count != 1 || mismatch) rep.violations.push_back({pointIndex, count, mismatch});

    rep.pointsChecked += 1;
    std::size_t k = 0;
    while (k < pt.size() && ++pt[k] == F.q()) pt[k++] = 0;
    if (k == pt.size()) break;
    ++pointIndex;
  }
  return rep;
}

/// "L;floor;codes" with coefficient codes listed from exponent L down to
/// floor. Parsed values carry truncated (non-exact) semantics.
inline TruncatedLaurent parse_laurent(const Fq& F, const std::string& text) {
  std::stringstream ss(text);
  std::string Ltok, ftok, codes;
  if (!std::getline(ss, Ltok, ';') || !std::getline(ss, ftok, ';'))
    fail(errc::bad_input, "laurent literal must be L;floor;codes");
  std::getline(ss, codes);
  int L = 0, floor = 0;
  try {
    L = std::stoi(Ltok);
    floor = std::stoi(ftok);
  } catch (...) {
    fail(errc::bad_input, "bad laurent exponents");
  }
  if (L < floor) fail(errc::bad_input, "laurent literal needs L >= floor");
  std::vector<FqElem> win(static_cast<std::size_t>(L - floor + 1), FqElem{});
  std::stringstream cs(codes);
  std::string tok;
  int e = L;
  while (std::getline(cs, tok, ',')) {
    if (e < floor) fail(errc::bad_input, "too many laurent coefficients");
    try {
      win[static_cast<std::size_t>(e - floor)] = F.from_code(std::stoull(tok));
    } catch (const error&) {
      throw;
    } catch (...) {
      fail(errc::bad_input, "bad laurent coefficient '" + tok + "'");
    }
    --e;
  }
  return TruncatedLaurent::from_window(floor, std::move(win), false);
}

inline std::string format_laurent(const TruncatedLaurent& x, int topExp) {
  std::string s = std::to_string(topExp) + ";" + std::to_string(x.floor()) + ";";
  for (int e = topExp; e >= x.floor(); --e) {
    if (e != topExp) s += ",";
    s += std::to_string(x.at(e).code);
  }
  return s;
}

}  // namespace fqcircle

#endif  // FQCIRCLE_LAURENT_HPP
