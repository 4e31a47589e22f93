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

#ifndef FQCIRCLE_FIELD_HPP
#define FQCIRCLE_FIELD_HPP

#include <algorithm>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "fqcircle/common.hpp"

namespace fqcircle {

/// Element of F_q in the power basis, identified by its integer code
/// sum coeffs[i]*p^i (little-endian base p). The code bijection [0,q) <-> F_q
/// is part of the public contract: it fixes enumeration order and the CLI's
/// element syntax.
struct FqElem {
  std::uint64_t code = 0;
  friend constexpr bool operator==(FqElem, FqElem) = default;
  friend constexpr auto operator<=>(FqElem, FqElem) = default;
};

namespace detail {

// Small polynomial helpers over the prime field F_p, used only for modulus
// validation/search. Vectors are little-endian coefficient lists of residues.
inline void fp_trim(std::vector<unsigned>& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::vector<unsigned> fp_mod(std::vector<unsigned> r, const std::vector<unsigned>& g,
                                    std::uint64_t p) {
  // g monic
  while (r.size() >= g.size()) {
    std::uint64_t lead = r.back();
    std::size_t shift = r.size() - g.size();
    if (lead != 0) {
      for (std::size_t j = 0; j < g.size(); ++j) {
        std::uint64_t sub = (lead * g[j]) % p;
        std::uint64_t cur = r[shift + j];
        r[shift + j] = static_cast<unsigned>((cur + p - sub) % p);
      }
    }
    r.pop_back();
  }
  fp_trim(r);
  return r;
}

inline bool fp_is_irreducible(const std::vector<unsigned>& f, std::uint64_t p) {
  // trial division by every monic polynomial of degree 1..deg/2
  std::size_t deg = f.size() - 1;
  if (deg == 0) return false;
  for (std::size_t dd = 1; 2 * dd <= deg; ++dd) {
    std::vector<unsigned> g(dd + 1, 0);
    g[dd] = 1;
    // odometer over the dd lower coefficients
    while (true) {
      if (fp_mod(f, g, p).empty()) return false;
      std::size_t k = 0;
      while (k < dd && ++g[k] == p) g[k++] = 0;
      if (k == dd) break;
    }
  }
  return true;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t i = 2; i * i <= n; ++i)
    if (n % i == 0) return false;
  return true;
}

}  // namespace detail

/// The finite field F_q, q = p^d, with explicit monic modulus over F_p for
/// d > 1. All element arithmetic is exact; no floating point.
class Fq {
 public:
  /// Builds a validated field. If modulus is omitted and d > 1, picks the
  /// irreducible monic degree-d polynomial over F_p with the smallest
  /// coefficient code (deterministic across runs).
  static Fq make(std::uint64_t p, unsigned d,
                 std::optional<std::vector<unsigned>> modulus = std::nullopt) {
    if (!detail::is_prime_u64(p))
      fail(errc::non_prime_characteristic, std::to_string(p) + " is not prime");
    if (d < 1) fail(errc::invalid_range, "extension degree must be >= 1");
    if (d > 20) fail(errc::invalid_range, "extension degree too large for this toolkit");
    Int qz = int_pow(p, d);
    if (qz > Int(std::uint64_t(1) << 32)) fail(errc::invalid_range, "q = p^d too large");

    Fq F;
    F.p_ = p;
    F.d_ = d;
    F.q_ = qz.get_ui();
    if (d == 1) {
      F.mod_ = {0, 1};  // placeholder, never used for d = 1
    } else if (modulus) {
      auto m = *modulus;
      detail::fp_trim(m);
      if (m.size() != d + 1 || m.back() != 1)
        fail(errc::degree_mismatch, "modulus must be monic of degree d");
      for (unsigned c : m)
        if (c >= p) fail(errc::bad_input, "modulus coefficient out of range");
      if (!detail::fp_is_irreducible(m, p))
        fail(errc::reducible_modulus, "modulus is reducible over F_p");
      F.mod_ = m;
    } else {
      F.mod_ = find_default_modulus(p, d);
    }
    if (d == 1 && modulus) {
      // tolerated but ignored, per the field contract
    }
    F.build_tables();
    return F;
  }

  /// Parses "p^d" or "p^d/modcode" (modcode = integer code of the modulus
  /// coefficient list over F_p, little-endian, leading 1 included).
  static Fq parse(const std::string& spec) {
    auto caret = spec.find('^');
    if (caret == std::string::npos) fail(errc::bad_input, "field spec must look like p^d[/mod]");
    auto slash = spec.find('/', caret);
    try {
      std::uint64_t p = std::stoull(spec.substr(0, caret));
      unsigned d = static_cast<unsigned>(
          std::stoul(spec.substr(caret + 1, slash == std::string::npos ? std::string::npos
                                                                       : slash - caret - 1)));
      if (slash == std::string::npos) return make(p, d);
      std::uint64_t code = std::stoull(spec.substr(slash + 1));
      std::vector<unsigned> m;
      while (code != 0) {
        m.push_back(static_cast<unsigned>(code % p));
        code /= p;
      }
      return make(p, d, m);
    } catch (const std::invalid_argument&) {
      fail(errc::bad_input, "cannot parse field spec '" + spec + "'");
    } catch (const std::out_of_range&) {
      fail(errc::bad_input, "field spec out of range '" + spec + "'");
    }
  }

  std::uint64_t p() const { return p_; }
  unsigned d() const { return d_; }
  std::uint64_t q() const { return q_; }
  const std::vector<unsigned>& modulus() const { return mod_; }

  std::uint64_t modulus_code() const {
    std::uint64_t c = 0;
    for (std::size_t i = mod_.size(); i-- > 0;) c = c * p_ + mod_[i];
    return c;
  }

  std::string to_string() const {
    std::string s = std::to_string(p_) + "^" + std::to_string(d_);
    if (d_ > 1) s += "/" + std::to_string(modulus_code());
    return s;
  }

  bool same_field(const Fq& o) const { return p_ == o.p_ && d_ == o.d_ && mod_ == o.mod_; }

  FqElem zero() const { return {}; }
  FqElem one() const { return {1}; }
  /// Image of the basis generator (the class of T), only meaningful for d > 1.
  FqElem gen() const { return {d_ > 1 ? p_ : 0}; }

  FqElem from_code(std::uint64_t code) const {
    FqElem x{code};
    check(x);
    return x;
  }

  /// Embeds a residue of F_p.
  FqElem scalar(std::uint64_t c) const { return {c % p_}; }

  std::vector<unsigned> coeffs(FqElem x) const {
    check(x);
    std::vector<unsigned> out(d_);
    std::uint64_t c = x.code;
    for (unsigned i = 0; i < d_; ++i) {
      out[i] = static_cast<unsigned>(c % p_);
      c /= p_;
    }
    return out;
  }

  FqElem from_coeffs(const std::vector<unsigned>& cs) const {
    if (cs.size() > d_) fail(errc::degree_mismatch, "too many power-basis coordinates");
    std::uint64_t code = 0;
    for (std::size_t i = cs.size(); i-- > 0;) {
      if (cs[i] >= p_) fail(errc::bad_input, "coordinate out of range");
      code = code * p_ + cs[i];
    }
    return {code};
  }

  /// All q elements in code order (the canonical enumeration order).
  std::vector<FqElem> elements() const {
    std::vector<FqElem> out(q_);
    for (std::uint64_t i = 0; i < q_; ++i) out[i] = {i};
    return out;
  }

  FqElem add(FqElem a, FqElem b) const {
    check(a);
    check(b);
    if (!add_.empty()) return {add_[a.code * q_ + b.code]};
    return add_generic(a, b);
  }

  FqElem neg(FqElem a) const {
    check(a);
    if (d_ == 1) return {(p_ - a.code) % p_};
    std::uint64_t code = 0, c = a.code, pw = 1;
    for (unsigned i = 0; i < d_; ++i) {
      std::uint64_t digit = c % p_;
      c /= p_;
      code += ((p_ - digit) % p_) * pw;
      pw *= p_;
    }
    return {code};
  }

  FqElem sub(FqElem a, FqElem b) const { return add(a, neg(b)); }

  FqElem mul(FqElem a, FqElem b) const {
    check(a);
    check(b);
    if (!mul_.empty()) return {mul_[a.code * q_ + b.code]};
    return mul_generic(a, b);
  }

  FqElem inv(FqElem a) const {
    check(a);
    if (a.code == 0) fail(errc::division_by_zero, "inverse of zero in F_q");
    if (!inv_.empty()) return {inv_[a.code]};
    return pow(a, Int(q_) - 2);
  }

  FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }

  FqElem pow(FqElem a, Int e) const {
    check(a);
    if (e < 0) {
      a = inv(a);
      e = -e;
    }
    if (a.code == 0) return e == 0 ? one() : zero();
    // exponents live in the cyclic group of order q-1
    Int r = e % (Int(q_) - 1);
    FqElem acc = one(), base = a;
    while (r != 0) {
      if (mpz_odd_p(r.get_mpz_t())) acc = mul(acc, base);
      base = mul(base, base);
      r >>= 1;
    }
    return acc;
  }

  FqElem frobenius(FqElem a) const { return pow(a, Int(p_)); }

  /// Absolute trace tr_{F_q/F_p}(x) = x + x^p + ... + x^{p^{d-1}}, returned
  /// as a residue mod p. This is the exponent fed to the additive character.
  unsigned trace(FqElem a) const {
    check(a);
    if (!trace_.empty()) return trace_[a.code];
    return trace_generic(a);
  }

 private:
  std::uint64_t p_ = 2;
  unsigned d_ = 1;
  std::uint64_t q_ = 2;
  std::vector<unsigned> mod_;  // monic, length d+1 (placeholder {0,1} for d = 1)
  // dense op tables for small q; empty when q exceeds kTableMax
  static constexpr std::uint64_t kTableMax = 64;
  std::vector<std::uint16_t> add_, mul_, inv_;
  std::vector<std::uint8_t> trace_;

  void check(FqElem x) const {
    if (x.code >= q_)
      fail(errc::field_mismatch,
           "element code " + std::to_string(x.code) + " not in F_" + std::to_string(q_));
  }

  static std::vector<unsigned> find_default_modulus(std::uint64_t p, unsigned d) {
    std::vector<unsigned> m(d + 1, 0);
    m[d] = 1;
    while (true) {
      std::vector<unsigned> cand = m;
      detail::fp_trim(cand);
      if (detail::fp_is_irreducible(cand, p)) return m;
      std::size_t k = 0;
      while (k < d && ++m[k] == p) m[k++] = 0;
      if (k == d) break;
    }
    fail(errc::reducible_modulus, "no irreducible modulus found (unreachable)");
  }

  FqElem add_generic(FqElem a, FqElem b) const {
    std::uint64_t code = 0, ca = a.code, cb = b.code, pw = 1;
    for (unsigned i = 0; i < d_; ++i) {
      code += ((ca % p_ + cb % p_) % p_) * pw;
      ca /= p_;
      cb /= p_;
      pw *= p_;
    }
    return {code};
  }

  FqElem mul_generic(FqElem a, FqElem b) const {
    if (d_ == 1) return {(a.code * b.code) % p_};
    std::vector<std::uint64_t> prod(2 * d_ - 1, 0);
    auto ca = coeffs_nocheck(a.code), cb = coeffs_nocheck(b.code);
    for (unsigned i = 0; i < d_; ++i) {
      if (ca[i] == 0) continue;
      for (unsigned j = 0; j < d_; ++j) prod[i + j] += std::uint64_t(ca[i]) * cb[j];
    }
    // reduce modulo the monic modulus
    for (std::size_t i = prod.size(); i-- > d_;) {
      std::uint64_t lead = prod[i] % p_;
      if (lead == 0) continue;
      for (unsigned j = 0; j < d_; ++j) {
        std::uint64_t sub = (lead * mod_[j]) % p_;
        prod[i - d_ + j] += p_ - sub;  // keep nonnegative
      }
      prod[i] = 0;
    }
    std::uint64_t code = 0, pw = 1;
    for (unsigned i = 0; i < d_; ++i) {
      code += (prod[i] % p_) * pw;
      pw *= p_;
    }
    return {code};
  }

  unsigned trace_generic(FqElem a) const {
    FqElem t = a, acc = a;
    for (unsigned i = 1; i < d_; ++i) {
      t = frobenius(t);
      acc = add_generic(acc, t);
    }
    // the trace lies in F_p, i.e. its code is a single base-p digit
    if (acc.code >= p_) fail(errc::precondition_violated, "trace left F_p (internal bug)");
    return static_cast<unsigned>(acc.code);
  }

  void build_tables() {
    if (q_ > kTableMax) return;
    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    inv_.assign(q_, 0);
    trace_.resize(q_);
    for (std::uint64_t i = 0; i < q_; ++i) {
      for (std::uint64_t j = 0; j < q_; ++j) {
        add_[i * q_ + j] = static_cast<std::uint16_t>(add_generic({i}, {j}).code);
        mul_[i * q_ + j] = static_cast<std::uint16_t>(mul_generic({i}, {j}).code);
      }
    }
    for (std::uint64_t i = 1; i < q_; ++i) {
      for (std::uint64_t j = 1; j < q_; ++j) {
        if (mul_[i * q_ + j] == 1) {
          inv_[i] = static_cast<std::uint16_t>(j);
          break;
        }
      }
    }
    for (std::uint64_t i = 0; i < q_; ++i)
      trace_[i] = static_cast<std::uint8_t>(trace_generic({i}));
  }

  std::vector<unsigned> coeffs_nocheck(std::uint64_t c) const {
    std::vector<unsigned> out(d_);
    for (unsigned i = 0; i < d_; ++i) {
      out[i] = static_cast<unsigned>(c % p_);
      c /= p_;
    }
    return out;
  }
};

}  // namespace fqcircle

#endif  // FQCIRCLE_FIELD_HPP
