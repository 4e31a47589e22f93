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

#ifndef FQCIRCLE_CYCLO_HPP
#define FQCIRCLE_CYCLO_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "fqcircle/common.hpp"

namespace fqcircle {

/// Exact element of Q(zeta_p), zeta_p = exp(2*pi*i/p), in the reduced basis
/// zeta^0..zeta^{p-2} (zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})). Equality
/// is exact; the complex embedding exists for magnitude estimates only.
class CycloVal {
 public:
  CycloVal() : p_(2), coords_(1) {}
  explicit CycloVal(unsigned p) : p_(p), coords_(p - 1) {
    if (p < 2) fail(errc::invalid_range, "cyclotomic order must be a prime >= 2");
  }

  static CycloVal zero(unsigned p) { return CycloVal(p); }

  static CycloVal from_rat(unsigned p, const Rat& v) {
    CycloVal z(p);
    z.coords_[0] = v;
    return z;
  }

  static CycloVal from_int(unsigned p, const Int& v) { return from_rat(p, Rat(v)); }
  static CycloVal one(unsigned p) { return from_int(p, 1); }

  static CycloVal zeta_pow(unsigned p, unsigned long k) {
    CycloVal z(p);
    k %= p;
    if (k < p - 1) {
      z.coords_[k] = 1;
    } else {
      for (auto& c : z.coords_) c = -1;
    }
    return z;
  }

  /// sum_k counts[k] * zeta^k for counts indexed 0..p-1.
  static CycloVal from_zeta_counts(unsigned p, const std::vector<Int>& counts) {
    CycloVal z(p);
    for (unsigned k = 0; k < p - 1 && k < counts.size(); ++k) z.coords_[k] = counts[k];
    if (counts.size() >= p) {
      Rat w(counts[p - 1]);
      for (auto& c : z.coords_) c -= w;
    }
    return z;
  }

  unsigned p() const { return p_; }
  const std::vector<Rat>& coords() const { return coords_; }

  bool is_zero() const {
    for (const auto& c : coords_)
      if (c != 0) return false;
    return true;
  }

  friend bool operator==(const CycloVal& a, const CycloVal& b) {
    return a.p_ == b.p_ && a.coords_ == b.coords_;
  }

  CycloVal operator+(const CycloVal& o) const {
    CycloVal r = *this;
    r.check_same(o);
    for (unsigned k = 0; k < p_ - 1; ++k) r.coords_[k] += o.coords_[k];
    return r;
  }

  CycloVal operator-(const CycloVal& o) const {
    CycloVal r = *this;
    r.check_same(o);
    for (unsigned k = 0; k < p_ - 1; ++k) r.coords_[k] -= o.coords_[k];
    return r;
  }

  CycloVal operator-() const {
    CycloVal r = *this;
    for (auto& c : r.coords_) c = -c;
    return r;
  }

  CycloVal& operator+=(const CycloVal& o) {
    check_same(o);
    for (unsigned k = 0; k < p_ - 1; ++k) coords_[k] += o.coords_[k];
    return *this;
  }

  CycloVal operator*(const CycloVal& o) const {
    check_same(o);
    // convolve, then fold exponents >= p-1 through zeta^p = 1 and the
    // minimal-polynomial relation for zeta^{p-1}
    std::vector<Rat> raw(2 * p_ - 3 + 1);
    for (unsigned i = 0; i < p_ - 1; ++i) {
      if (coords_[i] == 0) continue;
      for (unsigned j = 0; j < p_ - 1; ++j) {
        if (o.coords_[j] == 0) continue;
        raw[i + j] += coords_[i] * o.coords_[j];
      }
    }
    CycloVal r(p_);
    for (unsigned e = 0; e < raw.size(); ++e) {
      if (raw[e] == 0) continue;
      unsigned em = e % p_;
      if (em < p_ - 1) {
        r.coords_[em] += raw[e];
      } else {
        for (auto& c : r.coords_) c -= raw[e];
      }
    }
    return r;
  }

  CycloVal scale(const Rat& s) const {
    CycloVal r = *this;
    for (auto& c : r.coords_) c *= s;
    return r;
  }

  /// Galois conjugation zeta -> zeta^{-1} (complex conjugation), exact.
  CycloVal conj() const {
    CycloVal r(p_);
    for (unsigned k = 0; k < p_ - 1; ++k) {
      if (coords_[k] == 0) continue;
      unsigned e = (p_ - k) % p_;
      if (e < p_ - 1)
        r.coords_[e] += coords_[k];
      else
        for (auto& c : r.coords_) c -= coords_[k];
    }
    return r;
  }

  /// zeta^k * this, a cheap coordinate rotation.
  CycloVal mul_zeta_pow(unsigned long k) const {
    CycloVal r(p_);
    k %= p_;
    for (unsigned j = 0; j < p_ - 1; ++j) {
      if (coords_[j] == 0) continue;
      unsigned e = static_cast<unsigned>((j + k) % p_);
      if (e < p_ - 1)
        r.coords_[e] += coords_[j];
      else
        for (auto& c : r.coords_) c -= coords_[j];
    }
    return r;
  }

  /// The value as a rational, when it lies in Q (all higher coordinates 0).
  std::optional<Rat> as_rational() const {
    for (unsigned k = 1; k < p_ - 1; ++k)
      if (coords_[k] != 0) return std::nullopt;
    return coords_[0];
  }

  std::complex<long double> embed() const {
    const long double tau = 2.0L * acosl(-1.0L);
    std::complex<long double> z{0.0L, 0.0L};
    for (unsigned k = 0; k < p_ - 1; ++k) {
      if (coords_[k] == 0) continue;
      long double c = to_ldouble(coords_[k]);
      long double ang = tau * static_cast<long double>(k) / static_cast<long double>(p_);
      z += std::complex<long double>{c * cosl(ang), c * sinl(ang)};
    }
    return z;
  }

  long double abs() const { return std::abs(embed()); }

  std::string to_string() const {
    std::string s = "[";
    for (unsigned k = 0; k < p_ - 1; ++k) {
      if (k) s += ",";
      s += coords_[k].get_str();
    }
    return s + "]";
  }

 private:
  unsigned p_;
  std::vector<Rat> coords_;

  void check_same(const CycloVal& o) const {
    if (p_ != o.p_) fail(errc::field_mismatch, "cyclotomic orders differ");
  }
};

}  // namespace fqcircle

#endif  // FQCIRCLE_CYCLO_HPP
