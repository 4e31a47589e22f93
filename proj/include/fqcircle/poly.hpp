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

#ifndef FQCIRCLE_POLY_HPP
#define FQCIRCLE_POLY_HPP

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fqcircle/field.hpp"

namespace fqcircle {

/// Polynomial over F_q, little-endian coefficient list with no stored zeros
/// above the degree. The zero polynomial is the empty list (degree -1).
struct Poly {
  std::vector<FqElem> c;

  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  FqElem coeff(std::size_t i) const { return i < c.size() ? c[i] : FqElem{}; }
  friend bool operator==(const Poly&, const Poly&) = default;
};

inline void poly_trim(Poly& a) {
  while (!a.c.empty() && a.c.back().code == 0) a.c.pop_back();
}

inline Poly poly_zero() { return {}; }

inline Poly poly_constant(const Fq& F, FqElem v) {
  Poly a;
  if (v.code != 0) a.c = {v};
  (void)F;
  return a;
}

inline Poly poly_one(const Fq& F) { return poly_constant(F, F.one()); }

inline Poly poly_Tpow(const Fq& F, unsigned k) {
  Poly a;
  a.c.assign(k + 1, F.zero());
  a.c[k] = F.one();
  return a;
}

inline Poly poly_T(const Fq& F) { return poly_Tpow(F, 1); }

inline Poly poly_from_codes(const Fq& F, const std::vector<std::uint64_t>& codes) {
  Poly a;
  a.c.reserve(codes.size());
  for (auto cc : codes) a.c.push_back(F.from_code(cc));
  poly_trim(a);
  return a;
}

inline bool poly_is_monic(const Poly& a) { return !a.is_zero() && a.c.back().code == 1; }

inline Poly poly_add(const Fq& F, const Poly& a, const Poly& b) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), F.zero());
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = F.add(a.coeff(i), b.coeff(i));
  poly_trim(r);
  return r;
}

inline Poly poly_neg(const Fq& F, const Poly& a) {
  Poly r = a;
  for (auto& x : r.c) x = F.neg(x);
  return r;
}

inline Poly poly_sub(const Fq& F, const Poly& a, const Poly& b) {
  return poly_add(F, a, poly_neg(F, b));
}

inline Poly poly_scale(const Fq& F, const Poly& a, FqElem s) {
  if (s.code == 0) return {};
  Poly r = a;
  for (auto& x : r.c) x = F.mul(x, s);
  poly_trim(r);
  return r;
}

inline Poly poly_mul(const Fq& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Poly r;
  r.c.assign(a.c.size() + b.c.size() - 1, F.zero());
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].code == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
  }
  poly_trim(r);
  return r;
}

struct PolyDivMod {
  Poly quot, rem;
};

inline PolyDivMod poly_divmod(const Fq& F, const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(errc::division_by_zero, "polynomial division by zero");
  if (a.deg() < b.deg()) return {poly_zero(), a};
  Poly rem = a;
  Poly quot;
  quot.c.assign(a.deg() - b.deg() + 1, F.zero());
  FqElem leadInv = F.inv(b.c.back());
  for (int i = a.deg(); i >= b.deg(); --i) {
    FqElem cur = rem.coeff(i);
    if (cur.code == 0) continue;
    FqElem f = F.mul(cur, leadInv);
    int shift = i - b.deg();
    quot.c[shift] = f;
    for (int j = 0; j <= b.deg(); ++j)
      rem.c[shift + j] = F.sub(rem.c[shift + j], F.mul(f, b.c[j]));
  }
  poly_trim(quot);
  poly_trim(rem);
  return {quot, rem};
}

inline Poly poly_mod(const Fq& F, const Poly& a, const Poly& b) {
  return poly_divmod(F, a, b).rem;
}

inline Poly poly_monicize(const Fq& F, const Poly& a) {
  if (a.is_zero() || a.c.back().code == 1) return a;
  return poly_scale(F, a, F.inv(a.c.back()));
}

/// Monic gcd; gcd(a, 0) = monic(a), gcd(0, 0) = 0.
inline Poly poly_gcd(const Fq& F, Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = poly_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monicize(F, a);
}

inline Poly poly_powmod(const Fq& F, Poly base, Int e, const Poly& mod) {
  if (e < 0) fail(errc::invalid_range, "negative exponent in powmod");
  base = poly_mod(F, base, mod);
  Poly acc = poly_mod(F, poly_one(F), mod);
  while (e != 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = poly_mod(F, poly_mul(F, acc, base), mod);
    e >>= 1;
    if (e != 0) base = poly_mod(F, poly_mul(F, base, base), mod);
  }
  return acc;
}

inline Poly poly_derivative(const Fq& F, const Poly& a) {
  Poly r;
  if (a.c.size() <= 1) return r;
  r.c.resize(a.c.size() - 1, F.zero());
  for (std::size_t i = 1; i < a.c.size(); ++i) {
    // i * a_i with i reduced into F_p and embedded as a scalar
    FqElem s = F.scalar(i % F.p());
    r.c[i - 1] = F.mul(a.c[i], s);
  }
  poly_trim(r);
  return r;
}

inline FqElem poly_eval(const Fq& F, const Poly& a, FqElem x) {
  FqElem acc = F.zero();
  for (std::size_t i = a.c.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a.c[i]);
  return acc;
}

/// Integer code of a polynomial: sum code(c_i) * q^i. Monic polynomials of
/// the same degree sort by code exactly in enumeration order.
inline Int poly_code(const Fq& F, const Poly& a) {
  Int code = 0;
  for (std::size_t i = a.c.size(); i-- > 0;) code = code * F.q() + a.c[i].code;
  return code;
}

inline Poly poly_from_code(const Fq& F, Int code) {
  Poly a;
  while (code != 0) {
    Int digit = code % F.q();
    a.c.push_back(F.from_code(digit.get_ui()));
    code /= F.q();
  }
  return a;
}

/// "1,1,0,1" = 1 + T + T^3 (comma-separated coefficient codes, little-endian).
inline Poly parse_poly(const Fq& F, const std::string& text) {
  Poly a;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      a.c.push_back(F.from_code(std::stoull(tok)));
    } catch (const std::invalid_argument&) {
      fail(errc::bad_input, "bad polynomial coefficient '" + tok + "'");
    } catch (const std::out_of_range&) {
      fail(errc::bad_input, "polynomial coefficient out of range '" + tok + "'");
    }
  }
  poly_trim(a);
  return a;
}

inline std::string format_poly(const Poly& a) {
  if (a.is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a.c[i].code);
  }
  return s;
}

/// Pretty form like "T^3+T+1" for human-facing output.
inline std::string pretty_poly(const Poly& a) {
  if (a.is_zero()) return "0";
  std::string s;
  for (std::size_t i = a.c.size(); i-- > 0;) {
    if (a.c[i].code == 0) continue;
    if (!s.empty()) s += "+";
    std::string coef = std::to_string(a.c[i].code);
    if (i == 0) {
      s += coef;
    } else {
      if (a.c[i].code != 1) s += coef + "*";
      s += (i == 1) ? "T" : "T^" + std::to_string(i);
    }
  }
  return s;
}

/// Calls fn(poly) for every monic polynomial of the given degree, in code
/// order. The callback gets a reference valid only during the call.
template <class Fn>
inline void for_each_monic(const Fq& F, unsigned deg, Fn&& fn) {
  Poly m;
  m.c.assign(deg + 1, F.zero());
  m.c[deg] = F.one();
  while (true) {
    fn(static_cast<const Poly&>(m));
    std::size_t k = 0;
    while (k < deg && (m.c[k] = F.from_code((m.c[k].code + 1) % F.q())).code == 0) ++k;
    if (k == deg) break;
  }
}

namespace detail {

inline std::vector<unsigned> prime_divisors(unsigned n) {
  std::vector<unsigned> ps;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

}  // namespace detail

/// Frobenius-based irreducibility criterion: f of degree n is irreducible
/// iff T^{q^n} = T (mod f) and gcd(T^{q^{n/l}} - T, f) = 1 for every prime
/// l | n. Deterministic and stateless; the sieve in IrredTable is the
/// independent second route.
inline bool is_irreducible(const Fq& F, const Poly& f0) {
  if (f0.deg() < 1) fail(errc::zero_or_constant_input, "irreducibility needs degree >= 1");
  Poly f = poly_monicize(F, f0);
  unsigned n = static_cast<unsigned>(f.deg());
  if (n == 1) return true;
  Poly T = poly_T(F);
  for (unsigned l : detail::prime_divisors(n)) {
    Poly h = poly_powmod(F, T, int_pow(F.q(), n / l), f);
    if (poly_gcd(F, poly_sub(F, h, T), f).deg() != 0) return false;
  }
  return poly_powmod(F, T, int_pow(F.q(), n), f) == poly_mod(F, T, f);
}

/// Sieve of monic irreducibles by degree: degree k is filled by enumerating
/// all monic degree-k polynomials and trial-dividing by the already-known
/// irreducibles of degree <= k/2. Levels are stored in code order.
class IrredTable {
 public:
  explicit IrredTable(Fq F, Int budget = kDefaultBudget)
      : F_(std::move(F)), budget_(std::move(budget)) {
    levels_.emplace_back();  // degree 0 slot, unused
  }

  const Fq& field() const { return F_; }

  const std::vector<Poly>& of_degree(unsigned k) {
    ensure(k);
    return levels_[k].polys;
  }

  Int count(unsigned k) {
    ensure(k);
    return Int(levels_[k].polys.size());
  }

  bool contains(const Poly& f) {
    if (f.deg() < 1 || !poly_is_monic(f)) return false;
    unsigned k = static_cast<unsigned>(f.deg());
    ensure(k);
    const auto& codes = levels_[k].codes;
    Int c = poly_code(F_, f);
    return std::binary_search(codes.begin(), codes.end(), c);
  }

 private:
  struct Level {
    std::vector<Poly> polys;
    std::vector<Int> codes;
  };

  Fq F_;
  Int budget_;
  std::deque<Level> levels_;

  void ensure(unsigned k) {
    while (levels_.size() <= k) {
      unsigned deg = static_cast<unsigned>(levels_.size());
      charge_budget(int_pow(F_.q(), deg), budget_, "irreducible sieve");
      Level lvl;
      for_each_monic(F_, deg, [&](const Poly& m) {
        for (unsigned dd = 1; 2 * dd <= deg; ++dd) {
          for (const Poly& w : levels_[dd].polys) {
            if (poly_mod(F_, m, w).is_zero()) return;
          }
        }
        lvl.polys.push_back(m);
        lvl.codes.push_back(poly_code(F_, m));
      });
      levels_.push_back(std::move(lvl));
    }
  }
};

/// Complete factorization: unit times monic irreducibles with multiplicity,
/// sorted by (degree, code).
struct Factorization {
  FqElem unit;
  std::vector<std::pair<Poly, unsigned>> parts;
};

namespace detail {

// Coefficient-wise p-th root of f(T) = g(T^p); valid when f' = 0.
inline Poly poly_pth_root(const Fq& F, const Poly& f) {
  Poly g;
  unsigned long p = static_cast<unsigned long>(F.p());
  g.c.resize(f.c.size() / p + 1, F.zero());
  Int e = int_pow(F.p(), F.d() - 1);  // x -> x^{p^{d-1}} inverts Frobenius
  for (std::size_t i = 0; i * p < f.c.size(); ++i) g.c[i] = F.pow(f.c[i * p], e);
  poly_trim(g);
  return g;
}

// Squarefree decomposition in characteristic p (Yun's algorithm adapted:
// the gcd chain peels multiplicities not divisible by p, the leftover is a
// p-th power handled by recursion on its p-th root).
inline void squarefree_decompose(const Fq& F, const Poly& fin, unsigned multScale,
                                 std::vector<std::pair<Poly, unsigned>>& out) {
  Poly f = fin;
  if (f.deg() < 1) return;
  Poly fp = poly_derivative(F, f);
  Poly c = poly_gcd(F, f, fp);
  if (c.deg() == 0) {
    out.emplace_back(f, multScale);
    return;
  }
  Poly w = poly_divmod(F, f, c).quot;
  unsigned i = 1;
  while (w.deg() > 0) {
    Poly y = poly_gcd(F, w, c);
    Poly z = poly_divmod(F, w, y).quot;
    if (z.deg() > 0) out.emplace_back(z, i * multScale);
    ++i;
    w = std::move(y);
    c = poly_divmod(F, c, w).quot;
  }
  if (c.deg() > 0) squarefree_decompose(F, poly_pth_root(F, c), multScale * F.p(), out);
}

}  // namespace detail

inline Factorization factor(const Fq& F, const Poly& m, Int budget = kDefaultBudget) {
  if (m.is_zero()) fail(errc::zero_input, "cannot factor the zero polynomial");
  Factorization out;
  out.unit = m.c.back();
  Poly f = poly_monicize(F, m);
  if (f.deg() == 0) return out;

  std::vector<std::pair<Poly, unsigned>> sqfree;
  detail::squarefree_decompose(F, f, 1, sqfree);

  std::map<std::pair<int, Int>, std::pair<Poly, unsigned>> acc;
  for (auto& [part, mult] : sqfree) {
    // distinct-degree split
    Poly fstar = part;
    Poly T = poly_T(F);
    Poly h = poly_mod(F, T, fstar);
    unsigned k = 0;
    std::vector<std::pair<Poly, unsigned>> byDeg;  // (product, factor degree)
    while (fstar.deg() >= 2 * static_cast<int>(k + 1)) {
      ++k;
      h = poly_powmod(F, h, Int(F.q()), fstar);
      Poly g = poly_gcd(F, poly_sub(F, h, T), fstar);
      if (g.deg() > 0) {
        byDeg.emplace_back(g, k);
        fstar = poly_divmod(F, fstar, g).quot;
        h = poly_mod(F, h, fstar);
      }
    }
    if (fstar.deg() > 0) byDeg.emplace_back(fstar, static_cast<unsigned>(fstar.deg()));

    // equal-degree split by deterministic exhaustive trial in code order
    for (auto& [prod, fdeg] : byDeg) {
      Poly rest = prod;
      if (rest.deg() > static_cast<int>(fdeg)) {
        charge_budget(int_pow(F.q(), fdeg), budget, "equal-degree factor split");
        Poly w;
        w.c.assign(fdeg + 1, F.zero());
        w.c[fdeg] = F.one();
        while (rest.deg() > static_cast<int>(fdeg)) {
          auto dm = poly_divmod(F, rest, w);
          if (dm.rem.is_zero()) {
            auto key = std::make_pair(w.deg(), poly_code(F, w));
            auto it = acc.find(key);
            if (it == acc.end())
              acc.emplace(key, std::make_pair(w, mult));
            else
              it->second.second += mult;
            rest = dm.quot;
            continue;  // the same irreducible cannot divide a squarefree part twice
          }
          std::size_t kk = 0;
          while (kk < fdeg && (w.c[kk] = F.from_code((w.c[kk].code + 1) % F.q())).code == 0) ++kk;
        }
      }
      if (rest.deg() > 0) {
        auto key = std::make_pair(rest.deg(), poly_code(F, rest));
        auto it = acc.find(key);
        if (it == acc.end())
          acc.emplace(key, std::make_pair(rest, mult));
        else
          it->second.second += mult;
      }
    }
  }
  for (auto& [key, pm] : acc) out.parts.push_back(pm);
  return out;
}

/// Moebius function on monic polynomials.
inline int mobius(const Fq& F, const Poly& g, Int budget = kDefaultBudget) {
  if (g.is_zero()) fail(errc::zero_input, "mobius of zero");
  if (!poly_is_monic(g)) fail(errc::non_monic_input, "mobius needs a monic input");
  auto fac = factor(F, g, budget);
  for (auto& [w, mult] : fac.parts)
    if (mult > 1) return 0;
  return fac.parts.size() % 2 == 0 ? 1 : -1;
}

/// Euler totient: number of residues mod g coprime to g,
/// phi(g) = |g| * prod_{w | g} (1 - 1/|w|).
inline Int euler_phi(const Fq& F, const Poly& g, Int budget = kDefaultBudget) {
  if (g.is_zero()) fail(errc::zero_input, "phi of zero");
  if (!poly_is_monic(g)) fail(errc::non_monic_input, "phi needs a monic input");
  Int phi = 1;
  for (auto& [w, mult] : factor(F, g, budget).parts) {
    unsigned k = static_cast<unsigned>(w.deg());
    phi *= int_pow(F.q(), k * mult) - int_pow(F.q(), k * (mult - 1));
  }
  return phi;
}

inline int int_mobius(unsigned n) {
  int mu = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

/// Number of monic irreducibles of degree X over F_q, by Moebius inversion:
/// pi_q(X) = (1/X) sum_{d | X} mu(d) q^{X/d}. Exact in Int.
inline Int pi_q(std::uint64_t q, unsigned X) {
  if (X < 1) fail(errc::invalid_degree, "pi_q needs X >= 1");
  Int s = 0;
  for (unsigned d = 1; d <= X; ++d) {
    if (X % d != 0) continue;
    s += Int(int_mobius(d)) * int_pow(q, X / d);
  }
  Int count, rem;
  mpz_fdiv_qr_ui(count.get_mpz_t(), rem.get_mpz_t(), s.get_mpz_t(), X);
  if (rem != 0) fail(errc::non_integer_result, "pi_q inversion did not divide (internal bug)");
  return count;
}

/// Degree X plus a partial assignment of coefficients: index set I inside
/// {0..X-1} with a value for each index. Defines the set of monic degree-X
/// polynomials whose T^i coefficient is fixed for i in I.
struct Prescription {
  unsigned X = 1;
  std::map<unsigned, FqElem> fixed;

  unsigned prescribed() const { return static_cast<unsigned>(fixed.size()); }
  unsigned freeCount() const { return X - prescribed(); }
  bool constantFixedToZero() const {
    auto it = fixed.find(0);
    return it != fixed.end() && it->second.code == 0;
  }

  void validate(const Fq& F) const {
    if (X < 1) fail(errc::invalid_range, "prescription degree must be >= 1");
    for (auto& [i, v] : fixed) {
      if (i >= X) fail(errc::invalid_range, "prescribed index out of range");
      if (v.code >= F.q()) fail(errc::field_mismatch, "prescribed value not in F_q");
    }
  }
};

/// Parses "X; i=code, i=code, ..." ("X;" or just "X" for an empty index set).
inline Prescription parse_prescription(const Fq& F, const std::string& text) {
  Prescription P;
  auto semi = text.find(';');
  std::string head = text.substr(0, semi);
  try {
    P.X = static_cast<unsigned>(std::stoul(head));
  } catch (...) {
    fail(errc::bad_input, "bad prescription degree '" + head + "'");
  }
  if (semi != std::string::npos) {
    std::stringstream ss(text.substr(semi + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      auto eq = tok.find('=');
      std::size_t beg = tok.find_first_not_of(" \t");
      if (beg == std::string::npos) continue;  // allow trailing commas/blank
      if (eq == std::string::npos) fail(errc::bad_input, "expected i=code in '" + tok + "'");
      try {
        unsigned idx = static_cast<unsigned>(std::stoul(tok.substr(beg, eq - beg)));
        std::uint64_t code = std::stoull(tok.substr(eq + 1));
        if (P.fixed.count(idx)) fail(errc::bad_input, "duplicate prescribed index");
        P.fixed[idx] = F.from_code(code);
      } catch (const error&) {
        throw;
      } catch (...) {
        fail(errc::bad_input, "bad prescription entry '" + tok + "'");
      }
    }
  }
  P.validate(F);
  return P;
}

inline std::string format_prescription(const Prescription& P) {
  std::string s = std::to_string(P.X) + ";";
  bool first = true;
  for (auto& [i, v] : P.fixed) {
    s += first ? " " : ", ";
    s += std::to_string(i) + "=" + std::to_string(v.code);
    first = false;
  }
  return s;
}

/// Deterministic enumeration of the prescribed set: the free positions form
/// a little-endian odometer in element-code order (lowest free index varies
/// fastest), so enumeration order and range partitioning are reproducible.
class PrescribedSet {
 public:
  PrescribedSet(const Fq& F, Prescription P) : F_(&F), P_(std::move(P)) {
    P_.validate(F);
    for (unsigned i = 0; i < P_.X; ++i)
      if (!P_.fixed.count(i)) free_.push_back(i);
    size_ = int_pow(F.q(), free_.size());
  }

  const Prescription& prescription() const { return P_; }
  const Int& size() const { return size_; }

  /// Member #idx in enumeration order.
  Poly at(Int idx) const {
    if (idx < 0 || idx >= size_) fail(errc::invalid_range, "prescribed-set index out of range");
    Poly m = base();
    for (unsigned pos : free_) {
      Int digit = idx % F_->q();
      m.c[pos] = F_->from_code(digit.get_ui());
      idx /= F_->q();
    }
    return m;
  }

  template <class Fn>
  void for_each(const Int& budget, Fn&& fn) const {
    charge_budget(size_, budget, "prescribed-set enumeration");
    Poly m = base();
    while (true) {
      if (!visit(fn, m)) return;
      std::size_t k = 0;
      while (k < free_.size() &&
             (m.c[free_[k]] = F_->from_code((m.c[free_[k]].code + 1) % F_->q())).code == 0)
        ++k;
      if (k == free_.size()) break;
    }
  }

 private:
  const Fq* F_;
  Prescription P_;
  std::vector<unsigned> free_;
  Int size_;

  Poly base() const {
    Poly m;
    m.c.assign(P_.X + 1, F_->zero());
    m.c[P_.X] = F_->one();
    for (auto& [i, v] : P_.fixed) m.c[i] = v;
    return m;
  }

  // supports both void and bool (early-stop) callbacks
  template <class Fn>
  static bool visit(Fn&& fn, const Poly& m) {
    if constexpr (std::is_same_v<std::invoke_result_t<Fn&, const Poly&>, bool>) {
      return fn(m);
    } else {
      fn(m);
      return true;
    }
  }
};

}  // namespace fqcircle

#endif  // FQCIRCLE_POLY_HPP
