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

#ifndef FQCIRCLE_COMMON_HPP
#define FQCIRCLE_COMMON_HPP

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fqcircle {

/// Arbitrary-precision integer. Counts like q^X overflow fixed width almost
/// immediately, so every count in the library is an Int.
using Int = mpz_class;
/// Arbitrary-precision rational, always kept canonical by GMP.
using Rat = mpq_class;

enum class errc {
  non_prime_characteristic,
  reducible_modulus,
  degree_mismatch,
  division_by_zero,
  field_mismatch,
  zero_or_constant_input,
  zero_input,
  non_monic_input,
  invalid_degree,
  budget_exceeded,
  insufficient_precision,
  precondition_violated,
  non_integer_result,
  invalid_range,
  lemma_violation,
  not_found,
  bad_input,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::non_prime_characteristic: return "NonPrimeCharacteristic";
    case errc::reducible_modulus: return "ReducibleModulus";
    case errc::degree_mismatch: return "DegreeMismatch";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::field_mismatch: return "FieldMismatch";
    case errc::zero_or_constant_input: return "ZeroOrConstantInput";
    case errc::zero_input: return "ZeroInput";
    case errc::non_monic_input: return "NonMonicInput";
    case errc::invalid_degree: return "InvalidDegree";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::insufficient_precision: return "InsufficientPrecision";
    case errc::precondition_violated: return "PreconditionViolated";
    case errc::non_integer_result: return "NonIntegerResult";
    case errc::invalid_range: return "InvalidRange";
    case errc::lemma_violation: return "LemmaViolation";
    case errc::not_found: return "NotFound";
    case errc::bad_input: return "BadInput";
  }
  return "UnknownError";
}

/// Library-wide exception; the kind is an errc so callers (and the CLI exit
/// code mapping) can dispatch without string matching.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw error(c, msg); }

/// Default enumeration budget (counts polynomial-enumeration steps, not time).
inline const Int kDefaultBudget = Int(1) << 24;

inline void charge_budget(const Int& steps, const Int& limit, const char* what) {
  if (steps > limit) {
    fail(errc::budget_exceeded, std::string(what) + " needs " + steps.get_str() +
                                    " enumeration steps, budget is " + limit.get_str());
  }
}

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Int int_pow(std::uint64_t base, unsigned long e) { return int_pow(Int(base), e); }

/// Conversion to long double through a 53-bit mantissa plus exact exponent.
/// Good to ~2e-16 relative error, which every comparison here pads for.
inline long double to_ldouble(const Int& z) {
  signed long e = 0;
  double d = mpz_get_d_2exp(&e, z.get_mpz_t());
  return ldexpl(static_cast<long double>(d), static_cast<int>(e));
}

inline long double to_ldouble(const Rat& r) {
  return to_ldouble(Int(r.get_num())) / to_ldouble(Int(r.get_den()));
}

/// Slack added to embedding-based inequality checks so roundoff can not fake
/// a violation; the lemmas being checked have far more slack than this.
inline constexpr long double kEmbedPad = 1.0L / (1ULL << 40);

inline long double log_base(long double q, long double x) { return logl(x) / logl(q); }

}  // namespace fqcircle

#endif  // FQCIRCLE_COMMON_HPP
