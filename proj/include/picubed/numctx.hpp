#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>

#include "picubed/error.hpp"
#include "picubed/real.hpp"

namespace picubed {

inline constexpr std::uint32_t kDefaultDigitCap = 100000;
inline constexpr std::uint32_t kMinGuardBits = 32;

/// Working-precision context. Immutable once built.
struct PrecCtx {
  std::uint32_t decimal_digits = 0;
  std::uint32_t bits = 0;
  std::uint32_t guard_bits = 0;

  /// Same digit target with `extra` more guard bits.
  [[nodiscard]] PrecCtx widened(std::uint32_t extra) const {
    return PrecCtx{decimal_digits, bits + extra, guard_bits + extra};
  }

  [[nodiscard]] mpfr_prec_t prec() const { return static_cast<mpfr_prec_t>(bits); }

  friend bool operator==(const PrecCtx&, const PrecCtx&) = default;
};

/// Smallest b with 2^b >= 10^digits, i.e. ceil(digits * log2 10).
inline std::uint32_t bits_for_digits(std::uint32_t digits) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, digits);
  // 10^d is never a power of two for d >= 1, so its bit length is the ceiling.
  return static_cast<std::uint32_t>(mpz_sizeinbase(p.get_mpz_t(), 2));
}

inline PrecCtx mk_context(std::uint32_t decimal_digits, std::uint32_t cap = kDefaultDigitCap) {
  if (decimal_digits == 0 || decimal_digits > cap) {
    throw PrecisionOutOfRange("decimal digits must be in [1, " + std::to_string(cap) +
                              "], got " + std::to_string(decimal_digits));
  }
  return PrecCtx{decimal_digits, bits_for_digits(decimal_digits) + kMinGuardBits, kMinGuardBits};
}

namespace detail {

/// arctan(1/m) by its Taylor series, accurate to about 2^-bits.
inline Real arctan_inverse(unsigned long m, mpfr_prec_t bits) {
  Real power = Real(1, bits) / static_cast<long>(m);
  Real sum = power;
  const auto m2 = static_cast<long>(m * m);
  const Real eps = pow2(-bits - 8, 64);
  for (long j = 1;; ++j) {
    power /= m2;
    if (power < eps) break;
    Real term = power / (2 * j + 1);
    if (j % 2 == 1) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return sum;
}

/// pi = 16 arctan(1/5) - 4 arctan(1/239).
inline Real pi_machin(mpfr_prec_t bits) {
  return 16 * arctan_inverse(5, bits) - 4 * arctan_inverse(239, bits);
}

inline Real sqrt_raw(const Real& x) { return unary(x, mpfr_sqrt); }

/// Gauss-Legendre arithmetic-geometric mean iteration.
inline Real pi_agm(mpfr_prec_t bits) {
  Real a(1, bits);
  Real b = sqrt_raw(Real(1, bits) / 2);
  Real t = Real(1, bits) / 4;
  long p = 1;
  const Real eps = pow2(-bits, 64);
  while (abs(a - b) > eps) {
    Real next_a = ldexp(a + b, -1);
    b = sqrt_raw(a * b);
    Real d = a - next_a;
    t -= p * (d * d);
    p *= 2;
    a = std::move(next_a);
  }
  Real s = a + b;
  return (s * s) / ldexp(t, 2);
}

class PiCache {
 public:
  static PiCache& instance() {
    static PiCache cache;
    return cache;
  }

  Real get(mpfr_prec_t bits) {
    std::lock_guard lock(mu_);
    auto it = values_.find(bits);
    if (it != values_.end()) return it->second;
    Real value = compute(bits);
    values_.emplace(bits, value);
    return value;
  }

 private:
  static Real compute(mpfr_prec_t bits) {
    const mpfr_prec_t work = bits + 16;
    Real machin = pi_machin(work);
    Real agm = pi_agm(work);
    // Both routes must agree to the full requested precision.
    if (abs(machin - agm) > pow2(2 - bits, 64)) {
      throw Error("reference pi: Machin and AGM disagree at " + std::to_string(bits) + " bits");
    }
    return Real(machin, bits);
  }

  std::mutex mu_;
  std::map<mpfr_prec_t, Real> values_;
};

}  // namespace detail

/// Reference pi at the context's working precision, validated by agreement
/// of a Machin arctangent evaluation and an AGM iteration.
inline Real ref_pi(const PrecCtx& ctx) { return detail::PiCache::instance().get(ctx.prec()); }

enum class ElemFn { sqrt, exp, sin, cos };

inline std::string to_string(ElemFn fn) {
  switch (fn) {
    case ElemFn::sqrt: return "sqrt";
    case ElemFn::exp: return "exp";
    case ElemFn::sin: return "sin";
    case ElemFn::cos: return "cos";
  }
  return "?";
}

namespace detail {

/// t - 2*pi*round(t / (2*pi)), with pi carried at enough extra bits to cover
/// the integer part of the quotient.
inline Real reduce_two_pi(const Real& t, const PrecCtx& ctx) {
  if (t.is_zero()) return t;
  const long magnitude = std::max(0L, t.exponent());
  PrecCtx wide = ctx.widened(static_cast<std::uint32_t>(magnitude + 16));
  Real two_pi = ldexp(ref_pi(wide), 1);
  Real x(t, wide.prec());
  Real k = round_nearest(x / two_pi);
  return x - k * two_pi;
}

}  // namespace detail

inline Real elem(ElemFn fn, const Real& x, const PrecCtx& ctx) {
  Real r(ctx.prec());
  switch (fn) {
    case ElemFn::sqrt:
      if (x.sign() < 0) throw DomainError("sqrt of negative value " + x.to_sci(6));
      mpfr_sqrt(r.get_mutable(), x.get(), MPFR_RNDN);
      break;
    case ElemFn::exp:
      mpfr_exp(r.get_mutable(), x.get(), MPFR_RNDN);
      break;
    case ElemFn::sin: {
      Real y = detail::reduce_two_pi(x, ctx);
      mpfr_sin(r.get_mutable(), y.get(), MPFR_RNDN);
      break;
    }
    case ElemFn::cos: {
      Real y = detail::reduce_two_pi(x, ctx);
      mpfr_cos(r.get_mutable(), y.get(), MPFR_RNDN);
      break;
    }
  }
  return r;
}

inline Real sqrt(const Real& x, const PrecCtx& ctx) { return elem(ElemFn::sqrt, x, ctx); }
inline Real exp(const Real& x, const PrecCtx& ctx) { return elem(ElemFn::exp, x, ctx); }
inline Real sin(const Real& x, const PrecCtx& ctx) { return elem(ElemFn::sin, x, ctx); }
inline Real cos(const Real& x, const PrecCtx& ctx) { return elem(ElemFn::cos, x, ctx); }

/// One unit in the last place of the context's precision, relative to |x|.
inline Real ulp_at(const Real& x, const PrecCtx& ctx) { return Real(x, ctx.prec()).ulp(); }

}  // namespace picubed
