#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>

#include "picubed/error.hpp"

namespace picubed {

/// Binary floating-point number with an arbitrary mantissa, backed by MPFR.
///
/// Every value carries its own precision. Binary operations produce a result
/// at the larger of the two operand precisions, rounded to nearest.
class Real {
 public:
  explicit Real(mpfr_prec_t bits = 64) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  Real(long value, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, value, MPFR_RNDN);
  }
  Real(const mpz_class& value, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
  }
  Real(const mpq_class& value, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
  }
  Real(const Real& other, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }

  /// Parses a decimal literal such as "3.14159" or "-1e-20".
  static Real parse(const std::string& text, mpfr_prec_t bits) {
    Real r(bits);
    if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0 &&
        !mpfr_number_p(r.v_)) {
      throw InvalidArgument("not a decimal number: " + text);
    }
    return r;
  }

  /// Exact conversion of a 128-bit unsigned integer (rounded only if
  /// `bits` < 128).
  static Real from_u128(unsigned __int128 value, mpfr_prec_t bits) {
    Real r(bits);
    auto hi = static_cast<unsigned long>(value >> 64);
    auto lo = static_cast<unsigned long>(value & ~0UL);
    Real tmp(std::max<mpfr_prec_t>(bits, 128));
    mpfr_set_ui(tmp.v_, hi, MPFR_RNDN);
    mpfr_mul_2ui(tmp.v_, tmp.v_, 64, MPFR_RNDN);
    mpfr_add_ui(tmp.v_, tmp.v_, lo, MPFR_RNDN);
    mpfr_set(r.v_, tmp.v_, MPFR_RNDN);
    return r;
  }

  Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  [[nodiscard]] mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  [[nodiscard]] mpfr_srcptr get() const { return v_; }
  mpfr_ptr get_mutable() { return v_; }

  [[nodiscard]] bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  [[nodiscard]] bool is_finite() const { return mpfr_number_p(v_) != 0; }
  [[nodiscard]] int sign() const { return mpfr_sgn(v_); }
  /// Binary exponent e with 0.5 <= |x| / 2^e < 1; meaningless for zero.
  [[nodiscard]] long exponent() const { return mpfr_get_exp(v_); }
  [[nodiscard]] double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Unit in the last place of this value at its own precision.
  [[nodiscard]] Real ulp() const {
    Real r(64);
    if (is_zero()) {
      mpfr_set_ui_2exp(r.v_, 1, mpfr_get_emin(), MPFR_RNDN);
    } else {
      mpfr_set_ui_2exp(r.v_, 1, exponent() - precision(), MPFR_RNDN);
    }
    return r;
  }

  /// Decimal string with `sig` significant digits, fixed notation,
  /// round-to-nearest.
  [[nodiscard]] std::string to_fixed(int sig) const;
  /// Scientific notation with `sig` significant digits, e.g. "3.91e-12".
  [[nodiscard]] std::string to_sci(int sig) const;

  Real& operator+=(const Real& o) { return apply(mpfr_add, o); }
  Real& operator-=(const Real& o) { return apply(mpfr_sub, o); }
  Real& operator*=(const Real& o) { return apply(mpfr_mul, o); }
  Real& operator/=(const Real& o) { return apply(mpfr_div, o); }
  Real& operator+=(long o) { return apply_si(mpfr_add_si, o); }
  Real& operator-=(long o) { return apply_si(mpfr_sub_si, o); }
  Real& operator*=(long o) { return apply_si(mpfr_mul_si, o); }
  Real& operator/=(long o) { return apply_si(mpfr_div_si, o); }

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  friend Real operator+(Real a, long b) { return a += b; }
  friend Real operator-(Real a, long b) { return a -= b; }
  friend Real operator*(Real a, long b) { return a *= b; }
  friend Real operator/(Real a, long b) { return a /= b; }
  friend Real operator*(long a, Real b) { return b *= a; }
  friend Real operator+(long a, Real b) { return b += a; }
  friend Real operator-(long a, const Real& b) {
    Real r(b.precision());
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(long a, const Real& b) {
    Real r(b.precision());
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(Real a) {
    mpfr_neg(a.v_, a.v_, MPFR_RNDN);
    return a;
  }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b) {
    int c = mpfr_cmp_si(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

 private:
  template <class Op>
  Real& apply(Op op, const Real& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    op(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  template <class Op>
  Real& apply_si(Op op, long o) {
    op(v_, v_, o, MPFR_RNDN);
    return *this;
  }

  mpfr_t v_;
};

namespace detail {

template <class Fn>
Real unary(const Real& x, Fn fn) {
  Real r(x.precision());
  fn(r.get_mutable(), x.get(), MPFR_RNDN);
  return r;
}

}  // namespace detail

inline Real abs(const Real& x) { return detail::unary(x, mpfr_abs); }
inline Real cube(const Real& x) { return x * x * x; }
inline Real log10(const Real& x) { return detail::unary(x, mpfr_log10); }
inline Real floor(const Real& x) { return detail::unary(x, mpfr_rint_floor); }
inline Real round_nearest(const Real& x) { return detail::unary(x, mpfr_rint_round); }

/// x * 2^e, exact.
inline Real ldexp(Real x, long e) {
  mpfr_mul_2si(x.get_mutable(), x.get(), e, MPFR_RNDN);
  return x;
}

inline Real pow(const Real& x, unsigned long n) {
  Real r(x.precision());
  mpfr_pow_ui(r.get_mutable(), x.get(), n, MPFR_RNDN);
  return r;
}

inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }

/// 2^e at the given precision (exact).
inline Real pow2(long e, mpfr_prec_t bits) { return ldexp(Real(1, bits), e); }

inline std::string Real::to_fixed(int sig) const {
  if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() < 0 ? "-inf" : "inf");
  if (is_zero()) return "0";
  mpfr_exp_t e10 = 0;
  char* raw = mpfr_get_str(nullptr, &e10, 10, static_cast<size_t>(sig), v_, MPFR_RNDN);
  std::string digits(raw);
  mpfr_free_str(raw);
  std::string sign_str;
  if (!digits.empty() && digits.front() == '-') {
    sign_str = "-";
    digits.erase(0, 1);
  }
  // value = 0.DIGITS * 10^e10
  std::string out;
  if (e10 <= 0) {
    out = "0." + std::string(static_cast<size_t>(-e10), '0') + digits;
  } else if (static_cast<size_t>(e10) >= digits.size()) {
    out = digits + std::string(static_cast<size_t>(e10) - digits.size(), '0');
  } else {
    out = digits.substr(0, static_cast<size_t>(e10)) + "." + digits.substr(static_cast<size_t>(e10));
  }
  return sign_str + out;
}

inline std::string Real::to_sci(int sig) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", sig - 1, v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

}  // namespace picubed
