#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>

#include "picubed/error.hpp"
#include "picubed/numctx.hpp"

namespace picubed {

/// Exact rational in canonical form: gcd(|num|, den) = 1 and den >= 1.
class Rat {
 public:
  Rat() = default;
  Rat(long num) : q_(num) {}  // NOLINT: implicit integer embedding
  Rat(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw InvalidArgument("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "p/q" or "p".
  static Rat parse(const std::string& text) {
    mpq_class q;
    if (text.empty() || q.set_str(text, 10) != 0) {
      throw InvalidArgument("not a rational number: '" + text + "'");
    }
    if (q.get_den() == 0) throw InvalidArgument("rational with zero denominator: " + text);
    return Rat(q);
  }

  [[nodiscard]] mpz_class num() const { return q_.get_num(); }
  [[nodiscard]] mpz_class den() const { return q_.get_den(); }
  [[nodiscard]] const mpq_class& value() const { return q_; }
  [[nodiscard]] bool is_zero() const { return q_ == 0; }
  [[nodiscard]] std::string str() const { return q_.get_str(); }
  [[nodiscard]] Real to_real(mpfr_prec_t bits) const { return Real(q_, bits); }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ + b.q_)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ - b.q_)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ * b.q_)); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw InvalidArgument("rational division by zero");
    return Rat(mpq_class(a.q_ / b.q_));
  }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }
  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }
  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  mpq_class q_{0};
};

/// Exact element a + b*sqrt(5) of Q(sqrt 5). The representation is unique,
/// so equality is component-wise.
class GoldNum {
 public:
  GoldNum() = default;
  GoldNum(Rat a, Rat b) : a_(std::move(a)), b_(std::move(b)) {}
  GoldNum(long a) : a_(a) {}  // NOLINT: implicit integer embedding

  /// The golden ratio (1 + sqrt 5) / 2.
  static GoldNum phi() { return GoldNum(Rat(1, 2), Rat(1, 2)); }
  static GoldNum sqrt5() { return GoldNum(0, 1); }

  [[nodiscard]] const Rat& a() const { return a_; }
  [[nodiscard]] const Rat& b() const { return b_; }
  [[nodiscard]] bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  [[nodiscard]] GoldNum conjugate() const { return GoldNum(a_, -b_); }
  /// Field norm a^2 - 5 b^2 = x * conjugate(x).
  [[nodiscard]] Rat norm() const { return a_ * a_ - Rat(5) * b_ * b_; }

  friend GoldNum operator+(const GoldNum& u, const GoldNum& v) { return {u.a_ + v.a_, u.b_ + v.b_}; }
  friend GoldNum operator-(const GoldNum& u, const GoldNum& v) { return {u.a_ - v.a_, u.b_ - v.b_}; }
  friend GoldNum operator-(const GoldNum& u) { return {-u.a_, -u.b_}; }
  friend GoldNum operator*(const GoldNum& u, const GoldNum& v) {
    return {u.a_ * v.a_ + Rat(5) * u.b_ * v.b_, u.a_ * v.b_ + u.b_ * v.a_};
  }
  friend GoldNum operator/(const GoldNum& u, const GoldNum& v) {
    if (v.is_zero()) throw DivisionByZeroField("division by zero in Q(sqrt 5)");
    const Rat n = v.norm();
    const GoldNum w = u * v.conjugate();
    return {w.a_ / n, w.b_ / n};
  }
  friend bool operator==(const GoldNum& u, const GoldNum& v) { return u.a_ == v.a_ && u.b_ == v.b_; }

  friend std::ostream& operator<<(std::ostream& os, const GoldNum& g) {
    return os << '(' << g.a_ << ", " << g.b_ << ')';
  }

 private:
  Rat a_;
  Rat b_;
};

enum class GoldOp { add, sub, mul, div };

inline GoldNum gold_arith(GoldOp op, const GoldNum& u, const GoldNum& v) {
  switch (op) {
    case GoldOp::add: return u + v;
    case GoldOp::sub: return u - v;
    case GoldOp::mul: return u * v;
    case GoldOp::div: return u / v;
  }
  return {};
}

/// u^n by repeated squaring, n >= 0.
inline GoldNum pow(GoldNum u, unsigned n) {
  GoldNum r(1);
  while (n != 0) {
    if (n & 1U) r = r * u;
    u = u * u;
    n >>= 1U;
  }
  return r;
}

inline Real gold_to_real(const GoldNum& g, const PrecCtx& ctx) {
  // Two guard words keep the result within a few ulp after the final rounding.
  const PrecCtx wide = ctx.widened(64);
  Real value = g.a().to_real(wide.prec());
  if (!g.b().is_zero()) value += g.b().to_real(wide.prec()) * sqrt(Real(5, wide.prec()), wide);
  return Real(value, ctx.prec());
}

namespace detail {

/// cos^2(pi x) as an element of Q(sqrt 5), for the abscissas with a
/// golden-ratio closed form.
inline GoldNum cos_squared(const Rat& x) {
  const GoldNum phi = GoldNum::phi();
  if (x == Rat(1, 5)) return (phi + 1) / 4;   // cos(pi/5) = phi/2
  if (x == Rat(1, 10)) return (phi + 2) / 4;  // cos(pi/10) = sqrt(2+phi)/2
  if (x == Rat(1, 4)) return GoldNum(Rat(1, 2), 0);
  throw UnsupportedAbscissa("no Q(sqrt 5) closed form for x = " + x.str());
}

}  // namespace detail

/// Exact [cot(pi x) cosec^2(pi x)]^2 = cos^2 / sin^6 for x in {1/5, 1/10, 1/4}.
///
/// The unsquared product needs a square root outside Q(sqrt 5); its square
/// stays in the field.
inline GoldNum cotcsc2_squared(const Rat& x) {
  const GoldNum c2 = detail::cos_squared(x);
  const GoldNum s2 = GoldNum(1) - c2;
  return c2 / (s2 * s2 * s2);
}

enum class GoldenCoeff { fifth, tenth, quarter };

/// Constant C with pi^3 = C * sum_n 1/(1 - m n)^3 for m = 5, 10, 4.
inline Real golden_coefficient(GoldenCoeff which, const PrecCtx& ctx) {
  const PrecCtx wide = ctx.widened(64);
  const mpfr_prec_t p = wide.prec();
  const GoldNum phi = GoldNum::phi();
  switch (which) {
    case GoldenCoeff::fifth: {
      // (125/4) (3 - phi)^{3/2} / phi
      Real t = gold_to_real(GoldNum(3) - phi, wide);
      Real value = Real(125, p) * t * sqrt(t, wide) / (4 * gold_to_real(phi, wide));
      return Real(value, ctx.prec());
    }
    case GoldenCoeff::tenth: {
      // 250 / (phi^3 sqrt(2 + phi)), phi^3 = 2 phi + 1 exactly
      Real phi3 = gold_to_real(pow(phi, 3), wide);
      Real value = Real(250, p) / (phi3 * sqrt(gold_to_real(phi + 2, wide), wide));
      return Real(value, ctx.prec());
    }
    case GoldenCoeff::quarter:
      return Real(32, ctx.prec());
  }
  return Real(ctx.prec());
}

}  // namespace picubed
