#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "picubed/error.hpp"
#include "picubed/goldfield.hpp"
#include "picubed/numctx.hpp"
#include "picubed/reduce.hpp"

namespace picubed {

inline constexpr std::uint64_t kDefaultTermBudget = 10'000'000;

enum class SeriesKind {
  EulerBilateral,
  GoldenFifth,
  GoldenTenth,
  Quarter,
  AltOddCubesCorrected,
  AltOddCubesAsPrinted,
  CentralBinomial,
  PilehroodApery,
  SunHarmonic,
};

inline constexpr SeriesKind kAllSeriesKinds[] = {
    SeriesKind::EulerBilateral,       SeriesKind::GoldenFifth,     SeriesKind::GoldenTenth,
    SeriesKind::Quarter,              SeriesKind::AltOddCubesCorrected, SeriesKind::AltOddCubesAsPrinted,
    SeriesKind::CentralBinomial,      SeriesKind::PilehroodApery,  SeriesKind::SunHarmonic,
};

inline std::string kind_name(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::EulerBilateral: return "euler";
    case SeriesKind::GoldenFifth: return "golden-fifth";
    case SeriesKind::GoldenTenth: return "golden-tenth";
    case SeriesKind::Quarter: return "quarter";
    case SeriesKind::AltOddCubesCorrected: return "alt-odd-cubes";
    case SeriesKind::AltOddCubesAsPrinted: return "alt-odd-cubes-as-printed";
    case SeriesKind::CentralBinomial: return "central-binomial";
    case SeriesKind::PilehroodApery: return "pilehrood-apery";
    case SeriesKind::SunHarmonic: return "sun-harmonic";
  }
  return "?";
}

namespace detail {

inline void check_open_unit(const Rat& x) {
  if (x <= Rat(0) || x >= Rat(1)) {
    throw AbscissaOutOfRange("abscissa x=" + x.str() + " must lie in (0, 1)");
  }
}

}  // namespace detail

/// Catalog entry key. `x` is meaningful only for EulerBilateral.
struct SeriesId {
  SeriesKind kind = SeriesKind::GoldenFifth;
  Rat x;

  static SeriesId of(SeriesKind kind) {
    if (kind == SeriesKind::EulerBilateral) throw InvalidArgument("EulerBilateral needs an abscissa");
    return SeriesId{kind, Rat()};
  }

  /// Throws AbscissaOutOfRange outside (0, 1) and DegenerateAbscissa at 1/2.
  static SeriesId euler(const Rat& x) {
    detail::check_open_unit(x);
    if (x == Rat(1, 2)) throw DegenerateAbscissa("degenerate abscissa x=1/2");
    return SeriesId{SeriesKind::EulerBilateral, x};
  }

  /// "golden-fifth", ..., or "euler:p/q".
  static SeriesId parse(const std::string& name) {
    if (name.rfind("euler:", 0) == 0) return euler(Rat::parse(name.substr(6)));
    for (SeriesKind k : kAllSeriesKinds) {
      if (k != SeriesKind::EulerBilateral && kind_name(k) == name) return of(k);
    }
    throw InvalidArgument("unknown series '" + name + "'");
  }

  [[nodiscard]] std::string name() const {
    if (kind == SeriesKind::EulerBilateral) return "euler:" + x.str();
    return kind_name(kind);
  }

  [[nodiscard]] bool is_bilateral() const {
    return kind == SeriesKind::EulerBilateral || kind == SeriesKind::GoldenFifth ||
           kind == SeriesKind::GoldenTenth || kind == SeriesKind::Quarter;
  }

  friend bool operator==(const SeriesId& a, const SeriesId& b) { return a.kind == b.kind && a.x == b.x; }
};

enum class Target { pi3 };
enum class SummationOrder { ascending, bilateral_paired };
enum class TailKind { alternating_first_term, bilateral_cubic, ratio_geometric };

struct SeriesDef {
  SeriesId id;
  long start_index = 0;
  Target target = Target::pi3;
  SummationOrder summation_order = SummationOrder::ascending;
  TailKind tail_kind = TailKind::ratio_geometric;
};

inline SeriesDef series_def(const SeriesId& id) {
  switch (id.kind) {
    case SeriesKind::EulerBilateral:
    case SeriesKind::GoldenFifth:
    case SeriesKind::GoldenTenth:
    case SeriesKind::Quarter:
      return {id, 0, Target::pi3, SummationOrder::bilateral_paired, TailKind::bilateral_cubic};
    case SeriesKind::AltOddCubesCorrected:
      return {id, 0, Target::pi3, SummationOrder::ascending, TailKind::alternating_first_term};
    case SeriesKind::AltOddCubesAsPrinted:
      return {id, 1, Target::pi3, SummationOrder::ascending, TailKind::alternating_first_term};
    case SeriesKind::CentralBinomial:
    case SeriesKind::PilehroodApery:
      return {id, 0, Target::pi3, SummationOrder::ascending, TailKind::ratio_geometric};
    case SeriesKind::SunHarmonic:
      return {id, 1, Target::pi3, SummationOrder::ascending, TailKind::ratio_geometric};
  }
  return {id};
}

struct EvalOptions {
  std::uint64_t term_budget = kDefaultTermBudget;
  bool parallel = false;
};

/// Certified evaluation of a series. `error_bound` bounds |value - limit|
/// (truncation plus rounding). For every catalog entry except
/// AltOddCubesAsPrinted the limit is pi^3; that entry converges to pi^3 - 32.
struct EvalResult {
  Real value;
  std::uint64_t terms_used = 0;
  Real error_bound;
  long achieved_digits = 0;
};

/// Partial sum at a fixed truncation with its separate error components.
struct PartialSum {
  Real value;
  Real tail_bound;
  Real rounding_bound;
  std::uint64_t terms_used = 0;

  [[nodiscard]] Real error_bound() const { return tail_bound + rounding_bound; }
};

/// Prefix sums H_n^(2) = sum_{k=1..n} 1/k^2, extended on demand.
class H2Cache {
 public:
  explicit H2Cache(mpfr_prec_t bits) : bits_(bits) { prefix_.emplace_back(bits); }

  const Real& at(std::uint64_t n) {
    while (prefix_.size() <= n) {
      const auto k = static_cast<long>(prefix_.size());
      Real next = prefix_.back() + Real(1, bits_) / k / k;
      prefix_.push_back(std::move(next));
    }
    return prefix_[n];
  }

  [[nodiscard]] std::size_t size() const { return prefix_.size(); }

 private:
  mpfr_prec_t bits_;
  std::vector<Real> prefix_;
};

namespace detail {

/// Upper bound of a non-negative rational as a 64-bit Real.
inline Real upper(const mpq_class& q) {
  Real r(64);
  mpfr_set_q(r.get_mutable(), q.get_mpq_t(), MPFR_RNDU);
  return r;
}

inline std::uint32_t ceil_log2(std::uint64_t n) {
  std::uint32_t b = 0;
  while ((std::uint64_t{1} << b) < n && b < 63) ++b;
  return b;
}

/// Working precision for a sum of `terms` terms: guard bits grow with
/// log2 of the term count.
inline mpfr_prec_t working_bits(const PrecCtx& ctx, std::uint64_t terms) {
  return ctx.prec() + static_cast<mpfr_prec_t>(ceil_log2(terms + 1)) + 8;
}

struct BilateralAbscissa {
  long p = 0;  // x = p/q in lowest terms, 0 < p < q
  long q = 0;
};

inline BilateralAbscissa split_abscissa(const Rat& x) {
  check_open_unit(x);
  const mpz_class limit = mpz_class(1) << 31;
  if (x.den() >= limit) throw InvalidArgument("abscissa denominator too large: " + x.str());
  return {x.num().get_si(), x.den().get_si()};
}

/// Sum over n = -N..N of 1/(p - q n)^3: the n = 0 term, then the pairs
/// (n, -n) combined exactly as 2p(p^2 + 3 q^2 n^2) / (p^2 - q^2 n^2)^3.
inline SumPair scaled_bilateral(BilateralAbscissa a, std::uint64_t pairs, mpfr_prec_t bits, bool parallel) {
  using u128 = unsigned __int128;
  const u128 p2 = static_cast<u128>(a.p) * static_cast<u128>(a.p);
  const u128 q2 = static_cast<u128>(a.q) * static_cast<u128>(a.q);
  auto term = [&](std::uint64_t i) -> Real {
    if (i == 0) return Real(1, bits) / cube(Real(a.p, bits));
    const u128 n2 = static_cast<u128>(i) * static_cast<u128>(i);
    const u128 qn2 = q2 * n2;
    Real num = Real::from_u128(p2 + 3 * qn2, bits) * (2 * a.p);
    Real den = cube(Real::from_u128(qn2 - p2, bits));
    return -(num / den);
  };
  if (pairs >= (std::uint64_t{1} << 40)) throw InvalidArgument("bilateral truncation too large");
  return chunked_sum(pairs + 1, term, bits, parallel);
}

/// 16 x / (3 N^3) for the unscaled sum 1/(x - n)^3.
inline mpq_class bilateral_tail_rational(const Rat& x, std::uint64_t pairs) {
  mpz_class n(static_cast<unsigned long>(pairs));
  return mpq_class(16 * x.value() / (3 * n * n * n));
}

/// Abscissa in (0, 1/2] used for evaluation, and the constant c with
/// pi^3 = c * sum_n 1/(p - q n)^3.
struct BilateralPlan {
  Rat x;
  BilateralAbscissa a;
  Real coef;
};

inline BilateralPlan bilateral_plan(const SeriesId& id, mpfr_prec_t work) {
  const PrecCtx wctx{0, static_cast<std::uint32_t>(work), 0};
  switch (id.kind) {
    case SeriesKind::GoldenFifth:
      return {Rat(1, 5), {1, 5}, golden_coefficient(GoldenCoeff::fifth, wctx)};
    case SeriesKind::GoldenTenth:
      return {Rat(1, 10), {1, 10}, golden_coefficient(GoldenCoeff::tenth, wctx)};
    case SeriesKind::Quarter:
      return {Rat(1, 4), {1, 4}, golden_coefficient(GoldenCoeff::quarter, wctx)};
    case SeriesKind::EulerBilateral: {
      if (id.x == Rat(1, 2)) throw DegenerateAbscissa("degenerate abscissa x=1/2");
      // sum 1/(1-x-n)^3 = -sum 1/(x-n)^3 and cot flips sign under x -> 1-x,
      // so pi^3 has the same representation at 1-x.
      Rat x = id.x > Rat(1, 2) ? Rat(1) - id.x : id.x;
      BilateralAbscissa a = split_abscissa(x);
      const PrecCtx wide = wctx.widened(16);
      Real angle = ref_pi(wide) * a.p / a.q;
      Real s = sin(angle, wide);
      Real c = cos(angle, wide);
      Real q3 = cube(Real(a.q, wide.prec()));
      return {x, a, Real(q3 * cube(s) / c, work)};
    }
    default:
      break;
  }
  throw InvalidArgument(id.name() + " is not a bilateral series");
}

inline Real geometric_coefficient(SeriesKind kind, mpfr_prec_t bits) {
  switch (kind) {
    case SeriesKind::AltOddCubesCorrected:
    case SeriesKind::AltOddCubesAsPrinted: return Real(32, bits);
    case SeriesKind::CentralBinomial: return Real(216, bits) / 7;
    case SeriesKind::PilehroodApery: return Real(1, bits);
    case SeriesKind::SunHarmonic: return Real(48, bits);
    default: break;
  }
  throw InvalidArgument("no scalar coefficient for " + kind_name(kind));
}

/// Sequential generator for the geometrically convergent series, with the
/// running quantities (central binomials, inner sums, harmonic numbers)
/// maintained incrementally.
class GeometricTerms {
 public:
  GeometricTerms(SeriesKind kind, mpfr_prec_t bits) : kind_(kind), bits_(bits), h2_(bits) {
    switch (kind) {
      case SeriesKind::CentralBinomial:
      case SeriesKind::PilehroodApery:
        k_ = 0;
        break;
      case SeriesKind::SunHarmonic:
        k_ = 1;
        binom_ = 2;  // C(2,1)
        break;
      default:
        throw InvalidArgument(kind_name(kind) + " is not a ratio-geometric series");
    }
  }

  [[nodiscard]] std::uint64_t produced() const { return produced_; }

  Real next() {
    Real t(bits_);
    switch (kind_) {
      case SeriesKind::CentralBinomial: t = next_central(); break;
      case SeriesKind::PilehroodApery: t = next_pilehrood(); break;
      case SeriesKind::SunHarmonic: t = next_sun(); break;
      default: break;
    }
    ++produced_;
    return t;
  }

  /// Rigorous bound on the sum of magnitudes of all terms not yet produced,
  /// or nullopt while too few terms exist for the majorant to apply.
  [[nodiscard]] std::optional<Real> tail() const {
    switch (kind_) {
      case SeriesKind::CentralBinomial: {
        // last index j = k-1 >= 1; every later ratio is <= rho_j = (1 + 1/j)/4.
        if (produced_ < 2) return std::nullopt;
        const long j = static_cast<long>(k_) - 1;
        Real rho = Real(j + 1, 64) / (4 * j);
        return Real(last_ * rho / (1 - rho), 64);
      }
      case SeriesKind::PilehroodApery: {
        // |t_j| <= 30 a_j / (2j+1) for j >= 1 and that majorant shrinks by at
        // least 1/4 per step, so the tail is at most 40 a_k / (2k+1).
        if (produced_ < 1) return std::nullopt;
        Real a = ldexp(Real(binom_, bits_), -4 * static_cast<long>(k_));
        return Real(40 * a / static_cast<long>(2 * k_ + 1), 64);
      }
      case SeriesKind::SunHarmonic: {
        // ratios are <= 0.6 from index 4 on: tail <= t_K * 0.6 / 0.4.
        if (k_ - 1 < 4) return std::nullopt;
        return Real(last_ * 3 / 2, 64);
      }
      default:
        return std::nullopt;
    }
  }

 private:
  void advance_binomial() {
    // C(2(k+1), k+1) = C(2k, k) * 2(2k+1) / (k+1), exact.
    binom_ *= 2 * (2 * k_ + 1);
    binom_ /= (k_ + 1);
    ++k_;
  }

  Real next_central() {
    const unsigned long m = 2 * k_ + 1;
    Real t = ldexp(Real(binom_, bits_) / cube(Real(static_cast<long>(m), bits_)), -4 * static_cast<long>(k_));
    if (k_ >= 2) {
      const long j = static_cast<long>(k_) - 1;
      // t_k / t_{k-1} <= (1 + 1/j) / 4
      if (t * (4 * j) > last_ * (j + 1)) throw BudgetExceeded("central-binomial ratio check failed");
    }
    last_ = t;
    advance_binomial();
    return t;
  }

  Real next_pilehrood() {
    const auto m = static_cast<long>(2 * k_ + 1);
    Real a = ldexp(Real(binom_, bits_), -4 * static_cast<long>(k_));
    Real t = 32 * a / cube(Real(m, bits_)) - 24 * a * odd_sq_sum_ / m;
    if (k_ >= 1 && abs(t) * m > 30 * a) throw BudgetExceeded("pilehrood-apery majorant check failed");
    // the inner sum for k+1 adds 1/(2k+1)^2
    odd_sq_sum_ += Real(1, bits_) / m / m;
    last_ = t;
    advance_binomial();
    return t;
  }

  Real next_sun() {
    const auto k = static_cast<long>(k_);
    Real t = ldexp(h2_.at(k_ - 1), k) / (Real(binom_, bits_) * k);
    if (k_ >= 5 && t > last_ * Real::parse("0.6", 64)) {
      throw BudgetExceeded("sun-harmonic ratio bound 0.6 violated at k=" + std::to_string(k_));
    }
    last_ = t;
    advance_binomial();
    return t;
  }

  SeriesKind kind_;
  mpfr_prec_t bits_;
  std::uint64_t k_ = 0;
  std::uint64_t produced_ = 0;
  mpz_class binom_ = 1;
  Real last_{64};
  Real odd_sq_sum_{bits_};
  H2Cache h2_;
};

/// First omitted term 1/(2K+1)^3 of the raw alternating sum.
inline Real alternating_tail(SeriesKind kind, std::uint64_t terms) {
  const long start = kind == SeriesKind::AltOddCubesAsPrinted ? 1 : 0;
  mpz_class first_omitted = 2 * (mpz_class(static_cast<unsigned long>(terms)) + start) + 1;
  return upper(mpq_class(1, first_omitted * first_omitted * first_omitted));
}

inline std::uint64_t min_terms(const SeriesId& id) {
  switch (id.kind) {
    case SeriesKind::CentralBinomial: return 2;
    case SeriesKind::PilehroodApery: return 1;
    case SeriesKind::SunHarmonic: return 4;
    case SeriesKind::AltOddCubesCorrected:
    case SeriesKind::AltOddCubesAsPrinted: return 1;
    default: return 2;  // bilateral pairs
  }
}

}  // namespace detail

/// Single raw term of a unilateral series (before its pi^3 coefficient),
/// computed directly from its index.
inline Real series_term(const SeriesId& id, long k, const PrecCtx& ctx) {
  if (id.is_bilateral()) throw InvalidArgument(id.name() + ": use bilateral_partial for bilateral series");
  const SeriesDef def = series_def(id);
  if (k < def.start_index) {
    throw IndexBelowStart(id.name() + ": index " + std::to_string(k) + " is below start " +
                          std::to_string(def.start_index));
  }
  const mpfr_prec_t p = ctx.prec() + 16;
  const auto uk = static_cast<unsigned long>(k);
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), 2 * uk, uk);
  Real result(p);
  switch (id.kind) {
    case SeriesKind::AltOddCubesCorrected:
    case SeriesKind::AltOddCubesAsPrinted: {
      Real t = Real(1, p) / cube(Real(2 * k + 1, p));
      result = (k % 2 == 0) ? t : -t;
      break;
    }
    case SeriesKind::CentralBinomial:
      result = ldexp(Real(binom, p) / cube(Real(2 * k + 1, p)), -4 * k);
      break;
    case SeriesKind::PilehroodApery: {
      Real inner(p);
      for (long m = 0; m <= k - 1; ++m) inner += Real(1, p) / (2 * m + 1) / (2 * m + 1);
      Real a = ldexp(Real(binom, p), -4 * k);
      result = 32 * a / cube(Real(2 * k + 1, p)) - 24 * a * inner / (2 * k + 1);
      break;
    }
    case SeriesKind::SunHarmonic: {
      H2Cache h2(p);
      result = ldexp(h2.at(uk - 1), k) / (Real(binom, p) * k);
      break;
    }
    default:
      break;
  }
  return Real(result, ctx.prec());
}

/// Sum over n = -N..N of 1/(x - n)^3 in the paired order.
inline Real bilateral_partial(const Rat& x, std::uint64_t pairs, const PrecCtx& ctx, bool parallel = false) {
  const detail::BilateralAbscissa a = detail::split_abscissa(x);
  const mpfr_prec_t work = detail::working_bits(ctx, 2 * pairs + 1);
  SumPair s = detail::scaled_bilateral(a, pairs, work, parallel);
  return Real(s.sum * cube(Real(a.q, work)), ctx.prec());
}

/// 16 x / (3 N^3): bound on the magnitude of sum_{|n| > N} 1/(x - n)^3.
inline Real tail_bound_bilateral(const Rat& x, std::uint64_t pairs) {
  if (x <= Rat(0) || x > Rat(1, 2)) {
    throw AbscissaOutOfRange("tail bound needs 0 < x <= 1/2, got x=" + x.str());
  }
  if (pairs < 2) throw InvalidArgument("tail bound needs N >= 2");
  return detail::upper(detail::bilateral_tail_rational(x, pairs));
}

namespace detail {

inline void check_truncation(const SeriesId& id, std::uint64_t n) {
  if (n < min_terms(id)) {
    throw InvalidArgument(id.name() + ": truncation " + std::to_string(n) + " is below the minimum " +
                          std::to_string(min_terms(id)));
  }
}

/// Bound on the rounding error committed while summing, before any final
/// scaling: a few ulp per term at the working precision.
inline Real sum_rounding(std::uint64_t terms, const Real& abs_sum, mpfr_prec_t work) {
  return Real(pow2(1 - work, 64) * static_cast<long>(3 * terms + 16) * abs_sum, 64);
}

/// Rounding added by multiplying a raw sum by a coefficient carrying a few
/// ulp of its own error, then rounding to the context precision.
inline Real scaling_rounding(const Real& value, mpfr_prec_t work, const PrecCtx& ctx) {
  return Real(pow2(4 - work, 64) * abs(value) + pow2(-ctx.prec(), 64) * abs(value), 64);
}

}  // namespace detail

/// Raw partial sum (no pi^3 coefficient) of a unilateral series over its
/// first `n` terms, with truncation and rounding bounds. The value is
/// rounded to the context precision and that rounding is included.
inline PartialSum partial_raw(const SeriesId& id, std::uint64_t n, const PrecCtx& ctx, const EvalOptions& opts = {}) {
  if (id.is_bilateral()) throw InvalidArgument(id.name() + " is bilateral; use partial_pi3");
  detail::check_truncation(id, n);
  const SeriesDef def = series_def(id);
  const mpfr_prec_t work = detail::working_bits(ctx, n);
  SumPair s{Real(work), Real(work)};
  Real tail(64);
  if (def.tail_kind == TailKind::alternating_first_term) {
    const long start = def.start_index;
    auto term = [&](std::uint64_t i) -> Real {
      const auto k = static_cast<long>(i) + start;
      Real t = Real(1, work) / cube(Real(2 * k + 1, work));
      return k % 2 == 0 ? t : -t;
    };
    s = chunked_sum(n, term, work, opts.parallel);
    tail = detail::alternating_tail(id.kind, n);
  } else {
    detail::GeometricTerms gen(id.kind, work);
    std::vector<Real> terms;
    terms.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) terms.push_back(gen.next());
    s = chunked_sum(n, [&](std::uint64_t i) { return terms[i]; }, work, opts.parallel);
    tail = *gen.tail();
  }
  Real rounding = detail::sum_rounding(n, s.abs_sum, work) + pow2(-ctx.prec(), 64) * abs(s.sum);
  return {Real(s.sum, ctx.prec()), tail, Real(rounding, 64), n};
}

/// pi^3 estimate from the first `n` terms (or `n` pairs for bilateral
/// series) together with the truncation and rounding bounds.
inline PartialSum partial_pi3(const SeriesId& id, std::uint64_t n, const PrecCtx& ctx,
                              const EvalOptions& opts = {}) {
  detail::check_truncation(id, n);
  if (id.is_bilateral()) {
    const std::uint64_t terms = 2 * n + 1;
    const mpfr_prec_t work = detail::working_bits(ctx, terms);
    detail::BilateralPlan plan = detail::bilateral_plan(id, work);
    SumPair s = detail::scaled_bilateral(plan.a, n, work, opts.parallel);
    Real value = plan.coef * s.sum;
    Real coef_abs = Real(abs(plan.coef), 64);
    Real q3 = cube(Real(plan.a.q, 64));
    Real tail = coef_abs * detail::upper(detail::bilateral_tail_rational(plan.x, n)) / q3;
    Real rounding = coef_abs * detail::sum_rounding(terms, s.abs_sum, work) +
                    detail::scaling_rounding(value, work, ctx);
    return {Real(value, ctx.prec()), Real(tail, 64), Real(rounding, 64), terms};
  }
  const mpfr_prec_t work = detail::working_bits(ctx, n);
  PartialSum raw = partial_raw(id, n, ctx.widened(static_cast<std::uint32_t>(work - ctx.prec())), opts);
  Real coef = detail::geometric_coefficient(id.kind, work);
  Real value = coef * raw.value;
  Real coef64(coef, 64);
  Real rounding = coef64 * raw.rounding_bound + detail::scaling_rounding(value, work, ctx);
  return {Real(value, ctx.prec()), Real(coef64 * raw.tail_bound, 64), Real(rounding, 64), n};
}

namespace detail {

inline long achieved_digits(const Real& value, const Real& error_bound) {
  if (value.is_zero() || error_bound.is_zero()) return 0;
  Real d = floor(-log10(Real(error_bound, 64) / abs(Real(value, 64))));
  return std::max(0L, static_cast<long>(d.to_double()));
}

inline EvalResult to_result(const PartialSum& ps) {
  Real bound = ps.error_bound();
  long digits = achieved_digits(ps.value, bound);
  return EvalResult{ps.value, ps.terms_used, bound, digits};
}

[[noreturn]] inline void over_budget(const SeriesId& id, const EvalOptions& opts) {
  throw BudgetExceeded(id.name() + ": term budget of " + std::to_string(opts.term_budget) +
                       " terms cannot certify the requested digits");
}

/// Smallest truncation of a unilateral series whose raw tail bound is at
/// most `raw_tol`. Alternating series double from 16; geometric series are
/// probed term by term at low precision.
inline std::uint64_t unilateral_truncation(const SeriesId& id, const Real& raw_tol, const EvalOptions& opts) {
  const SeriesDef def = series_def(id);
  if (def.tail_kind == TailKind::alternating_first_term) {
    std::uint64_t n = 16;
    while (alternating_tail(id.kind, n) > raw_tol) {
      n *= 2;
      if (n > opts.term_budget) over_budget(id, opts);
    }
    return n;
  }
  GeometricTerms probe(id.kind, 64);
  while (true) {
    probe.next();
    if (auto t = probe.tail(); t && *t <= raw_tol) return probe.produced();
    if (probe.produced() >= opts.term_budget) over_budget(id, opts);
  }
}

/// Smallest pair count N = 16 * 2^j whose bilateral tail, scaled to pi^3,
/// is at most `tol`.
inline std::uint64_t bilateral_truncation(const SeriesId& id, const Real& tol, const EvalOptions& opts) {
  BilateralPlan plan = bilateral_plan(id, 64);
  Real scale = abs(plan.coef) / cube(Real(plan.a.q, 64));
  std::uint64_t n = 16;
  while (scale * upper(bilateral_tail_rational(plan.x, n)) > tol) {
    n *= 2;
    if (2 * n + 1 > opts.term_budget) over_budget(id, opts);
  }
  return n;
}

/// 10^-digits * magnitude as a 64-bit Real.
inline Real relative_tolerance(const Real& magnitude, std::uint32_t digits) {
  Real ten(10, 64 + 4 * static_cast<mpfr_prec_t>(digits));
  return Real(Real(magnitude, 64) / pow(ten, digits), 64);
}

}  // namespace detail

/// Evaluates pi^3 from the series until the certified error bound
/// guarantees `target_digits` significant digits.
inline EvalResult eval_pi3(const SeriesId& id, std::uint32_t target_digits, const PrecCtx& ctx,
                           const EvalOptions& opts = {}) {
  if (target_digits == 0) throw InvalidArgument("target digits must be positive");
  if (ctx.decimal_digits < target_digits + 5) {
    throw PrecisionInsufficient("context of " + std::to_string(ctx.decimal_digits) +
                                " digits cannot support " + std::to_string(target_digits) + " target digits");
  }
  // Lower bound on |limit|: pi^3 > 31 and |pi^3 - 32| > 0.99.
  const Real magnitude = id.kind == SeriesKind::AltOddCubesAsPrinted ? Real::parse("0.99", 64) : Real(31, 64);
  const Real half_tol = ldexp(detail::relative_tolerance(magnitude, target_digits), -1);

  const bool bilateral = id.is_bilateral();
  std::uint64_t n = 0;
  if (bilateral) {
    n = detail::bilateral_truncation(id, half_tol, opts);
  } else {
    Real coef = detail::geometric_coefficient(id.kind, 64);
    n = detail::unilateral_truncation(id, Real(half_tol / coef, 64), opts);
  }

  while (true) {
    const std::uint64_t terms = bilateral ? 2 * n + 1 : n;
    if (terms > opts.term_budget) detail::over_budget(id, opts);
    EvalResult r = detail::to_result(partial_pi3(id, n, ctx, opts));
    if (r.achieved_digits >= static_cast<long>(target_digits)) return r;
    n = series_def(id).tail_kind == TailKind::ratio_geometric ? n + n / 4 + 1 : 2 * n;
  }
}

/// pi^3 = [sin^3(pi x) / cos(pi x)] * sum_n 1/(x - n)^3 for rational x in
/// (0, 1), x != 1/2.
inline EvalResult euler_general(const Rat& x, std::uint32_t target_digits, const PrecCtx& ctx,
                                const EvalOptions& opts = {}) {
  return eval_pi3(SeriesId::euler(x), target_digits, ctx, opts);
}

}  // namespace picubed
