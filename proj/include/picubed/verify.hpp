#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "picubed/error.hpp"
#include "picubed/goldfield.hpp"
#include "picubed/numctx.hpp"
#include "picubed/reduce.hpp"
#include "picubed/series.hpp"

namespace picubed {

inline constexpr unsigned kMaxGuptaK = 8;

enum class IdentityKind {
  Eq2CentralBinomial,
  Eq4SunHarmonic,
  GuptaFamily,
  PlouffePi,
  PlouffePi3,
  Eq1AsPrinted,
  Eq1Corrected,
  CoeffFifth,
  CoeffTenth,
};

inline constexpr IdentityKind kAllIdentityKinds[] = {
    IdentityKind::Eq2CentralBinomial, IdentityKind::Eq4SunHarmonic, IdentityKind::GuptaFamily,
    IdentityKind::PlouffePi,          IdentityKind::PlouffePi3,     IdentityKind::Eq1AsPrinted,
    IdentityKind::Eq1Corrected,       IdentityKind::CoeffFifth,     IdentityKind::CoeffTenth,
};

struct IdentityId {
  IdentityKind kind = IdentityKind::Eq2CentralBinomial;
  unsigned gupta_k = 0;  // GuptaFamily only

  static IdentityId of(IdentityKind kind) { return IdentityId{kind, 0}; }
  static IdentityId gupta(unsigned k) {
    if (k > kMaxGuptaK) throw InvalidArgument("gupta family index must be <= 8, got " + std::to_string(k));
    return IdentityId{IdentityKind::GuptaFamily, k};
  }

  [[nodiscard]] std::string name() const {
    switch (kind) {
      case IdentityKind::Eq2CentralBinomial: return "eq2-central-binomial";
      case IdentityKind::Eq4SunHarmonic: return "eq4-sun-harmonic";
      case IdentityKind::GuptaFamily: return "gupta-" + std::to_string(gupta_k);
      case IdentityKind::PlouffePi: return "plouffe-pi";
      case IdentityKind::PlouffePi3: return "plouffe-pi3";
      case IdentityKind::Eq1AsPrinted: return "eq1-as-printed";
      case IdentityKind::Eq1Corrected: return "eq1-corrected";
      case IdentityKind::CoeffFifth: return "coeff-fifth";
      case IdentityKind::CoeffTenth: return "coeff-tenth";
    }
    return "?";
  }

  static IdentityId parse(const std::string& name) {
    if (name.rfind("gupta-", 0) == 0) {
      const std::string digits = name.substr(6);
      if (digits.empty() || digits.size() > 2 || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw InvalidArgument("unknown identity '" + name + "'");
      }
      return gupta(static_cast<unsigned>(std::stoul(digits)));
    }
    for (IdentityKind k : kAllIdentityKinds) {
      if (k != IdentityKind::GuptaFamily && of(k).name() == name) return of(k);
    }
    throw InvalidArgument("unknown identity '" + name + "'");
  }

  /// Identities that hold only if the printed formula has a typo.
  [[nodiscard]] bool expected_fail() const { return kind == IdentityKind::Eq1AsPrinted; }

  /// True when the left-hand side itself is computed from the reference pi.
  [[nodiscard]] bool uses_reference_pi() const {
    return kind == IdentityKind::GuptaFamily || kind == IdentityKind::PlouffePi ||
           kind == IdentityKind::PlouffePi3 || kind == IdentityKind::CoeffFifth ||
           kind == IdentityKind::CoeffTenth;
  }

  friend bool operator==(const IdentityId&, const IdentityId&) = default;
};

/// Default identity suite: every identity, with the Gupta family for k = 0..4.
inline std::vector<IdentityId> default_identity_suite() {
  std::vector<IdentityId> ids = {IdentityId::of(IdentityKind::Eq1AsPrinted),
                                 IdentityId::of(IdentityKind::Eq1Corrected),
                                 IdentityId::of(IdentityKind::Eq2CentralBinomial),
                                 IdentityId::of(IdentityKind::Eq4SunHarmonic)};
  for (unsigned k = 0; k <= 4; ++k) ids.push_back(IdentityId::gupta(k));
  ids.push_back(IdentityId::of(IdentityKind::PlouffePi));
  ids.push_back(IdentityId::of(IdentityKind::PlouffePi3));
  ids.push_back(IdentityId::of(IdentityKind::CoeffFifth));
  ids.push_back(IdentityId::of(IdentityKind::CoeffTenth));
  return ids;
}

/// Outcome of checking lhs = rhs. `error_bound` is the combined certified
/// bound on |lhs - true lhs| + |rhs - true rhs|.
struct Report {
  IdentityId id;
  Real lhs;
  Real rhs;
  Real abs_diff;
  Real error_bound;
  long certified_digits = 0;
  bool pass = false;
  std::uint64_t terms_used = 0;
  bool uses_reference_pi = false;
};

namespace detail {

inline void check_plouffe_args(unsigned n, unsigned r) {
  if (n != 1 && n != 3) throw InvalidArgument("plouffe S_n needs n in {1, 3}");
  if (r != 1 && r != 2 && r != 4) throw InvalidArgument("plouffe S_n(r) needs r in {1, 2, 4}");
}

/// e^{-pi r} at 64 bits.
inline Real plouffe_decay(unsigned r) {
  const PrecCtx c{0, 96, 0};
  return Real(exp(-(ref_pi(c) * static_cast<long>(r)), c), 64);
}

}  // namespace detail

/// S_n(r) partial sum: sum_{k=1..K} 1 / (k^n (e^{pi r k} - 1)).
inline Real plouffe_S(unsigned n, unsigned r, const PrecCtx& ctx, std::uint64_t terms) {
  detail::check_plouffe_args(n, r);
  const PrecCtx work = ctx.widened(16);
  const Real pi_r = ref_pi(work) * static_cast<long>(r);
  auto term = [&](std::uint64_t i) -> Real {
    const auto k = static_cast<long>(i + 1);
    Real denom = exp(pi_r * k, work) - 1;
    denom *= pow(Real(k, work.prec()), n);
    return Real(1, work.prec()) / denom;
  };
  SumPair s = chunked_sum(terms, term, work.prec());
  return Real(s.sum, ctx.prec());
}

/// Bound on sum_{k>K} 1/(k^n (e^{pi r k} - 1)) for n >= 1:
/// e^{-pi r (K+1)} / (1 - e^{-pi r})^2.
inline Real plouffe_tail(unsigned r, std::uint64_t terms) {
  const Real q = detail::plouffe_decay(r);
  const Real one_minus = 1 - q;
  return Real(pow(q, terms + 1) / (one_minus * one_minus), 64);
}

/// Smallest K >= 1 with e^{-pi r (K+1)} / (1 - e^{-pi r}) < 10^{-(digits+2)}.
inline std::uint64_t plouffe_truncation(unsigned r, std::uint32_t digits) {
  const Real q = detail::plouffe_decay(r);
  const Real target = detail::relative_tolerance(Real(1, 64), digits + 2);
  const Real one_minus = 1 - q;
  std::uint64_t k = 1;
  Real power = q * q;  // e^{-pi r (K+1)} at K = 1
  while (!(power / one_minus < target)) {
    power *= q;
    ++k;
  }
  return k;
}

/// Overall constant 2^{2k+4} (2k+3)! / (2^{2k+2} - 1) of the Gupta family.
inline Rat gupta_coefficient(unsigned k) {
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), 2 * k + 3);
  const mpz_class p4 = mpz_class(1) << (2 * k + 4);
  const mpz_class p2 = (mpz_class(1) << (2 * k + 2)) - 1;
  return Rat(p4 * fact, p2);
}

namespace detail {

/// c_j = (-1)^j / ((2k - 2j + 1)! pi^{2j}), j = 0..k.
inline std::vector<Real> gupta_inner_coefficients(unsigned k, const PrecCtx& ctx) {
  const Real pi2 = [&] {
    Real p = ref_pi(ctx);
    return p * p;
  }();
  std::vector<Real> c;
  Real pi_pow(1, ctx.prec());
  for (unsigned j = 0; j <= k; ++j) {
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), 2 * (k - j) + 1);
    Real v = Real(1, ctx.prec()) / (Real(fact, ctx.prec()) * pi_pow);
    c.push_back(j % 2 == 0 ? v : -v);
    pi_pow *= pi2;
  }
  return c;
}

inline void check_gupta_k(unsigned k) {
  if (k > kMaxGuptaK) throw InvalidArgument("gupta family index must be <= 8, got " + std::to_string(k));
}

}  // namespace detail

/// Gupta family partial sum for fixed k over n = 1..n_max:
/// sum (-1)^{n+1} / ((2n-1)^3 (2^{2k+2}-1)) 2^{2k+4} (2k+3)!
///     * sum_j [-1/((2n-1)^2 pi^2)]^j / (2k-2j+1)!
inline Real gupta_partial(unsigned k, std::uint64_t n_max, const PrecCtx& ctx, bool parallel = false) {
  detail::check_gupta_k(k);
  // Inner sums cancel by up to ~2k+4 bits near n = 1.
  const PrecCtx work = ctx.widened(detail::ceil_log2(n_max + 1) + 2 * k + 16);
  const std::vector<Real> c = detail::gupta_inner_coefficients(k, work);
  auto term = [&](std::uint64_t i) -> Real {
    const auto m = static_cast<long>(2 * i + 1);  // n = i + 1
    Real u = Real(1, work.prec()) / m / m;
    Real inner = c[k];
    for (unsigned j = k; j-- > 0;) inner = inner * u + c[j];
    Real t = inner / cube(Real(m, work.prec()));
    return i % 2 == 0 ? t : -t;
  };
  SumPair s = chunked_sum(n_max, term, work.prec(), parallel);
  return Real(Real(gupta_coefficient(k).value(), work.prec()) * s.sum, ctx.prec());
}

/// Splitting the inner sum by j gives k+1 alternating series in n with
/// decreasing terms 1/(2n-1)^{3+2j}; each tail is below its first omitted term.
inline Real gupta_tail(unsigned k, std::uint64_t n_max) {
  detail::check_gupta_k(k);
  const PrecCtx c64{0, 64, 0};
  const std::vector<Real> c = detail::gupta_inner_coefficients(k, c64);
  const Real m(static_cast<long>(2 * n_max + 1), 64);
  Real bound(64);
  for (unsigned j = 0; j <= k; ++j) bound += abs(c[j]) / pow(m, 3 + 2 * j);
  return Real(Real(gupta_coefficient(k).value(), 64) * bound, 64);
}

namespace detail {

/// Rounding bound for gupta_partial: a few ulp per term on the majorant
/// c * sum_j |c_j| * sum_{m odd} m^-3, with sum_{m odd} m^-3 < 1.06.
inline Real gupta_rounding(unsigned k, std::uint64_t n_max, const Real& value, const PrecCtx& ctx) {
  const mpfr_prec_t work = ctx.prec() + ceil_log2(n_max + 1) + 2 * k + 16;
  const std::vector<Real> c = gupta_inner_coefficients(k, PrecCtx{0, 64, 0});
  Real majorant(64);
  for (const Real& cj : c) majorant += abs(cj);
  majorant *= Real(gupta_coefficient(k).value(), 64) * Real::parse("1.06", 64);
  Real r = pow2(1 - work, 64) * static_cast<long>(3 * n_max + 16 + 4 * (k + 1)) * majorant;
  r += pow2(-ctx.prec(), 64) * abs(value);
  return Real(r, 64);
}

inline Report make_report(const IdentityId& id, Real lhs, Real rhs, const Real& bound, std::uint32_t digits,
                          std::uint64_t terms) {
  Real diff = abs(lhs - rhs);
  const Real scale = max(abs(Real(lhs, 64)), Real(1, 64));
  const Real tol = relative_tolerance(scale, digits);
  Real bound64(bound, 64);
  long certified = 0;
  if (!bound64.is_zero()) {
    certified = std::max(0L, static_cast<long>(floor(-log10(bound64 / scale)).to_double()));
  }
  const bool pass = Real(diff, 64) <= bound64 && bound64 <= tol;
  return Report{id, std::move(lhs), std::move(rhs), std::move(diff), bound64, certified, pass, terms,
                id.uses_reference_pi()};
}

inline std::uint64_t gupta_truncation(unsigned k, const Real& tol, const EvalOptions& opts) {
  std::uint64_t n = 16;
  while (gupta_tail(k, n) > tol) {
    n *= 2;
    if (n > opts.term_budget) {
      throw BudgetExceeded("gupta-" + std::to_string(k) + ": term budget of " + std::to_string(opts.term_budget) +
                           " terms cannot certify the requested digits");
    }
  }
  return n;
}

}  // namespace detail

/// Checks one identity to `digits` digits. The right-hand sides (and, for
/// the self-referential identities, the left-hand sides too) use the
/// reference pi.
inline Report verify_identity(const IdentityId& id, std::uint32_t digits, const PrecCtx& ctx,
                              const EvalOptions& opts = {}) {
  if (digits == 0) throw InvalidArgument("digits must be positive");
  if (ctx.decimal_digits < digits + 5) {
    throw PrecisionInsufficient("context of " + std::to_string(ctx.decimal_digits) + " digits cannot verify " +
                                std::to_string(digits) + " digits");
  }
  const PrecCtx wide = ctx.widened(16);
  const mpfr_prec_t p = wide.prec();
  const Real pi = ref_pi(wide);
  const Real pi3 = cube(pi);
  // Rounding of a right-hand side built from pi with a few operations.
  auto rhs_rounding = [&](const Real& rhs) { return Real(pow2(4 - p, 64) * abs(rhs), 64); };

  switch (id.kind) {
    case IdentityKind::Eq2CentralBinomial:
    case IdentityKind::Eq4SunHarmonic: {
      const bool central = id.kind == IdentityKind::Eq2CentralBinomial;
      Real rhs = central ? Real(7, p) * pi3 / 216 : pi3 / 48;
      const Real half_tol = ldexp(detail::relative_tolerance(max(abs(Real(rhs, 64)), Real(1, 64)), digits), -1);
      const SeriesId sid = SeriesId::of(central ? SeriesKind::CentralBinomial : SeriesKind::SunHarmonic);
      const std::uint64_t n = detail::unilateral_truncation(sid, half_tol, opts);
      PartialSum lhs = partial_raw(sid, n, wide, opts);
      Real bound = lhs.error_bound() + rhs_rounding(rhs);
      return detail::make_report(id, std::move(lhs.value), std::move(rhs), bound, digits, n);
    }
    case IdentityKind::Eq1AsPrinted:
    case IdentityKind::Eq1Corrected: {
      const SeriesId sid = SeriesId::of(id.kind == IdentityKind::Eq1AsPrinted ? SeriesKind::AltOddCubesAsPrinted
                                                                               : SeriesKind::AltOddCubesCorrected);
      const Real half_tol = ldexp(detail::relative_tolerance(Real(pi3, 64), digits), -1);
      const std::uint64_t n = detail::unilateral_truncation(sid, Real(half_tol / 32, 64), opts);
      PartialSum lhs = partial_pi3(sid, n, wide, opts);
      Real bound = lhs.error_bound() + rhs_rounding(pi3);
      return detail::make_report(id, std::move(lhs.value), pi3, bound, digits, n);
    }
    case IdentityKind::GuptaFamily: {
      const Real half_tol = ldexp(detail::relative_tolerance(Real(pi3, 64), digits), -1);
      const std::uint64_t n = detail::gupta_truncation(id.gupta_k, half_tol, opts);
      Real lhs = gupta_partial(id.gupta_k, n, wide, opts.parallel);
      Real bound = gupta_tail(id.gupta_k, n) + detail::gupta_rounding(id.gupta_k, n, lhs, wide) + rhs_rounding(pi3);
      return detail::make_report(id, std::move(lhs), pi3, bound, digits, n);
    }
    case IdentityKind::PlouffePi:
    case IdentityKind::PlouffePi3: {
      const bool cubic = id.kind == IdentityKind::PlouffePi3;
      const unsigned n = cubic ? 3 : 1;
      const long weights[3] = {cubic ? 720L : 72L, cubic ? -900L : -96L, cubic ? 180L : 24L};
      const unsigned rs[3] = {1, 2, 4};
      Real lhs(p);
      Real bound(64);
      Real abs_sum(64);
      std::uint64_t terms = 0;
      for (int i = 0; i < 3; ++i) {
        const std::uint64_t K = plouffe_truncation(rs[i], digits);
        Real s = plouffe_S(n, rs[i], wide, K);
        lhs += weights[i] * s;
        bound += std::abs(weights[i]) * plouffe_tail(rs[i], K);
        abs_sum += std::abs(weights[i]) * abs(Real(s, 64));
        terms += K;
      }
      // Each S sum: a few ulp per term at the widened precision.
      bound += pow2(6 - p, 64) * static_cast<long>(terms + 16) * abs_sum;
      Real rhs = cubic ? pi3 : pi;
      bound += rhs_rounding(rhs);
      return detail::make_report(id, std::move(lhs), std::move(rhs), bound, digits, terms);
    }
    case IdentityKind::CoeffFifth:
    case IdentityKind::CoeffTenth: {
      // Golden closed form against 125 sin^3/cos at pi/5 (1000 sin^3/cos at
      // pi/10), and the squared exact form C^2 (cot csc^2)^2 = scale^2.
      const bool fifth = id.kind == IdentityKind::CoeffFifth;
      Real lhs = golden_coefficient(fifth ? GoldenCoeff::fifth : GoldenCoeff::tenth, wide);
      const long scale = fifth ? 125 : 1000;
      Real angle = pi / (fifth ? 5 : 10);
      Real rhs = scale * cube(sin(angle, wide)) / cos(angle, wide);
      Real bound = Real(pow2(5 - p, 64) * abs(rhs), 64);
      Real squared = lhs * lhs * gold_to_real(cotcsc2_squared(fifth ? Rat(1, 5) : Rat(1, 10)), wide);
      Real target(scale * scale, p);
      Report r = detail::make_report(id, std::move(lhs), std::move(rhs), bound, digits, 0);
      if (abs(squared - target) > pow2(6 - p, 64) * target) r.pass = false;
      return r;
    }
  }
  throw InvalidArgument("unknown identity");
}

}  // namespace picubed
