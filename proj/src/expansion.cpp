#include "abshift/expansion.hpp"

#include <algorithm>
#include <string>

#include "abshift/error.hpp"

namespace abshift {
namespace {

struct Located {
  long nearest = 0;     // nearest integer to t
  bool on_boundary = false;
};

// t = beta*x + alpha; interior boundaries are the integers 1..k-1.
Located locate(const Real& t, int k, const PrecisionContext& ctx) {
  Located loc;
  loc.nearest = round(t).to_long_floor();
  loc.on_boundary = loc.nearest >= 1 && loc.nearest <= k - 1 && abs(t - loc.nearest) <= ctx.abs_tol;
  return loc;
}

Real working(const Real& v, long bits) { return v.with_precision(std::max(bits, v.precision())); }

}  // namespace

ParamPoint ParamPoint::make(Real alpha, Real beta) {
  if (!alpha.is_finite() || !beta.is_finite()) throw Error(ErrorKind::Domain, "non-finite parameter");
  if (alpha < 0 || !(alpha < 1)) throw Error(ErrorKind::Domain, "alpha must lie in [0,1)");
  if (!(beta > 1)) throw Error(ErrorKind::Domain, "beta must exceed 1");
  ParamPoint p{std::move(alpha), std::move(beta), 0};
  p.k = static_cast<int>(ceil(p.alpha + p.beta).to_long_floor());
  return p;
}

Real cell_boundary(const ParamPoint& p, int j) { return (j - p.alpha) / p.beta; }

CellIndex partition_index(const ParamPoint& p, const Real& x, const PrecisionContext& ctx) {
  if (x < 0 || !(x < 1)) throw Error(ErrorKind::Domain, "x must lie in [0,1)");
  const Real t = p.beta * x + p.alpha;
  const Located loc = locate(t, p.k, ctx);
  if (loc.on_boundary) return {static_cast<Digit>(loc.nearest), true};
  const long d = std::clamp<long>(floor(t).to_long_floor(), 0, p.k - 1);
  return {static_cast<Digit>(d), false};
}

StepResult transform_step(const ParamPoint& p, const Real& x, const PrecisionContext& ctx) {
  if (x < 0 || !(x < 1)) throw Error(ErrorKind::Domain, "x must lie in [0,1)");
  const long bits = std::max({ctx.precision_bits, x.precision(), p.beta.precision()});
  const Real t = p.beta * working(x, bits) + p.alpha;
  const Located loc = locate(t, p.k, ctx);
  if (loc.on_boundary) return {Real(bits), static_cast<Digit>(loc.nearest), true};
  const long d = std::clamp<long>(floor(t).to_long_floor(), 0, p.k - 1);
  Real value = t - d;
  // Clamp rounding spill-over at the ends of [0,1).
  if (value < 0) value = Real(bits);
  return {std::move(value), static_cast<Digit>(d), false};
}

long orbit_precision(const PrecisionContext& ctx, const Real& beta, std::size_t n) {
  return ctx.precision_bits + bits_for_growth(beta.to_double(), n) + 32;
}

Orbit itinerary(const ParamPoint& p, const Real& x, std::size_t n, const PrecisionContext& ctx) {
  const long bits = orbit_precision(ctx, p.beta, n);
  Orbit orbit{working(x, bits), {}, {}, {}};
  orbit.points.reserve(n + 1);
  orbit.points.push_back(orbit.start);
  for (std::size_t i = 0; i < n; ++i) {
    StepResult s = transform_step(p, orbit.points.back(), ctx);
    if (s.ambiguous) orbit.ambiguous.push_back(i);
    orbit.digits.push_back(s.digit);
    orbit.points.push_back(working(s.value, bits));
  }
  return orbit;
}

Orbit expansion_of_zero(const ParamPoint& p, std::size_t n, const PrecisionContext& ctx) {
  if (n < 1) throw Error(ErrorKind::Domain, "expansion length must be positive");
  return itinerary(p, Real(ctx.precision_bits), n, ctx);
}

Orbit expansion_of_one(const ParamPoint& p, std::size_t n, const PrecisionContext& ctx) {
  if (n < 1) throw Error(ErrorKind::Domain, "expansion length must be positive");
  const long bits = orbit_precision(ctx, p.beta, n);
  Orbit orbit{Real(1L, bits), {}, {}, {}};
  orbit.points.reserve(n + 1);
  orbit.points.push_back(orbit.start);
  for (std::size_t i = 0; i < n; ++i) {
    const Real t = p.beta * orbit.points.back() + p.alpha;
    const Located loc = locate(t, p.k, ctx);
    long d = 0;
    Real next(bits);
    if (loc.on_boundary) {
      // Exactly on a boundary the left limit takes the lower digit with image 1.
      orbit.ambiguous.push_back(i);
      d = loc.nearest - 1;
      next = Real(1L, bits);
    } else {
      d = std::clamp<long>(ceil(t).to_long_floor() - 1, 0, p.k - 1);
      next = working(t - d, bits);
      if (next > 1) next = Real(1L, bits);
    }
    orbit.digits.push_back(static_cast<Digit>(d));
    orbit.points.push_back(std::move(next));
  }
  return orbit;
}

SeriesValue reconstruct(const DigitSeq& digits, const ParamPoint& p, const PrecisionContext& ctx) {
  for (Digit d : digits.preperiod()) {
    if (d >= p.k) throw Error(ErrorKind::Domain, "digit outside alphabet");
  }
  for (Digit d : digits.period()) {
    if (d >= p.k) throw Error(ErrorKind::Domain, "digit outside alphabet");
  }
  if (digits.is_infinite()) {
    SeriesWithDerivative s = periodic_series(digits, p.beta, ctx);
    Real value = s.value - p.alpha / (p.beta - 1);
    return {std::move(value), {static_cast<long>(digits.stored_length()), Real(ctx.precision_bits)}};
  }
  const long n = static_cast<long>(digits.stored_length());
  if (n == 0) throw Error(ErrorKind::Domain, "empty digit word");
  // Unknown remaining digits lie in [0, k-1].
  return eval_power_series(digits.with_alphabet(p.k), p.beta, p.alpha, n, ctx);
}

std::vector<Real> p_poly_orbit(const DigitSeq& u, const Word& v_digits, const Real& beta,
                               std::size_t n, const PrecisionContext& ctx) {
  if (v_digits.size() < n + 1) throw Error(ErrorKind::Length, "need v_0..v_n");
  const long bits = orbit_precision(ctx, beta, n);
  PrecisionContext wctx(bits, ctx.abs_tol);
  const Real b = working(beta, bits);
  const Real alpha = (b - 1) * periodic_series(u, b, wctx).value;

  std::vector<Real> values;
  values.reserve(n + 1);
  Real pk = b + alpha - v_digits[0];
  for (std::size_t j = 0;; ++j) {
    if (pk < -ctx.abs_tol || pk > 1 + ctx.abs_tol) {
      throw Error(ErrorKind::InconsistentDigits,
                  "P_" + std::to_string(j) + " = " + pk.to_decimal(12) +
                      " leaves [0,1]; digits are not the expansion of 1 at this beta");
    }
    values.push_back(pk);
    if (j == n) break;
    pk = b * pk + alpha - v_digits[j + 1];
  }
  return values;
}

}  // namespace abshift
