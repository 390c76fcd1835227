#include "abshift/numerics.hpp"

#include <cmath>
#include <string>

#include "abshift/error.hpp"

namespace abshift {

PrecisionContext::PrecisionContext(long bits, Real tol) : precision_bits(bits), abs_tol(std::move(tol)) {
  if (precision_bits < 64) {
    throw Error(ErrorKind::Domain, "precision_bits must be at least 64");
  }
  if (!(abs_tol > 0) || abs_tol < Real::pow2(1 - precision_bits, precision_bits)) {
    throw Error(ErrorKind::Domain, "abs_tol must lie in [2^(1-precision_bits), inf)");
  }
}

PrecisionContext PrecisionContext::with_bits(long bits) {
  return PrecisionContext(bits, Real::pow2(-(25 * bits) / 32, bits));
}

SeriesValue eval_power_series(const DigitSeq& coeffs, const Real& base, const Real& offset, long n,
                              const PrecisionContext& ctx) {
  if (!base.is_finite() || !offset.is_finite()) {
    throw Error(ErrorKind::Domain, "non-finite series input");
  }
  if (!(base > 1)) throw Error(ErrorKind::Domain, "series base must exceed 1");
  if (n < 1) throw Error(ErrorKind::Domain, "series needs at least one term");

  const long bits = std::max(ctx.precision_bits, std::max(base.precision(), offset.precision()));
  Real sum(bits);
  Real scale = Real(1L, bits) / base;  // base^{-(i+1)}
  for (long i = 0; i < n; ++i) {
    sum += (Real(static_cast<long>(coeffs[static_cast<std::size_t>(i)]), bits) - offset) * scale;
    if (i + 1 < n) scale /= base;
  }
  // After the loop scale = base^{-n}; unseen digits range over the alphabet.
  Real tail = (Real(static_cast<long>(coeffs.alphabet_size() - 1), bits) + abs(offset)) * scale / (base - 1);
  return {std::move(sum), {n, std::move(tail)}};
}

SeriesWithDerivative periodic_series(const DigitSeq& coeffs, const Real& base,
                                     const PrecisionContext& ctx) {
  if (!coeffs.is_infinite()) {
    throw Error(ErrorKind::Domain, "closed-form series needs an eventually periodic sequence");
  }
  if (!(base > 1)) throw Error(ErrorKind::Domain, "series base must exceed 1");
  const long bits = std::max(ctx.precision_bits, base.precision());
  const Real x = Real(1L, bits) / base;

  // S(x) = A(x) + x^p B(x) / (1 - x^q) with A, B polynomials in x = 1/base.
  auto poly = [&](const Word& w, Real& value, Real& deriv) {
    value = Real(bits);
    deriv = Real(bits);
    Real xi(1L, bits);  // x^i
    for (std::size_t i = 0; i < w.size(); ++i) {
      deriv += xi * static_cast<long>((i + 1) * static_cast<std::size_t>(w[i]));
      xi *= x;
      value += xi * static_cast<long>(w[i]);
    }
  };
  Real a(bits), da(bits), b(bits), db(bits);
  poly(coeffs.preperiod(), a, da);
  poly(coeffs.period(), b, db);

  const long p = static_cast<long>(coeffs.preperiod().size());
  const long q = static_cast<long>(coeffs.period().size());
  const Real xp = pow(x, p);
  const Real xq = pow(x, q);
  const Real denom = 1L - xq;

  const Real g = xp * b / denom;
  Real dg = xp * db / denom + xp * b * (pow(x, q - 1) * q) / (denom * denom);
  if (p > 0) dg += pow(x, p - 1) * p * b / denom;

  Real value = a + g;
  Real d_dbase = -(x * x) * (da + dg);
  return {std::move(value), std::move(d_dbase)};
}

Real find_root_bracketed(const RealFunction& f, const Real& lo_in, const Real& hi_in,
                         const PrecisionContext& ctx) {
  const long bits = ctx.precision_bits;
  Real lo = lo_in.with_precision(std::max(bits, lo_in.precision()));
  Real hi = hi_in.with_precision(std::max(bits, hi_in.precision()));
  if (hi < lo) std::swap(lo, hi);
  Real flo = f(lo);
  Real fhi = f(hi);
  if (!flo.is_finite() || !fhi.is_finite()) throw Error(ErrorKind::Domain, "non-finite f at bracket");
  if (abs(flo) <= ctx.abs_tol) return lo;
  if (abs(fhi) <= ctx.abs_tol) return hi;
  if (flo.sign() == fhi.sign()) {
    throw Error(ErrorKind::Bracket, "no sign change on [" + lo.to_decimal(12) + ", " +
                                        hi.to_decimal(12) + "]");
  }

  int stale_side = 0;  // Illinois: which endpoint has been kept twice in a row
  Real width = hi - lo;
  for (int iter = 0; iter < 20 * bits; ++iter) {
    Real x = hi - fhi * (hi - lo) / (fhi - flo);
    if (!(x > lo && x < hi)) x = ldexp(lo + hi, -1);
    Real fx = f(x);
    if (abs(fx) <= ctx.abs_tol) return x;
    if (fx.sign() == flo.sign()) {
      lo = x;
      flo = fx;
      if (stale_side == 1) fhi = ldexp(fhi, -1);
      stale_side = 1;
    } else {
      hi = x;
      fhi = fx;
      if (stale_side == -1) flo = ldexp(flo, -1);
      stale_side = -1;
    }
    Real new_width = hi - lo;
    if (new_width > ldexp(width, -1)) {
      Real mid = ldexp(lo + hi, -1);
      Real fm = f(mid);
      if (abs(fm) <= ctx.abs_tol) return mid;
      if (fm.sign() == flo.sign()) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
        fhi = fm;
      }
      stale_side = 0;
      new_width = hi - lo;
    }
    width = new_width;
    if (width <= ldexp(abs(lo) + abs(hi), -static_cast<long>(bits))) break;
  }
  Real best = abs(flo) < abs(fhi) ? lo : hi;
  if (abs(f(best)) > ctx.abs_tol) {
    throw Error(ErrorKind::Construction,
                "bracket collapsed with residual above abs_tol; raise precision_bits");
  }
  return best;
}

LinearFit fit_slope(std::span<const std::pair<double, double>> points) {
  const double n = static_cast<double>(points.size());
  if (points.size() < 2) throw Error(ErrorKind::DegenerateFit, "need at least two points");
  double mx = 0, my = 0;
  for (auto [x, y] : points) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (auto [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0) throw Error(ErrorKind::DegenerateFit, "all abscissas equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (points.size() > 2) {
    double ssr = 0;
    for (auto [x, y] : points) {
      const double r = y - (fit.intercept + fit.slope * x);
      ssr += r * r;
    }
    fit.stderr_slope = std::sqrt(ssr / (n - 2) / sxx);
  }
  return fit;
}

long bits_for_growth(double base, std::size_t steps) {
  if (!(base > 1)) return 0;
  return static_cast<long>(std::ceil(static_cast<double>(steps) * std::log2(base)));
}

}  // namespace abshift
