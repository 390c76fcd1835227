#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>

#include "abshift/digit_seq.hpp"
#include "abshift/real.hpp"

namespace abshift {

// Working precision and tolerance policy. Values near a cell boundary closer
// than abs_tol are reported as ambiguous rather than assigned silently.
struct PrecisionContext {
  long precision_bits = 256;
  Real abs_tol = Real::pow2(-200, 256);

  PrecisionContext() = default;
  PrecisionContext(long bits, Real tol);

  // Tolerance 2^-(25 * bits / 32), the same ratio as the 256/200 default.
  static PrecisionContext with_bits(long bits);

  Real zero() const { return Real(precision_bits); }
  Real num(long v) const { return Real(v, precision_bits); }
  Real ratio(long p, long q) const { return Real::ratio(p, q, precision_bits); }
  Real parse(const std::string& text) const { return Real::parse(text, precision_bits); }
};

struct SeriesTailBound {
  long num_terms = 0;
  Real tail_bound;
};

struct SeriesValue {
  Real value;
  SeriesTailBound tail;
};

// sum_{i<n} (c_i - offset) / base^{i+1}; the tail bound covers any remaining
// digits in [0, alphabet_size - 1].
SeriesValue eval_power_series(const DigitSeq& coeffs, const Real& base, const Real& offset, long n,
                              const PrecisionContext& ctx);

struct SeriesWithDerivative {
  Real value;        // sum_i c_i / base^{i+1}
  Real d_dbase;      // derivative with respect to base
};

// Closed form of sum_i c_i / base^{i+1} for an eventually periodic sequence.
SeriesWithDerivative periodic_series(const DigitSeq& coeffs, const Real& base,
                                     const PrecisionContext& ctx);

using RealFunction = std::function<Real(const Real&)>;

// Illinois-accelerated regula falsi that never leaves the bracket, with a
// forced bisection whenever the bracket fails to halve.
Real find_root_bracketed(const RealFunction& f, const Real& lo, const Real& hi,
                         const PrecisionContext& ctx);

struct LinearFit {
  double slope = 0.0;
  double stderr_slope = 0.0;
  double intercept = 0.0;
};

LinearFit fit_slope(std::span<const std::pair<double, double>> points);

// ceil(steps * log2(base)), the bits lost to `steps` multiplications by base.
long bits_for_growth(double base, std::size_t steps);

}  // namespace abshift
