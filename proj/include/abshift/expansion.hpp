#pragma once

// The (alpha, beta)-transformation x -> beta*x + alpha mod 1, its partition of
// [0,1) into cells I_0..I_{k-1}, and the itineraries of 0 and of 1^-.

#include <cstddef>
#include <vector>

#include "abshift/digit_seq.hpp"
#include "abshift/numerics.hpp"
#include "abshift/real.hpp"

namespace abshift {

struct ParamPoint {
  Real alpha;
  Real beta;
  int k = 0;  // alphabet size ceil(alpha + beta)

  // Requires 0 <= alpha < 1 and beta > 1.
  static ParamPoint make(Real alpha, Real beta);
};

struct CellIndex {
  Digit digit = 0;
  bool ambiguous = false;
};

struct StepResult {
  Real value;
  Digit digit = 0;
  bool ambiguous = false;
};

// Digit j with x in I_j. Flags x within abs_tol (on the beta*x+alpha scale) of
// an interior cell boundary.
CellIndex partition_index(const ParamPoint& p, const Real& x, const PrecisionContext& ctx);

// One application of the map. An ambiguous point is treated as sitting exactly
// on the boundary, so its image is 0.
StepResult transform_step(const ParamPoint& p, const Real& x, const PrecisionContext& ctx);

// Left endpoint (j - alpha)/beta of cell I_j, 1 <= j <= k-1.
Real cell_boundary(const ParamPoint& p, int j);

struct Orbit {
  Real start;
  std::vector<Real> points;  // points[0] = start; points[i+1] = T(points[i])
  Word digits;               // digits[i] labels points[i]
  std::vector<std::size_t> ambiguous;

  bool clean() const { return ambiguous.empty(); }
};

// Itinerary of x under the forward map (cells closed on the left).
Orbit itinerary(const ParamPoint& p, const Real& x, std::size_t n, const PrecisionContext& ctx);

// First n digits of u = i(0).
Orbit expansion_of_zero(const ParamPoint& p, std::size_t n, const PrecisionContext& ctx);

// First n digits of v = lim_{x -> 1^-} i(x). The orbit lives in (0,1]: each
// digit is the one whose image lands in (0,1].
Orbit expansion_of_one(const ParamPoint& p, std::size_t n, const PrecisionContext& ctx);

// Working precision that keeps n steps of error amplification below the
// caller's precision.
long orbit_precision(const PrecisionContext& ctx, const Real& beta, std::size_t n);

// sum_i (d_i - alpha)/beta^{i+1}. Eventually periodic input is summed in
// closed form (zero tail); finite input carries a tail bound for unknown
// remaining digits in the alphabet.
SeriesValue reconstruct(const DigitSeq& digits, const ParamPoint& p, const PrecisionContext& ctx);

// P_0 = beta + alpha(beta) - v_0, P_j = beta * P_{j-1} + alpha(beta) - v_j for
// j = 1..n, with alpha(beta) = (beta-1) sum u_i beta^{-(i+1)}. P_j is the
// image of 1 after the digits v_0..v_j, i.e. the (j+1)-th point of the
// left-limit orbit. Throws InconsistentDigits when a value leaves [0,1].
std::vector<Real> p_poly_orbit(const DigitSeq& u, const Word& v_digits, const Real& beta,
                               std::size_t n, const PrecisionContext& ctx);

}  // namespace abshift
