#pragma once

// Iterated function systems of similarities on an interval, their similarity
// dimension, finite attractor samples and a box-counting estimator.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "abshift/numerics.hpp"
#include "abshift/real.hpp"

namespace abshift {

struct AffineMap {
  Real ratio;   // in (0, 1)
  Real offset;

  Real apply(const Real& x) const { return ratio * x + offset; }
  Real fixed_point() const { return offset / (1L - ratio); }
};

struct IfsSpec {
  std::vector<AffineMap> maps;
  Real lo;
  Real hi;

  // Validates ratios in (0, 1) and that every map sends [lo, hi] into itself.
  static IfsSpec make(std::vector<AffineMap> maps, Real lo, Real hi);

  // x -> (x + i) / N for i = 1..N-2 on [0, 1].
  static IfsSpec en_system(int N, const PrecisionContext& ctx = {});

  // x -> x / 3 and x -> (x + 2) / 3 on [0, 1].
  static IfsSpec cantor(const PrecisionContext& ctx = {});
};

enum class DimMethod { Moran, BoxCount };

struct DimEstimate {
  double value = 0.0;
  double stderr_value = 0.0;
  DimMethod method = DimMethod::Moran;
  std::vector<double> scales_used;
};

// s with sum_i r_i^s = 1. Equal ratios use log m / log(1/r) directly.
Real moran_exponent(const IfsSpec& ifs, const PrecisionContext& ctx = {});
DimEstimate moran_dimension(const IfsSpec& ifs, const PrecisionContext& ctx = {});

// log(count) / log(denominator): m maps of ratio 1/denominator, without
// building the map list.
Real moran_uniform(long count, long denominator, const PrecisionContext& ctx = {});

inline constexpr std::uint64_t kDefaultSampleBudget = std::uint64_t{1} << 24;

// Images of the first map's fixed point under all depth-fold compositions,
// sorted. Size (#maps)^depth; throws Resource above budget.
std::vector<double> attractor_sample(const IfsSpec& ifs, std::size_t depth,
                                     std::uint64_t budget = kDefaultSampleBudget);

// Number of half-open cells [anchor + m eps, anchor + (m+1) eps) meeting the
// sorted point set, for each eps.
std::vector<std::pair<double, std::size_t>> box_count(std::span<const double> points,
                                                      std::span<const double> epsilons,
                                                      double anchor = 0.0);

// Slope of log count against log(1/eps); needs at least 3 scales.
DimEstimate box_dimension(std::span<const double> points, std::span<const double> epsilons,
                          double anchor = 0.0);

// (1/N)^k for k = 1..depth-2.
std::vector<double> aligned_scales(int N, std::size_t depth);

struct DimensionReport {
  int N = 0;
  double moran = 0.0;                    // log(N-2) / log N
  std::optional<double> paper_formula;   // log(N-3) / log N, N >= 4
  std::optional<DimEstimate> boxcount;   // absent when no depth >= 5 fits the budget
  std::size_t sample_depth = 0;
  bool discrepancy = false;              // |moran - paper_formula| > boxcount stderr
};

DimensionReport dimension_report(int N, std::size_t depth = 7,
                                 std::uint64_t budget = kDefaultSampleBudget,
                                 const PrecisionContext& ctx = {});

const char* to_string(DimMethod m);

}  // namespace abshift
