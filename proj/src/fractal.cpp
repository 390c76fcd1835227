#include "abshift/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "abshift/error.hpp"

namespace abshift {

IfsSpec IfsSpec::make(std::vector<AffineMap> maps, Real lo, Real hi) {
  if (maps.empty()) throw Error(ErrorKind::Domain, "IFS needs at least one map");
  if (!(lo < hi)) throw Error(ErrorKind::Domain, "ambient interval must have lo < hi");
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const AffineMap& m = maps[i];
    if (!(m.ratio > 0 && m.ratio < 1)) {
      throw Error(ErrorKind::Domain, "map " + std::to_string(i) + ": ratio outside (0, 1)");
    }
    if (m.apply(lo) < lo || m.apply(hi) > hi) {
      throw Error(ErrorKind::Domain, "map " + std::to_string(i) + " leaves the ambient interval");
    }
  }
  return IfsSpec{std::move(maps), std::move(lo), std::move(hi)};
}

IfsSpec IfsSpec::en_system(int N, const PrecisionContext& ctx) {
  if (N < 3) throw Error(ErrorKind::Domain, "en_system needs N >= 3");
  std::vector<AffineMap> maps;
  for (int i = 1; i <= N - 2; ++i) maps.push_back({ctx.ratio(1, N), ctx.ratio(i, N)});
  return make(std::move(maps), ctx.num(0), ctx.num(1));
}

IfsSpec IfsSpec::cantor(const PrecisionContext& ctx) {
  return make({{ctx.ratio(1, 3), ctx.num(0)}, {ctx.ratio(1, 3), ctx.ratio(2, 3)}}, ctx.num(0),
              ctx.num(1));
}

Real moran_exponent(const IfsSpec& ifs, const PrecisionContext& ctx) {
  if (ifs.maps.empty()) throw Error(ErrorKind::Domain, "IFS needs at least one map");
  const long bits = ctx.precision_bits;
  const long m = static_cast<long>(ifs.maps.size());
  Real rmin = ifs.maps.front().ratio.with_precision(bits);
  Real rmax = rmin;
  for (const AffineMap& f : ifs.maps) {
    rmin = min(rmin, f.ratio);
    rmax = max(rmax, f.ratio);
  }
  const Real log_m = log(Real(m, bits));
  if (rmin == rmax) return log_m / -log(rmin);

  // sum r_i^s - 1 decreases from m - 1 at s = 0; at log m / log(1/rmax)
  // every term is at most 1/m, so the sum is at most 1.
  auto f = [&](const Real& s) {
    Real sum(bits);
    for (const AffineMap& g : ifs.maps) sum += pow(g.ratio.with_precision(bits), s);
    return sum - 1L;
  };
  return find_root_bracketed(f, Real(bits), log_m / -log(rmax), ctx);
}

DimEstimate moran_dimension(const IfsSpec& ifs, const PrecisionContext& ctx) {
  DimEstimate d;
  d.value = moran_exponent(ifs, ctx).to_double();
  d.method = DimMethod::Moran;
  return d;
}

Real moran_uniform(long count, long denominator, const PrecisionContext& ctx) {
  if (count < 1 || denominator < 2) {
    throw Error(ErrorKind::Domain, "moran_uniform needs count >= 1 and denominator >= 2");
  }
  return log(ctx.num(count)) / log(ctx.num(denominator));
}

std::vector<double> attractor_sample(const IfsSpec& ifs, std::size_t depth, std::uint64_t budget) {
  if (ifs.maps.empty()) throw Error(ErrorKind::Domain, "IFS needs at least one map");
  const std::uint64_t m = ifs.maps.size();
  std::uint64_t size = 1;
  for (std::size_t d = 0; d < depth; ++d) {
    if (size > budget / m) {
      throw Error(ErrorKind::Resource, "attractor sample of depth " + std::to_string(depth) +
                                           " exceeds the budget of " + std::to_string(budget));
    }
    size *= m;
  }

  std::vector<std::pair<double, double>> maps;
  for (const AffineMap& f : ifs.maps) maps.emplace_back(f.ratio.to_double(), f.offset.to_double());

  std::vector<double> points{ifs.maps.front().fixed_point().to_double()};
  std::vector<double> next;
  for (std::size_t d = 0; d < depth; ++d) {
    next.clear();
    next.reserve(points.size() * maps.size());
    for (auto [r, c] : maps) {
      for (double x : points) next.push_back(r * x + c);
    }
    points.swap(next);
  }
  std::sort(points.begin(), points.end());
  return points;
}

std::vector<std::pair<double, std::size_t>> box_count(std::span<const double> points,
                                                      std::span<const double> epsilons,
                                                      double anchor) {
  std::vector<std::pair<double, std::size_t>> out;
  out.reserve(epsilons.size());
  for (double eps : epsilons) {
    if (!(eps > 0)) throw Error(ErrorKind::Domain, "box size must be positive");
    std::size_t count = 0;
    bool have_last = false;
    double last = 0;
    for (double x : points) {
      // Points sitting on a grid line up to rounding belong to the cell on
      // their right.
      const double t = (x - anchor) / eps;
      double cell = std::floor(t);
      if (cell + 1 - t < 1e-9) cell += 1;
      if (!have_last || cell != last) {
        ++count;
        last = cell;
        have_last = true;
      }
    }
    out.emplace_back(eps, count);
  }
  return out;
}

DimEstimate box_dimension(std::span<const double> points, std::span<const double> epsilons,
                          double anchor) {
  if (epsilons.size() < 3) throw Error(ErrorKind::DegenerateFit, "box dimension needs 3 scales");
  if (points.empty()) throw Error(ErrorKind::Domain, "box dimension of an empty set");
  std::vector<std::pair<double, double>> xy;
  for (auto [eps, count] : box_count(points, epsilons, anchor)) {
    xy.emplace_back(-std::log(eps), std::log(static_cast<double>(count)));
  }
  const LinearFit fit = fit_slope(xy);
  DimEstimate d;
  d.value = fit.slope;
  d.stderr_value = fit.stderr_slope;
  d.method = DimMethod::BoxCount;
  d.scales_used.assign(epsilons.begin(), epsilons.end());
  return d;
}

std::vector<double> aligned_scales(int N, std::size_t depth) {
  if (N < 2) throw Error(ErrorKind::Domain, "aligned_scales needs N >= 2");
  std::vector<double> eps;
  for (std::size_t k = 1; k + 2 <= depth; ++k) {
    eps.push_back(std::pow(static_cast<double>(N), -static_cast<double>(k)));
  }
  return eps;
}

DimensionReport dimension_report(int N, std::size_t depth, std::uint64_t budget,
                                 const PrecisionContext& ctx) {
  if (N < 3) throw Error(ErrorKind::Precondition, "dimension report needs N >= 3");
  DimensionReport r;
  r.N = N;
  r.moran = moran_uniform(N - 2, N, ctx).to_double();
  if (N >= 4) r.paper_formula = moran_uniform(N - 3, N, ctx).to_double();

  // Shrink the sample until it fits; below depth 5 there are too few scales.
  std::size_t d = depth;
  auto fits = [&](std::size_t dd) {
    long double size = std::pow(static_cast<long double>(N - 2), static_cast<long double>(dd));
    return size <= static_cast<long double>(budget);
  };
  while (d >= 5 && !fits(d)) --d;
  if (d >= 5 && N >= 4) {
    const IfsSpec ifs = IfsSpec::en_system(N, ctx);
    const std::vector<double> pts = attractor_sample(ifs, d, budget);
    const std::vector<double> eps = aligned_scales(N, d);
    r.boxcount = box_dimension(pts, eps);
    r.sample_depth = d;
  }
  if (r.paper_formula) {
    const double tol = r.boxcount ? r.boxcount->stderr_value : 0.0;
    r.discrepancy = std::abs(r.moran - *r.paper_formula) > tol;
  }
  return r;
}

const char* to_string(DimMethod m) {
  return m == DimMethod::Moran ? "moran" : "boxcount";
}

}  // namespace abshift
