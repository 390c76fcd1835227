// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "abshift/expansion.hpp"
#include "abshift/fractal.hpp"
#include "abshift/parameter.hpp"
#include "abshift/symbolic.hpp"
#include "oracles.hpp"

using namespace abshift;

namespace {

const PrecisionContext ctx;

DigitSeq per(Word w) { return DigitSeq::periodic(std::move(w)); }
DigitSeq ep(Word p, Word q) { return DigitSeq::eventually_periodic(std::move(p), std::move(q)); }

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void run(int id, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s && o.ok) {
    o.ok = false;
    o.detail = "over time budget";
  }
  if (!o.ok) ++failures;
  std::printf("criterion %d: %s (%.2fs%s%s)\n", id, o.ok ? "PASS" : "FAIL", secs,
              o.detail.empty() ? "" : "; ", o.detail.c_str());
  std::fflush(stdout);
}

std::vector<ENWitness> witnesses(const ZeroExpansionSpec& spec, int N, std::size_t vlen) {
  ScanOptions opts;
  opts.grid = 2;
  opts.depth = 30;
  opts.vlen = vlen;
  return scan_en(spec, N, opts, ctx).exact;
}

Outcome expansions_match_oracle() {
  Outcome o;
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<long> den(2, 60);
  const std::size_t n = 200;
  for (int t = 0; t < 100; ++t) {
    const long qa = den(rng), qb = den(rng);
    const long pa = std::uniform_int_distribution<long>(0, qa - 1)(rng);
    const long pb = std::uniform_int_distribution<long>(qb + 1, 6 * qb - 1)(rng);
    const long bits = orbit_precision(ctx, Real::ratio(pb, qb, 64), n);
    const ParamPoint p = ParamPoint::make(Real::ratio(pa, qa, bits), Real::ratio(pb, qb, bits));
    const Orbit zero = expansion_of_zero(p, n, ctx);
    const Orbit one = expansion_of_one(p, n, ctx);
    const std::string tag = std::to_string(pa) + "/" + std::to_string(qa) + ", " +
                            std::to_string(pb) + "/" + std::to_string(qb);
    o.require(zero.digits == oracle::zero_digits(mpq_class(pa, qa), mpq_class(pb, qb), n),
              "u differs at " + tag);
    o.require(one.digits == oracle::one_digits(mpq_class(pa, qa), mpq_class(pb, qb), n),
              "v differs at " + tag);
    const SeriesValue r0 = reconstruct(DigitSeq::finite(zero.digits), p, ctx);
    const SeriesValue r1 = reconstruct(DigitSeq::finite(one.digits), p, ctx);
    o.require(abs(r0.value) <= r0.tail.tail_bound, "u residual over tail bound at " + tag);
    o.require(abs(r1.value - 1) <= r1.tail.tail_bound, "v residual over tail bound at " + tag);
  }
  if (o.ok) o.detail = "100 points, 200 digits";
  return o;
}

Outcome beta_shift_closed_form() {
  Outcome o;
  const auto spec = ZeroExpansionSpec::make(per({0}));
  for (int N : {5, 6, 8}) {
    const DigitSeq v = ep({N - 1}, {1});
    const SolvedParam s = solve_beta(spec, v, N, ctx, 100);
    const Real want = (N + sqrt(ctx.num(N * N - 4 * N + 8))) / 2;
    const std::string tag = "N=" + std::to_string(N);
    o.require(abs(s.point.beta - want) <= Real::pow2(-200, 256), "beta off closed form, " + tag);
    const PrecisionContext wide(s.working_bits, ctx.abs_tol);
    o.require(expansion_of_zero(s.point, 100, wide).digits == spec.u.prefix(100), "u mismatch, " + tag);
    o.require(expansion_of_one(s.point, 100, wide).digits == v.prefix(100), "v mismatch, " + tag);
  }
  return o;
}

Outcome order_invariants() {
  Outcome o;
  const std::vector<DigitSeq> us{per({0}), per({0, 1}), ep({0}, {1}), per({0, 0, 1}),
                                 ep({0}, {1, 2}), ep({0}, {1, 3})};
  std::mt19937_64 rng(303);
  int solved = 0;
  for (const DigitSeq& u : us) {
    const auto spec = ZeroExpansionSpec::make(u);
    for (int t = 0; t < 4; ++t) {
      const int N = spec.K + 3 + static_cast<int>(rng() % 4);
      Word tail(1 + rng() % 3);
      for (int& d : tail) d = 1 + static_cast<int>(rng() % static_cast<unsigned>(N - 2));
      const DigitSeq v = DigitSeq::eventually_periodic({N - 1}, tail, N);
      const SolvedParam s = solve_beta(spec, v, N, ctx, 401);
      const PrecisionContext wide(s.working_bits, ctx.abs_tol);
      const Word zu = expansion_of_zero(s.point, 401, wide).digits;
      const Word ov = expansion_of_one(s.point, 401, wide).digits;
      o.require(order_invariants_hold(zu, ov, 200, 200),
                "order chain fails for u=" + u.to_string() + " v=" + v.to_string());
      ++solved;
    }
  }
  o.require(solved >= 20, "fewer than 20 points");
  if (o.ok) o.detail = std::to_string(solved) + " solved points, n <= 200";
  return o;
}

Outcome specification_certificates() {
  Outcome o;
  struct Case {
    DigitSeq u;
    int N;
    std::size_t vlen;
  };
  const std::vector<Case> cases{{per({0}), 5, 2}, {per({0}), 6, 1}, {ep({0}, {1}), 5, 2},
                                {ep({0}, {1, 2}), 6, 1}, {ep({0}, {1, 3}), 7, 1}};
  std::size_t count = 0;
  for (const Case& c : cases) {
    const auto spec = ZeroExpansionSpec::make(c.u);
    for (const ENWitness& w : witnesses(spec, c.N, c.vlen)) {
      const SpecReport r =
          has_specification(c.u, *w.v_exact, 60, 60, w.beta.to_double());
      const std::string tag = "u=" + c.u.to_string() + " v=" + w.v_exact->to_string();
      o.require(r.verdict == SpecVerdict::Yes, "verdict not Yes for " + tag);
      o.require(r.certificate == Certificate::DigitDisjoint && r.exact, "no structural certificate for " + tag);
      o.require(r.d_u.found.empty() && r.d_v.found.empty(), "non-empty D-set for " + tag);
      ++count;
    }
  }
  o.require(count > 0, "no witnesses");

  const std::size_t depth = 500;
  const SpecReport neg = has_specification(per({0}), ep({1}, {0}), depth, depth);
  o.require(neg.d_v.verdict == DVerdict::GrowingUpToDepth, "D(v) for 0^inf, 10^inf not growing");
  o.require(neg.d_v.max_found() == depth, "D(v) does not reach depth 500");
  o.require(neg.verdict != SpecVerdict::Yes, "0^inf, 10^inf reported Yes");
  if (o.ok) o.detail = std::to_string(count) + " witnesses; D(v) grows to 500";
  return o;
}

Outcome d_set_oracle() {
  Outcome o;
  std::mt19937_64 rng(505);
  const std::size_t depth = 100;
  for (int t = 0; t < 1000 && o.ok; ++t) {
    const int alphabet = 2 + static_cast<int>(rng() % 3);
    const DigitSeq a = oracle::random_seq(rng, alphabet, 6, 6);
    const DigitSeq b = (t % 5 == 0) ? a : oracle::random_seq(rng, alphabet, 6, 6);
    const std::size_t start = (a == b) ? 1 : 0;
    const DSetReport r = d_set(a, b, depth, depth);
    o.require(r.found == oracle::naive_d_set(a, b, depth, depth, start),
              "mismatch for " + a.to_string() + " in " + b.to_string());
  }
  if (o.ok) o.detail = "1000 pairs, depth 100";
  return o;
}

Outcome moran_vs_boxcount() {
  Outcome o;
  for (int N : {5, 6, 10}) {
    const std::vector<double> pts = attractor_sample(IfsSpec::en_system(N), 7);
    const DimEstimate d = box_dimension(pts, aligned_scales(N, 7));
    const double want = std::log(N - 2.0) / std::log(double(N));
    o.require(std::abs(d.value - want) < 0.05, "box count off for N=" + std::to_string(N));
  }
  std::vector<double> scales;
  for (int k = 1; k <= 8; ++k) scales.push_back(std::pow(3.0, -k));
  const DimEstimate c = box_dimension(attractor_sample(IfsSpec::cantor(), 10), scales);
  o.require(std::abs(c.value - std::log(2.0) / std::log(3.0)) < 0.05, "Cantor box count off");

  const DimensionReport r = dimension_report(6);
  o.require(r.paper_formula.has_value(), "report lacks the log(N-3)/log N value");
  if (r.paper_formula) {
    o.require(std::abs(*r.paper_formula - std::log(3.0) / std::log(6.0)) < 1e-12,
              "log(N-3)/log N value wrong");
  }
  o.require(r.discrepancy, "discrepancy not flagged");
  char buf[128];
  std::snprintf(buf, sizeof buf, "N=6: moran %.4f, box %.4f, log(N-3)/log N %.4f", r.moran,
                r.boxcount ? r.boxcount->value : -1.0, r.paper_formula.value_or(-1.0));
  if (o.ok) o.detail = buf;
  return o;
}

Outcome separation_chain() {
  Outcome o;
  const auto spec = ZeroExpansionSpec::make(per({0}));
  const int N = 5;
  const std::vector<ENWitness> ws = witnesses(spec, N, 3);
  const Real cn = c_lower_bound(N, 0, ctx);
  int pairs = 0;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    o.require(delta_separation(N, 0, ws[i].beta, ws[i].beta, spec, ctx) > cn,
              "Delta_N(b,b) <= C_N");
    for (std::size_t j = i + 1; j < ws.size(); ++j) {
      const auto c = pair_chain(ws[i], ws[j], spec, ctx);
      o.require(c.has_value(), "pair without a first difference");
      if (!c) continue;
      o.require(c->phi_gap <= c->phi_cap, "phi gap over N^-n");
      o.require(c->orbit_gap >= c->delta, "orbit gap under Delta_N");
      o.require(c->beta_gap > c->beta_floor, "beta gap under the mean-value floor");
      ++pairs;
    }
  }
  o.require(pairs >= 30, "fewer than 30 pairs");
  const LipschitzReport rep = lipschitz_ratio_report(ws, spec, ctx);
  o.require(rep.max_ratio.is_finite(), "ratio not finite");
  o.require(rep.max_ratio <= rep.bound, "ratio over bound");
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d pairs, max ratio %.4g <= bound %.4g", pairs,
                rep.max_ratio.to_double(), rep.bound.to_double());
  if (o.ok) o.detail = buf;
  return o;
}

Outcome alpha_monotone() {
  Outcome o;
  std::mt19937_64 rng(808);
  std::uniform_int_distribution<long> frac(1, 999999);
  const Real h = Real::pow2(-24, 256);
  double worst = 0;
  for (const DigitSeq& u : {per({0, 1}), per({0, 0, 1})}) {
    const auto spec = ZeroExpansionSpec::make(u);
    for (int t = 0; t < 100; ++t) {
      const Real b = ctx.num(2) + ctx.ratio(8 * frac(rng), 1000000);
      const Real d = alpha_derivative(spec, b, ctx);
      o.require(d < 0, "derivative not negative");
      const Real fd = (alpha_of_beta(spec, b + h, ctx) - alpha_of_beta(spec, b - h, ctx)) / (2 * h);
      const double rel = (abs(fd - d) / abs(d)).to_double();
      worst = std::max(worst, rel);
      o.require(rel <= 1e-6, "finite difference off");
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "worst relative gap %.2e", worst);
  if (o.ok) o.detail = buf;
  return o;
}

Outcome entropy() {
  Outcome o;
  const double golden = entropy_estimate(SubshiftSpec::make(per({0}), per({1, 0})), 25).value;
  const double full = entropy_estimate(SubshiftSpec::make(per({0}), per({1})), 25).value;
  o.require(std::abs(golden - std::log((1 + std::sqrt(5.0)) / 2)) < 0.01, "golden mean off");
  o.require(std::abs(full - std::log(2.0)) < 1e-6, "full shift off");
  char buf[96];
  std::snprintf(buf, sizeof buf, "golden %.6f, full %.9f", golden, full);
  if (o.ok) o.detail = buf;
  return o;
}

Outcome dimension_trend() {
  Outcome o;
  double prev = -1;
  for (int N = 3; N <= 2000; ++N) {
    const double m = dimension_report(N, 0).moran;
    o.require(m > prev, "not increasing at N=" + std::to_string(N));
    prev = m;
  }
  for (int N = 2001; N < 600000000; N = N * 3 + 1) {
    const double m = dimension_report(N, 0).moran;
    o.require(m > prev, "not increasing at N=" + std::to_string(N));
    prev = m;
  }
  for (int N : {1000000, 5000000, 100000000, 2000000000}) {
    o.require(dimension_report(N, 0).moran > 0.99, "not above 0.99 at N=" + std::to_string(N));
  }
  if (o.ok) o.detail = "increasing on N in [3, 2000] and sampled beyond; > 0.99 from 10^6";
  return o;
}

}  // namespace

int main() {
  run(1, 10, expansions_match_oracle);
  run(2, 5, beta_shift_closed_form);
  run(3, 0, order_invariants);
  run(4, 0, specification_certificates);
  run(5, 0, d_set_oracle);
  run(6, 30, moran_vs_boxcount);
  run(7, 0, separation_chain);
  run(8, 0, alpha_monotone);
  run(9, 0, entropy);
  run(10, 0, dimension_trend);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
