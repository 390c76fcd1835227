#include "abshift/parameter.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <thread>

#include "abshift/error.hpp"
#include "abshift/symbolic.hpp"

namespace abshift {
namespace {

void require_n(int N, int K) {
  if (N < K + 3) {
    throw Error(ErrorKind::Precondition,
                "N = " + std::to_string(N) + " must be at least K + 3 = " + std::to_string(K + 3));
  }
}

Real series_sum(const DigitSeq& c, const Real& base, const PrecisionContext& ctx) {
  return periodic_series(c, base, ctx).value;
}

// sum_{k>=2} c / x^k = c / (x (x - 1)).
Real geometric_tail(const Real& c, const Real& x) { return c / (x * (x - 1)); }

// Runs fn(i) for i in [0, n) on `workers` threads.
template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

ZeroExpansionSpec ZeroExpansionSpec::make(DigitSeq u, bool strict) {
  if (!u.is_infinite()) {
    throw Error(ErrorKind::Precondition, "u must be eventually periodic");
  }
  if (u[0] != 0) throw Error(ErrorKind::Precondition, "u_0 must be 0");
  for (std::size_t n = 1; n < u.stored_length() + 1; ++n) {
    const Order o = compare_exact(u, u.shifted(n));
    if (o == Order::Greater || (strict && o == Order::EqualUpToHorizon)) {
      throw Error(ErrorKind::Precondition, std::string("u must satisfy u ") + (strict ? "<" : "<=") +
                                               " sigma^n u; fails at n = " + std::to_string(n));
    }
  }
  const Digit K = u.max_digit();
  return {std::move(u), K, strict};
}

Real alpha_of_beta(const ZeroExpansionSpec& spec, const Real& beta, const PrecisionContext& ctx) {
  if (!(beta > 1)) throw Error(ErrorKind::Domain, "beta must exceed 1");
  Real alpha = (beta - 1) * series_sum(spec.u, beta, ctx);
  if (!(alpha < 1)) {
    throw Error(ErrorKind::Domain, "alpha(beta) = " + alpha.to_decimal(12) + " is not below 1");
  }
  return alpha;
}

Real alpha_derivative(const ZeroExpansionSpec& spec, const Real& beta, const PrecisionContext& ctx) {
  if (!(beta > 1)) throw Error(ErrorKind::Domain, "beta must exceed 1");
  const SeriesWithDerivative s = periodic_series(spec.u, beta, ctx);
  return s.value + (beta - 1) * s.d_dbase;
}

Real alpha_bound(int N, int K, const PrecisionContext& ctx) {
  if (N <= 2) throw Error(ErrorKind::Domain, "N must exceed 2");
  return ctx.ratio(K, N - 2);
}

Real alpha_derivative_sup(const ZeroExpansionSpec& spec, int N, const PrecisionContext& ctx) {
  const Real lo = ctx.num(N - 1) - alpha_bound(N, spec.K, ctx);
  const SeriesWithDerivative s = periodic_series(spec.u, lo, ctx);
  return s.value + (N - 1) * abs(s.d_dbase);
}

void check_en_word(const ZeroExpansionSpec& spec, const DigitSeq& v, int N) {
  const int K = spec.u.max_digit();
  require_n(N, K);
  if (!v.is_infinite()) throw Error(ErrorKind::Precondition, "v must be eventually periodic");
  if (v[0] != N - 1) {
    throw Error(ErrorKind::Precondition, "v_0 must equal N-1 = " + std::to_string(N - 1));
  }
  for (std::size_t i = 1; i <= v.stored_length(); ++i) {
    if (v[i] < 1 || v[i] > N - 2) {
      throw Error(ErrorKind::Precondition, "v_" + std::to_string(i) + " = " + std::to_string(v[i]) +
                                               " outside [1, N-2]");
    }
  }
}

SolvedParam solve_beta(const ZeroExpansionSpec& spec_in, const DigitSeq& v, int N,
                       const PrecisionContext& ctx, std::size_t verify_depth) {
  ZeroExpansionSpec spec = spec_in;
  spec.K = spec.u.max_digit();
  check_en_word(spec, v, N);

  const long bits = ctx.precision_bits + bits_for_growth(N, verify_depth + 1) + 64;
  const PrecisionContext solve_ctx(bits, Real::pow2(16 - bits, bits));

  const RealFunction f = [&](const Real& beta) {
    return series_sum(v, beta, solve_ctx) - series_sum(spec.u, beta, solve_ctx) - 1;
  };
  const Real lo = N - 2 > 1 ? solve_ctx.num(N - 2) : Real(1L, bits) + Real::pow2(-8, bits);
  Real beta(bits);
  try {
    beta = find_root_bracketed(f, lo, solve_ctx.num(N), solve_ctx);
  } catch (const Error& e) {
    throw Error(ErrorKind::Construction, "no parameter for v = " + v.to_string() + ": " + e.what());
  }
  Real alpha = (beta - 1) * series_sum(spec.u, beta, solve_ctx);

  SolvedParam out{ParamPoint::make(std::move(alpha), std::move(beta)), verify_depth, 0, bits};
  if (verify_depth == 0) return out;

  const PrecisionContext check_ctx(bits, ctx.abs_tol);
  const Orbit zero = expansion_of_zero(out.point, verify_depth, check_ctx);
  const Orbit one = expansion_of_one(out.point, verify_depth, check_ctx);
  if (zero.digits != spec.u.prefix(verify_depth)) {
    throw Error(ErrorKind::Verification, "recomputed expansion of 0 differs from u = " + spec.u.to_string());
  }
  if (one.digits != v.prefix(verify_depth)) {
    throw Error(ErrorKind::Verification, "recomputed expansion of 1 differs from v = " + v.to_string());
  }
  out.ambiguous_digits = zero.ambiguous.size() + one.ambiguous.size();
  return out;
}

ENWitness make_witness(const SolvedParam& solved, const DigitSeq& v, int N, std::size_t depth,
                       const PrecisionContext& ctx) {
  ENWitness w;
  w.N = N;
  w.beta = solved.point.beta;
  w.alpha = solved.point.alpha;
  w.v_prefix = v.prefix(depth);
  w.depth = depth;
  w.v_exact = v;
  w.phi = phi_map(w, ctx).value;
  return w;
}

MembershipResult en_membership(const ZeroExpansionSpec& spec, int N, const Real& beta,
                               std::size_t depth, const PrecisionContext& ctx) {
  require_n(N, spec.u.max_digit());
  if (!(beta > N - 2) || beta > N) {
    throw Error(ErrorKind::Domain, "beta must lie in (N-2, N]");
  }
  if (depth < 2) throw Error(ErrorKind::Domain, "membership depth must be at least 2");
  MembershipResult res;
  const Real alpha = alpha_of_beta(spec, beta, ctx);
  const ParamPoint p = ParamPoint::make(alpha, beta);
  const Orbit one = expansion_of_one(p, depth, ctx);

  const std::size_t first_ambiguous = one.ambiguous.empty() ? depth : one.ambiguous.front();
  for (std::size_t i = 0; i < depth; ++i) {
    const Digit d = one.digits[i];
    const bool ok = i == 0 ? d == N - 1 : (d >= 1 && d <= N - 2);
    if (i >= first_ambiguous) {
      res.status = Membership::Inconclusive;
      res.reason = "boundary-ambiguous digit at index " + std::to_string(first_ambiguous);
      return res;
    }
    if (!ok) {
      res.status = Membership::NotMember;
      res.reason = "v_" + std::to_string(i) + " = " + std::to_string(d) + " outside the window";
      return res;
    }
  }
  ENWitness w;
  w.N = N;
  w.beta = beta;
  w.alpha = alpha;
  w.v_prefix = one.digits;
  w.depth = depth;
  w.phi = phi_map(w, ctx).value;
  res.status = Membership::Member;
  res.witness = std::move(w);
  return res;
}

SeriesValue phi_map(const ENWitness& w, const PrecisionContext& ctx) {
  const Real n = ctx.num(w.N);
  if (w.v_exact) {
    return {series_sum(w.v_exact->shifted(1), n, ctx), {static_cast<long>(w.depth), ctx.zero()}};
  }
  Real sum = ctx.zero();
  Real scale = ctx.num(1);
  const std::size_t depth = std::min(w.depth, w.v_prefix.size());
  for (std::size_t k = 1; k < depth; ++k) {
    scale /= w.N;
    sum += scale * static_cast<long>(w.v_prefix[k]);
  }
  // sum_{k >= depth} (N-2)/N^k
  Real tail = ctx.num(w.N - 2) * pow(n, 1 - static_cast<long>(depth)) / (w.N - 1);
  return {std::move(sum), {static_cast<long>(depth), std::move(tail)}};
}

Real delta_separation(int N, int K, const Real& x, const Real& y, const ZeroExpansionSpec& spec,
                      const PrecisionContext& ctx) {
  require_n(N, K);
  const Real lo = ctx.num(N - 1) - alpha_bound(N, K, ctx);
  for (const Real* z : {&x, &y}) {
    if (!(*z > lo) || *z > N) throw Error(ErrorKind::Domain, "Delta_N arguments must lie in (N-1-alpha_N, N]");
  }
  const Real ax = alpha_of_beta(spec, x, ctx);
  const Real ay = alpha_of_beta(spec, y, ctx);

  // Smallest point with first digit 2 (at x) minus largest with first digit 1 (at y).
  const Real first = ((2 - ax) / x + geometric_tail(1 - ax, x)) -
                     ((1 - ay) / y + geometric_tail((N - 2) - ay, y));
  // Smallest with first digit N-2 (at y) minus largest with first digit N-3 (at x).
  const Real second = (((N - 2) - ay) / y + geometric_tail(1 - ay, y)) -
                      (((N - 3) - ax) / x + geometric_tail((N - 2) - ax, x));
  return min(first, second);
}

Real c_lower_bound(int N, int K, const PrecisionContext& ctx) {
  if (N < K + 3) {
    throw Error(ErrorKind::Domain, "C_N is defined for N >= K + 3");
  }
  const Real denom = ctx.num(N - 2) - alpha_bound(N, K, ctx);
  return (1 - (N - 3) / denom) / N;
}

ScanResult scan_en(const ZeroExpansionSpec& spec_in, int N, const ScanOptions& opts,
                   const PrecisionContext& ctx) {
  ZeroExpansionSpec spec = spec_in;
  spec.K = spec.u.max_digit();
  require_n(N, spec.K);
  if (opts.grid < 2) throw Error(ErrorKind::Domain, "grid must have at least 2 points");
  if (opts.vlen < 1) throw Error(ErrorKind::Domain, "vlen must be at least 1");

  // Distinct sequences (N-1) w^inf over words w in {1..N-2}^vlen.
  std::vector<DigitSeq> words;
  {
    std::set<std::string> seen;
    Word w(opts.vlen, 1);
    while (true) {
      DigitSeq v = DigitSeq::eventually_periodic({N - 1}, w, N);
      if (seen.insert(v.to_string()).second) words.push_back(std::move(v));
      std::size_t i = opts.vlen;
      while (i > 0 && w[i - 1] == N - 2) w[--i] = 1;
      if (i == 0) break;
      ++w[i - 1];
    }
  }

  ScanResult result;
  std::mutex mu;
  parallel_for(words.size(), opts.workers, [&](std::size_t i) {
    try {
      const SolvedParam s = solve_beta(spec, words[i], N, ctx, std::max<std::size_t>(opts.depth, 1));
      ENWitness w = make_witness(s, words[i], N, opts.depth, ctx);
      std::lock_guard lock(mu);
      result.exact.push_back(std::move(w));
    } catch (const Error& e) {
      std::lock_guard lock(mu);
      result.failed.push_back(words[i].to_string() + ": " + e.what());
    }
  });

  parallel_for(static_cast<std::size_t>(opts.grid), opts.workers, [&](std::size_t i) {
    const Real beta = ctx.num(N - 2) + ctx.ratio(2 * static_cast<long>(i + 1), opts.grid);
    MembershipResult m;
    try {
      m = en_membership(spec, N, beta, opts.depth, ctx);
    } catch (const Error&) {
      return;
    }
    std::lock_guard lock(mu);
    if (m.status == Membership::Member) result.grid.push_back(std::move(*m.witness));
    if (m.status == Membership::Inconclusive) result.inconclusive.push_back(beta);
  });

  auto by_beta = [](const ENWitness& a, const ENWitness& b) { return a.beta < b.beta; };
  std::sort(result.exact.begin(), result.exact.end(), by_beta);
  std::sort(result.grid.begin(), result.grid.end(), by_beta);
  std::sort(result.inconclusive.begin(), result.inconclusive.end(),
            [](const Real& a, const Real& b) { return a < b; });
  std::sort(result.failed.begin(), result.failed.end());
  return result;
}

LipschitzReport lipschitz_ratio_report(std::span<const ENWitness> witnesses,
                                       const ZeroExpansionSpec& spec, const PrecisionContext& ctx) {
  if (witnesses.size() < 2) throw Error(ErrorKind::Domain, "need at least two witnesses");
  const int N = witnesses.front().N;
  for (const ENWitness& w : witnesses) {
    if (w.N != N) throw Error(ErrorKind::Domain, "witnesses must share N");
  }
  const int K = spec.u.max_digit();
  LipschitzReport r{ctx.zero(), ctx.zero(), 0, 0};
  r.bound = ctx.num(N) * (2 + 2 * alpha_derivative_sup(spec, N, ctx)) / c_lower_bound(N, K, ctx);

  std::vector<Real> phis;
  phis.reserve(witnesses.size());
  for (const ENWitness& w : witnesses) phis.push_back(phi_map(w, ctx).value);
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    for (std::size_t j = i + 1; j < witnesses.size(); ++j) {
      const Real db = abs(witnesses[i].beta - witnesses[j].beta);
      if (db <= ctx.abs_tol) {
        ++r.pairs_skipped;
        continue;
      }
      r.max_ratio = max(r.max_ratio, abs(phis[i] - phis[j]) / db);
      ++r.pairs_used;
    }
  }
  return r;
}

std::optional<PairChain> pair_chain(const ENWitness& a, const ENWitness& b,
                                    const ZeroExpansionSpec& spec, const PrecisionContext& ctx) {
  if (a.N != b.N) throw Error(ErrorKind::Domain, "witnesses must share N");
  const int N = a.N;
  auto digit = [](const ENWitness& w, std::size_t i) -> std::optional<Digit> {
    if (w.v_exact) return (*w.v_exact)[i];
    if (i < w.v_prefix.size()) return w.v_prefix[i];
    return std::nullopt;
  };
  std::size_t m = 0;
  std::size_t limit = std::max(a.v_prefix.size(), b.v_prefix.size());
  if (a.v_exact && b.v_exact) limit = agreement_horizon(*a.v_exact, *b.v_exact);
  for (; m < limit; ++m) {
    const auto da = digit(a, m);
    const auto db = digit(b, m);
    if (!da || !db) return std::nullopt;
    if (*da != *db) break;
  }
  if (m == limit || m == 0) return std::nullopt;

  Word shared;
  for (std::size_t i = 0; i < m; ++i) shared.push_back(*digit(a, i));
  const Real ta = p_poly_orbit(spec.u, shared, a.beta, m - 1, ctx).back();
  const Real tb = p_poly_orbit(spec.u, shared, b.beta, m - 1, ctx).back();

  const bool a_first = a.beta < b.beta;
  const Real& lo = a_first ? a.beta : b.beta;
  const Real& hi = a_first ? b.beta : a.beta;
  const Real nm = pow(ctx.num(N), static_cast<long>(m));

  PairChain c;
  c.first_difference = m;
  c.phi_gap = abs(phi_map(a, ctx).value - phi_map(b, ctx).value);
  c.phi_cap = pow(ctx.num(N), -static_cast<long>(m - 1));
  c.orbit_gap = abs(ta - tb);
  c.delta = delta_separation(N, spec.u.max_digit(), lo, hi, spec, ctx);
  c.beta_gap = hi - lo;
  c.beta_floor = c.orbit_gap / (nm * (2 + 2 * alpha_derivative_sup(spec, N, ctx)));
  return c;
}

}  // namespace abshift
