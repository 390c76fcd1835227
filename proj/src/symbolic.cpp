#include "abshift/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "abshift/error.hpp"
#include "abshift/numerics.hpp"

namespace abshift {
namespace {

// Reachable tail offsets of an infinite sequence: [0, preperiod + period).
std::vector<DigitSeq> all_shifts(const DigitSeq& s) {
  std::vector<DigitSeq> out;
  out.reserve(s.stored_length());
  for (std::size_t n = 0; n < s.stored_length(); ++n) out.push_back(s.shifted(n));
  return out;
}

// Lower bound sigma^lo u and upper bound sigma^hi v on the unread suffix.
class FollowerAutomaton {
 public:
  using State = std::pair<std::size_t, std::size_t>;

  explicit FollowerAutomaton(const SubshiftSpec& spec)
      : u_(spec.u), v_(spec.v), u_shifts_(all_shifts(spec.u)), v_shifts_(all_shifts(spec.v)) {
    u_raises_.resize(u_shifts_.size());
    for (std::size_t a = 0; a < u_shifts_.size(); ++a) {
      u_raises_[a] = compare_exact(u_shifts_[a], u_) == Order::Greater;
    }
    v_lowers_.resize(v_shifts_.size());
    for (std::size_t b = 0; b < v_shifts_.size(); ++b) {
      v_lowers_[b] = compare_exact(v_shifts_[b], v_) == Order::Less;
    }
    alive_.assign(u_shifts_.size(), std::vector<char>(v_shifts_.size(), 0));
    for (std::size_t a = 0; a < u_shifts_.size(); ++a) {
      for (std::size_t b = 0; b < v_shifts_.size(); ++b) {
        alive_[a][b] = compare_exact(u_shifts_[a], v_shifts_[b]) != Order::Greater;
      }
    }
  }

  static State initial() { return {0, 0}; }

  Digit lowest(const State& s) const { return u_[s.first]; }
  Digit highest(const State& s) const { return v_[s.second]; }
  bool alive(const State& s) const { return alive_[s.first][s.second] != 0; }

  std::optional<State> step(const State& s, Digit c) const {
    if (c < lowest(s) || c > highest(s)) return std::nullopt;
    std::size_t lo = 0;
    if (c == lowest(s)) {
      const std::size_t a = u_.canonical_index(s.first + 1);
      lo = u_raises_[a] ? a : 0;
    }
    std::size_t hi = 0;
    if (c == highest(s)) {
      const std::size_t b = v_.canonical_index(s.second + 1);
      hi = v_lowers_[b] ? b : 0;
    }
    return State{lo, hi};
  }

 private:
  const DigitSeq& u_;
  const DigitSeq& v_;
  std::vector<DigitSeq> u_shifts_;
  std::vector<DigitSeq> v_shifts_;
  std::vector<char> u_raises_;   // sigma^a u > u
  std::vector<char> v_lowers_;   // sigma^b v < v
  std::vector<std::vector<char>> alive_;
};

// Z-array: z[i] = longest common prefix of s and s[i..].
std::vector<std::size_t> z_function(const std::vector<Digit>& s) {
  const std::size_t n = s.size();
  std::vector<std::size_t> z(n, 0);
  if (n == 0) return z;
  z[0] = n;
  std::size_t l = 0, r = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (i < r) z[i] = std::min(r - i, z[i - l]);
    while (i + z[i] < n && s[z[i]] == s[i + z[i]]) ++z[i];
    if (i + z[i] > r) {
      l = i;
      r = i + z[i];
    }
  }
  return z;
}

std::size_t default_start(const DigitSeq& target, const DigitSeq& source,
                          std::optional<std::size_t> start) {
  if (start) return *start;
  return target == source ? 1 : 0;
}

}  // namespace

LexResult lex_compare(const DigitSeq& a, const DigitSeq& b, std::size_t horizon) {
  std::size_t limit = horizon;
  if (a.is_infinite() && b.is_infinite()) {
    limit = std::min(limit, agreement_horizon(a, b));
  } else {
    if (!a.is_infinite()) limit = std::min(limit, a.stored_length());
    if (!b.is_infinite()) limit = std::min(limit, b.stored_length());
  }
  for (std::size_t i = 0; i < limit; ++i) {
    const Digit x = a[i];
    const Digit y = b[i];
    if (x != y) return {x < y ? Order::Less : Order::Greater, i};
  }
  return {Order::EqualUpToHorizon, std::min(horizon, limit)};
}

Order compare_exact(const DigitSeq& a, const DigitSeq& b) {
  if (!a.is_infinite() || !b.is_infinite()) {
    throw Error(ErrorKind::Domain, "exact comparison needs infinite sequences");
  }
  return lex_compare(a, b, agreement_horizon(a, b)).order;
}

DigitSeq shift_by(const DigitSeq& s, std::size_t n) { return s.shifted(n); }

bool order_invariants_hold(const DigitSeq& u, const DigitSeq& v) {
  if (compare_exact(u, v) == Order::Greater) return false;
  for (const DigitSeq* seq : {&u, &v}) {
    for (std::size_t n = 0; n < seq->stored_length(); ++n) {
      const DigitSeq s = seq->shifted(n);
      if (compare_exact(u, s) == Order::Greater) return false;
      if (compare_exact(s, v) == Order::Greater) return false;
    }
  }
  return true;
}

bool order_invariants_hold(const Word& u, const Word& v, std::size_t max_shift, std::size_t horizon) {
  if (u.size() < max_shift + horizon || v.size() < max_shift + horizon) {
    throw Error(ErrorKind::Length, "words too short for the requested shifts");
  }
  auto le = [horizon](const Word& a, std::size_t ia, const Word& b, std::size_t ib) {
    for (std::size_t i = 0; i < horizon; ++i) {
      if (a[ia + i] != b[ib + i]) return a[ia + i] < b[ib + i];
    }
    return true;
  };
  for (std::size_t n = 0; n <= max_shift; ++n) {
    if (!le(u, 0, u, n) || !le(u, n, v, 0)) return false;
    if (!le(u, 0, v, n) || !le(v, n, v, 0)) return false;
  }
  return true;
}

SubshiftSpec SubshiftSpec::make(DigitSeq u, DigitSeq v, int alphabet_size) {
  if (!u.is_infinite() || !v.is_infinite()) {
    throw Error(ErrorKind::Domain, "subshift endpoints must be infinite sequences");
  }
  const int k = std::max({alphabet_size, u.max_digit() + 1, v.max_digit() + 1});
  if (!order_invariants_hold(u, v)) {
    throw Error(ErrorKind::Precondition,
                "endpoints violate u <= sigma^n u <= v or u <= sigma^n v <= v: u=" + u.to_string() +
                    " v=" + v.to_string());
  }
  return {u.with_alphabet(k), v.with_alphabet(k), k};
}

bool is_admissible_word(const Word& w, const SubshiftSpec& spec) {
  const FollowerAutomaton fa(spec);
  auto state = FollowerAutomaton::initial();
  for (Digit c : w) {
    auto next = fa.step(state, c);
    if (!next) return false;
    state = *next;
  }
  return fa.alive(state);
}

std::vector<std::uint64_t> count_language(const SubshiftSpec& spec, std::size_t max_len,
                                          std::uint64_t budget) {
  // alphabet^max_len <= budget, computed without overflow.
  long double words = 1;
  for (std::size_t i = 0; i < max_len; ++i) {
    words *= spec.alphabet_size;
    if (words > static_cast<long double>(budget)) {
      throw Error(ErrorKind::Resource, "alphabet^" + std::to_string(max_len) +
                                           " exceeds the word budget");
    }
  }
  const FollowerAutomaton fa(spec);
  std::map<FollowerAutomaton::State, std::uint64_t> layer{{FollowerAutomaton::initial(), 1}};
  std::vector<std::uint64_t> counts;
  counts.reserve(max_len);
  for (std::size_t n = 1; n <= max_len; ++n) {
    std::map<FollowerAutomaton::State, std::uint64_t> next;
    for (const auto& [state, count] : layer) {
      for (Digit c = fa.lowest(state); c <= fa.highest(state); ++c) {
        auto s = fa.step(state, c);
        if (s && fa.alive(*s)) next[*s] += count;
      }
    }
    std::uint64_t total = 0;
    for (const auto& [state, count] : next) total += count;
    counts.push_back(total);
    layer = std::move(next);
  }
  return counts;
}

EntropyEstimate entropy_estimate(const SubshiftSpec& spec, std::size_t max_len, std::uint64_t budget) {
  if (max_len < 2) throw Error(ErrorKind::DegenerateFit, "entropy fit needs max_len >= 2");
  EntropyEstimate est;
  est.counts = count_language(spec, max_len, budget);
  std::vector<std::pair<double, double>> pts;
  for (std::size_t n = 1; n <= max_len; ++n) {
    pts.emplace_back(static_cast<double>(n), std::log(static_cast<double>(est.counts[n - 1])));
  }
  const LinearFit fit = fit_slope(pts);
  est.value = fit.slope;
  est.stderr_value = fit.stderr_slope;
  return est;
}

DSetReport d_set(const DigitSeq& target, const DigitSeq& source, std::size_t depth_n,
                 std::size_t depth_j, std::optional<std::size_t> search_start) {
  DSetReport report;
  report.search_start = default_start(target, source, search_start);
  if (!target.is_infinite()) {
    if (target.stored_length() == 0) return report;
    depth_n = std::min(depth_n, target.stored_length() - 1);
  }
  report.depth_n = depth_n;
  report.depth_j = depth_j;

  const std::size_t m = depth_n + 1;
  const std::size_t text_len =
      source.is_infinite() ? depth_j + m : std::min(depth_j + m, source.stored_length());
  std::vector<Digit> s = target.prefix(m);
  s.push_back(-1);
  const Word text = source.prefix(text_len);
  s.insert(s.end(), text.begin(), text.end());
  const std::vector<std::size_t> z = z_function(s);

  std::size_t best = 0;  // longest matched prefix length
  for (std::size_t j = report.search_start; j <= depth_j && j < text_len; ++j) {
    best = std::max(best, z[m + 1 + j]);
  }
  for (std::size_t n = 0; n < best; ++n) report.found.push_back(n);

  if (best == 0) {
    report.verdict = DVerdict::EmptyUpToDepth;
  } else if (best == m) {
    report.verdict = DVerdict::GrowingUpToDepth;
  } else {
    report.verdict = DVerdict::BoundedUpToDepth;
  }
  return report;
}

ExactDBound d_set_exact(const DigitSeq& target, const DigitSeq& source,
                        std::optional<std::size_t> search_start) {
  if (!target.is_infinite() || !source.is_infinite()) {
    throw Error(ErrorKind::Domain, "exact overlap sets need eventually periodic inputs");
  }
  const std::size_t start = default_start(target, source, search_start);
  const std::size_t end = std::max(start, source.preperiod().size()) + source.period().size();
  ExactDBound out;
  std::size_t best = 0;
  for (std::size_t j = start; j < end; ++j) {
    const DigitSeq tail = source.shifted(j);
    const LexResult cmp = lex_compare(target, tail, agreement_horizon(target, tail));
    if (cmp.order == Order::EqualUpToHorizon) {
      out.bounded = false;
      return out;
    }
    best = std::max(best, cmp.index);
  }
  if (best > 0) out.sup = best - 1;
  return out;
}

SpecReport has_specification(const DigitSeq& u, const DigitSeq& v, std::size_t depth_n,
                             std::size_t depth_j, std::optional<double> beta) {
  SpecReport r;
  r.d_u = d_set(v, u, depth_n, depth_j);
  r.d_v = d_set(u, v, depth_n, depth_j);
  r.degenerate = u == v;
  r.regime = !beta ? Regime::Unknown : (*beta > 2 ? Regime::Applicable : Regime::BetaAtMostTwo);

  if (u.is_infinite() && v.is_infinite()) {
    r.exact = true;
    if (!u.contains_digit(v[0]) && !v.contains_digit(u[0])) {
      r.verdict = SpecVerdict::Yes;
      r.certificate = Certificate::DigitDisjoint;
      return r;
    }
    const ExactDBound du = d_set_exact(v, u);
    const ExactDBound dv = d_set_exact(u, v);
    if (du.bounded && dv.bounded) {
      r.verdict = SpecVerdict::Yes;
      r.certificate = Certificate::PeriodicStructure;
    } else {
      r.verdict = SpecVerdict::LikelyNo;
    }
    return r;
  }
  if (r.d_u.verdict == DVerdict::GrowingUpToDepth || r.d_v.verdict == DVerdict::GrowingUpToDepth) {
    r.verdict = SpecVerdict::LikelyNo;
  } else {
    r.verdict = SpecVerdict::Inconclusive;
  }
  return r;
}

SpecReport has_specification(const SubshiftSpec& spec, std::size_t depth_n, std::size_t depth_j,
                             std::optional<double> beta) {
  return has_specification(spec.u, spec.v, depth_n, depth_j, beta);
}

const char* to_string(Order o) {
  switch (o) {
    case Order::Less: return "LT";
    case Order::EqualUpToHorizon: return "EQ";
    case Order::Greater: return "GT";
  }
  return "?";
}

const char* to_string(DVerdict v) {
  switch (v) {
    case DVerdict::EmptyUpToDepth: return "EmptyUpToDepth";
    case DVerdict::BoundedUpToDepth: return "BoundedUpToDepth";
    case DVerdict::GrowingUpToDepth: return "GrowingUpToDepth";
  }
  return "?";
}

const char* to_string(SpecVerdict v) {
  switch (v) {
    case SpecVerdict::Yes: return "Yes";
    case SpecVerdict::LikelyNo: return "LikelyNo";
    case SpecVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

const char* to_string(Certificate c) {
  switch (c) {
    case Certificate::None: return "none";
    case Certificate::DigitDisjoint: return "digit-disjoint";
    case Certificate::PeriodicStructure: return "periodic-structure";
  }
  return "?";
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Applicable: return "beta>2";
    case Regime::BetaAtMostTwo: return "beta<=2";
    case Regime::Unknown: return "unknown";
  }
  return "?";
}

}  // namespace abshift
