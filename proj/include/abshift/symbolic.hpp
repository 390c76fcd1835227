#pragma once

// Lexicographic order on digit sequences, the subshift cut out by an extremal
// pair (u, v), its language, and the overlap sets that decide specification.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abshift/digit_seq.hpp"

namespace abshift {

enum class Order { Less, EqualUpToHorizon, Greater };

struct LexResult {
  Order order = Order::EqualUpToHorizon;
  std::size_t index = 0;  // first differing index, or the horizon reached
};

// Compares a and b on indices [0, horizon). Finite words are compared on their
// common length. Two infinite sequences equal on agreement_horizon(a, b)
// digits are reported EqualUpToHorizon even for a larger horizon.
LexResult lex_compare(const DigitSeq& a, const DigitSeq& b, std::size_t horizon);

// Exact order for infinite eventually periodic sequences.
Order compare_exact(const DigitSeq& a, const DigitSeq& b);

// sigma^n s.
DigitSeq shift_by(const DigitSeq& s, std::size_t n);

// Sigma = { x : u <= sigma^n x <= v for all n >= 0 } for infinite u, v.
struct SubshiftSpec {
  DigitSeq u;
  DigitSeq v;
  int alphabet_size = 0;

  // Validates that u and v are infinite and satisfy
  // u <= sigma^n u <= v and u <= sigma^n v <= v (checked exactly).
  static SubshiftSpec make(DigitSeq u, DigitSeq v, int alphabet_size = 0);

  bool degenerate() const { return u == v; }
};

// Exact check of the two order chains for all n >= 0.
bool order_invariants_hold(const DigitSeq& u, const DigitSeq& v);

// Same chains on finite words: shifts n <= max_shift, compared on `horizon`
// digits (both words must be long enough).
bool order_invariants_hold(const Word& u, const Word& v, std::size_t max_shift, std::size_t horizon);

// [w] intersects Sigma. Tracks the tightest lower bound sigma^a u and upper
// bound sigma^b v on the continuation; w is admissible iff every digit fits
// between them and the final bounds are ordered.
bool is_admissible_word(const Word& w, const SubshiftSpec& spec);

inline constexpr std::uint64_t kDefaultWordBudget = std::uint64_t{1} << 48;

// #L_n for n = 1..max_len. Requires alphabet_size^max_len <= budget.
std::vector<std::uint64_t> count_language(const SubshiftSpec& spec, std::size_t max_len,
                                          std::uint64_t budget = kDefaultWordBudget);

struct EntropyEstimate {
  double value = 0.0;
  double stderr_value = 0.0;
  std::vector<std::uint64_t> counts;
};

// Slope of log #L_n against n over n = 1..max_len.
EntropyEstimate entropy_estimate(const SubshiftSpec& spec, std::size_t max_len,
                                 std::uint64_t budget = kDefaultWordBudget);

enum class DVerdict { EmptyUpToDepth, BoundedUpToDepth, GrowingUpToDepth };

struct DSetReport {
  std::vector<std::size_t> found;  // sorted n with the (n+1)-prefix found
  std::size_t depth_n = 0;
  std::size_t depth_j = 0;
  std::size_t search_start = 0;
  DVerdict verdict = DVerdict::EmptyUpToDepth;

  std::optional<std::size_t> max_found() const {
    return found.empty() ? std::nullopt : std::optional(found.back());
  }
};

// All n <= depth_n such that target[0..n] = source[j..j+n] for some
// j in [start, depth_j]. start defaults to 1 when target == source, else 0.
DSetReport d_set(const DigitSeq& target, const DigitSeq& source, std::size_t depth_n,
                 std::size_t depth_j, std::optional<std::size_t> search_start = std::nullopt);

struct ExactDBound {
  bool bounded = true;
  std::optional<std::size_t> sup;  // empty set when bounded and no value
};

// Exact supremum of the overlap set for infinite eventually periodic inputs.
ExactDBound d_set_exact(const DigitSeq& target, const DigitSeq& source,
                        std::optional<std::size_t> search_start = std::nullopt);

enum class SpecVerdict { Yes, LikelyNo, Inconclusive };
enum class Certificate { None, DigitDisjoint, PeriodicStructure };
enum class Regime { Applicable, BetaAtMostTwo, Unknown };

struct SpecReport {
  SpecVerdict verdict = SpecVerdict::Inconclusive;
  Certificate certificate = Certificate::None;
  bool exact = false;      // verdict holds at every depth
  bool degenerate = false; // u == v
  Regime regime = Regime::Unknown;
  DSetReport d_u;          // prefixes of v found in u
  DSetReport d_v;          // prefixes of u found in v
};

// Specification via boundedness of D(u) and D(v). beta is only used for the
// applicability flag (the criterion is established for beta > 2).
SpecReport has_specification(const DigitSeq& u, const DigitSeq& v, std::size_t depth_n,
                             std::size_t depth_j, std::optional<double> beta = std::nullopt);
SpecReport has_specification(const SubshiftSpec& spec, std::size_t depth_n, std::size_t depth_j,
                             std::optional<double> beta = std::nullopt);

const char* to_string(Order o);
const char* to_string(DVerdict v);
const char* to_string(SpecVerdict v);
const char* to_string(Certificate c);
const char* to_string(Regime r);

}  // namespace abshift
