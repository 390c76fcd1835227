#pragma once

// The curve alpha(beta) fixed by a prescribed expansion u of 0, parameters
// realizing a prescribed expansion v of 1, the sets E_N, the coding map phi
// and the separation constants used to bound phi's Lipschitz ratio.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "abshift/digit_seq.hpp"
#include "abshift/expansion.hpp"
#include "abshift/numerics.hpp"
#include "abshift/real.hpp"

namespace abshift {

struct ZeroExpansionSpec {
  DigitSeq u;
  Digit K = 0;           // max digit of u
  bool strict = false;   // U2 checked as u < sigma^n u

  // Checks u_0 = 0, u <= sigma^n u for n >= 1 (strict if requested) and that
  // u is eventually periodic.
  static ZeroExpansionSpec make(DigitSeq u, bool strict = false);
};

// (beta - 1) sum_j u_j beta^{-(j+1)}, in closed form.
Real alpha_of_beta(const ZeroExpansionSpec& spec, const Real& beta, const PrecisionContext& ctx);

// d alpha / d beta of the same closed form.
Real alpha_derivative(const ZeroExpansionSpec& spec, const Real& beta, const PrecisionContext& ctx);

// K / (N - 2), the bound on alpha over E_N.
Real alpha_bound(int N, int K, const PrecisionContext& ctx = {});

// Upper bound on |alpha'| over (N - 1 - alpha_N, N] (both terms of alpha' are
// monotone in beta, so their values at the left end dominate).
Real alpha_derivative_sup(const ZeroExpansionSpec& spec, int N, const PrecisionContext& ctx);

// Checks v_0 = N-1, 1 <= v_i <= N-2 (i >= 1) and N >= K+3.
void check_en_word(const ZeroExpansionSpec& spec, const DigitSeq& v, int N);

struct SolvedParam {
  ParamPoint point;
  std::size_t verified_depth = 0;
  std::size_t ambiguous_digits = 0;  // boundary hits resolved by convention
  long working_bits = 0;
};

// Root of sum_i (v_i - u_i) beta^{-(i+1)} = 1 on (N-2, N], i.e. the beta whose
// (alpha(beta), beta)-expansions of 0 and 1 are u and v. The result is
// verified by recomputing both expansions to verify_depth digits.
SolvedParam solve_beta(const ZeroExpansionSpec& spec, const DigitSeq& v, int N,
                       const PrecisionContext& ctx, std::size_t verify_depth = 100);

struct ENWitness {
  int N = 0;
  Real beta;
  Real alpha;
  Word v_prefix;
  std::size_t depth = 0;
  Real phi;
  std::optional<DigitSeq> v_exact;  // set for constructed members
};

enum class Membership { Member, NotMember, Inconclusive };

struct MembershipResult {
  Membership status = Membership::Inconclusive;
  std::optional<ENWitness> witness;
  std::string reason;
};

// Tests the digit window of v^{alpha(beta), beta} up to `depth`.
MembershipResult en_membership(const ZeroExpansionSpec& spec, int N, const Real& beta,
                               std::size_t depth, const PrecisionContext& ctx);

// Witness for a solved parameter, with the exact v attached.
ENWitness make_witness(const SolvedParam& solved, const DigitSeq& v, int N, std::size_t depth,
                       const PrecisionContext& ctx);

// sum_{k>=1} v_k / N^k. Exact when the witness carries v_exact; otherwise the
// partial sum over k < depth with tail bound (N-2) N^{1-depth} / (N-1).
SeriesValue phi_map(const ENWitness& w, const PrecisionContext& ctx = {});

// Delta_N(x, y): the smaller of the two digit-gap lower bounds.
Real delta_separation(int N, int K, const Real& x, const Real& y, const ZeroExpansionSpec& spec,
                      const PrecisionContext& ctx);

// C_N = (1/N)(1 - (N-3)/(N-2-alpha_N)); requires N >= K+3.
Real c_lower_bound(int N, int K, const PrecisionContext& ctx = {});

struct ScanOptions {
  int grid = 64;             // uniform grid points on (N-2, N]
  std::size_t depth = 40;    // digits examined per membership test
  std::size_t vlen = 1;      // length of the periodic block of constructed v
  unsigned workers = 1;
};

struct ScanResult {
  std::vector<ENWitness> exact;      // solved from (N-1) w^inf, sorted by beta
  std::vector<ENWitness> grid;       // grid points passing the window test
  std::vector<Real> inconclusive;    // grid points with ambiguous digits
  std::vector<std::string> failed;   // words that could not be solved
};

ScanResult scan_en(const ZeroExpansionSpec& spec, int N, const ScanOptions& opts,
                   const PrecisionContext& ctx);

struct LipschitzReport {
  Real max_ratio;
  Real bound;  // N (2 + 2 sup|alpha'|) / C_N
  std::size_t pairs_used = 0;
  std::size_t pairs_skipped = 0;
};

LipschitzReport lipschitz_ratio_report(std::span<const ENWitness> witnesses,
                                       const ZeroExpansionSpec& spec, const PrecisionContext& ctx);

// Quantities of the separation chain for a witness pair whose v sequences
// first differ at index m (v_i equal for i < m).
struct PairChain {
  std::size_t first_difference = 0;  // m >= 1
  Real phi_gap;                      // |phi(b) - phi(b')|
  Real phi_cap;                      // N^{-(m-1)}
  Real orbit_gap;                    // |T^m(1) - T'^m(1)| from the P recursion
  Real delta;                        // Delta_N(min beta, max beta)
  Real beta_gap;                     // |b - b'|
  Real beta_floor;                   // orbit_gap / (N^m (2 + 2 sup|alpha'|))
};

std::optional<PairChain> pair_chain(const ENWitness& a, const ENWitness& b,
                                    const ZeroExpansionSpec& spec, const PrecisionContext& ctx);

}  // namespace abshift
