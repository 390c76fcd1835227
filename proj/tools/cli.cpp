#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "abshift/error.hpp"
#include "abshift/expansion.hpp"
#include "abshift/fractal.hpp"
#include "abshift/numerics.hpp"
#include "abshift/parameter.hpp"
#include "abshift/symbolic.hpp"

namespace abshift::cli {
namespace {

using Record = nlohmann::ordered_json;

enum class Format { JsonLines, Csv };

struct RunConfig {
  std::string command;
  std::optional<std::string> alpha;
  std::optional<std::string> beta;
  std::optional<std::string> u_preperiod;
  std::optional<std::string> u_period;
  std::optional<std::string> v;
  std::optional<int> N;
  std::optional<std::size_t> depth;
  int grid = 64;
  std::size_t vlen = 1;
  long precision_bits = 256;
  Format format = Format::JsonLines;
  std::optional<std::string> out_path;
  unsigned workers = 1;
  std::optional<std::string> preset;
};

// Sequences named by --seed-preset.
struct Preset {
  std::optional<DigitSeq> u;
  std::optional<DigitSeq> v;
  bool cantor = false;
};

const std::map<std::string, Preset>& presets() {
  static const std::map<std::string, Preset> table = {
      {"beta-shift", {DigitSeq::periodic({0}), std::nullopt, false}},
      {"k1", {DigitSeq::eventually_periodic({0}, {1}), std::nullopt, false}},
      {"k2", {DigitSeq::eventually_periodic({0}, {1, 2}), std::nullopt, false}},
      {"k3", {DigitSeq::eventually_periodic({0}, {1, 3}), std::nullopt, false}},
      {"golden-mean", {DigitSeq::periodic({0}), DigitSeq::periodic({1, 0}), false}},
      {"full-shift", {DigitSeq::periodic({0}), DigitSeq::periodic({1}), false}},
      {"fixed-point", {DigitSeq::periodic({0}), DigitSeq::periodic({0}), false}},
      {"cantor", {std::nullopt, std::nullopt, true}},
  };
  return table;
}

class RecordWriter {
 public:
  RecordWriter(std::ostream& os, Format f) : os_(os), format_(f) {}

  void write(const Record& r) {
    if (format_ == Format::JsonLines) {
      os_ << r.dump() << '\n';
      return;
    }
    std::vector<std::string> keys;
    for (auto it = r.begin(); it != r.end(); ++it) keys.push_back(it.key());
    if (keys != header_) {
      header_ = keys;
      for (std::size_t i = 0; i < keys.size(); ++i) os_ << (i ? "," : "") << csv_field(keys[i]);
      os_ << '\n';
    }
    std::size_t i = 0;
    for (auto it = r.begin(); it != r.end(); ++it, ++i) os_ << (i ? "," : "") << csv_value(*it);
    os_ << '\n';
  }

 private:
  static std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }

  static std::string csv_value(const Record& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return csv_field(v.get<std::string>());
    if (v.is_array()) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + (v[i].is_string() ? v[i].get<std::string>() : v[i].dump());
      return csv_field(s);
    }
    return v.dump();
  }

  std::ostream& os_;
  Format format_;
  std::vector<std::string> header_;
};

class Command {
 public:
  Command(const RunConfig& cfg, RecordWriter& w)
      : cfg_(cfg), w_(w), ctx_(PrecisionContext::with_bits(cfg.precision_bits)) {
    if (cfg.preset) preset_ = presets().at(*cfg.preset);
  }

  int expand();
  int check_spec();
  int scan();
  int dimension();
  int entropy();

 private:
  int digits_() const { return static_cast<int>(std::max(1L, cfg_.precision_bits / 3)); }

  void put_real(Record& r, const std::string& key, const Real& x) const {
    r[key + "_dec"] = x.to_decimal(digits_());
    r[key + "_hex"] = x.to_hex();
  }

  std::optional<DigitSeq> u_from_flags() const {
    if (cfg_.u_period) {
      const Word pre = cfg_.u_preperiod ? parse_word(*cfg_.u_preperiod) : Word{};
      const Word per = parse_word(*cfg_.u_period);
      if (per.empty()) throw Error(ErrorKind::Domain, "--u-period must be non-empty");
      return DigitSeq::eventually_periodic(pre, per);
    }
    if (cfg_.u_preperiod) throw Error(ErrorKind::Domain, "--u-preperiod needs --u-period");
    return preset_.u;
  }

  DigitSeq u_or_zero() const { return u_from_flags().value_or(DigitSeq::periodic({0})); }

  // --v "a,b,c" is a followed by (b,c) repeated.
  std::optional<DigitSeq> v_from_flags() const {
    if (cfg_.v) {
      const Word w = parse_word(*cfg_.v);
      if (w.size() < 2) throw Error(ErrorKind::Domain, "--v needs a first digit and a period");
      return DigitSeq::eventually_periodic({w.front()}, Word(w.begin() + 1, w.end()));
    }
    return preset_.v;
  }

  int require_N() const {
    if (!cfg_.N) throw Error(ErrorKind::Domain, "--N is required");
    return *cfg_.N;
  }

  // Parameter given on the command line, parsed at the precision needed to
  // follow `steps` iterations.
  ParamPoint parse_point(std::size_t steps) const {
    const Real b64 = Real::parse(*cfg_.beta, 64);
    if (!(b64 > 1)) throw Error(ErrorKind::Domain, "beta must exceed 1");
    const long bits = orbit_precision(ctx_, b64, steps);
    return ParamPoint::make(Real::parse(*cfg_.alpha, bits), Real::parse(*cfg_.beta, bits));
  }

  Record witness_record(const ENWitness& w) const {
    Record r;
    r["beta_hex"] = w.beta.to_hex();
    r["beta_dec"] = w.beta.to_decimal(digits_());
    r["alpha_hex"] = w.alpha.to_hex();
    r["v_prefix"] = w.v_prefix;
    r["phi_hex"] = w.phi.to_hex();
    r["depth"] = w.depth;
    return r;
  }

  static Record d_record(const DSetReport& d) {
    Record r;
    r["found"] = d.found;
    r["verdict"] = to_string(d.verdict);
    if (d.max_found()) {
      r["max"] = *d.max_found();
    } else {
      r["max"] = nullptr;
    }
    return r;
  }

  const RunConfig& cfg_;
  RecordWriter& w_;
  PrecisionContext ctx_;
  Preset preset_;
};

int Command::expand() {
  const std::size_t depth = cfg_.depth.value_or(20);
  if (depth < 1) throw Error(ErrorKind::Domain, "--depth must be positive");
  Record header;
  header["record"] = "header";
  std::optional<ParamPoint> p;
  PrecisionContext run_ctx = ctx_;

  if (cfg_.alpha && cfg_.beta) {
    p = parse_point(depth);
  } else if (cfg_.alpha || cfg_.beta) {
    throw Error(ErrorKind::Domain, "--alpha and --beta go together");
  } else {
    const auto v = v_from_flags();
    if (!v) throw Error(ErrorKind::Domain, "expand needs --alpha/--beta or --v with --N");
    const int N = require_N();
    const ZeroExpansionSpec spec = ZeroExpansionSpec::make(u_or_zero());
    const SolvedParam s = solve_beta(spec, *v, N, ctx_, std::max<std::size_t>(depth, 100));
    p = s.point;
    run_ctx = PrecisionContext(s.working_bits, ctx_.abs_tol);
    header["u"] = spec.u.to_string();
    header["v"] = v->to_string();
    header["N"] = N;
    header["verified_depth"] = s.verified_depth;
    header["ambiguous_digits"] = s.ambiguous_digits;
  }
  put_real(header, "alpha", p->alpha);
  put_real(header, "beta", p->beta);
  header["k"] = p->k;
  header["depth"] = depth;
  w_.write(header);

  const Orbit zero = expansion_of_zero(*p, depth, run_ctx);
  const Orbit one = expansion_of_one(*p, depth, run_ctx);
  auto flagged = [](const Orbit& o, std::size_t i) {
    return std::find(o.ambiguous.begin(), o.ambiguous.end(), i) != o.ambiguous.end();
  };
  for (std::size_t i = 0; i < depth; ++i) {
    Record r;
    r["index"] = i;
    r["u"] = zero.digits[i];
    r["v"] = one.digits[i];
    r["u_ambiguous"] = flagged(zero, i);
    r["v_ambiguous"] = flagged(one, i);
    w_.write(r);
  }

  const SeriesValue r0 = reconstruct(DigitSeq::finite(zero.digits), *p, run_ctx);
  const SeriesValue r1 = reconstruct(DigitSeq::finite(one.digits), *p, run_ctx);
  Record trailer;
  trailer["record"] = "residual";
  put_real(trailer, "u_residual", abs(r0.value));
  put_real(trailer, "u_tail_bound", r0.tail.tail_bound);
  put_real(trailer, "v_residual", abs(r1.value - 1));
  put_real(trailer, "v_tail_bound", r1.tail.tail_bound);
  w_.write(trailer);
  return kOk;
}

int Command::check_spec() {
  const std::size_t depth = cfg_.depth.value_or(100);
  std::optional<double> beta;
  DigitSeq u, v;
  if (cfg_.alpha && cfg_.beta) {
    // Expansions of a concrete parameter are only known to `depth` digits.
    const ParamPoint p = parse_point(2 * depth + 1);
    u = DigitSeq::finite(expansion_of_zero(p, 2 * depth + 1, ctx_).digits, p.k);
    v = DigitSeq::finite(expansion_of_one(p, 2 * depth + 1, ctx_).digits, p.k);
    beta = p.beta.to_double();
  } else {
    const auto vv = v_from_flags();
    if (!vv) throw Error(ErrorKind::Domain, "check-spec needs --v, a preset with v, or --alpha/--beta");
    u = u_or_zero();
    v = *vv;
    SubshiftSpec::make(u, v);  // throws unless the order chains hold
    if (cfg_.beta) {
      beta = Real::parse(*cfg_.beta, 64).to_double();
    } else if (cfg_.N) {
      const ZeroExpansionSpec spec = ZeroExpansionSpec::make(u);
      beta = solve_beta(spec, v, *cfg_.N, ctx_).point.beta.to_double();
    }
  }
  const SpecReport rep = has_specification(u, v, depth, depth, beta);
  Record r;
  r["u"] = u.is_infinite() ? u.to_string() : format_word(u.prefix(std::min<std::size_t>(u.stored_length(), 20)));
  r["v"] = v.is_infinite() ? v.to_string() : format_word(v.prefix(std::min<std::size_t>(v.stored_length(), 20)));
  r["verdict"] = to_string(rep.verdict);
  r["certificate"] = to_string(rep.certificate);
  r["exact"] = rep.exact;
  r["degenerate"] = rep.degenerate;
  r["regime"] = to_string(rep.regime);
  r["depth_n"] = rep.d_u.depth_n;
  r["depth_j"] = rep.d_u.depth_j;
  r["d_u"] = d_record(rep.d_u);
  r["d_v"] = d_record(rep.d_v);
  w_.write(r);
  return kOk;
}

int Command::scan() {
  const int N = require_N();
  const ZeroExpansionSpec spec = ZeroExpansionSpec::make(u_or_zero());
  ScanOptions opts;
  opts.grid = cfg_.grid;
  opts.depth = cfg_.depth.value_or(40);
  opts.vlen = cfg_.vlen;
  opts.workers = cfg_.workers;
  const ScanResult res = scan_en(spec, N, opts, ctx_);
  for (const ENWitness& w : res.exact) w_.write(witness_record(w));

  Record t;
  t["record"] = "lipschitz";
  t["witnesses"] = res.exact.size();
  t["grid_members"] = res.grid.size();
  t["grid_inconclusive"] = res.inconclusive.size();
  t["failed_words"] = res.failed.size();
  int code = kOk;
  if (res.exact.size() >= 2) {
    const LipschitzReport rep = lipschitz_ratio_report(res.exact, spec, ctx_);
    put_real(t, "max_ratio", rep.max_ratio);
    put_real(t, "bound", rep.bound);
    t["pairs_used"] = rep.pairs_used;
    t["pairs_skipped"] = rep.pairs_skipped;
    t["within_bound"] = rep.max_ratio <= rep.bound;
    if (!(rep.max_ratio <= rep.bound)) code = kVerification;
  } else {
    t["max_ratio_dec"] = nullptr;
    t["max_ratio_hex"] = nullptr;
    t["bound_dec"] = nullptr;
    t["bound_hex"] = nullptr;
    t["pairs_used"] = 0;
    t["pairs_skipped"] = 0;
    t["within_bound"] = nullptr;
  }
  w_.write(t);
  return code;
}

int Command::dimension() {
  const std::size_t depth = cfg_.depth.value_or(7);
  Record r;
  if (preset_.cantor) {
    const IfsSpec ifs = IfsSpec::cantor(ctx_);
    const std::vector<double> pts = attractor_sample(ifs, depth + 3);
    std::vector<double> eps;
    for (std::size_t k = 1; k <= depth + 1; ++k) eps.push_back(std::pow(3.0, -static_cast<double>(k)));
    const DimEstimate box = box_dimension(pts, eps);
    r["N"] = nullptr;
    r["moran"] = moran_dimension(ifs, ctx_).value;
    r["paper_formula"] = nullptr;
    r["boxcount"] = box.value;
    r["boxcount_stderr"] = box.stderr_value;
    r["discrepancy"] = false;
    w_.write(r);
    return kOk;
  }
  const int N = require_N();
  const ZeroExpansionSpec spec = ZeroExpansionSpec::make(u_or_zero());
  if (N < spec.K + 3) {
    throw Error(ErrorKind::Precondition, "N must be at least K + 3 = " + std::to_string(spec.K + 3));
  }
  const DimensionReport rep = dimension_report(N, depth, kDefaultSampleBudget, ctx_);
  r["N"] = N;
  r["moran"] = rep.moran;
  r["paper_formula"] = rep.paper_formula ? Record(*rep.paper_formula) : Record(nullptr);
  r["boxcount"] = rep.boxcount ? Record(rep.boxcount->value) : Record(nullptr);
  r["boxcount_stderr"] = rep.boxcount ? Record(rep.boxcount->stderr_value) : Record(nullptr);
  r["discrepancy"] = rep.discrepancy;
  w_.write(r);
  return kOk;
}

int Command::entropy() {
  const std::size_t L = cfg_.depth.value_or(25);
  const auto v = v_from_flags();
  if (!v) throw Error(ErrorKind::Domain, "entropy needs --v or a preset with v");
  const SubshiftSpec spec = SubshiftSpec::make(u_or_zero(), *v);
  const EntropyEstimate est = entropy_estimate(spec, L);
  for (std::size_t n = 1; n <= est.counts.size(); ++n) {
    Record r;
    r["n"] = n;
    r["count"] = est.counts[n - 1];
    w_.write(r);
  }
  Record fit;
  fit["entropy"] = est.value;
  fit["entropy_stderr"] = est.stderr_value;
  fit["max_len"] = L;
  w_.write(fit);
  return kOk;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Resource:
      return kResource;
    case ErrorKind::Construction:
    case ErrorKind::Verification:
    case ErrorKind::InconsistentDigits:
    case ErrorKind::Bracket:
    case ErrorKind::DegenerateFit:
      return kVerification;
    default:
      return kUsage;
  }
}

void add_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--alpha", cfg.alpha, "alpha in [0,1)");
  sub->add_option("--beta", cfg.beta, "beta > 1");
  sub->add_option("--u-preperiod", cfg.u_preperiod, "preperiod of u, comma-separated digits");
  sub->add_option("--u-period", cfg.u_period, "period of u, comma-separated digits");
  sub->add_option("--v", cfg.v, "v as first digit followed by its period, e.g. 4,1");
  sub->add_option("--N", cfg.N, "E_N index");
  sub->add_option("--depth", cfg.depth, "digits, search depth, sample depth or max word length");
  sub->add_option("--grid", cfg.grid, "grid points on (N-2, N]")->check(CLI::Range(2, 1 << 20));
  sub->add_option("--vlen", cfg.vlen, "period length of constructed v words")->check(CLI::Range(1, 16));
  sub->add_option("--precision-bits", cfg.precision_bits, "working precision")->check(CLI::Range(64L, 1L << 20));
  sub->add_option("--format", cfg.format, "json-lines or csv")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"json-lines", Format::JsonLines}, {"csv", Format::Csv}}));
  sub->add_option("--out", cfg.out_path, "output file (default stdout)");
  sub->add_option("--workers", cfg.workers, "worker threads for scan")->check(CLI::Range(1u, 256u));
  std::vector<std::string> names;
  for (const auto& [name, _] : presets()) names.push_back(name);
  sub->add_option("--seed-preset", cfg.preset, "named u/v family")->check(CLI::IsMember(names));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Expansions, specification and parameter sets of (alpha, beta)-shifts"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"expand", "digits of u and v with reconstruction residuals"},
      {"check-spec", "overlap sets and the specification verdict"},
      {"scan", "E_N witnesses and the Lipschitz report"},
      {"dimension", "Moran and box-counting dimension"},
      {"entropy", "word counts and entropy fit"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_flags(sub, cfg);
    sub->callback([&cfg, name = name] { cfg.command = name; });
  }

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (cfg.out_path) {
    file.open(*cfg.out_path);
    if (!file) {
      err << "error: cannot open " << *cfg.out_path << '\n';
      return kUsage;
    }
    sink = &file;
  }
  RecordWriter writer(*sink, cfg.format);
  try {
    Command cmd(cfg, writer);
    if (cfg.command == "expand") return cmd.expand();
    if (cfg.command == "check-spec") return cmd.check_spec();
    if (cfg.command == "scan") return cmd.scan();
    if (cfg.command == "dimension") return cmd.dimension();
    return cmd.entropy();
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  }
}

}  // namespace abshift::cli
