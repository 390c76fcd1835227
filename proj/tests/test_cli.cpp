#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "abshift/real.hpp"
#include "cli.hpp"

using json = nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "abshift-cli");
  std::ostringstream out, err;
  const int code = abshift::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<json> records(const std::string& text) {
  std::vector<json> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) rows.push_back(json::parse(line));
  }
  return rows;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<int> column(const std::vector<json>& rows, const char* key) {
  std::vector<int> out;
  for (const json& r : rows) {
    if (r.contains("index")) out.push_back(r[key].get<int>());
  }
  return out;
}

}  // namespace

TEST_CASE("expand from alpha and beta") {
  const Result r = cli({"expand", "--alpha", "0", "--beta", "2", "--depth", "5"});
  REQUIRE(r.code == 0);
  const auto rows = records(r.out);
  REQUIRE(rows.size() == 7);
  CHECK(rows.front()["record"] == "header");
  CHECK(rows.front()["k"] == 2);
  CHECK(column(rows, "u") == std::vector<int>{0, 0, 0, 0, 0});
  CHECK(column(rows, "v") == std::vector<int>{1, 1, 1, 1, 1});
  CHECK(rows.back()["record"] == "residual");

  const Result q = cli({"expand", "--alpha", "0.5", "--beta", "2.5", "--depth", "4"});
  REQUIRE(q.code == 0);
  CHECK(column(records(q.out), "u") == std::vector<int>{0, 1, 2, 1});
}

TEST_CASE("expand from a prescribed pair solves beta") {
  const Result r = cli({"expand", "--u-period", "0", "--v", "4,1", "--N", "5", "--depth", "3"});
  REQUIRE(r.code == 0);
  const auto rows = records(r.out);
  const json& h = rows.front();
  CHECK(h["beta_dec"].get<std::string>().substr(0, 11) == "4.302775637");
  const abshift::Real beta = abshift::Real::parse(h["beta_hex"].get<std::string>(), 256);
  const abshift::Real want = (5 + sqrt(abshift::Real::ratio(13, 1, 256))) / 2;
  CHECK(abs(beta - want) <= abshift::Real::pow2(-200, 256));
  CHECK(column(rows, "v") == std::vector<int>{4, 1, 1});
}

TEST_CASE("check-spec verdicts") {
  auto one = [](std::vector<std::string> args) {
    const Result r = cli(std::move(args));
    REQUIRE(r.code == 0);
    const auto rows = records(r.out);
    REQUIRE(rows.size() == 1);
    return rows.front();
  };
  const json yes = one({"check-spec", "--u-period", "0", "--v", "4,1", "--N", "5", "--depth", "20"});
  CHECK(yes["verdict"] == "Yes");
  CHECK(yes["certificate"] == "digit-disjoint");
  CHECK(yes["d_u"]["found"].empty());
  CHECK(yes["d_v"]["found"].empty());

  const json no = one({"check-spec", "--u-period", "0", "--v", "1,0", "--depth", "30"});
  CHECK(no["verdict"] == "LikelyNo");
  CHECK(no["d_v"]["verdict"] == "GrowingUpToDepth");

  const json fixed = one({"check-spec", "--seed-preset", "fixed-point", "--depth", "5"});
  CHECK(fixed["degenerate"] == true);
}

TEST_CASE("scan emits witness records with the fixed key set") {
  const Result r = cli({"scan", "--u-period", "0", "--N", "5", "--vlen", "1"});
  REQUIRE(r.code == 0);
  const auto rows = records(r.out);
  REQUIRE(rows.size() == 4);
  const std::set<std::string> keys{"beta_hex", "beta_dec", "alpha_hex", "v_prefix", "phi_hex", "depth"};
  std::vector<std::string> betas;
  for (int i = 0; i < 3; ++i) {
    std::set<std::string> got;
    for (auto it = rows[i].begin(); it != rows[i].end(); ++it) got.insert(it.key());
    CHECK(got == keys);
    CHECK(rows[i]["v_prefix"][0] == 4);
    betas.push_back(rows[i]["beta_dec"]);
  }
  CHECK(betas[0] < betas[1]);
  CHECK(betas[1] < betas[2]);
  CHECK(rows[3]["record"] == "lipschitz");
  CHECK(rows[3]["witnesses"] == 3);

  const Result par = cli({"scan", "--u-period", "0", "--N", "5", "--vlen", "2", "--workers", "3"});
  const Result seq = cli({"scan", "--u-period", "0", "--N", "5", "--vlen", "2", "--workers", "1"});
  CHECK(par.code == 0);
  CHECK(par.out == seq.out);
}

TEST_CASE("dimension records") {
  const Result r = cli({"dimension", "--N", "6"});
  REQUIRE(r.code == 0);
  const json d = records(r.out).front();
  CHECK(d["moran"].get<double>() == doctest::Approx(0.7737).epsilon(1e-4));
  CHECK(d["paper_formula"].get<double>() == doctest::Approx(0.6131).epsilon(1e-4));
  CHECK(d["discrepancy"] == true);
  CHECK(d.size() == 6);

  const json big = records(cli({"dimension", "--N", "1000000"}).out).front();
  CHECK(big["moran"].get<double>() > 0.99);
  CHECK(big["boxcount"].is_null());

  const json cantor = records(cli({"dimension", "--seed-preset", "cantor"}).out).front();
  CHECK(std::abs(cantor["boxcount"].get<double>() - std::log(2.0) / std::log(3.0)) < 0.05);
}

TEST_CASE("entropy records") {
  const auto golden = records(cli({"entropy", "--seed-preset", "golden-mean", "--depth", "10"}).out);
  REQUIRE(golden.size() == 11);
  CHECK(golden[0]["count"] == 2);
  CHECK(golden[9]["count"] == 144);
  const auto full = records(cli({"entropy", "--seed-preset", "full-shift", "--depth", "10"}).out);
  CHECK(full.back()["entropy"].get<double>() == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  const auto fixed = records(cli({"entropy", "--seed-preset", "fixed-point", "--depth", "10"}).out);
  CHECK(fixed.back()["entropy"].get<double>() == 0.0);
}

TEST_CASE("csv output writes a header per record shape") {
  const Result r = cli({"expand", "--alpha", "0.5", "--beta", "2.5", "--depth", "2", "--format", "csv"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 7);
  CHECK(ls[0].rfind("record,alpha_dec", 0) == 0);
  CHECK(ls[2] == "index,u,v,u_ambiguous,v_ambiguous");
  CHECK(ls[3] == "0,0,2,false,false");
  CHECK(ls[4] == "1,1,2,false,false");
  CHECK(ls[5].rfind("record,u_residual_dec", 0) == 0);

  const Result s = cli({"scan", "--u-period", "0", "--N", "5", "--format", "csv"});
  REQUIRE(s.code == 0);
  CHECK(lines(s.out)[0] == "beta_hex,beta_dec,alpha_hex,v_prefix,phi_hex,depth");
}

TEST_CASE("--out writes to a file") {
  const auto path = std::filesystem::temp_directory_path() / "abshift_cli_out.jsonl";
  std::filesystem::remove(path);
  const Result r = cli({"dimension", "--N", "5", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(records(buf.str()).front()["N"] == 5);
  std::filesystem::remove(path);
}

TEST_CASE("exit codes") {
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"expand", "--bogus"}).code == abshift::cli::kUsage);
  CHECK(cli({}).code == abshift::cli::kUsage);
  CHECK(cli({"expand", "--alpha", "1.5", "--beta", "2"}).code == abshift::cli::kUsage);
  CHECK(cli({"expand", "--alpha", "abc", "--beta", "2"}).code == abshift::cli::kUsage);
  CHECK(cli({"scan", "--N", "4", "--u-period", "0,3"}).code == abshift::cli::kUsage);
  CHECK(cli({"dimension", "--N", "2"}).code == abshift::cli::kUsage);
  CHECK(cli({"entropy", "--seed-preset", "nope"}).code == abshift::cli::kUsage);
  CHECK(cli({"expand", "--u-period", "0", "--v", "4,,1", "--N", "5"}).code == abshift::cli::kUsage);
  const Result big = cli({"entropy", "--seed-preset", "full-shift", "--depth", "60"});
  CHECK(big.code == abshift::cli::kResource);
  CHECK(big.err.find("resource") != std::string::npos);
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args{"check-spec", "--u-period", "0,1", "--v", "5,1,2", "--N", "6"};
  CHECK(cli(args).out == cli(args).out);
}
