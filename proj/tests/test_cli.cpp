#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dysthe/cli.hpp"
#include "dysthe/report_io.hpp"

using namespace dysthe;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "dysthe");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json parse(const CliRun& r) { return Json::parse(r.out); }

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "dysthe_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("cli: resonance query reports both methods in agreement") {
  const auto r = invoke({"resonance", "--N", "1", "--n", "0", "--j", "-4"});
  REQUIRE(r.code == kExitSuccess);
  const auto j = parse(r);
  CHECK(j["results"].size() == 2);
  CHECK(j["results"][0]["count"] == 6);
  CHECK(j["results"][1]["count"] == 6);
  CHECK(j["agree"] == true);
}

TEST_CASE("cli: resonance csv has the documented columns") {
  const auto r = invoke({"resonance", "--N", "3", "--n", "1", "--j", "5", "--format", "csv", "--method", "divisor"});
  REQUIRE(r.code == kExitSuccess);
  CHECK(r.out.rfind("N,n,j,count,method,runtime_ms\n", 0) == 0);
  CHECK(line_count(r.out) == 2);
}

TEST_CASE("cli: resonance growth and regime modes pass") {
  const auto g = invoke({"resonance", "--growth", "8,16"});
  CHECK(g.code == kExitSuccess);
  CHECK(parse(g)["growth"].size() == 2);
  const auto reg = invoke({"resonance", "--regime", "4"});
  CHECK(reg.code == kExitSuccess);
  CHECK(parse(reg)["regime"][0]["max_count"].get<int>() <= 3);
}

TEST_CASE("cli: randomized subcommands require a seed") {
  for (const char* cmd : {"strichartz-l6", "strichartz-lr", "l4", "dyadic", "bilinear", "trilinear"}) {
    const auto r = invoke({cmd});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("--seed") != std::string::npos);
    CHECK(r.out.empty());
  }
}

TEST_CASE("cli: usage errors exit with code 2") {
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"nonsense"}).code == kExitUsage);
  CHECK(invoke({"resonance", "--N", "abc"}).code == kExitUsage);
  CHECK(invoke({"picard"}).code == kExitUsage);
  CHECK(invoke({"picard", "--mode", "1:2"}).code == kExitUsage);
  CHECK(invoke({"illposed", "--m", "2"}).code == kExitUsage);
  CHECK(invoke({"l4", "--seed", "1", "--format", "xml"}).code == kExitUsage);
  CHECK(invoke({"viscous", "--mode", "1:1:0", "--mu", "-1"}).code == kExitUsage);
}

TEST_CASE("cli: unwritable output is reported as an I/O error") {
  const auto r = invoke({"energy", "--output", "/nonexistent-dir/out.json"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("cannot open output file") != std::string::npos);
}

TEST_CASE("cli: ratio sweeps are byte-identical across thread counts") {
  for (const char* cmd : {"strichartz-l6", "l4", "bilinear"}) {
    const auto a = invoke({cmd, "--seed", "11", "--trials", "4", "--sizes", "2,4", "--threads", "1"});
    const auto b = invoke({cmd, "--seed", "11", "--trials", "4", "--sizes", "2,4", "--threads", "4"});
    CHECK(a.code != kExitUsage);
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
  }
  const auto a = invoke({"dyadic", "--seed", "3", "--fields", "3", "--kmax", "3", "--threads", "1"});
  const auto b = invoke({"dyadic", "--seed", "3", "--fields", "3", "--kmax", "3", "--threads", "3"});
  CHECK(a.out == b.out);
}

TEST_CASE("cli: different seeds give different samples") {
  const auto a = invoke({"l4", "--seed", "1", "--trials", "3", "--sizes", "4"});
  const auto b = invoke({"l4", "--seed", "2", "--trials", "3", "--sizes", "4"});
  CHECK(a.out != b.out);
}

TEST_CASE("cli: sweep json carries the report and csv one row per sample") {
  const auto j = invoke({"strichartz-lr", "--seed", "4", "--r", "8", "--trials", "3", "--sizes", "2,4"});
  REQUIRE(j.code != kExitUsage);
  const auto doc = parse(j);
  CHECK(doc["seed"] == 4);
  CHECK(doc["report"]["samples"].get<int>() + doc["report"]["skipped"].get<int>() == 6);
  CHECK(doc["report"]["trend"].size() == 2);
  const auto c = invoke({"strichartz-lr", "--seed", "4", "--r", "8", "--trials", "3", "--sizes", "2,4", "--format", "csv"});
  CHECK(c.out.rfind("estimate_id,size_param,trial,lhs,rhs,ratio\n", 0) == 0);
  CHECK(line_count(c.out) == 7);
}

TEST_CASE("cli: config file supplies defaults and flags win") {
  const auto cfg = scratch("config.json");
  {
    std::ofstream f(cfg);
    f << R"({"seed": 9, "trials": 2, "sizes": [2, 4], "format": "csv"})";
  }
  const auto from_file = invoke({"l4", "--config", cfg.string()});
  REQUIRE(from_file.code != kExitUsage);
  CHECK(from_file.out.rfind("estimate_id,", 0) == 0);
  CHECK(line_count(from_file.out) == 5);

  const auto overridden = invoke({"l4", "--config", cfg.string(), "--format", "json", "--trials", "1"});
  REQUIRE(overridden.code != kExitUsage);
  const auto doc = parse(overridden);
  CHECK(doc["seed"] == 9);
  CHECK(doc["report"]["rows"].size() == 2);

  const auto direct = invoke({"l4", "--seed", "9", "--trials", "1", "--sizes", "2,4"});
  CHECK(direct.out == overridden.out);

  CHECK(invoke({"l4", "--config", scratch("missing.json").string()}).code == kExitUsage);
  const auto bad = scratch("bad.json");
  {
    std::ofstream f(bad);
    f << "{not json";
  }
  CHECK(invoke({"l4", "--config", bad.string()}).code == kExitUsage);
}

TEST_CASE("cli: output and plot data honour the output directory variable") {
  const auto dir = scratch("outdir");
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  ::setenv("DYSTHE_OUTPUT_DIR", dir.string().c_str(), 1);
  const auto r = invoke({"illposed", "--sweep", "8,16,32,64", "--output", "sweep.json", "--plotdata", "sweep.csv"});
  ::unsetenv("DYSTHE_OUTPUT_DIR");
  CHECK(r.code == kExitSuccess);
  CHECK(r.out.empty());
  const auto doc = Json::parse(slurp(dir / "sweep.json"));
  CHECK(doc["rows"].size() == 4);
  const auto plot = slurp(dir / "sweep.csv");
  CHECK(plot.rfind("log_m,log_scaled_peak\n", 0) == 0);
  CHECK(line_count(plot) == 5);
}

TEST_CASE("cli: empty plot data is a header-only file") {
  const auto path = scratch("empty_plot.csv");
  std::filesystem::remove(path);
  const auto r = invoke({"resonance", "--N", "2", "--n", "0", "--j", "0", "--plotdata", path.string()});
  CHECK(r.code == kExitSuccess);
  const auto text = slurp(path);
  CHECK(line_count(text) == 1);
}

TEST_CASE("cli: picard methods agree and read fields from json") {
  const auto r = invoke({"picard", "--mode", "3:1:0", "--mode", "-2:0.5:0.25", "--t", "0.1"});
  REQUIRE(r.code == kExitSuccess);
  CHECK(parse(r)["rel_diff"].get<double>() <= 1e-6);

  const auto u0 = scratch("u0.json");
  {
    std::ofstream f(u0);
    f << "[[3, 1.0, 0.0], [-2, 0.5, 0.25]]";
  }
  const auto from_file = invoke({"picard", "--u0", u0.string(), "--t", "0.1"});
  CHECK(from_file.code == kExitSuccess);
  CHECK(parse(from_file)["exact"] == parse(r)["exact"]);
  CHECK(invoke({"picard", "--u0", u0.string(), "--mode", "1:1:0"}).code == kExitUsage);
}

TEST_CASE("cli: illposed single frequency reports the closed-form deviation") {
  const auto r = invoke({"illposed", "--m", "16", "--quadrature"});
  CHECK(r.code != kExitUsage);
  const auto doc = parse(r);
  CHECK(doc["m"] == 16);
  CHECK(doc["quadrature_rel_diff"].get<double>() <= 1e-6);
  CHECK((r.code == kExitSuccess) == (doc["rel_dev"].get<double>() <= 0.1));
}

TEST_CASE("cli: viscous trajectory and step halving") {
  const auto r = invoke({"viscous", "--mode", "1:0.3:0", "--mode", "-2:0.1:0.1", "--mu", "0.1", "--dt", "0.02",
                         "--steps", "10", "--halving"});
  REQUIRE(r.code == kExitSuccess);
  const auto doc = parse(r);
  CHECK(doc["trajectory"].size() == 11);
  CHECK(doc["blew_up"] == false);
  const double ratio = doc["step_halving_ratio"].get<double>();
  CHECK(ratio >= 12);
  CHECK(ratio <= 20);

  const auto csv = invoke({"viscous", "--mode", "1:0.3:0", "--steps", "4", "--format", "csv"});
  CHECK(csv.out.rfind("step,time,h2_norm,I_value\n", 0) == 0);
  CHECK(line_count(csv.out) == 6);
}

TEST_CASE("cli: viscous blow-up exits with a failed check") {
  const auto r = invoke({"viscous", "--mode", "6:40:0", "--mode", "-5:40:0", "--mu", "0.0001", "--dt", "0.05",
                         "--steps", "400"});
  CHECK(r.code == kExitCheckFailed);
  CHECK(parse(r)["blew_up"] == true);
}

TEST_CASE("cli: energy rows follow the closed form") {
  const auto r = invoke({"energy", "--n", "4", "--f", "64,128"});
  CHECK(r.code != kExitUsage);
  const auto doc = parse(r);
  REQUIRE(doc["rows"].size() == 2);
  for (const auto& row : doc["rows"])
    CHECK(std::abs(row["I"].get<double>() - row["closed_form"].get<double>()) <=
          1e-10 * std::abs(row["closed_form"].get<double>()));
}

TEST_CASE("cli: trilinear reports both spreads") {
  const auto r = invoke({"trilinear", "--seed", "2", "--fields", "2", "--bandlimit", "3"});
  CHECK(r.code != kExitUsage);
  const auto doc = parse(r);
  CHECK(doc["checks"].size() == 6);
  CHECK(doc.contains("normalized_spread"));
  CHECK(doc.contains("ratio_spread"));
}
