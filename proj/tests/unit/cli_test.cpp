#include "fpsynt/driver.hpp"
#include "fpsynt/report.hpp"

#include "../support/test_support.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <sstream>

using namespace fpsynt;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

RunConfig config_in(const fs::path& dir) {
  RunConfig c;
  c.output_dir = dir;
  return c;
}

Outcome synth(const fs::path& spec, const RunConfig& config) {
  std::ostringstream out, err;
  const int code = cmd_synth(spec, config, out, err);
  return {code, out.str(), err.str()};
}

Outcome simulate(const fs::path& spec, const RunConfig& config) {
  std::ostringstream out, err;
  const int code = cmd_simulate(spec, config, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(test::read_text(p)); }

std::string bin() { return FPSYNT_BIN; }

}  // namespace

TEST(Synth, FirFourWritesArtifactsAndReport) {
  const fs::path dir = test::temp_dir("cli");
  const Outcome r = synth(test::spec_dir() / "fir4.fps", config_in(dir));
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(dir / "fir4.fps.c"));
  EXPECT_TRUE(fs::exists(dir / "fir4.fps.vhd"));
  const nlohmann::json j = read_json(dir / "report.json");
  EXPECT_EQ(j["spec"], "fir4.fps");
  EXPECT_EQ(j["config"]["width"], 16);
  EXPECT_EQ(j["topology"], "t6 = ((t0 + t1) + t2) + t3");
  EXPECT_NEAR(j["predicted_bound"].get<double>(), 1.586877e-4, 1e-9);
  ASSERT_EQ(j["chains"].size(), 1u);
  EXPECT_EQ(j["chains"][0]["accumulator_width"], 18);
  bool saw_y = false;
  for (const auto& n : j["nodes"]) {
    for (const char* key : {"name", "kind", "sif", "width", "scale", "range", "local_error", "error_bound"}) {
      ASSERT_TRUE(n.contains(key)) << key;
    }
    if (n["name"] == "y") {
      saw_y = true;
      EXPECT_EQ(n["sif"], "(1/0/15)");
      EXPECT_EQ(n["error_bound"].get<double>(), j["predicted_bound"].get<double>());
    }
    if (n["kind"] == "const") {
      EXPECT_TRUE(n.contains("raw"));
    }
  }
  EXPECT_TRUE(saw_y);
  EXPECT_NE(r.out.find("predicted output bound: 1.586877e-04"), std::string::npos);
  EXPECT_FALSE(j.contains("simulation"));
}

TEST(Synth, EmitSelection) {
  const fs::path dir = test::temp_dir("cli");
  RunConfig c = config_in(dir);
  c.emit_vhdl = false;
  ASSERT_EQ(synth(test::spec_dir() / "fir2_w8.fps", c).code, kExitOk);
  EXPECT_TRUE(fs::exists(dir / "fir2_w8.fps.c"));
  EXPECT_FALSE(fs::exists(dir / "fir2_w8.fps.vhd"));
  EXPECT_EQ(read_json(dir / "report.json")["config"]["emit"], nlohmann::json::array({"c"}));
}

TEST(Synth, SyntaxErrorExitsOneWithoutFiles) {
  const fs::path dir = test::temp_dir("cli");
  const fs::path spec = dir / "bad.fps";
  test::write_text(spec, "input x : sif(1/0/15);\noutput y = x +;\n");
  const fs::path out = dir / "out";
  const Outcome r = synth(spec, config_in(out));
  EXPECT_EQ(r.code, kExitInvalid);
  EXPECT_NE(r.err.find("bad.fps:2:15"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(out));
}

TEST(Synth, InvalidFormatExitsOne) {
  const fs::path dir = test::temp_dir("cli");
  const fs::path spec = dir / "bad.fps";
  test::write_text(spec, "input x : sif(0/4/4);\noutput y = x;\n");
  const Outcome r = synth(spec, config_in(dir / "out"));
  EXPECT_EQ(r.code, kExitInvalid);
  EXPECT_NE(r.err.find("bad.fps:1:"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("sign"), std::string::npos) << r.err;
}

TEST(Synth, WidthOutOfRangeExitsOne) {
  RunConfig c = config_in(test::temp_dir("cli"));
  c.optimizer.width = 3;
  EXPECT_EQ(synth(test::spec_dir() / "fir4.fps", c).code, kExitInvalid);
  c.optimizer.width = 65;
  EXPECT_EQ(synth(test::spec_dir() / "fir4.fps", c).code, kExitInvalid);
}

TEST(Synth, NarrowWidthCannotFit) {
  const fs::path dir = test::temp_dir("cli");
  RunConfig c = config_in(dir / "out");
  c.optimizer.width = 4;
  const Outcome r = synth(test::spec_dir() / "fir4.fps", c);
  EXPECT_EQ(r.code, kExitCannotFit);
  EXPECT_NE(r.err.find("cannot fit"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "out"));
}

TEST(Synth, MissingFileIsAnIoError) {
  const Outcome r = synth(test::temp_dir("cli") / "nope.fps", config_in(test::temp_dir("cli")));
  EXPECT_EQ(r.code, kExitIo);
}

TEST(Synth, ByteIdenticalAcrossRuns) {
  const fs::path a = test::temp_dir("cli");
  const fs::path b = test::temp_dir("cli");
  ASSERT_EQ(synth(test::spec_dir() / "fir4.fps", config_in(a)).code, kExitOk);
  ASSERT_EQ(synth(test::spec_dir() / "fir4.fps", config_in(b)).code, kExitOk);
  for (const char* f : {"fir4.fps.c", "fir4.fps.vhd", "report.json"}) {
    EXPECT_EQ(test::read_text(a / f), test::read_text(b / f)) << f;
  }
}

TEST(Synth, FallbackWarningReachesTheReport) {
  const fs::path dir = test::temp_dir("cli");
  RunConfig c = config_in(dir);
  c.optimizer.accumulator_width_limit = 18;
  c.optimizer.enable_topology_opt = false;
  c.optimizer.k_max = 1;
  ASSERT_EQ(synth(test::spec_dir() / "sum8.fps", c).code, kExitOk);
  const nlohmann::json j = read_json(dir / "report.json");
  ASSERT_EQ(j["warnings"].size(), 1u);
  EXPECT_TRUE(j["chains"].empty());
}

TEST(Simulate, RandomVectorsReportStats) {
  const fs::path dir = test::temp_dir("cli");
  const Outcome r = simulate(test::spec_dir() / "fir4.fps", config_in(dir));
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const nlohmann::json stats = nlohmann::json::parse(r.out);
  EXPECT_EQ(stats["count"], 93);
  EXPECT_LE(stats["max"].get<double>(), 2.6e-4);
  const nlohmann::json j = read_json(dir / "report.json");
  EXPECT_EQ(j["simulation"]["count"], 93);
  EXPECT_EQ(j["simulation"]["vectors"], "random 90 seed 1");
  EXPECT_TRUE(j["simulation"]["bound_holds"].get<bool>());
}

TEST(Simulate, VectorFile) {
  const fs::path dir = test::temp_dir("cli");
  test::write_text(dir / "v.csv", "x0,x1\n0.5,0.5\n-1,0.25\n");
  RunConfig c = config_in(dir);
  c.vectors = dir / "v.csv";
  const Outcome r = simulate(test::spec_dir() / "fir2_w8.fps", c);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["count"], 2);
  EXPECT_EQ(read_json(dir / "report.json")["simulation"]["vectors"], "file v.csv");
}

TEST(Simulate, BadVectorFileExitsFourNamingTheRow) {
  const fs::path dir = test::temp_dir("cli");
  test::write_text(dir / "v.csv", "x0,x1\n0.5,0.5\n0.1\n");
  RunConfig c = config_in(dir);
  c.vectors = dir / "v.csv";
  const Outcome r = simulate(test::spec_dir() / "fir2_w8.fps", c);
  EXPECT_EQ(r.code, kExitBadVectors);
  EXPECT_NE(r.err.find("row 3"), std::string::npos) << r.err;
}

TEST(Simulate, PassthroughIsExact) {
  const Outcome r = simulate(test::spec_dir() / "passthrough.fps", config_in(test::temp_dir("cli")));
  ASSERT_EQ(r.code, kExitOk);
  const nlohmann::json stats = nlohmann::json::parse(r.out);
  for (const char* k : {"min", "max", "mean", "median"}) EXPECT_EQ(stats[k].get<double>(), 0.0) << k;
}

TEST(Binary, VersionAndHelp) {
  const test::CommandResult v = test::run_command(bin() + " --version 2>&1");
  EXPECT_EQ(v.status, 0);
  EXPECT_NE(v.output.find("0.1.0"), std::string::npos);
  EXPECT_EQ(test::run_command(bin() + " synth --help >/dev/null 2>&1").status, 0);
}

TEST(Binary, ExitCodes) {
  const std::string spec = (test::spec_dir() / "fir4.fps").string();
  const fs::path dir = test::temp_dir("bin");
  EXPECT_EQ(test::run_command(bin() + " synth " + spec + " -o " + dir.string() + " >/dev/null 2>&1").status, 0);
  EXPECT_TRUE(fs::exists(dir / "fir4.fps.c"));
  EXPECT_EQ(test::run_command(bin() + " synth " + spec + " --width 4 -o " + dir.string() + " 2>/dev/null").status, 2);
  EXPECT_EQ(test::run_command(bin() + " synth " + spec + " --emit pdf 2>/dev/null").status, 1);
  EXPECT_EQ(test::run_command(bin() + " synth 2>/dev/null").status, 1);
  EXPECT_EQ(test::run_command(bin() + " frobnicate 2>/dev/null").status, 1);
}

TEST(Binary, SimulatePrintsStats) {
  const std::string spec = (test::spec_dir() / "fir4.fps").string();
  const fs::path dir = test::temp_dir("bin");
  const test::CommandResult r =
      test::run_command(bin() + " simulate " + spec + " --random 20 --seed 3 -o " + dir.string() + " 2>/dev/null");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(nlohmann::json::parse(r.output)["count"], 23);
}
