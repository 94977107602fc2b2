#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ospchain/spectrum.hpp"
#include "run.hpp"

using namespace ospchain;
using namespace ospchain::cli;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "ospchain_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

int invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "ospchain");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return main_entry(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig re_config(const std::string& c1, std::optional<std::string> cM = std::nullopt) {
  RunConfig c;
  c.command = "verify-re";
  c.M = 3;
  c.n = 0;
  Json b{{"family", "D2"}, {"c1", c1}};
  if (cM) b["cM_override"] = *cM;
  c.boundary = b;
  return c;
}

}  // namespace

TEST_CASE("documented command examples") {
  RunConfig ybe;
  ybe.command = "verify-ybe";
  ybe.M = 1;
  ybe.n = 1;
  ybe.samples = 5;
  ybe.seed = 7;
  CHECK(run(ybe).exit_code == kExitPass);
  CHECK(run(re_config("1")).exit_code == kExitPass);
  CHECK(run(re_config("1", "99")).exit_code == kExitFail);
}

TEST_CASE("report carries schema, version, conventions and seed") {
  RunConfig c;
  c.command = "verify-unitarity";
  c.M = 2;
  c.n = 1;
  c.seed = 11;
  auto r = run(c).report;
  CHECK(r["schema"] == 1);
  CHECK(r["version"] == tool_version());
  CHECK(r["seed"] == 11);
  CHECK(r["conventions"]["supertranspose"] == kFrozenConvention.id());
  CHECK(r["conventions"].contains("koszul"));
  CHECK(r["conventions"].contains("basis"));
  CHECK(r["checks"].size() == 1);
  c.command = "spectrum";
  c.M = 3;
  c.L = 1;
  auto s = run(c).report;
  CHECK(s["conventions"]["spectral"] == SpectralConvention::frozen(EigenvalueModel(3, 1)).id());
  CHECK(s["pass"] == true);
}

TEST_CASE("invalid configurations exit with the usage code") {
  RunConfig c = re_config("1");
  c.boundary = Json{{"family", "D4"}, {"c2", "1"}, {"c3", "2"}};
  auto r = run(c);
  CHECK(r.exit_code == kExitUsage);
  CHECK(r.report["error"]["kind"] == "validation");
  RunConfig bad;
  bad.command = "nope";
  CHECK(run(bad).exit_code == kExitUsage);
  RunConfig even;
  even.command = "spectrum";
  even.M = 2;
  CHECK(run(even).exit_code == kExitUsage);
  RunConfig degenerate;
  degenerate.command = "bethe";
  degenerate.M = 3;
  degenerate.n = 1;
  CHECK(run(degenerate).exit_code == kExitUsage);
  CHECK_THROWS_AS(RunConfig::from_json(Json{{"colour", 1}}), ValidationError);
  CHECK(invoke({"verify-ybe", "--M", "x"}) == kExitUsage);
  CHECK(invoke({"verify-ybe", "--exact", "--float"}) == kExitUsage);
}

TEST_CASE("flags override the config file and reports are written") {
  auto cfg_path = scratch("config.json");
  auto out = scratch("re.json");
  {
    std::ofstream f(cfg_path);
    f << R"({"M": 3, "n": 0, "samples": 2, "seed": 5, "boundary": {"family": "D2", "c1": "1", "cM_override": "99"}})";
  }
  CHECK(invoke({"verify-re", "--config", cfg_path.string(), "--output", out.string()}) == kExitFail);
  Json r = Json::parse(slurp(out));
  CHECK(r["config"]["samples"] == 2);
  CHECK(r["config"]["boundary"]["cM_override"] == "99");
  // Same family on the command line keeps the file's other keys; a new family starts fresh.
  CHECK(invoke({"verify-re", "--config", cfg_path.string(), "--output", out.string(), "--family", "D2"}) == kExitFail);
  CHECK(invoke({"verify-re", "--config", cfg_path.string(), "--output", out.string(), "--family", "Identity"}) ==
        kExitPass);
  CHECK(invoke({"verify-re", "--config", cfg_path.string(), "--output", out.string(), "--samples", "3"}) == kExitFail);
  CHECK(Json::parse(slurp(out))["config"]["samples"] == 3);
}

TEST_CASE("default output directory comes from the environment") {
  auto dir = scratch("outdir");
  std::filesystem::remove_all(dir);
  ::setenv("OSPCHAIN_OUTPUT_DIR", dir.string().c_str(), 1);
  RunConfig c;
  c.command = "verify-crossing";
  CHECK(report_path(c) == (dir / "ospchain-verify-crossing.json").string());
  CHECK(invoke({"verify-crossing", "--M", "3", "--n", "1", "--samples", "2"}) == kExitPass);
  CHECK(std::filesystem::exists(dir / "ospchain-verify-crossing.json"));
  ::unsetenv("OSPCHAIN_OUTPUT_DIR");
}

TEST_CASE("exact-mode reports are byte-identical across runs") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"verify-ybe", "--M", "2", "--n", "1", "--seed", "3"},
        std::vector<std::string>{"commute", "--M", "1", "--n", "1", "--L", "2", "--family", "D3", "--m1", "0", "--n1", "1"},
        std::vector<std::string>{"bethe", "--M", "5", "--n", "2", "--L", "2", "--occupancies", "1,1,0,0", "--seed", "4"}}) {
    auto a = scratch("det_a.json"), b = scratch("det_b.json");
    auto with = [&](const std::filesystem::path& p) {
      auto v = args;
      v.push_back("--output");
      v.push_back(p.string());
      return invoke(v);
    };
    int ea = with(a), eb = with(b);
    CHECK(ea == eb);
    CHECK(slurp(a) == slurp(b));
    CHECK_FALSE(slurp(a).empty());
  }
}
