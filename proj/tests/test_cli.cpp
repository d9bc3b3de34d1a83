#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = klc::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  const auto r = run(std::move(args));
  EXPECT_EQ(r.status, klc::cli::kOk) << r.err;
  return json::parse(r.out);
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("klc_cli_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(Cli, DihedralLeftCells) {
  const auto doc = run_json({"cells", "--type", "I2(5)", "--weights", "s=1,t=1"});
  EXPECT_EQ(doc["left"]["count"], 4);
  EXPECT_EQ(doc["left"]["cells"][0], json::array({"1"}));
  EXPECT_EQ(doc["left"]["cells"][3], json::array({"s.t.s.t.s"}));
  EXPECT_EQ(doc["two-sided"]["count"], 3);
}

TEST(Cli, UnequalDihedralMaps) {
  // I2(6) with phi(s) < phi(t): lambda fixes 1, s, w0 s = t.s.t.s.t and w0
  const auto doc = run_json({"cellmaps", "--type", "I2(6)", "--weights", "s=1,t=2", "--parabolic", "s,t"});
  std::map<std::string, std::string> lambda;
  std::map<std::string, int> eta;
  for (const auto& row : doc["local"]) {
    lambda[row["w"]] = row["lambda"];
    eta[row["w"]] = row["eta"];
  }
  const std::map<std::string, std::string> expected{
      {"1", "1"},           {"s", "s"},         {"t", "t.s.t"},         {"t.s.t", "t"},
      {"s.t", "s.t.s.t"},   {"s.t.s.t", "s.t"}, {"t.s", "t.s.t.s"},     {"t.s.t.s", "t.s"},
      {"s.t.s", "s.t.s.t.s"}, {"s.t.s.t.s", "s.t.s"}, {"t.s.t.s.t", "t.s.t.s.t"}, {"s.t.s.t.s.t", "s.t.s.t.s.t"}};
  EXPECT_EQ(lambda, expected);
  for (const auto& [w, sign] : eta) {
    const int want = (w == "1" || w == "s.t.s.t.s.t") ? 1 : -1;  // (-1)^{m/2} = -1 on s and w0 s too
    EXPECT_EQ(sign, want) << w;
  }
  EXPECT_TRUE(doc["hypotheses_verified"]);
}

TEST(Cli, ConjecturesOnB3) {
  const auto r = run({"conjectures", "--type", "B3", "--weights", "t=2,s1=1,s2=1", "--check", "P1,P4,P8,P9"});
  ASSERT_EQ(r.status, klc::cli::kOk) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_TRUE(doc["report"]["passed"]);
  EXPECT_EQ(doc["report"]["checks"].size(), 4u);
}

TEST(Cli, SignTables) {
  auto mixed = [](const std::string& csv) {
    std::map<std::string, std::set<std::string>> signs;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "w,two_sided_cell_id,eta");
    while (std::getline(in, line)) {
      const auto a = line.find(','), b = line.rfind(',');
      signs[line.substr(a + 1, b - a - 1)].insert(line.substr(b + 1));
    }
    for (const auto& [cell, values] : signs)
      if (values.size() > 1) return true;
    return false;
  };
  const auto b3 = run({"cellmaps", "--type", "B3", "--weights", "t=2,s1=1,s2=1", "--format", "csv"});
  ASSERT_EQ(b3.status, klc::cli::kOk) << b3.err;
  EXPECT_TRUE(mixed(b3.out));
  for (const char* type : {"I2(5)", "I2(6)"}) {
    const auto r = run({"cellmaps", "--type", type, "--format", "csv"});
    EXPECT_FALSE(mixed(r.out)) << type;
  }
}

TEST(Cli, DotChain) {
  const auto r = run({"cells", "--type", "I2(3)", "--side", "two-sided", "--format", "dot"});
  ASSERT_EQ(r.status, klc::cli::kOk) << r.err;
  EXPECT_NE(r.out.find("c0 [label=\"1\"]"), std::string::npos);
  EXPECT_NE(r.out.find("c2 [label=\"s.t.s\"]"), std::string::npos);
  EXPECT_NE(r.out.find("c2 -> c1;"), std::string::npos);
  EXPECT_NE(r.out.find("c1 -> c0;"), std::string::npos);
  EXPECT_EQ(r.out.find("c2 -> c0;"), std::string::npos);
}

TEST(Cli, Cactus) {
  const auto verify = run_json({"cactus", "verify", "--type", "B3", "--weights", "t=2,s1=1,s2=1"});
  EXPECT_TRUE(verify["report"]["passed"]);
  EXPECT_EQ(verify["generators"].size(), 6u);

  const auto act = run_json({"cactus", "act", "--type", "I2(5)", "--word", "s,t", "--side", "left", "--element", "s.t.s"});
  EXPECT_EQ(act["images"][0]["image"], "s.t");  // s_3 -> t_2
  EXPECT_EQ(act["projection"], "s.t.s.t.s");

  const auto orbits = run_json({"cactus", "orbits", "--type", "I2(5)", "--side", "left"});
  EXPECT_EQ(orbits["orbits"].front(), json::array({"1"}));
  EXPECT_EQ(orbits["orbits"].back(), json::array({"s.t.s.t.s"}));
}

TEST(Cli, GroupAndKlBasis) {
  const auto group = run_json({"group", "--matrix", "[[1,3],[3,1]]"});
  EXPECT_EQ(group["size"], 6);
  EXPECT_EQ(group["longest"], "s1.s2.s1");
  const auto infinite = run_json({"group", "--type", "I2(inf)", "--max-length", "3"});
  EXPECT_EQ(infinite["size"], 7);
  EXPECT_FALSE(infinite["finite"]);

  const auto kl = run_json({"klbasis", "--type", "I2(4)", "--weights", "s=1,t=2", "--element", "s.t.s"});
  ASSERT_EQ(kl["kl"].size(), 1u);
  std::map<std::string, std::string> p;
  for (const auto& t : kl["kl"][0]["terms"]) p[t["x"]] = t["p"];
  EXPECT_EQ(p["s.t.s"], "1*v^(0)");
  EXPECT_EQ(p["t"], "1*v^(-2)");
  EXPECT_EQ(p.size(), 6u);
}

TEST(Cli, AFunction) {
  const auto doc = run_json({"afunction", "--type", "I2(4)", "--weights", "s=1,t=2"});
  EXPECT_EQ(doc["duflo"], json::array({"1", "s", "t", "s.t.s", "t.s.t", "s.t.s.t"}));
  EXPECT_TRUE(doc["dmap_available"]);
}

TEST(Cli, ByteDeterministicAcrossJobs) {
  for (const auto& cmd : std::vector<std::vector<std::string>>{
           {"cells", "--type", "B3", "--weights", "t=2,s1=1,s2=1"},
           {"cellmaps", "--type", "A3", "--check", "all"},
           {"afunction", "--type", "H3"},
           {"cactus", "orbits", "--type", "B3"}}) {
    auto one = cmd, many = cmd;
    one.insert(one.end(), {"--jobs", "1"});
    many.insert(many.end(), {"--jobs", "4"});
    const auto a = run(one), b = run(many);
    EXPECT_EQ(a.status, klc::cli::kOk) << a.err;
    EXPECT_EQ(a.out, b.out) << cmd.front();
  }
}

TEST(Cli, OutDirectoryAndConfig) {
  const auto dir = scratch("out");
  const auto config = dir.string() + ".json";
  std::ofstream(config) << json{{"command", "cellmaps"}, {"type", "I2(5)"}, {"out", dir.string()}}.dump();
  const auto r = run({"--config", config});
  ASSERT_EQ(r.status, klc::cli::kOk) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "cellmaps.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "eta.csv"));
  const auto direct = run({"cellmaps", "--type", "I2(5)"});
  EXPECT_EQ(slurp(dir / "cellmaps.json"), direct.out);

  // flags on the command line override the file
  const auto overridden = run({"--config", config, "--type", "I2(3)", "--out", ""});
  ASSERT_EQ(overridden.status, klc::cli::kOk) << overridden.err;
  EXPECT_EQ(json::parse(overridden.out)["system"]["name"], "I2(3)");
  std::filesystem::remove_all(dir);
  std::filesystem::remove(config);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).status, klc::cli::kUsage);
  EXPECT_EQ(run({"cells"}).status, klc::cli::kUsage);
  EXPECT_EQ(run({"cells", "--type", "X7"}).status, klc::cli::kUsage);
  EXPECT_EQ(run({"cells", "--type", "I2(3)", "--weights", "s=1,t=2"}).status, klc::cli::kUsage);
  EXPECT_EQ(run({"cells", "--type", "I2(3)", "--matrix", "[[1,3],[3,1]]"}).status, klc::cli::kUsage);
  EXPECT_EQ(run({"cells", "--type", "I2(inf)", "--max-length", "4"}).status, klc::cli::kUsage);
  EXPECT_EQ(run({"cellmaps", "--type", "A3", "--check", "bogus"}).status, klc::cli::kUsage);
  EXPECT_EQ(run({"cactus", "act", "--type", "B3", "--word", "t,s2"}).status, klc::cli::kUsage);
  EXPECT_EQ(run({"cactus", "--type", "B3"}).status, klc::cli::kUsage);
  EXPECT_EQ(run({"conjectures", "--type", "A2", "--check", "P2"}).status, klc::cli::kUsage);
  EXPECT_EQ(run({"--config", "/nonexistent/klc.json"}).status, klc::cli::kUsage);
  EXPECT_EQ(run({"cells", "--type", "A2", "--format", "xml"}).status, klc::cli::kUsage);
  EXPECT_EQ(run({"klbasis", "--type", "A2", "--format", "dot"}).status, klc::cli::kUsage);
}

TEST(Cli, CatalogLimit) {
  const auto refused = run({"afunction", "--type", "A5"});
  EXPECT_EQ(refused.status, klc::cli::kUsage);
  EXPECT_NE(refused.err.find("--allow-large"), std::string::npos);
  EXPECT_EQ(run({"group", "--type", "A5", "--allow-large"}).status, klc::cli::kOk);
  EXPECT_EQ(run({"group", "--type", "B4"}).status, klc::cli::kOk);
}
