#include <torelli/json_io.hpp>

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace torelli;
using io::Json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  Json json() const { return Json::parse(out); }
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(TORELLI_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed");
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

fs::path scratch() {
  const auto d = fs::temp_directory_path() / "torelli_cli_test";
  fs::create_directories(d);
  return d;
}

std::string write(const std::string& name, const Json& j) {
  const auto p = scratch() / name;
  std::ofstream(p) << j.dump();
  return p.string();
}

std::string sample(const std::string& name) { return std::string(TORELLI_SAMPLES) + "/" + name; }

}  // namespace

TEST(Cli, LatticeInfo) {
  auto r = run("lattice info k3");
  ASSERT_EQ(r.status, 0);
  auto j = r.json();
  EXPECT_EQ(j["v"], 1);
  EXPECT_EQ(j["result"]["rank"], 22);
  EXPECT_EQ(j["result"]["signature"], Json::array({3, 19}));
  EXPECT_EQ(run("lattice info hilb:2").json()["result"]["rank"], 23);
}

TEST(Cli, PicardOfRationalK3Period) {
  auto l = catalog::k3();
  const auto& fr = l->positive_frame();
  auto p = PeriodPoint::make(l, FVector::from_integers(fr[0]), FVector::from_integers(fr[1]));
  Json doc = io::to_json(p);
  doc["v"] = 1;
  auto r = run("period picard --lattice k3 --input " + write("k3_rational.json", doc));
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.json()["result"]["picard_rank"], 20);
}

TEST(Cli, ConnectVerifyRoundTrip) {
  const std::string args = "connect --lattice 3u --from " + sample("x_3u.json") + " --to " + sample("y_3u.json") +
                           " --seed 7";
  auto r1 = run(args), r2 = run(args);
  ASSERT_EQ(r1.status, 0) << r1.out;
  EXPECT_EQ(r1.out, r2.out);
  const auto file = write("chain.json", r1.json());
  auto v = run("verify " + file);
  EXPECT_EQ(v.status, 0) << v.out;
  EXPECT_TRUE(v.json()["result"]["ok"].get<bool>());

  // A bare certificate is accepted too.
  EXPECT_EQ(run("verify " + write("bare.json", r1.json()["certificate"])).status, 0);

  auto tampered = r1.json()["certificate"];
  tampered["points"][1]["a"][0] = Json::array({"7"});
  auto bad = run("verify " + write("tampered.json", tampered));
  EXPECT_EQ(bad.status, 1);
  EXPECT_FALSE(bad.json()["ok"].get<bool>());
  EXPECT_FALSE(bad.json()["diagnostics"].empty());
}

TEST(Cli, InBallAndBoundaryCertificatesVerify) {
  auto ball = run("connect --lattice 3u --mode ball --radius 1/4 --field sqrt:2 --from " + sample("sqrt2_x_3u.json") +
                  " --to " + sample("sqrt2_y_3u.json"));
  ASSERT_EQ(ball.status, 0) << ball.out;
  EXPECT_EQ(ball.json()["result"]["generic_lines"], 4);
  EXPECT_EQ(run("verify " + write("ball.json", ball.json())).status, 0);

  auto edge = run("connect --lattice 3u --mode boundary --radius 1/4 --field sqrt:2 --from " +
                  sample("sqrt2_edge_3u.json") + " --center " + sample("sqrt2_x_3u.json"));
  ASSERT_EQ(edge.status, 0) << edge.out;
  EXPECT_EQ(run("verify " + write("edge.json", edge.json())).status, 0);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("lattice info").status, 2);
  EXPECT_EQ(run("verify /nonexistent/file.json").status, 2);
  auto domain = run("lattice info nope");
  EXPECT_EQ(domain.status, 1);
  EXPECT_EQ(domain.json()["diagnostics"][0]["code"], "Parse");

  auto r = run("connect --lattice 3u --from " + sample("x_3u.json") + " --to " + sample("y_3u.json"));
  auto doc = r.json()["certificate"];
  doc["v"] = 2;
  auto v = run("verify " + write("v2.json", doc));
  EXPECT_EQ(v.status, 1);
  EXPECT_EQ(v.json()["diagnostics"][0]["code"], "UnsupportedVersion");
}

TEST(Cli, FieldDirectory) {
  const auto dir = scratch() / "fields";
  fs::create_directories(dir);
  std::ofstream(dir / "cubic.json") << R"({"min_poly": [-2, 0, 0, 1], "root_lo": "1", "root_hi": "2"})";
  auto r = run("period random --lattice 3u --field cubic --seed 3", "TORELLI_FIELD_DIR=" + dir.string());
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.json()["result"]["period"]["field"]["min_poly"], Json::array({-2, 0, 0, 1}));
  auto again = run("period random --lattice 3u --field root:3:2 --seed 3");
  EXPECT_EQ(r.out, again.out);
}

TEST(Cli, WeylAndOrientation) {
  auto r = run("weyl reduce --lattice u --omega 2,1 --ref 1,3 --box 2");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.json()["result"]["omega"], Json::array({1, 2}));
  EXPECT_EQ(r.json()["result"]["word"]["roots"].size(), 1u);

  auto neg = IntMatrix(6, IntVector(6, 0));
  for (int i = 0; i < 6; ++i) neg[i][i] = -1;
  auto o = run("isom orientation --lattice 3u --matrix " + write("neg.json", {{"v", 1}, {"matrix", io::to_json(neg)}}));
  ASSERT_EQ(o.status, 0) << o.out;
  EXPECT_EQ(o.json()["result"]["class"], -1);
}

TEST(Cli, TextFormat) {
  auto r = run("lattice info u --format text");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("signature: [1,1]"), std::string::npos) << r.out;
}
