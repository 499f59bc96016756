#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "mdscm/cli/config.hpp"
#include "mdscm/cli/order_expr.hpp"
#include "mdscm/cli/runner.hpp"

using namespace mdscm;
using namespace mdscm::cli;
using json = nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t error_offset(const std::string& text) {
  try {
    OrderExpr::parse(text);
  } catch (const ExprError& e) {
    return e.offset();
  }
  ADD_FAILURE() << "no error for '" << text << "'";
  return 0;
}

std::vector<std::string> problems(const json& file, const std::map<std::string, std::string>& cli = {}) {
  try {
    resolve_config(file, cli);
  } catch (const ConfigError& e) {
    return e.problems();
  }
  return {};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(OrderExpr, Constant) {
  const auto e = OrderExpr::parse("1.5");
  EXPECT_EQ(e(0.3, 0.7), 1.5);
  EXPECT_FALSE(e.uses_x());
  EXPECT_FALSE(e.uses_t());
}

TEST(OrderExpr, IncreasingCase) {
  const auto e = OrderExpr::parse("1 + (5+4*x)/10");
  EXPECT_NEAR(e(0.5, 0.0), 1.7, 1e-15);
  EXPECT_TRUE(e.uses_x());
}

TEST(OrderExpr, NonsmoothCaseVanishesOnDiagonal) {
  const auto e = OrderExpr::parse("4/5*abs(sin(10*pi*(x-t)))+1.1");
  EXPECT_NEAR(e(0.37, 0.37), 1.1, 1e-15);
  EXPECT_TRUE(e.uses_t());
  for (double x : {-0.9, -0.2, 0.41}) {
    for (double t : {0.0, 0.3, 1.0}) {
      EXPECT_NEAR(e(x, t), 0.8 * std::fabs(std::sin(10 * kPi * (x - t))) + 1.1, 1e-15);
    }
  }
}

TEST(OrderExpr, PrecedenceAndUnaryMinus) {
  EXPECT_EQ(OrderExpr::parse("1+2*3")(0, 0), 7.0);
  EXPECT_EQ(OrderExpr::parse("(1+2)*3")(0, 0), 9.0);
  EXPECT_EQ(OrderExpr::parse("8/4/2")(0, 0), 1.0);
  EXPECT_EQ(OrderExpr::parse("10-4-3")(0, 0), 3.0);
  EXPECT_EQ(OrderExpr::parse("-2*-3")(0, 0), 6.0);
  EXPECT_EQ(OrderExpr::parse("--x")(2.5, 0), 2.5);
  EXPECT_EQ(OrderExpr::parse("-x*x")(3, 0), -9.0);
  EXPECT_EQ(OrderExpr::parse(" 4 * abs( x * t ) / 5 + 1.1 ")(-0.5, 0.5), 4 * 0.25 / 5 + 1.1);
  EXPECT_EQ(OrderExpr::parse("1.1 + (x+1)/2.5")(1.0, 0), 1.1 + 2.0 / 2.5);
  EXPECT_EQ(OrderExpr::parse("2.5e-1")(0, 0), 0.25);
}

TEST(OrderExpr, ErrorsCarryByteOffsets) {
  EXPECT_EQ(error_offset("1+ *x"), 3u);
  EXPECT_EQ(error_offset("(1+x"), 4u);
  EXPECT_EQ(error_offset("1 + y"), 4u);
  EXPECT_EQ(error_offset("x x"), 2u);
  EXPECT_EQ(error_offset("sin x"), 4u);
  EXPECT_EQ(error_offset("cos(x)"), 0u);
  EXPECT_EQ(error_offset(""), 0u);
  EXPECT_EQ(error_offset("   "), 3u);
  EXPECT_EQ(error_offset("2*$"), 2u);
  try {
    OrderExpr::parse("1 + foo");
  } catch (const ExprError& e) {
    EXPECT_NE(std::string(e.what()).find("unknown identifier 'foo'"), std::string::npos);
  }
}

TEST(OrderField, FromTextAndNamedCases) {
  EXPECT_TRUE(make_order_field("1.5", -1, 1, 0).is_constant());
  const auto c2 = make_order_field("case2", -1, 1, 0);
  EXPECT_EQ(c2.branch(), 2);
  EXPECT_NEAR(c2(0.5, 0.0), 1.7, 1e-15);
  const auto c4 = make_order_field("case4", -1, 1, 1);
  EXPECT_TRUE(c4.time_dependent());
  EXPECT_NEAR(c4(0.25, 0.25), 1.1, 1e-15);
  EXPECT_THROW(make_order_field("0.5+x", -1, 1, 0), std::domain_error);  // crosses 0 and 1
  EXPECT_THROW(make_order_field("1/x+1.5", -1, 1, 0), std::domain_error);
  EXPECT_THROW(make_order_field("2.5", -1, 1, 0), std::domain_error);
}

TEST(Config, PresetsResolve) {
  for (const auto& p : presets()) {
    EXPECT_NO_THROW(resolve_config(json{{"preset", p.name}}, {})) << p.name;
    EXPECT_FALSE(p.description.empty());
  }
  const auto c = resolve_config(json::object(), {{"preset", "ex4.2"}});
  EXPECT_EQ(c.command, Command::helmholtz);
  EXPECT_EQ(c.mesh.kind, MeshSpec::Kind::geometric);
  EXPECT_EQ(c.mesh.M, 16);
  EXPECT_EQ(c.problem, "lowreg");
  EXPECT_EQ(c.name, "ex4.2");
}

TEST(Config, LayeringCommandLineWins) {
  const json file = {{"preset", "ex4.1-const"}, {"N", 12}, {"tau", 5.0}, {"output_dir", "from_file"}};
  auto c = resolve_config(file, {});
  EXPECT_EQ(c.mesh.N, 12);
  EXPECT_EQ(c.tau, 5.0);
  EXPECT_EQ(c.mesh.M, 4);  // from the preset
  c = resolve_config(file, {{"N", "6"}}, std::string("from_env"));
  EXPECT_EQ(c.mesh.N, 6);
  EXPECT_EQ(c.output_dir, "from_env");
  c = resolve_config(file, {{"output_dir", "from_cli"}}, std::string("from_env"));
  EXPECT_EQ(c.output_dir, "from_cli");
}

TEST(Config, TextOverridesAreTyped) {
  const auto c = resolve_config(json::object(), {{"command", "converge"},
                                                 {"alpha", "1.3"},
                                                 {"values", "4,8,12"},
                                                 {"taus", "0,1e3"},
                                                 {"stability_gate", "false"}});
  EXPECT_EQ(c.values, (std::vector<int>{4, 8, 12}));
  EXPECT_EQ(c.taus, (std::vector<double>{0.0, 1000.0}));
  EXPECT_FALSE(c.stability_gate);
  EXPECT_EQ(c.alpha, "1.3");
}

TEST(Config, EveryViolationIsListed) {
  const json file = {{"command", "converge"}, {"alpha", 1.5}, {"M", 0},     {"N", "four"},
                     {"colour", "red"},       {"values", json::array()},   {"taus", {-1.0}},
                     {"mesh", "hexagonal"}};
  const auto p = problems(file);
  auto has = [&](const std::string& needle) {
    for (const auto& s : p) {
      if (s.find(needle) != std::string::npos) return true;
    }
    return false;
  };
  EXPECT_TRUE(has("unknown key 'colour'"));
  EXPECT_TRUE(has("'N' must be an integer"));
  EXPECT_TRUE(has("'M' must be at least 1"));
  EXPECT_TRUE(has("'values' must list"));
  EXPECT_TRUE(has("'taus' entries"));
  EXPECT_TRUE(has("unknown mesh kind 'hexagonal'"));
  EXPECT_GE(p.size(), 6u);
}

TEST(Config, SpecificRejections) {
  EXPECT_FALSE(problems(json{{"alpha", 1.5}}).empty());                                   // no command
  EXPECT_FALSE(problems(json{{"command", "helmholtz"}}).empty());                         // no alpha
  EXPECT_FALSE(problems(json{{"command", "helmholtz"}, {"alpha", 0.5}}).empty());         // branch
  EXPECT_TRUE(problems(json{{"command", "eigen"}, {"alpha", 0.5}}).empty());
  EXPECT_FALSE(problems(json{{"command", "helmholtz"}, {"alpha", "case4"}}).empty());     // uses t
  EXPECT_FALSE(problems(json{{"command", "burgers"}, {"alpha", 1.5}, {"dt", 0.3}}).empty());
  EXPECT_FALSE(problems(json{{"command", "burgers"}, {"alpha", 1.5}, {"u0", "sin(t)"}}).empty());
  EXPECT_FALSE(problems(json{{"command", "burgers"}, {"alpha", 1.5}, {"snapshots", {2.0}}}).empty());
  EXPECT_FALSE(problems(json{{"command", "helmholtz"}, {"alpha", 1.5}, {"problem", "lowreg"},
                             {"mesh", "graded"}, {"q", 0.5}}).empty());
  EXPECT_FALSE(problems(json{{"command", "helmholtz"}, {"alpha", 1.5}, {"x_left", 0.0}}).empty());
  EXPECT_FALSE(problems(json::object(), {{"preset", "nope"}}).empty());
  EXPECT_FALSE(problems(json::object(), {{"preset", "fig7"}, {"M", "2.5"}}).empty());
  EXPECT_FALSE(problems(json{{"preset", "fig7"}, {"tail_mode", "fast"}}).empty());
}

TEST(Config, LoadFile) {
  const auto dir = std::filesystem::temp_directory_path() / "mdscm_cli_test_config";
  std::filesystem::create_directories(dir);
  const auto good = (dir / "good.json").string();
  std::ofstream(good) << R"({"preset": "fig3-a1.01", "N": 8})";
  EXPECT_EQ(load_config_file(good)["N"], 8);
  const auto bad = (dir / "bad.json").string();
  std::ofstream(bad) << R"({"N": 8,})";
  EXPECT_THROW(load_config_file(bad), ConfigError);
  const auto arr = (dir / "arr.json").string();
  std::ofstream(arr) << "[1, 2]";
  EXPECT_THROW(load_config_file(arr), ConfigError);
  EXPECT_THROW(load_config_file((dir / "missing.json").string()), ConfigError);
}

class RunTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("mdscm_cli_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  RunResult run_preset(const std::string& name, std::map<std::string, std::string> extra = {}) {
    extra["preset"] = name;
    extra["output_dir"] = dir_.string();
    return run(resolve_config(json::object(), extra));
  }

  std::filesystem::path dir_;
};

TEST_F(RunTest, HelmholtzPresetMeetsBound) {
  const auto r = run_preset("ex4.1-const");
  ASSERT_EQ(r.files.size(), 1u);
  const auto pos = r.summary.find("linf_error=");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_LE(std::stod(r.summary.substr(pos + 11)), 1e-8);
  EXPECT_EQ(slurp(r.files[0]).substr(0, 4), "x,u\n");
}

TEST_F(RunTest, PenalizedSpectrumIsStable) {
  const auto r = run_preset("fig5-a1.01");
  const auto pos = r.summary.find("max_re_eig=");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_LT(std::stod(r.summary.substr(pos + 11)), 0.0);
  EXPECT_EQ(slurp(r.files[0]).substr(0, 6), "re,im\n");
}

TEST_F(RunTest, CondRowsAndBurgersSnapshots) {
  const auto c = run_preset("fig7", {{"values", "4,8"}});
  EXPECT_EQ(std::count(c.summary.begin(), c.summary.end(), '['), 4);
  const auto text = slurp(c.files[0]);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);

  const auto b = run_preset("burgers-case1", {{"M", "10"}, {"t_final", "0.05"}, {"snapshots", "0,0.05"}});
  ASSERT_EQ(b.files.size(), 3u);
  EXPECT_NE(b.files[1].find("_t0.csv"), std::string::npos);
  EXPECT_NE(b.files[2].find("_t0.05.csv"), std::string::npos);
}

TEST_F(RunTest, ByteIdenticalReruns) {
  for (const std::string name : {"ex4.1-var", "fig4-a1.99", "ex4.1-hsweep"}) {
    const auto a = run_preset(name, {{"name", "a"}});
    const auto b = run_preset(name, {{"name", "b"}});
    ASSERT_EQ(a.files.size(), b.files.size());
    for (std::size_t i = 0; i < a.files.size(); ++i) EXPECT_EQ(slurp(a.files[i]), slurp(b.files[i])) << name;
  }
}
