#include "vaa/scenario_io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "vaa/errors.hpp"
#include "vaa/trajectory.hpp"

namespace vaa {
namespace {

const char* kMinimal = R"({
  "schema": "vaa-scenario/v1",
  "name": "custom",
  "inputs": {
    "omega": [0, 0, 1],
    "accel": {"type": "sinusoid", "amplitude": [5, 0, 0], "frequency": [5, 0, 0],
              "offset": [0, 0, -9.81]},
    "gravity": [0, 0, 9.81]
  },
  "initial": {"v": [0, 0, 0]},
  "observer": {"Rhat": {"rotvec": [2, -1, 1.5]}, "vhat": [3, -2, 2]},
  "gains": {"k": 5, "c": 1},
  "horizon": 15,
  "dt": 0.1
})";

std::string expect_config_error(const std::string& text) {
  try {
    (void)parse_scenario_json(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  ADD_FAILURE() << "no ConfigError for:\n" << text;
  return {};
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return text.replace(pos, from.size(), to);
}

TEST(ScenarioJson, MinimalDocumentMatchesPaperBuiltin) {
  const Scenario parsed = parse_scenario_json(kMinimal);
  const Scenario paper = builtin_scenario("paper2022");
  EXPECT_EQ(parsed.name, "custom");
  EXPECT_EQ(parsed.integrator, Integrator::euler);
  EXPECT_DOUBLE_EQ(parsed.gains.alpha, 0.2);
  EXPECT_LT((parsed.obs0.Rhat.matrix() - paper.obs0.Rhat.matrix()).norm(), 1e-15);
  EXPECT_EQ(parsed.obs0.z, Vector3::Zero());
  for (double t : {0.0, 0.37, 4.2, 14.9}) {
    const ImuSample a = parsed.inputs.sample(t);
    const ImuSample b = paper.inputs.sample(t);
    EXPECT_LT((a.omega - b.omega).norm(), 1e-14);
    EXPECT_LT((a.accel - b.accel).norm(), 1e-14);
  }
  EXPECT_EQ(parsed.row_count(), 151u);
}

TEST(ScenarioJson, BuiltinInputsAndOptionalFields) {
  std::string text = replace(kMinimal, R"("omega": [0, 0, 1],)", R"("builtin": "paper2022",)");
  text = replace(text, R"("gains": {"k": 5, "c": 1})",
                 R"("gains": {"k": 4, "c": 2, "alpha": 0.5}, "integrator": "rk4")");
  const Scenario sc = parse_scenario_json(text);
  EXPECT_EQ(sc.integrator, Integrator::rk4);
  EXPECT_EQ(sc.gains.alpha, 0.5);
  EXPECT_EQ(sc.inputs.accel(0.1), paper_scenario().inputs.accel(0.1));
}

TEST(ScenarioJson, RotationMatrixForm) {
  const std::string text =
      replace(kMinimal, R"({"rotvec": [2, -1, 1.5]})", R"({"matrix": [[1,0,0],[0,-1,0],[0,0,-1]]})");
  const Scenario sc = parse_scenario_json(text);
  EXPECT_EQ(sc.obs0.Rhat.matrix().trace(), -1.0);
  const std::string bad =
      replace(kMinimal, R"({"rotvec": [2, -1, 1.5]})", R"({"matrix": [[2,0,0],[0,1,0],[0,0,1]]})");
  EXPECT_NE(expect_config_error(bad).find("observer.Rhat.matrix"), std::string::npos);
}

TEST(ScenarioJson, SyntaxErrorReportsLineAndColumn) {
  const std::string text = replace(kMinimal, R"("horizon": 15,)", R"("horizon": 15,,)");
  const std::string what = expect_config_error(text);
  EXPECT_NE(what.find("line 13, column 17"), std::string::npos) << what;
  EXPECT_NE(what.find("column"), std::string::npos) << what;
}

TEST(ScenarioJson, FieldErrorsNameTheDottedPath) {
  struct Case {
    std::string from, to, path;
  };
  const Case cases[] = {
      {R"("k": 5)", R"("k": "five")", "gains.k"},
      {R"("vhat": [3, -2, 2])", R"("vhat": [3, -2])", "observer.vhat"},
      {R"("vhat": [3, -2, 2])", R"("vhat": [3, null, 2])", "observer.vhat[1]"},
      {R"("gravity": [0, 0, 9.81])", R"("gravity": 9.81)", "inputs.gravity"},
      {R"("type": "sinusoid")", R"("type": "square")", "inputs.accel.type"},
      {R"("dt": 0.1)", R"("step": 0.1)", "dt"},
      {R"("name": "custom",)", "", "name"},
      {R"("vaa-scenario/v1")", R"("vaa-scenario/v9")", "schema"},
  };
  for (const Case& c : cases) {
    const std::string what = expect_config_error(replace(kMinimal, c.from, c.to));
    EXPECT_NE(what.find("'" + c.path + "'"), std::string::npos) << c.path << ": " << what;
  }
}

TEST(ScenarioJson, SemanticValidation) {
  EXPECT_THROW((void)parse_scenario_json(replace(kMinimal, R"("dt": 0.1)", R"("dt": -0.1)")),
               ConfigError);
  EXPECT_THROW((void)parse_scenario_json(replace(kMinimal, R"("c": 1)", R"("c": 0)")),
               ConfigError);
  EXPECT_THROW((void)parse_scenario_json(replace(kMinimal, R"("dt": 0.1)",
                                                 R"("dt": 0.1, "integrator": "midpoint")")),
               ConfigError);
  EXPECT_THROW((void)parse_scenario_json("[1, 2, 3]"), ConfigError);
  EXPECT_THROW((void)parse_scenario_json(""), ConfigError);
}

TEST(ScenarioJson, SerializationRoundTrip) {
  for (const auto& b : builtin_scenarios()) {
    const Scenario sc = builtin_scenario(b.name);
    const Scenario back = parse_scenario_json(scenario_to_json(sc));
    EXPECT_EQ(back.name, sc.name);
    EXPECT_EQ(back.integrator, sc.integrator);
    EXPECT_EQ(back.dt, sc.dt);
    EXPECT_EQ(back.horizon, sc.horizon);
    EXPECT_EQ(back.gains.alpha, sc.gains.alpha);
    EXPECT_EQ(back.obs0.vhat, sc.obs0.vhat);
    EXPECT_EQ(back.obs0.z, sc.obs0.z);
    EXPECT_EQ(back.x0.R.matrix(), sc.x0.R.matrix());
    EXPECT_EQ(back.obs0.Rhat.matrix(), sc.obs0.Rhat.matrix());
    EXPECT_EQ(back.inputs.accel(1.3), sc.inputs.accel(1.3));
  }
}

TEST(Builtins, ListAndLookup) {
  bool has_paper = false;
  for (const auto& b : builtin_scenarios()) {
    has_paper |= b.name == "paper2022";
    EXPECT_NO_THROW(builtin_scenario(b.name).validate());
  }
  EXPECT_TRUE(has_paper);
  EXPECT_THROW((void)builtin_scenario("nope"), ConfigError);
  const Scenario rk4 = builtin_scenario("paper2022-rk4");
  EXPECT_EQ(rk4.integrator, Integrator::rk4);
  EXPECT_EQ(rk4.dt, 1e-3);
}

TEST(LoadScenario, BuiltinNameWinsOverFile) {
  const auto dir = std::filesystem::temp_directory_path() / "vaa_scenario_io_test";
  std::filesystem::create_directories(dir);
  const auto file = dir / "custom.json";
  std::ofstream(file) << kMinimal;
  EXPECT_EQ(load_scenario(file.string()).name, "custom");
  EXPECT_EQ(load_scenario("paper2022").name, "paper2022");
  EXPECT_THROW((void)load_scenario((dir / "missing.json").string()), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST(TrajectoryCsv, RejectsMalformedInput) {
  const auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_trajectory_csv(in);
  };
  EXPECT_THROW((void)parse(""), ConfigError);
  EXPECT_THROW((void)parse("t,x\n1,2\n"), ConfigError);

  TrajectoryRecord rec;
  rec.scenario = "s";
  rec.dt = 0.1;
  rec.gains = Gains::with_default_alpha(5.0, 1.0);
  rec.rows.resize(2);
  rec.rows[1].t = 0.1;
  std::ostringstream out;
  write_trajectory_csv(out, rec);
  const std::string good = out.str();
  EXPECT_EQ(parse(good).rows.size(), 2u);

  // Header only.
  EXPECT_THROW((void)parse(good.substr(0, good.find('\n', good.find('\n') + 1) + 1)), ConfigError);
  // Non-increasing time.
  std::string dup = good;
  dup.replace(dup.rfind("\n0.1,"), 5, "\n0,");
  EXPECT_THROW((void)parse(dup), ConfigError);
  // Garbage number.
  std::string garbage = good;
  garbage.replace(garbage.rfind("\n0.1,"), 5, "\nabc,");
  EXPECT_THROW((void)parse(garbage), ConfigError);
}

TEST(TrajectoryCsv, HeaderColumns) {
  const auto& cols = trajectory_columns();
  ASSERT_EQ(cols.size(), 31u);
  EXPECT_EQ(cols.front(), "t");
  EXPECT_EQ(cols[1], "R00");
  EXPECT_EQ(cols[10], "vx");
  EXPECT_EQ(cols[13], "Rh00");
  EXPECT_EQ(cols[22], "vhx");
  EXPECT_EQ(cols[25], "zx");
  EXPECT_EQ(cols.back(), "lyap");
}

}  // namespace
}  // namespace vaa
