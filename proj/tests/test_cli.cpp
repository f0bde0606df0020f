#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "liereach/case_studies.hpp"
#include "liereach/cli.hpp"
#include "liereach/errors.hpp"
#include "liereach/spec_io.hpp"
#include "test_support.hpp"

using namespace liereach;
using namespace liereach::testing;
namespace fs = std::filesystem;

namespace {

const std::string kData = LIEREACH_DATA_DIR;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_path(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / "liereach_cli_tests";
  fs::create_directories(dir);
  return (dir / name).string();
}

std::string write_json(const std::string& name, const io::Json& j) {
  const std::string path = temp_path(name);
  io::write_text(path, io::canonical_dump(j));
  return path;
}

io::Json qubit_json() { return io::read_json(kData + "/qubit_x_matrix.json"); }

}  // namespace

TEST(Cli, DemoExample2) {
  const CliRun r = run_cli({"demo", "example2"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("closure dim 9"), std::string::npos);
  EXPECT_NE(r.out.find("stronglyControllable"), std::string::npos);
}

TEST(Cli, DemoDrift2dPrintsErrors) {
  const CliRun r = run_cli({"demo", "drift2d"});
  EXPECT_EQ(r.code, cli::kExitOk);
  for (const char* n : {"n 1 ", "n 10 ", "n 100 "}) EXPECT_NE(r.out.find(n), std::string::npos);
  EXPECT_NE(r.out.find("expected fields reproduced"), std::string::npos);
}

TEST(Cli, AllDemosReproduceExpectations) {
  for (const auto& name : case_study_names()) EXPECT_EQ(run_cli({"demo", name}).code, cli::kExitOk) << name;
}

TEST(Cli, MalformedSpecReportsKeyPath) {
  io::Json j = qubit_json();
  j["controls"][0][0]["coeff"]["p"] = "two";
  const CliRun r = run_cli({"analyze", write_json("bad_power.json", j)});
  EXPECT_EQ(r.code, cli::kExitInputError);
  EXPECT_NE(r.err.find("controls[0][0].coeff.p"), std::string::npos) << r.err;

  io::Json k = qubit_json();
  k.erase("dimension");
  const CliRun r2 = run_cli({"analyze", write_json("no_dim.json", k)});
  EXPECT_EQ(r2.code, cli::kExitInputError);
  EXPECT_NE(r2.err.find("dimension"), std::string::npos) << r2.err;
}

TEST(Cli, UnreadableFileIsInputError) {
  EXPECT_EQ(run_cli({"analyze", temp_path("does_not_exist.json")}).code, cli::kExitInputError);
}

TEST(Cli, UnknownFlagPrintsUsage) {
  const CliRun r = run_cli({"analyze", kData + "/qubit_x_matrix.json", "--frobnicate"});
  EXPECT_EQ(r.code, cli::kExitInputError);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run_cli({}).code, cli::kExitInputError);
}

TEST(Cli, ExpectControllableExitCodes) {
  const std::string qx = kData + "/qubit_x_matrix.json";
  EXPECT_EQ(run_cli({"analyze", qx}).code, cli::kExitOk);
  EXPECT_EQ(run_cli({"analyze", qx, "--expect", "controllable"}).code, cli::kExitConditionFailed);
  EXPECT_EQ(run_cli({"analyze", kData + "/qubit_xy_matrix.json", "--expect", "controllable"}).code,
            cli::kExitOk);
}

TEST(Cli, InconclusiveReport) {
  SystemSpec sys = qubit_system(1.0, false);
  sys.controls[0] = sys.term("X", ExpPoly::term(1.0, 0, {0.0, 2.0}) + ExpPoly::term(1.0, 0, {0.0, -2.0}));
  const std::string spec = write_json("shallow.json", io::spec_to_json(sys));
  const CliRun r = run_cli({"analyze", spec, "--jet-order", "0"});
  EXPECT_EQ(r.code, cli::kExitInconclusive);
  const io::Json report = io::Json::parse(r.out);
  EXPECT_EQ(report["verdict"], "inconclusive");
  EXPECT_EQ(report["flags"], io::Json::array({"jet-exhausted"}));
}

TEST(Cli, ReportsAreByteIdentical) {
  const std::string a = temp_path("report_a.json"), b = temp_path("report_b.json");
  const std::string spec = kData + "/example1_matrix.json";
  ASSERT_EQ(run_cli({"analyze", spec, "--out", a}).code, cli::kExitOk);
  ASSERT_EQ(run_cli({"analyze", spec, "--out", b}).code, cli::kExitOk);
  EXPECT_EQ(slurp(a), slurp(b));
  const io::Json report = io::read_json(a);
  EXPECT_EQ(report["tool"]["version"], io::tool_version());
  EXPECT_EQ(report["options"]["jet_order"], 8);
}

TEST(Cli, Example3ReportHasOneDimensionalC) {
  for (const char* file : {"/example3_structure.json", "/example3_matrix.json"}) {
    const CliRun r = run_cli({"analyze", kData + file});
    ASSERT_EQ(r.code, cli::kExitOk);
    const io::Json report = io::Json::parse(r.out);
    EXPECT_EQ(report["verdict"], "stronglyControllable");
    for (const auto& s : report["samples"]) EXPECT_EQ(s["dim_C"], 1);
  }
}

TEST(Cli, BFullCheckReportsNullC) {
  const CliRun r = run_cli({"analyze", kData + "/example2_structure.json", "--check", "b-full"});
  ASSERT_EQ(r.code, cli::kExitOk);
  const io::Json report = io::Json::parse(r.out);
  EXPECT_EQ(report["check"], "b-full");
  EXPECT_TRUE(report["samples"][0]["dim_C"].is_null());
}

TEST(Cli, TimeInvariantCheckRejectsTimeDependence) {
  const CliRun r = run_cli({"analyze", kData + "/example1_structure.json", "--check", "time-invariant"});
  EXPECT_EQ(r.code, cli::kExitInputError);
}

TEST(SpecFiles, BundledFilesRoundTripByteForByte) {
  int count = 0;
  for (const auto& entry : fs::directory_iterator(kData)) {
    const std::string name = entry.path().filename().string();
    if (name.find("_matrix.json") == std::string::npos && name.find("_structure.json") == std::string::npos)
      continue;
    ++count;
    const std::string text = slurp(entry.path().string());
    const SystemSpec sys = io::load_spec(entry.path().string());
    EXPECT_EQ(io::canonical_dump(io::spec_to_json(sys)), text) << name;
  }
  EXPECT_EQ(count, 8);
}

TEST(SpecFiles, Example1HasTwoControls) {
  const SystemSpec sys = io::load_spec(kData + "/example1_matrix.json");
  EXPECT_EQ(sys.num_controls(), 2);
  EXPECT_EQ(sys.dim, 12);
  EXPECT_EQ(io::load_spec(kData + "/example1_structure.json").num_controls(), 2);
}

TEST(SpecFiles, LoadedSpecMatchesBuilder) {
  const SystemSpec built = *build_example1().matrix;
  const SystemSpec loaded = io::load_spec(kData + "/example1_matrix.json");
  for (double t : {0.0, 0.9})
    EXPECT_LE((built.controls[1](t) - loaded.controls[1](t)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SpecFiles, NearUnitStateIsRenormalized) {
  io::Json j = qubit_json();
  j["initial_state"][0][0] = 1.0 + 1e-9;
  const SystemSpec sys = io::parse_spec(j);
  EXPECT_NEAR(sys.initial_state.norm(), 1.0, 1e-15);

  j["initial_state"][0][0] = 1.0 + 1e-6;
  try {
    io::parse_spec(j);
    FAIL() << "non-unit state accepted";
  } catch (const InputError& e) {
    EXPECT_EQ(e.path(), "initial_state");
  }
}

TEST(SpecFiles, HermitianOperatorIsNamed) {
  io::Json j = qubit_json();
  j["basis"]["X"] = io::Json::array({io::Json::array({io::Json::array({0, 0}), io::Json::array({1, 0})}),
                                     io::Json::array({io::Json::array({1, 0}), io::Json::array({0, 0})})});
  try {
    io::parse_spec(j);
    FAIL() << "Hermitian operator accepted";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("X"), std::string::npos) << e.what();
    EXPECT_NE(e.path().find("controls[0]"), std::string::npos) << e.path();
  }
  const CliRun r = run_cli({"analyze", write_json("hermitian.json", j)});
  EXPECT_EQ(r.code, cli::kExitInputError);
  EXPECT_NE(r.err.find("(X)"), std::string::npos) << r.err;
}

TEST(SpecFiles, StructureConstantsMustSatisfyJacobi) {
  io::Json j = io::read_json(kData + "/example2_structure.json");
  auto& c = j["structure_constants"];
  // [L2, P1] -> +B1 and its antisymmetric partner.
  c[1][3][5] = 1.0;
  c[3][1][5] = -1.0;
  try {
    io::parse_spec(j);
    FAIL() << "Jacobi violation accepted";
  } catch (const InputError& e) {
    EXPECT_EQ(e.path(), "structure_constants");
  }
}

TEST(Cli, SimulateWritesTrajectory) {
  const std::string out = temp_path("traj.json");
  const CliRun r = run_cli({"simulate", kData + "/qubit_xy_matrix.json", "--schedule",
                         kData + "/schedule_xy.json", "--out", out});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const io::Json traj = io::read_json(out);
  EXPECT_EQ(traj["times"].size(), traj["states"].size());
  EXPECT_LE(traj["norm_drift"].get<double>(), 1e-10);

  const CliRun aug = run_cli({"simulate", kData + "/qubit_xy_matrix.json", "--schedule",
                           kData + "/schedule_xy.json", "--augmented"});
  ASSERT_EQ(aug.code, cli::kExitOk);
  EXPECT_TRUE(io::Json::parse(aug.out).contains("time_component"));
}

TEST(Cli, SimulateRejectsWrongControlCount) {
  const CliRun r = run_cli({"simulate", kData + "/qubit_x_matrix.json", "--schedule",
                         kData + "/schedule_xy.json"});
  EXPECT_EQ(r.code, cli::kExitInputError);
}

TEST(Cli, SteerReachesTarget) {
  const CliRun r = run_cli({"steer", kData + "/qubit_xy_matrix.json", "--target", kData + "/target_one.json",
                         "--time", "3.141592653589793", "--segments", "8", "--seed", "4"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const io::Json res = io::Json::parse(r.out);
  EXPECT_GE(res["fidelity"].get<double>(), 0.999);
  EXPECT_EQ(res["converged"], true);
}

TEST(Cli, SampleIsSeedDeterministic) {
  const std::vector<std::string> args{"sample", kData + "/qubit_xy_matrix.json", "--time", "2",
                                      "--schedules", "20", "--seed", "9"};
  const CliRun a = run_cli(args), b = run_cli(args);
  ASSERT_EQ(a.code, cli::kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(io::Json::parse(a.out)["endpoints"].size(), 20u);
}

TEST(Cli, ExportRejectsMissingBackend) {
  EXPECT_EQ(run_cli({"export", "example2", "--backend", "matrix"}).code, cli::kExitInputError);
  const CliRun r = run_cli({"export", "example2", "--backend", "structure"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(r.out, slurp(kData + "/example2_structure.json"));
}

TEST(Cli, VersionFlag) {
  const CliRun r = run_cli({"--version"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find(io::tool_version()), std::string::npos);
}

TEST(Cli, InstalledBinaryExitCodes) {
  const std::string tool = LIEREACH_TOOL;
  auto status = [&](const std::string& args) {
    const int s = std::system((tool + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  EXPECT_EQ(status("demo example1"), 0);
  EXPECT_EQ(status("analyze " + kData + "/qubit_x_matrix.json --expect controllable"), 1);
  EXPECT_EQ(status("analyze --bogus"), 2);
}
