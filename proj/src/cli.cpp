#include "liereach/cli.hpp"

#include <cstdio>
#include <optional>

#include <CLI11.hpp>

#include "liereach/case_studies.hpp"
#include "liereach/errors.hpp"
#include "liereach/spec_io.hpp"

namespace liereach::cli {

namespace {

std::string fmt(double v, const char* spec = "%.3e") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

void emit(const io::Json& j, const std::string& out_path, std::ostream& out) {
  if (out_path.empty())
    out << io::canonical_dump(j);
  else
    io::write_text(out_path, io::canonical_dump(j));
}

std::string summary(const ControllabilityReport& r) {
  std::string s = r.system + ": " + to_string(r.verdict) + " (m " + std::to_string(r.m) + ", " +
                  to_string(r.mode);
  for (const auto& f : r.flags) s += ", " + f;
  return s + ")";
}

// Compares a report against the expected fields; returns false on a mismatch.
bool report_matches(const ControllabilityReport& r, const ExpectedReport& e, std::ostream& out,
                    const std::string& label) {
  bool ok = r.verdict == e.verdict && r.m == e.m;
  for (const auto& s : r.samples)
    ok = ok && s.dim_B == e.dim_B && s.dim_C == e.dim_C && s.dim_A == e.dim_A;
  const auto& s0 = r.samples.front();
  out << label << ": dim_B " << s0.dim_B << " dim_C " << (s0.dim_C ? *s0.dim_C : -1) << " dim_A "
      << s0.dim_A << " m " << r.m << " verdict " << to_string(r.verdict) << " mode "
      << to_string(r.mode) << " ideal residual " << fmt(s0.ideal_residual_max)
      << (ok ? " [ok]" : " [MISMATCH]") << "\n";
  return ok;
}

int run_demo(const std::string& name, std::ostream& out) {
  const CaseStudy cs = build_case(name);
  bool ok = true;
  if (name == "drift2d") {
    const auto rows = product_convergence(*cs.matrix, cs.word, {1, 10, 100});
    for (const auto& row : rows) {
      out << "n " << row.n << " endpoint error " << fmt(row.error) << "\n";
      ok = ok && row.error <= 1e-12;
    }
  } else {
    if (cs.structure) {
      const auto r = check_sufficient_conditions(*cs.structure);
      ok = report_matches(r, *cs.expected, out, name + " [structure]") && ok;
      if (name == "example2") out << "closure dim " << *r.samples.front().dim_C << "\n";
    }
    if (cs.matrix) {
      const auto r = check_sufficient_conditions(*cs.matrix);
      ok = report_matches(r, *cs.expected, out, name + " [matrix]") && ok;
    }
  }
  for (const auto& note : cs.notes) out << "note: " << note << "\n";
  out << (ok ? "expected fields reproduced" : "expected fields NOT reproduced") << "\n";
  return ok ? kExitOk : kExitConditionFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lie-algebraic controllability analysis for bilinear quantum control systems",
               "liereach"};
  app.set_version_flag("--version", std::string(io::tool_version()));
  app.require_subcommand(1);

  AnalysisOptions opts;
  std::string spec_path, out_path, check = "full", expect;
  auto* analyze = app.add_subcommand("analyze", "Check the sufficient controllability conditions");
  analyze->add_option("spec", spec_path, "System spec file")->required();
  analyze->add_option("--jet-order", opts.jet_order, "Jet order for time derivatives")
      ->capture_default_str();
  analyze->add_option("--tol", opts.tol, "Rank and residual tolerance")->capture_default_str();
  analyze->add_option("--max-depth", opts.max_depth, "Longest admitted bracket word")
      ->capture_default_str();
  analyze->add_option("--max-generations", opts.max_generations, "Generations of the C recursion")
      ->capture_default_str();
  analyze->add_option("--check", check, "full | time-invariant | b-full")
      ->check(CLI::IsMember({"full", "time-invariant", "b-full"}))
      ->capture_default_str();
  analyze->add_option("--expect", expect, "Exit 1 unless the verdict matches")
      ->check(CLI::IsMember({"controllable"}));
  analyze->add_option("--out", out_path, "Report file (default: stdout)");

  std::string schedule_path;
  double dt_max = 0.0;
  bool augmented = false;
  auto* simulate = app.add_subcommand("simulate", "Propagate under a control schedule");
  simulate->add_option("spec", spec_path, "System spec file")->required();
  simulate->add_option("--schedule", schedule_path, "Schedule file")->required();
  simulate->add_option("--dt-max", dt_max, "Largest step (default: duration / 1000)");
  simulate->add_flag("--augmented", augmented, "Integrate the time-augmented system");
  simulate->add_option("--out", out_path, "Trajectory file (default: stdout)");

  std::string target_path;
  double horizon = 0.0;
  int segments = 0, budget = 10000;
  std::uint64_t seed = 1;
  SteeringOptions steer_opts;
  auto* steer_cmd = app.add_subcommand("steer", "Search piecewise-constant controls toward a target");
  steer_cmd->add_option("spec", spec_path, "System spec file")->required();
  steer_cmd->add_option("--target", target_path, "Target state file")->required();
  steer_cmd->add_option("--time", horizon, "Arrival time T")->required();
  steer_cmd->add_option("--segments", segments, "Number of equal segments")->required();
  steer_cmd->add_option("--budget", budget, "Objective evaluations")->capture_default_str();
  steer_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  steer_cmd->add_option("--goal", steer_opts.goal, "Fidelity goal")->capture_default_str();
  steer_cmd->add_option("--out", out_path, "Result file (default: stdout)");

  int n_schedules = 100, max_segments = 4;
  double bound = 1.0;
  auto* sample = app.add_subcommand("sample", "Endpoints of random control schedules");
  sample->add_option("spec", spec_path, "System spec file")->required();
  sample->add_option("--time", horizon, "Horizon T")->required();
  sample->add_option("--schedules", n_schedules, "Number of schedules")->capture_default_str();
  sample->add_option("--max-segments", max_segments, "Segments per schedule")->capture_default_str();
  sample->add_option("--bound", bound, "Amplitude bound")->capture_default_str();
  sample->add_option("--seed", seed, "Random seed")->capture_default_str();
  sample->add_option("--out", out_path, "Output file (default: stdout)");

  std::string case_name;
  auto* demo = app.add_subcommand("demo", "Run a bundled case study and check its expected fields");
  demo->add_option("case", case_name, "example1 | example2 | example3 | drift2d")
      ->required()
      ->check(CLI::IsMember(case_study_names()));

  std::string backend_name = "matrix";
  auto* exp = app.add_subcommand("export", "Write a bundled case study as a spec file");
  exp->add_option("case", case_name, "example1 | example2 | example3 | drift2d")
      ->required()
      ->check(CLI::IsMember(case_study_names()));
  exp->add_option("--backend", backend_name, "matrix | structure")
      ->check(CLI::IsMember({"matrix", "structure"}))
      ->capture_default_str();
  exp->add_option("--out", out_path, "Spec file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInputError;
  }

  try {
    if (*analyze) {
      const SystemSpec sys = io::load_spec(spec_path);
      ControllabilityReport report;
      if (check == "time-invariant")
        report = check_time_invariant(sys, opts);
      else if (check == "b-full")
        report = check_b_full(sys, opts);
      else
        report = check_sufficient_conditions(sys, opts);
      if (out_path.empty()) {
        out << io::canonical_dump(io::report_to_json(report));
      } else {
        io::write_report(report, out_path);
        out << summary(report) << "\n";
      }
      if (report.verdict == Verdict::inconclusive) return kExitInconclusive;
      if (report.verdict == Verdict::condition_failed && expect == "controllable")
        return kExitConditionFailed;
      return kExitOk;
    }
    if (*simulate) {
      const SystemSpec sys = io::load_spec(spec_path);
      const ControlSchedule sched =
          io::parse_schedule(io::read_json(schedule_path), sys.num_controls());
      const Trajectory traj =
          augmented ? propagate_augmented(augment(sys), sched, dt_max) : propagate(sys, sched, dt_max);
      emit(io::trajectory_to_json(traj), out_path, out);
      if (!out_path.empty())
        out << "steps " << traj.times.size() - 1 << " norm drift " << fmt(traj.norm_drift) << "\n";
      return kExitOk;
    }
    if (*steer_cmd) {
      const SystemSpec sys = io::load_spec(spec_path);
      const ComplexVector target = io::parse_state(io::read_json(target_path));
      const SteeringResult r = steer(sys, target, horizon, segments, budget, seed, steer_opts);
      emit(io::steering_to_json(r), out_path, out);
      if (!out_path.empty())
        out << "fidelity " << fmt(r.fidelity, "%.9f") << " evaluations " << r.evaluations
            << (r.converged ? " converged" : " not converged") << "\n";
      return kExitOk;
    }
    if (*sample) {
      const SystemSpec sys = io::load_spec(spec_path);
      const auto cloud = reachable_sample(sys, horizon, n_schedules, max_segments, bound, seed);
      io::Json endpoints = io::Json::array();
      for (const auto& psi : cloud) endpoints.push_back(io::state_to_json(psi));
      emit({{"endpoints", endpoints}, {"seed", seed}, {"time", horizon}}, out_path, out);
      return kExitOk;
    }
    if (*demo) return run_demo(case_name, out);
    if (*exp) {
      const CaseStudy cs = build_case(case_name);
      const auto& sys = backend_name == "structure" ? cs.structure : cs.matrix;
      if (!sys) throw InputError("backend", case_name + " has no " + backend_name + " variant");
      emit(io::spec_to_json(*sys), out_path, out);
      return kExitOk;
    }
  } catch (const InputError& e) {
    err << "input error at " << (e.path().empty() ? "(document)" : e.path()) << ": " << e.what()
        << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"liereach"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace liereach::cli
