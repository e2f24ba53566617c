// Command-line front end: validate configs, run scenarios and Monte-Carlo
// sweeps, and emit plot-ready CSV bundles.
//
// Exit codes: 0 success, 2 validation failure, 3 certificate-check failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "deto/errors.hpp"
#include "deto/scenario/runner.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitCertificates = 3;

/// A scenario argument is either a JSON file path or a preset name.
deto::ScenarioConfig resolve_config(const std::string& arg) {
  if (std::filesystem::exists(arg)) return deto::load_config(arg);
  return deto::preset_config(arg);
}

std::string default_outdir() {
  const char* env = std::getenv("ETSIM_OUTDIR");
  return env ? env : "out";
}

void print_certificates(const deto::CertificateReport& report) {
  std::printf("certificates:\n");
  std::printf("  jump non-increase: worst dU = %.3e (%s, %ld jumps)\n",
              report.jump_monitor.worst_increase, report.jump_monitor.pass ? "pass" : "FAIL",
              report.jump_monitor.jumps_checked);
  for (size_t c = 0; c < report.iet_checks.size(); ++c) {
    const auto& chk = report.iet_checks[c];
    std::printf("  channel %zu: tau >= %.6g s, measured min IET %.6g s (%s)\n", c + 1,
                chk.tau_guaranteed, chk.measured_min, chk.pass ? "pass" : "FAIL");
  }
  std::printf("  average dwell time: worst violation %.3e (%s)\n", report.dwell_violation,
              report.dwell_pass ? "pass" : "FAIL");
  if (report.has_envelope)
    std::printf("  decay envelope: worst violation %.3e vs U0 %.6g (%s)\n",
                report.envelope.worst_violation, report.envelope.U0,
                report.envelope.pass ? "pass" : "FAIL");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"event-triggered estimation simulator"};
  app.require_subcommand(1);

  std::string config_arg;
  std::string outdir = default_outdir();
  std::string trace_path;
  int runs = 0;
  int threads = static_cast<int>(std::thread::hardware_concurrency());

  auto* run_cmd = app.add_subcommand("run", "simulate one scenario and write CSVs");
  run_cmd->add_option("config", config_arg, "config file or preset name")->required();
  run_cmd->add_option("-o,--outdir", outdir, "output directory (env ETSIM_OUTDIR)");

  auto* sweep_cmd = app.add_subcommand("sweep", "seeded Monte-Carlo parameter sweep");
  sweep_cmd->add_option("preset", config_arg, "'table1' or a config file/preset used as one row")
      ->required();
  sweep_cmd->add_option("-o,--outdir", outdir, "output directory (env ETSIM_OUTDIR)");
  sweep_cmd->add_option("-r,--runs", runs, "override the number of initial conditions");
  sweep_cmd->add_option("-t,--threads", threads, "worker threads");

  auto* check_cmd = app.add_subcommand("check", "validate a config and report the design");
  check_cmd->add_option("config", config_arg, "config file or preset name")->required();

  auto* plot_cmd = app.add_subcommand("plotdata", "derive plot CSV bundles from a trace.csv");
  plot_cmd->add_option("trace", trace_path, "trace.csv produced by 'run'")->required();
  plot_cmd->add_option("-o,--outdir", outdir, "output directory (env ETSIM_OUTDIR)");

  auto* presets_cmd = app.add_subcommand("presets", "list built-in scenario presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      const deto::ScenarioConfig config = resolve_config(config_arg);
      const deto::Scenario scenario = deto::compile_scenario(config);
      const deto::RunResult result = deto::run_scenario(scenario);
      deto::write_run_csvs(result, scenario, outdir);
      std::printf("run '%s': %ld jumps, horizon %g s, outputs in %s/\n", config.name.c_str(),
                  result.metrics.total_jumps, config.horizon, outdir.c_str());
      for (size_t c = 0; c < result.metrics.per_channel.size(); ++c)
        std::printf("  channel %zu: %ld events, min IET %.6g s\n", c + 1,
                    result.metrics.per_channel[c].events, result.metrics.per_channel[c].min_iet);
      std::printf("  max |x - xhat| over error window: %.6g\n",
                  result.metrics.max_estimation_error);
      print_certificates(result.certificates);
      return result.certificates.all_pass() ? 0 : kExitCertificates;
    }

    if (sweep_cmd->parsed()) {
      std::vector<deto::ScenarioConfig> rows;
      if (config_arg == "table1") {
        rows = deto::table1_rows();
      } else {
        rows.push_back(resolve_config(config_arg));
      }
      const int n_runs = runs > 0 ? runs : rows.front().sweep.runs;
      const deto::SweepResult result =
          deto::run_sweep(rows, n_runs, rows.front().seed, threads, /*verbose=*/true);
      std::filesystem::create_directories(outdir);
      deto::write_sweep_csv(result, outdir + "/sweep.csv");
      bool all_pass = true;
      for (const auto& r : result.rows) all_pass = all_pass && r.certificates_pass;
      std::printf("sweep: %zu row-columns, %d runs each, results in %s/sweep.csv\n",
                  result.rows.size(), n_runs, outdir.c_str());
      return all_pass ? 0 : kExitCertificates;
    }

    if (check_cmd->parsed()) {
      const deto::ScenarioConfig config = resolve_config(config_arg);
      const deto::Scenario scenario = deto::compile_scenario(config);
      std::printf("config '%s' is valid (digest %s)\n", config.name.c_str(),
                  config.digest().c_str());
      for (size_t i = 0; i < scenario.theorem1.nodes.size(); ++i) {
        const auto& n = scenario.theorem1.nodes[i];
        std::printf("  node %zu: d* = %.6g, d = %.6g, delta = %.6g%s\n", i + 1, n.d_star, n.d,
                    n.delta, n.degenerate ? " (sigma* = 0 corner, d chosen explicitly)" : "");
      }
      std::printf("  practical-stability budget nu = %.6g (minimum %.6g)\n", scenario.theorem1.nu,
                  scenario.theorem1.nu_min);
      if (scenario.gains)
        std::printf("  certificate decay a = %.6g\n", scenario.gains->a.k);
      if (scenario.theorem3) {
        std::printf("  decay design: a_U = %.6g, mu = %.6g, epsilon budget = %.6g\n",
                    scenario.theorem3->a_U, scenario.theorem3->mu,
                    scenario.theorem3->epsilon_budget);
        for (size_t i = 0; i < scenario.theorem3->nodes.size(); ++i)
          std::printf("  node %zu: a* = %.6g, d = %.6g%s\n", i + 1,
                      scenario.theorem3->nodes[i].a_star, scenario.theorem3->nodes[i].d,
                      scenario.theorem3->nodes[i].degenerate ? " (degenerate)" : "");
      }
      return 0;
    }

    if (plot_cmd->parsed()) {
      deto::emit_plot_data_from_csv(trace_path, outdir);
      std::printf("plot data written to %s/\n", outdir.c_str());
      return 0;
    }

    if (presets_cmd->parsed()) {
      for (const auto& name : deto::preset_names()) std::printf("%s\n", name.c_str());
      return 0;
    }
  } catch (const deto::ConfigError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return kExitValidation;
  } catch (const deto::ParameterViolation& e) {
    std::fprintf(stderr, "parameter violation: %s\n", e.what());
    return kExitValidation;
  } catch (const deto::DecayUnachievable& e) {
    std::fprintf(stderr, "decay unachievable: %s\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
