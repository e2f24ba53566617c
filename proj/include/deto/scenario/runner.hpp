#pragma once

#include <string>
#include <vector>

#include "deto/analysis/certificates.hpp"
#include "deto/scenario/config.hpp"

namespace deto {

struct RunResult {
  SimTrace trace;
  Metrics metrics;
  CertificateReport certificates;
};

/// Deterministic single-scenario run: simulate, compute window metrics
/// (events over [0, horizon], estimation error over the last third of the
/// horizon for short runs or [20, 30] for the standard one) and run every
/// per-trace certificate check, including the decay envelope when the
/// scenario was designed for one.
RunResult run_scenario(const Scenario& scenario);

/// Writes trace.csv, events.csv, metrics.csv and certificates.csv into
/// outdir (created if missing). Column orders are fixed; identical scenario
/// and seed give byte-identical files.
void write_run_csvs(const RunResult& result, const Scenario& scenario, const std::string& outdir);

/// Plot-data bundles from a trace: states.csv (state/estimate overlay),
/// xi.csv (|x - xhat| against time) and iet.csv (per-channel gap stems).
void emit_plot_data(const SimTrace& trace, const ObserverModel& observer,
                    const std::string& outdir);
/// Same bundles recovered from a previously written trace.csv.
void emit_plot_data_from_csv(const std::string& trace_csv, const std::string& outdir);

struct SweepRowResult {
  std::string name;
  bool with_disturbance = true;
  double mean_count = 0.0;        // ensemble mean of transmissions in [0, horizon]
  double mean_max_xi = 0.0;       // ensemble mean of per-run max |xi| over [20, 30]
  std::vector<double> min_iet;    // per sensor node, min over the ensemble
  bool certificates_pass = true;  // every run's jump/IET/dwell checks
};

struct SweepResult {
  std::vector<SweepRowResult> rows;
};

/// Seeded Monte-Carlo sweep: `runs` initial conditions drawn once from the
/// ranges in rows[0].sweep (x1..x4 order per run, shared across every row
/// and both disturbance columns), each row simulated with and without (v, m).
/// Tasks run on `threads` workers; results reduce in (row, column, run)
/// order regardless of completion order.
SweepResult run_sweep(const std::vector<ScenarioConfig>& rows, int runs, std::uint64_t seed,
                      int threads, bool verbose = false);

void write_sweep_csv(const SweepResult& result, const std::string& path);

}  // namespace deto
