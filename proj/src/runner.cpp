#include "deto/scenario/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <limits>
#include <mutex>
#include <thread>

#include "deto/errors.hpp"
#include "deto/io/csv.hpp"
#include "deto/scenario/rng.hpp"

namespace deto {

namespace {

ClosedLoop make_loop(const Scenario& s) {
  return ClosedLoop(*s.plant, *s.observer, *s.signals, s.nodes, s.input_etm);
}

void error_window(const Scenario& s, double& t1, double& t2) {
  // The standard horizon reports the estimation error over [20, 30]; shorter
  // runs fall back to the last third.
  if (s.config.horizon >= 30.0) {
    t1 = 20.0;
    t2 = 30.0;
  } else {
    t1 = 2.0 * s.config.horizon / 3.0;
    t2 = s.config.horizon;
  }
}

}  // namespace

RunResult run_scenario(const Scenario& scenario) {
  ClosedLoop loop = make_loop(scenario);
  HybridSimulator sim(loop);
  RunResult result;
  result.trace = sim.run(scenario.q0, scenario.ybar0, scenario.ubar0, scenario.config.horizon,
                         scenario.config.dt, scenario.config.digest());

  double t1, t2;
  error_window(scenario, t1, t2);
  result.metrics = compute_metrics(result.trace, *scenario.observer, 0.0,
                                   scenario.config.horizon, t1, t2);
  result.certificates =
      check_certificates(result.trace, *scenario.observer, *scenario.plant, *scenario.signals,
                         scenario.nodes, scenario.input_etm, scenario.P, scenario.d);
  if (scenario.theorem3 && scenario.gains) {
    result.certificates.has_envelope = true;
    result.certificates.envelope =
        verify_theorem3_envelope(result.trace, *scenario.observer, scenario.P,
                                 *scenario.theorem3, scenario.gains->theta,
                                 scenario.signals->sup_v_norm());
  }
  return result;
}

void write_run_csvs(const RunResult& result, const Scenario& scenario,
                    const std::string& outdir) {
  namespace fs = std::filesystem;
  fs::create_directories(outdir);
  const SimTrace& trace = result.trace;
  const StateLayout& lay = trace.layout;

  {
    io::CsvWriter w(outdir + "/trace.csv");
    std::vector<std::string> cols = {"t", "j"};
    for (int i = 1; i <= lay.nx; ++i) cols.push_back("x" + std::to_string(i));
    for (int i = 1; i <= lay.nx; ++i) cols.push_back("xh" + std::to_string(i));
    for (int i = 1; i <= lay.ny(); ++i) cols.push_back("e" + std::to_string(i));
    for (int i = 1; i <= lay.num_nodes(); ++i) cols.push_back("eta" + std::to_string(i));
    for (int i = 1; i <= lay.ny(); ++i) cols.push_back("ybar" + std::to_string(i));
    if (lay.has_input_channel()) {
      for (int i = 1; i <= lay.nu_trig; ++i) cols.push_back("eu" + std::to_string(i));
      cols.push_back("etau");
      for (int i = 1; i <= lay.nu_trig; ++i) cols.push_back("ubar" + std::to_string(i));
    }
    cols.push_back("U");
    w.header(cols);

    VectorXd xhat(lay.nx);
    for (const TraceSample& s : trace.samples) {
      w.begin_row();
      w.field(s.ht.t);
      w.field(s.ht.j);
      for (int i = 0; i < lay.nx; ++i) w.field(s.q(lay.x_offset() + i));
      scenario.observer->estimate(s.q.segment(lay.z_offset(), lay.nz), xhat);
      for (int i = 0; i < lay.nx; ++i) w.field(xhat(i));
      for (int i = 0; i < lay.ny(); ++i) w.field(s.q(lay.e_offset() + i));
      for (int i = 0; i < lay.num_nodes(); ++i) w.field(s.q(lay.eta_offset() + i));
      for (int i = 0; i < lay.ny(); ++i) w.field(s.ybar(i));
      if (lay.has_input_channel()) {
        for (int i = 0; i < lay.nu_trig; ++i) w.field(s.q(lay.eu_offset() + i));
        w.field(s.q(lay.etau_offset()));
        for (int i = 0; i < lay.nu_trig; ++i) w.field(s.ubar(i));
      }
      w.field(eval_U(s.q, lay, *scenario.observer, scenario.P, scenario.d));
      w.end_row();
    }
  }

  {
    io::CsvWriter w(outdir + "/events.csv");
    w.header({"t", "j", "node"});
    for (const TraceEvent& ev : trace.events) {
      w.begin_row();
      w.field(ev.ht.t);
      w.field(ev.ht.j);
      // sensor nodes are 1-based in files; 0 marks the input channel
      w.field(static_cast<long>(ev.node < lay.num_nodes() ? ev.node + 1 : 0));
      w.end_row();
    }
  }

  {
    io::CsvWriter w(outdir + "/metrics.csv");
    w.header({"metric", "channel", "value"});
    auto row = [&](const std::string& metric, long channel, double value) {
      w.begin_row();
      w.field(metric);
      w.field(channel);
      w.field(value);
      w.end_row();
    };
    for (size_t c = 0; c < result.metrics.per_channel.size(); ++c) {
      const long id = c < static_cast<size_t>(lay.num_nodes()) ? static_cast<long>(c + 1) : 0;
      row("events", id, static_cast<double>(result.metrics.per_channel[c].events));
      row("min_iet", id, result.metrics.per_channel[c].min_iet);
      row("mean_iet", id, result.metrics.per_channel[c].mean_iet);
    }
    row("max_xi", 0, result.metrics.max_estimation_error);
    row("total_jumps", 0, static_cast<double>(result.metrics.total_jumps));
  }

  {
    io::CsvWriter w(outdir + "/certificates.csv");
    w.header({"check", "channel", "value", "pass"});
    auto row = [&](const std::string& check, long channel, double value, bool pass) {
      w.begin_row();
      w.field(check);
      w.field(channel);
      w.field(value);
      w.field(std::string(pass ? "1" : "0"));
      w.end_row();
    };
    row("jump_worst_increase", 0, result.certificates.jump_monitor.worst_increase,
        result.certificates.jump_monitor.pass);
    row("jump_worst_relative", 0, result.certificates.jump_monitor.worst_relative,
        result.certificates.jump_monitor.pass);
    for (size_t c = 0; c < result.certificates.iet_checks.size(); ++c) {
      const auto& chk = result.certificates.iet_checks[c];
      const long id = c < static_cast<size_t>(lay.num_nodes()) ? static_cast<long>(c + 1) : 0;
      row("tau_guaranteed", id, chk.tau_guaranteed, chk.pass);
      row("min_iet_measured", id, chk.measured_min, chk.pass);
    }
    row("dwell_violation", 0, result.certificates.dwell_violation,
        result.certificates.dwell_pass);
    row("drift_bound_E", 0, result.certificates.estimated_E, true);
    if (result.certificates.has_envelope)
      row("envelope_violation", 0, result.certificates.envelope.worst_violation,
          result.certificates.envelope.pass);
  }
}

void emit_plot_data(const SimTrace& trace, const ObserverModel& observer,
                    const std::string& outdir) {
  namespace fs = std::filesystem;
  fs::create_directories(outdir);
  const StateLayout& lay = trace.layout;

  {
    io::CsvWriter w(outdir + "/states.csv");
    std::vector<std::string> cols = {"t"};
    for (int i = 1; i <= lay.nx; ++i) cols.push_back("x" + std::to_string(i));
    for (int i = 1; i <= lay.nx; ++i) cols.push_back("xh" + std::to_string(i));
    w.header(cols);
    VectorXd xhat(lay.nx);
    for (const TraceSample& s : trace.samples) {
      w.begin_row();
      w.field(s.ht.t);
      for (int i = 0; i < lay.nx; ++i) w.field(s.q(lay.x_offset() + i));
      observer.estimate(s.q.segment(lay.z_offset(), lay.nz), xhat);
      for (int i = 0; i < lay.nx; ++i) w.field(xhat(i));
      w.end_row();
    }
  }
  {
    io::CsvWriter w(outdir + "/xi.csv");
    w.header({"t", "xi"});
    VectorXd xhat(lay.nx);
    for (const TraceSample& s : trace.samples) {
      observer.estimate(s.q.segment(lay.z_offset(), lay.nz), xhat);
      w.begin_row();
      w.field(s.ht.t);
      w.field((s.q.segment(lay.x_offset(), lay.nx) - xhat).norm());
      w.end_row();
    }
  }
  {
    io::CsvWriter w(outdir + "/iet.csv");
    w.header({"node", "t", "gap"});
    for (int c = 0; c < lay.num_channels(); ++c) {
      double prev = std::numeric_limits<double>::quiet_NaN();
      for (const TraceEvent& ev : trace.events) {
        if (ev.node != c) continue;
        if (!std::isnan(prev)) {
          w.begin_row();
          w.field(static_cast<long>(c < lay.num_nodes() ? c + 1 : 0));
          w.field(ev.ht.t);
          w.field(ev.ht.t - prev);
          w.end_row();
        }
        prev = ev.ht.t;
      }
    }
  }
}

void emit_plot_data_from_csv(const std::string& trace_csv, const std::string& outdir) {
  namespace fs = std::filesystem;
  fs::create_directories(outdir);
  const io::CsvTable table = io::read_csv(trace_csv);
  const int tcol = table.column("t");
  const int jcol = table.column("j");
  if (tcol < 0 || jcol < 0) throw BadInput("plotdata: trace file lacks t/j columns");

  std::vector<int> xcols, xhcols;
  for (int i = 1;; ++i) {
    const int cx = table.column("x" + std::to_string(i));
    const int ch = table.column("xh" + std::to_string(i));
    if (cx < 0 || ch < 0) break;
    xcols.push_back(cx);
    xhcols.push_back(ch);
  }
  if (xcols.empty()) throw BadInput("plotdata: trace file lacks state columns");

  {
    io::CsvWriter w(outdir + "/states.csv");
    std::vector<std::string> cols = {"t"};
    for (size_t i = 1; i <= xcols.size(); ++i) cols.push_back("x" + std::to_string(i));
    for (size_t i = 1; i <= xcols.size(); ++i) cols.push_back("xh" + std::to_string(i));
    w.header(cols);
    for (const auto& row : table.rows) {
      w.begin_row();
      w.field(row[tcol]);
      for (int c : xcols) w.field(row[c]);
      for (int c : xhcols) w.field(row[c]);
      w.end_row();
    }
  }
  {
    io::CsvWriter w(outdir + "/xi.csv");
    w.header({"t", "xi"});
    for (const auto& row : table.rows) {
      double s = 0.0;
      for (size_t i = 0; i < xcols.size(); ++i) {
        const double d = row[xcols[i]] - row[xhcols[i]];
        s += d * d;
      }
      w.begin_row();
      w.field(row[tcol]);
      w.field(std::sqrt(s));
      w.end_row();
    }
  }
  {
    // Jump instants are sample pairs with equal t and j incremented; which
    // node fired is recovered from the e-column that resets to zero.
    std::vector<int> ecols;
    for (int i = 1;; ++i) {
      const int c = table.column("e" + std::to_string(i));
      if (c < 0) break;
      ecols.push_back(c);
    }
    io::CsvWriter w(outdir + "/iet.csv");
    w.header({"node", "t", "gap"});
    std::vector<double> prev(ecols.size() + 1, std::numeric_limits<double>::quiet_NaN());
    for (size_t r = 0; r + 1 < table.rows.size(); ++r) {
      const auto& a = table.rows[r];
      const auto& b = table.rows[r + 1];
      if (b[jcol] != a[jcol] + 1.0) continue;
      int node = -1;
      for (size_t i = 0; i < ecols.size(); ++i)
        if (a[ecols[i]] != 0.0 && b[ecols[i]] == 0.0) node = static_cast<int>(i);
      if (node < 0) node = static_cast<int>(ecols.size());  // input channel
      const double t = b[tcol];
      if (!std::isnan(prev[node])) {
        w.begin_row();
        w.field(static_cast<long>(node < static_cast<int>(ecols.size()) ? node + 1 : 0));
        w.field(t);
        w.field(t - prev[node]);
        w.end_row();
      }
      prev[node] = t;
    }
  }
}

SweepResult run_sweep(const std::vector<ScenarioConfig>& rows, int runs, std::uint64_t seed,
                      int threads, bool verbose) {
  if (rows.empty()) throw BadInput("run_sweep: no rows");
  const SweepRanges& ranges = rows.front().sweep;
  const size_t nx = ranges.x_low.size();
  if (nx == 0 || ranges.x_high.size() != nx)
    throw ConfigError("run_sweep: sweep ranges missing or inconsistent");

  // One IC table for every row and both disturbance columns, drawn in
  // x1..x4 order per run.
  std::vector<std::vector<double>> ics(static_cast<size_t>(runs));
  {
    Rng rng(seed);
    for (int k = 0; k < runs; ++k) {
      ics[k].resize(nx);
      for (size_t i = 0; i < nx; ++i)
        ics[k][i] = rng.uniform(ranges.x_low[i], ranges.x_high[i]);
    }
  }

  struct Cell {
    double count = 0.0;
    double max_xi = 0.0;
    std::vector<double> min_iet;
    bool pass = true;
  };
  const size_t columns = 2;  // with and without (v, m)
  std::vector<Cell> cells(rows.size() * columns * static_cast<size_t>(runs));

  std::atomic<size_t> next{0};
  const size_t total = cells.size();
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    try {
      for (;;) {
        const size_t idx = next.fetch_add(1);
        if (idx >= total) return;
        const size_t row = idx / (columns * runs);
        const size_t rem = idx % (columns * runs);
        const size_t col = rem / runs;
        const size_t run = rem % runs;

        ScenarioConfig config = rows[row];
        config.enable_v = (col == 0);
        config.enable_m = (col == 0);
        config.x0.assign(ics[run].begin(), ics[run].end());
        config.z0.clear();  // estimate always starts at the origin

        const Scenario scenario = compile_scenario(config);
        const RunResult result = run_scenario(scenario);

        Cell& cell = cells[idx];
        cell.count = 0.0;
        for (int n = 0; n < scenario.plant->num_nodes(); ++n)
          cell.count += static_cast<double>(
              event_count(result.trace, n, 0.0, config.horizon));
        cell.max_xi = result.metrics.max_estimation_error;
        for (int n = 0; n < scenario.plant->num_nodes(); ++n)
          cell.min_iet.push_back(result.certificates.iet_checks[n].measured_min);
        cell.pass = result.certificates.all_pass();
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
      next.store(total);  // stop the other workers
    }
  };

  const int nthreads = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);

  SweepResult result;
  for (size_t row = 0; row < rows.size(); ++row) {
    for (size_t col = 0; col < columns; ++col) {
      SweepRowResult agg;
      agg.name = rows[row].name;
      agg.with_disturbance = (col == 0);
      const size_t nnodes = cells[(row * columns + col) * runs].min_iet.size();
      agg.min_iet.assign(nnodes, std::numeric_limits<double>::infinity());
      for (int run = 0; run < runs; ++run) {
        const Cell& cell = cells[(row * columns + col) * runs + run];
        agg.mean_count += cell.count;
        agg.mean_max_xi += cell.max_xi;
        for (size_t n = 0; n < nnodes; ++n)
          agg.min_iet[n] = std::min(agg.min_iet[n], cell.min_iet[n]);
        agg.certificates_pass = agg.certificates_pass && cell.pass;
      }
      agg.mean_count /= runs;
      agg.mean_max_xi /= runs;
      result.rows.push_back(agg);
      if (verbose)
        std::fprintf(stderr, "sweep: %s %s: mean count %.1f, mean max|xi| %.4g\n",
                     agg.name.c_str(), agg.with_disturbance ? "with v,m" : "without v,m",
                     agg.mean_count, agg.mean_max_xi);
    }
  }
  return result;
}

void write_sweep_csv(const SweepResult& result, const std::string& path) {
  io::CsvWriter w(path);
  std::vector<std::string> cols = {"row", "disturbance", "mean_count", "mean_max_xi",
                                   "certificates_pass"};
  size_t max_nodes = 0;
  for (const auto& r : result.rows) max_nodes = std::max(max_nodes, r.min_iet.size());
  for (size_t n = 1; n <= max_nodes; ++n) cols.push_back("min_iet" + std::to_string(n));
  w.header(cols);
  for (const auto& r : result.rows) {
    w.begin_row();
    w.field(r.name);
    w.field(std::string(r.with_disturbance ? "with_vm" : "without_vm"));
    w.field(r.mean_count);
    w.field(r.mean_max_xi);
    w.field(std::string(r.certificates_pass ? "1" : "0"));
    for (size_t n = 0; n < max_nodes; ++n)
      w.field(n < r.min_iet.size() ? r.min_iet[n] : std::numeric_limits<double>::quiet_NaN());
    w.end_row();
  }
}

}  // namespace deto
