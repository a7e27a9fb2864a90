// Copyright 2026 The cosmopair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// cosmopair: command-line driver.
//
//   sweep          n_k against x for any mix of methods -> sweep.csv, sweep.json
//   trajectory     fixed-basis populations along the grid -> trajectory_x<x>.csv
//   noise-study    raw / mitigated / extrapolated estimates -> noise_study.json
//   dump-schedule  step coefficients as JSON
//   dump-circuit   the gate list in the text circuit format
//   verify         fast self-check; exit 1 if anything fails
//
// Exit codes: 0 success, 1 verification or runtime failure, 2 usage error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cosmopair/cosmopair.hpp"
#include "cosmopair/driver.hpp"

namespace fs = std::filesystem;
using namespace cosmopair;
using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridOptions {
  std::vector<double> xs;
  std::optional<double> x_min, x_max;
  std::optional<int> x_points;

  std::vector<double> resolve(const std::vector<double>& fallback) const {
    if (!xs.empty()) {
      if (x_min || x_max || x_points) throw UsageError("--x cannot be combined with a log grid");
      return xs;
    }
    if (x_min || x_max || x_points) {
      return driver::log_grid(x_min.value_or(1.0), x_max.value_or(5.0), x_points.value_or(40));
    }
    return fallback;
  }

  void attach(CLI::App* app) {
    app->add_option("--x", xs, "Comma-separated x = |k eta_e| values")->delimiter(',');
    app->add_option("--x-min", x_min, "Log-grid lower end");
    app->add_option("--x-max", x_max, "Log-grid upper end");
    app->add_option("--x-points", x_points, "Log-grid point count");
  }

  json to_json(const std::vector<double>& resolved) const { return resolved; }
};

struct WindowOptions {
  std::optional<double> y_i, y_f;
  void attach(CLI::App* app) {
    app->add_option("--y-i", y_i, "Grid start (default -80)");
    app->add_option("--y-f", y_f, "Grid end (default -x + 2)");
  }
  void put(json& j) const {
    j["y_i"] = y_i ? json(*y_i) : json(nullptr);
    j["y_f"] = y_f ? json(*y_f) : json(nullptr);
  }
};

NoiseModel load_model(const std::string& path) {
  if (path.empty()) return NoiseModel::calibrated(kEncodedQubits);
  std::ifstream is(path);
  if (!is) throw UsageError("cannot read noise model file '" + path + "'");
  try {
    NoiseModel m = NoiseModel::from_json(json::parse(is));
    if (m.n_qubits() != kEncodedQubits) throw std::invalid_argument("model must cover 4 qubits");
    return m;
  } catch (const std::exception& e) {
    throw UsageError("bad noise model file '" + path + "': " + e.what());
  }
}

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

void emit(const std::optional<std::string>& out, const std::string& content) {
  if (out) {
    driver::write_atomic(*out, content);
  } else {
    std::cout << content;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pair creation across a de Sitter to radiation transition, four-qubit encoding"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "n_k versus x for the requested methods");
  GridOptions sweep_grid;
  WindowOptions sweep_win;
  std::string sweep_methods = "analytic,matrix";
  std::optional<int> sweep_steps;
  std::uint64_t sweep_shots = 8192, sweep_seed = 1;
  std::string sweep_model;
  std::vector<double> sweep_factors = default_zne_factors();
  std::string sweep_out = "out";
  unsigned sweep_threads = default_threads();
  sweep_grid.attach(sweep);
  sweep_win.attach(sweep);
  sweep->add_option("--methods", sweep_methods,
                    "Comma list of analytic,matrix,statevector,shots,noisy,mitigated,zne")
      ->capture_default_str();
  sweep->add_option("--n-steps", sweep_steps,
                    "Trotter steps (default: matrix 2500, statevector 1000, shots 500, noisy 1)");
  sweep->add_option("--shots", sweep_shots, "Shots per sampled estimate")->capture_default_str();
  sweep->add_option("--seed", sweep_seed, "Base seed")->capture_default_str();
  sweep->add_option("--model-file", sweep_model, "Noise model JSON (default: calibrated)");
  sweep->add_option("--factors", sweep_factors, "ZNE noise factors")->delimiter(',');
  sweep->add_option("--out-dir", sweep_out, "Output directory")->capture_default_str();
  sweep->add_option("--threads", sweep_threads, "Worker threads");

  // trajectory
  auto* traj = app.add_subcommand("trajectory", "Fixed-basis populations along the grid");
  GridOptions traj_grid;
  WindowOptions traj_win;
  int traj_steps = 2500;
  std::string traj_out = "out";
  traj_grid.attach(traj);
  traj_win.attach(traj);
  traj->add_option("--n-steps", traj_steps, "Trotter steps (0 = initial state only)")
      ->capture_default_str();
  traj->add_option("--out-dir", traj_out, "Output directory")->capture_default_str();

  // noise-study
  auto* noise = app.add_subcommand("noise-study", "Synthetic-noise raw, mitigated and ZNE report");
  GridOptions noise_grid;
  WindowOptions noise_win;
  driver::NoiseStudyConfig ncfg;
  std::string noise_model;
  std::string noise_out = "out";
  ncfg.threads = default_threads();
  noise_grid.attach(noise);
  noise_win.attach(noise);
  noise->add_option("--n-steps", ncfg.n_steps, "Trotter steps")->capture_default_str();
  noise->add_option("--shots", ncfg.shots, "Shots per circuit")->capture_default_str();
  noise->add_option("--seed", ncfg.seed, "Base seed")->capture_default_str();
  noise->add_option("--model-file", noise_model, "Noise model JSON (default: calibrated)");
  noise->add_option("--factors", ncfg.factors, "ZNE noise factors")->delimiter(',');
  noise->add_option("--out-dir", noise_out, "Output directory")->capture_default_str();
  noise->add_option("--threads", ncfg.threads, "Worker threads");

  // dump-schedule / dump-circuit
  auto* dsched = app.add_subcommand("dump-schedule", "Print the coefficient schedule as JSON");
  auto* dcirc = app.add_subcommand("dump-circuit", "Print the gate list");
  double dump_x = 2.0;
  int dump_steps = 1;
  WindowOptions dump_win;
  std::optional<std::string> dump_out;
  for (auto* sub : {dsched, dcirc}) {
    sub->add_option("--x", dump_x, "x = |k eta_e|")->capture_default_str();
    sub->add_option("--n-steps", dump_steps, "Trotter steps")->capture_default_str();
    sub->add_option("--output", dump_out, "Write here instead of stdout");
    dump_win.attach(sub);
  }

  app.add_subcommand("verify", "Fast self-check of encoding, oracle and engines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sweep->parsed()) {
      driver::SweepConfig cfg;
      cfg.xs = sweep_grid.resolve(driver::log_grid(1.0, 5.0, 40));
      std::stringstream ms(sweep_methods);
      for (std::string m; std::getline(ms, m, ',');) {
        try {
          cfg.methods.push_back(driver::parse_method(m));
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }
      cfg.n_steps = sweep_steps;
      cfg.y_i = sweep_win.y_i;
      cfg.y_f = sweep_win.y_f;
      cfg.shots = sweep_shots;
      cfg.seed = sweep_seed;
      cfg.model = load_model(sweep_model);
      cfg.factors = sweep_factors;
      cfg.threads = sweep_threads;

      json params = {{"x", cfg.xs},
                     {"methods", sweep_methods},
                     {"n_steps", sweep_steps ? json(*sweep_steps) : json(nullptr)},
                     {"shots", cfg.shots},
                     {"seed", cfg.seed},
                     {"model", cfg.model.to_json()},
                     {"factors", cfg.factors}};
      sweep_win.put(params);
      const auto rows = driver::run_sweep(cfg);
      const fs::path dir(sweep_out);
      driver::write_atomic(dir / "sweep.csv", driver::sweep_csv(rows, params));
      driver::write_atomic(dir / "sweep.json", driver::sweep_json(rows, params).dump(2) + "\n");
      std::cout << "wrote " << rows.size() << " rows to " << (dir / "sweep.csv").string() << "\n";
      return 0;
    }

    if (traj->parsed()) {
      const auto xs = traj_grid.resolve({1.5, 2.0});
      for (double x : xs) {
        json params = {{"x", x}, {"n_steps", traj_steps}};
        traj_win.put(params);
        const auto t = driver::run_trajectory(x, traj_steps, traj_win.y_i, traj_win.y_f);
        const fs::path path = fs::path(traj_out) / ("trajectory_x" + driver::fmt(x) + ".csv");
        driver::write_atomic(path, driver::trajectory_csv(t, params));
        std::cout << "wrote " << path.string() << "\n";
      }
      return 0;
    }

    if (noise->parsed()) {
      ncfg.xs = noise_grid.resolve(ncfg.xs);
      ncfg.model = load_model(noise_model);
      ncfg.y_i = noise_win.y_i;
      ncfg.y_f = noise_win.y_f;
      json params = {{"x", ncfg.xs},       {"n_steps", ncfg.n_steps},
                     {"shots", ncfg.shots}, {"seed", ncfg.seed},
                     {"model", ncfg.model.to_json()}};
      noise_win.put(params);
      json report = {{"schema_version", driver::kSchemaVersion},
                     {"tool", "cosmopair"},
                     {"version", kVersion},
                     {"command", "noise-study"},
                     {"params", params},
                     {"noise_factors", ncfg.factors},
                     {"points", driver::run_noise_study(ncfg)}};
      const fs::path path = fs::path(noise_out) / "noise_study.json";
      driver::write_atomic(path, report.dump(2) + "\n");
      std::cout << "wrote " << path.string() << "\n";
      return 0;
    }

    if (dsched->parsed() || dcirc->parsed()) {
      const ModeParams p = driver::mode_params(dump_x, dump_steps, dump_win.y_i, dump_win.y_f);
      const CoeffSchedule s = build_schedule(p);
      if (dsched->parsed()) {
        emit(dump_out, driver::schedule_json(s).dump(2) + "\n");
      } else {
        json params = {{"x", p.x}, {"y_i", p.y_i}, {"y_f", p.y_f}, {"n_steps", p.n_steps}};
        emit(dump_out, driver::metadata_header("dump-circuit", params) +
                           build_full_circuit(s).to_text());
      }
      return 0;
    }

    // verify
    const auto results = run_verification();
    std::cout << format_report(results);
    return all_passed(results) ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
