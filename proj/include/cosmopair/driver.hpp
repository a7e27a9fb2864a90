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

#pragma once

// Reproduction driver: turns parameter sets into result rows and writes
// them as CSV/JSON with a metadata header. The command-line front end is a
// thin layer over these functions.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "cosmopair/cosmopair.hpp"

namespace cosmopair::driver {

inline constexpr int kSchemaVersion = 1;

enum class Method { Analytic, Matrix, Statevector, Shots, Noisy, Mitigated, Zne };

inline constexpr Method kAllMethods[] = {Method::Analytic, Method::Matrix,    Method::Statevector,
                                         Method::Shots,    Method::Noisy,     Method::Mitigated,
                                         Method::Zne};

inline std::string to_string(Method m) {
  switch (m) {
    case Method::Analytic: return "analytic";
    case Method::Matrix: return "matrix";
    case Method::Statevector: return "statevector";
    case Method::Shots: return "shots";
    case Method::Noisy: return "noisy";
    case Method::Mitigated: return "mitigated";
    case Method::Zne: return "zne";
  }
  return "?";
}

inline Method parse_method(std::string_view s) {
  for (Method m : kAllMethods) {
    if (to_string(m) == s) return m;
  }
  throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

/// Step count used when none is given on the command line.
inline int default_steps(Method m) {
  switch (m) {
    case Method::Analytic: return 0;
    case Method::Matrix: return 2500;
    case Method::Statevector: return 1000;
    case Method::Shots: return 500;
    default: return 1;
  }
}

/// 40 log-spaced points on [1, 5] unless told otherwise.
inline std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi >= lo) || points < 1) {
    throw std::invalid_argument("log grid needs 0 < x-min <= x-max and x-points >= 1");
  }
  std::vector<double> xs;
  if (points == 1) return {lo};
  const double step = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) xs.push_back(lo * std::exp(step * i));
  xs.back() = hi;
  return xs;
}

struct SweepRow {
  double x = 0.0;
  int n_steps = 0;
  Method method = Method::Analytic;
  std::optional<std::uint64_t> shots;
  std::optional<std::uint64_t> seed;
  double n_k = 0.0;
  std::optional<double> stderr_;
  std::optional<double> leakage;
  double multi_pair_bound = 0.0;
};

struct SweepConfig {
  std::vector<double> xs;
  std::vector<Method> methods;
  std::optional<int> n_steps;  // overrides the per-method default
  std::optional<double> y_i;
  std::optional<double> y_f;
  std::uint64_t shots = 8192;
  std::uint64_t seed = 1;
  NoiseModel model = NoiseModel::calibrated(kEncodedQubits);
  std::vector<double> factors = default_zne_factors();
  unsigned threads = 1;
};

inline ModeParams mode_params(double x, int n_steps, std::optional<double> y_i,
                              std::optional<double> y_f) {
  ModeParams p{x, y_i.value_or(kDefaultYInitial), y_f.value_or(-x + kDefaultYFinalOffset), n_steps};
  p.validate();
  return p;
}

inline Circuit circuit_for(const ModeParams& p) { return build_full_circuit(build_schedule(p)); }

/// One row. n_k is the late-time pair population for every method; the
/// analytic row carries 1/(4x^4).
inline SweepRow compute_row(double x, Method method, const SweepConfig& cfg) {
  SweepRow row;
  row.x = x;
  row.method = method;
  row.multi_pair_bound = multi_pair_probability(n_k_analytic(x));
  if (method == Method::Analytic) {
    row.n_k = n_k_analytic(x);
    return row;
  }
  row.n_steps = cfg.n_steps.value_or(default_steps(method));
  const ModeParams params = mode_params(x, row.n_steps, cfg.y_i, cfg.y_f);

  if (method == Method::Matrix) {
    row.n_k = evolve(build_schedule(params)).final_state.populations()[kPhysPair];
    return row;
  }
  const Circuit circuit = circuit_for(params);
  if (method == Method::Statevector) {
    const Observables o = observables_from_distribution(probabilities(run_circuit(circuit)));
    row.n_k = o.p_pair;
    row.leakage = o.leakage;
    return row;
  }
  row.shots = cfg.shots;
  row.seed = cfg.seed;
  if (method == Method::Zne) {
    const ZNEResult z = zne_estimate(circuit, cfg.model, ZneObservable::PairProbability, cfg.factors,
                                     cfg.shots, cfg.seed);
    row.n_k = z.extrapolated;
    row.stderr_ = z.extrapolated_stderr;
    return row;
  }
  const CountsTable counts =
      method == Method::Shots
          ? sample_counts(probabilities(run_circuit(circuit)), cfg.shots, cfg.seed)
          : run_noisy_circuit(circuit, cfg.model, cfg.shots, cfg.seed);
  const Observables raw = observables_from_counts(counts);
  row.stderr_ = raw.stderr_pair;
  if (method == Method::Mitigated) {
    const Observables m = observables_from_quasi(mitigate_readout(counts, cfg.model).quasi);
    row.n_k = m.p_pair;
    row.leakage = m.leakage;
  } else {
    row.n_k = raw.p_pair;
    row.leakage = raw.leakage;
  }
  return row;
}

/// Runs f(i) for i in [0, n) on a small pool. Exceptions are rethrown on the
/// caller's thread (the first one wins).
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            f(i);
          } catch (...) {
            std::lock_guard lock(error_mu);
            if (!error) error = std::current_exception();
            next = n;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

/// All (x, method) rows, sorted by x and then by method order.
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  if (cfg.xs.empty()) throw std::invalid_argument("sweep: empty x grid");
  if (cfg.methods.empty()) throw std::invalid_argument("sweep: no methods");
  for (double x : cfg.xs) {
    if (!(x > 0.0)) throw std::invalid_argument("sweep: every x must be positive");
  }
  cfg.model.validate();
  std::vector<std::pair<double, Method>> jobs;
  for (double x : cfg.xs) {
    for (Method m : cfg.methods) jobs.emplace_back(x, m);
  }
  std::vector<SweepRow> rows(jobs.size());
  parallel_for(jobs.size(), cfg.threads,
               [&](std::size_t i) { rows[i] = compute_row(jobs[i].first, jobs[i].second, cfg); });
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return a.x != b.x ? a.x < b.x : a.method < b.method;
  });
  return rows;
}

// ---- trajectory ----------------------------------------------------------

struct TrajectoryTable {
  double x = 0.0;
  int n_steps = 0;
  double n_analytic = 0.0;
  Trajectory rows;
};

/// Populations after each step; n_steps = 0 yields the initial row only.
inline TrajectoryTable run_trajectory(double x, int n_steps, std::optional<double> y_i,
                                      std::optional<double> y_f) {
  if (n_steps < 0) throw std::invalid_argument("trajectory: n-steps must be >= 0");
  TrajectoryTable t{x, n_steps, n_k_analytic(x), {}};
  const ModeParams p = mode_params(x, std::max(n_steps, 1), y_i, y_f);
  if (n_steps == 0) {
    t.rows.push_back(make_row(p.y_i, PhysState::vacuum()));
  } else {
    t.rows = evolve(build_schedule(p)).trajectory;
  }
  return t;
}

// ---- noise study ---------------------------------------------------------

struct NoiseStudyConfig {
  std::vector<double> xs{1.3, 1.5, 1.8, 2.0, 2.2};
  int n_steps = 1;
  std::uint64_t shots = 4096;
  std::uint64_t seed = 1;
  NoiseModel model = NoiseModel::calibrated(kEncodedQubits);
  std::vector<double> factors = default_zne_factors();
  std::optional<double> y_i;
  std::optional<double> y_f;
  unsigned threads = 1;
};

inline nlohmann::json observables_json(const Observables& o) {
  return {{"p_pair", o.p_pair}, {"n_plus", o.n_plus}, {"n_minus", o.n_minus},
          {"leakage", o.leakage}};
}

/// Raw, readout-mitigated and extrapolated estimates for one x, plus the
/// leakage seen on the exact-probability pathway (ideal, after readout
/// noise, after mitigation).
inline nlohmann::json noise_study_point(double x, const NoiseStudyConfig& cfg) {
  const ModeParams p = mode_params(x, cfg.n_steps, cfg.y_i, cfg.y_f);
  const Circuit circuit = circuit_for(p);
  const Distribution ideal = probabilities(run_circuit(circuit));
  const CountsTable counts = run_noisy_circuit(circuit, cfg.model, cfg.shots, cfg.seed);
  const MitigationResult mit = mitigate_readout(counts, cfg.model);

  Observables raw = observables_from_counts(counts);
  const Distribution exact_noisy = apply_readout_noise(ideal, cfg.model);
  const MitigationResult exact_mit = mitigate_readout(exact_noisy, cfg.model);

  nlohmann::json j;
  j["x"] = x;
  j["n_k_analytic"] = n_k_analytic(x);
  j["ideal"] = observables_json(observables_from_distribution(ideal));
  j["raw"] = observables_json(raw);
  j["raw"]["stderr_pair"] = raw.stderr_pair;
  j["mitigated"] = {{"raw_quasi", observables_json(observables_from_quasi(mit.quasi))},
                    {"clipped", observables_json(observables_from_quasi(mit.clipped))},
                    {"condition_number", mit.condition_number},
                    {"ill_conditioned", mit.ill_conditioned}};
  j["zne"] = {
      {"p_pair", zne_estimate(circuit, cfg.model, ZneObservable::PairProbability, cfg.factors,
                              cfg.shots, cfg.seed)
                     .to_json()},
      {"leakage",
       zne_estimate(circuit, cfg.model, ZneObservable::Leakage, cfg.factors, cfg.shots, cfg.seed)
           .to_json()}};
  j["exact_pathway"] = {
      {"leakage_ideal", observables_from_distribution(ideal).leakage},
      {"leakage_readout", observables_from_distribution(exact_noisy).leakage},
      {"leakage_mitigated", observables_from_quasi(exact_mit.quasi).leakage}};
  return j;
}

inline nlohmann::json run_noise_study(const NoiseStudyConfig& cfg) {
  if (cfg.xs.empty()) throw std::invalid_argument("noise-study: empty x grid");
  cfg.model.validate();
  std::vector<nlohmann::json> points(cfg.xs.size());
  parallel_for(cfg.xs.size(), cfg.threads,
               [&](std::size_t i) { points[i] = noise_study_point(cfg.xs[i], cfg); });
  return points;
}

// ---- output --------------------------------------------------------------

inline std::string fmt(double v) { return format_angle(v); }

template <class T>
std::string fmt_opt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return fmt(*v);
  } else {
    return std::to_string(*v);
  }
}

/// Metadata lines prefixed with '#': tool version, command and the full
/// parameter set, enough to regenerate the file.
inline std::string metadata_header(const std::string& command, const nlohmann::json& params) {
  return "# cosmopair " + std::string(kVersion) + "\n# command: " + command +
         "\n# params: " + params.dump() + "\n";
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows, const nlohmann::json& params) {
  std::string s = metadata_header("sweep", params);
  s += "x,n_steps,method,shots,seed,n_k,stderr,leakage,multi_pair_bound\n";
  for (const auto& r : rows) {
    s += fmt(r.x) + ',' + std::to_string(r.n_steps) + ',' + to_string(r.method) + ',' +
         fmt_opt(r.shots) + ',' + fmt_opt(r.seed) + ',' + fmt(r.n_k) + ',' + fmt_opt(r.stderr_) +
         ',' + fmt_opt(r.leakage) + ',' + fmt(r.multi_pair_bound) + '\n';
  }
  return s;
}

template <class T>
nlohmann::json opt_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline nlohmann::json sweep_json(const std::vector<SweepRow>& rows, const nlohmann::json& params) {
  nlohmann::json out = {{"schema_version", kSchemaVersion},
                        {"tool", "cosmopair"},
                        {"version", kVersion},
                        {"command", "sweep"},
                        {"params", params}};
  auto& arr = out["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"x", r.x},
                   {"n_steps", r.n_steps},
                   {"method", to_string(r.method)},
                   {"shots", opt_json(r.shots)},
                   {"seed", opt_json(r.seed)},
                   {"n_k", r.n_k},
                   {"stderr", opt_json(r.stderr_)},
                   {"leakage", opt_json(r.leakage)},
                   {"multi_pair_bound", r.multi_pair_bound}});
  }
  return out;
}

inline std::string trajectory_csv(const TrajectoryTable& t, const nlohmann::json& params) {
  std::string s = metadata_header("trajectory", params);
  s += "y,p_vac,p_plus,p_minus,p_pair,n_analytic\n";
  for (const auto& r : t.rows) {
    s += fmt(r.y) + ',' + fmt(r.p_vac) + ',' + fmt(r.p_plus) + ',' + fmt(r.p_minus) + ',' +
         fmt(r.p_pair) + ',' + fmt(t.n_analytic) + '\n';
  }
  return s;
}

inline nlohmann::json schedule_json(const CoeffSchedule& s) {
  const ModeParams& p = s.params();
  nlohmann::json out = {{"schema_version", kSchemaVersion},
                        {"tool", "cosmopair"},
                        {"version", kVersion},
                        {"params", {{"x", p.x}, {"y_i", p.y_i}, {"y_f", p.y_f}, {"n_steps", p.n_steps}}}};
  auto& arr = out["steps"] = nlohmann::json::array();
  for (const auto& st : s.steps()) {
    arr.push_back({{"index", st.index},
                   {"y_mid", st.y_mid},
                   {"dy", st.dy},
                   {"cz", st.cz},
                   {"ca", st.ca},
                   {"branch", std::string(to_string(st.branch))}});
  }
  return out;
}

/// Writes to a sibling temporary file and renames it into place, so readers
/// never see a partial file.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os << content;
    os.close();
    if (!os) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace cosmopair::driver
