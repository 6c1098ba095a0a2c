// Copyright 2026 The cavmems Authors
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

// Command-line front end: subcommands evolve, figure, frontier and
// recurrences, writing CSV with '#'-prefixed metadata lines.
//
// Exit codes: 0 success, 2 invalid arguments or parameters, 1 runtime
// failure (including unwritable output).

#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "cavmems/analytic.hpp"
#include "cavmems/frontier.hpp"
#include "cavmems/trajectory.hpp"
#include "cavmems/version.hpp"

namespace cavmems::cli {

/// Raised when the output cannot be written.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Run parameters; rates are in units of g.
struct RunConfig {
  double delta_over_g = 0.0;
  double lambda = 1.0;
  double gamma_times_g = 0.0;
  double gt_max = 50.0;
  std::size_t n_steps = 0;  // 0: one point per 0.01 of gt
  int n_max = 1;
  Source source = Source::kAnalytic;
  std::uint64_t seed = 7;
  std::string output;  // empty: standard output

  SystemParams params() const {
    if (!(gamma_times_g >= 0.0)) throw ValidationError("gamma must be >= 0 (in units of 1/g)");
    return SystemParams::in_units_of_g(delta_over_g, lambda, gamma_times_g, n_max);
  }

  std::size_t steps() const { return n_steps != 0 ? n_steps : default_steps(gt_max); }

  void validate() const {
    params();
    if (!(gt_max > 0.0) || !std::isfinite(gt_max)) throw ValidationError("gt-max must be > 0");
    if (steps() < 2) throw ValidationError("n-steps must be >= 2");
  }
};

struct FigurePreset {
  std::string tag;
  double delta_over_g;
  double lambda;
  double gamma_times_g;
  double gt_max;
  bool bell_overlay;
};

/// Parameter sets of the twelve figure panels.
inline const std::vector<FigurePreset>& figure_presets() {
  static const std::vector<FigurePreset> presets{
      {"1a", 0.0, 1.0, 0.0, 50.0, false},   {"1b", 0.5, 1.0, 0.0, 50.0, false},
      {"1c", 5.0, 1.0, 0.0, 50.0, false},   {"2a", 0.5, 0.9, 0.0, 500.0, false},
      {"2b", 0.5, 0.7, 0.0, 500.0, false},  {"2c", 0.5, 0.6, 0.0, 500.0, false},
      {"3a", 0.0, 1.0, 0.0, 500.0, true},   {"3b", 0.01, 1.0, 0.0, 500.0, true},
      {"3c", 5.0, 1.0, 0.0, 500.0, true},   {"4a", 0.0, 1.0, 0.01, 500.0, false},
      {"4b", 0.5, 1.0, 0.01, 500.0, false}, {"4c", 1.0, 1.0, 0.01, 500.0, false},
  };
  return presets;
}

inline const FigurePreset& figure_preset(std::string_view tag) {
  for (const auto& p : figure_presets())
    if (p.tag == tag) return p;
  throw ValidationError("unknown figure tag '" + std::string(tag) + "'");
}

/// 12 significant digits.
inline std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

using Metadata = std::vector<std::pair<std::string, std::string>>;

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline void write_metadata(std::ostream& os, const Metadata& meta, bool timestamp) {
  os << "# cavmems " << kVersion << '\n';
  for (const auto& [k, v] : meta) os << "# " << k << ": " << v << '\n';
  if (timestamp) os << "# generated: " << utc_timestamp() << '\n';
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const Metadata& meta,
                                 bool timestamp) {
  write_metadata(os, meta, timestamp);
  os << "gt,concurrence,linear_entropy,bell_max,purity\n";
  for (const auto& p : traj.points) {
    os << format_number(p.gt) << ',' << format_number(p.concurrence) << ',' << format_number(p.linear_entropy)
       << ',' << format_number(p.bell_max) << ',' << format_number(p.purity) << '\n';
  }
}

inline void write_frontier_csv(std::ostream& os, const FrontierCurve& curve, const Metadata& meta,
                               bool timestamp) {
  write_metadata(os, meta, timestamp);
  os << "linear_entropy,value\n";
  for (const auto& p : curve.points) os << format_number(p.m) << ',' << format_number(p.value) << '\n';
}

inline void write_recurrence_csv(std::ostream& os, const std::vector<Recurrence>& rows,
                                 const RationalityReport& rep, const Metadata& meta, bool timestamp) {
  write_metadata(os, meta, timestamp);
  os << "# ratio_delta_over_omega: " << format_number(rep.ratio) << '\n';
  os << "# convergents:";
  for (const auto& f : rep.convergents) os << ' ' << f.p << '/' << f.q;
  os << '\n';
  os << "# tol: " << format_number(rep.tol) << '\n';
  os << "# q_max: " << rep.q_max << '\n';
  os << "# best_fraction: " << rep.best.p << '/' << rep.best.q << '\n';
  os << "# classification: " << to_string(rep.classification) << '\n';
  os << "k,gt,concurrence\n";
  for (const auto& r : rows) {
    os << r.k << ',' << format_number(r.gt) << ',' << format_number(r.concurrence) << '\n';
  }
}

inline Metadata run_metadata(const std::string& command, const RunConfig& cfg) {
  return {{"command", command},
          {"delta_over_g", format_number(cfg.delta_over_g)},
          {"lambda", format_number(cfg.lambda)},
          {"gamma_times_g", format_number(cfg.gamma_times_g)},
          {"gt_max", format_number(cfg.gt_max)},
          {"n_steps", std::to_string(cfg.steps())},
          {"n_max", std::to_string(cfg.n_max)},
          {"source", to_string(cfg.source)},
          {"seed", std::to_string(cfg.seed)}};
}

/// Writes through `fn` to `path`, or to `fallback` when path is empty.
template <typename Fn>
void with_output(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw OutputError("cannot open '" + path + "' for writing");
  fn(file);
  file.flush();
  if (!file) throw OutputError("failed writing '" + path + "'");
}

/// Flat key=value file; '#' starts a comment. Keys are long flag names,
/// with '_' accepted for '-'.
inline std::vector<std::pair<std::string, std::string>> read_flat_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string{};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    for (auto& ch : key)
      if (ch == '_') ch = '-';
    out.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return out;
}

namespace detail {

inline void add_physics_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--delta", cfg.delta_over_g, "detuning Delta in units of g");
  app->add_option("--lambda", cfg.lambda, "initial excited population of atom 1");
  app->add_option("--gamma", cfg.gamma_times_g, "phase decoherence rate gamma in units of 1/g");
  app->add_option("--n-max", cfg.n_max, "cavity Fock cutoff");
}

inline void add_grid_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--gt-max", cfg.gt_max, "final scaled time gt");
  app->add_option("--n-steps", cfg.n_steps, "number of grid points (default: spacing 0.01 in gt)");
  const std::map<std::string, Source> sources{
      {"analytic", Source::kAnalytic}, {"spectral", Source::kSpectral}, {"rk4", Source::kRk4}};
  app->add_option("--source", cfg.source, "analytic | spectral | rk4")
      ->transform(CLI::CheckedTransformer(sources, CLI::ignore_case));
}

inline void apply_config(CLI::App* app, const std::string& path) {
  for (const auto& [key, value] : read_flat_config(path)) {
    CLI::Option* opt = app->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config") throw ValidationError("unknown config key '" + key + "'");
    if (opt->count() != 0) continue;  // command line wins
    opt->add_result(value);
    opt->run_callback();
  }
}

}  // namespace detail

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two atoms in a single-mode cavity: entanglement, CHSH and MEMS-frontier analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("cavmems ") + kVersion);

  RunConfig cfg;
  std::string config_path;
  bool no_timestamp = false;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat key=value file; flags override its values");
    sub->add_flag("--no-timestamp", no_timestamp, "omit the generation time from metadata");
  };

  auto* evolve = app.add_subcommand("evolve", "trajectory CSV for one parameter set");
  detail::add_physics_options(evolve, cfg);
  detail::add_grid_options(evolve, cfg);
  evolve->add_option("-o,--output", cfg.output, "output file (default: stdout)");
  common(evolve);

  std::string tag;
  std::string out_dir = ".";
  std::size_t bell_points = 101;
  std::size_t bell_samples = 100000;
  auto* figure = app.add_subcommand("figure", "trajectory and overlay curves for a figure panel");
  figure->add_option("tag", tag, "1a..1c, 2a..2c, 3a..3c, 4a..4c")->required();
  figure->add_option("--out-dir", out_dir, "directory for the CSV bundle");
  figure->add_option("--source", cfg.source, "analytic | spectral | rk4")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Source>{{"analytic", Source::kAnalytic}, {"spectral", Source::kSpectral}, {"rk4", Source::kRk4}},
          CLI::ignore_case));
  figure->add_option("--seed", cfg.seed, "seed for the Bell frontier");
  figure->add_option("--samples", bell_samples, "random states for the Bell frontier");
  common(figure);

  std::string kind;
  std::optional<std::size_t> n_points;
  auto* frontier = app.add_subcommand("frontier", "reference curve CSV");
  frontier->add_option("--kind", kind, "werner | mems | bell")->required();
  frontier->add_option("--n-points", n_points, "curve points (default 301, bell 101)");
  frontier->add_option("--samples", bell_samples, "random states (bell only)");
  frontier->add_option("--seed", cfg.seed, "sampling seed (bell only)");
  frontier->add_option("-o,--output", cfg.output, "output file (default: stdout)");
  common(frontier);

  long k_max = 100;
  double tol = 1e-6;
  long long q_max = 1000;
  auto* recur = app.add_subcommand("recurrences", "pure-state concurrences at t_k = 2 k pi / Omega");
  detail::add_physics_options(recur, cfg);
  recur->add_option("--k-max", k_max, "largest k");
  recur->add_option("--tol", tol, "tolerance for the rational approximation of Delta/Omega");
  recur->add_option("--q-max", q_max, "largest denominator counted as rational");
  recur->add_option("-o,--output", cfg.output, "output file (default: stdout)");
  common(recur);

  try {
    app.parse(argc, argv);
    CLI::App* sub = app.get_subcommands().front();
    if (!config_path.empty()) detail::apply_config(sub, config_path);
    const bool stamp = !no_timestamp;

    if (sub == evolve) {
      cfg.validate();
      const auto traj = sweep(cfg.params(), cfg.gt_max, cfg.steps(), cfg.source);
      with_output(cfg.output, out, [&](std::ostream& os) {
        write_trajectory_csv(os, traj, run_metadata("evolve", cfg), stamp);
      });
    } else if (sub == figure) {
      const auto& preset = figure_preset(tag);
      cfg.delta_over_g = preset.delta_over_g;
      cfg.lambda = preset.lambda;
      cfg.gamma_times_g = preset.gamma_times_g;
      cfg.gt_max = preset.gt_max;
      cfg.n_steps = 0;
      cfg.validate();
      namespace fs = std::filesystem;
      std::error_code ec;
      fs::create_directories(out_dir, ec);
      const fs::path dir(out_dir);
      const std::string stem = "fig" + preset.tag;
      auto meta = run_metadata("figure " + preset.tag, cfg);

      const auto traj = sweep(cfg.params(), cfg.gt_max, cfg.steps(), cfg.source);
      const auto traj_path = (dir / (stem + "_trajectory.csv")).string();
      with_output(traj_path, out, [&](std::ostream& os) { write_trajectory_csv(os, traj, meta, stamp); });
      out << traj_path << '\n';

      const Metadata werner_meta{{"command", "figure " + preset.tag}, {"kind", "werner"}};
      const auto werner_path = (dir / (stem + "_werner.csv")).string();
      with_output(werner_path, out,
                  [&](std::ostream& os) { write_frontier_csv(os, werner_curve(301), werner_meta, stamp); });
      out << werner_path << '\n';

      const Metadata mems_meta{{"command", "figure " + preset.tag}, {"kind", "mems"}};
      const auto mems_path = (dir / (stem + "_mems.csv")).string();
      with_output(mems_path, out,
                  [&](std::ostream& os) { write_frontier_csv(os, mems_curve(301), mems_meta, stamp); });
      out << mems_path << '\n';

      if (preset.bell_overlay) {
        const Metadata bell_meta{{"command", "figure " + preset.tag},
                                 {"kind", "bell"},
                                 {"samples", std::to_string(bell_samples)},
                                 {"seed", std::to_string(cfg.seed)}};
        const auto curve = bell_frontier(bell_points, bell_samples, cfg.seed);
        const auto bell_path = (dir / (stem + "_bell_frontier.csv")).string();
        with_output(bell_path, out, [&](std::ostream& os) { write_frontier_csv(os, curve, bell_meta, stamp); });
        out << bell_path << '\n';
      }
    } else if (sub == frontier) {
      FrontierCurve curve;
      Metadata meta{{"command", "frontier"}, {"kind", kind}};
      if (kind == "werner") {
        curve = werner_curve(n_points.value_or(301));
      } else if (kind == "mems") {
        curve = mems_curve(n_points.value_or(301));
      } else if (kind == "bell") {
        curve = bell_frontier(n_points.value_or(101), bell_samples, cfg.seed);
        meta.emplace_back("samples", std::to_string(bell_samples));
        meta.emplace_back("seed", std::to_string(cfg.seed));
      } else {
        throw ValidationError("unknown frontier kind '" + kind + "' (werner | mems | bell)");
      }
      with_output(cfg.output, out, [&](std::ostream& os) { write_frontier_csv(os, curve, meta, stamp); });
    } else if (sub == recur) {
      const auto p = cfg.params();
      const auto rows = recurrence_concurrences(p, k_max);
      const auto rep = classify_ratio(p, tol, q_max);
      Metadata meta{{"command", "recurrences"},
                    {"delta_over_g", format_number(cfg.delta_over_g)},
                    {"lambda", format_number(cfg.lambda)},
                    {"k_max", std::to_string(k_max)}};
      with_output(cfg.output, out,
                  [&](std::ostream& os) { write_recurrence_csv(os, rows, rep, meta, stamp); });
    }
    return 0;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << "cavmems " << kVersion << '\n';
    return 0;
  } catch (const CLI::Success&) {
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace cavmems::cli
