// Copyright 2026 The Evasion Authors. All rights reserved.
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

// Command line front end: train, eval, play, bench.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "evasion/config.hpp"
#include "evasion/harness.hpp"
#include "evasion/learning.hpp"
#include "evasion/persistence.hpp"
#include "evasion/trace.hpp"

namespace {

using namespace evasion;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

RunConfig config_or_default(const std::string& path) {
  return path.empty() ? RunConfig{} : load_config(path);
}

template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  fn(out);
  if (!out) throw IoError("failed writing '" + path + "'");
}

// Lines of `evader x y`, `target x y`, `pursuer x y` (one per pursuer).
GameState read_init_file(const std::string& path, const ExperimentConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read init file '" + path + "'");
  GameState s = make_state(Vec2::Zero(), {}, Vec2::Zero(), cfg.v_e, cfg.v_p,
                           cfg.dt, cfg.ell, cfg.eps, cfg.max_stage());
  bool have_evader = false, have_target = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string what;
    if (!(ls >> what)) continue;
    double x = 0, y = 0;
    if (!(ls >> x >> y)) {
      throw ConfigError("init file line " + std::to_string(line_no) +
                        ": expected '<evader|target|pursuer> x y'");
    }
    if (what == "evader") {
      s.evader = {x, y};
      have_evader = true;
    } else if (what == "target") {
      s.target = {x, y};
      have_target = true;
    } else if (what == "pursuer") {
      s.pursuers.emplace_back(x, y);
      s.v_p.push_back(cfg.v_p);
    } else {
      throw ConfigError("init file line " + std::to_string(line_no) +
                        ": unknown entry '" + what + "'");
    }
  }
  if (!have_evader || !have_target || s.pursuers.empty()) {
    throw ConfigError("init file needs an evader, a target and at least one pursuer");
  }
  return s;
}

std::optional<WeightVector> weights_for(const ExperimentConfig& cfg,
                                        const std::string& flag) {
  const std::string path = !flag.empty() ? flag : cfg.weights_path.value_or("");
  if (path.empty()) {
    if (cfg.method == Method::kM1) throw ConfigError("method m1 needs --weights");
    return std::nullopt;
  }
  return load_weights(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrix-game evasion in a multi-pursuer reach-avoid game"};
  app.require_subcommand(1);

  std::string config_path, weights_path, out_path, log_path, method_flag;
  std::string init_path, trace_csv, trace_svg;
  std::uint64_t seed = 0;
  int episodes = -1, n_min = 2, n_max = 20, repeats = 200;

  auto* train_cmd = app.add_subcommand("train", "Learn payoff weights");
  train_cmd->add_option("--config", config_path, "Config file");
  train_cmd->add_option("--seed", seed, "Master seed");
  train_cmd->add_option("--out-weights", out_path, "Weights JSON output")->required();
  train_cmd->add_option("--log", log_path, "Per-episode training log CSV");

  auto* eval_cmd = app.add_subcommand("eval", "Outcome statistics over a batch");
  eval_cmd->add_option("--config", config_path, "Config file");
  eval_cmd->add_option("--weights", weights_path, "Weights JSON (m1)");
  eval_cmd->add_option("--method", method_flag, "m1, m2 or m3");
  eval_cmd->add_option("--episodes", episodes, "Episode count");
  eval_cmd->add_option("--seed", seed, "Master seed");
  eval_cmd->add_option("--out-csv", out_path, "Stats CSV output (default stdout)");

  auto* play_cmd = app.add_subcommand("play", "Play and export one episode");
  play_cmd->add_option("--config", config_path, "Config file");
  play_cmd->add_option("--weights", weights_path, "Weights JSON (m1)");
  play_cmd->add_option("--method", method_flag, "m1, m2 or m3");
  play_cmd->add_option("--seed", seed, "Seed for strategy sampling");
  play_cmd->add_option("--init-file", init_path, "Initial positions")->required();
  play_cmd->add_option("--trace-csv", trace_csv, "Trace CSV output");
  play_cmd->add_option("--trace-svg", trace_svg, "Trace SVG output");

  auto* bench_cmd = app.add_subcommand("bench", "Stage-game build+solve timings");
  bench_cmd->add_option("--n-min", n_min, "Smallest N");
  bench_cmd->add_option("--n-max", n_max, "Largest N");
  bench_cmd->add_option("--repeats", repeats, "Solves per N");
  bench_cmd->add_option("--seed", seed, "Seed for random states");
  bench_cmd->add_option("--out-csv", out_path, "Timing CSV output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*train_cmd) {
      RunConfig cfg = config_or_default(config_path);
      if (train_cmd->count("--seed") > 0) cfg.training.seed = seed;
      auto [w, log] = train(cfg.training);
      save_weights(w, cfg.training, out_path);
      if (!log_path.empty()) {
        with_output(log_path, [&](std::ostream& o) { write_training_log_csv(log, o); });
      }
      std::cerr << "trained " << log.episodes.size() << " episodes, w = ["
                << w(0) << ", " << w(1) << ", " << w(2) << ", " << w(3) << "]\n";
    } else if (*eval_cmd) {
      RunConfig cfg = config_or_default(config_path);
      ExperimentConfig& ex = cfg.experiment;
      if (!method_flag.empty()) ex.method = parse_method(method_flag);
      if (episodes >= 0) ex.episodes = episodes;
      if (eval_cmd->count("--seed") > 0) ex.seed = seed;
      const auto w = weights_for(ex, weights_path);
      const BatchResult r = run_batch(ex, w ? &*w : nullptr);
      with_output(out_path, [&](std::ostream& o) { write_stats_csv({r.stats}, o); });
    } else if (*play_cmd) {
      RunConfig cfg = config_or_default(config_path);
      ExperimentConfig& ex = cfg.experiment;
      if (!method_flag.empty()) ex.method = parse_method(method_flag);
      if (play_cmd->count("--seed") > 0) ex.seed = seed;
      ex.validate();
      const auto w = weights_for(ex, weights_path);
      const GameState init = read_init_file(init_path, ex);
      init.validate();
      std::mt19937_64 rng = episode_rng(ex.seed, 0);
      const EpisodeRecord rec = run_episode(ex, init, w ? &*w : nullptr, rng);
      export_trace(rec, trace_csv, trace_svg);
      std::cout << label(rec.final_status.kind) << " after " << rec.steps
                << " steps\n";
    } else if (*bench_cmd) {
      if (n_min < 1 || n_max < n_min) throw ConfigError("bench: need 1 <= n-min <= n-max");
      std::vector<int> ns;
      for (int n = n_min; n <= n_max; ++n) ns.push_back(n);
      const auto rows = bench_solver(ns, repeats, seed);
      with_output(out_path, [&](std::ostream& o) { write_bench_csv(rows, o); });
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParseError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
