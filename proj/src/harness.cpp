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

#include "evasion/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "evasion/payoff.hpp"

namespace evasion {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

StageRow make_row(const GameState& s, GameStatus st) {
  StageRow row;
  row.k = s.stage;
  row.t = s.stage * s.dt;
  row.evader = s.evader;
  row.pursuers = s.pursuers;
  row.status = st;
  row.game_value = std::numeric_limits<double>::quiet_NaN();
  return row;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::string_view label(Method m) {
  switch (m) {
    case Method::kM1: return "M1";
    case Method::kM2: return "M2";
    case Method::kM3: return "M3";
  }
  return "?";
}

Method parse_method(std::string_view s) {
  const std::string v = lower(s);
  if (v == "m1" || v == "m-1") return Method::kM1;
  if (v == "m2" || v == "m-2") return Method::kM2;
  if (v == "m3" || v == "m-3") return Method::kM3;
  throw ConfigError("method: expected m1, m2 or m3, got '" + std::string(s) + "'");
}

PursuerPolicy parse_pursuer_policy(std::string_view s) {
  const std::string v = lower(s);
  if (v == "relay" || v == "relay-only" || v == "relay_only") {
    return PursuerPolicy::kRelayOnly;
  }
  if (v == "matrix" || v == "matrix-sampled" || v == "matrix_sampled") {
    return PursuerPolicy::kMatrixSampled;
  }
  throw ConfigError("pursuer_policy: expected relay-only or matrix-sampled, got '" +
                    std::string(s) + "'");
}

void ExperimentConfig::validate() const {
  auto fail = [](const char* what) { throw ConfigError(what); };
  if (n_pursuers < 1) fail("N must be >= 1");
  if (!(v_e > 0.0 && v_p > 0.0)) fail("speeds must be positive");
  if (!(grid_size > 0.0)) fail("grid_size must be positive");
  if (episodes < 0) fail("episodes must be >= 0");
  if (!(dt > 0.0 && ell > 0.0 && eps > 0.0)) fail("dt, ell and eps must be positive");
  if (threads < 0) fail("threads must be >= 0");
}

EpisodeRecord run_episode(const ExperimentConfig& cfg, const GameState& init,
                          const WeightVector* w, std::mt19937_64& rng) {
  if (cfg.method == Method::kM1 && w == nullptr) {
    throw ConfigError("method M1 requires weights");
  }
  init.validate();
  const double t_max = cfg.horizon();
  const bool relay = cfg.pursuer_policy == PursuerPolicy::kRelayOnly;

  EpisodeRecord rec;
  rec.target = init.target;
  rec.ell = init.ell;
  rec.eps = init.eps;
  GameState s = init;

  while (true) {
    const GameStatus st = status(s);
    if (!st.is_ongoing()) {
      rec.rows.push_back(make_row(s, st));
      rec.final_status = st;
      break;
    }
    StageRow row = make_row(s, st);
    GameState next;

    if (cfg.method == Method::kM2) {
      PayoffMatrix m;
      try {
        m = build_payoff_m2(s, t_max);
      } catch (const DegenerateStageError&) {
        rec.degenerate = true;
        rec.final_status = GameStatus::captured(active_pursuer(s));
        row.status = rec.final_status;
        rec.rows.push_back(std::move(row));
        break;
      }
      const GameSolution sol = solve_zero_sum(m);
      const std::size_t j = sample_strategy(sol.evader_strategy, rng);
      const std::size_t n = s.num_pursuers();
      const Vec2 u_e = j < n ? Vec2((s.evader - s.pursuers[j]).normalized())
                             : Vec2((s.target - s.evader).normalized());
      std::vector<Vec2> u_p;
      if (relay) {
        u_p = realize_pursuer_action(PursuerAction::kRelay, s);
        row.action_p = label(PursuerAction::kRelay);
      } else {
        const std::size_t i = sample_strategy(sol.pursuer_strategy, rng);
        u_p.assign(n, Vec2::Zero());
        u_p[i] = (s.evader - s.pursuers[i]).normalized();
        row.action_p = m.row_labels[i];
      }
      row.action_e = m.col_labels[j];
      row.game_value = sol.value;
      next = step(s, u_e, u_p);
    } else {
      const ActionExpansion x = expand_actions(s, t_max);
      Eigen::MatrixXd entries(2, 4);
      if (cfg.method == Method::kM1) {
        entries = x.q_matrix(*w);
      } else {
        for (int i = 0; i < 2; ++i) {
          for (int j = 0; j < 4; ++j) {
            const Eigen::Vector4d& z = x.zeta[i][j].zeta;
            entries(i, j) = z(0) + z.tail<3>().minCoeff();
          }
        }
      }
      const GameSolution sol = solve_zero_sum(entries);
      const std::size_t j = sample_strategy(sol.evader_strategy, rng);
      const std::size_t i = relay ? 0 : sample_strategy(sol.pursuer_strategy, rng);
      row.action_e = label(kEvaderActions[j]);
      row.action_p = label(kPursuerActions[i]);
      row.game_value = sol.value;
      next = x.successor[i][j];
    }
    rec.rows.push_back(std::move(row));
    s = std::move(next);
  }
  rec.steps = s.stage - init.stage;
  return rec;
}

std::mt19937_64 episode_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

GameState initial_state(const ExperimentConfig& cfg, std::mt19937_64& rng) {
  return random_state(static_cast<std::size_t>(cfg.n_pursuers), cfg.grid_size,
                      cfg.v_e, cfg.v_p, cfg.dt, cfg.ell, cfg.eps,
                      cfg.max_stage(), rng);
}

SummaryStats summarize(const ExperimentConfig& cfg,
                       const std::vector<GameStatus::Kind>& outcomes,
                       const std::vector<int>& steps) {
  SummaryStats st;
  st.method = cfg.method;
  st.n_pursuers = cfg.n_pursuers;
  st.v_e = cfg.v_e;
  st.episodes = static_cast<int>(outcomes.size());
  double steps_to_target = 0.0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    switch (outcomes[i]) {
      case GameStatus::Kind::kCaptured: ++st.captured; break;
      case GameStatus::Kind::kTargetReached:
        ++st.reached;
        steps_to_target += steps[i];
        break;
      default: ++st.timed_out; break;
    }
  }
  if (st.episodes > 0) {
    const double n = st.episodes;
    st.captured_pct = 100.0 * st.captured / n;
    st.reached_pct = 100.0 * st.reached / n;
    st.timed_out_pct = 100.0 * st.timed_out / n;
  }
  st.mean_steps_to_target = st.reached > 0
                                ? steps_to_target / st.reached
                                : std::numeric_limits<double>::quiet_NaN();
  return st;
}

BatchResult run_batch(const ExperimentConfig& cfg, const WeightVector* w) {
  cfg.validate();
  if (cfg.method == Method::kM1 && w == nullptr) {
    throw ConfigError("method M1 requires weights");
  }
  const auto episodes = static_cast<std::size_t>(cfg.episodes);
  std::vector<GameStatus::Kind> outcomes(episodes);
  std::vector<int> steps(episodes, 0);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&]() {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= episodes) return;
      try {
        std::mt19937_64 rng = episode_rng(cfg.seed, i);
        const GameState init = initial_state(cfg, rng);
        const EpisodeRecord rec = run_episode(cfg, init, w, rng);
        outcomes[i] = rec.final_status.kind;
        steps[i] = rec.steps;
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };

  unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, std::max<std::size_t>(episodes, 1)));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  BatchResult out;
  out.stats = summarize(cfg, outcomes, steps);
  out.outcomes = std::move(outcomes);
  out.steps = std::move(steps);
  return out;
}

std::vector<BenchRow> bench_solver(const std::vector<int>& n_values,
                                   int repeats, std::uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  repeats = std::max(repeats, 1);
  std::vector<BenchRow> table;
  std::mt19937_64 rng(seed);
  WeightVector w;
  for (int k = 0; k < 4; ++k) w.w(k) = uniform01(rng);

  ExperimentConfig cfg;
  cfg.v_e = 1.0;
  cfg.v_p = 1.0;
  cfg.grid_size = 10.0;
  const double t_max = cfg.horizon();

  for (int n : n_values) {
    if (n < 1) throw InputDomainError("bench_solver: N must be >= 1");
  }
  // Sizes are interleaved within each repeat so that slow drifts in machine
  // load spread evenly over the table instead of landing on one N.
  const std::size_t sizes = n_values.size();
  std::vector<std::vector<double>> m1(sizes), m2(sizes);
  volatile double sink = 0.0;
  for (int r = 0; r < repeats; ++r) {
    for (std::size_t k = 0; k < sizes; ++k) {
      cfg.n_pursuers = n_values[k];
      const GameState s = initial_state(cfg, rng);
      auto t0 = Clock::now();
      sink = sink + solve_zero_sum(build_payoff_m1(s, w, t_max)).value;
      auto t1 = Clock::now();
      sink = sink + solve_zero_sum(build_payoff_m2(s, t_max)).value;
      auto t2 = Clock::now();
      m1[k].push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
      m2[k].push_back(std::chrono::duration<double, std::micro>(t2 - t1).count());
    }
  }
  for (std::size_t k = 0; k < sizes; ++k) {
    table.push_back({n_values[k], median(std::move(m1[k])), median(std::move(m2[k]))});
  }
  return table;
}

}  // namespace evasion
