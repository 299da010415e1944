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

#ifndef EVASION_TRACE_HPP_
#define EVASION_TRACE_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "evasion/harness.hpp"

namespace evasion {

// k,t,ex,ey,p1x,p1y,...,pNx,pNy,action_e,action_p,game_value,status
// Reals are written with 17 significant digits; the terminal row leaves the
// action and value fields empty.
void write_trace_csv(const EpisodeRecord& rec, std::ostream& out);

// Inverse of write_trace_csv (target, ell and eps are not part of the file).
EpisodeRecord read_trace_csv(std::istream& in);

// Pursuer paths in red, evader path in green, the target as a black dot and
// capture disks at evenly spaced instants.
void write_trace_svg(const EpisodeRecord& rec, std::ostream& out);

// Either path may be empty to skip that output. Throws IoError.
void export_trace(const EpisodeRecord& rec, const std::string& csv_path,
                  const std::string& svg_path);

// method,N,v_e,episodes,captured_pct,reached_pct,timedout_pct,mean_steps_to_target
void write_stats_csv(const std::vector<SummaryStats>& rows, std::ostream& out);

void write_training_log_csv(const TrainingLog& log, std::ostream& out);

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out);

}  // namespace evasion

#endif  // EVASION_TRACE_HPP_
