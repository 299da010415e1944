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

#include "evasion/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace evasion {
namespace {

constexpr int kDiskSamples = 8;

std::string real(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_real(const std::string& s, const std::string& column) {
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("trace csv: column '" + column + "' is not a number: '" + s + "'");
  }
  return v;
}

GameStatus::Kind parse_status(const std::string& s) {
  for (auto k : {GameStatus::Kind::kOngoing, GameStatus::Kind::kCaptured,
                 GameStatus::Kind::kTargetReached, GameStatus::Kind::kTimedOut}) {
    if (label(k) == s) return k;
  }
  throw ParseError("trace csv: unknown status '" + s + "'");
}

}  // namespace

void write_trace_csv(const EpisodeRecord& rec, std::ostream& out) {
  const std::size_t n = rec.rows.empty() ? 0 : rec.rows.front().pursuers.size();
  out << "k,t,ex,ey";
  for (std::size_t i = 1; i <= n; ++i) out << ",p" << i << "x,p" << i << "y";
  out << ",action_e,action_p,game_value,status\n";
  for (const StageRow& r : rec.rows) {
    out << r.k << ',' << real(r.t) << ',' << real(r.evader.x()) << ','
        << real(r.evader.y());
    for (const Vec2& p : r.pursuers) out << ',' << real(p.x()) << ',' << real(p.y());
    out << ',' << r.action_e << ',' << r.action_p << ',' << real(r.game_value)
        << ',' << label(r.status.kind) << '\n';
  }
}

EpisodeRecord read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("trace csv: empty input");
  const std::vector<std::string> header = split(line);
  if (header.size() < 10 || (header.size() - 8) % 2 != 0 || header[0] != "k") {
    throw ParseError("trace csv: unexpected header");
  }
  const std::size_t n = (header.size() - 8) / 2;
  EpisodeRecord rec;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line);
    if (f.size() != header.size()) {
      throw ParseError("trace csv: row has " + std::to_string(f.size()) +
                       " fields, expected " + std::to_string(header.size()));
    }
    StageRow r;
    r.k = static_cast<int>(parse_real(f[0], "k"));
    r.t = parse_real(f[1], "t");
    r.evader = {parse_real(f[2], "ex"), parse_real(f[3], "ey")};
    for (std::size_t i = 0; i < n; ++i) {
      r.pursuers.emplace_back(parse_real(f[4 + 2 * i], header[4 + 2 * i]),
                              parse_real(f[5 + 2 * i], header[5 + 2 * i]));
    }
    const std::size_t tail = 4 + 2 * n;
    r.action_e = f[tail];
    r.action_p = f[tail + 1];
    r.game_value = parse_real(f[tail + 2], "game_value");
    r.status.kind = parse_status(f[tail + 3]);
    rec.rows.push_back(std::move(r));
  }
  if (!rec.rows.empty()) {
    rec.final_status = rec.rows.back().status;
    rec.steps = rec.rows.back().k - rec.rows.front().k;
  }
  return rec;
}

void write_trace_svg(const EpisodeRecord& rec, std::ostream& out) {
  if (rec.rows.empty()) throw InputDomainError("write_trace_svg: empty record");
  const std::size_t n = rec.rows.front().pursuers.size();

  Eigen::AlignedBox2d box(rec.target);
  for (const StageRow& r : rec.rows) {
    box.extend(r.evader);
    for (const Vec2& p : r.pursuers) box.extend(p);
  }
  const double pad = 0.05 * std::max(box.sizes().maxCoeff(), 1e-3);
  const Vec2 lo = box.min() - Vec2::Constant(pad);
  const double extent = (box.sizes() + Vec2::Constant(2 * pad)).maxCoeff();
  constexpr double kPixels = 800.0;
  const double scale = kPixels / extent;
  auto px = [&](const Vec2& p) {
    return Vec2((p.x() - lo.x()) * scale, kPixels - (p.y() - lo.y()) * scale);
  };
  out << std::fixed << std::setprecision(2);
  auto path = [&](auto&& point_of, const char* color, const std::string& id) {
    out << "  <path id=\"" << id << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" d=\"";
    for (std::size_t k = 0; k < rec.rows.size(); ++k) {
      const Vec2 q = px(point_of(rec.rows[k]));
      out << (k == 0 ? "M " : " L ") << q.x() << ' ' << q.y();
    }
    out << "\"/>\n";
  };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kPixels
      << "\" height=\"" << kPixels << "\" viewBox=\"0 0 " << kPixels << ' '
      << kPixels << "\">\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < n; ++i) {
    path([i](const StageRow& r) { return r.pursuers[i]; }, "red",
         "pursuer" + std::to_string(i + 1));
  }
  path([](const StageRow& r) { return r.evader; }, "green", "evader");

  const double disk = std::max(rec.ell * scale, 1.5);
  const std::size_t stride = std::max<std::size_t>(1, rec.rows.size() / kDiskSamples);
  for (std::size_t k = 0; k < rec.rows.size(); k += stride) {
    const StageRow& r = rec.rows[k];
    for (const Vec2& p : r.pursuers) {
      const Vec2 q = px(p);
      out << "  <circle cx=\"" << q.x() << "\" cy=\"" << q.y() << "\" r=\""
          << disk << "\" fill=\"none\" stroke=\"red\"/>\n";
    }
    const Vec2 q = px(r.evader);
    out << "  <rect x=\"" << q.x() - disk << "\" y=\"" << q.y() - disk
        << "\" width=\"" << 2 * disk << "\" height=\"" << 2 * disk
        << "\" fill=\"none\" stroke=\"green\"/>\n";
  }
  const Vec2 t = px(rec.target);
  out << "  <circle id=\"target\" cx=\"" << t.x() << "\" cy=\"" << t.y()
      << "\" r=\"4\" fill=\"black\"/>\n"
      << "</svg>\n";
  out.unsetf(std::ios_base::floatfield);
  out << std::setprecision(6);
}

void export_trace(const EpisodeRecord& rec, const std::string& csv_path,
                  const std::string& svg_path) {
  if (rec.rows.empty()) throw InputDomainError("export_trace: empty record");
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw IoError("cannot write trace csv '" + csv_path + "'");
    write_trace_csv(rec, out);
    if (!out) throw IoError("failed writing trace csv '" + csv_path + "'");
  }
  if (!svg_path.empty()) {
    std::ofstream out(svg_path);
    if (!out) throw IoError("cannot write trace svg '" + svg_path + "'");
    write_trace_svg(rec, out);
    if (!out) throw IoError("failed writing trace svg '" + svg_path + "'");
  }
}

void write_stats_csv(const std::vector<SummaryStats>& rows, std::ostream& out) {
  out << "method,N,v_e,episodes,captured_pct,reached_pct,timedout_pct,"
         "mean_steps_to_target\n";
  for (const SummaryStats& s : rows) {
    out << label(s.method) << ',' << s.n_pursuers << ',' << real(s.v_e) << ','
        << s.episodes << ',' << real(s.captured_pct) << ','
        << real(s.reached_pct) << ',' << real(s.timed_out_pct) << ','
        << real(s.mean_steps_to_target) << '\n';
  }
}

void write_training_log_csv(const TrainingLog& log, std::ostream& out) {
  out << "episode,outcome,steps,max_delta_w,alpha,beta\n";
  for (const EpisodeLog& e : log.episodes) {
    out << e.episode << ',' << label(e.outcome) << ',' << e.steps << ','
        << real(e.max_delta_w) << ',' << real(e.alpha) << ',' << real(e.beta)
        << '\n';
  }
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << "N,m1_median_us,m2_median_us\n";
  for (const BenchRow& r : rows) {
    out << r.n_pursuers << ',' << real(r.m1_median_us) << ','
        << real(r.m2_median_us) << '\n';
  }
}

}  // namespace evasion
