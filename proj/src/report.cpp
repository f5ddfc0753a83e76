//------------------------------------------------------------------------------
//
//   Copyright 2026 The d2d-auction Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "d2d/report.hpp"

#include "d2d/config.hpp"

#include <cmath>
#include <cstdio>

namespace d2d {

void write_results_csv(std::ostream &out, SweepVariable variable,
                       std::span<PointSummary const> points, std::uint64_t master_seed)
{
  out << kResultsHeader << '\n';
  for (auto const &point : points)
  {
    for (Algorithm algorithm : kAllAlgorithms)
    {
      AlgorithmSummary const &s = point[algorithm];
      double const stderr_rate =
          point.drops > 0 ? s.std_sum_rate / std::sqrt(static_cast<double>(point.drops)) : 0.0;
      out << to_string(variable) << ',' << point.value << ',' << to_string(algorithm) << ','
          << format_double(s.mean_sum_rate) << ',' << format_double(s.std_sum_rate) << ','
          << format_double(s.mean_eta) << ',' << format_double(s.mean_efficiency) << ','
          << format_double(s.mean_rounds) << ',' << point.drops << ',' << master_seed << ','
          << format_double(stderr_rate) << '\n';
    }
  }
}

void write_trace_rows(std::ostream &out, std::uint64_t drop_seed,
                      std::span<PriceEvent const> history)
{
  for (auto const &event : history)
  {
    out << drop_seed << ',' << event.event_index << ',' << event.round << ',' << event.item + 1
        << ',' << format_double(event.price) << ',' << to_string(event.phase) << '\n';
  }
}

std::string format_summary(SweepVariable variable, std::span<PointSummary const> points,
                           std::uint64_t master_seed, double subcarrier_bandwidth_hz)
{
  std::string out;
  char        line[256];
  std::snprintf(line, sizeof line, "sweep %s, master seed %llu\n",
                std::string(to_string(variable)).c_str(),
                static_cast<unsigned long long>(master_seed));
  out += line;
  std::snprintf(line, sizeof line, "%5s %4s %4s %-13s %14s %12s %8s %8s %9s %14s\n", "value", "C",
                "D", "algorithm", "sum_rate", "std", "eta", "E", "rounds", "sum_rate_Mbps");
  out += line;

  std::size_t violations = 0;
  for (auto const &point : points)
  {
    for (Algorithm algorithm : kAllAlgorithms)
    {
      AlgorithmSummary const &s = point[algorithm];
      std::snprintf(line, sizeof line,
                    "%5zu %4zu %4zu %-13s %14.4f %12.4f %8.4f %8.4f %9.1f %14.4f\n", point.value,
                    point.num_cellular, point.num_pairs, std::string(to_string(algorithm)).c_str(),
                    s.mean_sum_rate, s.std_sum_rate, s.mean_eta, s.mean_efficiency, s.mean_rounds,
                    s.mean_sum_rate * subcarrier_bandwidth_hz / 1e6);
      out += line;
    }
    violations += point.violations.size();
  }

  if (violations == 0)
  {
    out += "all per-drop invariants held\n";
  }
  else
  {
    out += "INVARIANT VIOLATIONS: " + std::to_string(violations) + "\n";
    for (auto const &point : points)
    {
      for (auto const &v : point.violations)
      {
        out += "  C=" + std::to_string(point.num_cellular) + " D=" +
               std::to_string(point.num_pairs) + " " + v + "\n";
      }
    }
  }
  return out;
}

}  // namespace d2d
