#pragma once
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

// CSV and text output. Numbers use the shortest round-trip form with '.'
// as decimal separator; rows end in '\n'. Items are written 1-based.

#include "d2d/auction.hpp"
#include "d2d/experiments.hpp"

#include <cstdint>
#include <ostream>
#include <span>
#include <string>

namespace d2d {

inline constexpr char const *kResultsHeader =
    "sweep_variable,value,algorithm,mean_sum_rate,std_sum_rate,mean_eta,mean_E,mean_rounds,drops,"
    "master_seed,stderr_sum_rate";

inline constexpr char const *kTraceHeader = "drop_seed,event_index,round_t,item,price,phase";

void write_results_csv(std::ostream &out, SweepVariable variable, std::span<PointSummary const> points,
                       std::uint64_t master_seed);

/// Header is written by the caller (once per file).
void write_trace_rows(std::ostream &out, std::uint64_t drop_seed,
                      std::span<PriceEvent const> history);

/// Human-readable table plus every recorded invariant violation.
std::string format_summary(SweepVariable variable, std::span<PointSummary const> points,
                           std::uint64_t master_seed, double subcarrier_bandwidth_hz);

}  // namespace d2d
