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

#include "d2d/auction.hpp"
#include "d2d/baselines.hpp"
#include "d2d/geometry_channel.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace d2d {

/// Everything one drop needs besides its size and seed. Powers are in watts.
struct DropConfig
{
  CellConfig                 cell;
  double                     bs_power_w{dbm_to_watts(46.0)};
  double                     device_power_w{dbm_to_watts(23.0)};
  double                     noise_w{noise_power(-174.0, 15e3, 9.0)};
  AuctionConfig              auction;
  std::optional<std::size_t> max_package_size;
  ExhaustiveLimits           exhaustive_limits;
  bool                       keep_trace{false};
};

struct AlgorithmMetrics
{
  Allocation allocation;
  double     sum_rate{0.0};      ///< system sum rate of the allocation
  double     overall_gain{0.0};  ///< clamped valuation sum
  double     eta{0.0};           ///< sum_rate / exhaustive sum_rate
  double     efficiency{0.0};    ///< overall_gain / exhaustive overall_gain
  int        rounds{0};          ///< auction descent rounds, 0 for non-auctions
};

struct DropResult
{
  std::uint64_t                   seed{0};
  std::size_t                     num_cellular{0};
  std::size_t                     num_pairs{0};
  double                          cellular_only_sum_rate{0.0};
  std::array<AlgorithmMetrics, 4> metrics{};
  int                             round_bound{0};
  std::size_t                     longest_fine_tune{0};
  std::vector<PriceEvent>         price_history;  ///< full auction, when kept
  std::vector<std::string>        violations;

  AlgorithmMetrics const &operator[](Algorithm algorithm) const
  {
    return metrics[static_cast<std::size_t>(algorithm)];
  }
  AlgorithmMetrics &operator[](Algorithm algorithm)
  {
    return metrics[static_cast<std::size_t>(algorithm)];
  }

  bool operator==(DropResult const &) const;
};

/// outcome / optimal, 1 when both are zero. Throws InvariantViolation when
/// the outcome beats the optimum by more than rounding.
double allocating_efficiency(double outcome_gain, double optimal_gain);

/// Place users, draw channels, build valuations and run all four
/// allocation schemes on the same drop. Invariant failures are collected in
/// `violations` rather than thrown.
DropResult run_drop(std::size_t num_cellular, std::size_t num_pairs, DropConfig const &config,
                    std::uint64_t seed);

enum class SweepVariable
{
  kNumD2dPairs,
  kNumResourceUnits,
};

std::string_view to_string(SweepVariable variable);
std::optional<SweepVariable> parse_sweep_variable(std::string_view name);

struct SweepSpec
{
  SweepVariable            variable{SweepVariable::kNumD2dPairs};
  std::vector<std::size_t> values;
  /// Value of the variable that is not swept.
  std::size_t   fixed_other{8};
  std::size_t   drops{200};
  DropConfig    base;
  std::uint64_t master_seed{1};
  unsigned      threads{0};  ///< 0: hardware concurrency

  void validate() const;
};

struct AlgorithmSummary
{
  double mean_sum_rate{0.0};
  double std_sum_rate{0.0};
  double mean_eta{0.0};
  double std_eta{0.0};
  double mean_efficiency{0.0};
  double mean_rounds{0.0};
};

struct PointSummary
{
  std::size_t                     value{0};
  std::size_t                     num_cellular{0};
  std::size_t                     num_pairs{0};
  std::size_t                     drops{0};
  std::array<AlgorithmSummary, 4> algorithms{};
  std::vector<std::string>        violations;

  AlgorithmSummary const &operator[](Algorithm algorithm) const
  {
    return algorithms[static_cast<std::size_t>(algorithm)];
  }
};

struct SweepResult
{
  std::vector<PointSummary> points;
  /// Per-point drop results, kept only when the base config keeps traces.
  std::vector<std::vector<DropResult>> drops;
};

/// Seed of drop `drop` at sweep point `point`.
std::uint64_t drop_seed(std::uint64_t master_seed, std::size_t point, std::size_t drop);

/// Runs independent drops, possibly in parallel; the result order follows
/// `seeds` regardless of completion order.
std::vector<DropResult> run_drops(std::size_t num_cellular, std::size_t num_pairs,
                                  DropConfig const &config, std::span<std::uint64_t const> seeds,
                                  unsigned threads = 0);

/// Means and sample standard deviations. Each statistic is summed in sorted
/// order, so permuting the drops leaves the summary bit-identical.
PointSummary summarize(std::span<DropResult const> drops);

SweepResult monte_carlo(SweepSpec const &spec);

}  // namespace d2d
