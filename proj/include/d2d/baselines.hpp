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
#include "d2d/geometry_channel.hpp"
#include "d2d/rate_model.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace d2d {

enum class Algorithm
{
  kExhaustive,
  kRica,
  kReducedRica,
  kRandom,
};

inline constexpr std::array<Algorithm, 4> kAllAlgorithms{
    Algorithm::kExhaustive, Algorithm::kRica, Algorithm::kReducedRica, Algorithm::kRandom};

std::string_view to_string(Algorithm algorithm);

struct AllocationResult
{
  Allocation allocation;
  /// Sum of the allocated packages' valuations.
  double    overall_gain{0.0};
  Algorithm algorithm{Algorithm::kExhaustive};
};

struct ExhaustiveLimits
{
  std::size_t max_items   = 12;
  std::size_t max_bidders = 8;

  bool operator==(ExhaustiveLimits const &) const = default;
};

/// Optimal solution of the combinatorial allocation problem over the table's
/// package universe: at most one package per bidder, each item sold at most
/// once, items may stay unsold. Among equal optima the lexicographically
/// smallest assignment wins, comparing bidder by bidder with "nothing"
/// before package 0 before package 1 and so on.
///
/// Runs a dynamic program over (bidder, items already taken), which visits
/// every feasible assignment implicitly. Throws SizeGuardError above
/// `limits`.
AllocationResult solve_cap_exhaustive(ValuationTable const &table, ExhaustiveLimits limits = {});

/// Every pair lands on a uniformly drawn resource unit. With
/// `max_package_size` set, a pair only draws among units that still have
/// room; pairs that find none stay unserved.
Allocation random_allocation(std::size_t num_bidders, std::size_t num_items, Rng &rng,
                             std::optional<std::size_t> max_package_size = std::nullopt);

/// The auction restricted to singleton packages: at most one pair per unit.
AllocationResult run_reduced_rica(ValuationTable const &table, AuctionConfig const &config,
                                  AuctionOutcome *outcome = nullptr);

/// The full auction wrapped as an AllocationResult.
AllocationResult run_rica(ValuationTable const &table, AuctionConfig const &config,
                          AuctionOutcome *outcome = nullptr);

/// Sum of valuations of an allocation whose packages are in the table.
double allocation_value(Allocation const &allocation, ValuationTable const &table);

}  // namespace d2d
