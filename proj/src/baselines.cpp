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

#include "d2d/baselines.hpp"

#include "d2d/errors.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace d2d {

std::string_view to_string(Algorithm algorithm)
{
  switch (algorithm)
  {
  case Algorithm::kExhaustive:
    return "exhaustive";
  case Algorithm::kRica:
    return "rica";
  case Algorithm::kReducedRica:
    return "reduced_rica";
  case Algorithm::kRandom:
    return "random";
  }
  return "unknown";
}

double allocation_value(Allocation const &allocation, ValuationTable const &table)
{
  double total = 0.0;
  for (std::size_t c = 0; c < allocation.size(); ++c)
  {
    total += table.value_of(c, allocation[c]);
  }
  return total;
}

AllocationResult solve_cap_exhaustive(ValuationTable const &table, ExhaustiveLimits limits)
{
  std::size_t const num_bidders = table.num_bidders();
  std::size_t const num_items   = table.num_items();
  if (num_items > limits.max_items || num_bidders > limits.max_bidders)
  {
    throw SizeGuardError("exhaustive search refuses " + std::to_string(num_bidders) +
                         " bidders x " + std::to_string(num_items) + " items");
  }

  std::size_t const num_states = std::size_t{1} << num_items;
  std::size_t const num_pkgs   = table.num_packages();

  // best(c, taken): best total for bidders c.. when `taken` is already sold.
  Grid<double> best(num_bidders + 1, num_states, 0.0);
  for (std::size_t c = num_bidders; c-- > 0;)
  {
    for (std::size_t taken = 0; taken < num_states; ++taken)
    {
      double top = best(c + 1, taken);
      for (std::size_t k = 0; k < num_pkgs; ++k)
      {
        auto const items = table.package(k).bits();
        if ((items & taken) == 0)
        {
          top = std::max(top, table.value(c, k) + best(c + 1, taken | items));
        }
      }
      best(c, taken) = top;
    }
  }

  AllocationResult result;
  result.algorithm = Algorithm::kExhaustive;
  result.allocation.assign(num_bidders, ItemSet{});
  std::size_t taken = 0;
  for (std::size_t c = 0; c < num_bidders; ++c)
  {
    double const target = best(c, taken);
    if (best(c + 1, taken) == target)
    {
      continue;
    }
    for (std::size_t k = 0; k < num_pkgs; ++k)
    {
      auto const items = table.package(k).bits();
      if ((items & taken) == 0 && table.value(c, k) + best(c + 1, taken | items) == target)
      {
        result.allocation[c] = table.package(k);
        taken |= items;
        break;
      }
    }
  }
  result.overall_gain = allocation_value(result.allocation, table);
  return result;
}

Allocation random_allocation(std::size_t num_bidders, std::size_t num_items, Rng &rng,
                             std::optional<std::size_t> max_package_size)
{
  Allocation allocation(num_bidders);
  if (num_bidders == 0)
  {
    return allocation;
  }
  std::vector<std::size_t> open;
  for (std::size_t d = 0; d < num_items; ++d)
  {
    open.clear();
    for (std::size_t c = 0; c < num_bidders; ++c)
    {
      if (!max_package_size || allocation[c].size() < *max_package_size)
      {
        open.push_back(c);
      }
    }
    if (open.empty())
    {
      continue;
    }
    std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
    allocation[open[pick(rng)]].insert(d);
  }
  return allocation;
}

AllocationResult run_rica(ValuationTable const &table, AuctionConfig const &config,
                          AuctionOutcome *outcome)
{
  AuctionOutcome run = run_auction(table, config);
  AllocationResult result{.allocation   = run.allocation,
                          .overall_gain = overall_gain(run, table),
                          .algorithm    = Algorithm::kRica};
  if (outcome != nullptr)
  {
    *outcome = std::move(run);
  }
  return result;
}

AllocationResult run_reduced_rica(ValuationTable const &table, AuctionConfig const &config,
                                  AuctionOutcome *outcome)
{
  ValuationTable const singles = table.singletons_only();
  AllocationResult     result  = run_rica(singles, config, outcome);
  result.algorithm             = Algorithm::kReducedRica;
  return result;
}

}  // namespace d2d
