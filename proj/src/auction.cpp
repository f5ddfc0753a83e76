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

#include "d2d/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace d2d {
namespace {

/// Demand of one bidder given the price of every package in the table.
Bid best_package(std::size_t bidder, ValuationTable const &table, ItemSet active_items,
                 std::span<double const> package_prices)
{
  Bid    bid;
  bid.bidder          = bidder;
  double best_utility = 0.0;
  double best_value   = 0.0;
  for (std::size_t k = 0; k < table.num_packages(); ++k)
  {
    ItemSet const items = table.package(k);
    double const  value = table.value(bidder, k);
    if (value <= 0.0 || !items.subset_of(active_items))
    {
      continue;
    }
    double const utility = value - package_prices[k];
    if (utility < 0.0)
    {
      continue;
    }
    bool const better = bid.empty() || utility > best_utility ||
                        (utility == best_utility && value > best_value);
    if (better)
    {
      bid.package   = k;
      bid.items     = items;
      bid.pay_price = package_prices[k];
      best_utility  = utility;
      best_value    = value;
    }
  }
  return bid;
}

std::vector<double> price_all_packages(ValuationTable const &table, PriceVector const &prices)
{
  std::vector<double> out(table.num_packages());
  for (std::size_t k = 0; k < table.num_packages(); ++k)
  {
    out[k] = prices.package_price(table.package(k));
  }
  return out;
}

ItemSet union_of(std::span<Bid const> bids)
{
  ItemSet out;
  for (auto const &bid : bids)
  {
    out |= bid.items;
  }
  return out;
}

bool any_positive_bid(ValuationTable const &table, PriceVector const &prices)
{
  for (std::size_t c = 0; c < table.num_bidders(); ++c)
  {
    for (std::size_t k = 0; k < table.num_packages(); ++k)
    {
      double const value = table.value(c, k);
      if (value > 0.0 && value >= prices.package_price(table.package(k)))
      {
        return true;
      }
    }
  }
  return false;
}

class Runner
{
public:
  Runner(ValuationTable const &table, AuctionConfig const &config, BidderStrategy const *strategy)
    : table_(table)
    , config_(config)
    , strategy_(strategy)
    , state_(AuctionState::start(table.num_bidders(), initial_prices(table, config)))
  {
    state_.active_items = ItemSet::first(table.num_items());
  }

  AuctionOutcome run()
  {
    PriceVector const initial = state_.prices;
    double const      step    = config_.fine_tune_step();

    while (!state_.active_items.empty() && state_.any_active_bidder())
    {
      std::vector<Bid> bids = collect();

      std::vector<double> const episode_start = state_.prices.price;
      ItemSet                   raised;
      std::size_t               steps = 0;
      ItemSet                   demanded = union_of(bids);
      for (;;)
      {
        ItemSet const conflicts = detect_conflicts(bids);
        if (conflicts.empty())
        {
          break;
        }
        if (steps == static_cast<std::size_t>(config_.max_fine_tune_rounds))
        {
          bids = award_by_index(bids);
          ++tie_breaks_;
          break;
        }

        std::vector<double> const saved = state_.prices.price;
        ascend_prices(state_.prices, conflicts, step);
        conflicts.for_each([&](std::size_t d) { state_.record(d, PricePhase::kAscend); });
        raised |= conflicts;
        ++steps;

        std::vector<Bid> next = collect();
        if (!conflicts.subset_of(union_of(next)))
        {
          // Every bidder left some contested item: undo the step and settle
          // the conflict at the previous price.
          conflicts.for_each([&](std::size_t d) {
            state_.prices.price[d] = saved[d];
            state_.record(d, PricePhase::kDescend);
          });
          bids = award_by_index(bids);
          ++tie_breaks_;
          break;
        }
        bids = std::move(next);
        demanded |= union_of(bids);
      }
      fine_tune_steps_ += steps;
      longest_fine_tune_ = std::max(longest_fine_tune_, steps);

      fix_winners(bids, state_);

      // Fine-tuned prices only stick to items that sold.
      (raised & state_.active_items).for_each([&](std::size_t d) {
        if (state_.prices.price[d] != episode_start[d])
        {
          state_.prices.price[d] = episode_start[d];
          state_.record(d, PricePhase::kDescend);
        }
      });

      if (state_.active_items.empty() || !state_.any_active_bidder())
      {
        break;
      }

      ItemSet const remaining = state_.active_items;
      ItemSet const idle      = remaining - demanded;
      std::vector<double> const before = state_.prices.price;
      ItemSet const retired = descend_prices(state_.prices, idle, config_.delta, remaining & demanded);
      remaining.for_each([&](std::size_t d) {
        if (!retired.contains(d) && state_.prices.price[d] != before[d])
        {
          state_.record(d, PricePhase::kDescend);
        }
      });
      state_.active_items   = state_.active_items - retired;
      state_.retired_items |= retired;
    }

    AuctionOutcome out;
    out.allocation        = state_.allocation;
    out.package_index     = state_.package_index;
    out.pay_price         = state_.pay_price;
    out.rounds            = state_.prices.round;
    out.fine_tune_steps   = fine_tune_steps_;
    out.longest_fine_tune = longest_fine_tune_;
    out.tie_break_awards  = tie_breaks_;
    out.initial_prices    = initial;
    out.final_prices      = state_.prices;
    out.price_history     = std::move(state_.history);
    out.unsold            = ItemSet::first(table_.num_items()) - union_of_allocation();
    out.utility.assign(table_.num_bidders(), 0.0);
    for (std::size_t c = 0; c < table_.num_bidders(); ++c)
    {
      if (out.package_index[c])
      {
        out.utility[c] = table_.value(c, *out.package_index[c]) - out.pay_price[c];
        out.revenue += out.pay_price[c];
      }
    }
    return out;
  }

private:
  std::vector<Bid> collect()
  {
    if (++iterations_ > config_.max_iterations)
    {
      throw InternalError("auction exceeded " + std::to_string(config_.max_iterations) +
                          " demand collections");
    }
    std::vector<double> const package_prices = price_all_packages(table_, state_.prices);
    std::vector<Bid>          bids;
    for (std::size_t c = 0; c < table_.num_bidders(); ++c)
    {
      if (!state_.active_bidders[c])
      {
        continue;
      }
      Bid bid = best_package(c, table_, state_.active_items, package_prices);
      if (strategy_ != nullptr && strategy_->bidder == c)
      {
        bid = reprice(strategy_->respond(bid, state_.prices, state_.active_items), c);
      }
      if (!bid.empty())
      {
        bids.push_back(bid);
      }
    }
    return bids;
  }

  /// No jump bidding: whatever the strategy returns is paid at current prices.
  Bid reprice(Bid bid, std::size_t bidder) const
  {
    bid.bidder = bidder;
    if (bid.empty())
    {
      Bid none;
      none.bidder = bidder;
      return none;
    }
    if (*bid.package >= table_.num_packages() ||
        !table_.package(*bid.package).subset_of(state_.active_items))
    {
      throw ContractViolation("strategy bid names an unknown or unavailable package");
    }
    bid.items     = table_.package(*bid.package);
    bid.pay_price = state_.prices.package_price(bid.items);
    return bid;
  }

  ItemSet union_of_allocation() const
  {
    ItemSet out;
    for (auto const &x : state_.allocation)
    {
      out |= x;
    }
    return out;
  }

  ValuationTable const &table_;
  AuctionConfig const  &config_;
  BidderStrategy const *strategy_;
  AuctionState          state_;
  std::size_t           iterations_{0};
  std::size_t           fine_tune_steps_{0};
  std::size_t           longest_fine_tune_{0};
  std::size_t           tie_breaks_{0};
};

}  // namespace

void AuctionConfig::validate() const
{
  if (!(delta > 0.0) || !std::isfinite(delta))
  {
    throw ConfigError("delta", "must be > 0");
  }
  if (fine_tune_divisor < 1)
  {
    throw ConfigError("fine_tune_divisor", "must be >= 1");
  }
  if (max_fine_tune_rounds < 1)
  {
    throw ConfigError("max_fine_tune_rounds", "must be >= 1");
  }
  if (initial_price_policy == InitialPricePolicy::kFixedScalar &&
      (!(fixed_initial_price >= 0.0) || !std::isfinite(fixed_initial_price)))
  {
    throw ConfigError("initial_price", "must be >= 0");
  }
  if (max_iterations < 1)
  {
    throw ConfigError("max_iterations", "must be >= 1");
  }
}

double PriceVector::package_price(ItemSet items) const
{
  double total = 0.0;
  items.for_each([&](std::size_t d) { total += price[d]; });
  return total;
}

std::string_view to_string(PricePhase phase)
{
  switch (phase)
  {
  case PricePhase::kDescend:
    return "descend";
  case PricePhase::kAscend:
    return "ascend";
  case PricePhase::kFixed:
    return "fixed";
  }
  return "unknown";
}

AuctionState AuctionState::start(std::size_t num_bidders, PriceVector initial)
{
  AuctionState state;
  state.active_items = ItemSet::first(initial.price.size());
  state.prices       = std::move(initial);
  state.active_bidders.assign(num_bidders, true);
  state.allocation.assign(num_bidders, ItemSet{});
  state.package_index.assign(num_bidders, std::nullopt);
  state.pay_price.assign(num_bidders, 0.0);
  return state;
}

bool AuctionState::any_active_bidder() const
{
  return std::find(active_bidders.begin(), active_bidders.end(), true) != active_bidders.end();
}

void AuctionState::record(std::size_t item, PricePhase phase)
{
  history.push_back({.event_index = history.size(),
                     .round       = prices.round,
                     .item        = item,
                     .price       = prices.price[item],
                     .phase       = phase});
}

PriceVector initial_prices(ValuationTable const &table, AuctionConfig const &config)
{
  config.validate();
  if (table.num_bidders() == 0 || table.num_packages() == 0)
  {
    throw ContractViolation("initial_prices: empty valuation table");
  }

  std::size_t const num_items = table.num_items();
  PriceVector       prices;
  prices.fixed.assign(num_items, false);

  if (config.initial_price_policy == InitialPricePolicy::kFixedScalar)
  {
    prices.price.assign(num_items, config.fixed_initial_price);
    return prices;
  }

  prices.price.assign(num_items, config.delta);
  for (std::size_t d = 0; d < num_items; ++d)
  {
    if (auto k = table.index_of(ItemSet::single(d)))
    {
      double top = 0.0;
      for (std::size_t c = 0; c < table.num_bidders(); ++c)
      {
        top = std::max(top, table.value(c, *k));
      }
      prices.price[d] = top + config.delta;
    }
  }

  // A package can still be worth more than the sum of its item prices;
  // lift every item uniformly until nobody demands anything at round 0.
  while (any_positive_bid(table, prices))
  {
    double lift = 0.0;
    for (std::size_t c = 0; c < table.num_bidders(); ++c)
    {
      for (std::size_t k = 0; k < table.num_packages(); ++k)
      {
        ItemSet const items  = table.package(k);
        double const  excess = table.value(c, k) - prices.package_price(items);
        lift = std::max(lift, excess / static_cast<double>(items.size()));
      }
    }
    double const steps = std::floor(lift / config.delta) + 1.0;
    for (auto &p : prices.price)
    {
      p += steps * config.delta;
    }
  }
  return prices;
}

Bid demand(std::size_t bidder, PriceVector const &prices, ValuationTable const &table,
           ItemSet active_items)
{
  return best_package(bidder, table, active_items, price_all_packages(table, prices));
}

ItemSet detect_conflicts(std::span<Bid const> bids)
{
  ItemSet seen;
  ItemSet conflicts;
  for (auto const &bid : bids)
  {
    conflicts |= bid.items & seen;
    seen |= bid.items;
  }
  return conflicts;
}

ItemSet descend_prices(PriceVector &prices, ItemSet undemanded, double delta,
                       ItemSet still_demanded)
{
  // Repeated subtraction of a decimal step leaves residues of a few ulps;
  // anything that close to zero is zero.
  bool moved = false;
  auto lower  = [&](std::size_t d) {
    double const p = prices.price[d];
    if (p > 0.0)
    {
      prices.price[d] = p - delta > 1e-9 * delta ? p - delta : 0.0;
      moved           = true;
    }
  };
  ItemSet retired;
  undemanded.for_each([&](std::size_t d) {
    if (prices.price[d] <= 0.0)
    {
      retired.insert(d);
    }
    else
    {
      lower(d);
    }
  });
  (still_demanded - undemanded).for_each(lower);
  // A pass at the price floor only re-collects demand; it is not a descent.
  if (moved)
  {
    ++prices.round;
  }
  return retired;
}

void ascend_prices(PriceVector &prices, ItemSet over_demanded, double step)
{
  over_demanded.for_each([&](std::size_t d) { prices.price[d] += step; });
}

void fix_winners(std::span<Bid const> bids, AuctionState &state)
{
  ItemSet taken;
  for (auto const &bid : bids)
  {
    if (bid.empty())
    {
      continue;
    }
    if (bid.items.intersects(taken))
    {
      throw ContractViolation("fix_winners: bids overlap on " + (bid.items & taken).to_string());
    }
    taken |= bid.items;
  }

  for (auto const &bid : bids)
  {
    if (bid.empty())
    {
      continue;
    }
    state.allocation[bid.bidder]     = bid.items;
    state.package_index[bid.bidder]  = bid.package;
    state.pay_price[bid.bidder]      = bid.pay_price;
    state.active_bidders[bid.bidder] = false;
    bid.items.for_each([&](std::size_t d) {
      state.prices.fixed[d] = true;
      state.record(d, PricePhase::kFixed);
    });
    state.active_items = state.active_items - bid.items;
  }
}

std::vector<Bid> award_by_index(std::span<Bid const> bids)
{
  std::vector<Bid> ordered(bids.begin(), bids.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](Bid const &a, Bid const &b) { return a.bidder < b.bidder; });
  std::vector<Bid> accepted;
  ItemSet          taken;
  for (auto const &bid : ordered)
  {
    if (bid.empty() || bid.items.intersects(taken))
    {
      continue;
    }
    taken |= bid.items;
    accepted.push_back(bid);
  }
  return accepted;
}

AuctionOutcome run_auction(ValuationTable const &table, AuctionConfig const &config,
                           BidderStrategy const *strategy)
{
  config.validate();
  return Runner(table, config, strategy).run();
}

double overall_gain(AuctionOutcome const &outcome, ValuationTable const &table)
{
  double gain     = 0.0;
  double utility  = 0.0;
  for (std::size_t c = 0; c < outcome.package_index.size(); ++c)
  {
    if (outcome.package_index[c])
    {
      gain += table.value(c, *outcome.package_index[c]);
      utility += outcome.utility[c];
    }
  }
  double const identity = outcome.revenue + utility;
  if (std::abs(identity - gain) > 1e-9 * std::max(1.0, std::abs(gain)))
  {
    throw InvariantViolation("revenue + utilities (" + std::to_string(identity) +
                             ") differs from allocated valuations (" + std::to_string(gain) + ")");
  }
  return gain;
}

int descent_round_bound(PriceVector const &initial, double delta)
{
  double worst = 0.0;
  for (double p : initial.price)
  {
    worst = std::max(worst, std::ceil(p / delta));
  }
  return static_cast<int>(worst) + 1;
}

}  // namespace d2d
