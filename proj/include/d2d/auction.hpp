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

// Reverse iterative combinatorial auction.
//
// Resource units (bidders) bid for packages of D2D pairs (items) under
// linear anonymous prices and the XOR bidding language. Prices start high
// and descend by `delta` on every round in which an item is not won. When
// two bids share an item the contested prices are fine-tuned upwards by
// delta / fine_tune_divisor until one side withdraws. A conflict-free bid
// wins at once: its item prices freeze and the bidder leaves the auction.

#include "d2d/item_set.hpp"
#include "d2d/rate_model.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace d2d {

enum class InitialPricePolicy
{
  kAboveMaxSingleton,  ///< p0(d) = max_c v_c({d}) + delta, raised until round 0 is quiet
  kFixedScalar,        ///< p0(d) = fixed_initial_price for every item
};

struct AuctionConfig
{
  InitialPricePolicy initial_price_policy = InitialPricePolicy::kAboveMaxSingleton;
  double             fixed_initial_price  = 0.0;
  double             delta                = 0.1;
  int                fine_tune_divisor    = 10;
  /// Ascent steps allowed in one conflict before the index tie-break fires.
  int max_fine_tune_rounds = 1000;
  /// Demand collections allowed per run; exceeding it throws InternalError.
  std::size_t max_iterations = 50'000'000;

  double fine_tune_step() const
  {
    return delta / fine_tune_divisor;
  }

  /// Throws ConfigError naming the offending field.
  void validate() const;

  bool operator==(AuctionConfig const &) const = default;
};

struct PriceVector
{
  std::vector<double> price;
  std::vector<bool>   fixed;  ///< frozen at the selling price
  int                 round{0};

  double package_price(ItemSet items) const;
};

struct Bid
{
  std::size_t                bidder{0};
  std::optional<std::size_t> package;  ///< index into the valuation table
  ItemSet                    items;
  double                     pay_price{0.0};

  bool empty() const noexcept
  {
    return !package.has_value();
  }
};

enum class PricePhase
{
  kDescend,
  kAscend,
  kFixed,
};

std::string_view to_string(PricePhase phase);

/// One price change. Restoring a fine-tuned price that did not sell is
/// recorded as a descend event within the same round.
struct PriceEvent
{
  std::size_t event_index{0};
  int         round{0};
  std::size_t item{0};
  double      price{0.0};
  PricePhase  phase{PricePhase::kDescend};
};

/// Mutable state of one run, exposed so the individual steps can be driven
/// and tested on their own.
struct AuctionState
{
  PriceVector                             prices;
  ItemSet                                 active_items;
  ItemSet                                 retired_items;
  std::vector<bool>                       active_bidders;
  Allocation                              allocation;
  std::vector<std::optional<std::size_t>> package_index;
  std::vector<double>                     pay_price;
  std::vector<PriceEvent>                 history;

  static AuctionState start(std::size_t num_bidders, PriceVector initial);

  bool any_active_bidder() const;
  void record(std::size_t item, PricePhase phase);
};

struct AuctionOutcome
{
  Allocation                              allocation;  ///< X_c, empty when unit c won nothing
  std::vector<std::optional<std::size_t>> package_index;
  std::vector<double>                     pay_price;
  std::vector<double>                     utility;
  double                                  revenue{0.0};
  int                                     rounds{0};  ///< descent rounds t
  std::size_t                             fine_tune_steps{0};
  std::size_t                             longest_fine_tune{0};
  std::size_t                             tie_break_awards{0};
  PriceVector                             initial_prices;
  PriceVector                             final_prices;
  std::vector<PriceEvent>                 price_history;
  ItemSet                                 unsold;
};

/// Replaces one bidder's demand; used to probe the incentive properties.
/// `respond` receives the truthful bid and returns the bid to submit. The
/// engine re-prices the returned package at the current prices.
struct BidderStrategy
{
  std::size_t                                                   bidder{0};
  std::function<Bid(Bid const &truthful, PriceVector const &, ItemSet active_items)> respond;
};

PriceVector initial_prices(ValuationTable const &table, AuctionConfig const &config);

/// Utility-maximising package among those made only of active items with a
/// positive valuation and v - price >= 0. Ties go to the larger valuation,
/// then the smaller package index. Empty bid when nothing qualifies.
Bid demand(std::size_t bidder, PriceVector const &prices, ValuationTable const &table,
           ItemSet active_items);

/// Items named by two or more bids.
ItemSet detect_conflicts(std::span<Bid const> bids);

/// One descent round: every item in `undemanded` and `still_demanded` drops
/// by delta, floored at 0, and the round counter advances if any price fell.
/// Undemanded items that were already at 0 are retired instead; the retired
/// set is returned.
ItemSet descend_prices(PriceVector &prices, ItemSet undemanded, double delta,
                       ItemSet still_demanded = {});

/// Fine-tuning step: raise every over-demanded item by `step`. The round
/// counter does not move.
void ascend_prices(PriceVector &prices, ItemSet over_demanded, double step);

/// Every non-empty bid wins: allocation recorded, prices frozen, bidder and
/// items leave the auction. Throws ContractViolation for overlapping bids.
void fix_winners(std::span<Bid const> bids, AuctionState &state);

/// Greedy acceptance in bidder order; overlapping later bids are dropped.
std::vector<Bid> award_by_index(std::span<Bid const> bids);

AuctionOutcome run_auction(ValuationTable const &table, AuctionConfig const &config,
                           BidderStrategy const *strategy = nullptr);

/// Sum of the winners' valuations. Throws InvariantViolation when revenue
/// plus total utility differs from it by more than 1e-9 relative.
double overall_gain(AuctionOutcome const &outcome, ValuationTable const &table);

/// max_d ceil(p0(d) / delta) + 1: the descent rounds needed to walk every
/// item down to zero and retire it.
int descent_round_bound(PriceVector const &initial, double delta);

}  // namespace d2d
