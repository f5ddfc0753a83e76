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

#include "d2d/geometry_channel.hpp"
#include "d2d/grid.hpp"
#include "d2d/item_set.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace d2d {

// All rates are spectral efficiencies in bits/s/Hz.

double sinr(double signal_w, double interference_w, double noise_w);

/// log2(1 + sinr).
double shannon_rate(double sinr_value);

/// Rate of cellular UE `cellular` while the pairs in `package` share its
/// resource unit.
double cellular_package_rate(std::size_t cellular, ItemSet package, LinkGains const &gains,
                             TransmitPowers const &powers);

/// Rate of pair `pair` while it shares a resource unit with the rest of
/// `package`. Throws ContractViolation when the pair is not in the package.
double d2d_rate_in_package(std::size_t pair, ItemSet package, LinkGains const &gains,
                           TransmitPowers const &powers);

/// Whole-channel rate: the cellular UE plus every member pair.
double package_channel_rate(std::size_t cellular, ItemSet package, LinkGains const &gains,
                            TransmitPowers const &powers);

/// Interference-free rate of cellular UE `cellular`.
double standalone_rate(std::size_t cellular, LinkGains const &gains, TransmitPowers const &powers);

/// Every non-empty subset of the first `num_items` pairs with at most
/// `max_size` members, ordered by ascending mask value. The position in the
/// returned list is the package index.
std::vector<ItemSet> enumerate_packages(std::size_t num_items,
                                        std::optional<std::size_t> max_size = std::nullopt);

/// Bidder valuations for every package in a fixed universe.
///
/// Rows are resource units (bidders), columns are packages. `values` holds
/// the clamped rate gain, `package_rate` the raw channel rate and
/// `standalone` the interference-free cellular rate. Tables built by hand
/// (from_values) carry zeros in the two rate fields.
class ValuationTable
{
public:
  ValuationTable() = default;

  /// Table from explicit valuations. Throws ContractViolation on duplicate,
  /// empty or out-of-range packages, or on negative values.
  static ValuationTable from_values(std::size_t num_items, std::vector<ItemSet> packages,
                                    Grid<double> values);

  std::size_t num_bidders() const noexcept
  {
    return values_.rows();
  }

  std::size_t num_items() const noexcept
  {
    return num_items_;
  }

  std::size_t num_packages() const noexcept
  {
    return packages_.size();
  }

  std::span<ItemSet const> packages() const noexcept
  {
    return packages_;
  }

  ItemSet package(std::size_t k) const
  {
    return packages_[k];
  }

  double value(std::size_t bidder, std::size_t k) const
  {
    return values_(bidder, k);
  }

  double package_rate(std::size_t bidder, std::size_t k) const
  {
    return package_rate_(bidder, k);
  }

  double standalone(std::size_t bidder) const
  {
    return standalone_[bidder];
  }

  Grid<double> const &values() const noexcept
  {
    return values_;
  }

  std::optional<std::size_t> index_of(ItemSet package) const;

  /// Valuation of `package`, 0 for the empty package. Throws
  /// ContractViolation when the package is outside the universe.
  double value_of(std::size_t bidder, ItemSet package) const;

  /// Same bidders restricted to the singleton packages that are in the
  /// universe, re-indexed in item order.
  ValuationTable singletons_only() const;

private:
  friend ValuationTable build_valuation_table(Scenario const &, LinkGains const &,
                                              std::vector<ItemSet>);

  void index_packages();

  std::size_t          num_items_{0};
  std::vector<ItemSet> packages_;
  Grid<double>         values_;
  Grid<double>         package_rate_;
  std::vector<double>  standalone_;
  /// mask -> package index + 1 (0 when absent)
  std::vector<std::size_t> lookup_;
};

/// v_c(k) = max(V_c(k) - V_c, 0) for every bidder and package.
ValuationTable build_valuation_table(Scenario const &scenario, LinkGains const &gains,
                                     std::vector<ItemSet> packages);

/// One package (possibly empty) per resource unit.
using Allocation = std::vector<ItemSet>;

/// Throws FeasibilityError when two packages share a pair.
void check_disjoint(Allocation const &allocation);

/// Downlink sum rate over all cellular users and the pairs they host.
/// Throws FeasibilityError for overlapping packages.
double system_sum_rate(Allocation const &allocation, LinkGains const &gains,
                       TransmitPowers const &powers);

/// Sum over bidders of max(V_c(X_c) - V_c, 0), evaluated from the channel
/// rather than from a table, so it covers packages outside any universe.
double clamped_gain(Allocation const &allocation, LinkGains const &gains,
                    TransmitPowers const &powers);

}  // namespace d2d
