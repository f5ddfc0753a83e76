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

#include "d2d/rate_model.hpp"

#include "d2d/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace d2d {

double sinr(double signal_w, double interference_w, double noise_w)
{
  return signal_w / (interference_w + noise_w);
}

double shannon_rate(double sinr_value)
{
  return std::log2(1.0 + sinr_value);
}

double cellular_package_rate(std::size_t cellular, ItemSet package, LinkGains const &gains,
                             TransmitPowers const &powers)
{
  double interference = 0.0;
  package.for_each([&](std::size_t d) { interference += powers.d2d_w[d] * gains.d2d_cell(d, cellular); });
  return shannon_rate(sinr(powers.bs_w * gains.bs_cell[cellular], interference, powers.noise_w));
}

double d2d_rate_in_package(std::size_t pair, ItemSet package, LinkGains const &gains,
                           TransmitPowers const &powers)
{
  if (!package.contains(pair))
  {
    throw ContractViolation("d2d_rate_in_package: pair " + std::to_string(pair + 1) +
                            " is not in package " + package.to_string());
  }
  double interference = powers.bs_w * gains.bs_d2d_rx[pair];
  package.for_each([&](std::size_t other) {
    if (other != pair)
    {
      interference += powers.d2d_w[other] * gains.d2d_cross(other, pair);
    }
  });
  return shannon_rate(sinr(powers.d2d_w[pair] * gains.d2d_self[pair], interference, powers.noise_w));
}

double package_channel_rate(std::size_t cellular, ItemSet package, LinkGains const &gains,
                            TransmitPowers const &powers)
{
  double rate = cellular_package_rate(cellular, package, gains, powers);
  package.for_each([&](std::size_t d) { rate += d2d_rate_in_package(d, package, gains, powers); });
  return rate;
}

double standalone_rate(std::size_t cellular, LinkGains const &gains, TransmitPowers const &powers)
{
  return shannon_rate(sinr(powers.bs_w * gains.bs_cell[cellular], 0.0, powers.noise_w));
}

std::vector<ItemSet> enumerate_packages(std::size_t num_items, std::optional<std::size_t> max_size)
{
  if (num_items > ItemSet::kMaxItems)
  {
    throw ContractViolation("enumerate_packages: at most " + std::to_string(ItemSet::kMaxItems) +
                            " items supported");
  }
  std::size_t const cap = max_size.value_or(num_items);
  if (cap < 1)
  {
    throw ContractViolation("enumerate_packages: max package size must be >= 1");
  }

  std::vector<ItemSet> out;
  ItemSet::Bits const  end = ItemSet::Bits{1} << num_items;
  for (ItemSet::Bits mask = 1; mask < end; ++mask)
  {
    ItemSet const package{mask};
    if (package.size() <= cap)
    {
      out.push_back(package);
    }
  }
  return out;
}

void ValuationTable::index_packages()
{
  lookup_.assign(std::size_t{1} << num_items_, 0);
  for (std::size_t k = 0; k < packages_.size(); ++k)
  {
    ItemSet const package = packages_[k];
    if (package.empty() || !package.subset_of(ItemSet::first(num_items_)))
    {
      throw ContractViolation("valuation table: package " + package.to_string() +
                              " is empty or names a missing pair");
    }
    if (lookup_[package.bits()] != 0)
    {
      throw ContractViolation("valuation table: duplicate package " + package.to_string());
    }
    lookup_[package.bits()] = k + 1;
  }
}

ValuationTable ValuationTable::from_values(std::size_t num_items, std::vector<ItemSet> packages,
                                           Grid<double> values)
{
  if (num_items > ItemSet::kMaxItems)
  {
    throw ContractViolation("valuation table: too many items");
  }
  if (packages.empty() || values.cols() != packages.size() || values.rows() == 0)
  {
    throw ContractViolation("valuation table: values must be bidders x packages, non-empty");
  }
  for (std::size_t c = 0; c < values.rows(); ++c)
  {
    for (double v : values.row(c))
    {
      if (!(v >= 0.0) || !std::isfinite(v))
      {
        throw ContractViolation("valuation table: valuations must be finite and >= 0");
      }
    }
  }

  ValuationTable table;
  table.num_items_    = num_items;
  table.packages_     = std::move(packages);
  table.package_rate_ = values;
  table.values_       = std::move(values);
  table.standalone_.assign(table.values_.rows(), 0.0);
  table.index_packages();
  return table;
}

std::optional<std::size_t> ValuationTable::index_of(ItemSet package) const
{
  if (package.bits() >= lookup_.size() || lookup_[package.bits()] == 0)
  {
    return std::nullopt;
  }
  return lookup_[package.bits()] - 1;
}

double ValuationTable::value_of(std::size_t bidder, ItemSet package) const
{
  if (package.empty())
  {
    return 0.0;
  }
  auto const k = index_of(package);
  if (!k)
  {
    throw ContractViolation("valuation table: package " + package.to_string() +
                            " is outside the package universe");
  }
  return values_(bidder, *k);
}

ValuationTable ValuationTable::singletons_only() const
{
  std::vector<std::size_t> columns;
  for (std::size_t item = 0; item < num_items_; ++item)
  {
    if (auto k = index_of(ItemSet::single(item)))
    {
      columns.push_back(*k);
    }
  }

  ValuationTable out;
  out.num_items_    = num_items_;
  out.values_       = Grid<double>(num_bidders(), columns.size());
  out.package_rate_ = Grid<double>(num_bidders(), columns.size());
  out.standalone_   = standalone_;
  for (std::size_t j = 0; j < columns.size(); ++j)
  {
    out.packages_.push_back(packages_[columns[j]]);
    for (std::size_t c = 0; c < num_bidders(); ++c)
    {
      out.values_(c, j)       = values_(c, columns[j]);
      out.package_rate_(c, j) = package_rate_(c, columns[j]);
    }
  }
  out.index_packages();
  return out;
}

ValuationTable build_valuation_table(Scenario const &scenario, LinkGains const &gains,
                                     std::vector<ItemSet> packages)
{
  if (packages.empty())
  {
    throw ContractViolation("build_valuation_table: empty package set");
  }
  std::size_t const num_bidders = scenario.num_cellular();

  ValuationTable table;
  table.num_items_    = scenario.num_pairs();
  table.packages_     = std::move(packages);
  table.values_       = Grid<double>(num_bidders, table.packages_.size());
  table.package_rate_ = Grid<double>(num_bidders, table.packages_.size());
  table.standalone_.resize(num_bidders);
  table.index_packages();

  for (std::size_t c = 0; c < num_bidders; ++c)
  {
    double const alone   = standalone_rate(c, gains, scenario.powers);
    table.standalone_[c] = alone;
    for (std::size_t k = 0; k < table.packages_.size(); ++k)
    {
      double const shared     = package_channel_rate(c, table.packages_[k], gains, scenario.powers);
      table.package_rate_(c, k) = shared;
      table.values_(c, k)       = std::max(shared - alone, 0.0);
    }
  }
  return table;
}

void check_disjoint(Allocation const &allocation)
{
  ItemSet taken;
  for (std::size_t c = 0; c < allocation.size(); ++c)
  {
    if (allocation[c].intersects(taken))
    {
      throw FeasibilityError("allocation: package " + allocation[c].to_string() + " of unit " +
                             std::to_string(c + 1) + " overlaps another unit's package");
    }
    taken |= allocation[c];
  }
}

double system_sum_rate(Allocation const &allocation, LinkGains const &gains,
                       TransmitPowers const &powers)
{
  if (allocation.size() != gains.num_cellular())
  {
    throw ContractViolation("system_sum_rate: allocation needs one entry per resource unit");
  }
  check_disjoint(allocation);
  double total = 0.0;
  for (std::size_t c = 0; c < allocation.size(); ++c)
  {
    total += allocation[c].empty() ? standalone_rate(c, gains, powers)
                                   : package_channel_rate(c, allocation[c], gains, powers);
  }
  return total;
}

double clamped_gain(Allocation const &allocation, LinkGains const &gains,
                    TransmitPowers const &powers)
{
  double total = 0.0;
  for (std::size_t c = 0; c < allocation.size(); ++c)
  {
    if (!allocation[c].empty())
    {
      double const delta = package_channel_rate(c, allocation[c], gains, powers) -
                           standalone_rate(c, gains, powers);
      total += std::max(delta, 0.0);
    }
  }
  return total;
}

}  // namespace d2d
