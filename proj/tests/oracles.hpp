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

// Reference implementations used only by the tests. They are written from the
// formulas directly and share no code with the library beyond its data types.

#include "d2d/geometry_channel.hpp"
#include "d2d/item_set.hpp"
#include "d2d/rate_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

namespace oracle {

inline bool close(double a, double b, double rel = 1e-9)
{
  return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

/// Rate of cellular user c when the pairs in `members` share its channel.
inline double cellular_rate(std::size_t c, std::vector<std::size_t> const &members,
                            d2d::LinkGains const &g, d2d::TransmitPowers const &p)
{
  double interference = 0.0;
  for (std::size_t d : members)
  {
    interference += p.d2d_w[d] * g.d2d_cell(d, c);
  }
  return std::log2(1.0 + p.bs_w * g.bs_cell[c] / (interference + p.noise_w));
}

inline double pair_rate(std::size_t d, std::vector<std::size_t> const &members,
                        d2d::LinkGains const &g, d2d::TransmitPowers const &p)
{
  double interference = p.bs_w * g.bs_d2d_rx[d];
  for (std::size_t other : members)
  {
    if (other != d)
    {
      interference += p.d2d_w[other] * g.d2d_cross(other, d);
    }
  }
  return std::log2(1.0 + p.d2d_w[d] * g.d2d_self[d] / (interference + p.noise_w));
}

inline double alone(std::size_t c, d2d::LinkGains const &g, d2d::TransmitPowers const &p)
{
  return std::log2(1.0 + p.bs_w * g.bs_cell[c] / p.noise_w);
}

inline double channel_rate(std::size_t c, std::vector<std::size_t> const &members,
                           d2d::LinkGains const &g, d2d::TransmitPowers const &p)
{
  if (members.empty())
  {
    return alone(c, g, p);
  }
  double total = cellular_rate(c, members, g, p);
  for (std::size_t d : members)
  {
    total += pair_rate(d, members, g, p);
  }
  return total;
}

inline double valuation(std::size_t c, std::vector<std::size_t> const &members,
                        d2d::LinkGains const &g, d2d::TransmitPowers const &p)
{
  return std::max(channel_rate(c, members, g, p) - alone(c, g, p), 0.0);
}

/// Sum over every channel of its cellular rate plus the rates of its pairs.
inline double sum_rate(d2d::Allocation const &x, d2d::LinkGains const &g,
                       d2d::TransmitPowers const &p)
{
  double total = 0.0;
  for (std::size_t c = 0; c < x.size(); ++c)
  {
    total += channel_rate(c, x[c].members(), g, p);
  }
  return total;
}

struct BruteForce
{
  double                          best{0.0};
  std::vector<d2d::Allocation>    optima;
  std::size_t                     feasible{0};
};

/// Enumerates every map item -> {unassigned, bidder 0..C-1}. A map is feasible
/// when each bidder's item set is empty or a package of the table.
inline BruteForce brute_force_cap(d2d::ValuationTable const &table)
{
  std::size_t const C = table.num_bidders();
  std::size_t const D = table.num_items();
  BruteForce        out;
  out.best = -1.0;

  std::vector<std::size_t> owner(D, 0);  // 0 = unassigned, c+1 = bidder c
  for (;;)
  {
    d2d::Allocation x(C);
    for (std::size_t d = 0; d < D; ++d)
    {
      if (owner[d] > 0)
      {
        x[owner[d] - 1].insert(d);
      }
    }
    bool   ok    = true;
    double value = 0.0;
    for (std::size_t c = 0; c < C && ok; ++c)
    {
      if (x[c].empty())
      {
        continue;
      }
      auto const k = table.index_of(x[c]);
      if (!k)
      {
        ok = false;
        break;
      }
      value += table.value(c, *k);
    }
    if (ok)
    {
      ++out.feasible;
      if (value > out.best)
      {
        out.best = value;
        out.optima.assign(1, x);
      }
      else if (value == out.best)
      {
        out.optima.push_back(x);
      }
    }

    std::size_t d = 0;
    while (d < D && ++owner[d] == C + 1)
    {
      owner[d++] = 0;
    }
    if (d == D)
    {
      break;
    }
  }
  return out;
}

/// Random table over every non-empty package, values drawn from
/// {0 with probability `zero_share`, else U(0, scale)}.
inline d2d::ValuationTable random_table(std::mt19937_64 &rng, std::size_t C, std::size_t D,
                                        double zero_share = 0.3, double scale = 5.0,
                                        bool integer_values = false)
{
  auto packages = d2d::enumerate_packages(D);
  d2d::Grid<double>                      values(C, packages.size());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t c = 0; c < C; ++c)
  {
    for (std::size_t k = 0; k < packages.size(); ++k)
    {
      if (unit(rng) < zero_share)
      {
        continue;
      }
      double const v = unit(rng) * scale;
      values(c, k)   = integer_values ? std::floor(v) : v;
    }
  }
  return d2d::ValuationTable::from_values(D, std::move(packages), std::move(values));
}

/// Gains and powers with SNRs in a moderate range so that interference matters.
struct Instance
{
  d2d::Scenario  scenario;
  d2d::LinkGains gains;
};

inline Instance random_instance(std::mt19937_64 &rng, std::size_t C, std::size_t D)
{
  std::uniform_real_distribution<double> db(-10.0, 30.0);
  auto draw = [&] { return std::pow(10.0, db(rng) / 10.0); };

  Instance out;
  out.scenario.cellular_positions.resize(C);
  out.scenario.d2d_tx_positions.resize(D);
  out.scenario.d2d_rx_positions.resize(D);
  out.scenario.powers.bs_w    = 1.0;
  out.scenario.powers.noise_w = 1.0;
  out.scenario.powers.d2d_w.assign(D, 1.0);

  d2d::LinkGains &g = out.gains;
  for (std::size_t c = 0; c < C; ++c)
  {
    g.bs_cell.push_back(draw());
  }
  for (std::size_t d = 0; d < D; ++d)
  {
    g.bs_d2d_rx.push_back(draw() * 0.1);
    g.d2d_self.push_back(draw() * 10.0);
  }
  g.d2d_cell  = d2d::Grid<double>(D, C);
  g.d2d_cross = d2d::Grid<double>(D, D);
  for (std::size_t d = 0; d < D; ++d)
  {
    for (std::size_t c = 0; c < C; ++c)
    {
      g.d2d_cell(d, c) = draw() * 0.1;
    }
    for (std::size_t e = 0; e < D; ++e)
    {
      g.d2d_cross(d, e) = d == e ? 0.0 : draw() * 0.1;
    }
  }
  return out;
}

}  // namespace oracle
