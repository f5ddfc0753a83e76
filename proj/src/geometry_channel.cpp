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

#include "d2d/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace d2d {
namespace {

constexpr int kMaxReceiverRedraws = 1000;

double uniform01(Rng &rng)
{
  return std::uniform_real_distribution<double>{0.0, 1.0}(rng);
}

/// Area-uniform point in a disc: the radius goes with sqrt(u).
Point uniform_in_disc(Point center, double radius, Rng &rng)
{
  double const r     = radius * std::sqrt(uniform01(rng));
  double const theta = 2.0 * std::numbers::pi * uniform01(rng);
  return {center.x + r * std::cos(theta), center.y + r * std::sin(theta)};
}

double shadow_sample(double sigma_db, Rng &rng)
{
  double const z = std::normal_distribution<double>{0.0, 1.0}(rng);
  return sigma_db * z;
}

}  // namespace

double distance(Point a, Point b)
{
  return std::hypot(a.x - b.x, a.y - b.y);
}

void CellConfig::validate() const
{
  if (!(cell_radius_m > 0.0))
  {
    throw ConfigError("cell_radius_m", "must be > 0");
  }
  if (!(max_d2d_distance_m > 0.0) || max_d2d_distance_m > cell_radius_m)
  {
    throw ConfigError("max_d2d_distance_m", "must be in (0, cell_radius_m]");
  }
  if (!(path_loss_exponent_cellular >= 2.0))
  {
    throw ConfigError("path_loss_exponent_cellular", "must be >= 2");
  }
  if (!(path_loss_exponent_d2d >= 2.0))
  {
    throw ConfigError("path_loss_exponent_d2d", "must be >= 2");
  }
  if (!(shadowing_sigma_cellular_db >= 0.0))
  {
    throw ConfigError("shadowing_sigma_cellular_db", "must be >= 0");
  }
  if (!(shadowing_sigma_d2d_db >= 0.0))
  {
    throw ConfigError("shadowing_sigma_d2d_db", "must be >= 0");
  }
  if (!std::isfinite(bs_antenna_gain_db))
  {
    throw ConfigError("bs_antenna_gain_db", "must be finite");
  }
  if (!std::isfinite(ue_antenna_gain_db))
  {
    throw ConfigError("ue_antenna_gain_db", "must be finite");
  }
}

Scenario place_users(CellConfig const &config, std::size_t num_cellular, std::size_t num_pairs,
                     TransmitPowers const &powers, Rng &rng)
{
  if (num_cellular < 1 || num_pairs < 1)
  {
    throw ContractViolation("place_users needs at least one cellular user and one D2D pair");
  }
  if (powers.d2d_w.size() != num_pairs)
  {
    throw ContractViolation("place_users: one D2D transmit power per pair required");
  }

  Scenario scenario;
  scenario.powers = powers;

  Point const origin{};
  scenario.cellular_positions.reserve(num_cellular);
  for (std::size_t c = 0; c < num_cellular; ++c)
  {
    scenario.cellular_positions.push_back(uniform_in_disc(origin, config.cell_radius_m, rng));
  }

  scenario.d2d_tx_positions.reserve(num_pairs);
  scenario.d2d_rx_positions.reserve(num_pairs);
  for (std::size_t d = 0; d < num_pairs; ++d)
  {
    Point const tx = uniform_in_disc(origin, config.cell_radius_m, rng);
    Point       rx{};
    int         attempts = 0;
    for (;;)
    {
      rx = uniform_in_disc(tx, config.max_d2d_distance_m, rng);
      if (distance(rx, origin) <= config.cell_radius_m)
      {
        break;
      }
      if (++attempts >= kMaxReceiverRedraws)
      {
        throw GenerationError("could not place a D2D receiver inside the cell after 1000 draws");
      }
    }
    scenario.d2d_tx_positions.push_back(tx);
    scenario.d2d_rx_positions.push_back(rx);
  }
  return scenario;
}

double path_gain(double distance_m, double exponent, double shadow_db, double fading_power,
                 double antenna_gain_db)
{
  double const d = std::max(distance_m, kReferenceDistance);
  return std::pow(d, -exponent) * std::pow(10.0, (shadow_db + antenna_gain_db) / 10.0) *
         fading_power;
}

double sample_rayleigh_power(Rng &rng)
{
  return std::exponential_distribution<double>{1.0}(rng);
}

LinkGains build_link_gains(Scenario const &scenario, CellConfig const &config, Rng &rng)
{
  std::size_t const num_cellular = scenario.num_cellular();
  std::size_t const num_pairs    = scenario.num_pairs();

  double const bs_link_gain_db     = config.bs_antenna_gain_db + config.ue_antenna_gain_db;
  double const device_link_gain_db = 2.0 * config.ue_antenna_gain_db;

  auto fading = [&]() { return config.rayleigh_fading ? sample_rayleigh_power(rng) : 1.0; };

  auto cellular_link = [&](Point from, Point to, double antenna_db) {
    double const shadow = shadow_sample(config.shadowing_sigma_cellular_db, rng);
    return path_gain(distance(from, to), config.path_loss_exponent_cellular, shadow, fading(),
                     antenna_db);
  };
  auto d2d_link = [&](Point from, Point to) {
    double const shadow = shadow_sample(config.shadowing_sigma_d2d_db, rng);
    return path_gain(distance(from, to), config.path_loss_exponent_d2d, shadow, fading(),
                     device_link_gain_db);
  };

  LinkGains gains;
  gains.bs_cell.reserve(num_cellular);
  for (auto const &ue : scenario.cellular_positions)
  {
    gains.bs_cell.push_back(cellular_link(scenario.bs_position, ue, bs_link_gain_db));
  }

  gains.bs_d2d_rx.reserve(num_pairs);
  for (auto const &rx : scenario.d2d_rx_positions)
  {
    gains.bs_d2d_rx.push_back(cellular_link(scenario.bs_position, rx, bs_link_gain_db));
  }

  gains.d2d_self.reserve(num_pairs);
  for (std::size_t d = 0; d < num_pairs; ++d)
  {
    gains.d2d_self.push_back(d2d_link(scenario.d2d_tx_positions[d], scenario.d2d_rx_positions[d]));
  }

  gains.d2d_cell = Grid<double>(num_pairs, num_cellular);
  for (std::size_t d = 0; d < num_pairs; ++d)
  {
    for (std::size_t c = 0; c < num_cellular; ++c)
    {
      gains.d2d_cell(d, c) = cellular_link(scenario.d2d_tx_positions[d],
                                           scenario.cellular_positions[c], device_link_gain_db);
    }
  }

  gains.d2d_cross = Grid<double>(num_pairs, num_pairs);
  for (std::size_t from = 0; from < num_pairs; ++from)
  {
    for (std::size_t to = 0; to < num_pairs; ++to)
    {
      if (from != to)
      {
        gains.d2d_cross(from, to) =
            d2d_link(scenario.d2d_tx_positions[from], scenario.d2d_rx_positions[to]);
      }
    }
  }
  return gains;
}

double noise_power(double density_dbm_per_hz, double bandwidth_hz, double noise_figure_db)
{
  if (!(bandwidth_hz > 0.0))
  {
    throw ContractViolation("noise_power: bandwidth must be > 0");
  }
  double const dbm = density_dbm_per_hz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
  return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double dbm_to_watts(double dbm)
{
  return std::pow(10.0, (dbm - 30.0) / 10.0);
}

}  // namespace d2d
