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

#include "d2d/grid.hpp"

#include <cstddef>
#include <random>
#include <vector>

namespace d2d {

/// Random source owned by one drop.
using Rng = std::mt19937_64;

/// Links shorter than this are evaluated at this distance (meters).
inline constexpr double kReferenceDistance = 1.0;

struct Point
{
  double x{0.0};
  double y{0.0};

  bool operator==(Point const &) const = default;
};

double distance(Point a, Point b);

/// Cell geometry and propagation knobs. dB values are converted to linear
/// factors inside path_gain; nothing else in the library sees dB.
struct CellConfig
{
  double cell_radius_m               = 500.0;
  double max_d2d_distance_m          = 5.0;
  double path_loss_exponent_cellular = 3.67;
  double path_loss_exponent_d2d      = 3.0;
  double shadowing_sigma_cellular_db = 8.0;
  double shadowing_sigma_d2d_db      = 4.0;
  double bs_antenna_gain_db          = 14.0;
  double ue_antenna_gain_db          = 0.0;
  /// When false every fading power is exactly 1 (pure path loss + shadowing).
  bool rayleigh_fading = true;

  /// Throws ConfigError naming the first out-of-range field.
  void validate() const;

  bool operator==(CellConfig const &) const = default;
};

/// Transmit powers and receiver noise, all in watts.
struct TransmitPowers
{
  double              bs_w{0.0};
  std::vector<double> d2d_w;  ///< one entry per D2D transmitter
  double              noise_w{0.0};
};

/// User positions for one drop. The base station sits at the origin.
struct Scenario
{
  Point              bs_position{};
  std::vector<Point> cellular_positions;
  std::vector<Point> d2d_tx_positions;
  std::vector<Point> d2d_rx_positions;
  TransmitPowers     powers;

  std::size_t num_cellular() const noexcept
  {
    return cellular_positions.size();
  }

  std::size_t num_pairs() const noexcept
  {
    return d2d_tx_positions.size();
  }
};

/// Linear power gains (the squared channel magnitudes) of every link the
/// downlink-sharing interference model touches.
struct LinkGains
{
  std::vector<double> bs_cell;     ///< BS -> cellular UE c
  std::vector<double> bs_d2d_rx;   ///< BS -> D2D receiver d
  std::vector<double> d2d_self;    ///< D2D tx d -> its own receiver
  Grid<double>        d2d_cell;    ///< (d, c): D2D tx d -> cellular UE c
  Grid<double>        d2d_cross;   ///< (d', d): D2D tx d' -> D2D rx d; diagonal unused

  std::size_t num_cellular() const noexcept
  {
    return bs_cell.size();
  }

  std::size_t num_pairs() const noexcept
  {
    return d2d_self.size();
  }

  bool operator==(LinkGains const &) const = default;
};

/// Uniform-over-area placement of C cellular users and D transmitters, each
/// receiver uniform within max_d2d_distance of its transmitter and inside the
/// cell. Throws GenerationError after 1000 rejected receiver draws.
Scenario place_users(CellConfig const &config, std::size_t num_cellular, std::size_t num_pairs,
                     TransmitPowers const &powers, Rng &rng);

/// distance^-exponent * 10^((shadow + antenna)/10) * fading, with the
/// distance clamped to kReferenceDistance so that gain is 1 at 1 m.
double path_gain(double distance_m, double exponent, double shadow_db, double fading_power,
                 double antenna_gain_db);

/// |h|^2 for h ~ CN(0, 1), i.e. an exponential variate of mean 1.
double sample_rayleigh_power(Rng &rng);

/// Fresh shadowing and fading per link. BS links use the cellular exponent,
/// cellular sigma and the BS plus UE antenna gains; D2D tx -> cellular UE uses
/// the cellular exponent and sigma; D2D tx -> D2D rx links use the D2D ones.
LinkGains build_link_gains(Scenario const &scenario, CellConfig const &config, Rng &rng);

/// Thermal noise over a band in watts.
double noise_power(double density_dbm_per_hz, double bandwidth_hz, double noise_figure_db);

double dbm_to_watts(double dbm);

}  // namespace d2d
