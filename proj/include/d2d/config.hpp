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
#include "d2d/experiments.hpp"
#include "d2d/geometry_channel.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace d2d {

/// Experiment settings. Defaults follow the single-cell setup: 500 m cell,
/// -174 dBm/Hz noise over a 15 kHz sub-carrier with a 9 dB noise figure,
/// 14 dBi BS and 0 dBi device antennas, D2D range 5 m, 46 dBm BS and 23 dBm
/// device transmit power.
struct ExperimentConfig
{
  CellConfig cell;

  double bs_power_dbm             = 46.0;
  double device_power_dbm         = 23.0;
  double noise_density_dbm_per_hz = -174.0;
  double subcarrier_bandwidth_hz  = 15e3;
  double noise_figure_db          = 9.0;

  AuctionConfig    auction;
  std::size_t      max_package_size = 0;  ///< 0: all packages
  ExhaustiveLimits exhaustive_limits;

  SweepVariable sweep_variable = SweepVariable::kNumD2dPairs;
  std::size_t   sweep_from     = 2;
  std::size_t   sweep_to       = 8;
  std::size_t   num_resource_units = 8;  ///< C when sweeping D
  std::size_t   num_d2d_pairs      = 4;  ///< D when sweeping C
  std::size_t   drops              = 200;
  std::uint64_t master_seed        = 1;
  unsigned      threads            = 0;

  std::filesystem::path output_dir = "results";
  bool                  trace      = false;

  // Linear powers, filled by finalize() from the dBm fields above.
  double bs_power_w     = 0.0;
  double device_power_w = 0.0;
  double noise_w        = 0.0;

  /// Range-checks every field (ConfigError names the key) and derives the
  /// watt values.
  void finalize();

  DropConfig drop_config() const;
  SweepSpec  sweep_spec() const;

  bool operator==(ExperimentConfig const &) const = default;
};

/// Parses "key = value" lines; '#' starts a comment. Unset keys keep their
/// defaults. Throws ConfigError naming the offending key.
ExperimentConfig parse_config(std::string_view text);

/// Reads and parses a file. Throws ConfigError when it cannot be read.
ExperimentConfig load_config(std::filesystem::path const &path);

/// Every key in a form parse_config reads back to an identical config.
std::string dump_config(ExperimentConfig const &config);

/// Applies one key; shared by the file parser and command-line overrides.
void set_config_value(ExperimentConfig &config, std::string_view key, std::string_view value);

/// Shortest round-trip decimal form, independent of the global locale.
std::string format_double(double value);

}  // namespace d2d
