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

#include "d2d/config.hpp"

#include "d2d/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <vector>

namespace d2d {
namespace {

std::string_view trim(std::string_view s)
{
  auto const first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
  {
    return {};
  }
  auto const last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view value)
{
  double out{};
  auto const [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(out))
  {
    throw ConfigError(std::string(key), "expected a number, got '" + std::string(value) + "'");
  }
  return out;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view value)
{
  std::uint64_t out{};
  auto const [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size())
  {
    throw ConfigError(std::string(key),
                      "expected a non-negative integer, got '" + std::string(value) + "'");
  }
  return out;
}

long long parse_signed(std::string_view key, std::string_view value)
{
  long long out{};
  auto const [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size())
  {
    throw ConfigError(std::string(key), "expected an integer, got '" + std::string(value) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value)
{
  if (value == "true" || value == "1" || value == "yes" || value == "on")
  {
    return true;
  }
  if (value == "false" || value == "0" || value == "no" || value == "off")
  {
    return false;
  }
  throw ConfigError(std::string(key), "expected true or false, got '" + std::string(value) + "'");
}

int parse_int(std::string_view key, std::string_view value)
{
  long long const v = parse_signed(key, value);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
  {
    throw ConfigError(std::string(key), "out of range");
  }
  return static_cast<int>(v);
}

struct Field
{
  std::string_view                                                name;
  std::function<void(ExperimentConfig &, std::string_view)>       set;
  std::function<std::string(ExperimentConfig const &)>            get;
};

#define D2D_DOUBLE_FIELD(key, member)                                                           \
  Field                                                                                         \
  {                                                                                             \
    key, [](ExperimentConfig &c, std::string_view v) { c.member = parse_double(key, v); },      \
        [](ExperimentConfig const &c) { return format_double(c.member); }                       \
  }

#define D2D_SIZE_FIELD(key, member)                                                             \
  Field                                                                                         \
  {                                                                                             \
    key,                                                                                        \
        [](ExperimentConfig &c, std::string_view v) {                                           \
          c.member = static_cast<decltype(c.member)>(parse_unsigned(key, v));                   \
        },                                                                                      \
        [](ExperimentConfig const &c) { return std::to_string(c.member); }                      \
  }

std::vector<Field> const &fields()
{
  static std::vector<Field> const table = {
      D2D_DOUBLE_FIELD("cell_radius_m", cell.cell_radius_m),
      D2D_DOUBLE_FIELD("max_d2d_distance_m", cell.max_d2d_distance_m),
      D2D_DOUBLE_FIELD("path_loss_exponent_cellular", cell.path_loss_exponent_cellular),
      D2D_DOUBLE_FIELD("path_loss_exponent_d2d", cell.path_loss_exponent_d2d),
      D2D_DOUBLE_FIELD("shadowing_sigma_cellular_db", cell.shadowing_sigma_cellular_db),
      D2D_DOUBLE_FIELD("shadowing_sigma_d2d_db", cell.shadowing_sigma_d2d_db),
      D2D_DOUBLE_FIELD("bs_antenna_gain_dbi", cell.bs_antenna_gain_db),
      D2D_DOUBLE_FIELD("ue_antenna_gain_dbi", cell.ue_antenna_gain_db),
      Field{"rayleigh_fading",
            [](ExperimentConfig &c, std::string_view v) {
              c.cell.rayleigh_fading = parse_bool("rayleigh_fading", v);
            },
            [](ExperimentConfig const &c) {
              return std::string(c.cell.rayleigh_fading ? "true" : "false");
            }},
      D2D_DOUBLE_FIELD("bs_power_dbm", bs_power_dbm),
      D2D_DOUBLE_FIELD("device_power_dbm", device_power_dbm),
      D2D_DOUBLE_FIELD("noise_density_dbm_per_hz", noise_density_dbm_per_hz),
      D2D_DOUBLE_FIELD("subcarrier_bandwidth_hz", subcarrier_bandwidth_hz),
      D2D_DOUBLE_FIELD("noise_figure_db", noise_figure_db),
      D2D_DOUBLE_FIELD("delta", auction.delta),
      Field{"fine_tune_divisor",
            [](ExperimentConfig &c, std::string_view v) {
              c.auction.fine_tune_divisor = parse_int("fine_tune_divisor", v);
            },
            [](ExperimentConfig const &c) { return std::to_string(c.auction.fine_tune_divisor); }},
      Field{"max_fine_tune_rounds",
            [](ExperimentConfig &c, std::string_view v) {
              c.auction.max_fine_tune_rounds = parse_int("max_fine_tune_rounds", v);
            },
            [](ExperimentConfig const &c) {
              return std::to_string(c.auction.max_fine_tune_rounds);
            }},
      Field{"initial_price_policy",
            [](ExperimentConfig &c, std::string_view v) {
              if (v == "max_singleton")
              {
                c.auction.initial_price_policy = InitialPricePolicy::kAboveMaxSingleton;
              }
              else if (v == "fixed")
              {
                c.auction.initial_price_policy = InitialPricePolicy::kFixedScalar;
              }
              else
              {
                throw ConfigError("initial_price_policy",
                                  "expected max_singleton or fixed, got '" + std::string(v) + "'");
              }
            },
            [](ExperimentConfig const &c) {
              return std::string(c.auction.initial_price_policy ==
                                         InitialPricePolicy::kFixedScalar
                                     ? "fixed"
                                     : "max_singleton");
            }},
      D2D_DOUBLE_FIELD("initial_price", auction.fixed_initial_price),
      D2D_SIZE_FIELD("max_auction_iterations", auction.max_iterations),
      D2D_SIZE_FIELD("max_package_size", max_package_size),
      D2D_SIZE_FIELD("exhaustive_max_items", exhaustive_limits.max_items),
      D2D_SIZE_FIELD("exhaustive_max_bidders", exhaustive_limits.max_bidders),
      Field{"sweep_variable",
            [](ExperimentConfig &c, std::string_view v) {
              auto const parsed = parse_sweep_variable(v);
              if (!parsed)
              {
                throw ConfigError("sweep_variable",
                                  "expected num_d2d_pairs or num_resource_units, got '" +
                                      std::string(v) + "'");
              }
              c.sweep_variable = *parsed;
            },
            [](ExperimentConfig const &c) { return std::string(to_string(c.sweep_variable)); }},
      D2D_SIZE_FIELD("sweep_from", sweep_from),
      D2D_SIZE_FIELD("sweep_to", sweep_to),
      D2D_SIZE_FIELD("num_resource_units", num_resource_units),
      D2D_SIZE_FIELD("num_d2d_pairs", num_d2d_pairs),
      D2D_SIZE_FIELD("drops", drops),
      D2D_SIZE_FIELD("master_seed", master_seed),
      D2D_SIZE_FIELD("threads", threads),
      Field{"output_dir",
            [](ExperimentConfig &c, std::string_view v) { c.output_dir = std::string(v); },
            [](ExperimentConfig const &c) { return c.output_dir.string(); }},
      Field{"trace",
            [](ExperimentConfig &c, std::string_view v) { c.trace = parse_bool("trace", v); },
            [](ExperimentConfig const &c) { return std::string(c.trace ? "true" : "false"); }},
  };
  return table;
}

#undef D2D_DOUBLE_FIELD
#undef D2D_SIZE_FIELD

}  // namespace

std::string format_double(double value)
{
  std::array<char, 64> buffer{};
  auto const [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), ptr);
}

void set_config_value(ExperimentConfig &config, std::string_view key, std::string_view value)
{
  for (auto const &field : fields())
  {
    if (field.name == key)
    {
      field.set(config, value);
      return;
    }
  }
  throw ConfigError(std::string(key), "unknown key");
}

void ExperimentConfig::finalize()
{
  cell.validate();
  auction.validate();

  auto finite = [](std::string_view key, double v) {
    if (!std::isfinite(v))
    {
      throw ConfigError(std::string(key), "must be finite");
    }
  };
  finite("bs_power_dbm", bs_power_dbm);
  finite("device_power_dbm", device_power_dbm);
  finite("noise_density_dbm_per_hz", noise_density_dbm_per_hz);
  finite("noise_figure_db", noise_figure_db);
  if (!(subcarrier_bandwidth_hz > 0.0))
  {
    throw ConfigError("subcarrier_bandwidth_hz", "must be > 0");
  }
  if (sweep_from < 1 || sweep_to < sweep_from)
  {
    throw ConfigError("sweep_from", "need 1 <= sweep_from <= sweep_to");
  }
  if (num_resource_units < 1)
  {
    throw ConfigError("num_resource_units", "must be >= 1");
  }
  if (num_d2d_pairs < 1)
  {
    throw ConfigError("num_d2d_pairs", "must be >= 1");
  }
  if (drops < 1)
  {
    throw ConfigError("drops", "must be >= 1");
  }
  std::size_t const largest_pairs =
      sweep_variable == SweepVariable::kNumD2dPairs ? sweep_to : num_d2d_pairs;
  if (largest_pairs > ItemSet::kMaxItems)
  {
    throw ConfigError(sweep_variable == SweepVariable::kNumD2dPairs ? "sweep_to" : "num_d2d_pairs",
                      "at most " + std::to_string(ItemSet::kMaxItems) + " D2D pairs supported");
  }

  bs_power_w     = dbm_to_watts(bs_power_dbm);
  device_power_w = dbm_to_watts(device_power_dbm);
  noise_w        = noise_power(noise_density_dbm_per_hz, subcarrier_bandwidth_hz, noise_figure_db);
}

DropConfig ExperimentConfig::drop_config() const
{
  DropConfig out;
  out.cell              = cell;
  out.bs_power_w        = bs_power_w;
  out.device_power_w    = device_power_w;
  out.noise_w           = noise_w;
  out.auction           = auction;
  out.exhaustive_limits = exhaustive_limits;
  out.keep_trace        = trace;
  if (max_package_size > 0)
  {
    out.max_package_size = max_package_size;
  }
  return out;
}

SweepSpec ExperimentConfig::sweep_spec() const
{
  SweepSpec spec;
  spec.variable = sweep_variable;
  for (std::size_t v = sweep_from; v <= sweep_to; ++v)
  {
    spec.values.push_back(v);
  }
  spec.fixed_other =
      sweep_variable == SweepVariable::kNumD2dPairs ? num_resource_units : num_d2d_pairs;
  spec.drops       = drops;
  spec.base        = drop_config();
  spec.master_seed = master_seed;
  spec.threads     = threads;
  return spec;
}

ExperimentConfig parse_config(std::string_view text)
{
  ExperimentConfig      config;
  std::set<std::string> seen;
  std::size_t           line_number = 0;
  while (!text.empty())
  {
    auto const       eol  = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text                  = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_number;

    if (auto const hash = line.find('#'); hash != std::string_view::npos)
    {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty())
    {
      continue;
    }
    auto const eq = line.find('=');
    if (eq == std::string_view::npos)
    {
      throw ConfigError("", "line " + std::to_string(line_number) + ": expected key = value");
    }
    std::string const key(trim(line.substr(0, eq)));
    std::string_view  value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second)
    {
      throw ConfigError(key, "set more than once");
    }
    set_config_value(config, key, value);
  }
  config.finalize();
  return config;
}

ExperimentConfig load_config(std::filesystem::path const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw ConfigError("config", "cannot read " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string dump_config(ExperimentConfig const &config)
{
  std::string out;
  for (auto const &field : fields())
  {
    out += field.name;
    out += " = ";
    out += field.get(config);
    out += '\n';
  }
  return out;
}

}  // namespace d2d
