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
#include "d2d/experiments.hpp"
#include "d2d/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <string>

namespace {

/// "D=2..6" or "num_resource_units=1..8".
void apply_sweep(d2d::ExperimentConfig &config, std::string const &text)
{
  static std::regex const pattern(R"(^\s*([A-Za-z_]+)\s*=\s*(\d+)\s*\.\.\s*(\d+)\s*$)");
  std::smatch             m;
  if (!std::regex_match(text, m, pattern))
  {
    throw d2d::ConfigError("sweep", "expected <var>=<lo>..<hi>, got '" + text + "'");
  }
  auto const variable = d2d::parse_sweep_variable(m[1].str());
  if (!variable)
  {
    throw d2d::ConfigError("sweep", "unknown variable '" + m[1].str() + "'");
  }
  config.sweep_variable = *variable;
  d2d::set_config_value(config, "sweep_from", m[2].str());
  d2d::set_config_value(config, "sweep_to", m[3].str());
}

void write_file(std::filesystem::path const &path, std::string const &content)
{
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out)
  {
    throw d2d::Error("cannot write " + path.string());
  }
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Reverse iterative combinatorial auction for D2D spectrum sharing"};

  std::string                  config_path;
  std::optional<std::uint64_t> seed;
  std::string                  out_dir;
  bool                         trace = false;
  std::optional<std::size_t>   drops;
  std::string                  sweep;
  std::optional<std::size_t>   max_package_size;
  std::optional<unsigned>      threads;
  bool                         dump = false;

  app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "master seed");
  app.add_option("--out", out_dir, "output directory");
  app.add_flag("--trace", trace, "export the auction price history of every drop");
  app.add_option("--drops", drops, "drops per sweep point");
  app.add_option("--sweep", sweep, "sweep range, e.g. num_d2d_pairs=2..8 or C=1..8");
  app.add_option("--max-package-size", max_package_size, "largest package (0: unlimited)");
  app.add_option("--threads", threads, "worker threads (0: all cores)");
  app.add_flag("--dump-config", dump, "print the effective configuration and exit");

  CLI11_PARSE(app, argc, argv);

  try
  {
    d2d::ExperimentConfig config =
        config_path.empty() ? d2d::parse_config("") : d2d::load_config(config_path);
    if (seed)
    {
      config.master_seed = *seed;
    }
    if (!out_dir.empty())
    {
      config.output_dir = out_dir;
    }
    if (trace)
    {
      config.trace = true;
    }
    if (drops)
    {
      config.drops = *drops;
    }
    if (!sweep.empty())
    {
      apply_sweep(config, sweep);
    }
    if (max_package_size)
    {
      config.max_package_size = *max_package_size;
    }
    if (threads)
    {
      config.threads = *threads;
    }
    config.finalize();

    if (dump)
    {
      std::cout << d2d::dump_config(config);
      return 0;
    }

    d2d::SweepSpec const   spec   = config.sweep_spec();
    d2d::SweepResult const result = d2d::monte_carlo(spec);

    std::filesystem::create_directories(config.output_dir);
    {
      std::ostringstream csv;
      d2d::write_results_csv(csv, spec.variable, result.points, spec.master_seed);
      write_file(config.output_dir / "results.csv", csv.str());
    }
    if (config.trace)
    {
      std::ostringstream csv;
      csv << d2d::kTraceHeader << '\n';
      for (auto const &point : result.drops)
      {
        for (auto const &drop : point)
        {
          d2d::write_trace_rows(csv, drop.seed, drop.price_history);
        }
      }
      write_file(config.output_dir / "price_trace.csv", csv.str());
    }

    std::string const summary = d2d::format_summary(spec.variable, result.points, spec.master_seed,
                                                    config.subcarrier_bandwidth_hz);
    write_file(config.output_dir / "summary.txt", summary);
    std::cout << summary;

    for (auto const &point : result.points)
    {
      if (!point.violations.empty())
      {
        return 2;
      }
    }
    return 0;
  }
  catch (d2d::ConfigError const &e)
  {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 1;
  }
  catch (std::exception const &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
