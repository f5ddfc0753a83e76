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

#include "d2d/experiments.hpp"

#include "d2d/errors.hpp"
#include "d2d/rate_model.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace d2d {
namespace {

constexpr double kRelTol = 1e-9;

double tolerance(double scale)
{
  return kRelTol * std::max(1.0, std::abs(scale));
}

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::string fmt(double value)
{
  std::ostringstream out;
  out.precision(12);
  out << value;
  return out.str();
}

/// Sum in ascending order of value.
double ordered_sum(std::vector<double> values)
{
  std::sort(values.begin(), values.end());
  double total = 0.0;
  for (double v : values)
  {
    total += v;
  }
  return total;
}

struct Moments
{
  double mean{0.0};
  double stddev{0.0};
};

Moments moments(std::vector<double> const &values)
{
  Moments m;
  if (values.empty())
  {
    return m;
  }
  double const n = static_cast<double>(values.size());
  m.mean         = ordered_sum(values) / n;
  if (values.size() > 1)
  {
    std::vector<double> squares;
    squares.reserve(values.size());
    for (double v : values)
    {
      squares.push_back((v - m.mean) * (v - m.mean));
    }
    m.stddev = std::sqrt(ordered_sum(std::move(squares)) / (n - 1.0));
  }
  return m;
}

/// Sum rate via the table: standalone rates plus the raw rate change of
/// every allocated package. Independent of system_sum_rate's evaluation.
double sum_rate_from_table(Allocation const &allocation, ValuationTable const &table)
{
  double total = 0.0;
  for (std::size_t c = 0; c < allocation.size(); ++c)
  {
    total += table.standalone(c);
    if (!allocation[c].empty())
    {
      auto const k = table.index_of(allocation[c]);
      total += table.package_rate(c, *k) - table.standalone(c);
    }
  }
  return total;
}

}  // namespace

bool DropResult::operator==(DropResult const &other) const
{
  auto same_metrics = [](AlgorithmMetrics const &a, AlgorithmMetrics const &b) {
    return a.allocation == b.allocation && a.sum_rate == b.sum_rate &&
           a.overall_gain == b.overall_gain && a.eta == b.eta && a.efficiency == b.efficiency &&
           a.rounds == b.rounds;
  };
  if (seed != other.seed || num_cellular != other.num_cellular || num_pairs != other.num_pairs ||
      cellular_only_sum_rate != other.cellular_only_sum_rate || round_bound != other.round_bound ||
      longest_fine_tune != other.longest_fine_tune || violations != other.violations ||
      price_history.size() != other.price_history.size())
  {
    return false;
  }
  for (std::size_t i = 0; i < metrics.size(); ++i)
  {
    if (!same_metrics(metrics[i], other.metrics[i]))
    {
      return false;
    }
  }
  for (std::size_t i = 0; i < price_history.size(); ++i)
  {
    auto const &a = price_history[i];
    auto const &b = other.price_history[i];
    if (a.event_index != b.event_index || a.round != b.round || a.item != b.item ||
        a.price != b.price || a.phase != b.phase)
    {
      return false;
    }
  }
  return true;
}

double allocating_efficiency(double outcome_gain, double optimal_gain)
{
  if (outcome_gain < -tolerance(optimal_gain))
  {
    throw InvariantViolation("allocating efficiency: negative outcome gain " + fmt(outcome_gain));
  }
  if (outcome_gain > optimal_gain + tolerance(optimal_gain))
  {
    throw InvariantViolation("allocating efficiency: outcome gain " + fmt(outcome_gain) +
                             " exceeds the optimum " + fmt(optimal_gain));
  }
  if (optimal_gain <= 0.0)
  {
    return 1.0;
  }
  return std::clamp(outcome_gain / optimal_gain, 0.0, 1.0);
}

DropResult run_drop(std::size_t num_cellular, std::size_t num_pairs, DropConfig const &config,
                    std::uint64_t seed)
{
  if (num_cellular < 1 || num_pairs < 1)
  {
    throw ContractViolation("run_drop needs C >= 1 and D >= 1");
  }
  config.cell.validate();
  config.auction.validate();

  Rng rng(seed);

  TransmitPowers powers{.bs_w    = config.bs_power_w,
                        .d2d_w   = std::vector<double>(num_pairs, config.device_power_w),
                        .noise_w = config.noise_w};
  Scenario const  scenario = place_users(config.cell, num_cellular, num_pairs, powers, rng);
  LinkGains const gains    = build_link_gains(scenario, config.cell, rng);
  ValuationTable const table =
      build_valuation_table(scenario, gains, enumerate_packages(num_pairs, config.max_package_size));

  DropResult result;
  result.seed         = seed;
  result.num_cellular = num_cellular;
  result.num_pairs    = num_pairs;
  auto violation      = [&](std::string message) { result.violations.push_back(std::move(message)); };

  Allocation const nothing(num_cellular);
  result.cellular_only_sum_rate = system_sum_rate(nothing, gains, scenario.powers);

  AllocationResult const optimum = solve_cap_exhaustive(table, config.exhaustive_limits);

  AuctionOutcome full_run;
  AuctionOutcome reduced_run;
  AllocationResult rica{.allocation = nothing, .algorithm = Algorithm::kRica};
  AllocationResult reduced{.allocation = nothing, .algorithm = Algorithm::kReducedRica};
  try
  {
    rica = run_rica(table, config.auction, &full_run);
  }
  catch (InvariantViolation const &e)
  {
    violation(std::string("rica: ") + e.what());
  }
  try
  {
    reduced = run_reduced_rica(table, config.auction, &reduced_run);
  }
  catch (InvariantViolation const &e)
  {
    violation(std::string("reduced_rica: ") + e.what());
  }

  Allocation const random = random_allocation(num_cellular, num_pairs, rng, config.max_package_size);

  auto fill = [&](Algorithm algorithm, Allocation const &allocation, double gain, int rounds) {
    AlgorithmMetrics &m = result[algorithm];
    m.allocation        = allocation;
    m.overall_gain      = gain;
    m.rounds            = rounds;
    try
    {
      m.sum_rate = system_sum_rate(allocation, gains, scenario.powers);
    }
    catch (FeasibilityError const &e)
    {
      violation(std::string(to_string(algorithm)) + ": " + e.what());
      m.sum_rate = std::numeric_limits<double>::quiet_NaN();
    }
  };
  fill(Algorithm::kExhaustive, optimum.allocation, optimum.overall_gain, 0);
  fill(Algorithm::kRica, rica.allocation, rica.overall_gain, full_run.rounds);
  fill(Algorithm::kReducedRica, reduced.allocation, reduced.overall_gain, reduced_run.rounds);
  fill(Algorithm::kRandom, random, clamped_gain(random, gains, scenario.powers), 0);

  double const best_rate = result[Algorithm::kExhaustive].sum_rate;
  double const best_gain = optimum.overall_gain;
  for (Algorithm algorithm : kAllAlgorithms)
  {
    AlgorithmMetrics &m = result[algorithm];
    m.eta               = m.sum_rate / best_rate;
    try
    {
      m.efficiency = allocating_efficiency(m.overall_gain, best_gain);
    }
    catch (InvariantViolation const &e)
    {
      violation(std::string(to_string(algorithm)) + ": " + e.what());
    }
  }

  // Oracle dominance and the no-harm property of clamped valuations.
  for (Algorithm algorithm : {Algorithm::kRica, Algorithm::kReducedRica})
  {
    AlgorithmMetrics const &m = result[algorithm];
    std::string const       name(to_string(algorithm));
    if (m.sum_rate > best_rate + tolerance(best_rate))
    {
      violation(name + ": sum rate " + fmt(m.sum_rate) + " above exhaustive " + fmt(best_rate));
    }
    if (m.overall_gain > best_gain + tolerance(best_gain))
    {
      violation(name + ": overall gain above exhaustive");
    }
    if (m.sum_rate < result.cellular_only_sum_rate - tolerance(result.cellular_only_sum_rate))
    {
      violation(name + ": sum rate below the cellular-only sum rate");
    }
  }

  // Two routes to the same sum rate.
  for (Algorithm algorithm : {Algorithm::kExhaustive, Algorithm::kRica, Algorithm::kReducedRica})
  {
    AlgorithmMetrics const &m     = result[algorithm];
    double const            other = sum_rate_from_table(m.allocation, table);
    if (std::abs(other - m.sum_rate) > tolerance(m.sum_rate))
    {
      violation(std::string(to_string(algorithm)) + ": direct sum rate " + fmt(m.sum_rate) +
                " != table sum rate " + fmt(other));
    }
  }

  // Convergence and individual rationality.
  result.round_bound = descent_round_bound(full_run.initial_prices, config.auction.delta);
  result.longest_fine_tune = std::max(full_run.longest_fine_tune, reduced_run.longest_fine_tune);
  for (auto const *run : {&full_run, &reduced_run})
  {
    int const bound = descent_round_bound(run->initial_prices, config.auction.delta);
    if (run->rounds > bound)
    {
      violation("auction used " + std::to_string(run->rounds) + " rounds, bound " +
                std::to_string(bound));
    }
    if (run->longest_fine_tune > static_cast<std::size_t>(config.auction.max_fine_tune_rounds))
    {
      violation("fine-tuning exceeded its bound");
    }
    for (double u : run->utility)
    {
      if (u < 0.0)
      {
        violation("negative winner utility " + fmt(u));
      }
    }
  }

  if (config.keep_trace)
  {
    result.price_history = std::move(full_run.price_history);
  }
  return result;
}

std::string_view to_string(SweepVariable variable)
{
  return variable == SweepVariable::kNumD2dPairs ? "num_d2d_pairs" : "num_resource_units";
}

std::optional<SweepVariable> parse_sweep_variable(std::string_view name)
{
  if (name == "num_d2d_pairs" || name == "D")
  {
    return SweepVariable::kNumD2dPairs;
  }
  if (name == "num_resource_units" || name == "C")
  {
    return SweepVariable::kNumResourceUnits;
  }
  return std::nullopt;
}

void SweepSpec::validate() const
{
  if (values.empty())
  {
    throw ConfigError("sweep", "range must be non-empty");
  }
  for (std::size_t v : values)
  {
    if (v < 1)
    {
      throw ConfigError("sweep", "values must be >= 1");
    }
  }
  if (fixed_other < 1)
  {
    throw ConfigError(variable == SweepVariable::kNumD2dPairs ? "num_resource_units"
                                                              : "num_d2d_pairs",
                      "must be >= 1");
  }
  if (drops < 1)
  {
    throw ConfigError("drops", "must be >= 1");
  }
}

std::uint64_t drop_seed(std::uint64_t master_seed, std::size_t point, std::size_t drop)
{
  return splitmix64(splitmix64(master_seed ^ splitmix64(point)) + drop);
}

std::vector<DropResult> run_drops(std::size_t num_cellular, std::size_t num_pairs,
                                  DropConfig const &config, std::span<std::uint64_t const> seeds,
                                  unsigned threads)
{
  std::vector<DropResult> results(seeds.size());
  unsigned const          workers =
      std::max(1U, std::min<unsigned>(threads == 0 ? std::thread::hardware_concurrency() : threads,
                                      static_cast<unsigned>(seeds.size())));

  std::atomic<std::size_t> next{0};
  std::exception_ptr       failure;
  std::mutex               failure_mutex;
  auto                     work = [&]() {
    for (std::size_t i = next++; i < seeds.size(); i = next++)
    {
      try
      {
        results[i] = run_drop(num_cellular, num_pairs, config, seeds[i]);
      }
      catch (...)
      {
        std::lock_guard lock(failure_mutex);
        if (!failure)
        {
          failure = std::current_exception();
        }
        next = seeds.size();
      }
    }
  };

  if (workers == 1)
  {
    work();
  }
  else
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
    {
      pool.emplace_back(work);
    }
  }
  if (failure)
  {
    std::rethrow_exception(failure);
  }
  return results;
}

PointSummary summarize(std::span<DropResult const> drops)
{
  PointSummary summary;
  summary.drops = drops.size();
  if (drops.empty())
  {
    return summary;
  }
  summary.num_cellular = drops.front().num_cellular;
  summary.num_pairs    = drops.front().num_pairs;

  for (Algorithm algorithm : kAllAlgorithms)
  {
    std::vector<double> rates;
    std::vector<double> etas;
    std::vector<double> efficiencies;
    std::vector<double> rounds;
    for (auto const &drop : drops)
    {
      rates.push_back(drop[algorithm].sum_rate);
      etas.push_back(drop[algorithm].eta);
      efficiencies.push_back(drop[algorithm].efficiency);
      rounds.push_back(drop[algorithm].rounds);
    }
    Moments const rate = moments(rates);
    Moments const eta  = moments(etas);

    AlgorithmSummary &s = summary.algorithms[static_cast<std::size_t>(algorithm)];
    s.mean_sum_rate     = rate.mean;
    s.std_sum_rate      = rate.stddev;
    s.mean_eta          = eta.mean;
    s.std_eta           = eta.stddev;
    s.mean_efficiency   = moments(efficiencies).mean;
    s.mean_rounds       = moments(rounds).mean;
  }

  std::vector<std::pair<std::uint64_t, std::string>> messages;
  for (auto const &drop : drops)
  {
    for (auto const &v : drop.violations)
    {
      messages.emplace_back(drop.seed, v);
    }
  }
  std::sort(messages.begin(), messages.end());
  for (auto const &[seed, message] : messages)
  {
    summary.violations.push_back("seed " + std::to_string(seed) + ": " + message);
  }
  return summary;
}

SweepResult monte_carlo(SweepSpec const &spec)
{
  spec.validate();
  SweepResult result;
  for (std::size_t point = 0; point < spec.values.size(); ++point)
  {
    std::size_t const value = spec.values[point];
    std::size_t const num_cellular =
        spec.variable == SweepVariable::kNumResourceUnits ? value : spec.fixed_other;
    std::size_t const num_pairs =
        spec.variable == SweepVariable::kNumD2dPairs ? value : spec.fixed_other;

    std::vector<std::uint64_t> seeds(spec.drops);
    for (std::size_t i = 0; i < spec.drops; ++i)
    {
      seeds[i] = drop_seed(spec.master_seed, point, i);
    }
    std::vector<DropResult> drops = run_drops(num_cellular, num_pairs, spec.base, seeds, spec.threads);

    PointSummary summary = summarize(drops);
    summary.value        = value;
    result.points.push_back(std::move(summary));
    if (spec.base.keep_trace)
    {
      result.drops.push_back(std::move(drops));
    }
  }
  return result;
}

}  // namespace d2d
