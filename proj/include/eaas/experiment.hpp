#pragma once

// Seeded experiment harness. Sweeps environments, strategies, and service
// counts over repeated independent trials; every strategy inside a trial
// sees the same generated scenario, the same scored candidates, and the same
// per-provider delivery outcomes, so comparisons are fair. Results aggregate
// into CSV rows whose only run-to-run variation is the timing column.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eaas/composition.hpp"
#include "eaas/context.hpp"
#include "eaas/core.hpp"
#include "eaas/csv.hpp"
#include "eaas/demand.hpp"
#include "eaas/workload.hpp"

namespace eaas {

struct ExperimentConfig {
  std::uint64_t seed = 42;
  int trials = 200;
  double demand_min_mah = 1000;
  double demand_max_mah = 1000;
  std::vector<int> service_counts = {10, 20, 40, 80};
  std::vector<EnvironmentKind> environments = {EnvironmentKind::trustworthy,
                                               EnvironmentKind::neutral,
                                               EnvironmentKind::untrustworthy};
  std::vector<Strategy> strategies = {Strategy::greedy, Strategy::priority,
                                      Strategy::knapsack,
                                      Strategy::trust_heuristic};
  int history_len = 20;
  double price_per_unit = 0.1;
  std::string output_path;  // empty: results are returned but not written
  ContextModel context;
  bool admit_low_trust = false;
  WorkloadParams workload;

  void validate() const {
    if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (service_counts.empty()) {
      throw std::invalid_argument("config: no service counts");
    }
    for (int count : service_counts) {
      if (count < 1) throw std::invalid_argument("config: bad service count");
    }
    if (environments.empty()) {
      throw std::invalid_argument("config: no environments");
    }
    if (strategies.empty()) {
      throw std::invalid_argument("config: no strategies");
    }
    if (!(demand_min_mah > 0) || demand_max_mah < demand_min_mah) {
      throw std::invalid_argument("config: bad demand range");
    }
    if (history_len < 1) {
      throw std::invalid_argument("config: history_len must be >= 1");
    }
    if (price_per_unit < 0) {
      throw std::invalid_argument("config: negative price");
    }
    context.validate();
    workload.validate();
  }
};

struct ResultRow {
  EnvironmentKind environment = EnvironmentKind::neutral;
  Strategy strategy = Strategy::greedy;
  int service_count = 0;
  int trials = 0;
  double mean_expected_qoe = 0;
  double mean_realized_qoe = 0;
  double qoe_stddev = 0;
  double mean_cost = 0;
  double mean_time_us = 0;
};

struct FilterComparisonRow {
  std::string filter;
  int service_count = 0;
  int trials = 0;
  double mean_expected_qoe = 0;
  double mean_realized_qoe = 0;
  double qoe_stddev = 0;
  double mean_cost = 0;
  double mean_time_us = 0;
};

struct TimingRow {
  Strategy strategy = Strategy::greedy;
  int service_count = 0;
  int trials = 0;
  double mean_time_us = 0;
  double time_stddev_us = 0;
};

namespace detail {

struct RunningStats {
  std::vector<double> values;

  void add(double v) { values.push_back(v); }

  double mean() const {
    if (values.empty()) return 0;
    double total = 0;
    for (double v : values) total += v;
    return total / static_cast<double>(values.size());
  }

  double stddev() const {
    if (values.size() < 2) return 0;
    const double m = mean();
    double total = 0;
    for (double v : values) total += (v - m) * (v - m);
    return std::sqrt(total / static_cast<double>(values.size() - 1));
  }
};

struct TrialMetrics {
  double expected_qoe = 0;
  double realized_qoe = 0;
  double cost = 0;
  double time_us = 0;
};

// One trial of one strategy on a prepared scenario. Composition (scoring +
// allocation) is what the clock covers.
inline TrialMetrics run_trial(const Scenario& scenario,
                              const EnergyDemand& demand,
                              const ContextModel& context, Strategy strategy,
                              const ComposeOptions& options,
                              double price_per_unit,
                              std::uint64_t delivery_seed) {
  const auto t0 = std::chrono::steady_clock::now();
  CompositionResult result =
      compose(scenario.providers, demand, context, strategy, options);
  const auto t1 = std::chrono::steady_clock::now();
  const auto delivered =
      simulate_delivery(result, scenario.behaviors, delivery_seed);
  TrialMetrics metrics;
  metrics.expected_qoe = result.expected_qoe;
  metrics.realized_qoe = qoe(delivered, demand);
  metrics.cost = incentive_cost(result, price_per_unit);
  metrics.time_us =
      std::chrono::duration<double, std::micro>(t1 - t0).count();
  return metrics;
}

inline EnergyDemand scenario_demand(const Scenario& scenario) {
  return aggregate_demand(scenario.requests, scenario.window,
                          scenario.microcell);
}

template <typename Row>
void write_rows_csv(std::string_view header, std::span<const Row> rows,
                    const std::string& path,
                    void (*format)(std::ofstream&, const Row&)) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write results file: " + path);
  }
  out << header << '\n';
  for (const auto& row : rows) format(out, row);
  if (!out) {
    throw std::runtime_error("failed while writing results file: " + path);
  }
}

}  // namespace detail

inline constexpr std::string_view kResultsCsvHeader =
    "environment,strategy,service_count,trials,mean_expected_qoe,"
    "mean_realized_qoe,qoe_stddev,mean_cost,mean_time_us";

inline void write_results_csv(std::span<const ResultRow> rows,
                              const std::string& path) {
  detail::write_rows_csv<ResultRow>(
      kResultsCsvHeader, rows, path, [](std::ofstream& out, const ResultRow& r) {
        out << to_string(r.environment) << ',' << to_string(r.strategy) << ','
            << r.service_count << ',' << r.trials << ','
            << detail::format_double(r.mean_expected_qoe) << ','
            << detail::format_double(r.mean_realized_qoe) << ','
            << detail::format_double(r.qoe_stddev) << ','
            << detail::format_double(r.mean_cost) << ','
            << detail::format_double(r.mean_time_us) << '\n';
      });
}

inline constexpr std::string_view kFilterCsvHeader =
    "filter,service_count,trials,mean_expected_qoe,mean_realized_qoe,"
    "qoe_stddev,mean_cost,mean_time_us";

inline void write_filter_csv(std::span<const FilterComparisonRow> rows,
                             const std::string& path) {
  detail::write_rows_csv<FilterComparisonRow>(
      kFilterCsvHeader, rows, path,
      [](std::ofstream& out, const FilterComparisonRow& r) {
        out << r.filter << ',' << r.service_count << ',' << r.trials << ','
            << detail::format_double(r.mean_expected_qoe) << ','
            << detail::format_double(r.mean_realized_qoe) << ','
            << detail::format_double(r.qoe_stddev) << ','
            << detail::format_double(r.mean_cost) << ','
            << detail::format_double(r.mean_time_us) << '\n';
      });
}

inline constexpr std::string_view kTimingCsvHeader =
    "strategy,service_count,trials,mean_time_us,time_stddev_us";

inline void write_timing_csv(std::span<const TimingRow> rows,
                             const std::string& path) {
  detail::write_rows_csv<TimingRow>(
      kTimingCsvHeader, rows, path, [](std::ofstream& out, const TimingRow& r) {
        out << to_string(r.strategy) << ',' << r.service_count << ','
            << r.trials << ',' << detail::format_double(r.mean_time_us) << ','
            << detail::format_double(r.time_stddev_us) << '\n';
      });
}

/// The main sweep: environments x service counts x strategies, `trials`
/// independent scenarios per cell. Writes the results CSV when the config
/// names an output path.
inline std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::vector<ResultRow> rows;
  WorkloadParams workload = config.workload;
  workload.demand_min_mah = config.demand_min_mah;
  workload.demand_max_mah = config.demand_max_mah;
  const ComposeOptions options{config.admit_low_trust};

  for (std::size_t e = 0; e < config.environments.size(); ++e) {
    const EnvironmentKind env = config.environments[e];
    for (int count : config.service_counts) {
      std::vector<detail::RunningStats> expected(config.strategies.size());
      std::vector<detail::RunningStats> realized(config.strategies.size());
      std::vector<detail::RunningStats> cost(config.strategies.size());
      std::vector<detail::RunningStats> time_us(config.strategies.size());

      for (int trial = 0; trial < config.trials; ++trial) {
        // Seeded by environment and trial only: sweeping the service count
        // extends the same provider population, so count comparisons are
        // paired rather than independently noisy.
        const std::uint64_t trial_seed = detail::derive_seed(
            config.seed, {e, static_cast<std::uint64_t>(trial)});
        const Scenario scenario = generate_scenario(
            EnvironmentProfile{env, trial_seed}, count, config.history_len,
            workload);
        const EnergyDemand demand = detail::scenario_demand(scenario);
        const std::uint64_t delivery_seed =
            detail::derive_seed(trial_seed, {0xde11bee5u});
        for (std::size_t s = 0; s < config.strategies.size(); ++s) {
          const auto metrics = detail::run_trial(
              scenario, demand, config.context, config.strategies[s], options,
              config.price_per_unit, delivery_seed);
          expected[s].add(metrics.expected_qoe);
          realized[s].add(metrics.realized_qoe);
          cost[s].add(metrics.cost);
          time_us[s].add(metrics.time_us);
        }
      }

      for (std::size_t s = 0; s < config.strategies.size(); ++s) {
        rows.push_back(ResultRow{env, config.strategies[s], count,
                                 config.trials, expected[s].mean(),
                                 realized[s].mean(), realized[s].stddev(),
                                 cost[s].mean(), time_us[s].mean()});
      }
    }
  }
  if (!config.output_path.empty()) {
    write_results_csv(rows, config.output_path);
  }
  return rows;
}

/// Compares history-constraint filters (full history, demand-window time
/// filter, and spatio-temporal filter) under the knapsack strategy. History
/// scattering is forced on so the filters have something to separate; the
/// first configured environment is used.
inline std::vector<FilterComparisonRow> compare_history_constraints(
    const ExperimentConfig& config) {
  config.validate();
  WorkloadParams workload = config.workload;
  workload.demand_min_mah = config.demand_min_mah;
  workload.demand_max_mah = config.demand_max_mah;
  workload.scatter_history = true;
  const EnvironmentKind env = config.environments.front();
  const ComposeOptions options{config.admit_low_trust};
  const TimeInterval window(0, workload.window_minutes);

  struct FilterCase {
    std::string name;
    HistoryConstraints constraints;
  };
  const std::vector<FilterCase> filters = {
      {"full", HistoryConstraints{}},
      {"time", HistoryConstraints{std::nullopt, window, std::nullopt}},
      {"spatio_temporal",
       HistoryConstraints{workload.microcell, window, std::nullopt}},
  };

  std::vector<FilterComparisonRow> rows;
  for (const auto& filter : filters) {
    ContextModel context = config.context;
    context.history = filter.constraints;
    for (int count : config.service_counts) {
      detail::RunningStats expected, realized, cost, time_us;
      for (int trial = 0; trial < config.trials; ++trial) {
        // Seeded by trial only: every filter replays the same scenarios.
        const std::uint64_t trial_seed = detail::derive_seed(
            config.seed, {static_cast<std::uint64_t>(trial)});
        const Scenario scenario = generate_scenario(
            EnvironmentProfile{env, trial_seed}, count, config.history_len,
            workload);
        const EnergyDemand demand = detail::scenario_demand(scenario);
        const auto metrics = detail::run_trial(
            scenario, demand, context, Strategy::knapsack, options,
            config.price_per_unit, detail::derive_seed(trial_seed, {0xde11bee5u}));
        expected.add(metrics.expected_qoe);
        realized.add(metrics.realized_qoe);
        cost.add(metrics.cost);
        time_us.add(metrics.time_us);
      }
      rows.push_back(FilterComparisonRow{filter.name, count, config.trials,
                                         expected.mean(), realized.mean(),
                                         realized.stddev(), cost.mean(),
                                         time_us.mean()});
    }
  }
  if (!config.output_path.empty()) {
    write_filter_csv(rows, config.output_path);
  }
  return rows;
}

/// Mean and spread of composition wall-clock time per strategy and service
/// count, on scenarios from the first configured environment.
inline std::vector<TimingRow> measure_timing(const ExperimentConfig& config) {
  config.validate();
  WorkloadParams workload = config.workload;
  workload.demand_min_mah = config.demand_min_mah;
  workload.demand_max_mah = config.demand_max_mah;
  const EnvironmentKind env = config.environments.front();
  const ComposeOptions options{config.admit_low_trust};

  std::vector<TimingRow> rows;
  for (Strategy strategy : config.strategies) {
    for (int count : config.service_counts) {
      detail::RunningStats time_us;
      for (int trial = 0; trial < config.trials; ++trial) {
        const std::uint64_t trial_seed = detail::derive_seed(
            config.seed, {static_cast<std::uint64_t>(trial)});
        const Scenario scenario = generate_scenario(
            EnvironmentProfile{env, trial_seed}, count, config.history_len,
            workload);
        const EnergyDemand demand = detail::scenario_demand(scenario);
        const auto metrics = detail::run_trial(
            scenario, demand, config.context, strategy, options,
            config.price_per_unit, detail::derive_seed(trial_seed, {0xde11bee5u}));
        time_us.add(metrics.time_us);
      }
      rows.push_back(TimingRow{strategy, count, config.trials, time_us.mean(),
                               time_us.stddev()});
    }
  }
  if (!config.output_path.empty()) {
    write_timing_csv(rows, config.output_path);
  }
  return rows;
}

}  // namespace eaas
