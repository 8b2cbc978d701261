// Command-line front end for the energy-service composition harness.
//
//   eaas run       full sweep: environments x strategies x service counts
//   eaas filters   history-constraint comparison under the knapsack strategy
//   eaas timing    composition wall-clock per strategy and service count
//   eaas generate  emit a synthetic scenario as history + request CSV files
//   eaas trust     score providers from a history CSV against a context model
//
// Every subcommand accepts --config <file> plus flag overrides; overrides
// win over the file. Exit code is 0 on success, 1 on any config or I/O
// error.

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eaas/eaas.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::optional<std::int64_t> seed;
  std::optional<int> trials;
  std::optional<std::string> demand;
  std::optional<std::string> strategies;
  std::optional<std::string> environments;
  std::optional<std::string> service_counts;
  std::optional<std::string> out;
};

void add_common_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "flat key=value config file");
  cmd->add_option("--seed", args.seed, "master random seed");
  cmd->add_option("--trials", args.trials, "independent trials per data point");
  cmd->add_option("--demand", args.demand, "demand in mAh, fixed or min:max");
  cmd->add_option("--strategies", args.strategies,
                  "comma list: greedy,priority,knapsack,trust_heuristic");
  cmd->add_option("--environments", args.environments,
                  "comma list: trustworthy,neutral,untrustworthy");
  cmd->add_option("--service-counts", args.service_counts,
                  "comma list of provider counts to sweep");
  cmd->add_option("--out", args.out, "output CSV path");
}

eaas::ExperimentConfig build_config(const CommonArgs& args) {
  eaas::ExperimentConfig config;
  if (!args.config_path.empty()) {
    config = eaas::load_config_file(args.config_path);
  }
  if (args.seed) {
    config.seed = static_cast<std::uint64_t>(*args.seed);
  }
  if (args.trials) config.trials = *args.trials;
  if (args.demand) eaas::apply_config_value(config, "demand", *args.demand);
  if (args.strategies) {
    eaas::apply_config_value(config, "strategies", *args.strategies);
  }
  if (args.environments) {
    eaas::apply_config_value(config, "environments", *args.environments);
  }
  if (args.service_counts) {
    eaas::apply_config_value(config, "service_counts", *args.service_counts);
  }
  if (args.out) config.output_path = *args.out;
  return config;
}

int run_generate(const CommonArgs& common, const std::string& environment,
                 int providers, int history_len, const std::string& history_out,
                 const std::string& requests_out) {
  eaas::ExperimentConfig config = build_config(common);
  eaas::WorkloadParams workload = config.workload;
  workload.demand_min_mah = config.demand_min_mah;
  workload.demand_max_mah = config.demand_max_mah;
  const eaas::Scenario scenario = eaas::generate_scenario(
      eaas::EnvironmentProfile{eaas::environment_from_string(environment),
                               config.seed},
      providers, history_len, workload);
  std::vector<eaas::HistoryRecord> records;
  for (const auto& provider : scenario.providers) {
    records.insert(records.end(), provider.history.begin(),
                   provider.history.end());
  }
  eaas::write_history_csv(records, history_out);
  eaas::write_request_csv(scenario.requests, requests_out);
  std::cout << "wrote " << records.size() << " history records to "
            << history_out << " and " << scenario.requests.size()
            << " requests to " << requests_out << "\n";
  return 0;
}

int run_trust(const CommonArgs& common, const std::string& history_path,
              double offer_amount, eaas::Minutes offer_duration) {
  const eaas::ExperimentConfig config = build_config(common);
  const auto records = eaas::read_history_csv(history_path);

  std::map<std::string, std::vector<eaas::HistoryRecord>> by_provider;
  for (const auto& record : records) {
    by_provider[record.service.provider_id].push_back(record);
  }

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!config.output_path.empty()) {
    file.open(config.output_path);
    if (!file) {
      throw std::runtime_error("cannot write output file: " +
                               config.output_path);
    }
    out = &file;
  }
  *out << "provider_id,records,filtered_records,fallback,success_rate,"
          "timeliness,delivery_size,impact,duration_factor,trust\n";
  for (const auto& [provider_id, history] : by_provider) {
    eaas::EnergyService offer(provider_id + "-offer", provider_id,
                              offer_amount, history.front().microcell,
                              eaas::TimeInterval(0, offer_duration));
    const eaas::ProviderProfile profile(provider_id, history, offer);
    const eaas::FilteredHistory filtered =
        eaas::filter_history(profile, config.context);
    const eaas::ExpectationMode expectation =
        eaas::resolve_expectation(filtered.records, config.context.expectation);
    const eaas::ProviderTrust assessed = eaas::provider_trust(
        filtered.records, offer, config.context.weights, expectation,
        config.context.min_records_duration);
    *out << provider_id << ',' << history.size() << ','
         << filtered.records.size() << ',' << (filtered.fallback_used ? 1 : 0)
         << ',' << assessed.attributes.success_rate << ','
         << assessed.attributes.timeliness << ','
         << assessed.attributes.delivery_size << ','
         << assessed.attributes.impact << ','
         << assessed.attributes.duration_factor << ',' << assessed.score
         << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trust-aware composition of crowdsourced energy services"};
  app.require_subcommand(1);

  CommonArgs run_args, filter_args, timing_args, generate_args, trust_args;

  CLI::App* run_cmd =
      app.add_subcommand("run", "sweep environments, strategies, and counts");
  add_common_flags(run_cmd, run_args);

  CLI::App* filters_cmd = app.add_subcommand(
      "filters", "compare full / time / spatio-temporal history filtering");
  add_common_flags(filters_cmd, filter_args);

  CLI::App* timing_cmd =
      app.add_subcommand("timing", "measure composition wall-clock time");
  add_common_flags(timing_cmd, timing_args);

  CLI::App* generate_cmd =
      app.add_subcommand("generate", "emit a scenario as CSV files");
  add_common_flags(generate_cmd, generate_args);
  std::string gen_environment = "neutral";
  int gen_providers = 20;
  int gen_history_len = 20;
  std::string gen_history_out = "history.csv";
  std::string gen_requests_out = "requests.csv";
  generate_cmd->add_option("--env", gen_environment, "environment kind");
  generate_cmd->add_option("--providers", gen_providers, "provider count");
  generate_cmd->add_option("--history-len", gen_history_len,
                           "records per provider");
  generate_cmd->add_option("--history-out", gen_history_out,
                           "history CSV path");
  generate_cmd->add_option("--requests-out", gen_requests_out,
                           "request CSV path");

  CLI::App* trust_cmd = app.add_subcommand(
      "trust", "score providers from a history CSV (stdout or --out)");
  add_common_flags(trust_cmd, trust_args);
  std::string trust_history_path;
  double trust_offer_amount = 225;
  std::int64_t trust_offer_duration = 20;
  trust_cmd->add_option("--history", trust_history_path, "history CSV to score")
      ->required();
  trust_cmd->add_option("--offer-amount", trust_offer_amount,
                        "advertised amount of the hypothetical current offer");
  trust_cmd->add_option("--offer-duration", trust_offer_duration,
                        "duration in minutes of the hypothetical current offer");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      const auto rows = eaas::run_experiment(build_config(run_args));
      std::cout << "wrote " << rows.size() << " result rows\n";
      return 0;
    }
    if (filters_cmd->parsed()) {
      const auto rows =
          eaas::compare_history_constraints(build_config(filter_args));
      for (const auto& row : rows) {
        std::cout << row.filter << " n=" << row.service_count
                  << " mean_realized_qoe=" << row.mean_realized_qoe << "\n";
      }
      return 0;
    }
    if (timing_cmd->parsed()) {
      const auto rows = eaas::measure_timing(build_config(timing_args));
      for (const auto& row : rows) {
        std::cout << eaas::to_string(row.strategy) << " n=" << row.service_count
                  << " mean_time_us=" << row.mean_time_us << "\n";
      }
      return 0;
    }
    if (generate_cmd->parsed()) {
      return run_generate(generate_args, gen_environment, gen_providers,
                          gen_history_len, gen_history_out, gen_requests_out);
    }
    if (trust_cmd->parsed()) {
      return run_trust(trust_args, trust_history_path, trust_offer_amount,
                       trust_offer_duration);
    }
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return 0;
}
