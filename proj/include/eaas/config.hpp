#pragma once

// Flat key=value experiment configuration. Blank lines and '#' comments are
// ignored; unknown keys are rejected so typos surface immediately. The same
// key/value pairs back the command-line overrides.
//
// Recognized keys (see README for the full schema):
//   seed, trials, demand, service_counts, environments, strategies,
//   history_len, price_per_unit, out, microcell,
//   weights, trust_threshold, expectation, min_history,
//   min_records_duration, filter_location, filter_window, filter_min_energy,
//   admit_low_trust, scatter_history, locality_boost

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eaas/experiment.hpp"

namespace eaas {

namespace detail {

inline std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return std::string(text.substr(first, last - first + 1));
}

inline std::vector<std::string> split_list(std::string_view text, char sep) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t pos = text.find(sep, start);
    const auto piece =
        pos == std::string_view::npos ? text.substr(start)
                                      : text.substr(start, pos - start);
    const std::string item = trim(piece);
    if (!item.empty()) items.push_back(item);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return items;
}

inline double config_double(const std::string& value, const std::string& key) {
  double parsed = 0;
  const auto result =
      std::from_chars(value.data(), value.data() + value.size(), parsed);
  if (result.ec != std::errc() || result.ptr != value.data() + value.size()) {
    throw std::invalid_argument("config: bad number for '" + key + "': " +
                                value);
  }
  return parsed;
}

inline std::int64_t config_int(const std::string& value,
                               const std::string& key) {
  std::int64_t parsed = 0;
  const auto result =
      std::from_chars(value.data(), value.data() + value.size(), parsed);
  if (result.ec != std::errc() || result.ptr != value.data() + value.size()) {
    throw std::invalid_argument("config: bad integer for '" + key + "': " +
                                value);
  }
  return parsed;
}

inline bool config_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw std::invalid_argument("config: bad boolean for '" + key + "': " +
                              value);
}

}  // namespace detail

inline AmountStatistic statistic_from_string(std::string_view name) {
  if (name == "mean") return AmountStatistic::mean;
  if (name == "median") return AmountStatistic::median;
  if (name == "mode") return AmountStatistic::mode;
  throw std::invalid_argument("unknown statistic name '" + std::string(name) +
                              "'");
}

// "advertised", "capped:<amount>", or "customized:<mean|median|mode>".
inline ExpectationMode expectation_from_string(const std::string& text) {
  if (text == "advertised") return ExpectationMode::advertised();
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  if (head == "capped") {
    if (colon == std::string::npos) {
      throw std::invalid_argument("config: capped expectation needs an amount");
    }
    return ExpectationMode::capped(
        detail::config_double(text.substr(colon + 1), "expectation"));
  }
  if (head == "customized") {
    if (colon == std::string::npos) {
      throw std::invalid_argument(
          "config: customized expectation needs a statistic");
    }
    return ExpectationMode::customized(
        statistic_from_string(text.substr(colon + 1)));
  }
  throw std::invalid_argument("config: unknown expectation '" + text + "'");
}

// Applies one key=value pair to the config; throws on unknown keys or bad
// values. "a:b" ranges are accepted wherever a single number is.
inline void apply_config_value(ExperimentConfig& config, const std::string& key,
                               const std::string& value) {
  if (key == "seed") {
    config.seed = static_cast<std::uint64_t>(detail::config_int(value, key));
  } else if (key == "trials") {
    config.trials = static_cast<int>(detail::config_int(value, key));
  } else if (key == "demand") {
    const auto colon = value.find(':');
    if (colon == std::string::npos) {
      config.demand_min_mah = config.demand_max_mah =
          detail::config_double(value, key);
    } else {
      config.demand_min_mah =
          detail::config_double(value.substr(0, colon), key);
      config.demand_max_mah =
          detail::config_double(value.substr(colon + 1), key);
    }
  } else if (key == "service_counts") {
    config.service_counts.clear();
    for (const auto& item : detail::split_list(value, ',')) {
      config.service_counts.push_back(
          static_cast<int>(detail::config_int(item, key)));
    }
  } else if (key == "environments") {
    config.environments.clear();
    for (const auto& item : detail::split_list(value, ',')) {
      config.environments.push_back(environment_from_string(item));
    }
  } else if (key == "strategies") {
    config.strategies.clear();
    for (const auto& item : detail::split_list(value, ',')) {
      config.strategies.push_back(strategy_from_string(item));
    }
  } else if (key == "history_len") {
    config.history_len = static_cast<int>(detail::config_int(value, key));
  } else if (key == "price_per_unit") {
    config.price_per_unit = detail::config_double(value, key);
  } else if (key == "out") {
    config.output_path = value;
  } else if (key == "microcell") {
    config.workload.microcell = value;
  } else if (key == "weights") {
    const auto items = detail::split_list(value, ',');
    if (items.size() != 5) {
      throw std::invalid_argument(
          "config: weights needs 5 values (sr,tl,ds,i,d)");
    }
    config.context.weights = TrustWeights{
        detail::config_double(items[0], key),
        detail::config_double(items[1], key),
        detail::config_double(items[2], key),
        detail::config_double(items[3], key),
        detail::config_double(items[4], key)};
  } else if (key == "trust_threshold") {
    config.context.trust_threshold = detail::config_double(value, key);
  } else if (key == "expectation") {
    config.context.expectation = expectation_from_string(value);
  } else if (key == "min_history") {
    config.context.min_history =
        static_cast<int>(detail::config_int(value, key));
  } else if (key == "min_records_duration") {
    config.context.min_records_duration =
        static_cast<int>(detail::config_int(value, key));
  } else if (key == "filter_location") {
    config.context.history.location = value;
  } else if (key == "filter_window") {
    const auto colon = value.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("config: filter_window needs start:end");
    }
    config.context.history.time =
        TimeInterval(detail::config_int(value.substr(0, colon), key),
                     detail::config_int(value.substr(colon + 1), key));
  } else if (key == "filter_min_energy") {
    config.context.history.min_energy_mah = detail::config_double(value, key);
  } else if (key == "admit_low_trust") {
    config.admit_low_trust = detail::config_bool(value, key);
  } else if (key == "scatter_history") {
    config.workload.scatter_history = detail::config_bool(value, key);
  } else if (key == "locality_boost") {
    config.workload.locality_boost = detail::config_double(value, key);
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

inline ExperimentConfig parse_config_text(std::istream& in,
                                          ExperimentConfig config = {}) {
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: missing '=' on line " +
                                  std::to_string(line_number));
    }
    apply_config_value(config, detail::trim(text.substr(0, eq)),
                       detail::trim(text.substr(eq + 1)));
  }
  return config;
}

inline ExperimentConfig load_config_file(const std::string& path,
                                         ExperimentConfig config = {}) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + path);
  }
  return parse_config_text(in, std::move(config));
}

}  // namespace eaas
