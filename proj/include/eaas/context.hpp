#pragma once

// The super-provider's context model: which slice of a provider's history
// counts toward trust (a small constraint-satisfaction filter), how delivered
// energy is judged, attribute weights, and the trust threshold that gates
// providers into the trustworthy pool.

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eaas/core.hpp"
#include "eaas/expectation.hpp"
#include "eaas/trust.hpp"

namespace eaas {

// Any combination of the three constraints may be active; an inactive
// constraint accepts every record.
struct HistoryConstraints {
  std::optional<std::string> location;    // record made in this microcell
  std::optional<TimeInterval> time;       // advertised interval within this
  std::optional<double> min_energy_mah;   // advertised amount at least this

  bool any() const {
    return location.has_value() || time.has_value() ||
           min_energy_mah.has_value();
  }

  bool operator==(const HistoryConstraints&) const = default;
};

inline bool satisfies(const HistoryRecord& record,
                      const HistoryConstraints& constraints) {
  if (constraints.location && record.microcell != *constraints.location) {
    return false;
  }
  if (constraints.time && !constraints.time->contains(record.service.interval)) {
    return false;
  }
  if (constraints.min_energy_mah &&
      record.service.amount_mah < *constraints.min_energy_mah) {
    return false;
  }
  return true;
}

struct ContextModel {
  HistoryConstraints history;
  TrustWeights weights;
  double trust_threshold = 0.0;  // providers scoring below are set aside
  ExpectationMode expectation;
  // Filtered histories smaller than this fall back to the full history.
  int min_history = 3;
  // Records needed before the staying-duration pattern is trusted.
  int min_records_duration = 2;

  void validate() const {
    weights.validate();
    if (trust_threshold < 0.0 || trust_threshold > 1.0) {
      throw std::invalid_argument(
          "ContextModel: trust threshold outside [0,1]");
    }
    if (min_history < 0 || min_records_duration < 0) {
      throw std::invalid_argument("ContextModel: negative record threshold");
    }
  }
};

struct FilteredHistory {
  std::vector<HistoryRecord> records;
  bool fallback_used = false;
};

// Applies the history constraints to a provider's records. When too few
// records survive (< min_history) the provider's original history is used
// instead and the fallback is flagged.
inline FilteredHistory filter_history(const ProviderProfile& profile,
                                      const ContextModel& model) {
  FilteredHistory result;
  for (const auto& record : profile.history) {
    if (satisfies(record, model.history)) result.records.push_back(record);
  }
  if (static_cast<int>(result.records.size()) < model.min_history) {
    result.records = profile.history;
    result.fallback_used = true;
  }
  return result;
}

// Mean, median, or mode of a value set; mode ties break toward the smallest
// value, median of an even count is the midpoint of the middle pair.
inline double amount_statistic(std::vector<double> values,
                               AmountStatistic statistic) {
  if (values.empty()) {
    throw std::invalid_argument("amount_statistic: empty value set");
  }
  switch (statistic) {
    case AmountStatistic::mean: {
      double total = 0;
      for (double v : values) total += v;
      return total / static_cast<double>(values.size());
    }
    case AmountStatistic::median: {
      std::sort(values.begin(), values.end());
      const std::size_t mid = values.size() / 2;
      if (values.size() % 2 == 1) return values[mid];
      return (values[mid - 1] + values[mid]) / 2.0;
    }
    case AmountStatistic::mode: {
      std::map<double, int> counts;
      for (double v : values) ++counts[v];
      double best = values.front();
      int best_count = 0;
      for (const auto& [value, count] : counts) {
        if (count > best_count) {
          best = value;
          best_count = count;
        }
      }
      return best;
    }
  }
  throw std::invalid_argument("amount_statistic: unknown statistic");
}

// Turns a customized expectation into a concrete capped amount extracted
// from the provider's delivered-energy pattern; advertised and capped modes
// pass through unchanged.
inline ExpectationMode resolve_expectation(
    std::span<const HistoryRecord> history, const ExpectationMode& mode) {
  if (mode.kind != ExpectationKind::customized) return mode;
  if (history.empty()) {
    throw std::invalid_argument(
        "resolve_expectation: customized expectation needs history");
  }
  std::vector<double> delivered;
  delivered.reserve(history.size());
  for (const auto& record : history) {
    delivered.push_back(record.delivered_mah);
  }
  const double amount = amount_statistic(std::move(delivered), mode.statistic);
  if (!(amount > 0)) {
    throw std::invalid_argument(
        "resolve_expectation: provider history has no delivered energy");
  }
  return ExpectationMode::capped(amount);
}

}  // namespace eaas
