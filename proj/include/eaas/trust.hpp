#pragma once

// Trust assessment of energy providers from their provisioning history.
// Five attributes, each a unit-interval score, combine into a weighted
// provider trust score:
//
//   success_rate     — share of past services completed as advertised
//   delivery_size    — delivered energy relative to the expectation yardstick
//   timeliness       — adherence to advertised end times
//   impact           — complement of the consumer fallout from cancellations
//   duration_factor  — current service length vs. the provider's staying
//                      pattern
//
// All functions are pure and safe to call concurrently.

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

#include "eaas/core.hpp"
#include "eaas/expectation.hpp"

namespace eaas {

struct TrustAttributes {
  double success_rate = 0;
  double delivery_size = 0;
  double timeliness = 1;
  double impact = 1;
  double duration_factor = 1;

  bool operator==(const TrustAttributes&) const = default;
};

// Relative importance of each attribute; weights must be nonnegative and sum
// to one.
struct TrustWeights {
  double success_rate = 0.2;
  double timeliness = 0.2;
  double delivery_size = 0.2;
  double impact = 0.2;
  double duration_factor = 0.2;

  static TrustWeights equal() { return {}; }

  double sum() const {
    return success_rate + timeliness + delivery_size + impact +
           duration_factor;
  }

  void validate() const {
    if (success_rate < 0 || timeliness < 0 || delivery_size < 0 ||
        impact < 0 || duration_factor < 0) {
      throw std::invalid_argument("TrustWeights: weights must be nonnegative");
    }
    if (std::abs(sum() - 1.0) > 1e-9) {
      throw std::invalid_argument("TrustWeights: weights must sum to one");
    }
  }

  TrustWeights normalized() const {
    const double s = sum();
    if (!(s > 0)) {
      throw std::invalid_argument("TrustWeights: cannot normalize zero sum");
    }
    return {success_rate / s, timeliness / s, delivery_size / s, impact / s,
            duration_factor / s};
  }

  bool operator==(const TrustWeights&) const = default;
};

/// Share of records completed in full. Empty history scores 0: no evidence
/// of successful delivery.
inline double success_rate(std::span<const HistoryRecord> history) {
  if (history.empty()) return 0.0;
  std::size_t completed = 0;
  for (const auto& record : history) {
    if (record.status == DeliveryStatus::completed) ++completed;
  }
  return static_cast<double>(completed) / static_cast<double>(history.size());
}

/// Delivered energy against the expectation yardstick. Advertised mode is
/// the ratio of total delivered to total advertised energy. Capped mode
/// rates each record as min(1, delivered/expected) and averages, so a
/// provider that consistently covers the expected amount scores 1 no matter
/// what they advertised. Customized expectations must be resolved to a
/// capped amount first. Empty history scores 0.
inline double delivery_size(std::span<const HistoryRecord> history,
                            const ExpectationMode& expectation) {
  switch (expectation.kind) {
    case ExpectationKind::advertised: {
      if (history.empty()) return 0.0;
      double delivered = 0, advertised = 0;
      for (const auto& record : history) {
        delivered += record.delivered_mah;
        advertised += record.service.amount_mah;
      }
      return delivered / advertised;
    }
    case ExpectationKind::capped: {
      if (!(expectation.expected_amount_mah > 0)) {
        throw std::invalid_argument(
            "delivery_size: capped expectation must be positive");
      }
      if (history.empty()) return 0.0;
      double total = 0;
      for (const auto& record : history) {
        total += std::min(
            1.0, record.delivered_mah / expectation.expected_amount_mah);
      }
      return std::clamp(total / static_cast<double>(history.size()), 0.0, 1.0);
    }
    case ExpectationKind::customized:
      throw std::invalid_argument(
          "delivery_size: customized expectation must be resolved first");
  }
  throw std::invalid_argument("delivery_size: unknown expectation kind");
}

/// Schedule adherence. 1 when the summed end-time overrun is nonpositive;
/// otherwise the reciprocal of the mean overrun in minutes, clamped to 1 so
/// sub-minute average delays still count as on schedule. Empty history
/// scores 1.
inline double timeliness(std::span<const HistoryRecord> history) {
  if (history.empty()) return 1.0;
  Minutes total_delay = 0;
  for (const auto& record : history) {
    total_delay += record.actual_interval.end_min - record.service.interval.end_min;
  }
  if (total_delay <= 0) return 1.0;
  const double mean_delay =
      static_cast<double>(total_delay) / static_cast<double>(history.size());
  return std::min(1.0, 1.0 / mean_delay);
}

/// Fraction of present consumers who were receiving from a service when it
/// was canceled; 0 for anything that was not canceled.
inline double failure_impact(const HistoryRecord& record) {
  if (record.consumers_present < 1) {
    throw std::invalid_argument("failure_impact: no consumers present");
  }
  if (record.status != DeliveryStatus::canceled) return 0.0;
  return static_cast<double>(record.affected_consumers) /
         static_cast<double>(record.consumers_present);
}

/// Mean complement of failure impact over every record, so a single minor
/// cancellation in a long history barely dents the score. Empty history
/// scores 1.
inline double impact_score(std::span<const HistoryRecord> history) {
  if (history.empty()) return 1.0;
  double total = 0;
  for (const auto& record : history) {
    total += 1.0 - failure_impact(record);
  }
  return total / static_cast<double>(history.size());
}

/// Staying-duration pattern check: once more than min_records services have
/// been observed, a current service longer than the provider's mean
/// advertised duration is discounted proportionally. Shorter histories and
/// shorter services score 1.
inline double duration_factor(std::span<const HistoryRecord> history,
                              const EnergyService& current, int min_records) {
  if (static_cast<int>(history.size()) <= min_records) return 1.0;
  Minutes total = 0;
  for (const auto& record : history) {
    total += record.service.interval.duration();
  }
  const double pattern =
      static_cast<double>(total) / static_cast<double>(history.size());
  const double current_duration =
      static_cast<double>(current.interval.duration());
  if (current_duration <= pattern) return 1.0;
  return pattern / current_duration;
}

struct ProviderTrust {
  double score = 0;
  TrustAttributes attributes;
};

/// Weighted combination of all five attributes for one provider, assessed on
/// a (possibly filtered) history against the current advertised service.
inline ProviderTrust provider_trust(std::span<const HistoryRecord> history,
                                    const EnergyService& current,
                                    const TrustWeights& weights,
                                    const ExpectationMode& expectation,
                                    int min_records) {
  weights.validate();
  TrustAttributes attributes{
      success_rate(history), delivery_size(history, expectation),
      timeliness(history), impact_score(history),
      duration_factor(history, current, min_records)};
  const double score = weights.success_rate * attributes.success_rate +
                       weights.timeliness * attributes.timeliness +
                       weights.delivery_size * attributes.delivery_size +
                       weights.impact * attributes.impact +
                       weights.duration_factor * attributes.duration_factor;
  return {score, attributes};
}

}  // namespace eaas
