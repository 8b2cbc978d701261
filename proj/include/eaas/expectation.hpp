#pragma once

// The yardstick a super-provider judges delivered energy against: the amount
// each service advertised, one fixed amount the super-provider actually
// needs, or a per-provider statistic of past deliveries.

#include <stdexcept>

namespace eaas {

enum class AmountStatistic { mean, median, mode };

enum class ExpectationKind { advertised, capped, customized };

struct ExpectationMode {
  ExpectationKind kind = ExpectationKind::advertised;
  double expected_amount_mah = 0;                     // capped only
  AmountStatistic statistic = AmountStatistic::mean;  // customized only

  static ExpectationMode advertised() { return {}; }

  static ExpectationMode capped(double expected_amount_mah) {
    if (!(expected_amount_mah > 0)) {
      throw std::invalid_argument(
          "ExpectationMode: capped amount must be positive");
    }
    return {ExpectationKind::capped, expected_amount_mah,
            AmountStatistic::mean};
  }

  // Stays symbolic until resolved against a concrete history; see
  // resolve_expectation() in context.hpp.
  static ExpectationMode customized(AmountStatistic statistic) {
    return {ExpectationKind::customized, 0, statistic};
  }

  bool operator==(const ExpectationMode&) const = default;
};

}  // namespace eaas
