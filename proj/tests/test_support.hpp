#pragma once

// Builders shared by the test suites. RecordSpec defaults describe a clean,
// fully delivered, on-time service; tests override just the fields under
// test via designated initializers.

#include <random>
#include <string>
#include <vector>

#include "eaas/core.hpp"

namespace testsupport {

struct RecordSpec {
  std::string provider = "p0";
  std::string service_id = "s0";
  std::string microcell = "cell-A";
  double advertised = 100;
  double delivered = 100;
  eaas::DeliveryStatus status = eaas::DeliveryStatus::completed;
  eaas::Minutes adv_start = 0;
  eaas::Minutes adv_end = 20;
  eaas::Minutes act_start = 0;
  eaas::Minutes act_end = 20;
  int affected = 0;
  int present = 4;
};

inline eaas::HistoryRecord record(const RecordSpec& spec) {
  return eaas::HistoryRecord(
      eaas::EnergyService(spec.service_id, spec.provider, spec.advertised,
                          spec.microcell,
                          eaas::TimeInterval(spec.adv_start, spec.adv_end)),
      spec.delivered, spec.microcell,
      eaas::TimeInterval(spec.act_start, spec.act_end), spec.status,
      spec.affected, spec.present);
}

inline eaas::EnergyService offer(const std::string& provider, double amount,
                                 eaas::Minutes start = 0,
                                 eaas::Minutes end = 20,
                                 const std::string& cell = "cell-A") {
  return eaas::EnergyService(provider + "-offer", provider, amount, cell,
                             eaas::TimeInterval(start, end));
}

// Random but always-valid history records drawn from a small value grid, for
// property tests and oracle sweeps.
inline eaas::HistoryRecord random_record(std::mt19937_64& rng,
                                         const std::string& provider,
                                         int index) {
  static const double amounts[] = {60, 100, 150, 240};
  static const double fractions[] = {0.0, 0.25, 0.5, 0.75};
  static const eaas::Minutes durations[] = {10, 15, 20, 30};
  static const eaas::Minutes delays[] = {-5, 0, 0, 3, 12};

  std::uniform_int_distribution<int> pick4(0, 3);
  std::uniform_int_distribution<int> pick5(0, 4);
  std::uniform_int_distribution<int> status_pick(0, 2);

  RecordSpec spec;
  spec.provider = provider;
  spec.service_id = provider + "-h" + std::to_string(index);
  spec.microcell = (pick4(rng) % 2 == 0) ? "cell-A" : "cell-B";
  spec.advertised = amounts[pick4(rng)];
  spec.adv_start = 10 * pick4(rng);
  spec.adv_end = spec.adv_start + durations[pick4(rng)];
  spec.act_start = spec.adv_start;
  spec.act_end = std::max(spec.adv_start, spec.adv_end + delays[pick5(rng)]);
  spec.present = 1 + pick4(rng) * 3;
  switch (status_pick(rng)) {
    case 0:
      spec.status = eaas::DeliveryStatus::completed;
      spec.delivered = spec.advertised;
      break;
    case 1:
      spec.status = eaas::DeliveryStatus::partial;
      spec.delivered = spec.advertised * fractions[1 + pick4(rng) % 3];
      break;
    default:
      spec.status = eaas::DeliveryStatus::canceled;
      spec.delivered = spec.advertised * fractions[pick4(rng)];
      spec.affected = std::uniform_int_distribution<int>(0, spec.present)(rng);
      break;
  }
  return record(spec);
}

inline std::vector<eaas::HistoryRecord> random_history(std::mt19937_64& rng,
                                                       int max_records,
                                                       const std::string&
                                                           provider = "p0") {
  std::uniform_int_distribution<int> size_pick(0, max_records);
  const int n = size_pick(rng);
  std::vector<eaas::HistoryRecord> history;
  history.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    history.push_back(random_record(rng, provider, i));
  }
  return history;
}

}  // namespace testsupport
