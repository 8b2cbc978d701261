#pragma once

// Demand-side model: aggregating predicted consumer energy requests into a
// per-slot demand figure, and scoring the quality of experience (QoE) a
// composition delivers against that demand.

#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eaas/core.hpp"

namespace eaas {

// One historical energy request by a consumer in a microcell.
struct RequestRecord {
  std::string consumer_id;
  double amount_mah = 0;
  TimeInterval slot;
  std::string microcell;

  RequestRecord(std::string consumer_id_, double amount_mah_,
                TimeInterval slot_, std::string microcell_)
      : consumer_id(std::move(consumer_id_)),
        amount_mah(amount_mah_),
        slot(slot_),
        microcell(std::move(microcell_)) {
    if (!(amount_mah > 0)) {
      throw std::invalid_argument("RequestRecord: amount must be positive");
    }
  }

  bool operator==(const RequestRecord&) const = default;
};

// Predicts one consumer's energy request for a slot from their past records.
using DemandPredictor =
    std::function<double(std::span<const RequestRecord>, const TimeInterval&)>;

// Default predictor: the consumer's mean request size across records whose
// slots overlap the queried one; 0 when none overlap.
inline double mean_overlapping_request(std::span<const RequestRecord> records,
                                       const TimeInterval& slot) {
  double total = 0;
  std::size_t n = 0;
  for (const auto& record : records) {
    if (record.slot.overlaps(slot)) {
      total += record.amount_mah;
      ++n;
    }
  }
  if (n == 0) return 0.0;
  return total / static_cast<double>(n);
}

// Sums the per-consumer predictions over everyone seen in the microcell,
// producing the slot's aggregated demand. Errors when nothing overlaps the
// slot, since demand must be positive.
inline EnergyDemand aggregate_demand(std::span<const RequestRecord> requests,
                                     const TimeInterval& slot,
                                     const std::string& microcell,
                                     const DemandPredictor& predictor = {}) {
  if (slot.duration() <= 0) {
    throw std::invalid_argument("aggregate_demand: degenerate slot");
  }
  std::map<std::string, std::vector<RequestRecord>> by_consumer;
  for (const auto& request : requests) {
    if (request.microcell == microcell) {
      by_consumer[request.consumer_id].push_back(request);
    }
  }
  const DemandPredictor& predict =
      predictor ? predictor : DemandPredictor(mean_overlapping_request);
  double total = 0;
  for (const auto& [consumer, records] : by_consumer) {
    total += predict(records, slot);
  }
  if (!(total > 0)) {
    throw std::runtime_error(
        "aggregate_demand: no consumer history overlaps the slot");
  }
  return EnergyDemand(total, slot, microcell);
}

// A service paired with the energy it actually delivered.
struct DeliveredEnergy {
  EnergyService service;
  double delivered_mah = 0;
};

inline double delivered_ratio(std::span<const DeliveredEnergy> allocated,
                              const EnergyDemand& demand) {
  double total = 0;
  for (const auto& entry : allocated) total += entry.delivered_mah;
  return total / demand.amount_mah;
}

/// Consumer satisfaction for a slot: delivered energy over demand, saturating
/// at 1 since over-provisioning cannot please consumers beyond full demand.
/// Use delivered_ratio() for the unclamped diagnostic value.
inline double qoe(std::span<const DeliveredEnergy> allocated,
                  const EnergyDemand& demand) {
  return std::min(1.0, delivered_ratio(allocated, demand));
}

/// The composition objective: trust-discounted selected energy over demand,
/// clamped to 1. Every selected service must carry a trust score.
inline double expected_qoe(std::span<const EnergyService> selected,
                           const EnergyDemand& demand) {
  double total = 0;
  for (const auto& service : selected) {
    if (!service.trust) {
      throw std::invalid_argument("expected_qoe: service lacks a trust score");
    }
    total += service.amount_mah * *service.trust;
  }
  return std::min(1.0, total / demand.amount_mah);
}

}  // namespace eaas
