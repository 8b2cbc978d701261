#pragma once

// Core domain types for crowdsourced energy-service sharing in microcells:
// advertised services, providers with provisioning history, and per-slot
// energy demand. All types are immutable value objects once constructed and
// validate their invariants in the constructor, so downstream code (and
// anything read back from CSV) can rely on them without re-checking.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eaas {

// Timestamps are integer minutes since the start of the simulated day.
using Minutes = std::int64_t;

struct TimeInterval {
  Minutes start_min = 0;
  Minutes end_min = 0;

  TimeInterval() = default;
  TimeInterval(Minutes start, Minutes end) : start_min(start), end_min(end) {
    if (end_min < start_min) {
      throw std::invalid_argument("TimeInterval: end before start");
    }
  }

  Minutes duration() const { return end_min - start_min; }

  bool contains(const TimeInterval& other) const {
    return start_min <= other.start_min && other.end_min <= end_min;
  }

  bool overlaps(const TimeInterval& other) const {
    return std::max(start_min, other.start_min) <
           std::min(end_min, other.end_min);
  }

  bool operator==(const TimeInterval&) const = default;
};

// An advertised offer of wireless energy. `trust` stays empty until the
// trust engine assesses the provider against a context model.
struct EnergyService {
  std::string service_id;
  std::string provider_id;
  double amount_mah = 0;
  std::string location;  // microcell the service is offered in
  TimeInterval interval;
  std::optional<double> trust;

  EnergyService(std::string service_id_, std::string provider_id_,
                double amount_mah_, std::string location_,
                TimeInterval interval_,
                std::optional<double> trust_ = std::nullopt)
      : service_id(std::move(service_id_)),
        provider_id(std::move(provider_id_)),
        amount_mah(amount_mah_),
        location(std::move(location_)),
        interval(interval_),
        trust(trust_) {
    if (!(amount_mah > 0)) {
      throw std::invalid_argument("EnergyService: amount must be positive");
    }
    if (trust && (*trust < 0.0 || *trust > 1.0)) {
      throw std::invalid_argument("EnergyService: trust outside [0,1]");
    }
  }

  bool operator==(const EnergyService&) const = default;
};

enum class DeliveryStatus { completed, partial, canceled };

inline std::string_view to_string(DeliveryStatus status) {
  switch (status) {
    case DeliveryStatus::completed: return "completed";
    case DeliveryStatus::partial: return "partial";
    case DeliveryStatus::canceled: return "canceled";
  }
  throw std::invalid_argument("DeliveryStatus: unknown value");
}

inline DeliveryStatus delivery_status_from_string(std::string_view text) {
  if (text == "completed") return DeliveryStatus::completed;
  if (text == "partial") return DeliveryStatus::partial;
  if (text == "canceled") return DeliveryStatus::canceled;
  throw std::invalid_argument("DeliveryStatus: unknown name '" +
                              std::string(text) + "'");
}

// One past energy transfer: the service as advertised plus what actually
// happened. Status consistency is enforced here, not trusted from input
// files:
//   completed  <=> delivered == advertised
//   partial     => 0 < delivered < advertised
//   canceled    => 0 <= delivered < advertised, and only canceled records
//                  may report affected consumers.
struct HistoryRecord {
  EnergyService service;
  double delivered_mah = 0;
  std::string microcell;  // where the sharing occurred
  TimeInterval actual_interval;
  DeliveryStatus status = DeliveryStatus::completed;
  int affected_consumers = 0;  // consumers receiving from it when canceled
  int consumers_present = 1;   // all consumers around during the service

  HistoryRecord(EnergyService service_, double delivered_mah_,
                std::string microcell_, TimeInterval actual_interval_,
                DeliveryStatus status_, int affected_consumers_,
                int consumers_present_)
      : service(std::move(service_)),
        delivered_mah(delivered_mah_),
        microcell(std::move(microcell_)),
        actual_interval(actual_interval_),
        status(status_),
        affected_consumers(affected_consumers_),
        consumers_present(consumers_present_) {
    if (delivered_mah < 0 || delivered_mah > service.amount_mah) {
      throw std::invalid_argument(
          "HistoryRecord: delivered energy outside [0, advertised]");
    }
    const bool full = delivered_mah == service.amount_mah;
    if ((status == DeliveryStatus::completed) != full) {
      throw std::invalid_argument(
          "HistoryRecord: completed status inconsistent with delivered amount");
    }
    if (status == DeliveryStatus::partial && delivered_mah <= 0) {
      throw std::invalid_argument(
          "HistoryRecord: partial delivery must be positive");
    }
    if (consumers_present < 1) {
      throw std::invalid_argument(
          "HistoryRecord: at least one consumer must be present");
    }
    if (affected_consumers < 0 || affected_consumers > consumers_present) {
      throw std::invalid_argument(
          "HistoryRecord: affected consumers outside [0, present]");
    }
    if (status != DeliveryStatus::canceled && affected_consumers != 0) {
      throw std::invalid_argument(
          "HistoryRecord: only canceled services affect consumers");
    }
  }

  bool operator==(const HistoryRecord&) const = default;
};

// A provider and everything known about them: past provisioning records plus
// the service they currently advertise.
struct ProviderProfile {
  std::string provider_id;
  std::vector<HistoryRecord> history;
  EnergyService offered_service;

  ProviderProfile(std::string provider_id_, std::vector<HistoryRecord> history_,
                  EnergyService offered_service_)
      : provider_id(std::move(provider_id_)),
        history(std::move(history_)),
        offered_service(std::move(offered_service_)) {
    if (offered_service.provider_id != provider_id) {
      throw std::invalid_argument(
          "ProviderProfile: offered service belongs to another provider");
    }
  }

  bool operator==(const ProviderProfile&) const = default;
};

// Aggregated consumer energy demand for one time slot in one microcell.
struct EnergyDemand {
  double amount_mah = 0;
  TimeInterval slot;
  std::string microcell;

  EnergyDemand(double amount_mah_, TimeInterval slot_, std::string microcell_)
      : amount_mah(amount_mah_),
        slot(slot_),
        microcell(std::move(microcell_)) {
    if (!(amount_mah > 0)) {
      throw std::invalid_argument("EnergyDemand: amount must be positive");
    }
  }

  bool operator==(const EnergyDemand&) const = default;
};

}  // namespace eaas
