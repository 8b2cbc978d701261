#pragma once

// Composing energy services against a demand slot. Candidates are scored
// once against the context model, then one of four allocation strategies
// selects services:
//
//   greedy          — first come first served by advertised start time
//   priority        — highest trust first, whole services
//   knapsack        — highest trust first with the boundary service used
//                     fractionally, so the selection meets demand exactly and
//                     maximizes the minimum participating trust
//   trust_heuristic — highest trust first, accumulating trust-discounted
//                     amounts; the raw/discounted gap over-provisions backup
//                     energy against cancellations
//
// All tie-breaks are total, so identical inputs always compose identically.

#include <algorithm>
#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eaas/context.hpp"
#include "eaas/core.hpp"
#include "eaas/demand.hpp"
#include "eaas/trust.hpp"

namespace eaas {

enum class Strategy { greedy, priority, knapsack, trust_heuristic };

inline constexpr std::array<Strategy, 4> kAllStrategies = {
    Strategy::greedy, Strategy::priority, Strategy::knapsack,
    Strategy::trust_heuristic};

inline std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::greedy: return "greedy";
    case Strategy::priority: return "priority";
    case Strategy::knapsack: return "knapsack";
    case Strategy::trust_heuristic: return "trust_heuristic";
  }
  throw std::invalid_argument("Strategy: unknown value");
}

inline Strategy strategy_from_string(std::string_view name) {
  for (Strategy strategy : kAllStrategies) {
    if (name == to_string(strategy)) return strategy;
  }
  throw std::invalid_argument("unknown strategy name '" + std::string(name) +
                              "'");
}

// A candidate service with its provider's assessed trust. The discounted
// amount is the advertised amount scaled by trust.
struct ScoredService {
  EnergyService service;
  double trust = 0;
  double discounted_amount_mah = 0;
  TrustAttributes attributes;
  bool fallback_used = false;

  bool operator==(const ScoredService&) const = default;
};

// Candidates split by the context model's trust threshold. The low-trust
// pool is kept for inspection and for best-effort fallback.
struct CandidatePool {
  std::vector<ScoredService> trustworthy;
  std::vector<ScoredService> low_trust;
};

struct CompositionResult {
  std::vector<ScoredService> selected;
  double expected_qoe = 0;
  std::optional<double> realized_qoe;  // filled after delivery simulation
  double cost = 0;                     // filled by incentive accounting
  Strategy strategy = Strategy::greedy;

  bool operator==(const CompositionResult&) const = default;
};

// Scores every provider whose advertised interval lies within the demand
// slot. History is filtered per the context model, customized expectations
// are resolved per provider, and the result lands in the trustworthy or
// low-trust pool depending on the threshold.
inline CandidatePool score_candidates(std::span<const ProviderProfile> providers,
                                      const EnergyDemand& demand,
                                      const ContextModel& model) {
  model.validate();
  CandidatePool pool;
  for (const auto& provider : providers) {
    if (!demand.slot.contains(provider.offered_service.interval)) continue;
    const FilteredHistory filtered = filter_history(provider, model);
    const ExpectationMode expectation =
        resolve_expectation(filtered.records, model.expectation);
    const ProviderTrust assessed =
        provider_trust(filtered.records, provider.offered_service,
                       model.weights, expectation, model.min_records_duration);
    EnergyService service = provider.offered_service;
    service.trust = assessed.score;
    ScoredService scored{std::move(service), assessed.score,
                         provider.offered_service.amount_mah * assessed.score,
                         assessed.attributes, filtered.fallback_used};
    if (assessed.score < model.trust_threshold) {
      pool.low_trust.push_back(std::move(scored));
    } else {
      pool.trustworthy.push_back(std::move(scored));
    }
  }
  return pool;
}

namespace detail {

// trust desc, then larger amount, then provider id; used by every
// trust-ordered strategy.
inline bool trust_order(const ScoredService& a, const ScoredService& b) {
  if (a.trust != b.trust) return a.trust > b.trust;
  if (a.service.amount_mah != b.service.amount_mah) {
    return a.service.amount_mah > b.service.amount_mah;
  }
  if (a.service.provider_id != b.service.provider_id) {
    return a.service.provider_id < b.service.provider_id;
  }
  return a.service.service_id < b.service.service_id;
}

// start time asc, then provider id.
inline bool arrival_order(const ScoredService& a, const ScoredService& b) {
  if (a.service.interval.start_min != b.service.interval.start_min) {
    return a.service.interval.start_min < b.service.interval.start_min;
  }
  if (a.service.provider_id != b.service.provider_id) {
    return a.service.provider_id < b.service.provider_id;
  }
  return a.service.service_id < b.service.service_id;
}

inline void finalize(CompositionResult& result, const EnergyDemand& demand) {
  std::vector<EnergyService> services;
  services.reserve(result.selected.size());
  for (const auto& scored : result.selected) services.push_back(scored.service);
  result.expected_qoe = expected_qoe(services, demand);
}

}  // namespace detail

/// First come first served: services in advertised start order, raw amounts
/// accumulated until demand is covered or candidates run out.
inline CompositionResult allocate_greedy(std::span<const ScoredService> candidates,
                                         const EnergyDemand& demand) {
  std::vector<ScoredService> order(candidates.begin(), candidates.end());
  std::sort(order.begin(), order.end(), detail::arrival_order);
  CompositionResult result;
  result.strategy = Strategy::greedy;
  double total = 0;
  for (auto& scored : order) {
    if (total >= demand.amount_mah) break;
    total += scored.service.amount_mah;
    result.selected.push_back(std::move(scored));
  }
  detail::finalize(result, demand);
  return result;
}

/// Highest trust first, whole services, raw amounts accumulated until demand
/// is covered or candidates run out.
inline CompositionResult allocate_priority(std::span<const ScoredService> candidates,
                                           const EnergyDemand& demand) {
  std::vector<ScoredService> order(candidates.begin(), candidates.end());
  std::sort(order.begin(), order.end(), detail::trust_order);
  CompositionResult result;
  result.strategy = Strategy::priority;
  double total = 0;
  for (auto& scored : order) {
    if (total >= demand.amount_mah) break;
    total += scored.service.amount_mah;
    result.selected.push_back(std::move(scored));
  }
  detail::finalize(result, demand);
  return result;
}

/// Fractional knapsack with capacity equal to the demand: highest trust
/// first, the boundary service trimmed to close the gap exactly. The
/// trust-ordered prefix maximizes the minimum trust among participants for
/// the given capacity.
inline CompositionResult allocate_knapsack(std::span<const ScoredService> candidates,
                                           const EnergyDemand& demand) {
  std::vector<ScoredService> order(candidates.begin(), candidates.end());
  std::sort(order.begin(), order.end(), detail::trust_order);
  CompositionResult result;
  result.strategy = Strategy::knapsack;
  double remaining = demand.amount_mah;
  for (auto& scored : order) {
    if (remaining <= 0) break;
    const double take = std::min(scored.service.amount_mah, remaining);
    remaining -= take;
    if (take == scored.service.amount_mah) {
      result.selected.push_back(std::move(scored));
      continue;
    }
    EnergyService part = scored.service;
    part.amount_mah = take;
    result.selected.push_back(ScoredService{std::move(part), scored.trust,
                                            take * scored.trust,
                                            scored.attributes,
                                            scored.fallback_used});
  }
  detail::finalize(result, demand);
  return result;
}

/// Over-provisioning heuristic: highest trust first, but accumulation runs
/// on trust-discounted amounts while selected services keep their raw
/// amounts. The raw energy beyond demand is built-in backup against
/// cancellations; like the others, it degrades to best effort when supply
/// runs out.
inline CompositionResult allocate_trust_heuristic(
    std::span<const ScoredService> candidates, const EnergyDemand& demand) {
  std::vector<ScoredService> order(candidates.begin(), candidates.end());
  std::sort(order.begin(), order.end(), detail::trust_order);
  CompositionResult result;
  result.strategy = Strategy::trust_heuristic;
  double discounted_total = 0;
  for (auto& scored : order) {
    if (discounted_total >= demand.amount_mah) break;
    discounted_total += scored.discounted_amount_mah;
    result.selected.push_back(std::move(scored));
  }
  detail::finalize(result, demand);
  return result;
}

inline CompositionResult allocate(Strategy strategy,
                                  std::span<const ScoredService> candidates,
                                  const EnergyDemand& demand) {
  switch (strategy) {
    case Strategy::greedy: return allocate_greedy(candidates, demand);
    case Strategy::priority: return allocate_priority(candidates, demand);
    case Strategy::knapsack: return allocate_knapsack(candidates, demand);
    case Strategy::trust_heuristic:
      return allocate_trust_heuristic(candidates, demand);
  }
  throw std::invalid_argument("allocate: unknown strategy");
}

struct ComposeOptions {
  // Admit the low-trust pool when the trustworthy pool alone cannot cover
  // demand (best effort).
  bool admit_low_trust_when_short = false;
};

/// Full pipeline for one demand slot: score every provider against the
/// context model, allocate with the chosen strategy, report the expected
/// QoE of the selection.
inline CompositionResult compose(std::span<const ProviderProfile> providers,
                                 const EnergyDemand& demand,
                                 const ContextModel& model, Strategy strategy,
                                 const ComposeOptions& options = {}) {
  CandidatePool pool = score_candidates(providers, demand, model);
  std::span<const ScoredService> candidates = pool.trustworthy;
  std::vector<ScoredService> merged;
  if (options.admit_low_trust_when_short && !pool.low_trust.empty()) {
    double trustworthy_supply = 0;
    for (const auto& scored : pool.trustworthy) {
      trustworthy_supply += scored.service.amount_mah;
    }
    if (trustworthy_supply < demand.amount_mah) {
      merged = pool.trustworthy;
      merged.insert(merged.end(), pool.low_trust.begin(), pool.low_trust.end());
      candidates = merged;
    }
  }
  return allocate(strategy, candidates, demand);
}

inline CompositionResult compose(std::span<const ProviderProfile> providers,
                                 const EnergyDemand& demand,
                                 const ContextModel& model,
                                 std::string_view strategy_name,
                                 const ComposeOptions& options = {}) {
  return compose(providers, demand, model, strategy_from_string(strategy_name),
                 options);
}

/// Credits owed to providers: price per mAh times the raw energy selected.
inline double incentive_cost(const CompositionResult& result,
                             double price_per_unit) {
  if (price_per_unit < 0) {
    throw std::invalid_argument("incentive_cost: negative price");
  }
  double total = 0;
  for (const auto& scored : result.selected) {
    total += scored.service.amount_mah;
  }
  return price_per_unit * total;
}

}  // namespace eaas
