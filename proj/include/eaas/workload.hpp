#pragma once

// Synthetic workload generation and ground-truth delivery simulation.
//
// Each provider gets a latent reliability drawn from the environment's range;
// the trust engine never sees it and has to recover it from the generated
// history. Reliability jointly drives completion odds, the delivered
// fraction on failure, schedule overruns, and how long the provider tends to
// stay in a cell, so every trust attribute carries signal.
//
// Generation is deterministic per seed. Delivery simulation derives one RNG
// stream per provider from the seed, so a provider's outcome in a trial does
// not depend on which strategy selected it or in what order.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eaas/composition.hpp"
#include "eaas/core.hpp"
#include "eaas/demand.hpp"

namespace eaas {

enum class EnvironmentKind { trustworthy, neutral, untrustworthy };

inline constexpr std::array<EnvironmentKind, 3> kAllEnvironments = {
    EnvironmentKind::trustworthy, EnvironmentKind::neutral,
    EnvironmentKind::untrustworthy};

inline std::string_view to_string(EnvironmentKind kind) {
  switch (kind) {
    case EnvironmentKind::trustworthy: return "trustworthy";
    case EnvironmentKind::neutral: return "neutral";
    case EnvironmentKind::untrustworthy: return "untrustworthy";
  }
  throw std::invalid_argument("EnvironmentKind: unknown value");
}

inline EnvironmentKind environment_from_string(std::string_view name) {
  for (EnvironmentKind kind : kAllEnvironments) {
    if (name == to_string(kind)) return kind;
  }
  throw std::invalid_argument("unknown environment name '" +
                              std::string(name) + "'");
}

struct EnvironmentProfile {
  EnvironmentKind kind = EnvironmentKind::neutral;
  std::uint64_t seed = 0;
};

// Latent per-provider behavior that drives both history generation and
// delivery simulation.
struct GroundTruthBehavior {
  std::string provider_id;
  double reliability = 1;        // chance a service completes as advertised
  double delivery_fraction = 1;  // typical share delivered when it fails
  double delay_minutes = 0;      // typical schedule overrun on failures

  bool operator==(const GroundTruthBehavior&) const = default;
};

struct WorkloadParams {
  double amount_min_mah = 150;
  double amount_max_mah = 300;
  Minutes duration_min = 10;
  Minutes duration_max = 30;
  Minutes window_minutes = 120;
  double demand_min_mah = 500;
  double demand_max_mah = 2500;
  int consumers_min = 2;
  int consumers_max = 6;
  int present_min = 1;
  int present_max = 20;
  std::string microcell = "cell-A";
  // When scatter_history is on, history records fall in or out of the current
  // cell and time window independently, and records outside both contexts are
  // simulated with reliability reduced by locality_boost.
  bool scatter_history = false;
  double locality_boost = 0.3;

  void validate() const {
    if (!(amount_min_mah > 0) || amount_max_mah < amount_min_mah) {
      throw std::invalid_argument("WorkloadParams: bad amount range");
    }
    if (duration_min <= 0 || duration_max < duration_min ||
        window_minutes < duration_max) {
      throw std::invalid_argument("WorkloadParams: bad duration range");
    }
    if (!(demand_min_mah > 0) || demand_max_mah < demand_min_mah) {
      throw std::invalid_argument("WorkloadParams: bad demand range");
    }
    if (consumers_min < 1 || consumers_max < consumers_min) {
      throw std::invalid_argument("WorkloadParams: bad consumer range");
    }
    if (present_min < 1 || present_max < present_min) {
      throw std::invalid_argument("WorkloadParams: bad present range");
    }
    if (locality_boost < 0 || locality_boost > 1) {
      throw std::invalid_argument("WorkloadParams: boost outside [0,1]");
    }
  }
};

struct Scenario {
  std::vector<ProviderProfile> providers;
  std::vector<RequestRecord> requests;
  std::map<std::string, GroundTruthBehavior> behaviors;
  std::string microcell;
  TimeInterval window;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> parts) {
  std::uint64_t seed = splitmix64(base);
  for (std::uint64_t part : parts) seed = splitmix64(seed ^ part);
  return seed;
}

inline double reliability_floor(EnvironmentKind kind) {
  return kind == EnvironmentKind::trustworthy ? 0.8 : 0.0;
}

inline double reliability_ceil(EnvironmentKind kind) {
  return kind == EnvironmentKind::untrustworthy ? 0.2 : 1.0;
}

}  // namespace detail

/// Generates providers with behavior-driven histories, the consumer request
/// records backing the slot's demand, and the ground-truth behavior map.
/// Deterministic given the environment seed. Each provider draws from its
/// own seed-derived stream, so growing n_providers extends the provider set
/// without reshuffling the ones already there; count sweeps on one seed are
/// therefore paired, not independent.
inline Scenario generate_scenario(const EnvironmentProfile& env,
                                  int n_providers, int history_len,
                                  const WorkloadParams& params = {}) {
  if (n_providers < 1) {
    throw std::invalid_argument("generate_scenario: need at least 1 provider");
  }
  if (history_len < 1) {
    throw std::invalid_argument("generate_scenario: need at least 1 record");
  }
  params.validate();

  Scenario scenario;
  scenario.microcell = params.microcell;
  scenario.window = TimeInterval(0, params.window_minutes);

  // Reliabilities come from a seeded golden-ratio ladder: each value is
  // uniform over the environment's range, but a population's spread is even
  // instead of clumped, which keeps repeated small scenarios comparable.
  std::mt19937_64 ladder_rng(detail::derive_seed(env.seed, {0x72656c69u}));
  const double ladder_offset =
      std::uniform_real_distribution<double>(0.0, 1.0)(ladder_rng);
  constexpr double kGoldenFrac = 0.6180339887498949;

  for (int i = 0; i < n_providers; ++i) {
    std::mt19937_64 rng(detail::derive_seed(
        env.seed, {0x70726f76u, static_cast<std::uint64_t>(i)}));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> amount(params.amount_min_mah,
                                                  params.amount_max_mah);

    const std::string provider_id = "p" + std::to_string(i);
    double ladder = ladder_offset + kGoldenFrac * i;
    ladder -= std::floor(ladder);
    const double r = detail::reliability_floor(env.kind) +
                     (detail::reliability_ceil(env.kind) -
                      detail::reliability_floor(env.kind)) *
                         ladder;
    GroundTruthBehavior behavior{
        provider_id, r, std::clamp(r, 0.02, 0.98),
        (1.0 - r) * (1.0 - r) *
            std::uniform_real_distribution<double>(20.0, 60.0)(rng)};

    // Staying-duration pattern: flaky providers hop between cells, so their
    // past stays cluster near the bottom of the duration range while steady
    // ones camp for long stretches; everyone advertises from the full range.
    const double span =
        static_cast<double>(params.duration_max - params.duration_min);
    const Minutes pattern_min =
        params.duration_min +
        static_cast<Minutes>(
            std::llround(span * 0.75 * std::max(0.0, r - 0.6)));
    const Minutes pattern_max =
        params.duration_min +
        static_cast<Minutes>(
            std::llround(span * std::min(1.0, 2.5 * r * r)));

    std::vector<HistoryRecord> history;
    history.reserve(static_cast<std::size_t>(history_len));
    for (int j = 0; j < history_len; ++j) {
      const bool in_cell = !params.scatter_history || unit(rng) < 0.5;
      const bool in_window = !params.scatter_history || unit(rng) < 0.5;
      const double effective_r =
          (in_cell && in_window)
              ? r
              : std::max(0.0, r - params.locality_boost);

      const Minutes duration = std::uniform_int_distribution<Minutes>(
          pattern_min, pattern_max)(rng);
      Minutes start;
      if (in_window) {
        start = std::uniform_int_distribution<Minutes>(
            0, params.window_minutes - duration)(rng);
      } else {
        start = params.window_minutes + std::uniform_int_distribution<Minutes>(
                                            60, 240)(rng);
      }
      const TimeInterval advertised(start, start + duration);
      const std::string cell =
          in_cell ? params.microcell
                  : "elsewhere-" + std::to_string(j % 3);
      const double adv_amount = amount(rng);
      const int present = std::uniform_int_distribution<int>(
          params.present_min, params.present_max)(rng);

      EnergyService service(provider_id + "-h" + std::to_string(j),
                            provider_id, adv_amount, cell, advertised);
      if (unit(rng) < effective_r) {
        history.emplace_back(std::move(service), adv_amount, cell, advertised,
                             DeliveryStatus::completed, 0, present);
      } else {
        const double fraction = std::clamp(
            effective_r +
                std::uniform_real_distribution<double>(-0.1, 0.1)(rng),
            0.02, 0.98);
        const bool canceled = unit(rng) < 0.5;
        const Minutes overrun = std::llround(
            behavior.delay_minutes *
            std::uniform_real_distribution<double>(0.5, 1.5)(rng));
        const TimeInterval actual(advertised.start_min,
                                  advertised.end_min + overrun);
        const int affected =
            canceled ? std::uniform_int_distribution<int>(0, present)(rng) : 0;
        history.emplace_back(
            std::move(service), fraction * adv_amount, cell, actual,
            canceled ? DeliveryStatus::canceled : DeliveryStatus::partial,
            affected, present);
      }
    }

    // Current advertisement, always inside the demand window.
    const Minutes offer_duration = std::uniform_int_distribution<Minutes>(
        params.duration_min, params.duration_max)(rng);
    const Minutes offer_start = std::uniform_int_distribution<Minutes>(
        0, params.window_minutes - offer_duration)(rng);
    EnergyService offer(provider_id + "-offer", provider_id, amount(rng),
                        params.microcell,
                        TimeInterval(offer_start, offer_start + offer_duration));

    scenario.providers.emplace_back(provider_id, std::move(history),
                                    std::move(offer));
    scenario.behaviors.emplace(provider_id, std::move(behavior));
  }

  // Consumer request records constructed so the default predictor aggregates
  // to the drawn demand target: each consumer's overlapping records share one
  // amount, and the per-consumer amounts sum to the target. The stream is
  // independent of the provider count.
  std::mt19937_64 demand_rng(detail::derive_seed(env.seed, {0x64656d64u}));
  const double demand_target = std::uniform_real_distribution<double>(
      params.demand_min_mah, params.demand_max_mah)(demand_rng);
  const int consumers = std::uniform_int_distribution<int>(
      params.consumers_min, params.consumers_max)(demand_rng);
  const double share = demand_target / consumers;
  for (int c = 0; c < consumers; ++c) {
    const std::string consumer_id = "c" + std::to_string(c);
    for (int k = 0; k < 3; ++k) {
      const Minutes len = std::uniform_int_distribution<Minutes>(
          params.duration_min, params.duration_max)(demand_rng);
      const Minutes start = std::uniform_int_distribution<Minutes>(
          0, params.window_minutes - len)(demand_rng);
      scenario.requests.emplace_back(consumer_id, share,
                                     TimeInterval(start, start + len),
                                     params.microcell);
    }
  }
  return scenario;
}

/// Plays out a composition against ground truth: per selected service, the
/// provider either completes (full amount), cancels (nothing), or delivers
/// their typical fraction. Each provider's draw is keyed by provider id, so
/// outcomes are stable across strategies within a trial.
inline std::vector<DeliveredEnergy> simulate_delivery(
    const CompositionResult& result,
    const std::map<std::string, GroundTruthBehavior>& behaviors,
    std::uint64_t seed) {
  std::vector<DeliveredEnergy> delivered;
  delivered.reserve(result.selected.size());
  for (const auto& scored : result.selected) {
    const auto it = behaviors.find(scored.service.provider_id);
    if (it == behaviors.end()) {
      throw std::runtime_error("simulate_delivery: no behavior for provider " +
                               scored.service.provider_id);
    }
    const GroundTruthBehavior& behavior = it->second;
    std::mt19937_64 rng(detail::derive_seed(
        seed, {detail::fnv1a64(scored.service.provider_id)}));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double amount = 0;
    if (unit(rng) < behavior.reliability) {
      amount = scored.service.amount_mah;
    } else if (unit(rng) < 0.5) {
      amount = 0;  // canceled outright
    } else {
      amount = behavior.delivery_fraction * scored.service.amount_mah;
    }
    delivered.push_back(DeliveredEnergy{scored.service, amount});
  }
  return delivered;
}

}  // namespace eaas
