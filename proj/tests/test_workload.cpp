#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "eaas/demand.hpp"
#include "eaas/trust.hpp"
#include "eaas/workload.hpp"
#include "test_support.hpp"

using namespace eaas;
using Catch::Matchers::WithinAbs;

namespace {

double mean_provider_trust(const Scenario& scenario) {
  double total = 0;
  for (const auto& provider : scenario.providers) {
    total += provider_trust(provider.history, provider.offered_service,
                            TrustWeights::equal(),
                            ExpectationMode::advertised(), 2)
                 .score;
  }
  return total / static_cast<double>(scenario.providers.size());
}

double mean_reliability(const Scenario& scenario) {
  double total = 0;
  for (const auto& [id, behavior] : scenario.behaviors) {
    total += behavior.reliability;
  }
  return total / static_cast<double>(scenario.behaviors.size());
}

}  // namespace

TEST_CASE("generation is deterministic per seed") {
  const EnvironmentProfile env{EnvironmentKind::neutral, 1234};
  const auto a = generate_scenario(env, 8, 12);
  const auto b = generate_scenario(env, 8, 12);
  CHECK(a.providers == b.providers);
  CHECK(a.requests == b.requests);
  CHECK(a.behaviors == b.behaviors);

  const auto c =
      generate_scenario(EnvironmentProfile{EnvironmentKind::neutral, 1235}, 8, 12);
  CHECK(a.providers != c.providers);
}

TEST_CASE("generated values respect the configured ranges") {
  const WorkloadParams params;
  const auto scenario = generate_scenario(
      EnvironmentProfile{EnvironmentKind::neutral, 99}, 40, 15, params);

  REQUIRE(scenario.providers.size() == 40);
  for (const auto& provider : scenario.providers) {
    const auto& offer = provider.offered_service;
    CHECK(offer.amount_mah >= params.amount_min_mah);
    CHECK(offer.amount_mah <= params.amount_max_mah);
    CHECK(offer.interval.duration() >= params.duration_min);
    CHECK(offer.interval.duration() <= params.duration_max);
    CHECK(scenario.window.contains(offer.interval));
    REQUIRE(provider.history.size() == 15);
    for (const auto& record : provider.history) {
      CHECK(record.service.amount_mah >= params.amount_min_mah);
      CHECK(record.service.amount_mah <= params.amount_max_mah);
      CHECK(record.service.interval.duration() >= params.duration_min);
      CHECK(record.service.interval.duration() <= params.duration_max);
      CHECK(record.consumers_present >= params.present_min);
      CHECK(record.consumers_present <= params.present_max);
      CHECK(scenario.window.contains(record.service.interval));
      CHECK(record.microcell == params.microcell);
    }
  }

  const auto demand =
      aggregate_demand(scenario.requests, scenario.window, scenario.microcell);
  CHECK(demand.amount_mah >= params.demand_min_mah - 1e-6);
  CHECK(demand.amount_mah <= params.demand_max_mah + 1e-6);
}

TEST_CASE("scattered histories roam cells and hours") {
  WorkloadParams params;
  params.scatter_history = true;
  const auto scenario = generate_scenario(
      EnvironmentProfile{EnvironmentKind::neutral, 7}, 20, 20, params);

  int out_of_cell = 0, out_of_window = 0;
  for (const auto& provider : scenario.providers) {
    for (const auto& record : provider.history) {
      if (record.microcell != params.microcell) ++out_of_cell;
      if (!scenario.window.contains(record.service.interval)) ++out_of_window;
    }
  }
  CHECK(out_of_cell > 100);  // roughly half of 400
  CHECK(out_of_window > 100);
}

TEST_CASE("generation rejects invalid arguments") {
  const EnvironmentProfile env{EnvironmentKind::neutral, 1};
  CHECK_THROWS_AS(generate_scenario(env, 0, 10), std::invalid_argument);
  CHECK_THROWS_AS(generate_scenario(env, 5, 0), std::invalid_argument);
  WorkloadParams bad;
  bad.amount_min_mah = 300;
  bad.amount_max_mah = 150;
  CHECK_THROWS_AS(generate_scenario(env, 5, 5, bad), std::invalid_argument);
  WorkloadParams bad_boost;
  bad_boost.locality_boost = 1.5;
  CHECK_THROWS_AS(generate_scenario(env, 5, 5, bad_boost),
                  std::invalid_argument);
}

TEST_CASE("environments separate by latent reliability") {
  for (std::uint64_t seed : {11u, 22u, 33u, 44u, 55u}) {
    const auto trustworthy = generate_scenario(
        EnvironmentProfile{EnvironmentKind::trustworthy, seed}, 50, 5);
    const auto neutral = generate_scenario(
        EnvironmentProfile{EnvironmentKind::neutral, seed}, 50, 5);
    const auto untrustworthy = generate_scenario(
        EnvironmentProfile{EnvironmentKind::untrustworthy, seed}, 50, 5);

    const double rt = mean_reliability(trustworthy);
    const double rn = mean_reliability(neutral);
    const double ru = mean_reliability(untrustworthy);
    REQUIRE(rt > rn);
    REQUIRE(rn > ru);
    for (const auto& [id, b] : trustworthy.behaviors) {
      REQUIRE(b.reliability >= 0.8);
      REQUIRE(b.reliability <= 1.0);
    }
    for (const auto& [id, b] : untrustworthy.behaviors) {
      REQUIRE(b.reliability >= 0.0);
      REQUIRE(b.reliability <= 0.2);
    }
  }
}

TEST_CASE("assessed trust tracks the environment") {
  const auto trustworthy = generate_scenario(
      EnvironmentProfile{EnvironmentKind::trustworthy, 2024}, 50, 50);
  CHECK(mean_provider_trust(trustworthy) >= 0.8);

  // the timeliness/impact/duration floors keep the score above the raw
  // reliability, but the environment still reads as untrustworthy
  const auto untrustworthy = generate_scenario(
      EnvironmentProfile{EnvironmentKind::untrustworthy, 2024}, 50, 50);
  CHECK(mean_provider_trust(untrustworthy) <= 0.35);
  CHECK(mean_provider_trust(untrustworthy) >= mean_reliability(untrustworthy));
}

TEST_CASE("delivery simulation follows the ground truth") {
  CompositionResult result;
  std::map<std::string, GroundTruthBehavior> behaviors;
  for (int i = 0; i < 20; ++i) {
    const std::string id = "p" + std::to_string(i);
    EnergyService service = testsupport::offer(id, 200);
    service.trust = 1.0;
    result.selected.push_back(
        ScoredService{service, 1.0, 200, TrustAttributes{}, false});
    behaviors.emplace(id, GroundTruthBehavior{id, 1.0, 0.5, 0});
  }

  const auto delivered = simulate_delivery(result, behaviors, 9);
  REQUIRE(delivered.size() == 20);
  for (const auto& d : delivered) CHECK(d.delivered_mah == 200.0);

  // dead providers deliver nothing
  for (auto& [id, b] : behaviors) {
    b.reliability = 0.0;
    b.delivery_fraction = 0.0;
  }
  for (const auto& d : simulate_delivery(result, behaviors, 9)) {
    CHECK(d.delivered_mah == 0.0);
  }

  CompositionResult unknown;
  EnergyService stranger = testsupport::offer("ghost", 100);
  unknown.selected.push_back(
      ScoredService{stranger, 1.0, 100, TrustAttributes{}, false});
  CHECK_THROWS_AS(simulate_delivery(unknown, behaviors, 9),
                  std::runtime_error);
}

TEST_CASE("delivery outcomes are stable per provider within a seed") {
  std::map<std::string, GroundTruthBehavior> behaviors;
  CompositionResult forward, backward;
  for (int i = 0; i < 50; ++i) {
    const std::string id = "p" + std::to_string(i);
    EnergyService service = testsupport::offer(id, 200);
    const ScoredService scored{service, 0.5, 100, TrustAttributes{}, false};
    forward.selected.push_back(scored);
    behaviors.emplace(id, GroundTruthBehavior{id, 0.5, 0.5, 0});
  }
  backward = forward;
  std::reverse(backward.selected.begin(), backward.selected.end());

  const auto a = simulate_delivery(forward, behaviors, 321);
  const auto b = simulate_delivery(backward, behaviors, 321);
  for (const auto& da : a) {
    const auto match = std::find_if(b.begin(), b.end(), [&](const auto& db) {
      return db.service.provider_id == da.service.provider_id;
    });
    REQUIRE(match != b.end());
    CHECK(match->delivered_mah == da.delivered_mah);
  }
}

TEST_CASE("monte carlo completion rate matches reliability") {
  CompositionResult result;
  std::map<std::string, GroundTruthBehavior> behaviors;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const std::string id = "p" + std::to_string(i);
    EnergyService service = testsupport::offer(id, 100);
    result.selected.push_back(
        ScoredService{service, 0.5, 50, TrustAttributes{}, false});
    behaviors.emplace(id, GroundTruthBehavior{id, 0.5, 0.4, 0});
  }
  const auto delivered = simulate_delivery(result, behaviors, 77);
  int completions = 0;
  for (const auto& d : delivered) {
    if (d.delivered_mah == 100.0) ++completions;
  }
  const double rate = static_cast<double>(completions) / n;
  CHECK_THAT(rate, WithinAbs(0.5, 0.02));
}
