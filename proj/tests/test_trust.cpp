#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "eaas/expectation.hpp"
#include "eaas/trust.hpp"
#include "test_support.hpp"

using namespace eaas;
using Catch::Matchers::WithinAbs;
using testsupport::RecordSpec;
using testsupport::record;

namespace {

std::vector<HistoryRecord> completed_history(int n, double advertised = 100) {
  std::vector<HistoryRecord> history;
  for (int i = 0; i < n; ++i) {
    history.push_back(record({.service_id = "s" + std::to_string(i),
                              .advertised = advertised,
                              .delivered = advertised}));
  }
  return history;
}

}  // namespace

TEST_CASE("success rate is the completed share") {
  std::vector<HistoryRecord> history = completed_history(3);
  history.push_back(record({.delivered = 40, .status = DeliveryStatus::partial}));
  CHECK(success_rate(history) == 0.75);

  CHECK(success_rate(completed_history(5)) == 1.0);
  CHECK(success_rate({}) == 0.0);
}

TEST_CASE("delivery size against the advertised amounts") {
  const std::vector<HistoryRecord> history = {
      record({.delivered = 50, .status = DeliveryStatus::partial}),
      record({.delivered = 84, .status = DeliveryStatus::partial}),
  };
  CHECK_THAT(delivery_size(history, ExpectationMode::advertised()),
             WithinAbs(0.67, 1e-12));

  CHECK(delivery_size(completed_history(1), ExpectationMode::advertised()) ==
        1.0);
  CHECK(delivery_size({}, ExpectationMode::advertised()) == 0.0);
}

TEST_CASE("delivery size against a capped amount") {
  const std::vector<HistoryRecord> history = {
      record({.delivered = 50, .status = DeliveryStatus::partial}),
      record({.delivered = 84, .status = DeliveryStatus::partial}),
  };
  // both deliveries reach the 50 mAh cap, so the score saturates
  CHECK(delivery_size(history, ExpectationMode::capped(50)) == 1.0);
  // cap above both deliveries: mean of the per-record ratios
  CHECK_THAT(delivery_size(history, ExpectationMode::capped(100)),
             WithinAbs(0.67, 1e-12));
  CHECK(delivery_size({}, ExpectationMode::capped(50)) == 0.0);

  const ExpectationMode invalid{ExpectationKind::capped, 0.0,
                                AmountStatistic::mean};
  CHECK_THROWS_AS(delivery_size(history, invalid), std::invalid_argument);
  CHECK_THROWS_AS(ExpectationMode::capped(0), std::invalid_argument);
  CHECK_THROWS_AS(
      delivery_size(history, ExpectationMode::customized(AmountStatistic::mean)),
      std::invalid_argument);
}

TEST_CASE("timeliness scores schedule overruns") {
  // all actual ends at or before the advertised ends
  std::vector<HistoryRecord> on_time = {
      record({.act_end = 20}),
      record({.delivered = 50, .status = DeliveryStatus::partial, .act_end = 15}),
  };
  CHECK(timeliness(on_time) == 1.0);

  // overruns of 4 and 0 minutes: mean 2, score 1/2
  std::vector<HistoryRecord> late = {
      record({.delivered = 50, .status = DeliveryStatus::partial, .act_end = 24}),
      record({.act_end = 20}),
  };
  CHECK(timeliness(late) == 0.5);

  // overruns of 1 and 0 minutes: mean 0.5, reciprocal clamps to 1
  std::vector<HistoryRecord> barely_late = {
      record({.delivered = 50, .status = DeliveryStatus::partial, .act_end = 21}),
      record({.act_end = 20}),
  };
  CHECK(timeliness(barely_late) == 1.0);

  // a big early finish outweighing a small overrun keeps the sum nonpositive
  std::vector<HistoryRecord> net_early = {
      record({.delivered = 50, .status = DeliveryStatus::partial, .act_end = 23}),
      record({.delivered = 50, .status = DeliveryStatus::partial, .act_end = 10}),
  };
  CHECK(timeliness(net_early) == 1.0);

  CHECK(timeliness({}) == 1.0);
}

TEST_CASE("failure impact of a single record") {
  CHECK(failure_impact(record({.delivered = 10,
                               .status = DeliveryStatus::canceled,
                               .affected = 2,
                               .present = 8})) == 0.25);
  CHECK(failure_impact(record({})) == 0.0);
  CHECK(failure_impact(record({.delivered = 0,
                               .status = DeliveryStatus::canceled,
                               .affected = 8,
                               .present = 8})) == 1.0);

  HistoryRecord broken = record({});
  broken.consumers_present = 0;  // bypass construction checks
  CHECK_THROWS_AS(failure_impact(broken), std::invalid_argument);
}

TEST_CASE("impact score averages the complements over all records") {
  CHECK(impact_score(completed_history(4)) == 1.0);

  const std::vector<HistoryRecord> history = {
      record({.delivered = 10, .status = DeliveryStatus::canceled, .affected = 1, .present = 4}),
      record({}),
      record({}),
      record({.delivered = 10, .status = DeliveryStatus::canceled, .affected = 3, .present = 4}),
  };
  CHECK(impact_score(history) == 0.75);

  const std::vector<HistoryRecord> total_loss = {
      record({.delivered = 0, .status = DeliveryStatus::canceled, .affected = 4, .present = 4}),
  };
  CHECK(impact_score(total_loss) == 0.0);

  CHECK(impact_score({}) == 1.0);
}

TEST_CASE("duration factor compares the offer with the staying pattern") {
  const std::vector<HistoryRecord> history = {
      record({.adv_end = 20}),                 // 20 min
      record({.adv_end = 30, .act_end = 30}),  // 30 min
      record({.adv_end = 10, .act_end = 10}),  // 10 min
  };
  CHECK(duration_factor(history, testsupport::offer("p0", 100, 0, 15), 2) == 1.0);
  CHECK(duration_factor(history, testsupport::offer("p0", 100, 0, 40), 2) == 0.5);
  // pattern not established yet
  CHECK(duration_factor(history, testsupport::offer("p0", 100, 0, 40), 3) == 1.0);
  CHECK(duration_factor({}, testsupport::offer("p0", 100, 0, 40), 0) == 1.0);
}

TEST_CASE("provider trust combines the attributes") {
  const auto offer = testsupport::offer("p0", 100, 0, 15);

  // flawless history, any valid weights
  const auto flawless = completed_history(4);
  const auto perfect = provider_trust(flawless, offer, TrustWeights::equal(),
                                      ExpectationMode::advertised(), 2);
  CHECK(perfect.score == 1.0);

  // capped expectation pushes delivery size to 0.67 while the rest stay 1
  const auto capped67 = completed_history(4, 67);
  const auto scored = provider_trust(capped67, offer, TrustWeights::equal(),
                                     ExpectationMode::capped(100), 2);
  CHECK_THAT(scored.attributes.delivery_size, WithinAbs(0.67, 1e-12));
  CHECK_THAT(scored.score, WithinAbs(0.934, 1e-12));

  // a pure success-rate projection
  std::vector<HistoryRecord> mixed = completed_history(3);
  mixed.push_back(record({.delivered = 40, .status = DeliveryStatus::partial}));
  const TrustWeights sr_only{1, 0, 0, 0, 0};
  const auto projected = provider_trust(mixed, offer, sr_only,
                                        ExpectationMode::advertised(), 2);
  CHECK(projected.score == projected.attributes.success_rate);
  CHECK(projected.score == 0.75);
}

TEST_CASE("trust weights validate") {
  CHECK_THROWS_AS((TrustWeights{0.5, 0.5, 0.5, 0, 0}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((TrustWeights{1.2, -0.2, 0, 0, 0}.validate()),
                  std::invalid_argument);
  CHECK_NOTHROW(TrustWeights::equal().validate());
  CHECK_NOTHROW((TrustWeights{2, 2, 2, 2, 2}.normalized().validate()));
  CHECK_THROWS_AS((TrustWeights{0, 0, 0, 0, 0}.normalized()),
                  std::invalid_argument);
}

TEST_CASE("property: attributes and score stay inside the unit interval") {
  std::mt19937_64 rng(20240601);
  const auto offer = testsupport::offer("p0", 100, 0, 25);
  for (int i = 0; i < 500; ++i) {
    const auto history = testsupport::random_history(rng, 8);
    const auto result = provider_trust(history, offer, TrustWeights::equal(),
                                       ExpectationMode::advertised(), 2);
    const auto& a = result.attributes;
    for (double v : {a.success_rate, a.delivery_size, a.timeliness, a.impact,
                     a.duration_factor, result.score}) {
      REQUIRE(v >= 0.0);
      REQUIRE(v <= 1.0);
    }
  }
}

TEST_CASE("property: a flawless record never hurts") {
  std::mt19937_64 rng(20240602);
  const auto offer = testsupport::offer("p0", 100, 0, 25);
  for (int i = 0; i < 300; ++i) {
    auto history = testsupport::random_history(rng, 6);
    const auto before = provider_trust(history, offer, TrustWeights::equal(),
                                       ExpectationMode::advertised(), 2);
    history.push_back(record({.service_id = "good",
                              .advertised = 150,
                              .delivered = 150,
                              .adv_end = 20,
                              .act_end = 20}));
    const auto after = provider_trust(history, offer, TrustWeights::equal(),
                                      ExpectationMode::advertised(), 2);
    REQUIRE(after.attributes.success_rate >=
            before.attributes.success_rate - 1e-12);
    REQUIRE(after.attributes.timeliness >=
            before.attributes.timeliness - 1e-12);
    REQUIRE(after.attributes.delivery_size >=
            before.attributes.delivery_size - 1e-12);
    REQUIRE(after.attributes.impact >= before.attributes.impact - 1e-12);
  }
}

TEST_CASE("property: the score is the exact weighted attribute sum") {
  std::mt19937_64 rng(20240603);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto offer = testsupport::offer("p0", 100, 0, 25);
  for (int i = 0; i < 200; ++i) {
    const auto history = testsupport::random_history(rng, 6);
    TrustWeights weights{unit(rng) + 0.01, unit(rng) + 0.01, unit(rng) + 0.01,
                         unit(rng) + 0.01, unit(rng) + 0.01};
    weights = weights.normalized();
    const auto result = provider_trust(history, offer, weights,
                                       ExpectationMode::advertised(), 2);
    const auto& a = result.attributes;
    const double expected = weights.success_rate * a.success_rate +
                            weights.timeliness * a.timeliness +
                            weights.delivery_size * a.delivery_size +
                            weights.impact * a.impact +
                            weights.duration_factor * a.duration_factor;
    REQUIRE_THAT(result.score, WithinAbs(expected, 1e-15));
  }
}

TEST_CASE("property: rescaling all weights leaves the ranking unchanged") {
  std::mt19937_64 rng(20240604);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto offer = testsupport::offer("p0", 100, 0, 25);

  for (int trial = 0; trial < 50; ++trial) {
    TrustWeights weights{unit(rng) + 0.01, unit(rng) + 0.01, unit(rng) + 0.01,
                         unit(rng) + 0.01, unit(rng) + 0.01};
    weights = weights.normalized();
    const double scale = 0.1 + 10 * unit(rng);
    TrustWeights rescaled{weights.success_rate * scale,
                          weights.timeliness * scale,
                          weights.delivery_size * scale,
                          weights.impact * scale,
                          weights.duration_factor * scale};
    rescaled = rescaled.normalized();

    std::vector<double> base_scores, rescaled_scores;
    for (int p = 0; p < 6; ++p) {
      const auto history =
          testsupport::random_history(rng, 6, "p" + std::to_string(p));
      base_scores.push_back(provider_trust(history, offer, weights,
                                           ExpectationMode::advertised(), 2)
                                .score);
      rescaled_scores.push_back(provider_trust(history, offer, rescaled,
                                               ExpectationMode::advertised(), 2)
                                    .score);
    }
    for (std::size_t i = 0; i < base_scores.size(); ++i) {
      REQUIRE_THAT(rescaled_scores[i], WithinAbs(base_scores[i], 1e-12));
    }
  }
}
