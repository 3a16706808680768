#include <doctest.h>

#include <cmath>
#include <numbers>

#include "crowdnav/environments.hpp"
#include "crowdnav/error.hpp"

using namespace crowdnav;

namespace {

constexpr PresetName kAll[] = {PresetName::SimpleCircle, PresetName::SimpleSquare,
                               PresetName::LargeCircle,  PresetName::LargeSquare,
                               PresetName::DenseCircle,  PresetName::DenseSquare};

void check_no_overlap(const ScenarioSpec& s) {
  std::vector<std::pair<Vec2, double>> starts{{s.robot_start, s.robot.radius}};
  for (const HumanSpec& h : s.humans) starts.emplace_back(h.start, h.radius);
  for (std::size_t a = 0; a < starts.size(); ++a) {
    for (std::size_t b = a + 1; b < starts.size(); ++b) {
      CHECK(distance(starts[a].first, starts[b].first) >
            starts[a].second + starts[b].second + 0.2);
    }
  }
}

}  // namespace

TEST_CASE("preset table") {
  CHECK(preset("LargeCircle").n == 12);
  CHECK(preset("LargeCircle").extent == 6.0);
  CHECK(preset("DenseSquare").n == 20);
  CHECK(preset("DenseSquare").extent == 10.0);
  CHECK(preset("large-square").n == 20);
  CHECK(preset("LargeSquare").extent == 14.0);
  CHECK(preset(PresetName::SimpleCircle).crossing == CrossingType::Circle);
  CHECK(preset(PresetName::SimpleSquare).crossing == CrossingType::Square);
  CHECK_THROWS_AS(preset("HugeCircle"), UnknownPreset);
  for (PresetName n : kAll) CHECK(preset_name_from_string(to_string(n)) == n);
}

TEST_CASE("density formula") {
  CHECK(density(preset("SimpleCircle")) == doctest::Approx(5.0 / (std::numbers::pi * 16.0)));
  CHECK(density(preset("SimpleCircle")) == doctest::Approx(0.0995).epsilon(1e-3));
  CHECK(density(preset("SimpleSquare")) == doctest::Approx(0.1));
  CHECK(density(preset("DenseCircle")) == doctest::Approx(0.1989).epsilon(1e-3));
  CHECK(density(preset("LargeSquare")) == doctest::Approx(0.102).epsilon(1e-2));
  CHECK(density(preset("DenseSquare")) == doctest::Approx(0.2));
  CHECK(density(preset("LargeCircle")) == doctest::Approx(12.0 / (std::numbers::pi * 36.0)));
}

TEST_CASE("attribute sampling") {
  Rng rng(42);
  double sum_r = 0, sum_v = 0;
  const int n = 100'000;
  for (int k = 0; k < n; ++k) {
    const HumanAttributes a = sample_attributes(rng);
    CHECK(a.radius >= 0.3);
    CHECK(a.radius <= 0.5);
    CHECK(a.v_pref >= 0.5);
    CHECK(a.v_pref <= 1.5);
    sum_r += a.radius;
    sum_v += a.v_pref;
  }
  // Uniform widths 0.2 and 1.0 give standard errors w / sqrt(12 n).
  CHECK(std::fabs(sum_r / n - 0.4) < 3 * 0.2 / std::sqrt(12.0 * n));
  CHECK(std::fabs(sum_v / n - 1.0) < 3 * 1.0 / std::sqrt(12.0 * n));

  Rng a(42), b(42);
  const HumanAttributes x = sample_attributes(a), y = sample_attributes(b);
  CHECK(x.radius == y.radius);
  CHECK(x.v_pref == y.v_pref);
}

TEST_CASE("circle crossing geometry") {
  const EnvPreset p = preset("SimpleCircle");
  const ScenarioSpec s = generate_scenario(p, 7);
  CHECK(s.humans.size() == 5);
  CHECK(s.robot_start == Vec2{0, -4});
  CHECK(s.robot_goal == Vec2{0, 4});
  for (const HumanSpec& h : s.humans) {
    CHECK(h.start.norm() >= 4 - 0.71);
    CHECK(h.start.norm() <= 4 + 0.71);
    CHECK_FALSE(h.static_after_goal);
  }
}

TEST_CASE("circle goals are antipodal up to the jitter") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const ScenarioSpec s = generate_scenario(preset("DenseCircle"), seed);
    for (const HumanSpec& h : s.humans) {
      // start = rim + j1, goal = -rim + j2 with |j| <= 0.5 per axis.
      CHECK(std::fabs(h.start.x + h.goal.x) <= 1.0);
      CHECK(std::fabs(h.start.y + h.goal.y) <= 1.0);
    }
  }
}

TEST_CASE("square crossing geometry") {
  const ScenarioSpec s = generate_scenario(preset("SimpleSquare"), 3);
  CHECK(s.humans.size() == 10);
  CHECK(s.robot_start == Vec2{0, -5});
  CHECK(s.robot_goal == Vec2{0, 5});
  for (const HumanSpec& h : s.humans) {
    CHECK(std::fabs(h.start.x) <= 5);
    CHECK(std::fabs(h.start.y) <= 5);
    CHECK(std::fabs(h.goal.y) <= 5);
    CHECK(h.start.x * h.goal.x <= 0.0);
    CHECK(h.static_after_goal);
  }
}

TEST_CASE("square side choice is fair") {
  int left = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    for (const HumanSpec& h : generate_scenario(preset("SimpleSquare"), seed).humans) {
      left += h.start.x < 0.0;
      ++total;
    }
  }
  CHECK(total == 1000);
  CHECK(std::abs(left - 500) < 3 * std::sqrt(250.0));
}

TEST_CASE("generated starts never overlap, including the robot") {
  for (PresetName n : kAll) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      check_no_overlap(generate_scenario(preset(n), seed));
    }
  }
}

TEST_CASE("generation is a function of preset and seed") {
  for (PresetName n : kAll) {
    const ScenarioSpec a = generate_scenario(preset(n), 123);
    const ScenarioSpec b = generate_scenario(preset(n), 123);
    REQUIRE(a.humans.size() == b.humans.size());
    CHECK(a.seed == 123);
    for (std::size_t k = 0; k < a.humans.size(); ++k) {
      CHECK(a.humans[k].start == b.humans[k].start);
      CHECK(a.humans[k].goal == b.humans[k].goal);
      CHECK(a.humans[k].radius == b.humans[k].radius);
    }
  }
}

TEST_CASE("impossible placement fails explicitly") {
  EnvPreset p = preset("SimpleCircle");
  p.n = 200;
  PlacementConfig placement;
  placement.max_attempts = 100;
  CHECK_THROWS_AS(generate_scenario(p, 1, {}, placement), PlacementFailure);
}

TEST_CASE("dynamics policy names") {
  CHECK(dynamics_policy_from_string("orca") == DynamicsPolicy::Orca);
  CHECK(dynamics_policy_from_string(to_string(DynamicsPolicy::SocialForce)) ==
        DynamicsPolicy::SocialForce);
  CHECK(to_string(DynamicsPolicy::Static) == "static");
}
