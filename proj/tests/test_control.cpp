#include <doctest.h>

#include <cmath>
#include <cstring>

#include "nds/control.hpp"
#include "nds/dynamics.hpp"
#include "nds/rng.hpp"

using namespace nds;

namespace {

SpikeHistory history_from(const std::vector<std::uint8_t>& spikes,
                          std::size_t capacity) {
  SpikeHistory h(capacity);
  for (auto s : spikes) h.push(s);
  return h;
}

// a trajectory that repeats `cycle` (states plus spike flags) after a ramp
Trajectory synthetic_cycle(const std::vector<StateVec>& cycle,
                           const std::vector<std::uint8_t>& spikes,
                           std::size_t ramp, std::size_t total) {
  Trajectory t;
  for (std::size_t i = 0; i < total; ++i) {
    if (i < ramp) {
      const double r = static_cast<double>(i);
      t.states.push_back({r, -r, 10.0 + r});
      t.spikes.push_back(0);
    } else {
      const std::size_t j = (i - ramp) % cycle.size();
      t.states.push_back(cycle[j]);
      t.spikes.push_back(spikes[j]);
    }
    t.feedback.push_back(0.0);
    t.input.push_back(0.0);
  }
  return t;
}

}  // namespace

TEST_CASE("spike history lookups") {
  SpikeHistory h = history_from({1, 0, 0, 1, 0}, 4);
  CHECK(h.at(-3) == 0);  // before the start of time
  CHECK(h.at(3) == 1);
  CHECK(h.at(4) == 0);
  CHECK(h.at(1) == 0);
  // capacity 4 with 5 pushed: step 0 evicted, step 5 not yet recorded
  CHECK_THROWS_AS(static_cast<void>(h.at(0)), std::out_of_range);
  CHECK_THROWS_AS(static_cast<void>(h.at(5)), std::out_of_range);
}

TEST_CASE("feedback_signal sums weighted delayed spikes") {
  SUBCASE("empty config") {
    SpikeHistory h = history_from({1, 1, 1}, 8);
    CHECK(feedback_signal(h, {}, 3) == 0.0);
  }
  SUBCASE("single connection") {
    // gamma(t-3) = 1 at t = 5
    SpikeHistory h = history_from({0, 0, 1, 0, 0}, 8);
    const FeedbackConfig cfg{{{0.5, 3}}};
    CHECK(feedback_signal(h, cfg, 5) == 0.5);
    CHECK(feedback_signal(h, cfg, 4) == 0.0);
  }
  SUBCASE("two connections") {
    // t = 6: gamma(4) = 1 (delay 2), gamma(1) = 1 (delay 5)
    SpikeHistory h = history_from({0, 1, 0, 0, 1, 0}, 8);
    const FeedbackConfig cfg{{{0.2, 2}, {-0.1, 5}}};
    CHECK(feedback_signal(h, cfg, 6) == doctest::Approx(0.1).epsilon(1e-14));
  }
  SUBCASE("delay beyond capacity is rejected") {
    SpikeHistory h = history_from({1, 1, 1}, 2);
    const FeedbackConfig cfg{{{1.0, 3}}};
    CHECK_THROWS_AS(feedback_signal(h, cfg, 3), std::invalid_argument);
  }
  SUBCASE("negative time reads zero") {
    SpikeHistory h = history_from({1}, 4);
    const FeedbackConfig cfg{{{1.0, 4}}};
    CHECK(feedback_signal(h, cfg, 0) == 0.0);
  }
}

TEST_CASE("feedback_signal is linear in the weights") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::uint8_t> spikes(64);
    for (auto& s : spikes) s = rng.uniform_index(2) ? 1 : 0;
    SpikeHistory h = history_from(spikes, 64);

    FeedbackConfig cfg;
    const std::size_t n = 1 + rng.uniform_index(5);
    for (std::size_t i = 0; i < n; ++i) {
      cfg.connections.push_back(
          {rng.uniform(-1.0, 1.0), 1 + rng.uniform_index(32)});
    }
    FeedbackConfig doubled = cfg;
    for (auto& conn : doubled.connections) conn.weight *= 2.0;

    const std::uint64_t t = 40 + rng.uniform_index(20);
    // doubling every weight doubles the sum exactly
    CHECK(feedback_signal(h, doubled, t) == 2.0 * feedback_signal(h, cfg, t));
  }
}

TEST_CASE("input_signal sums trains and reads absent steps as zero") {
  CHECK(input_signal({}, 0) == 0.0);
  const InputTrain trains{{{1.0, 0.0, 1.0}, {0.5, 0.5, 0.0}}};
  CHECK(input_signal(trains, 0) == 1.5);
  CHECK(input_signal(trains, 2) == 1.0);
  CHECK(input_signal(trains, 3) == 0.0);
  CHECK(input_signal(trains, 1000) == 0.0);
}

TEST_CASE("detect_period finds a constructed cycle") {
  const std::vector<StateVec> cycle = {
      {0.1, 0.2, -0.7}, {0.2, 0.1, -0.3}, {0.3, 0.0, 0.1}, {0.15, 0.05, -0.7}};
  const std::vector<std::uint8_t> spikes = {0, 0, 0, 1};
  const Trajectory traj = synthetic_cycle(cycle, spikes, 50, 2000);

  const auto p = detect_period(traj, 100, 20, 1e-9);
  REQUIRE(p.has_value());
  CHECK(*p == 4);

  // period multiples hold, shorter periods do not
  CHECK(period_holds(traj, 100, 8, 1e-9));
  CHECK(period_holds(traj, 100, 12, 1e-9));
  CHECK(!period_holds(traj, 100, 1, 1e-9));
  CHECK(!period_holds(traj, 100, 2, 1e-9));
  CHECK(!period_holds(traj, 100, 3, 1e-9));
}

TEST_CASE("detect_period rejects a silent window") {
  const std::vector<StateVec> cycle = {{0.1, 0.0, -0.5}};
  const std::vector<std::uint8_t> spikes = {0};
  const Trajectory traj = synthetic_cycle(cycle, spikes, 0, 500);
  CHECK(!detect_period(traj, 10, 20, 1e-9).has_value());
}

TEST_CASE("detect_period returns none for a chaotic run") {
  NDSParams p;
  const Trajectory traj = simulate({0.001, 0.001, 0.001}, p, 15000);
  REQUIRE(!traj.diverged());
  CHECK(!detect_period(traj, 1000, 500, 1e-6).has_value());
}

TEST_CASE("detect_period validates the window") {
  const std::vector<StateVec> cycle = {{0, 0, 0}};
  const Trajectory traj = synthetic_cycle(cycle, {1}, 0, 100);
  CHECK_THROWS_AS(detect_period(traj, 50, 30, 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(detect_period(traj, 0, 0, 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(detect_period(traj, 0, 10, 0.0), std::invalid_argument);
}

TEST_CASE("feedback leaves the pre-onset segment untouched") {
  NDSParams p;
  const FeedbackConfig fb{{{0.3, 5}}};
  const Trajectory with = simulate({0.001, 0.001, 0.001}, p, 3000, fb, 1500);
  const Trajectory without = simulate({0.001, 0.001, 0.001}, p, 3000);
  REQUIRE(!with.diverged());
  for (std::size_t t = 0; t <= 1500; ++t) {
    CHECK(with.states[t].x == without.states[t].x);
    CHECK(with.states[t].y == without.states[t].y);
    CHECK(with.states[t].u == without.states[t].u);
    CHECK(with.spikes[t] == without.spikes[t]);
  }
}

TEST_CASE("stabilize_run rejects an insufficient window") {
  NDSParams p;
  const FeedbackConfig fb{{{0.1, 4}}};
  CHECK_THROWS_AS(stabilize_run(p, fb, {0.001, 0.001, 0.001}, 1000, 900),
                  std::invalid_argument);
  CHECK_THROWS_AS(stabilize_run(p, fb, {0.001, 0.001, 0.001}, 1000, 1500),
                  std::invalid_argument);
}

TEST_CASE("stabilize_run without feedback stays chaotic") {
  NDSParams p;
  const StabilizationResult res =
      stabilize_run(p, {}, {0.001, 0.001, 0.001}, 1000, 10000);
  CHECK(!res.locked);
  CHECK(!res.period.has_value());
  CHECK(res.trajectory.size() == 10001);
}

// Locking pair regression values live in test_experiments.cpp next to the
// capacity experiment, after the sweep that discovers them.
