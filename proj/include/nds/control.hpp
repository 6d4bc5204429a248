#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "nds/state.hpp"

namespace nds {

// One delayed self-feedback connection: F picks up weight * gamma(t - delay).
struct FeedbackConnection {
  double weight = 0.0;
  std::size_t delay = 1;  // steps, >= 1
};

struct FeedbackConfig {
  std::vector<FeedbackConnection> connections;

  [[nodiscard]] bool empty() const { return connections.empty(); }
  [[nodiscard]] std::size_t max_delay() const;
  void validate() const;
};

// Fixed-capacity delay line over the binary spike output. Single writer;
// lookups of gamma(t - tau) are exact for tau <= capacity, read 0 before the
// start of time, and are rejected outside the retained window.
class SpikeHistory {
 public:
  explicit SpikeHistory(std::size_t capacity);

  void push(std::uint8_t gamma);
  [[nodiscard]] std::uint8_t at(std::int64_t t) const;

  [[nodiscard]] std::size_t capacity() const { return ring_.size(); }
  [[nodiscard]] std::int64_t now() const {
    return static_cast<std::int64_t>(count_);
  }

 private:
  std::vector<std::uint8_t> ring_;
  std::uint64_t count_ = 0;
};

// External input spike trains; steps beyond a train's length read as 0.
struct InputTrain {
  std::vector<std::vector<double>> trains;

  [[nodiscard]] bool empty() const { return trains.empty(); }
};

// F(t): weighted sum of delayed spikes over all connections.
double feedback_signal(const SpikeHistory& h, const FeedbackConfig& cfg,
                       std::uint64_t t);

// In(t): sum over trains at step t.
double input_signal(const InputTrain& inp, std::uint64_t t);

// True when states and spikes repeat with the given period from `from` to
// the end of the trajectory (inf-norm tolerance eps on states, exact match
// on spikes). This is the predicate behind detect_period, exposed so that
// reported locks can be re-verified independently.
[[nodiscard]] bool period_holds(const Trajectory& traj, std::size_t from,
                                std::size_t period, double eps);

// Smallest period in [1, max_period] that holds over the whole post-transient
// window, or nullopt. A spike-free window yields nullopt: a silent neuron is
// not a stabilized orbit. Requires traj.size() > transient + 2 * max_period.
std::optional<std::size_t> detect_period(const Trajectory& traj,
                                         std::size_t transient,
                                         std::size_t max_period, double eps);

struct DetectionSettings {
  std::size_t max_period = 500;
  double eps = 1e-6;
};

struct StabilizationResult {
  bool locked = false;
  std::optional<std::size_t> period;
  std::optional<std::size_t> lock_time;  // first post-onset step from which
                                         // the periodicity holds to the end
  Trajectory trajectory;
};

// Runs the neuron with feedback active from `onset`, then looks for a
// sustained periodic orbit over the final window. Divergence is reported as
// locked = false with the trajectory preserved.
StabilizationResult stabilize_run(const NDSParams& p,
                                  const FeedbackConfig& cfg,
                                  const StateVec& initial,
                                  std::size_t onset = 1000,
                                  std::size_t total = 10000,
                                  const DetectionSettings& det = {});

// Grid of candidate (weight, delay) pairs for the stabilization sweep.
struct FeedbackSweepSpec {
  double w_min = -1.0;
  double w_max = 1.0;
  double w_step = 0.01;
  std::size_t tau_min = 1;
  std::size_t tau_max = 50;

  [[nodiscard]] std::size_t weight_count() const;
  [[nodiscard]] double weight_at(std::size_t i) const;
  [[nodiscard]] std::size_t tau_count() const { return tau_max - tau_min + 1; }
  void validate() const;
};

struct LockingPair {
  double weight = 0.0;
  std::size_t delay = 0;
  std::size_t period = 0;
  std::size_t lock_time = 0;
};

// Full scan of the sweep grid; returns every locking pair in (weight, delay)
// scan order. Deterministic regardless of max_threads (0 = hardware).
std::vector<LockingPair> sweep_locking_pairs(
    const NDSParams& p, const FeedbackSweepSpec& spec, const StateVec& initial,
    std::size_t onset = 1000, std::size_t total = 10000,
    const DetectionSettings& det = {}, std::size_t max_threads = 0);

}  // namespace nds
