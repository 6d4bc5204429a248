#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace nds {

// A trajectory component whose magnitude exceeds this bound is treated as
// divergence. The bound sits orders of magnitude beyond the attractor's
// extent while staying far from floating-point overflow.
inline constexpr double kDivergenceBound = 1e6;

// One neuron state: the three internal variables (x, y, u) at one time step.
struct StateVec {
  double x = 0.0;
  double y = 0.0;
  double u = 0.0;

  [[nodiscard]] bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(u);
  }

  [[nodiscard]] double max_abs() const {
    return std::max({std::fabs(x), std::fabs(y), std::fabs(u)});
  }
};

[[nodiscard]] inline double inf_dist(const StateVec& a, const StateVec& b) {
  return std::max(
      {std::fabs(a.x - b.x), std::fabs(a.y - b.y), std::fabs(a.u - b.u)});
}

[[nodiscard]] inline double euclid_dist(const StateVec& a, const StateVec& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double du = a.u - b.u;
  return std::sqrt(dx * dx + dy * dy + du * du);
}

// Parameters of the NDS map. The defaults are the model's canonical values.
struct NDSParams {
  double a = 0.002;
  double v = 0.002;
  double b = 0.03;
  double c = 0.03;
  double d = 0.8;
  double k = -0.057;
  double theta = -0.01;  // spike threshold on u
  double eta0 = -0.7;    // post-spike reset value of u

  void validate() const {
    for (double f : {a, v, b, c, d, k, theta, eta0}) {
      if (!std::isfinite(f)) {
        throw std::invalid_argument("NDSParams: non-finite parameter");
      }
    }
    // the reset must land in the sub-threshold branch
    if (eta0 > theta) {
      throw std::invalid_argument("NDSParams: eta0 must be <= theta");
    }
  }
};

// Parameters of the continuous Rossler flow.
struct RosslerParams {
  double a = 0.2;
  double b = 0.2;
  double c = 5.7;
};

struct DiscretizationConfig {
  double ts = 0.0055;  // time step, simulated time units

  void validate() const {
    if (!std::isfinite(ts) || ts < 0.0) {
      throw std::invalid_argument("DiscretizationConfig: ts must be >= 0");
    }
  }
};

// Time-indexed record of one run. All sequences share one length; index t
// holds the state, the spike output gamma(t), and the feedback/input values
// applied at t. spikes[t+1] is the threshold test of states[t].u; spikes[0]
// is 0 since no test precedes the start.
//
// When a step would leave the divergence bound (or produce a non-finite
// state), the offending state is not recorded: diverged_at is set to its
// step index and the sequences end at diverged_at - 1.
struct Trajectory {
  std::vector<StateVec> states;
  std::vector<std::uint8_t> spikes;
  std::vector<double> feedback;
  std::vector<double> input;
  std::optional<std::size_t> diverged_at;

  [[nodiscard]] std::size_t size() const { return states.size(); }
  [[nodiscard]] bool diverged() const { return diverged_at.has_value(); }
};

}  // namespace nds
