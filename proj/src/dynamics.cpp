#include "nds/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace nds {

StepResult nds_step(const StateVec& s, const NDSParams& p, double feedback,
                    double input) {
  if (!s.finite()) {
    throw std::invalid_argument("nds_step: non-finite state");
  }
  StateVec n;
  n.x = s.x + p.b * (-s.y - s.u);
  n.y = s.y + p.c * (s.x + p.a * s.y);
  const bool spike = s.u > p.theta;
  if (spike) {
    n.u = p.eta0;  // reset branch: feedback and input do not enter
  } else {
    n.u = s.u + p.d * (p.v + s.u * (-s.x) + p.k * s.u) + feedback + input;
  }
  if (!n.finite()) {
    throw std::runtime_error("nds_step: non-finite result (divergence)");
  }
  return {n, spike};
}

StateVec rossler_rhs(const StateVec& s, const RosslerParams& p) {
  return {-s.y - s.u, s.x + p.a * s.y, p.b + s.u * (s.x - p.c)};
}

StateVec euler_step(const StateVec& s, const RosslerParams& p,
                    const DiscretizationConfig& cfg) {
  cfg.validate();
  const StateVec r = rossler_rhs(s, p);
  return {s.x + cfg.ts * r.x, s.y + cfg.ts * r.y, s.u + cfg.ts * r.u};
}

StateVec modified_rossler_step(const StateVec& s,
                               const ModifiedRosslerParams& p) {
  return {s.x + p.b * (-s.y - s.u), s.y + p.c * (s.x + p.a * s.y),
          s.u + p.d * (p.v + s.u * (-s.x + p.k))};
}

double ts_bound(double lambda_max) {
  if (!std::isfinite(lambda_max) || lambda_max == 0.0) {
    throw std::invalid_argument("ts_bound: lambda_max must be non-zero");
  }
  return 0.1 / std::fabs(lambda_max);
}

Trajectory simulate(const StateVec& initial, const NDSParams& p,
                    std::size_t steps, const FeedbackConfig& feedback,
                    std::size_t feedback_onset, const InputTrain& input) {
  p.validate();
  feedback.validate();
  if (steps < 1) {
    throw std::invalid_argument("simulate: steps must be >= 1");
  }
  if (!feedback.empty() && feedback_onset > steps) {
    throw std::invalid_argument("simulate: feedback_onset must be <= steps");
  }
  if (!initial.finite() || initial.max_abs() > kDivergenceBound) {
    throw std::invalid_argument("simulate: initial state out of range");
  }

  Trajectory traj;
  traj.states.reserve(steps + 1);
  traj.spikes.reserve(steps + 1);
  traj.feedback.reserve(steps + 1);
  traj.input.reserve(steps + 1);

  const bool has_feedback = !feedback.empty();
  SpikeHistory history(has_feedback ? feedback.max_delay() : 1);

  StateVec s = initial;
  std::uint8_t gamma = 0;  // no threshold test precedes the start
  for (std::size_t t = 0;; ++t) {
    const double f = (has_feedback && t >= feedback_onset)
                         ? feedback_signal(history, feedback, t)
                         : 0.0;
    const double in = input_signal(input, t);

    traj.states.push_back(s);
    traj.spikes.push_back(gamma);
    traj.feedback.push_back(f);
    traj.input.push_back(in);
    if (t == steps) break;

    StepResult step;
    try {
      step = nds_step(s, p, f, in);
    } catch (const std::runtime_error&) {
      traj.diverged_at = t + 1;
      break;
    }
    history.push(gamma);
    if (step.state.max_abs() > kDivergenceBound) {
      traj.diverged_at = t + 1;
      break;
    }
    s = step.state;
    gamma = step.spike ? 1 : 0;
  }
  return traj;
}

}  // namespace nds
