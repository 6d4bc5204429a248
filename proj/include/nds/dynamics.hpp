#pragma once

#include <cstddef>

#include "nds/control.hpp"
#include "nds/state.hpp"

namespace nds {

struct StepResult {
  StateVec state;
  bool spike = false;  // gamma(t+1): threshold test of the input state's u
};

// One step of the NDS map:
//   x' = x + b(-y - u)
//   y' = y + c(x + a y)
//   u' = eta0                                   if u > theta  (spike)
//        u + d(v - u x + k u) + F + In          otherwise
// Feedback and input enter additively, only on the sub-threshold branch.
StepResult nds_step(const StateVec& s, const NDSParams& p, double feedback,
                    double input);

// Time derivative of the Rossler flow: (-y - u, x + a y, b + u(x - c)).
StateVec rossler_rhs(const StateVec& s, const RosslerParams& p);

// Forward Euler step of the Rossler flow: s + ts * rossler_rhs(s).
StateVec euler_step(const StateVec& s, const RosslerParams& p,
                    const DiscretizationConfig& cfg);

// Euler-discretized Rossler with the NDS-style sign flip in the u equation.
struct ModifiedRosslerParams {
  double a = 0.2;
  double b = 0.0055;
  double c = 0.0055;
  double d = 0.0055;
  double v = 0.2;
  double k = 5.7;
};

// x' = x + b(-y - u); y' = y + c(x + a y); u' = u + d(v + u(-x + k)).
StateVec modified_rossler_step(const StateVec& s,
                               const ModifiedRosslerParams& p);

// Preferred simulation time step for a system whose largest absolute
// eigenvalue is lambda_max: 0.1 / |lambda_max|.
double ts_bound(double lambda_max);

// Iterates nds_step for `steps` steps, recording every state, spike, F(t)
// and In(t). The feedback signal is forced to zero before feedback_onset;
// spikes are recorded into the delay line from step 0 either way. Stops
// early when the divergence bound is exceeded (see Trajectory).
Trajectory simulate(const StateVec& initial, const NDSParams& p,
                    std::size_t steps, const FeedbackConfig& feedback = {},
                    std::size_t feedback_onset = 1000,
                    const InputTrain& input = {});

}  // namespace nds
