#include "nds/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nds/dynamics.hpp"
#include "nds/parallel.hpp"
#include "nds/rng.hpp"

namespace nds {

namespace {

NDSParams make_setup(double av, double bc, double d, double k) {
  NDSParams p;
  p.a = av;
  p.v = av;
  p.b = bc;
  p.c = bc;
  p.d = d;
  p.k = k;
  return p;
}

constexpr StateVec kDefaultInitial{0.001, 0.001, 0.001};

}  // namespace

const std::array<ParamSetup, 15>& param_setups() {
  static const std::array<ParamSetup, 15> setups = {{
      {1, make_setup(0.001, 0.03, 0.8, -0.057)},
      {2, make_setup(0.01, 0.03, 0.8, -0.057)},
      {3, make_setup(0.1, 0.03, 0.8, -0.057)},
      {4, make_setup(0.002, 0.001, 0.8, -0.057)},
      {5, make_setup(0.002, 0.02, 0.8, -0.057)},
      {6, make_setup(0.002, 0.05, 0.8, -0.057)},
      {7, make_setup(0.002, 0.03, 0.8, -0.057)},
      {8, make_setup(0.002, 0.03, 0.85, -0.057)},
      {9, make_setup(0.002, 0.03, 0.9, -0.057)},
      {10, make_setup(0.002, 0.03, 0.8, -0.055)},
      {11, make_setup(0.002, 0.03, 0.8, -0.056)},
      {12, make_setup(0.002, 0.03, 0.8, -0.058)},
      {13, make_setup(0.01, 0.05, 0.85, -0.055)},
      {14, make_setup(0.002, 0.015, 0.8, -0.058)},
      {15, make_setup(0.1, 0.04, 0.8, -0.056)},
  }};
  return setups;
}

const ParamSetup& setup_by_id(int id) {
  if (id < 1 || id > 15) {
    throw std::invalid_argument("setup_by_id: id must be in 1..15");
  }
  return param_setups()[static_cast<std::size_t>(id - 1)];
}

const std::array<ValidityRange, 4>& reference_validity_ranges() {
  static const std::array<ValidityRange, 4> ranges = {{
      {"a_v", 0.001, 0.1},
      {"b_c", 0.01, 0.055},
      {"d", 0.8, 0.9},
      {"k", -0.058, -0.055},
  }};
  return ranges;
}

bool run_validity_check(const NDSParams& p, std::uint64_t seed) {
  SplitMix64 rng = SplitMix64::for_run(seed, 0);
  const StateVec initial{rng.uniform(-0.01, 0.01), rng.uniform(-0.01, 0.01),
                         rng.uniform(-0.01, 0.01)};
  const Trajectory traj = simulate(initial, p, 10000);
  if (traj.diverged()) return false;

  // sustained spiking: no 5000-step spike-free stretch after step 1000
  std::size_t gap = 0;
  for (std::size_t t = 1001; t < traj.size(); ++t) {
    if (traj.spikes[t]) {
      gap = 0;
    } else if (++gap >= 5000) {
      return false;
    }
  }
  return true;
}

std::vector<SetupAnalysis> generate_tables() {
  std::vector<SetupAnalysis> out;
  out.reserve(15);
  for (const auto& setup : param_setups()) {
    out.push_back({setup.id, analyze_fixed_points(setup.params)});
  }
  return out;
}

CapacityResult capacity_experiment(const ParamSetup& setup, std::size_t runs,
                                   std::uint64_t seed,
                                   const FeedbackSweepSpec& sweep,
                                   std::size_t max_threads) {
  if (runs < 1) {
    throw std::invalid_argument("capacity_experiment: runs must be >= 1");
  }
  sweep.validate();

  // attractor bounding box from an uncontrolled run of this setup
  const Trajectory control = simulate(kDefaultInitial, setup.params, 10000);
  std::size_t skip = 1000;
  if (skip >= control.size()) skip = 0;
  StateVec lo = control.states[skip];
  StateVec hi = control.states[skip];
  for (std::size_t t = skip; t < control.size(); ++t) {
    const StateVec& s = control.states[t];
    lo = {std::min(lo.x, s.x), std::min(lo.y, s.y), std::min(lo.u, s.u)};
    hi = {std::max(hi.x, s.x), std::max(hi.y, s.y), std::max(hi.u, s.u)};
  }

  const std::size_t n_w = sweep.weight_count();
  const std::size_t n_tau = sweep.tau_count();

  // periods[i] == 0 means run i did not lock
  std::vector<std::size_t> periods(runs, 0);
  parallel_for(runs, max_threads, [&](std::size_t run) {
    SplitMix64 rng = SplitMix64::for_run(seed, run);
    // draw order is part of the experiment definition: x, y, u, weight, tau
    const StateVec initial{rng.uniform(lo.x, hi.x), rng.uniform(lo.y, hi.y),
                           rng.uniform(lo.u, hi.u)};
    const double w = sweep.weight_at(rng.uniform_index(n_w));
    const std::size_t tau = sweep.tau_min + rng.uniform_index(n_tau);
    const FeedbackConfig cfg{{{w, tau}}};
    const StabilizationResult res =
        stabilize_run(setup.params, cfg, initial, 1000, 10000);
    if (res.locked) periods[run] = *res.period;
  });

  CapacityResult result;
  result.setup_id = setup.id;
  result.runs = runs;
  result.seed = seed;
  for (std::size_t p : periods) {
    if (p != 0) {
      ++result.locked_runs;
      result.distinct_periods.insert(p);
    }
  }
  result.mean_stabilized =
      static_cast<double>(result.locked_runs) / static_cast<double>(runs);
  return result;
}

namespace {

NDSParams apply_parameter(const std::string& name, double value) {
  NDSParams p = setup_by_id(7).params;
  if (name == "a_v") {
    p.a = value;
    p.v = value;
  } else if (name == "b_c") {
    p.b = value;
    p.c = value;
  } else if (name == "d") {
    p.d = value;
  } else if (name == "k") {
    p.k = value;
  } else {
    throw std::invalid_argument("range_sweep: unknown parameter '" + name + "'");
  }
  return p;
}

}  // namespace

std::vector<ValidityRange> range_sweep(const std::vector<ParameterGrid>& grids,
                                       std::uint64_t seed) {
  if (grids.empty()) {
    throw std::invalid_argument("range_sweep: empty grid list");
  }

  std::vector<ValidityRange> out;
  for (std::size_t gi = 0; gi < grids.size(); ++gi) {
    const ParameterGrid& grid = grids[gi];
    if (grid.values.empty()) {
      throw std::invalid_argument("range_sweep: empty value list for '" +
                                  grid.parameter + "'");
    }
    std::vector<std::uint8_t> ok(grid.values.size(), 0);
    for (std::size_t vi = 0; vi < grid.values.size(); ++vi) {
      const NDSParams p = apply_parameter(grid.parameter, grid.values[vi]);
      ok[vi] = run_validity_check(p, mix64(seed ^ (gi * 1000003 + vi + 1)));
    }

    // longest contiguous valid run; first one wins a tie
    std::size_t best_start = 0, best_len = 0, cur_start = 0, cur_len = 0;
    for (std::size_t vi = 0; vi < ok.size(); ++vi) {
      if (ok[vi]) {
        if (cur_len == 0) cur_start = vi;
        if (++cur_len > best_len) {
          best_len = cur_len;
          best_start = cur_start;
        }
      } else {
        cur_len = 0;
      }
    }
    if (best_len > 0) {
      out.push_back({grid.parameter, grid.values[best_start],
                     grid.values[best_start + best_len - 1]});
    }
  }
  return out;
}

std::vector<ParameterGrid> default_sweep_grids() {
  return {
      {"a_v", {0.0001, 0.0002, 0.0005, 0.001, 0.002, 0.005, 0.01, 0.02, 0.05,
               0.1, 0.2, 0.5}},
      {"b_c", {0.001, 0.002, 0.005, 0.01, 0.02, 0.03, 0.04, 0.05, 0.055, 0.06,
               0.08, 0.1}},
      {"d", {0.5, 0.6, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95, 1.0, 1.1}},
      {"k", {-0.1, -0.09, -0.08, -0.07, -0.065, -0.06, -0.059, -0.058, -0.057,
             -0.056, -0.055, -0.054, -0.053, -0.05, -0.04, -0.03, -0.02,
             -0.01}},
  };
}

}  // namespace nds
