#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "nds/analysis.hpp"
#include "nds/control.hpp"
#include "nds/state.hpp"

namespace nds {

// One of the 15 built-in parameter settings. The settings tie a = v and
// b = c; theta and eta0 stay at their defaults.
struct ParamSetup {
  int id = 0;
  NDSParams params;
};

const std::array<ParamSetup, 15>& param_setups();
const ParamSetup& setup_by_id(int id);  // 1..15

struct ValidityRange {
  std::string parameter;
  double low = 0.0;
  double high = 0.0;
};

// Reference valid ranges for the tunable parameters (a_v, b_c, d, k).
const std::array<ValidityRange, 4>& reference_validity_ranges();

// A setting is valid when a 10000-step run from a seeded initial condition
// stays bounded and keeps spiking: no 5000-step spike-free stretch after
// step 1000.
bool run_validity_check(const NDSParams& p, std::uint64_t seed);

struct SetupAnalysis {
  int setup_id = 0;
  std::array<FixedPointReport, 2> reports;
};

// Fixed points, eigenvalues and labels for all 15 built-in setups.
std::vector<SetupAnalysis> generate_tables();

struct CapacityResult {
  int setup_id = 0;
  std::size_t runs = 0;
  std::uint64_t seed = 0;
  std::size_t locked_runs = 0;
  std::set<std::size_t> distinct_periods;
  double mean_stabilized = 0.0;  // locked_runs / runs

  bool operator==(const CapacityResult&) const = default;
};

// Randomized stabilization experiment: each run draws an initial condition
// uniformly from the attractor bounding box (learned from a control run of
// the setup) and a (weight, delay) pair uniformly from the sweep grid, then
// attempts a stabilize_run. Per-run streams are split from `seed` by run
// index, so results are reproducible and any prefix of the runs is a prefix
// of the longer experiment.
CapacityResult capacity_experiment(const ParamSetup& setup, std::size_t runs,
                                   std::uint64_t seed,
                                   const FeedbackSweepSpec& sweep = {},
                                   std::size_t max_threads = 0);

struct ParameterGrid {
  std::string parameter;  // one of: a_v, b_c, d, k
  std::vector<double> values;
};

// Varies one parameter at a time around the canonical setting and reports
// the maximal contiguous run of grid values that pass run_validity_check.
// Parameters with no valid grid point are omitted.
std::vector<ValidityRange> range_sweep(const std::vector<ParameterGrid>& grids,
                                       std::uint64_t seed);

// Grids used by the command-line sweep; each spans well past the reference
// range of its parameter.
std::vector<ParameterGrid> default_sweep_grids();

}  // namespace nds
