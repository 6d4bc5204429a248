#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "nds/experiments.hpp"
#include "nds/state.hpp"

namespace nds {

// Reals are serialized with 17 significant digits so a re-read recovers the
// exact double. Table-style files additionally carry columns rounded to the
// print precision of the reference tables for direct diffing.
std::string format_full(double v);
std::string format_fixed(double v, int decimals);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Comma-separated, one header row, LF line endings. Fields must not contain
// commas; none of the emitted schemas do.
void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);
double parse_double(const std::string& field);

// t,x,y,u,gamma,F,In
CsvTable trajectory_table(const Trajectory& traj);

// t,x,y,u for plain state sequences; time_scale > 0 emits t = i * time_scale
// (simulated time), otherwise t is the step index.
CsvTable states_table(const std::vector<StateVec>& states, double time_scale);

// one row per setup: full-precision and 5-decimal coordinates of both points
CsvTable fixed_points_table(const std::vector<SetupAnalysis>& analyses);

// one row per setup: both points' eigenvalue triples, full precision and
// 4-decimal, plus both classification labels
CsvTable eigen_table(const std::vector<SetupAnalysis>& analyses);

// parameter,low,high
CsvTable validity_table(const std::vector<ValidityRange>& ranges);

// one row per experiment
CsvTable capacity_table(const std::vector<CapacityResult>& results);

// steps,renorm_interval,separation,lambda
CsvTable lyapunov_table(std::uint64_t steps, std::uint64_t renorm_interval,
                        double separation, double lambda);

}  // namespace nds
