#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nds/control.hpp"
#include "nds/state.hpp"

namespace nds {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parsed run configuration. Fields stay unset unless the config text or the
// command line provided them; resolution applies the canonical defaults
// (setup 7 parameters, steps 10000, onset 1000) and lets explicit parameter
// overrides win over the setup id.
struct RunConfig {
  std::optional<std::string> command;
  std::optional<int> setup;

  std::optional<double> a, v, b, c, d, k, theta, eta0;

  std::optional<std::uint64_t> steps;
  std::optional<std::uint64_t> onset;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> runs;
  std::optional<std::uint64_t> renorm_interval;
  std::optional<double> ts;
  std::optional<double> separation;
  std::optional<std::string> mode;  // continuous | euler | modified
  std::optional<std::string> out;
  std::optional<StateVec> init;

  std::vector<FeedbackConnection> feedback;  // empty = unset

  // derived at parse time when an accepted value falls outside the studied
  // parameter ranges; not part of the configuration state
  std::vector<std::string> warnings;

  [[nodiscard]] NDSParams resolved_params() const;
  [[nodiscard]] std::uint64_t resolved_steps() const { return steps.value_or(10000); }
  [[nodiscard]] std::uint64_t resolved_onset() const { return onset.value_or(1000); }
  [[nodiscard]] std::uint64_t resolved_seed() const { return seed.value_or(1); }
  [[nodiscard]] std::uint64_t resolved_runs() const { return runs.value_or(1000); }
  [[nodiscard]] StateVec resolved_init() const {
    return init.value_or(StateVec{0.001, 0.001, 0.001});
  }

  // configuration state only; warnings are excluded
  bool operator==(const RunConfig& o) const;
};

bool operator==(const StateVec& a, const StateVec& b);
bool operator==(const FeedbackConnection& a, const FeedbackConnection& b);

// Line-oriented key=value text with optional [params]/[run]/[feedback]
// section headers and '#' comments. Unknown keys and sections are errors;
// every parse error carries its line number.
RunConfig parse_config(std::string_view text);

// Canonical serialization; parse_config(serialize_config(cfg)) == cfg.
std::string serialize_config(const RunConfig& cfg);

// "w:tau[,w:tau...]" -> connections; used by both the config parser and the
// command line.
std::vector<FeedbackConnection> parse_feedback_pairs(std::string_view text);

}  // namespace nds
