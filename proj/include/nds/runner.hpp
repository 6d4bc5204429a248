#pragma once

#include <string>

#include "nds/config.hpp"

namespace nds {

struct RunOutcome {
  int status = 0;     // 0 ok, 2 usage/config error, 1 runtime failure
  std::string error;  // one line, empty on success
};

// Dispatches a resolved RunConfig to the matching command and writes its
// output file. Never throws; failures come back as a non-zero status with a
// one-line machine-parsable message.
RunOutcome run_command(const RunConfig& cfg);

}  // namespace nds
