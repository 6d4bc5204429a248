// Command-line front end: every experiment in the lab behind one binary.
//
//   nds_lab simulate --steps 10000 --out traj.csv
//   nds_lab eigen --out eigen.csv
//   nds_lab stabilize --feedback 0.2:4 --out locked.csv
//
// A config file (--config) supplies the same keys as the flags; flags win.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nds/config.hpp"
#include "nds/csv.hpp"
#include "nds/runner.hpp"

namespace {

struct CliArgs {
  std::string config_path;
  std::string out;
  std::string feedback;
  std::string mode;
  std::string init;
  std::vector<std::string> params;
  std::uint64_t steps = 0;
  std::uint64_t onset = 0;
  std::uint64_t seed = 0;
  std::uint64_t runs = 0;
  std::uint64_t renorm_interval = 0;
  double ts = 0.0;
  double separation = 0.0;
  int setup = 0;
  bool has_steps = false, has_onset = false, has_seed = false, has_runs = false,
       has_interval = false, has_ts = false, has_separation = false,
       has_setup = false;
};

void add_common(CLI::App* cmd, CliArgs& args) {
  cmd->add_option("--config", args.config_path, "config file (key=value lines)");
  cmd->add_option("--setup", args.setup, "parameter setup id (1..15)")
      ->check(CLI::Range(1, 15))
      ->each([&args](const std::string&) { args.has_setup = true; });
  cmd->add_option("--seed", args.seed, "experiment seed")
      ->each([&args](const std::string&) { args.has_seed = true; });
  cmd->add_option("--steps", args.steps, "simulation steps")
      ->each([&args](const std::string&) { args.has_steps = true; });
  cmd->add_option("--onset", args.onset, "feedback onset step")
      ->each([&args](const std::string&) { args.has_onset = true; });
  cmd->add_option("--out", args.out, "output CSV path");
  cmd->add_option("--init", args.init, "initial state x,y,u");
  cmd->add_option("--param", args.params,
                  "parameter override KEY=VALUE (a,v,b,c,d,k,theta,eta0)");
}

nds::RunConfig build_config(const std::string& command, const CliArgs& args) {
  nds::RunConfig cfg;
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path, std::ios::binary);
    if (!in) {
      throw nds::ConfigError("cannot open config file '" + args.config_path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    cfg = nds::parse_config(text.str());
  }
  if (cfg.command && *cfg.command != command) {
    throw nds::ConfigError("config file names command '" + *cfg.command +
                           "' but '" + command + "' was invoked");
  }
  cfg.command = command;

  // flags override the config file; route overrides through the parser so
  // validation and range warnings apply uniformly
  std::ostringstream overrides;
  if (args.has_setup) overrides << "setup=" << args.setup << "\n";
  for (const auto& kv : args.params) overrides << kv << "\n";
  if (args.has_steps) overrides << "steps=" << args.steps << "\n";
  if (args.has_onset) overrides << "onset=" << args.onset << "\n";
  if (args.has_seed) overrides << "seed=" << args.seed << "\n";
  if (args.has_runs) overrides << "runs=" << args.runs << "\n";
  if (args.has_interval) overrides << "renorm_interval=" << args.renorm_interval << "\n";
  if (args.has_ts) overrides << "ts=" << nds::format_full(args.ts) << "\n";
  if (args.has_separation)
    overrides << "separation=" << nds::format_full(args.separation) << "\n";
  if (!args.mode.empty()) overrides << "mode=" << args.mode << "\n";
  if (!args.init.empty()) overrides << "init=" << args.init << "\n";
  if (!args.feedback.empty()) overrides << "pairs=" << args.feedback << "\n";
  if (!args.out.empty()) overrides << "out=" << args.out << "\n";

  nds::RunConfig flag_cfg;
  try {
    flag_cfg = nds::parse_config(overrides.str());
  } catch (const nds::ConfigError& e) {
    // flag values share the config grammar; line numbers mean nothing here
    std::string message = e.what();
    if (const auto colon = message.find(": "); message.rfind("line ", 0) == 0 &&
                                               colon != std::string::npos) {
      message = message.substr(colon + 2);
    }
    throw nds::ConfigError(message);
  }
  if (flag_cfg.setup) cfg.setup = flag_cfg.setup;
  if (flag_cfg.a) cfg.a = flag_cfg.a;
  if (flag_cfg.v) cfg.v = flag_cfg.v;
  if (flag_cfg.b) cfg.b = flag_cfg.b;
  if (flag_cfg.c) cfg.c = flag_cfg.c;
  if (flag_cfg.d) cfg.d = flag_cfg.d;
  if (flag_cfg.k) cfg.k = flag_cfg.k;
  if (flag_cfg.theta) cfg.theta = flag_cfg.theta;
  if (flag_cfg.eta0) cfg.eta0 = flag_cfg.eta0;
  if (flag_cfg.steps) cfg.steps = flag_cfg.steps;
  if (flag_cfg.onset) cfg.onset = flag_cfg.onset;
  if (flag_cfg.seed) cfg.seed = flag_cfg.seed;
  if (flag_cfg.runs) cfg.runs = flag_cfg.runs;
  if (flag_cfg.renorm_interval) cfg.renorm_interval = flag_cfg.renorm_interval;
  if (flag_cfg.ts) cfg.ts = flag_cfg.ts;
  if (flag_cfg.separation) cfg.separation = flag_cfg.separation;
  if (flag_cfg.mode) cfg.mode = flag_cfg.mode;
  if (flag_cfg.init) cfg.init = flag_cfg.init;
  if (flag_cfg.out) cfg.out = flag_cfg.out;
  if (!flag_cfg.feedback.empty()) cfg.feedback = flag_cfg.feedback;
  for (const auto& w : flag_cfg.warnings) cfg.warnings.push_back(w);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laboratory for the NDS chaotic spiking neuron"};
  app.require_subcommand(1);

  CliArgs args;
  const char* commands[] = {"simulate",  "fixed-points", "eigen",
                            "sweep",     "capacity",     "rossler",
                            "lyapunov",  "stabilize"};
  const char* descriptions[] = {
      "run the neuron and write the trajectory",
      "fixed-point coordinates for the built-in setups",
      "fixed-point eigenvalues and classifications",
      "validity range sweep over the parameter grids",
      "randomized stabilization capacity experiment",
      "Rossler trajectories (continuous | euler | modified)",
      "largest Lyapunov exponent estimate",
      "delayed-feedback stabilization run"};

  for (int i = 0; i < 8; ++i) {
    CLI::App* cmd = app.add_subcommand(commands[i], descriptions[i]);
    add_common(cmd, args);
    if (std::string(commands[i]) == "stabilize") {
      cmd->add_option("--feedback", args.feedback, "w:tau[,w:tau...]");
    }
    if (std::string(commands[i]) == "rossler") {
      cmd->add_option("--mode", args.mode, "continuous | euler | modified");
      cmd->add_option("--ts", args.ts, "time step")
          ->each([&args](const std::string&) { args.has_ts = true; });
    }
    if (std::string(commands[i]) == "capacity") {
      cmd->add_option("--runs", args.runs, "runs per experiment")
          ->each([&args](const std::string&) { args.has_runs = true; });
    }
    if (std::string(commands[i]) == "lyapunov") {
      cmd->add_option("--renorm-interval", args.renorm_interval,
                      "steps between renormalizations")
          ->each([&args](const std::string&) { args.has_interval = true; });
      cmd->add_option("--separation", args.separation, "renormalized separation")
          ->each([&args](const std::string&) { args.has_separation = true; });
    }
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    const nds::RunConfig cfg = build_config(command, args);
    for (const auto& w : cfg.warnings) {
      std::fprintf(stderr, "warning: %s\n", w.c_str());
    }
    const nds::RunOutcome outcome = nds::run_command(cfg);
    if (outcome.status != 0) {
      std::fprintf(stderr, "%s\n", outcome.error.c_str());
    }
    return outcome.status;
  } catch (const nds::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
