// Subcommands of the djwalk tool: walk, decide, epsilon, ensemble, mc.
//
// Each command fills an OutputTable whose metadata lists every flag value
// it ran with, so metadata_to_args() can replay the run exactly.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "djwalk/models.hpp"
#include "djwalk/montecarlo.hpp"
#include "djwalk/output_table.hpp"

namespace djwalk::cli {

inline constexpr const char* kVersion = "0.1.0";

struct CommandResult {
  OutputTable table;
  bool assertions_ok = true;  // all internal check columns passed
};

struct WalkOptions {
  int n = 4;
  std::string promise = "constant";  // constant | balanced | epsilon
  int sign = 1;
  double epsilon = 0.0;
  double nu = 1.0;
  bool exact_oracle = false;
  int tail_depth = 4;
};

struct DecideOptions {
  std::string m_range = "1:10";
  std::string nu_range = "0:1:0.1";
  std::string mode = "idealized";  // idealized | exact-n
  long long n = 1000;
};

struct EpsilonOptions {
  double epsilon = 0.1;
  std::string m_range = "100:1000:100";
  double nu = 1.0;
  bool exact_tails = false;
};

struct EnsembleOptions {
  std::string n_list = "100,1000,10000";
  double p = 0.5;
  long long m = 10;
};

struct McOptions {
  std::string strategy = "quantum-dj";  // classical-dj | quantum-dj | classical-eps | quantum-eps
  int n = 100;
  int m = 2;
  double nu = 1.0;
  double epsilon = 0.0;
  std::string truth = "epsilon";  // balanced | epsilon
  long long experiments = 100000;
  std::uint64_t seed = 0;
  std::string sampling = "iid";         // iid | hypergeom
  std::string likelihood = "idealized";  // idealized | exact-n
  bool serial = false;                   // use the serial reference loop
};

CommandResult cmd_walk(const WalkOptions& o);
CommandResult cmd_decide(const DecideOptions& o);
CommandResult cmd_epsilon(const EpsilonOptions& o);
CommandResult cmd_ensemble(const EnsembleOptions& o);
CommandResult cmd_mc(const McOptions& o);

/// "a", "a:b", "a:b:step" (inclusive) or "a,b,c".
std::vector<long long> parse_int_range(const std::string& spec);
std::vector<double> parse_real_range(const std::string& spec);

TrialConfig to_trial_config(const McOptions& o);

/// Rebuilds the argument list (subcommand first) recorded in a table's metadata.
std::vector<std::string> metadata_to_args(const Metadata& meta);

/// Parses and runs one command. Returns 0 on success, 1 if an internal
/// check column failed, 2 on usage or domain errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace djwalk::cli
