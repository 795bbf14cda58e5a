#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pbnn::cli {

enum class Model { Sbnn, Pbnn, Eca };
enum class Command { Simulate, Analyze, Sweep, Emit };

struct RunConfig {
  int n = 6;
  Model model = Model::Sbnn;
  std::optional<int> cn;
  std::optional<int> rn;
  std::optional<std::string> perm;
  /// "+-++-+" or "101101"; x_1 first.
  std::optional<std::string> init;
  std::optional<std::uint64_t> init_index;
  std::uint64_t steps = 16;
  std::filesystem::path out = ".";
  std::string format = "all";  // csv | json | svg | all
  unsigned jobs = 1;
  std::string name = "pbnn";
};

class ConfigError : public std::invalid_argument {
 public:
  enum class Kind {
    Dimension,
    MissingConnection,
    ConnectionOutOfRange,
    MissingRule,
    RuleOutOfRange,
    ConflictingRule,
    MissingPermutation,
    PermutationWithoutPbnn,
    BadPermutation,
    BadInitialState,
    ConflictingInitialState,
    BadFormat,
    BadJobs,
    BadName,
    InfeasibleSweep,
    BadConfigFile,
  };

  ConfigError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Throws ConfigError describing the first inconsistency.
void validate(const RunConfig& config, Command command);

/// Applies "key = value" lines (# comments allowed) onto `config`.
void load_config_file(const std::filesystem::path& path, RunConfig& config);

// Each command validates, writes its files under config.out, prints a
// summary to `out` and returns the process exit code.
int cmd_simulate(const RunConfig& config, std::ostream& out);
int cmd_analyze(const RunConfig& config, std::ostream& out);
int cmd_sweep(const RunConfig& config, std::ostream& out);
int cmd_emit(const RunConfig& config, std::ostream& out);

/// Full command-line entry point.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pbnn::cli
