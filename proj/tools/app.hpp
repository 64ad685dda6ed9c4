#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "glv/control.hpp"
#include "glv/core.hpp"
#include "glv/integrator.hpp"
#include "glv/sync.hpp"

namespace glv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDivergence = 3;
inline constexpr int kExitCondition = 4;

/// Everything needed to reproduce one run. Serialized as flat key = value
/// lines grouped under [run], [params], [integration], [initial], [control],
/// [sync] and [lyapunov].
struct RunConfig {
  std::string command = "simulate";
  ModelKind model = ModelKind::Linear;
  std::string out;  // empty: CSV to stdout
  std::string format = "csv";

  SystemParams params = kReferenceParams;
  IntegrationConfig integration;

  State3 x0 = kReferenceInitial;
  std::optional<State3> x0b;
  std::array<double, 2> response_x0{1.0, 1.414};
  std::array<double, 2> estimates_x0{3.9, 4.0};

  FeedbackGains feedback_gains{10.0, 5.0, 5.0};
  std::optional<State3> target;  // X1* = (1, 1 + r, 0) when unset

  SyncGains sync_gains;
  UpdateLaw update_law = UpdateLaw::Lyapunov;

  double renorm_interval = 1.0;
  bool coupled = false;

  /// Defaults for a subcommand (integration horizon, gains, initial data).
  [[nodiscard]] static RunConfig defaults(std::string_view command);
  [[nodiscard]] static RunConfig parse(std::string_view text);
  [[nodiscard]] static RunConfig load(const std::string& path);
  [[nodiscard]] std::string serialize() const;
  /// Throws ConfigError on inconsistent settings.
  void validate() const;

  [[nodiscard]] State3 resolved_target() const;
};

[[nodiscard]] const std::vector<std::string>& command_names();

/// Runs one configured command. CSV goes to `out` (or the configured file),
/// the summary to `summary`, warnings to `diag`. Returns an exit code.
int execute(const RunConfig& config, std::ostream& out, std::ostream& summary, std::ostream& diag);

/// Full command-line entry point (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace glv::cli
