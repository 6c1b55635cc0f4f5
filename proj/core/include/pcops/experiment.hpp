#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pcops/iteration.hpp"
#include "pcops/methods.hpp"
#include "pcops/verification.hpp"

namespace pcops {

/// Process exit statuses of `pcops run`.
namespace exit_status {
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kNumericError = 3;
inline constexpr int kIoError = 4;
}  // namespace exit_status

/// Claims a config may request. "small-o" produces both the hard-bound and
/// the trend check.
inline const std::vector<std::string>& known_check_names() {
  static const std::vector<std::string> names = {
      claim::kDefinition, claim::kNuEstimate,   claim::kMonotoneDecrease, claim::kRateBound,
      "small-o",          claim::kProxInclusion};
  return names;
}

/// Starting point drawn from the run seed: N(0, radius^2) coordinates.
struct RandomStart {
  double radius = kDefaultSampleRadius;
};

struct ExperimentConfig {
  /// Stem for output files.
  std::string name = "experiment";
  MethodSpec method = method::Identity{1};
  std::variant<Point, RandomStart> start = RandomStart{};
  std::size_t iterations = 1000;
  double stop_tol = 0.0;
  std::uint64_t seed = 0;
  /// Canonical check names from known_check_names().
  std::vector<std::string> checks;
  std::size_t pairs = 10'000;
  std::size_t samples = 1'000;
  std::optional<std::filesystem::path> output_dir;
  bool write_csv = true;
  bool write_json = true;
  /// FNV-1a 64 of the raw config text, hex.
  std::string config_hash;
};

/// Parses and fully validates a JSON experiment document: every parameter
/// window is checked (by building the method) and unknown check names are
/// rejected. Throws ConfigError with the field path and, when it can be
/// located, the line.
ExperimentConfig parse_config(std::string_view text, std::string name = "experiment");
ExperimentConfig load_config(const std::filesystem::path& path);

/// 64-bit FNV-1a, lowercase hex.
std::string fnv1a_hex(std::string_view bytes);

struct RunOptions {
  std::optional<std::filesystem::path> out_dir;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  std::ostream* out = nullptr;  // defaults to std::cout
  std::ostream* err = nullptr;  // defaults to std::cerr
  /// Timestamp source for the report's generated_at field.
  std::function<std::string()> clock;
};

struct ExperimentResult {
  IterationTrace trace;
  std::optional<FixedPointRef> reference;
  VerificationReport report;
  Certificate certificate = Certificate::nonexpansive();
  std::string method;
  std::vector<std::filesystem::path> written;
  int status = exit_status::kOk;
};

/// Output directory precedence: options.out_dir, config output.dir,
/// $PCOPS_OUT, then "pcops_out".
std::filesystem::path resolve_output_dir(const ExperimentConfig& config, const RunOptions& options);

/// Runs the experiment and writes traces and the report. NumericError and
/// IoError propagate.
ExperimentResult execute(const ExperimentConfig& config, const RunOptions& options);

/// 0 when every check passed, 1 otherwise.
int status_for(const VerificationReport& report);

std::string report_to_json(const VerificationReport& report, const ExperimentResult& result,
                           std::string_view generated_at);

/// Runs a config file end to end, printing diagnostics, and returns the exit status.
int run_experiment_file(const std::filesystem::path& path, const RunOptions& options);
int run_experiment(const ExperimentConfig& config, const RunOptions& options);

}  // namespace pcops
