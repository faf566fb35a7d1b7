#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>

#include "mixtilt/coxeter.hpp"

namespace mixtilt {

enum class Task { Kl, Tilting, Ic, Invert, Push, Verify };
enum class OutputFormat { Json, Csv, Text };

Task parse_task(std::string_view name);
std::string_view to_string(Task t);
OutputFormat parse_format(std::string_view name);

/// One invocation of the engine. Words use wire labels (see CoxeterDescriptor).
struct JobSpec {
  CoxeterDescriptor system;
  Task task = Task::Verify;
  std::optional<std::string> top;          // truncate to the ideal below this word
  std::optional<std::size_t> max_length;   // or to the ball of this radius
  std::optional<std::pair<std::string, std::string>> pair;  // kl
  /// push: one subset, e.g. "1,2" ("" or "none" for the empty set).
  /// verify: "all" (default), "none", or subsets separated by ';'.
  std::optional<std::string> parabolic;
  OutputFormat format = OutputFormat::Json;
  std::optional<std::filesystem::path> cache_dir;
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitError = 2;

struct RunResult {
  int exit_code = kExitOk;
  std::string output;       // the artifact (stdout)
  std::string diagnostics;  // cache notes, warnings, error records (stderr)
};

/// Never throws: errors become exit code 2 with a JSON error record in
/// diagnostics.
RunResult run(const JobSpec& job);

/// Name of the environment variable holding the default cache directory.
inline constexpr const char* kCacheDirEnv = "MIXTILT_CACHE_DIR";

}  // namespace mixtilt
