#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include <json.hpp>

#include "qsl/job_spec.hpp"

namespace qsl {

enum ExitCode { kExitPass = 0, kExitCheckFailure = 1, kExitUsage = 2, kExitInternal = 3 };

struct RunOptions {
  std::optional<std::filesystem::path> cache_dir;
  /// When false every "elapsed" field is null.
  bool timings = true;
  /// Diagnostics that never enter the report (cache hits, warnings).
  std::function<void(const std::string&)> log;
};

struct RunResult {
  nlohmann::ordered_json report;
  int exit_code = kExitPass;
};

/// Executes the tasks of spec in dependency order. A task that throws is
/// recorded with status "error" and the remaining tasks still run.
RunResult run(const JobSpec& spec, const RunOptions& options);

/// Indented rendering of the same document, one value per line.
std::string render_human(const nlohmann::ordered_json& report);

/// The report with every "elapsed" member removed.
nlohmann::ordered_json strip_timings(nlohmann::ordered_json report);

}  // namespace qsl
