#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "kglab/runner/config.hpp"

namespace kglab::runner {

enum ExitCode : int {
  exit_ok = 0,
  exit_verification_failed = 1,
  exit_config_error = 2,
  exit_numerical_abort = 3,
};

const std::vector<std::string>& known_commands();
const char* artifact_version() noexcept;

/**
 * Executes one subcommand and writes manifest.json, summary.json and a
 * table (series.csv or records.csv, plus records.jsonl for verifications)
 * into config.output_dir.  The manifest is written only when the run
 * completed.
 */
int run(const RunConfig& config, std::ostream& log);

}  // namespace kglab::runner
