#pragma once

// Config-driven experiment runner: executes the requested suite cases,
// writes singular-value and eigenvalue CSVs plus a summary report, and
// grades each case against the built-in decay thresholds.

#include "enplab/config.hpp"

#include <filesystem>
#include <string>

namespace enplab::runner {

struct RunResult {
  int exit_code = 0;                 // 0: all verdicts pass, 3: some verdict failed
  std::filesystem::path output_dir;  // resolved artifact directory
  std::string summary;               // full text of summary.txt
};

// Resolves the output directory (re-rooted under $ENPLAB_OUTPUT_ROOT when
// that is set and the configured path is relative), runs every configured
// case over the ladder, and writes:
//   <CASE>_sv_level<N>.csv   singular values, one column per report + ref
//   K_eigs_level<N>.csv      boundary-operator spectrum (sphere runs,
//                            emit_eigs only)
//   summary.txt              human-readable report + machine block
// Each CSV is read back and checked for exact round-trip after writing.
// Verdicts: compact-target cases need a strictly decreasing tail index
// with the final value below the reference; the non-compact control needs
// its tail index to stay above 0.2x its coarsest value; sphere runs also
// grade the eigenvalue clusters at the finest level. Numeric failures
// propagate as exceptions.
RunResult run(const config::ExperimentConfig& cfg);

}  // namespace enplab::runner
