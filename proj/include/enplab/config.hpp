#pragma once

// JSON experiment configuration: strict schema validation with
// line-precise error messages, rejected before any computation starts.

#include "enplab/spectra.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace enplab::config {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string experiment;
  std::string metric;  // planar metric name; required when a planar case is listed
  double alpha = 0.5;
  double grid_half_width = 4.0;
  double sphere_radius = 1.0;
  double lambda = 1.0;
  double mu = 1.0;
  std::vector<int> ladder;
  std::vector<spectra::SuiteCase> cases;
  double cluster_radius = 0.05;
  std::string output_dir;
  std::uint64_t seed = 0;
  bool emit_eigs = true;
  std::string notes;  // free text echoed into the summary

  bool has_planar_case() const;
  bool has_sphere_case() const;
  spectra::SuiteConfig suite() const;
};

// Parses and validates; `origin` names the source in error messages.
ExperimentConfig parse_config(const std::string& text, const std::string& origin);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace enplab::config
