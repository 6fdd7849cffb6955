#include "enplab/config.hpp"

#include "enplab/elastic.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace enplab::config {

using nlohmann::json;

bool ExperimentConfig::has_planar_case() const {
  return std::any_of(cases.begin(), cases.end(), [](auto c) { return spectra::is_planar(c); });
}

bool ExperimentConfig::has_sphere_case() const {
  return std::any_of(cases.begin(), cases.end(), [](auto c) { return !spectra::is_planar(c); });
}

spectra::SuiteConfig ExperimentConfig::suite() const {
  spectra::SuiteConfig s;
  s.metric = metric;
  s.alpha = alpha;
  s.S = grid_half_width;
  s.ladder = ladder;
  s.lambda = lambda;
  s.mu = mu;
  s.radius = sphere_radius;
  return s;
}

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& msg) {
  throw ConfigError(origin + ": " + msg);
}

// Maps a byte offset from the JSON parser to line:column in the source text.
std::string position(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') { ++line; col = 1; }
    else ++col;
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

double require_number(const json& j, const std::string& key, const std::string& origin) {
  if (!j.at(key).is_number()) fail(origin, "'" + key + "' must be a number");
  return j.at(key).get<double>();
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(origin + ":" + position(text, e.byte), e.what());
  }
  if (!j.is_object()) fail(origin, "top level must be an object");

  static const std::set<std::string> known = {
      "experiment", "metric",         "alpha",      "grid_half_width", "sphere_radius",
      "lame",       "ladder",         "cases",      "cluster_radius",  "output_dir",
      "seed",       "emit_eigs",      "notes"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) fail(origin, "unknown key '" + key + "'");

  ExperimentConfig cfg;
  for (const char* key : {"experiment", "ladder", "cases", "output_dir"})
    if (!j.contains(key)) fail(origin, std::string("missing required key '") + key + "'");

  if (!j["experiment"].is_string()) fail(origin, "'experiment' must be a string");
  cfg.experiment = j["experiment"].get<std::string>();
  if (cfg.experiment.empty()) fail(origin, "'experiment' must not be empty");

  if (!j["output_dir"].is_string()) fail(origin, "'output_dir' must be a string");
  cfg.output_dir = j["output_dir"].get<std::string>();
  if (cfg.output_dir.empty()) fail(origin, "'output_dir' must not be empty");

  if (!j["ladder"].is_array() || j["ladder"].empty())
    fail(origin, "'ladder' must be a non-empty array of integers");
  for (const auto& v : j["ladder"]) {
    if (!v.is_number_integer() || v.get<int>() <= 0)
      fail(origin, "'ladder' entries must be positive integers");
    cfg.ladder.push_back(v.get<int>());
  }
  for (std::size_t i = 1; i < cfg.ladder.size(); ++i)
    if (cfg.ladder[i] <= cfg.ladder[i - 1]) fail(origin, "'ladder' must be strictly increasing");

  if (!j["cases"].is_array() || j["cases"].empty())
    fail(origin, "'cases' must be a non-empty array of case names");
  for (const auto& v : j["cases"]) {
    if (!v.is_string()) fail(origin, "'cases' entries must be strings");
    try {
      cfg.cases.push_back(spectra::parse_case(v.get<std::string>()));
    } catch (const std::invalid_argument& e) {
      fail(origin, e.what());
    }
  }

  if (j.contains("metric")) {
    if (!j["metric"].is_string()) fail(origin, "'metric' must be a string");
    cfg.metric = j["metric"].get<std::string>();
    static const std::set<std::string> metrics = {"flat", "bump_smooth", "bump_holder"};
    if (!metrics.count(cfg.metric)) fail(origin, "unknown metric '" + cfg.metric + "'");
  } else if (cfg.has_planar_case()) {
    fail(origin, "'metric' is required when a planar case is listed");
  }

  if (j.contains("alpha")) {
    cfg.alpha = require_number(j, "alpha", origin);
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) fail(origin, "'alpha' must lie in (0,1)");
  }
  if (j.contains("grid_half_width")) {
    cfg.grid_half_width = require_number(j, "grid_half_width", origin);
    if (!(cfg.grid_half_width > 0.0)) fail(origin, "'grid_half_width' must be positive");
  }
  if (j.contains("sphere_radius")) {
    cfg.sphere_radius = require_number(j, "sphere_radius", origin);
    if (!(cfg.sphere_radius > 0.0)) fail(origin, "'sphere_radius' must be positive");
  }

  if (j.contains("lame")) {
    const json& l = j["lame"];
    if (!l.is_object() || !l.contains("lambda") || !l.contains("mu"))
      fail(origin, "'lame' must be an object with 'lambda' and 'mu'");
    for (const auto& [key, value] : l.items())
      if (key != "lambda" && key != "mu") fail(origin, "unknown key 'lame." + key + "'");
    cfg.lambda = require_number(l, "lambda", origin);
    cfg.mu = require_number(l, "mu", origin);
  }
  try {
    elastic::LameParams probe(cfg.lambda, cfg.mu);
    (void)probe;
  } catch (const std::exception& e) {
    fail(origin, std::string("invalid Lame pair: ") + e.what());
  }

  if (j.contains("cluster_radius")) {
    cfg.cluster_radius = require_number(j, "cluster_radius", origin);
    if (!(cfg.cluster_radius > 0.0)) fail(origin, "'cluster_radius' must be positive");
  }
  const double k0 = elastic::constants(elastic::LameParams(cfg.lambda, cfg.mu)).k0;
  if (!(cfg.cluster_radius < 0.5 * k0))
    fail(origin, "'cluster_radius' must be < k0/2 = " + std::to_string(0.5 * k0) +
                     " for this Lame pair");

  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail(origin, "'seed' must be a non-negative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("emit_eigs")) {
    if (!j["emit_eigs"].is_boolean()) fail(origin, "'emit_eigs' must be a boolean");
    cfg.emit_eigs = j["emit_eigs"].get<bool>();
  }
  if (j.contains("notes")) {
    if (!j["notes"].is_string()) fail(origin, "'notes' must be a string");
    cfg.notes = j["notes"].get<std::string>();
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

}  // namespace enplab::config
