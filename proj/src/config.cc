// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sparse_bandit/config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace sparse_bandit {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool is_known(const std::string& key) {
  const auto& keys = known_config_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

double to_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  }
  return value;
}

std::int64_t to_int(const std::string& key, const std::string& text) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  }
  return value;
}

std::uint64_t to_uint(const std::string& key, const std::string& text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + text + "'");
  }
  return value;
}

std::string resolve(const std::string& base_dir, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

// Runs `parse` and rewraps library exceptions so the key shows up.
template <typename Fn>
auto with_key(const std::string& key, Fn parse) {
  try {
    return parse();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

}  // namespace

const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys = {
      "experiment.name",      "experiment.algorithm", "experiment.basis",
      "experiment.horizon",   "experiment.trials",    "experiment.seed",
      "experiment.checkpoints",
      "problem.d",            "problem.H",            "problem.sigma",
      "problem.delta",        "problem.sigma_scale",
      "geometry.kind",        "geometry.radius",      "geometry.p",
      "geometry.lower",       "geometry.upper",       "geometry.matrix_file",
      "geometry.eigen_min",   "geometry.eigen_max",
      "theta.source",         "theta.file",           "theta.gap",
      "theta.style",          "theta.max_magnitude",
      "alpha.source",         "alpha.value",          "alpha.sample_pairs",
      "output.stride",
  };
  return keys;
}

RawConfig parse_config_text(std::string_view text, std::string base_dir) {
  RawConfig raw;
  raw.base_dir = std::move(base_dir);
  std::string section;
  int line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_number;
    const std::string where = "line " + std::to_string(line_number);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) throw ConfigError(where + ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected key = value");
    if (section.empty()) throw ConfigError(where + ": key outside of any [section]");
    const std::string key = section + "." + std::string(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!is_known(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    if (raw.values.count(key) != 0) throw ConfigError(where + ": duplicate key '" + key + "'");
    raw.values[key] = value;
  }
  return raw;
}

RawConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const auto parent = std::filesystem::path(path).parent_path();
  return parse_config_text(buffer.str(), parent.empty() ? "." : parent.string());
}

void set_config_value(RawConfig& raw, const std::string& key, const std::string& value) {
  if (!is_known(key)) throw ConfigError("unknown key '" + key + "'");
  raw.values[key] = value;
}

std::string_view to_string(GapStyle style) {
  return style == GapStyle::kStandard ? "standard" : "adversarial";
}

GapStyle parse_gap_style(std::string_view name) {
  if (name == "standard") return GapStyle::kStandard;
  if (name == "adversarial") return GapStyle::kAdversarial;
  throw ConfigError("unknown gap style: " + std::string(name));
}

ExperimentConfig build_config(const RawConfig& raw) {
  ExperimentConfig cfg;
  for (const auto& [key, value] : raw.values) {
    if (!is_known(key)) throw ConfigError("unknown key '" + key + "'");
  }
  auto get = [&](const std::string& key) -> const std::string* {
    const auto it = raw.values.find(key);
    return it == raw.values.end() ? nullptr : &it->second;
  };
  auto number = [&](const std::string& key, double& out) {
    if (const auto* v = get(key)) out = to_double(key, *v);
  };
  auto integer = [&](const std::string& key, auto& out) {
    if (const auto* v = get(key)) {
      const std::int64_t parsed = to_int(key, *v);
      using Out = std::remove_reference_t<decltype(out)>;
      if (parsed < std::numeric_limits<Out>::min() || parsed > std::numeric_limits<Out>::max()) {
        throw ConfigError(key + ": value out of range");
      }
      out = static_cast<Out>(parsed);
    }
  };

  if (const auto* v = get("experiment.name")) cfg.name = *v;
  if (const auto* v = get("experiment.algorithm")) {
    if (*v == "oracle") {
      cfg.oracle_policy = true;
    } else {
      cfg.mode = with_key("experiment.algorithm", [&] { return parse_algorithm_mode(*v); });
    }
  }
  if (const auto* v = get("experiment.basis")) {
    cfg.basis = with_key("experiment.basis", [&] { return parse_basis_kind(*v); });
  }
  integer("experiment.horizon", cfg.horizon);
  integer("experiment.trials", cfg.trials);
  if (const auto* v = get("experiment.seed")) cfg.seed = to_uint("experiment.seed", *v);
  if (const auto* v = get("experiment.checkpoints")) {
    std::stringstream list(*v);
    std::string item;
    while (std::getline(list, item, ',')) {
      cfg.checkpoints.push_back(to_int("experiment.checkpoints", std::string(trim(item))));
    }
  }

  integer("problem.d", cfg.d);
  integer("problem.H", cfg.h);
  number("problem.sigma", cfg.sigma);
  number("problem.delta", cfg.delta);
  number("problem.sigma_scale", cfg.sigma_scale);

  if (const auto* v = get("geometry.kind")) {
    cfg.geometry = with_key("geometry.kind", [&] { return parse_geometry_kind(*v); });
  }
  number("geometry.radius", cfg.radius);
  number("geometry.p", cfg.p);
  number("geometry.lower", cfg.lower);
  number("geometry.upper", cfg.upper);
  if (const auto* v = get("geometry.matrix_file")) cfg.matrix_file = resolve(raw.base_dir, *v);
  number("geometry.eigen_min", cfg.eigen_min);
  number("geometry.eigen_max", cfg.eigen_max);

  if (const auto* v = get("theta.source")) {
    if (*v == "uniform") {
      cfg.theta_source = ThetaSource::kUniform;
    } else if (*v == "file") {
      cfg.theta_source = ThetaSource::kFile;
    } else if (*v == "gap_controlled") {
      cfg.theta_source = ThetaSource::kGapControlled;
    } else {
      throw ConfigError("theta.source: unknown value '" + *v + "'");
    }
  }
  if (const auto* v = get("theta.file")) cfg.theta_file = resolve(raw.base_dir, *v);
  number("theta.gap", cfg.theta_gap);
  if (const auto* v = get("theta.style")) cfg.theta_style = parse_gap_style(*v);
  number("theta.max_magnitude", cfg.theta_max_magnitude);

  if (const auto* v = get("alpha.source")) {
    if (*v == "auto") {
      cfg.alpha_source = AlphaSource::kAuto;
    } else if (*v == "one") {
      cfg.alpha_source = AlphaSource::kOne;
    } else if (*v == "exhaustive") {
      cfg.alpha_source = AlphaSource::kExhaustive;
    } else if (*v == "value") {
      cfg.alpha_source = AlphaSource::kValue;
    } else {
      throw ConfigError("alpha.source: unknown value '" + *v + "'");
    }
  }
  number("alpha.value", cfg.alpha_value);
  integer("alpha.sample_pairs", cfg.ratio_sample_pairs);
  integer("output.stride", cfg.output_stride);

  validate(cfg);
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("experiment.trials must be at least 1");
  if (cfg.horizon < 1) throw ConfigError("experiment.horizon must be at least 1");
  for (const std::int64_t t : cfg.checkpoints) {
    if (t < 1 || t > cfg.horizon) throw ConfigError("experiment.checkpoints must lie in [1, horizon]");
  }
  if (!std::is_sorted(cfg.checkpoints.begin(), cfg.checkpoints.end())) {
    throw ConfigError("experiment.checkpoints must be in increasing order");
  }
  if (cfg.d < 1) throw ConfigError("problem.d must be positive");
  if (cfg.h < 1 || cfg.h > cfg.d) throw ConfigError("problem.H must lie in [1, d]");
  if (cfg.sigma < 0.0) throw ConfigError("problem.sigma must be non-negative");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw ConfigError("problem.delta must lie in (0, 1)");
  if (cfg.sigma_scale < 0.0) throw ConfigError("problem.sigma_scale must be non-negative");
  if (!(cfg.radius > 0.0)) throw ConfigError("geometry.radius must be positive");
  if (cfg.geometry == GeometryKind::kLpBall && !(cfg.p > 1.0 && cfg.p <= 2.0)) {
    throw ConfigError("geometry.p must lie in (1, 2]");
  }
  if (cfg.geometry == GeometryKind::kHypercube &&
      !(cfg.lower <= 0.0 && cfg.upper >= 0.0 && cfg.lower < cfg.upper)) {
    throw ConfigError("geometry bounds must satisfy lower <= 0 <= upper, lower < upper");
  }
  if (cfg.geometry == GeometryKind::kEllipsoid && cfg.matrix_file.empty() &&
      !(cfg.eigen_min > 0.0 && cfg.eigen_min <= cfg.eigen_max && cfg.eigen_max <= 1.0)) {
    throw ConfigError("geometry eigenvalue range must satisfy 0 < eigen_min <= eigen_max <= 1");
  }
  if (cfg.theta_source == ThetaSource::kFile && cfg.theta_file.empty()) {
    throw ConfigError("theta.source = file needs theta.file");
  }
  if (cfg.theta_source == ThetaSource::kGapControlled) {
    if (!(cfg.theta_gap > 0.0)) throw ConfigError("theta.gap must be positive");
    if (cfg.h >= cfg.d) throw ConfigError("gap-controlled theta needs H < d");
  }
  if (cfg.alpha_source == AlphaSource::kExhaustive && cfg.d > 10) {
    throw ConfigError("alpha.source = exhaustive needs d <= 10");
  }
  if (!(cfg.alpha_value > 0.0 && cfg.alpha_value <= 1.0)) {
    throw ConfigError("alpha.value must lie in (0, 1]");
  }
  if (cfg.ratio_sample_pairs < 1) throw ConfigError("alpha.sample_pairs must be positive");
  if (cfg.output_stride < 1) throw ConfigError("output.stride must be at least 1");
}

}  // namespace sparse_bandit
