#pragma once

// Human-readable scenario configs: one `key = value` per line, `#` starts a
// comment. The schema is documented in docs/scenarios.md.

#include <cstdint>
#include <filesystem>
#include <string>

#include "caft/scm.hpp"

namespace caft {

struct ConfigFile {
  ScmConfig config;
  std::size_t n_obs = 100000;
  std::uint64_t seed = 1;
};

ConfigFile parse_config(const std::string& text);
ConfigFile load_config(const std::filesystem::path& path);

/// Canonical text of a config. `parse_config(to_config_text(c))` yields c.
std::string to_config_text(const ScmConfig& config);

/// FNV-1a 64 of the canonical text, as 16 hex digits.
std::string config_hash(const ScmConfig& config);
std::string text_hash(const std::string& text);

}  // namespace caft
