#pragma once

/**
 * @file config.hpp
 * @brief Experiment configuration shared by the adiclab subcommands.
 *
 * A configuration is a flat JSON object whose keys mirror the long flag
 * names ("base", "length", "tau", ...). Config files, flags and the JSON
 * sidecars written next to outputs all use this one form, so a sidecar can
 * be fed back through --config to reproduce a run. The effective
 * configuration is normalized (rationals as "p/q", tau as an array, block
 * configs as objects) before it is hashed or written.
 */

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace adiclab::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kDefaultPrecision = 12;
inline constexpr std::uint64_t kMaxLength = 100000000;

/// Bad flags, bad config files, bad input data. Maps to exit status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads a config file. Accepts a bare config object or a sidecar
/// (`{"provenance": ..., "config": {...}}`).
nlohmann::json load_config_file(const std::string& path);

/// Overlays flag values on file values. Keys present in both keep the flag
/// value; a differing file value produces a warning on `warn`.
nlohmann::json merge_flags(const nlohmann::json& file, const nlohmann::json& flags, std::ostream& warn);

/// 64-bit FNV-1a over the compact serialization, as 16 hex digits.
std::string config_hash(const nlohmann::json& config);

/// "# adiclab <version> config-hash=<hash>"
std::string provenance_line(const nlohmann::json& config);

/// {"tool": "adiclab", "version": ..., "config_hash": ...}
nlohmann::json provenance(const nlohmann::json& config);

/// ADICLAB_PRECISION if set (1..17), else the default. Throws UsageError
/// for malformed values.
int precision_from_env();

}  // namespace adiclab::cli
