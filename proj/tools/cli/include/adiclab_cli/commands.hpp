#pragma once

/**
 * @file commands.hpp
 * @brief The construct / analyze / dimension / verify subcommands.
 *
 * Each command takes a raw configuration (file merged with flags), checks
 * and normalizes it, and writes its artifact. Exit status: 0 success, 1 a
 * check failed, 2 usage or configuration error.
 */

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace adiclab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct Io {
    std::ostream& out;
    std::ostream& err;
    /// Artifact path; stdout when empty. Files get a provenance header, and
    /// construct also writes `<path>.json` with the effective config.
    std::optional<std::string> out_path;
};

// Normalizers throw UsageError with a message naming the offending key.
nlohmann::json normalize_construct(const nlohmann::json& raw);
nlohmann::json normalize_analyze(const nlohmann::json& raw);
nlohmann::json normalize_dimension(const nlohmann::json& raw);
nlohmann::json normalize_verify(const nlohmann::json& raw);

// Commands take a normalized config.
int cmd_construct(const nlohmann::json& config, const Io& io);
int cmd_analyze(const nlohmann::json& config, const Io& io);
int cmd_dimension(const nlohmann::json& config, const Io& io);
int cmd_verify(const nlohmann::json& config, const Io& io);

struct CheckResult {
    std::string name;
    std::string module;
    nlohmann::json parameters;
    nlohmann::json observed;
    bool pass = false;
};

std::vector<std::string> verify_modules();

/// Runs every check of the named modules; results sorted by name.
std::vector<CheckResult> run_checks(const std::vector<std::string>& modules);

/// Full command line: parsing, config merge, dispatch, error reporting.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace adiclab::cli
