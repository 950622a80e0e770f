#pragma once

// Helpers shared by the command implementations. Not installed.

#include <fstream>
#include <initializer_list>
#include <memory>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "adiclab/adiclab.hpp"
#include "adiclab_cli/commands.hpp"
#include "adiclab_cli/config.hpp"

namespace adiclab::cli::detail {

using json = nlohmann::json;

/// Throws UsageError if `raw` holds a key outside `allowed` or names a
/// different command.
void check_keys(const json& raw, const char* command, std::initializer_list<const char*> allowed);

Base base_of(const json& raw);
Rational rational_of(const json& value, const std::string& key);
std::uint64_t count_of(const json& value, const std::string& key);
int precision_of(const json& raw);

/// "a,b,c" or an array of rationals -> array of "p/q" strings.
json canonical_tau(const json& value, Base base, const std::string& key = "tau");
/// Block config object, inline JSON text or a path to a JSON file.
json canonical_block(const json& value, Base base);

/// Exactly one of mean / tau / rational / block (or none if !required).
/// Copies the canonical form of the chosen source into `out`.
bool normalize_source(const json& raw, Base base, json& out, bool required);
DigitStream build_source(const json& config);
std::string describe_source(const json& config);

/// stdout or a file, with the provenance header for files.
class Artifact {
public:
    Artifact(const Io& io, const json& config, bool header);
    std::ostream& stream() { return file_ ? *file_ : io_.out; }
    bool is_file() const { return file_ != nullptr; }
    void close();

private:
    const Io& io_;
    std::unique_ptr<std::ofstream> file_;
};

/// Writes {"provenance", "config"} to `<out>.json`.
void write_sidecar(const std::string& out_path, const json& config);

/// provenance, config, then the payload members, in that order.
nlohmann::ordered_json document(const json& config);

}  // namespace adiclab::cli::detail
