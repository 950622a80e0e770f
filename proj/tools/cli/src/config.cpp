#include "adiclab_cli/config.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace adiclab::cli {

nlohmann::json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (j.is_object() && j.contains("config") && j.contains("provenance")) j = j.at("config");
    if (!j.is_object()) throw UsageError("config file '" + path + "' must hold a JSON object");
    return j;
}

nlohmann::json merge_flags(const nlohmann::json& file, const nlohmann::json& flags, std::ostream& warn) {
    nlohmann::json merged = file.is_object() ? file : nlohmann::json::object();
    for (const auto& [key, value] : flags.items()) {
        if (merged.contains(key) && merged.at(key) != value) {
            warn << "warning: --" << key << " " << value.dump() << " overrides config value " << merged.at(key).dump()
                 << "\n";
        }
        merged[key] = value;
    }
    return merged;
}

std::string config_hash(const nlohmann::json& config) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : config.dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string provenance_line(const nlohmann::json& config) {
    return std::string("# adiclab ") + kToolVersion + " config-hash=" + config_hash(config);
}

nlohmann::json provenance(const nlohmann::json& config) {
    return {{"tool", "adiclab"}, {"version", kToolVersion}, {"config_hash", config_hash(config)}};
}

int precision_from_env() {
    const char* raw = std::getenv("ADICLAB_PRECISION");
    if (raw == nullptr || *raw == '\0') return kDefaultPrecision;
    std::string_view text(raw);
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value < 1 || value > 17) {
        throw UsageError("ADICLAB_PRECISION must be an integer in [1, 17], got '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace adiclab::cli
