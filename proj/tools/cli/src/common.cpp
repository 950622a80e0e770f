#include "common.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace adiclab::cli::detail {

void check_keys(const json& raw, const char* command, std::initializer_list<const char*> allowed) {
    if (!raw.is_object()) throw UsageError("configuration must be a JSON object");
    for (const auto& [key, value] : raw.items()) {
        if (key == "command") {
            if (!value.is_string() || value.get<std::string>() != command) {
                throw UsageError("config is for command " + value.dump() + ", not '" + command + "'");
            }
            continue;
        }
        bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; });
        if (!known) throw UsageError("'" + key + "' is not a setting of '" + command + "'");
    }
}

Base base_of(const json& raw) {
    if (!raw.contains("base")) return Base();
    const json& b = raw.at("base");
    if (!b.is_number_integer()) throw UsageError("--base must be an integer, got " + b.dump());
    try {
        return Base(b.get<int>());
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--base: ") + e.what());
    }
}

Rational rational_of(const json& value, const std::string& key) {
    try {
        if (value.is_string()) return Rational::parse(value.get<std::string>());
        if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
        // Floats go through their shortest round-trip text, read exactly.
        if (value.is_number_float()) return Rational::parse(value.dump());
    } catch (const std::exception& e) {
        throw UsageError("--" + key + ": " + e.what());
    }
    throw UsageError("--" + key + " must be a rational such as \"3/2\" or 1.5, got " + value.dump());
}

std::uint64_t count_of(const json& value, const std::string& key) {
    if (value.is_number_unsigned()) return value.get<std::uint64_t>();
    if (value.is_number_integer() && value.get<std::int64_t>() >= 0) return value.get<std::uint64_t>();
    if (value.is_string()) {
        Rational r = rational_of(value, key);
        if (r.is_integer() && r >= Rational(0) && r.num() <= BigInt(std::numeric_limits<std::uint64_t>::max())) {
            return r.num().convert_to<std::uint64_t>();
        }
    }
    throw UsageError("--" + key + " must be a nonnegative integer, got " + value.dump());
}

int precision_of(const json& raw) {
    if (!raw.contains("precision")) return kDefaultPrecision;
    const json& p = raw.at("precision");
    if (!p.is_number_integer() || p.get<int>() < 1 || p.get<int>() > 17) {
        throw UsageError("precision must be an integer in [1, 17], got " + p.dump());
    }
    return p.get<int>();
}

json canonical_tau(const json& value, Base base, const std::string& key) {
    std::vector<Rational> entries;
    if (value.is_string()) {
        std::stringstream ss(value.get<std::string>());
        std::string item;
        while (std::getline(ss, item, ',')) entries.push_back(rational_of(item, key));
    } else if (value.is_array()) {
        for (const json& v : value) entries.push_back(rational_of(v, key));
    } else {
        throw UsageError("--" + key + " must be a list like 1/2,1/2,0,0");
    }
    if (entries.size() != static_cast<std::size_t>(base.value())) {
        throw UsageError("--" + key + " has " + std::to_string(entries.size()) + " entries but --base is " +
                         std::to_string(base.value()));
    }
    try {
        ProbabilityVector tau(entries);
        json out = json::array();
        for (const Rational& r : tau.entries()) out.push_back(r.str());
        return out;
    } catch (const std::invalid_argument& e) {
        throw UsageError("--" + key + ": " + e.what());
    }
}

json canonical_block(const json& value, Base base) {
    json doc = value;
    if (value.is_string()) {
        std::string text = value.get<std::string>();
        std::size_t first = text.find_first_not_of(" \t\r\n");
        try {
            if (first != std::string::npos && text[first] == '{') {
                doc = json::parse(text);
            } else {
                std::ifstream in(text);
                if (!in) throw UsageError("--block: cannot open '" + text + "'");
                doc = json::parse(in);
            }
        } catch (const json::parse_error& e) {
            throw UsageError(std::string("--block: invalid JSON: ") + e.what());
        }
    }
    try {
        BlockConfig cfg = BlockConfig::from_json(doc);
        if (cfg.columns.base() != base) {
            throw UsageError("--block columns have " + std::to_string(cfg.columns.base().value()) +
                             " entries but --base is " + std::to_string(base.value()));
        }
        ScheduleValidation v = validate_schedule(cfg.schedule);
        if (!v.accepted) {
            const ScheduleCondition* f = v.failure();
            throw UsageError("--block: schedule " + cfg.schedule.describe() + " rejected: condition " +
                             std::to_string(f->number) + " fails (" + f->statement + "): " + f->reason);
        }
        return cfg.to_json();
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--block: ") + e.what());
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("--block: ") + e.what());
    }
}

bool normalize_source(const json& raw, Base base, json& out, bool required) {
    const char* keys[] = {"mean", "tau", "rational", "block"};
    std::vector<std::string> present;
    for (const char* k : keys) {
        if (raw.contains(k)) present.emplace_back(k);
    }
    if (present.size() > 1) {
        throw UsageError("give one constructor, not --" + present[0] + " and --" + present[1]);
    }
    if (present.empty()) {
        if (required) throw UsageError("choose a constructor: --mean, --tau, --rational or --block");
        return false;
    }
    const std::string& k = present[0];
    const json& v = raw.at(k);
    if (k == "mean") {
        Rational theta = rational_of(v, k);
        if (theta < Rational(0) || theta > Rational(base.max_digit())) {
            throw UsageError("--mean " + theta.str() + " is outside [0, " + std::to_string(base.max_digit()) + "]");
        }
        out["mean"] = theta.str();
    } else if (k == "tau") {
        out["tau"] = canonical_tau(v, base);
    } else if (k == "rational") {
        Rational x = rational_of(v, k);
        if (x < Rational(0) || x > Rational(1)) throw UsageError("--rational " + x.str() + " is outside [0, 1]");
        out["rational"] = x.str();
    } else {
        out["block"] = canonical_block(v, base);
    }
    return true;
}

DigitStream build_source(const json& config) {
    Base base = base_of(config);
    if (config.contains("mean")) return mean_target_stream(Rational::parse(config.at("mean").get<std::string>()), base);
    if (config.contains("tau")) {
        std::vector<Rational> entries;
        for (const json& v : config.at("tau")) entries.push_back(Rational::parse(v.get<std::string>()));
        return greedy_stream(ProbabilityVector(entries));
    }
    if (config.contains("rational")) return expand(Rational::parse(config.at("rational").get<std::string>()), base);
    BlockConfig cfg = BlockConfig::from_json(config.at("block"));
    return block_stream(cfg.columns, cfg.schedule);
}

std::string describe_source(const json& config) {
    for (const char* k : {"mean", "tau", "rational", "block"}) {
        if (config.contains(k)) return std::string(k) + " " + config.at(k).dump();
    }
    return "input " + config.value("in", std::string("?"));
}

Artifact::Artifact(const Io& io, const json& config, bool header) : io_(io) {
    if (io.out_path) {
        file_ = std::make_unique<std::ofstream>(*io.out_path, std::ios::binary | std::ios::trunc);
        if (!*file_) throw UsageError("cannot write '" + *io.out_path + "'");
        if (header) *file_ << provenance_line(config) << "\n";
    }
}

void Artifact::close() {
    if (file_) {
        file_->close();
        if (!*file_) throw std::runtime_error("failed writing '" + *io_.out_path + "'");
    } else {
        io_.out.flush();
    }
}

void write_sidecar(const std::string& out_path, const json& config) {
    std::ofstream side(out_path + ".json", std::ios::binary | std::ios::trunc);
    if (!side) throw UsageError("cannot write '" + out_path + ".json'");
    nlohmann::ordered_json doc = document(config);
    side << doc.dump(2) << "\n";
}

nlohmann::ordered_json document(const json& config) {
    nlohmann::ordered_json doc;
    doc["provenance"] = nlohmann::ordered_json::parse(provenance(config).dump());
    doc["config"] = nlohmann::ordered_json::parse(config.dump());
    return doc;
}

}  // namespace adiclab::cli::detail
