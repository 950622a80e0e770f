#include <string>

#include "common.hpp"

namespace adiclab::cli {

using detail::json;

json normalize_construct(const json& raw) {
    detail::check_keys(raw, "construct", {"base", "length", "mean", "tau", "rational", "block", "format"});
    Base base = detail::base_of(raw);
    json cfg{{"command", "construct"}, {"base", base.value()}};
    detail::normalize_source(raw, base, cfg, true);
    if (!raw.contains("length")) throw UsageError("construct needs --length");
    std::uint64_t length = detail::count_of(raw.at("length"), "length");
    if (length == 0 || length > kMaxLength) {
        throw UsageError("--length must be in [1, " + std::to_string(kMaxLength) + "], got " + std::to_string(length));
    }
    cfg["length"] = length;
    std::string format = raw.value("format", std::string("text"));
    if (format != "text" && format != "json") {
        throw UsageError("construct writes --format text or json, not '" + format + "'");
    }
    cfg["format"] = format;
    if (base.value() > Base::kMaxSerializable) {
        throw UsageError("--base " + std::to_string(base.value()) + " has no single-character digit form (max " +
                         std::to_string(Base::kMaxSerializable) + ")");
    }
    return cfg;
}

int cmd_construct(const json& config, const Io& io) {
    DigitStream stream = detail::build_source(config);
    const std::uint64_t length = config.at("length").get<std::uint64_t>();
    const bool as_json = config.at("format") == "json";

    detail::Artifact art(io, config, !as_json);
    std::ostream& os = art.stream();
    if (as_json) {
        std::string head = detail::document(config).dump();
        head.pop_back();  // reopen the object for the digits member
        os << head << ",\"digits\":\"";
    }
    DigitCursor cursor = stream.cursor();
    std::string buffer;
    buffer.reserve(1 << 16);
    for (std::uint64_t i = 0; i < length; ++i) {
        buffer.push_back(static_cast<char>('0' + cursor.next()));
        if (buffer.size() == buffer.capacity()) {
            os << buffer;
            buffer.clear();
        }
    }
    os << buffer;
    os << (as_json ? "\"}\n" : "\n");
    art.close();
    if (io.out_path) detail::write_sidecar(*io.out_path, config);
    return kExitOk;
}

}  // namespace adiclab::cli
