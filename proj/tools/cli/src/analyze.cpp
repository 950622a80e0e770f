#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "common.hpp"

namespace adiclab::cli {

using detail::json;

namespace {

std::vector<std::uint64_t> parse_checkpoints(const json& value) {
    std::vector<std::uint64_t> cps;
    if (value.is_string()) {
        std::stringstream ss(value.get<std::string>());
        std::string item;
        while (std::getline(ss, item, ',')) cps.push_back(detail::count_of(item, "checkpoints"));
    } else if (value.is_array()) {
        for (const json& v : value) cps.push_back(detail::count_of(v, "checkpoints"));
    } else {
        throw UsageError("--checkpoints must be a list like 10,100,1000");
    }
    try {
        validate_checkpoints(cps);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--checkpoints: ") + e.what());
    }
    return cps;
}

// Powers of ten below `length`, then `length` itself.
std::vector<std::uint64_t> checkpoints_up_to(std::uint64_t length) {
    std::vector<std::uint64_t> cps;
    for (std::uint64_t n = 10; n < length; n *= 10) cps.push_back(n);
    cps.push_back(length);
    return cps;
}

// Reads a digit file, skipping '#' lines and whitespace, and records a
// report at each checkpoint. Checkpoints beyond the file are an error.
ConvergenceTrace analyze_file(const std::string& path, Base base, std::optional<std::vector<std::uint64_t>> cps) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    DigitTally tally(base);
    ConvergenceTrace trace{base, {}, {}};
    std::size_t next = 0;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.front() == '#') continue;
        for (std::size_t col = 0; col < line.size(); ++col) {
            char c = line[col];
            if (c == ' ' || c == '\t' || c == '\r') continue;
            int d = c - '0';
            if (d < 0 || d > 9 || !base.contains(d)) {
                throw UsageError(path + ":" + std::to_string(line_no) + ":" + std::to_string(col + 1) + ": '" +
                                 std::string(1, c) + "' is not a base-" + std::to_string(base.value()) + " digit");
            }
            tally.push(static_cast<Digit>(d));
            if (cps && next < cps->size() && tally.size() == (*cps)[next]) {
                trace.checkpoints.push_back(tally.size());
                trace.reports.push_back(tally.report());
                ++next;
            }
        }
    }
    if (tally.size() == 0) throw UsageError("'" + path + "' holds no digits");
    if (!cps) {
        // The default checkpoints depend on the file length: second pass.
        return analyze_file(path, base, checkpoints_up_to(tally.size()));
    }
    if (next < cps->size()) {
        throw UsageError("checkpoint " + std::to_string((*cps)[next]) + " is past the end of '" + path + "' (" +
                         std::to_string(tally.size()) + " digits)");
    }
    return trace;
}

std::string decimal(const Rational& r, int precision) { return r.to_decimal(precision); }

}  // namespace

json normalize_analyze(const json& raw) {
    detail::check_keys(raw, "analyze",
                       {"base", "format", "precision", "checkpoints", "tol", "in", "mean", "tau", "rational", "block", "length"});
    Base base = detail::base_of(raw);
    json cfg{{"command", "analyze"}, {"base", base.value()}};
    bool inline_source = detail::normalize_source(raw, base, cfg, false);
    if (inline_source == raw.contains("in")) {
        throw UsageError("analyze needs either a digit file (--in) or a constructor (--mean, --tau, --rational, --block)");
    }
    std::optional<std::vector<std::uint64_t>> cps;
    if (raw.contains("checkpoints")) cps = parse_checkpoints(raw.at("checkpoints"));
    if (inline_source) {
        std::uint64_t length = raw.contains("length") ? detail::count_of(raw.at("length"), "length")
                                                      : (cps ? cps->back() : default_checkpoints().back());
        if (length == 0 || length > kMaxLength) {
            throw UsageError("--length must be in [1, " + std::to_string(kMaxLength) + "]");
        }
        if (!cps) cps = raw.contains("length") ? checkpoints_up_to(length) : default_checkpoints();
        if (cps->back() > length) {
            throw UsageError("checkpoint " + std::to_string(cps->back()) + " exceeds --length " + std::to_string(length));
        }
        cfg["length"] = length;
    } else {
        if (raw.contains("length")) throw UsageError("--length applies to constructors; a file is read to its end");
        if (!raw.at("in").is_string()) throw UsageError("--in must be a file path");
        cfg["in"] = raw.at("in");
    }
    if (cps) cfg["checkpoints"] = *cps;
    if (raw.contains("tol")) {
        Rational tol = detail::rational_of(raw.at("tol"), "tol");
        if (tol < Rational(0)) throw UsageError("--tol must be nonnegative");
        cfg["tol"] = tol.str();
    }
    std::string format = raw.value("format", std::string("csv"));
    if (format != "csv" && format != "json" && format != "text") throw UsageError("unknown --format '" + format + "'");
    cfg["format"] = format;
    cfg["precision"] = detail::precision_of(raw);
    return cfg;
}

int cmd_analyze(const json& config, const Io& io) {
    Base base = detail::base_of(config);
    std::optional<std::vector<std::uint64_t>> cps;
    if (config.contains("checkpoints")) cps = config.at("checkpoints").get<std::vector<std::uint64_t>>();

    ConvergenceTrace trace = config.contains("in") ? analyze_file(config.at("in").get<std::string>(), base, cps)
                                                   : convergence_trace(detail::build_source(config), *cps);

    std::optional<NormalityVerdict> verdict;
    if (config.contains("tol")) {
        verdict = weak_normality_verdict(trace.reports.back(), Rational::parse(config.at("tol").get<std::string>()));
    }
    const int precision = config.at("precision").get<int>();
    const std::string format = config.at("format").get<std::string>();

    detail::Artifact art(io, config, format != "json");
    std::ostream& os = art.stream();
    if (format == "csv") {
        os << trace_to_csv(trace, precision);
        if (verdict) {
            io.err << "weak normality at n=" << trace.reports.back().n << ": "
                   << (verdict->consistent ? "consistent" : "inconsistent")
                   << " (max deviation " << decimal(verdict->max_deviation, precision) << ")\n";
        }
    } else if (format == "json") {
        nlohmann::ordered_json doc = detail::document(config);
        doc["trace"] = nlohmann::ordered_json::parse(to_json(trace).dump());
        if (verdict) {
            doc["weak_normality"] = {{"n", trace.reports.back().n},
                                     {"consistent", verdict->consistent},
                                     {"max_deviation", verdict->max_deviation.str()}};
        }
        os << doc.dump(2) << "\n";
    } else {
        for (const FreqReport& r : trace.reports) {
            os << "n=" << r.n << " r_n=" << decimal(r.mean, precision) << " v=(";
            for (std::size_t i = 0; i < r.freqs.size(); ++i) os << (i ? ", " : "") << decimal(r.freqs[i], precision);
            os << ")\n";
        }
        if (verdict) {
            os << "weak normality: " << (verdict->consistent ? "consistent" : "inconsistent")
               << " max deviation " << decimal(verdict->max_deviation, precision) << "\n";
        }
    }
    art.close();
    return kExitOk;
}

}  // namespace adiclab::cli
