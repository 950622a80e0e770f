#include <cmath>
#include <cstdio>
#include <string>

#include "common.hpp"

namespace adiclab::cli {

using detail::json;

namespace {

constexpr double kOracleTolerance = 1e-4;
constexpr double kMaxOraclePoints = 2e8;
constexpr std::uint64_t kMaxSweepPoints = 100000;

std::string number(double x, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    return buf;
}

json parse_sweep(const json& value) {
    Rational from, to, step;
    if (value.is_string()) {
        const std::string text = value.get<std::string>();
        std::size_t a = text.find(':');
        std::size_t b = a == std::string::npos ? a : text.find(':', a + 1);
        if (b == std::string::npos) throw UsageError("--sweep takes from:to:step, e.g. 0:3:1/10");
        from = detail::rational_of(text.substr(0, a), "sweep");
        to = detail::rational_of(text.substr(a + 1, b - a - 1), "sweep");
        step = detail::rational_of(text.substr(b + 1), "sweep");
    } else if (value.is_object() && value.contains("from") && value.contains("to") && value.contains("step")) {
        from = detail::rational_of(value.at("from"), "sweep");
        to = detail::rational_of(value.at("to"), "sweep");
        step = detail::rational_of(value.at("step"), "sweep");
    } else {
        throw UsageError("--sweep takes from:to:step, e.g. 0:3:1/10");
    }
    if (step <= Rational(0)) throw UsageError("--sweep step must be positive");
    if (to < from) throw UsageError("--sweep needs from <= to");
    if (((to - from) / step).floor() + 1 > BigInt(kMaxSweepPoints)) {
        throw UsageError("--sweep would evaluate more than " + std::to_string(kMaxSweepPoints) + " points");
    }
    return {{"from", from.str()}, {"to", to.str()}, {"step", step.str()}};
}

Rational theta_in_range(const json& value, Base base, const std::string& key) {
    Rational theta = detail::rational_of(value, key);
    if (theta < Rational(0) || theta > Rational(base.max_digit())) {
        throw UsageError("--" + key + " " + theta.str() + " is outside [0, " + std::to_string(base.max_digit()) + "]");
    }
    return theta;
}

}  // namespace

json normalize_dimension(const json& raw) {
    detail::check_keys(raw, "dimension", {"base", "format", "precision", "tau", "theta", "oracle", "oracle-step", "sweep"});
    Base base = detail::base_of(raw);
    json cfg{{"command", "dimension"}, {"base", base.value()}, {"precision", detail::precision_of(raw)}};
    const int modes = raw.contains("tau") + raw.contains("theta") + raw.contains("sweep");
    if (modes != 1) throw UsageError("dimension takes exactly one of --tau, --theta, --sweep");

    const bool oracle = raw.contains("oracle") && raw.at("oracle").is_boolean() && raw.at("oracle").get<bool>();
    if (raw.contains("oracle") && !raw.at("oracle").is_boolean()) throw UsageError("oracle must be true or false");
    if (raw.contains("oracle-step") && !oracle) throw UsageError("--oracle-step needs --oracle");
    if (oracle && !raw.contains("theta")) throw UsageError("--oracle applies to --theta");

    std::string default_format = "json";
    if (raw.contains("tau")) {
        cfg["tau"] = detail::canonical_tau(raw.at("tau"), base);
    } else if (raw.contains("theta")) {
        Rational theta = theta_in_range(raw.at("theta"), base, "theta");
        cfg["theta"] = theta.str();
        cfg["oracle"] = oracle;
        if (oracle) {
            if (theta.is_zero() || theta == Rational(base.max_digit())) {
                throw UsageError("--oracle needs an interior --theta; the endpoints are point masses");
            }
            Rational step = raw.contains("oracle-step") ? detail::rational_of(raw.at("oracle-step"), "oracle-step")
                                                        : Rational(1, 1000);
            if (step <= Rational(0) || step > Rational(1, 10)) throw UsageError("--oracle-step must be in (0, 1/10]");
            double points = std::pow(1.0 / step.to_double(), base.value() - 2);
            if (points > kMaxOraclePoints) {
                throw UsageError("grid oracle at step " + step.str() + " in base " + std::to_string(base.value()) +
                                 " needs ~" + number(points, 3) + " points; use a coarser --oracle-step");
            }
            cfg["oracle-step"] = step.str();
        }
    } else {
        json sweep = parse_sweep(raw.at("sweep"));
        theta_in_range(sweep.at("from"), base, "sweep");
        theta_in_range(sweep.at("to"), base, "sweep");
        cfg["sweep"] = sweep;
        default_format = "csv";
    }
    std::string format = raw.value("format", default_format);
    const bool ok = cfg.contains("sweep") ? (format == "csv" || format == "json") : (format == "json" || format == "text");
    if (!ok) throw UsageError("--format " + format + " is not available for this dimension mode");
    cfg["format"] = format;
    return cfg;
}

int cmd_dimension(const json& config, const Io& io) {
    Base base = detail::base_of(config);
    const int precision = config.at("precision").get<int>();
    const std::string format = config.at("format").get<std::string>();
    int status = kExitOk;

    detail::Artifact art(io, config, format != "json");
    std::ostream& os = art.stream();
    nlohmann::ordered_json doc = detail::document(config);

    if (config.contains("tau")) {
        std::vector<Rational> entries;
        for (const json& v : config.at("tau")) entries.push_back(Rational::parse(v.get<std::string>()));
        double dim = be_dimension(ProbabilityVector(entries));
        if (format == "json") {
            doc["tau"] = config.at("tau");
            doc["dimension"] = dim;
        } else {
            os << "dimension " << number(dim, precision) << "\n";
        }
    } else if (config.contains("theta")) {
        const double theta = Rational::parse(config.at("theta").get<std::string>()).to_double();
        EntropyResult r = m_theta(theta, base);
        nlohmann::ordered_json result = nlohmann::ordered_json::parse(to_json(r).dump());
        for (const auto& [k, v] : result.items()) doc[k] = v;
        std::optional<GridMinimum> grid;
        if (config.at("oracle").get<bool>()) {
            const double step = Rational::parse(config.at("oracle-step").get<std::string>()).to_double();
            grid = m_theta_bruteforce(theta, base, step);
            const double gap = std::abs(grid->m_value - r.m_value);
            const bool agree = gap <= kOracleTolerance;
            if (!agree) status = kExitCheckFailed;
            doc["oracle"] = {{"step", step},     {"m", grid->m_value},           {"argmin", grid->argmin},
                             {"gap", gap},       {"tolerance", kOracleTolerance}, {"agree", agree},
                             {"points", grid->points_evaluated}};
        }
        if (format == "text") {
            os << "theta " << number(theta, precision) << "\n"
               << "m " << number(r.m_value, precision) << "\n"
               << "dimension_bound " << number(r.dimension_bound, precision) << "\n";
            if (grid) {
                os << "oracle_m " << number(grid->m_value, precision) << "\n"
                   << "oracle_gap " << number(std::abs(grid->m_value - r.m_value), precision) << "\n";
            }
        }
    } else {
        const json& sweep = config.at("sweep");
        Rational from = Rational::parse(sweep.at("from").get<std::string>());
        Rational to = Rational::parse(sweep.at("to").get<std::string>());
        Rational step = Rational::parse(sweep.at("step").get<std::string>());
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        if (format == "csv") os << "theta,m,dimension_bound\n";
        for (Rational t = from; t <= to; t += step) {
            EntropyResult r = m_theta(t.to_double(), base);
            if (format == "csv") {
                os << number(r.theta, precision) << "," << number(r.m_value, precision) << ","
                   << number(r.dimension_bound, precision) << "\n";
            } else {
                rows.push_back({{"theta", r.theta}, {"m", r.m_value}, {"dimension_bound", r.dimension_bound}});
            }
        }
        if (format == "json") doc["sweep"] = rows;
    }
    if (format == "json") os << doc.dump(2) << "\n";
    art.close();
    return status;
}

}  // namespace adiclab::cli
