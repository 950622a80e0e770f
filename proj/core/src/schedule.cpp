#include "adiclab/schedule.hpp"

#include <stdexcept>

namespace adiclab {

namespace {

Rational rational_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
    const nlohmann::json& v = j.at(key);
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    throw std::invalid_argument(std::string("field '") + key + "' must be a \"p/q\" string or an integer");
}

std::vector<Rational> rational_list(const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected an array of rationals");
    std::vector<Rational> out;
    for (const auto& v : j) {
        if (v.is_string()) out.push_back(Rational::parse(v.get<std::string>()));
        else if (v.is_number_integer()) out.emplace_back(v.get<std::int64_t>());
        else throw std::invalid_argument("probability entries must be \"p/q\" strings or integers");
    }
    return out;
}

nlohmann::json rational_list_json(const ProbabilityVector& p) {
    nlohmann::json out = nlohmann::json::array();
    for (const Rational& r : p.entries()) out.push_back(r.str());
    return out;
}

}  // namespace

ScheduleSpec ScheduleSpec::polynomial(unsigned degree) {
    if (degree < 1) throw std::invalid_argument("polynomial schedule needs degree >= 1");
    return ScheduleSpec(Family::polynomial, degree, Rational(1), Rational(0));
}

ScheduleSpec ScheduleSpec::affine(Rational slope, Rational intercept) {
    if (slope < Rational(1)) throw std::invalid_argument("affine schedule needs slope >= 1, got " + slope.str());
    if (slope + intercept <= Rational(0)) throw std::invalid_argument("affine schedule needs s_1 = slope + intercept > 0");
    return ScheduleSpec(Family::affine, 1, std::move(slope), std::move(intercept));
}

ScheduleSpec ScheduleSpec::geometric(Rational ratio) {
    if (ratio <= Rational(1)) throw std::invalid_argument("geometric schedule needs ratio > 1, got " + ratio.str());
    return ScheduleSpec(Family::geometric, 0, std::move(ratio), Rational(0));
}

ScheduleSpec ScheduleSpec::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("family") || !j.at("family").is_string()) {
        throw std::invalid_argument("schedule needs a string field 'family'");
    }
    const std::string family = j.at("family").get<std::string>();
    if (family == "polynomial") {
        if (!j.contains("degree") || !j.at("degree").is_number_integer() || j.at("degree").get<std::int64_t>() < 1) {
            throw std::invalid_argument("polynomial schedule needs an integer 'degree' >= 1");
        }
        return polynomial(j.at("degree").get<unsigned>());
    }
    if (family == "affine" || family == "linear-affine") {
        return affine(rational_field(j, "slope"), j.contains("intercept") ? rational_field(j, "intercept") : Rational(0));
    }
    if (family == "geometric" || family == "exponential") return geometric(rational_field(j, "ratio"));
    throw std::invalid_argument("unknown schedule family '" + family + "' (expected polynomial, affine or geometric)");
}

nlohmann::json ScheduleSpec::to_json() const {
    switch (family_) {
        case Family::polynomial: return {{"family", "polynomial"}, {"degree", degree_}};
        case Family::affine: return {{"family", "affine"}, {"slope", a_.str()}, {"intercept", b_.str()}};
        case Family::geometric: return {{"family", "geometric"}, {"ratio", a_.str()}};
    }
    return {};
}

Rational ScheduleSpec::length(std::uint64_t k) const {
    if (k == 0) throw std::invalid_argument("schedule index starts at 1");
    switch (family_) {
        case Family::polynomial: return Rational(power(static_cast<std::int64_t>(k), degree_));
        case Family::affine: return a_ * Rational(BigInt(k)) + b_;
        case Family::geometric:
            return Rational(boost::multiprecision::pow(a_.num(), static_cast<unsigned>(k)),
                            boost::multiprecision::pow(a_.den(), static_cast<unsigned>(k)));
    }
    return {};
}

std::string ScheduleSpec::describe() const {
    switch (family_) {
        case Family::polynomial: return degree_ == 1 ? "k" : "k^" + std::to_string(degree_);
        case Family::affine: return "(" + a_.str() + ")*k + (" + b_.str() + ")";
        case Family::geometric: return "(" + a_.str() + ")^k";
    }
    return {};
}

const ScheduleCondition* ScheduleValidation::failure() const {
    for (const auto& c : conditions) {
        if (!c.holds) return &c;
    }
    return nullptr;
}

nlohmann::json ScheduleValidation::to_json() const {
    nlohmann::json conds = nlohmann::json::array();
    for (const auto& c : conditions) {
        conds.push_back({{"number", c.number}, {"statement", c.statement}, {"holds", c.holds}, {"reason", c.reason}});
    }
    return {{"accepted", accepted}, {"conditions", conds}};
}

ScheduleValidation validate_schedule(const ScheduleSpec& spec) {
    ScheduleValidation v;
    v.conditions = {
        {1, "s_k -> infinity", false, {}},
        {2, "s_{k+1} / sum_{i<=k} s_i -> 0", false, {}},
        {3, "k / sum_{i<=k} s_i -> 0", false, {}},
    };
    auto set = [&](int number, bool holds, std::string reason) {
        v.conditions[static_cast<std::size_t>(number - 1)].holds = holds;
        v.conditions[static_cast<std::size_t>(number - 1)].reason = std::move(reason);
    };
    switch (spec.family()) {
        case ScheduleSpec::Family::polynomial: {
            const std::string d = std::to_string(spec.degree());
            const std::string d1 = std::to_string(spec.degree() + 1);
            set(1, true, "k^" + d + " is unbounded for degree >= 1");
            set(2, true, "sum_{i<=k} i^" + d + " >= k^" + d1 + "/" + d1 + ", so the ratio is O(1/k)");
            set(3, true, "sum_{i<=k} i^" + d + " >= k^" + d1 + "/" + d1 + ", so the ratio is O(k^-" + d + ")");
            break;
        }
        case ScheduleSpec::Family::affine:
            set(1, true, "slope >= 1 makes a*k + b unbounded");
            set(2, true, "sum_{i<=k} s_i ~ a*k^2/2, so the ratio ~ 2/k");
            set(3, true, "sum_{i<=k} s_i ~ a*k^2/2, so the ratio ~ 2/(a*k)");
            break;
        case ScheduleSpec::Family::geometric: {
            const std::string r = spec.ratio().str();
            const std::string r1 = (spec.ratio() - Rational(1)).str();
            set(1, true, "ratio " + r + " > 1 makes r^k unbounded");
            set(2, false,
                  "sum_{i<=k} r^i = r(r^k - 1)/(r - 1), so the ratio tends to r - 1 = " + r1 + " != 0");
            set(3, true, "the sum grows like r^k, which dominates k");
            break;
        }
    }
    v.accepted = v.failure() == nullptr;
    return v;
}

ColumnSchedule::ColumnSchedule(Base base, Rule rule, std::optional<ProbabilityVector> limit, std::optional<Rational> theta)
    : base_(base), rule_(std::move(rule)), limit_(std::move(limit)), theta_(std::move(theta)) {
    if (!rule_) throw std::invalid_argument("column schedule needs a rule");
    if (limit_ && limit_->base() != base_) throw std::invalid_argument("declared limit has the wrong number of digits");
    if (theta_ && (*theta_ < Rational(0) || *theta_ > Rational(base_.max_digit()))) {
        throw std::invalid_argument("declared theta " + theta_->str() + " outside [0, s-1]");
    }
}

ColumnSchedule ColumnSchedule::constant(const ProbabilityVector& tau) {
    ColumnSchedule c(tau.base(), [entries = tau.entries()](std::uint64_t) { return entries; }, tau);
    c.descriptor_ = {{"kind", "constant"}, {"tau", rational_list_json(tau)}};
    return c;
}

ColumnSchedule ColumnSchedule::converging(const ProbabilityVector& limit, const ProbabilityVector& offset,
                                          unsigned rate_power) {
    if (limit.base() != offset.base()) throw std::invalid_argument("limit and offset sizes differ");
    if (rate_power < 1) throw std::invalid_argument("rate_power must be >= 1");
    auto rule = [lim = limit.entries(), off = offset.entries(), rate_power](std::uint64_t n) {
        Rational w(BigInt(1), power(static_cast<std::int64_t>(n + 1), rate_power));
        Rational keep = Rational(1) - w;
        std::vector<Rational> col(lim.size());
        for (std::size_t i = 0; i < lim.size(); ++i) col[i] = keep * lim[i] + w * off[i];
        return col;
    };
    ColumnSchedule c(limit.base(), std::move(rule), limit);
    c.descriptor_ = {{"kind", "converging"},
                     {"limit", rational_list_json(limit)},
                     {"offset", rational_list_json(offset)},
                     {"rate_power", rate_power}};
    return c;
}

ColumnSchedule ColumnSchedule::explicit_list(std::vector<ProbabilityVector> columns, Tail tail) {
    if (columns.empty()) throw std::invalid_argument("explicit column list is empty");
    const Base base = columns.front().base();
    nlohmann::json listed = nlohmann::json::array();
    std::vector<std::vector<Rational>> raw;
    for (const auto& c : columns) {
        if (c.base() != base) throw std::invalid_argument("explicit columns have different sizes");
        listed.push_back(rational_list_json(c));
        raw.push_back(c.entries());
    }
    auto rule = [raw = std::move(raw), tail](std::uint64_t n) {
        std::uint64_t i = n - 1;
        if (i >= raw.size()) i = tail == Tail::cycle ? i % raw.size() : raw.size() - 1;
        return raw[i];
    };
    std::optional<ProbabilityVector> limit;
    if (tail == Tail::repeat_last) limit = columns.back();
    ColumnSchedule c(base, std::move(rule), std::move(limit));
    c.descriptor_ = {{"kind", "explicit"}, {"columns", listed}, {"tail", tail == Tail::cycle ? "cycle" : "repeat_last"}};
    return c;
}

ColumnSchedule ColumnSchedule::with_theta(const Rational& theta) const {
    ColumnSchedule c(base_, rule_, limit_, theta);
    c.descriptor_ = descriptor_;
    if (!c.descriptor_.is_null()) c.descriptor_["theta"] = theta.str();
    return c;
}

ColumnSchedule ColumnSchedule::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
        throw std::invalid_argument("columns need a string field 'kind'");
    }
    const std::string kind = j.at("kind").get<std::string>();
    auto pv = [&](const char* key) {
        if (!j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
        return ProbabilityVector(rational_list(j.at(key)));
    };

    std::optional<ColumnSchedule> c;
    if (kind == "constant") {
        c = constant(pv("tau"));
    } else if (kind == "converging") {
        unsigned rate = 1;
        if (j.contains("rate_power")) {
            if (!j.at("rate_power").is_number_integer() || j.at("rate_power").get<std::int64_t>() < 1) {
                throw std::invalid_argument("rate_power must be an integer >= 1");
            }
            rate = j.at("rate_power").get<unsigned>();
        }
        c = converging(pv("limit"), pv("offset"), rate);
    } else if (kind == "explicit") {
        if (!j.contains("columns") || !j.at("columns").is_array()) throw std::invalid_argument("explicit kind needs 'columns'");
        std::vector<ProbabilityVector> cols;
        for (const auto& col : j.at("columns")) cols.emplace_back(rational_list(col));
        Tail tail = Tail::repeat_last;
        if (j.contains("tail")) {
            const std::string t = j.at("tail").get<std::string>();
            if (t == "cycle") tail = Tail::cycle;
            else if (t != "repeat_last") throw std::invalid_argument("tail must be 'repeat_last' or 'cycle'");
        }
        c = explicit_list(std::move(cols), tail);
    } else {
        throw std::invalid_argument("unknown column kind '" + kind + "' (expected constant, converging or explicit)");
    }
    if (j.contains("theta")) return c->with_theta(rational_field(j, "theta"));
    return *c;
}

nlohmann::json ColumnSchedule::to_json() const {
    if (descriptor_.is_null()) throw std::logic_error("column schedule built from a custom rule has no JSON form");
    return descriptor_;
}

ProbabilityVector ColumnSchedule::column(std::uint64_t n) const {
    if (n == 0) throw std::invalid_argument("column index starts at 1");
    std::vector<Rational> raw = rule_(n);
    if (raw.size() != static_cast<std::size_t>(base_.value())) {
        throw std::invalid_argument("column " + std::to_string(n) + " has " + std::to_string(raw.size()) +
                                    " entries, expected " + std::to_string(base_.value()));
    }
    std::optional<ProbabilityVector> col;
    try {
        col.emplace(std::move(raw));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("column " + std::to_string(n) + " is not stochastic: " + e.what());
    }
    if (theta_ && col->mean() != *theta_) {
        throw std::invalid_argument("column " + std::to_string(n) + " has mean " + col->mean().str() +
                                    ", declared theta is " + theta_->str());
    }
    return std::move(*col);
}

BlockConfig BlockConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("schedule") || !j.contains("columns")) {
        throw std::invalid_argument("block config needs 'schedule' and 'columns'");
    }
    return {ScheduleSpec::from_json(j.at("schedule")), ColumnSchedule::from_json(j.at("columns"))};
}

nlohmann::json BlockConfig::to_json() const { return {{"schedule", schedule.to_json()}, {"columns", columns.to_json()}}; }

}  // namespace adiclab
