#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>

#include "common.hpp"

namespace adiclab::cli {

using detail::json;

namespace {

struct Check {
    const char* name;
    const char* module;
    std::function<CheckResult()> run;
};

CheckResult result(json parameters, json observed, bool pass) {
    return {"", "", std::move(parameters), std::move(observed), pass};
}

ProbabilityVector pv(const char* text) { return ProbabilityVector::parse(text); }

const char* const kBattery[] = {"1/4,1/4,1/4,1/4", "1/2,1/3,1/6,0", "1/10,2/10,3/10,4/10", "1/2,1/2,0,0",
                                "0,0,0,1",         "3/7,1/7,2/7,1/7", "1/97,13/97,40/97,43/97"};

// Fixed enumeration standing in for "random" prefixes: prefix k (k = 1..1000)
// is the first k digits of k/1009 in base 4.
DigitPrefix enumerated_prefix(std::int64_t k) { return expand(Rational(k, 1009)).prefix(static_cast<std::uint64_t>(k)); }

// ---- digits_core ----

CheckResult expand_round_trip() {
    const Rational ulp(BigInt(1), power(4, 64));
    std::uint64_t count = 0, bad = 0;
    for (std::int64_t q = 1; q <= 200; ++q) {
        for (std::int64_t p = 0; p <= q; ++p) {
            Rational x(p, q);
            if (x.den() != q) continue;
            ++count;
            if ((x - prefix_value(expand(x).prefix(64))).abs() > ulp) ++bad;
        }
    }
    return result({{"max_denominator", 200}, {"n", 64}, {"tolerance", "4^-64"}}, {{"fractions", count}, {"violations", bad}},
                  bad == 0);
}

CheckResult expand_long_division() {
    std::uint64_t count = 0, bad = 0;
    for (int s : {2, 3, 4, 7, 10}) {
        for (std::uint64_t q = 1; q <= 60; ++q) {
            for (std::uint64_t p = 0; p < q; ++p) {
                // schoolbook long division, remainders keyed by position
                std::vector<Digit> digits;
                std::map<std::uint64_t, std::size_t> seen;
                std::uint64_t r = p;
                std::vector<Digit> pre, per{0};
                while (r != 0) {
                    if (auto it = seen.find(r); it != seen.end()) {
                        pre.assign(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(it->second));
                        per.assign(digits.begin() + static_cast<std::ptrdiff_t>(it->second), digits.end());
                        break;
                    }
                    seen[r] = digits.size();
                    r *= static_cast<std::uint64_t>(s);
                    digits.push_back(static_cast<Digit>(r / q));
                    r %= q;
                }
                if (r == 0) pre = digits;
                Rational x(static_cast<std::int64_t>(p), static_cast<std::int64_t>(q));
                if (x.den() != static_cast<std::int64_t>(q)) continue;
                ++count;
                DigitStream stream = expand(x, Base(s));
                const Periodicity& got = *stream.periodicity();
                if (got.preperiod != pre || got.period != per) ++bad;
            }
        }
    }
    return result({{"bases", {2, 3, 4, 7, 10}}, {"max_denominator", 60}}, {{"fractions", count}, {"mismatches", bad}},
                  bad == 0);
}

CheckResult dual_representation_values() {
    std::uint64_t bad = 0, count = 0;
    std::vector<std::string> layer{""};
    while (count < 100) {
        std::vector<std::string> next;
        for (const auto& w : layer) {
            for (char d = '0'; d <= '3'; ++d) {
                next.push_back(w + d);
                if (d == '0' || count >= 100) continue;
                ++count;
                DigitPrefix p = DigitPrefix::parse(w + d);
                DigitStream dual = dual_representation(p);
                const Periodicity& per = *dual.periodicity();
                BigInt scale = power(4, per.period.size());
                Rational value = prefix_value(DigitPrefix(Base(4), per.preperiod)) +
                                 prefix_value(DigitPrefix(Base(4), per.period)) * Rational(scale, scale - 1) /
                                     Rational(power(4, per.preperiod.size()));
                if (value != prefix_value(p)) ++bad;
            }
        }
        layer.swap(next);
    }
    return result({{"prefixes", "base-4 words ending in a nonzero digit, shortest first"}, {"count", count}},
                  {{"violations", bad}}, bad == 0);
}

CheckResult two_representations() {
    std::uint64_t bad = 0;
    for (std::int64_t q = 2; q <= 100; ++q) {
        for (std::int64_t p = 1; p < q; ++p) {
            bool terminates = expand(Rational(p, q)).periodicity()->period == std::vector<Digit>{0};
            if (has_two_representations(Rational(p, q)) != terminates) ++bad;
        }
    }
    return result({{"max_denominator", 100}}, {{"violations", bad}}, bad == 0);
}

// ---- digit_stats ----

CheckResult system_identities() {
    std::uint64_t bad = 0;
    for (std::int64_t k = 1; k <= 1000; ++k) {
        if (!satisfies_moment_identities(freq_report(enumerated_prefix(k)))) ++bad;
    }
    return result({{"prefixes", "first k digits of k/1009 in base 4, k = 1..1000"}}, {{"violations", bad}}, bad == 0);
}

CheckResult incremental_consistency() {
    std::uint64_t bad = 0;
    DigitPrefix p = enumerated_prefix(1000);
    DigitTally tally;
    std::vector<std::uint64_t> prev(4, 0);
    for (std::uint64_t i = 0; i < p.size(); ++i) {
        tally.push(p[i]);
        std::vector<std::uint64_t> now(tally.counts().begin(), tally.counts().end());
        for (std::size_t d = 0; d < 4; ++d) {
            if (now[d] != prev[d] + (d == p[i] ? 1u : 0u)) ++bad;
        }
        prev = now;
    }
    return result({{"prefix", "first 1000 digits of 1000/1009"}}, {{"violations", bad}}, bad == 0);
}

CheckResult periodic_deviation() {
    std::uint64_t bad = 0, points = 0;
    for (std::int64_t q : {7, 15, 60, 420, 997}) {
        DigitStream s = expand(Rational(1, q));
        const Periodicity& per = *s.periodicity();
        std::vector<std::uint64_t> pc(4, 0);
        for (Digit d : per.period) ++pc[d];
        std::vector<std::uint64_t> cps;
        for (std::uint64_t m = 1; m <= 20; ++m) cps.push_back(per.preperiod.size() + m * per.period.size());
        for (const FreqReport& r : convergence_trace(s, cps).reports) {
            ++points;
            Rational bound(static_cast<std::int64_t>(per.preperiod.size()), static_cast<std::int64_t>(r.n));
            for (std::size_t i = 0; i < 4; ++i) {
                Rational limit(static_cast<std::int64_t>(pc[i]), static_cast<std::int64_t>(per.period.size()));
                if ((r.freqs[i] - limit).abs() > bound) ++bad;
            }
        }
    }
    return result({{"x", "1/q for q in 7,15,60,420,997"}, {"boundaries", 20}}, {{"points", points}, {"violations", bad}},
                  bad == 0);
}

// ---- constructors ----

CheckResult greedy_exact_counts() {
    std::uint64_t bad = 0;
    for (const char* text : kBattery) {
        ProbabilityVector tau = pv(text);
        std::uint64_t total = 0;
        for (std::uint64_t c : greedy_counts(tau, 10000)) total += c;
        DigitPrefix prefix = greedy_stream(tau).prefix(total);
        std::vector<std::uint64_t> running(4, 0);
        std::uint64_t pos = 0;
        for (std::uint64_t n = 1; n <= 10000; ++n) {
            // floor(tau_i n) straight from the rationals
            std::vector<std::uint64_t> expect;
            std::uint64_t len = 0;
            for (const Rational& t : tau.entries()) {
                expect.push_back((t * Rational(static_cast<std::int64_t>(n))).floor().convert_to<std::uint64_t>());
                len += expect.back();
            }
            for (; pos < len; ++pos) ++running[prefix[pos]];
            if (running != expect) ++bad;
        }
    }
    return result({{"battery", kBattery}, {"max_step", 10000}}, {{"violations", bad}}, bad == 0);
}

CheckResult greedy_increments_binary() {
    std::uint64_t bad = 0;
    for (const char* text : kBattery) {
        ProbabilityVector tau = pv(text);
        for (std::uint64_t n = 1; n <= 2000; ++n) {
            for (std::uint8_t v : greedy_increments(tau, n)) bad += v > 1;
        }
    }
    return result({{"battery", kBattery}, {"max_step", 2000}}, {{"violations", bad}}, bad == 0);
}

CheckResult block_sandwich() {
    std::uint64_t bad = 0, boundaries = 0;
    ColumnSchedule c = ColumnSchedule::constant(pv("1/6,1/3,1/3,1/6")).with_theta(Rational(3, 2));
    for (const ScheduleSpec& spec : {ScheduleSpec::polynomial(1), ScheduleSpec::polynomial(2)}) {
        for (const BlockBoundary& b : block_boundaries(c, spec, 200000)) {
            if (b.end == 0) continue;
            ++boundaries;
            Rational bound = Rational(static_cast<std::int64_t>(10 * b.block)) / b.schedule_total;
            if ((report_from_counts(b.counts).mean - Rational(3, 2)).abs() > bound) ++bad;
        }
    }
    return result({{"tau", "1/6,1/3,1/3,1/6"}, {"schedules", {"k", "k^2"}}, {"bound", "10 k / sum_{i<=k} s_i"}},
                  {{"boundaries", boundaries}, {"violations", bad}}, bad == 0);
}

CheckResult block_lengths() {
    std::uint64_t bad = 0;
    ColumnSchedule c = ColumnSchedule::converging(pv("1/2,1/2,0,0"), pv("0,0,1,0"), 1);
    for (const ScheduleSpec& spec : {ScheduleSpec::polynomial(1), ScheduleSpec::polynomial(2)}) {
        for (std::uint64_t k = 1; k <= 300; ++k) {
            std::uint64_t len = 0;
            for (std::uint64_t n : block_counts(c, spec, k)) len += n;
            Rational l(static_cast<std::int64_t>(len));
            if (l > spec.length(k) || l < spec.length(k) - Rational(4)) ++bad;
        }
    }
    return result({{"columns", "converging to 1/2,1/2,0,0"}, {"blocks", 300}}, {{"violations", bad}}, bad == 0);
}

CheckResult schedule_verdicts() {
    bool k1 = validate_schedule(ScheduleSpec::polynomial(1)).accepted;
    bool k2 = validate_schedule(ScheduleSpec::polynomial(2)).accepted;
    ScheduleValidation g = validate_schedule(ScheduleSpec::geometric(Rational(2)));
    int failed = g.failure() ? g.failure()->number : 0;
    return result({{"schedules", {"k", "k^2", "2^k"}}},
                  {{"k", k1}, {"k^2", k2}, {"2^k", g.accepted}, {"2^k_failed_condition", failed}},
                  k1 && k2 && !g.accepted && failed == 2);
}

CheckResult prefix_distinctions() {
    const std::pair<const char*, const char*> pairs[] = {{"1/4,1/4,1/4,1/4", "1/2,1/2,0,0"},
                                                         {"1/6,1/3,1/3,1/6", "1/4,1/4,1/4,1/4"},
                                                         {"1,0,0,0", "0,0,0,1"},
                                                         {"1/10,2/10,3/10,4/10", "4/10,3/10,2/10,1/10"},
                                                         {"1/2,0,0,1/2", "0,1/2,1/2,0"}};
    json found = json::array();
    bool all = true;
    for (const auto& [a, b] : pairs) {
        ScheduleSpec k = ScheduleSpec::polynomial(1);
        Distinction d = prefix_distinguish(block_stream(ColumnSchedule::constant(pv(a)), k),
                                           block_stream(ColumnSchedule::constant(pv(b)), k), 10000);
        all = all && d.differ();
        found.push_back(d.differ() ? json(*d.first_difference) : json(nullptr));
    }
    return result({{"schedule", "k"}, {"horizon", 10000}, {"pairs", pairs}}, {{"first_difference", found}}, all);
}

CheckResult mean_target_exact() {
    std::uint64_t bad = 0;
    for (std::int64_t k = 1; k < 30; ++k) {
        Rational theta(k, 10);
        if (mean_target_vector(theta).mean() != theta) ++bad;
    }
    return result({{"theta", "k/10, k = 1..29"}}, {{"violations", bad}}, bad == 0);
}

// ---- entropy_dim ----

CheckResult oracle_agreement() {
    double worst = 0.0;
    for (double theta : {0.1, 0.5, 1.0, 1.5, 2.0, 2.5, 2.9}) {
        worst = std::max(worst, std::abs(m_theta(theta).m_value - m_theta_bruteforce(theta, Base(4), 1e-3).m_value));
    }
    return result({{"theta", {0.1, 0.5, 1.0, 1.5, 2.0, 2.5, 2.9}}, {"step", 1e-3}, {"tolerance", 1e-4}},
                  {{"max_gap", worst}}, worst <= 1e-4);
}

CheckResult symmetry() {
    double worst = 0.0;
    for (int k = 1; k < 60; ++k) {
        double theta = 0.05 * k;
        worst = std::max(worst, std::abs(m_theta(theta).m_value - m_theta(3.0 - theta).m_value));
    }
    return result({{"theta", "0.05 k, k = 1..59"}, {"tolerance", 2 * kDefaultMeanTolerance}}, {{"max_gap", worst}},
                  worst <= 2 * kDefaultMeanTolerance);
}

CheckResult bound_consistency() {
    double worst = 0.0, worst_feasibility = 0.0;
    for (int k = 1; k < 60; ++k) {
        double theta = 0.05 * k;
        EntropyResult r = m_theta(theta);
        worst = std::max(worst, std::abs(r.dimension_bound - be_dimension(std::span<const double>(r.argmin))));
        double mass = 0.0, mean = 0.0;
        for (std::size_t i = 0; i < r.argmin.size(); ++i) {
            mass += r.argmin[i];
            mean += static_cast<double>(i) * r.argmin[i];
        }
        worst_feasibility = std::max({worst_feasibility, std::abs(mass - 1.0), std::abs(mean - theta)});
    }
    return result({{"theta", "0.05 k, k = 1..59"}, {"bound_tolerance", 1e-9}, {"feasibility_tolerance", kDefaultMeanTolerance}},
                  {{"max_bound_gap", worst}, {"max_constraint_gap", worst_feasibility}},
                  worst <= 1e-9 && worst_feasibility <= kDefaultMeanTolerance);
}

CheckResult permutation_invariance() {
    std::vector<double> tau{0.1, 0.2, 0.3, 0.4};
    const double ref = be_dimension(std::span<const double>(tau));
    double worst = 0.0;
    do {
        worst = std::max(worst, std::abs(be_dimension(std::span<const double>(tau)) - ref));
    } while (std::next_permutation(tau.begin(), tau.end()));
    return result({{"tau", {0.1, 0.2, 0.3, 0.4}}, {"tolerance", 1e-12}}, {{"max_gap", worst}}, worst <= 1e-12);
}

CheckResult exp_family_monotone() {
    double prev = -1.0;
    std::uint64_t bad = 0;
    for (int k = -400; k <= 400; ++k) {
        double m = exp_family_vector(0.05 * k).mean;
        if (!(m > prev)) ++bad;
        prev = m;
    }
    return result({{"lambda", "0.05 k, k = -400..400"}}, {{"violations", bad}}, bad == 0);
}

CheckResult degenerate_dimensions() {
    double a = be_dimension(pv("1,0,0,0"));
    double b = be_dimension(pv("0,0,0,1"));
    EntropyResult lo = m_theta(0.0), hi = m_theta(3.0);
    bool ok = a == 0.0 && b == 0.0 && lo.dimension_bound == 0.0 && hi.dimension_bound == 0.0;
    return result({{"tau", {"1,0,0,0", "0,0,0,1"}}, {"theta", {0, 3}}},
                  {{"be_dimension", {a, b}}, {"dimension_bound", {lo.dimension_bound, hi.dimension_bound}}}, ok);
}

const std::vector<Check>& registry() {
    static const std::vector<Check> checks{
        {"digits_core.dual_representation_values", "digits_core", dual_representation_values},
        {"digits_core.expand_long_division", "digits_core", expand_long_division},
        {"digits_core.expand_round_trip", "digits_core", expand_round_trip},
        {"digits_core.two_representations", "digits_core", two_representations},
        {"digit_stats.incremental_consistency", "digit_stats", incremental_consistency},
        {"digit_stats.periodic_deviation", "digit_stats", periodic_deviation},
        {"digit_stats.system_identities", "digit_stats", system_identities},
        {"constructors.block_lengths", "constructors", block_lengths},
        {"constructors.block_sandwich", "constructors", block_sandwich},
        {"constructors.greedy_exact_counts", "constructors", greedy_exact_counts},
        {"constructors.greedy_increments_binary", "constructors", greedy_increments_binary},
        {"constructors.mean_target_exact", "constructors", mean_target_exact},
        {"constructors.prefix_distinctions", "constructors", prefix_distinctions},
        {"constructors.schedule_verdicts", "constructors", schedule_verdicts},
        {"entropy_dim.bound_consistency", "entropy_dim", bound_consistency},
        {"entropy_dim.degenerate_dimensions", "entropy_dim", degenerate_dimensions},
        {"entropy_dim.exp_family_monotone", "entropy_dim", exp_family_monotone},
        {"entropy_dim.oracle_agreement", "entropy_dim", oracle_agreement},
        {"entropy_dim.permutation_invariance", "entropy_dim", permutation_invariance},
        {"entropy_dim.symmetry", "entropy_dim", symmetry},
    };
    return checks;
}

}  // namespace

std::vector<std::string> verify_modules() { return {"constructors", "digit_stats", "digits_core", "entropy_dim"}; }

std::vector<CheckResult> run_checks(const std::vector<std::string>& modules) {
    std::vector<CheckResult> out;
    for (const Check& c : registry()) {
        if (std::find(modules.begin(), modules.end(), c.module) == modules.end()) continue;
        CheckResult r;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            r = result(json::object(), {{"exception", e.what()}}, false);
        }
        r.name = c.name;
        r.module = c.module;
        out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
    return out;
}

json normalize_verify(const json& raw) {
    detail::check_keys(raw, "verify", {"base", "format", "module"});
    if (detail::base_of(raw).value() != 4) throw UsageError("the verify battery is written for --base 4");
    std::vector<std::string> modules;
    if (raw.contains("module")) {
        const json& m = raw.at("module");
        if (m.is_string()) {
            modules.push_back(m.get<std::string>());
        } else if (m.is_array()) {
            for (const json& v : m) {
                if (!v.is_string()) throw UsageError("--module takes module names");
                modules.push_back(v.get<std::string>());
            }
        } else {
            throw UsageError("--module takes module names");
        }
        const auto known = verify_modules();
        for (const std::string& name : modules) {
            if (std::find(known.begin(), known.end(), name) == known.end()) {
                throw UsageError("unknown module '" + name + "' (known: constructors, digit_stats, digits_core, entropy_dim)");
            }
        }
        std::sort(modules.begin(), modules.end());
        modules.erase(std::unique(modules.begin(), modules.end()), modules.end());
    } else {
        modules = verify_modules();
    }
    std::string format = raw.value("format", std::string("json"));
    if (format != "json" && format != "text") throw UsageError("verify writes --format json or text");
    return {{"command", "verify"}, {"base", 4}, {"module", modules}, {"format", format}};
}

int cmd_verify(const json& config, const Io& io) {
    std::vector<CheckResult> results = run_checks(config.at("module").get<std::vector<std::string>>());
    std::size_t failed = 0;
    for (const auto& r : results) failed += !r.pass;
    const bool as_json = config.at("format") == "json";

    detail::Artifact art(io, config, !as_json);
    std::ostream& os = art.stream();
    if (as_json) {
        nlohmann::ordered_json doc = detail::document(config);
        nlohmann::ordered_json checks = nlohmann::ordered_json::array();
        for (const auto& r : results) {
            nlohmann::ordered_json c;
            c["name"] = r.name;
            c["module"] = r.module;
            c["parameters"] = nlohmann::ordered_json::parse(r.parameters.dump());
            c["observed"] = nlohmann::ordered_json::parse(r.observed.dump());
            c["verdict"] = r.pass ? "pass" : "fail";
            checks.push_back(std::move(c));
        }
        doc["checks"] = std::move(checks);
        doc["summary"] = {{"total", results.size()}, {"passed", results.size() - failed}, {"failed", failed}};
        os << doc.dump(2) << "\n";
    } else {
        for (const auto& r : results) os << (r.pass ? "PASS " : "FAIL ") << r.name << " " << r.observed.dump() << "\n";
        os << results.size() - failed << " of " << results.size() << " checks passed\n";
    }
    art.close();
    return failed == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace adiclab::cli
