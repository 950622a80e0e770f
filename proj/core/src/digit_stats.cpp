#include "adiclab/digit_stats.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace adiclab {

DigitTally::DigitTally(Base base) : base_(base), counts_(static_cast<std::size_t>(base.value()), 0) {}

void DigitTally::push(Digit d) {
    if (!base_.contains(d)) throw std::invalid_argument("digit outside base");
    ++counts_[d];
    ++n_;
}

FreqReport DigitTally::report() const { return report_from_counts(counts_); }

std::vector<std::uint64_t> digit_counts(const DigitPrefix& prefix) {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(prefix.base().value()), 0);
    for (Digit d : prefix.digits()) ++counts[d];
    return counts;
}

FreqReport report_from_counts(std::span<const std::uint64_t> counts) {
    FreqReport r;
    r.counts.assign(counts.begin(), counts.end());
    r.n = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    if (r.n == 0) throw std::invalid_argument("frequency report needs n >= 1");

    const BigInt n(r.n);
    BigInt weighted = 0;
    r.freqs.reserve(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        r.freqs.emplace_back(BigInt(counts[i]), n);
        weighted += BigInt(counts[i]) * i;
    }
    r.mean = Rational(std::move(weighted), n);
    return r;
}

FreqReport freq_report(const DigitPrefix& prefix) {
    if (prefix.empty()) throw std::invalid_argument("freq_report: empty prefix");
    return report_from_counts(digit_counts(prefix));
}

bool satisfies_moment_identities(const FreqReport& report) {
    const std::size_t s = report.counts.size();
    if (s < 2 || report.freqs.size() != s || report.n == 0) return false;
    if (std::accumulate(report.counts.begin(), report.counts.end(), std::uint64_t{0}) != report.n) return false;

    Rational total;
    Rational moment;
    for (std::size_t i = 0; i < s; ++i) {
        if (report.freqs[i] != Rational(BigInt(report.counts[i]), BigInt(report.n))) return false;
        total += report.freqs[i];
        moment += report.freqs[i] * Rational(static_cast<std::int64_t>(i));
    }
    return total == Rational(1) && moment == report.mean && report.mean >= Rational(0) &&
           report.mean <= Rational(static_cast<std::int64_t>(s - 1));
}

std::vector<std::uint64_t> default_checkpoints() { return {10, 100, 1000, 10000, 100000, 1000000}; }

void validate_checkpoints(std::span<const std::uint64_t> checkpoints) {
    if (checkpoints.empty()) throw std::invalid_argument("checkpoint list is empty");
    if (checkpoints.front() == 0) throw std::invalid_argument("checkpoints must be >= 1");
    if (std::adjacent_find(checkpoints.begin(), checkpoints.end(), std::greater_equal<>()) != checkpoints.end()) {
        throw std::invalid_argument("checkpoints must be strictly increasing");
    }
}

ConvergenceTrace convergence_trace(const DigitStream& stream, std::span<const std::uint64_t> checkpoints) {
    validate_checkpoints(checkpoints);
    ConvergenceTrace trace{stream.base(), {checkpoints.begin(), checkpoints.end()}, {}};
    trace.reports.reserve(checkpoints.size());

    DigitTally tally(stream.base());
    DigitCursor cursor = stream.cursor();
    for (std::uint64_t target : checkpoints) {
        while (tally.size() < target) tally.push(cursor.next());
        trace.reports.push_back(tally.report());
    }
    return trace;
}

NormalityVerdict weak_normality_verdict(const FreqReport& report, const Rational& tol) {
    if (tol < Rational(0)) throw std::invalid_argument("tolerance must be nonnegative");
    if (report.n == 0) throw std::invalid_argument("normality verdict needs n >= 1");
    const Rational uniform(1, static_cast<std::int64_t>(report.freqs.size()));
    NormalityVerdict v;
    for (const Rational& f : report.freqs) v.max_deviation = std::max(v.max_deviation, (f - uniform).abs());
    v.consistent = v.max_deviation <= tol;
    return v;
}

NormalityVerdict weak_normality_verdict(const DigitPrefix& prefix, const Rational& tol) {
    if (tol < Rational(0)) throw std::invalid_argument("tolerance must be nonnegative");
    return weak_normality_verdict(freq_report(prefix), tol);
}

std::string trace_to_csv(const ConvergenceTrace& trace, int precision) {
    std::ostringstream out;
    out << "n";
    for (int i = 0; i < trace.base.value(); ++i) out << ",v" << i;
    out << ",r_n\n";
    for (const FreqReport& r : trace.reports) {
        out << r.n;
        for (const Rational& f : r.freqs) out << ',' << f.to_decimal(precision);
        out << ',' << r.mean.to_decimal(precision) << '\n';
    }
    return out.str();
}

nlohmann::json to_json(const FreqReport& report) {
    nlohmann::json freqs = nlohmann::json::array();
    for (const Rational& f : report.freqs) freqs.push_back(f.str());
    return {{"n", report.n}, {"counts", report.counts}, {"freqs", freqs}, {"mean", report.mean.str()}};
}

nlohmann::json to_json(const ConvergenceTrace& trace) {
    nlohmann::json reports = nlohmann::json::array();
    for (const FreqReport& r : trace.reports) reports.push_back(to_json(r));
    return {{"base", trace.base.value()}, {"checkpoints", trace.checkpoints}, {"reports", reports}};
}

}  // namespace adiclab
