#pragma once

/**
 * @file digit_stats.hpp
 * @brief Finite-prefix digit statistics.
 *
 * For a prefix of length n: counts N_i(n), relative frequencies
 * v_i = N_i / n and the relative mean r_n = sum_i i * v_i. Everything is
 * exact; doubles appear only in serialized output.
 *
 * These are finite-n values. Nothing here extrapolates to the limits
 * nu_i(x) or r(x).
 */

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "adiclab/digits.hpp"
#include "adiclab/rational.hpp"

namespace adiclab {

struct FreqReport {
    std::uint64_t n = 0;
    std::vector<std::uint64_t> counts;
    std::vector<Rational> freqs;
    Rational mean;
};

struct ConvergenceTrace {
    Base base;
    std::vector<std::uint64_t> checkpoints;
    std::vector<FreqReport> reports;
};

struct NormalityVerdict {
    bool consistent = false;
    Rational max_deviation;
};

/// Running tally of digits; feed it digits in order and read reports at
/// any point.
class DigitTally {
public:
    explicit DigitTally(Base base = Base());

    void push(Digit d);
    std::uint64_t size() const noexcept { return n_; }
    std::span<const std::uint64_t> counts() const noexcept { return counts_; }
    /// Throws std::invalid_argument when nothing has been pushed.
    FreqReport report() const;

private:
    Base base_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t n_ = 0;
};

std::vector<std::uint64_t> digit_counts(const DigitPrefix& prefix);

/// Builds a report from counts; n is their sum. Throws on n == 0.
FreqReport report_from_counts(std::span<const std::uint64_t> counts);

/// Throws std::invalid_argument on an empty prefix.
FreqReport freq_report(const DigitPrefix& prefix);

/// Both moment identities, checked exactly:
///   sum_i v_i == 1  and  sum_i i * v_i == r_n,
/// plus sum_i N_i == n, v_i == N_i / n and 0 <= r_n <= s - 1.
bool satisfies_moment_identities(const FreqReport& report);

/// 10, 100, ..., 10^6.
std::vector<std::uint64_t> default_checkpoints();

/// Throws std::invalid_argument unless the list is nonempty, starts at >= 1
/// and is strictly increasing.
void validate_checkpoints(std::span<const std::uint64_t> checkpoints);

/// Reads each digit of the stream once, up to the last checkpoint.
ConvergenceTrace convergence_trace(const DigitStream& stream, std::span<const std::uint64_t> checkpoints);

/// consistent iff max_i |v_i - 1/s| <= tol; tol = 0 asks for exact
/// uniformity. Throws on empty prefix or tol < 0.
NormalityVerdict weak_normality_verdict(const DigitPrefix& prefix, const Rational& tol);
NormalityVerdict weak_normality_verdict(const FreqReport& report, const Rational& tol);

/// Header `n,v0,...,v{s-1},r_n`, one row per checkpoint, decimals with the
/// given significant digits.
std::string trace_to_csv(const ConvergenceTrace& trace, int precision = 12);
nlohmann::json to_json(const FreqReport& report);
nlohmann::json to_json(const ConvergenceTrace& trace);

}  // namespace adiclab
