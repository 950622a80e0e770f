#pragma once

/**
 * @file constructors.hpp
 * @brief Deterministic constructions of numbers with prescribed digit
 * statistics.
 *
 * Greedy construction. For tau on the simplex let t_i(n) = floor(tau_i n).
 * Step n (n = 1, 2, ...) appends t_i(n) - t_i(n-1) copies of digit i for
 * i = 0..s-1, in increasing digit order. After step n the stream holds
 * exactly t_i(n) copies of each digit i among its first sum_i t_i(n)
 * symbols, so the frequency of i is tau_i. Each step adds 0 or 1 copy of
 * each digit.
 *
 * Block construction. Given a column schedule ||tau_{in}|| and block lengths
 * s_k, block k holds floor(tau_{ik} s_k) copies of digit i, again in
 * increasing digit order. If every column has mean theta the asymptotic
 * digit mean is theta; if row j of the matrix converges to lambda_j then
 * digit j has frequency lambda_j.
 *
 * All floors are computed exactly.
 */

#include <cstdint>
#include <optional>
#include <vector>

#include "adiclab/digits.hpp"
#include "adiclab/probability.hpp"
#include "adiclab/schedule.hpp"

namespace adiclab {

/// (floor(tau_i (n+1)) - floor(tau_i n))_i, each 0 or 1. Throws
/// std::invalid_argument for n == 0.
std::vector<std::uint8_t> greedy_increments(const ProbabilityVector& tau, std::uint64_t n);

/// floor(tau_i n) for every digit.
std::vector<std::uint64_t> greedy_counts(const ProbabilityVector& tau, std::uint64_t n);

/// The greedy stream. Random access at(k) costs O(s log k); sequential
/// cursors are amortized O(1) per digit.
DigitStream greedy_stream(const ProbabilityVector& tau);

/// floor(tau_{ik} s_k) for block k >= 1. Throws std::invalid_argument if the
/// column is invalid or a count does not fit in 64 bits.
std::vector<std::uint64_t> block_counts(const ColumnSchedule& columns, const ScheduleSpec& schedule, std::uint64_t k);

/// State of the block construction at the end of block k.
struct BlockBoundary {
    std::uint64_t block = 0;
    std::uint64_t end = 0;                  ///< digits written through block k
    Rational schedule_total;                ///< sum_{i<=k} s_i
    std::vector<std::uint64_t> counts;      ///< cumulative count of each digit
};

/// Boundaries of every block that ends at or before `max_digits`, computed
/// from block_counts without materializing digits.
std::vector<BlockBoundary> block_boundaries(const ColumnSchedule& columns, const ScheduleSpec& schedule,
                                            std::uint64_t max_digits);

/// Digits laid out block by block. Throws std::invalid_argument if the
/// schedule is rejected by validate_schedule. Column errors surface when the
/// offending block is read. Random access at(k) rescans blocks from the
/// start; use a cursor for bulk reads.
DigitStream block_stream(const ColumnSchedule& columns, const ScheduleSpec& schedule);

/// Rational vector used by mean_target_stream: the point mass at the
/// endpoints, otherwise the entropy-maximizing vector with mean theta,
/// rounded to a fine grid with two coordinates solved exactly so that
/// sum_i tau_i = 1 and sum_i i tau_i = theta hold exactly.
/// Throws std::domain_error for theta outside [0, s-1].
ProbabilityVector mean_target_vector(const Rational& theta, Base base = Base());

/// A number with asymptotic digit mean theta whose digit frequencies all
/// exist: constant 0 / constant s-1 at the endpoints, otherwise the greedy
/// stream of mean_target_vector(theta).
DigitStream mean_target_stream(const Rational& theta, Base base = Base());

struct Distinction {
    std::optional<std::uint64_t> first_difference;  ///< 1-based digit index
    std::uint64_t horizon = 0;

    bool differ() const noexcept { return first_difference.has_value(); }
};

/// Least index <= horizon where the streams differ. Agreement through the
/// horizon is reported as undetermined, never as equality.
/// Throws std::invalid_argument if horizon == 0 or the bases differ.
Distinction prefix_distinguish(const DigitStream& a, const DigitStream& b, std::uint64_t horizon);

}  // namespace adiclab
