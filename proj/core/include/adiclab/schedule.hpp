#pragma once

/**
 * @file schedule.hpp
 * @brief Block-length schedules (s_k) and column schedules ||tau_{in}||.
 *
 * The block construction needs a schedule with
 *
 *   (1) s_k -> infinity,
 *   (2) s_{k+1} / sum_{i<=k} s_i -> 0,
 *   (3) k / sum_{i<=k} s_i -> 0.
 *
 * These are limit statements, so a schedule cannot be validated from finitely
 * many terms. ScheduleSpec is therefore a closed set of families whose
 * status is known analytically. Polynomial k^d (d >= 1) and affine a*k + b
 * (a >= 1) satisfy all three; the geometric family r^k (r > 1) is
 * representable so that it can be rejected, since it fails (2).
 */

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "adiclab/probability.hpp"
#include "adiclab/rational.hpp"

namespace adiclab {

class ScheduleSpec {
public:
    enum class Family { polynomial, affine, geometric };

    /// s_k = k^degree. Throws std::invalid_argument if degree < 1.
    static ScheduleSpec polynomial(unsigned degree);
    /// s_k = slope * k + intercept. Requires slope >= 1 and slope + intercept > 0.
    static ScheduleSpec affine(Rational slope, Rational intercept);
    /// s_k = ratio^k. Requires ratio > 1.
    static ScheduleSpec geometric(Rational ratio);

    /// {"family": "polynomial", "degree": d} | {"family": "affine", "slope": "a", "intercept": "b"}
    /// | {"family": "geometric", "ratio": "r"}. Rationals may be strings or integers.
    static ScheduleSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    Family family() const noexcept { return family_; }
    unsigned degree() const noexcept { return degree_; }
    const Rational& slope() const noexcept { return a_; }
    const Rational& intercept() const noexcept { return b_; }
    const Rational& ratio() const noexcept { return a_; }

    /// s_k for k >= 1. Throws std::invalid_argument for k == 0.
    Rational length(std::uint64_t k) const;
    std::string describe() const;

    friend bool operator==(const ScheduleSpec&, const ScheduleSpec&) = default;

private:
    ScheduleSpec(Family f, unsigned degree, Rational a, Rational b)
        : family_(f), degree_(degree), a_(std::move(a)), b_(std::move(b)) {}

    Family family_;
    unsigned degree_ = 0;
    Rational a_;
    Rational b_;
};

struct ScheduleCondition {
    int number = 0;  // 1, 2, 3 as listed in the file comment
    std::string statement;
    bool holds = false;
    std::string reason;
};

struct ScheduleValidation {
    bool accepted = false;
    std::vector<ScheduleCondition> conditions;

    /// First failing condition, if any.
    const ScheduleCondition* failure() const;
    nlohmann::json to_json() const;
};

ScheduleValidation validate_schedule(const ScheduleSpec& spec);

/// The (s x infinity) matrix ||tau_{in}|| given column by column.
/// Columns are produced on demand and checked on every request: each must be
/// a probability vector of the schedule's size, and if a mean theta is
/// declared, sum_i i * tau_{in} must equal theta exactly.
class ColumnSchedule {
public:
    using Rule = std::function<std::vector<Rational>(std::uint64_t n)>;
    enum class Tail { repeat_last, cycle };

    /// `rule` must be a pure function of n (n >= 1).
    ColumnSchedule(Base base, Rule rule, std::optional<ProbabilityVector> limit = std::nullopt,
                   std::optional<Rational> theta = std::nullopt);

    /// Every column equals tau; declares limit tau.
    static ColumnSchedule constant(const ProbabilityVector& tau);
    /// Column n = (1 - w_n) * limit + w_n * offset with w_n = (n+1)^-rate_power;
    /// declares `limit`.
    static ColumnSchedule converging(const ProbabilityVector& limit, const ProbabilityVector& offset,
                                     unsigned rate_power = 1);
    /// Listed columns first, then the tail rule. repeat_last declares the
    /// last column as the limit.
    static ColumnSchedule explicit_list(std::vector<ProbabilityVector> columns, Tail tail);

    /// Returns a copy that checks sum_i i * tau_{in} == theta on each column.
    ColumnSchedule with_theta(const Rational& theta) const;

    /// kinds: {"kind": "constant", "tau": [...]},
    /// {"kind": "converging", "limit": [...], "offset": [...], "rate_power": 1},
    /// {"kind": "explicit", "columns": [[...], ...], "tail": "repeat_last" | "cycle"};
    /// each accepts an optional "theta".
    static ColumnSchedule from_json(const nlohmann::json& j);
    /// Throws std::logic_error for schedules built from a custom rule.
    nlohmann::json to_json() const;

    Base base() const noexcept { return base_; }
    const std::optional<ProbabilityVector>& limit() const noexcept { return limit_; }
    const std::optional<Rational>& theta() const noexcept { return theta_; }

    /// Column n >= 1. Throws std::invalid_argument if the column is not
    /// stochastic or violates the declared theta.
    ProbabilityVector column(std::uint64_t n) const;

private:
    Base base_;
    Rule rule_;
    std::optional<ProbabilityVector> limit_;
    std::optional<Rational> theta_;
    nlohmann::json descriptor_;
};

/// Parsed form of `{"schedule": {...}, "columns": {...}}`.
struct BlockConfig {
    ScheduleSpec schedule;
    ColumnSchedule columns;

    static BlockConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

}  // namespace adiclab
