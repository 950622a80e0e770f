#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "adiclab/digits.hpp"
#include "adiclab/rational.hpp"

namespace adiclab {

/// Exact point on the probability simplex: tau_i >= 0, sum tau_i = 1.
/// The size of the vector is the base.
class ProbabilityVector {
public:
    /// Throws std::invalid_argument if fewer than two entries, any entry is
    /// negative, or the entries do not sum to exactly 1.
    explicit ProbabilityVector(std::vector<Rational> entries);

    /// Comma-separated rationals, e.g. "1/2,1/2,0,0".
    static ProbabilityVector parse(std::string_view text);
    static ProbabilityVector uniform(Base base);
    static ProbabilityVector point_mass(Base base, Digit digit);

    Base base() const { return Base(static_cast<int>(entries_.size())); }
    std::size_t size() const noexcept { return entries_.size(); }
    const Rational& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<Rational>& entries() const noexcept { return entries_; }

    /// sum_i i * tau_i.
    Rational mean() const;
    std::vector<double> to_doubles() const;
    /// Comma-separated "p/q" entries.
    std::string str() const;

    friend bool operator==(const ProbabilityVector&, const ProbabilityVector&) = default;

private:
    std::vector<Rational> entries_;
};

}  // namespace adiclab
