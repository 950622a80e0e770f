#pragma once

/**
 * @file digits.hpp
 * @brief Base-s digit sequences for numbers in [0,1].
 *
 * A number x in [0,1] is written x = sum_{k>=1} a_k s^{-k}. A DigitPrefix is
 * a finite materialized run a_1..a_n; a DigitStream is an unbounded,
 * deterministic source of digits addressed by index.
 *
 * Indices in this API are zero-based: stream.at(0) is the first digit a_1.
 *
 * Numbers with a terminating expansion (s-adic rationals) have two
 * representations, one ending in (0) and one ending in (s-1). expand()
 * always returns the (0) form; dual_representation() converts explicitly.
 */

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adiclab/rational.hpp"

namespace adiclab {

using Digit = std::uint8_t;

/// Radix of the numeral system, s >= 2.
class Base {
public:
    static constexpr int kDefault = 4;
    /// Largest base whose digits serialize as single ASCII characters.
    static constexpr int kMaxSerializable = 10;
    /// Digits are stored in a byte.
    static constexpr int kMax = 256;

    constexpr Base() = default;
    /// Throws std::invalid_argument unless 2 <= s <= kMax.
    explicit Base(int s);

    constexpr int value() const noexcept { return s_; }
    constexpr Digit max_digit() const noexcept { return static_cast<Digit>(s_ - 1); }
    constexpr bool contains(int digit) const noexcept { return digit >= 0 && digit < s_; }

    friend constexpr bool operator==(Base, Base) = default;

private:
    int s_ = kDefault;
};

class DigitPrefix {
public:
    DigitPrefix() = default;
    explicit DigitPrefix(Base base) : base_(base) {}
    /// Throws std::invalid_argument if any digit is out of range.
    DigitPrefix(Base base, std::vector<Digit> digits);

    /// Parses ASCII '0'..'9'. Throws std::invalid_argument on any other
    /// character or on a digit outside the base.
    static DigitPrefix parse(std::string_view text, Base base = Base());

    Base base() const noexcept { return base_; }
    std::size_t size() const noexcept { return digits_.size(); }
    bool empty() const noexcept { return digits_.empty(); }
    std::span<const Digit> digits() const noexcept { return digits_; }
    Digit operator[](std::size_t i) const { return digits_[i]; }

    /// ASCII rendering; throws std::invalid_argument for bases above 10.
    std::string str() const;

    friend bool operator==(const DigitPrefix&, const DigitPrefix&) = default;

private:
    Base base_;
    std::vector<Digit> digits_;
};

/// Known eventual period of a stream: preperiod digits, then `period`
/// repeated forever.
struct Periodicity {
    std::vector<Digit> preperiod;
    std::vector<Digit> period;

    friend bool operator==(const Periodicity&, const Periodicity&) = default;
};

/// Sequential reader used for bulk materialization. Each digit is produced
/// once, in order, in amortized constant time for the built-in sources.
class DigitCursorImpl {
public:
    virtual ~DigitCursorImpl() = default;
    virtual Digit next() = 0;
};

/// Pure index -> digit rule. Implementations must be deterministic and free
/// of interior mutation so that concurrent at() calls are safe. Sources are
/// owned through shared_ptr; cursors keep their source alive.
class DigitSource : public std::enable_shared_from_this<DigitSource> {
public:
    virtual ~DigitSource() = default;
    virtual Digit at(std::uint64_t index) const = 0;
    /// Default cursor calls at() for consecutive indices.
    virtual std::unique_ptr<DigitCursorImpl> cursor() const;
};

class DigitCursor {
public:
    DigitCursor(Base base, std::unique_ptr<DigitCursorImpl> impl) : base_(base), impl_(std::move(impl)) {}

    /// Throws std::logic_error if the source emits a digit outside the base.
    Digit next();
    std::uint64_t position() const noexcept { return position_; }

private:
    Base base_;
    std::unique_ptr<DigitCursorImpl> impl_;
    std::uint64_t position_ = 0;
};

class DigitStream {
public:
    DigitStream(Base base, std::shared_ptr<const DigitSource> source,
                std::optional<Periodicity> periodicity = std::nullopt);

    static DigitStream periodic(Base base, std::vector<Digit> preperiod, std::vector<Digit> period);
    static DigitStream constant(Base base, Digit digit);
    static DigitStream from_function(Base base, std::function<Digit(std::uint64_t)> rule);

    Base base() const noexcept { return base_; }
    const std::optional<Periodicity>& periodicity() const noexcept { return periodicity_; }

    /// Digit a_{index+1}. Throws std::logic_error if the source emits a
    /// digit outside the base.
    Digit at(std::uint64_t index) const;
    DigitCursor cursor() const { return DigitCursor(base_, source_->cursor()); }
    DigitPrefix prefix(std::uint64_t length) const;

private:
    Base base_;
    std::shared_ptr<const DigitSource> source_;
    std::optional<Periodicity> periodicity_;
};

/// Canonical base-s expansion of x in [0,1] by long division. Terminating
/// expansions get period (0); x = 1 is (s-1) repeated. The periodicity
/// descriptor is always present and preperiod + period length <= den(x).
/// Throws std::domain_error if x is outside [0,1].
DigitStream expand(const Rational& x, Base base = Base());

/// Exact value of sum_{k=1..n} a_k s^{-k}.
Rational prefix_value(const DigitPrefix& prefix);

/// Converts the terminating expansion p(0) into the equal-valued stream
/// c_1..c_{k-1}[c_k - 1](s-1). Throws std::invalid_argument if the prefix is
/// empty or ends in 0.
DigitStream dual_representation(const DigitPrefix& prefix);

/// True iff 0 < x < 1 and x = p/s^k. Throws std::domain_error outside [0,1].
bool has_two_representations(const Rational& x, Base base = Base());

}  // namespace adiclab
