#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational numbers over arbitrary-precision integers.
 *
 * Values are kept in lowest terms with a positive denominator, so equality
 * is structural and zero is always 0/1. Serialization uses "p/q".
 */

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace adiclab {

using BigInt = boost::multiprecision::cpp_int;

class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(BigInt value) : num_(std::move(value)) {}  // NOLINT(google-explicit-constructor)

    /// Throws std::domain_error when den == 0.
    Rational(BigInt num, BigInt den);

    /// Accepts "p/q", an integer "p", or an exact decimal such as "0.125"
    /// or "-1.5e-3". Throws std::invalid_argument on anything else.
    static Rational parse(std::string_view text);

    const BigInt& num() const noexcept { return num_; }
    const BigInt& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_integer() const noexcept { return den_ == 1; }

    /// Greatest integer not exceeding the value.
    BigInt floor() const;

    Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }

    double to_double() const;

    /// Always "p/q", including integers ("3/1") and zero ("0/1").
    std::string str() const;

    /// Decimal rendering with the given number of significant digits.
    std::string to_decimal(int significant_digits) const;

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    friend Rational operator-(const Rational& value) { return Rational(-value.num_, value.den_); }

    friend bool operator==(const Rational& lhs, const Rational& rhs) {
        return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

private:
    void normalize();

    BigInt num_{0};
    BigInt den_{1};
};

/// s^k as an exact integer.
BigInt power(std::int64_t base, std::uint64_t exponent);

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace adiclab
