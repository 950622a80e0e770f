#include "adiclab/rational.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace adiclab {

namespace {

bool all_digits(std::string_view text) {
    if (text.empty()) return false;
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

// cpp_int's string constructor reads a leading 0 as an octal prefix.
BigInt decimal_digits(std::string_view digits) {
    while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
    return BigInt{std::string(digits)};
}

BigInt parse_integer(std::string_view text) {
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (!all_digits(text)) {
        throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    }
    BigInt value = decimal_digits(text);
    return negative ? BigInt(-value) : value;
}

Rational parse_decimal(std::string_view text) {
    const std::string original(text);
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    std::int64_t exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = text.substr(e + 1);
        text = text.substr(0, e);
        if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
        const char* first = exp_text.data();
        const char* last = first + exp_text.size();
        auto [ptr, ec] = std::from_chars(first, last, exponent);
        if (exp_text.empty() || ec != std::errc() || ptr != last || exponent > 4096 || exponent < -4096) {
            throw std::invalid_argument("bad exponent in '" + original + "'");
        }
    }

    std::string_view whole = text;
    std::string_view frac;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        whole = text.substr(0, dot);
        frac = text.substr(dot + 1);
    }
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
        throw std::invalid_argument("not a number: '" + original + "'");
    }

    BigInt mantissa = decimal_digits(std::string(whole.empty() ? "0" : whole) + std::string(frac));
    if (negative) mantissa = -mantissa;
    exponent -= static_cast<std::int64_t>(frac.size());
    if (exponent >= 0) return Rational(mantissa * power(10, static_cast<std::uint64_t>(exponent)));
    return Rational(mantissa, power(10, static_cast<std::uint64_t>(-exponent)));
}

}  // namespace

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("rational with zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = 1;
        return;
    }
    BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g != 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("empty rational");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(text.substr(0, slash));
        BigInt den = parse_integer(text.substr(slash + 1));
        if (den.is_zero()) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        return Rational(std::move(num), std::move(den));
    }
    return parse_decimal(text);
}

BigInt Rational::floor() const {
    BigInt q = num_ / den_;  // truncates toward zero
    if (num_ < 0 && q * den_ != num_) --q;
    return q;
}

double Rational::to_double() const {
    using boost::multiprecision::cpp_rational;
    return cpp_rational(num_, den_).convert_to<double>();
}

std::string Rational::str() const { return num_.str() + "/" + den_.str(); }

std::string Rational::to_decimal(int significant_digits) const {
    if (significant_digits < 1) significant_digits = 1;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant_digits, to_double());
    return buf;
}

Rational& Rational::operator+=(const Rational& rhs) {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ *= rhs.den_;
    normalize();
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    num_ = num_ * rhs.den_ - rhs.num_ * den_;
    den_ *= rhs.den_;
    normalize();
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    num_ *= rhs.num_;
    den_ *= rhs.den_;
    normalize();
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw std::domain_error("rational division by zero");
    num_ *= rhs.den_;
    den_ *= rhs.num_;
    normalize();
    return *this;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    BigInt a = lhs.num_ * rhs.den_;
    BigInt b = rhs.num_ * lhs.den_;
    if (a < b) return std::strong_ordering::less;
    if (a > b) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

BigInt power(std::int64_t base, std::uint64_t exponent) {
    BigInt result = 1;
    BigInt b = base;
    while (exponent > 0) {
        if (exponent & 1U) result *= b;
        exponent >>= 1U;
        if (exponent > 0) b *= b;
    }
    return result;
}

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.str(); }

}  // namespace adiclab
