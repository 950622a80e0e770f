#include "adiclab/digits.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace adiclab {

namespace {

class PeriodicSource final : public DigitSource {
public:
    PeriodicSource(std::vector<Digit> preperiod, std::vector<Digit> period)
        : preperiod_(std::move(preperiod)), period_(std::move(period)) {}

    Digit at(std::uint64_t index) const override {
        if (index < preperiod_.size()) return preperiod_[index];
        return period_[(index - preperiod_.size()) % period_.size()];
    }

private:
    std::vector<Digit> preperiod_;
    std::vector<Digit> period_;
};

class FunctionSource final : public DigitSource {
public:
    explicit FunctionSource(std::function<Digit(std::uint64_t)> rule) : rule_(std::move(rule)) {}
    Digit at(std::uint64_t index) const override { return rule_(index); }

private:
    std::function<Digit(std::uint64_t)> rule_;
};

class IndexedCursor final : public DigitCursorImpl {
public:
    explicit IndexedCursor(std::shared_ptr<const DigitSource> source) : source_(std::move(source)) {}
    Digit next() override { return source_->at(index_++); }

private:
    std::shared_ptr<const DigitSource> source_;
    std::uint64_t index_ = 0;
};

void check_digit(Base base, Digit d) {
    if (!base.contains(d)) {
        throw std::logic_error("digit source produced " + std::to_string(d) + " outside base " +
                               std::to_string(base.value()));
    }
}

}  // namespace

Base::Base(int s) : s_(s) {
    if (s < 2 || s > kMax) throw std::invalid_argument("base must be in [2, 256], got " + std::to_string(s));
}

DigitPrefix::DigitPrefix(Base base, std::vector<Digit> digits) : base_(base), digits_(std::move(digits)) {
    for (Digit d : digits_) {
        if (!base_.contains(d)) {
            throw std::invalid_argument("digit " + std::to_string(d) + " outside base " + std::to_string(base_.value()));
        }
    }
}

DigitPrefix DigitPrefix::parse(std::string_view text, Base base) {
    std::vector<Digit> digits;
    digits.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c < '0' || c > '9') {
            throw std::invalid_argument("non-digit character at offset " + std::to_string(i));
        }
        digits.push_back(static_cast<Digit>(c - '0'));
    }
    return DigitPrefix(base, std::move(digits));
}

std::string DigitPrefix::str() const {
    if (base_.value() > Base::kMaxSerializable) {
        throw std::invalid_argument("ASCII digit form needs base <= 10");
    }
    std::string out(digits_.size(), '0');
    for (std::size_t i = 0; i < digits_.size(); ++i) out[i] = static_cast<char>('0' + digits_[i]);
    return out;
}

std::unique_ptr<DigitCursorImpl> DigitSource::cursor() const { return std::make_unique<IndexedCursor>(shared_from_this()); }

Digit DigitCursor::next() {
    Digit d = impl_->next();
    check_digit(base_, d);
    ++position_;
    return d;
}

DigitStream::DigitStream(Base base, std::shared_ptr<const DigitSource> source, std::optional<Periodicity> periodicity)
    : base_(base), source_(std::move(source)), periodicity_(std::move(periodicity)) {
    if (!source_) throw std::invalid_argument("null digit source");
    if (periodicity_) {
        if (periodicity_->period.empty()) throw std::invalid_argument("empty period");
        for (Digit d : periodicity_->preperiod) check_digit(base_, d);
        for (Digit d : periodicity_->period) check_digit(base_, d);
    }
}

DigitStream DigitStream::periodic(Base base, std::vector<Digit> preperiod, std::vector<Digit> period) {
    Periodicity p{preperiod, period};
    if (period.empty()) throw std::invalid_argument("empty period");
    return DigitStream(base, std::make_shared<PeriodicSource>(std::move(preperiod), std::move(period)), std::move(p));
}

DigitStream DigitStream::constant(Base base, Digit digit) { return periodic(base, {}, {digit}); }

DigitStream DigitStream::from_function(Base base, std::function<Digit(std::uint64_t)> rule) {
    return DigitStream(base, std::make_shared<FunctionSource>(std::move(rule)));
}

Digit DigitStream::at(std::uint64_t index) const {
    Digit d = source_->at(index);
    check_digit(base_, d);
    return d;
}

DigitPrefix DigitStream::prefix(std::uint64_t length) const {
    std::vector<Digit> digits;
    digits.reserve(length);
    DigitCursor c = cursor();
    for (std::uint64_t i = 0; i < length; ++i) digits.push_back(c.next());
    return DigitPrefix(base_, std::move(digits));
}

DigitStream expand(const Rational& x, Base base) {
    if (x < Rational(0) || x > Rational(1)) throw std::domain_error("expand: x must lie in [0,1], got " + x.str());
    if (x == Rational(1)) return DigitStream::periodic(base, {}, {base.max_digit()});

    const BigInt& q = x.den();
    BigInt r = x.num();
    std::vector<Digit> digits;
    std::map<BigInt, std::size_t> seen;  // remainder -> index of the digit it produces
    while (true) {
        if (r.is_zero()) return DigitStream::periodic(base, std::move(digits), {0});
        auto [it, inserted] = seen.emplace(r, digits.size());
        if (!inserted) {
            std::vector<Digit> pre(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(it->second));
            std::vector<Digit> per(digits.begin() + static_cast<std::ptrdiff_t>(it->second), digits.end());
            return DigitStream::periodic(base, std::move(pre), std::move(per));
        }
        r *= base.value();
        digits.push_back(static_cast<Digit>(static_cast<unsigned>(r / q)));
        r %= q;
    }
}

Rational prefix_value(const DigitPrefix& prefix) {
    BigInt acc = 0;
    for (Digit d : prefix.digits()) acc = acc * prefix.base().value() + d;
    return Rational(std::move(acc), power(prefix.base().value(), prefix.size()));
}

DigitStream dual_representation(const DigitPrefix& prefix) {
    if (prefix.empty()) throw std::invalid_argument("dual_representation: empty prefix");
    if (prefix.digits().back() == 0) throw std::invalid_argument("dual_representation: prefix ends in 0");
    std::vector<Digit> pre(prefix.digits().begin(), prefix.digits().end());
    pre.back() = static_cast<Digit>(pre.back() - 1);
    return DigitStream::periodic(prefix.base(), std::move(pre), {prefix.base().max_digit()});
}

bool has_two_representations(const Rational& x, Base base) {
    if (x < Rational(0) || x > Rational(1)) {
        throw std::domain_error("has_two_representations: x must lie in [0,1], got " + x.str());
    }
    if (x.is_zero() || x == Rational(1)) return false;
    BigInt den = x.den();
    const BigInt s = base.value();
    for (BigInt g = boost::multiprecision::gcd(den, s); g != 1; g = boost::multiprecision::gcd(den, s)) den /= g;
    return den == 1;
}

}  // namespace adiclab
