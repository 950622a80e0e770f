#include "adiclab/probability.hpp"

#include <stdexcept>

namespace adiclab {

ProbabilityVector::ProbabilityVector(std::vector<Rational> entries) : entries_(std::move(entries)) {
    if (entries_.size() < 2 || entries_.size() > static_cast<std::size_t>(Base::kMax)) {
        throw std::invalid_argument("probability vector needs between 2 and 256 entries");
    }
    Rational total;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i] < Rational(0)) {
            throw std::invalid_argument("probability entry " + std::to_string(i) + " is negative: " + entries_[i].str());
        }
        total += entries_[i];
    }
    if (total != Rational(1)) throw std::invalid_argument("probability entries sum to " + total.str() + ", not 1");
}

ProbabilityVector ProbabilityVector::parse(std::string_view text) {
    std::vector<Rational> entries;
    while (true) {
        auto comma = text.find(',');
        entries.push_back(Rational::parse(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return ProbabilityVector(std::move(entries));
}

ProbabilityVector ProbabilityVector::uniform(Base base) {
    return ProbabilityVector(std::vector<Rational>(static_cast<std::size_t>(base.value()), Rational(1, base.value())));
}

ProbabilityVector ProbabilityVector::point_mass(Base base, Digit digit) {
    if (!base.contains(digit)) throw std::invalid_argument("point mass digit outside base");
    std::vector<Rational> entries(static_cast<std::size_t>(base.value()));
    entries[digit] = Rational(1);
    return ProbabilityVector(std::move(entries));
}

Rational ProbabilityVector::mean() const {
    Rational m;
    for (std::size_t i = 0; i < entries_.size(); ++i) m += entries_[i] * Rational(static_cast<std::int64_t>(i));
    return m;
}

std::vector<double> ProbabilityVector::to_doubles() const {
    std::vector<double> out;
    out.reserve(entries_.size());
    for (const Rational& r : entries_) out.push_back(r.to_double());
    return out;
}

std::string ProbabilityVector::str() const {
    std::string out;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) out += ',';
        out += entries_[i].str();
    }
    return out;
}

}  // namespace adiclab
