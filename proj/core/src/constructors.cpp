#include "adiclab/constructors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "adiclab/entropy.hpp"

namespace adiclab {

namespace {

__extension__ using u128 = unsigned __int128;

/// floor(tau_i * n) over a common denominator, in 128-bit arithmetic when
/// the denominator fits in 62 bits.
class FloorTable {
public:
    explicit FloorTable(const ProbabilityVector& tau) {
        BigInt den = 1;
        for (const Rational& t : tau.entries()) den = boost::multiprecision::lcm(den, t.den());
        big_den_ = den;
        for (const Rational& t : tau.entries()) big_num_.push_back(t.num() * (den / t.den()));
        fast_ = den <= (BigInt(1) << 62);
        if (fast_) {
            den_ = den.convert_to<std::uint64_t>();
            for (const BigInt& a : big_num_) num_.push_back(a.convert_to<std::uint64_t>());
        }
    }

    std::size_t size() const noexcept { return big_num_.size(); }

    std::uint64_t floor(std::size_t i, std::uint64_t n) const {
        if (fast_) {
            return static_cast<std::uint64_t>(static_cast<u128>(num_[i]) * n / den_);
        }
        BigInt q = big_num_[i] * n / big_den_;
        return q.convert_to<std::uint64_t>();
    }

    std::uint64_t total(std::uint64_t n) const {
        std::uint64_t t = 0;
        for (std::size_t i = 0; i < size(); ++i) t += floor(i, n);
        return t;
    }

private:
    bool fast_ = false;
    std::uint64_t den_ = 1;
    std::vector<std::uint64_t> num_;
    BigInt big_den_;
    std::vector<BigInt> big_num_;
};

class GreedySource final : public DigitSource {
public:
    explicit GreedySource(const ProbabilityVector& tau) : table_(tau) {}

    Digit at(std::uint64_t index) const override {
        // total(n) > n - s, so step index + s already covers position index.
        std::uint64_t lo = 1;
        std::uint64_t hi = index + table_.size();
        while (lo < hi) {
            std::uint64_t mid = lo + (hi - lo) / 2;
            if (table_.total(mid) > index) hi = mid; else lo = mid + 1;
        }
        std::uint64_t offset = index - table_.total(lo - 1);
        for (std::size_t i = 0; i < table_.size(); ++i) {
            std::uint64_t c = table_.floor(i, lo) - table_.floor(i, lo - 1);
            if (offset < c) return static_cast<Digit>(i);
            offset -= c;
        }
        throw std::logic_error("greedy stream: position not covered by its step");
    }

    std::unique_ptr<DigitCursorImpl> cursor() const override;

    const FloorTable& table() const noexcept { return table_; }

private:
    FloorTable table_;
};

class GreedyCursor final : public DigitCursorImpl {
public:
    explicit GreedyCursor(std::shared_ptr<const GreedySource> source)
        : source_(std::move(source)), digit_(source_->table().size()) {}

    Digit next() override {
        const FloorTable& t = source_->table();
        while (remaining_ == 0) {
            if (++digit_ >= t.size()) {
                digit_ = 0;
                ++step_;
            }
            remaining_ = t.floor(digit_, step_) - t.floor(digit_, step_ - 1);
        }
        --remaining_;
        return static_cast<Digit>(digit_);
    }

private:
    std::shared_ptr<const GreedySource> source_;
    std::uint64_t step_ = 0;
    std::size_t digit_;  // starts past the last digit so the first call opens step 1
    std::uint64_t remaining_ = 0;
};

std::unique_ptr<DigitCursorImpl> GreedySource::cursor() const {
    return std::make_unique<GreedyCursor>(std::static_pointer_cast<const GreedySource>(shared_from_this()));
}

class BlockSource final : public DigitSource {
public:
    BlockSource(ColumnSchedule columns, ScheduleSpec schedule)
        : columns_(std::move(columns)), schedule_(std::move(schedule)) {}

    Digit at(std::uint64_t index) const override {
        std::uint64_t start = 0;
        for (std::uint64_t k = 1;; ++k) {
            std::vector<std::uint64_t> counts = block_counts(columns_, schedule_, k);
            for (std::size_t i = 0; i < counts.size(); ++i) {
                if (index < start + counts[i]) return static_cast<Digit>(i);
                start += counts[i];
            }
        }
    }

    std::unique_ptr<DigitCursorImpl> cursor() const override;

    std::vector<std::uint64_t> counts(std::uint64_t k) const { return block_counts(columns_, schedule_, k); }

private:
    ColumnSchedule columns_;
    ScheduleSpec schedule_;
};

class BlockCursor final : public DigitCursorImpl {
public:
    explicit BlockCursor(std::shared_ptr<const BlockSource> source) : source_(std::move(source)) {}

    Digit next() override {
        while (remaining_ == 0) {
            if (++digit_ >= counts_.size()) {
                counts_ = source_->counts(++block_);
                digit_ = 0;
            }
            remaining_ = counts_[digit_];
        }
        --remaining_;
        return static_cast<Digit>(digit_);
    }

private:
    std::shared_ptr<const BlockSource> source_;
    std::uint64_t block_ = 0;
    std::vector<std::uint64_t> counts_;
    std::size_t digit_ = 0;
    std::uint64_t remaining_ = 0;
};

std::unique_ptr<DigitCursorImpl> BlockSource::cursor() const {
    return std::make_unique<BlockCursor>(std::static_pointer_cast<const BlockSource>(shared_from_this()));
}

/// The double's exact binary value.
Rational exact_rational(double x) {
    int exponent = 0;
    double mantissa = std::frexp(x, &exponent);
    auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
    exponent -= 53;
    if (exponent >= 0) return Rational(BigInt(scaled) << exponent);
    return Rational(BigInt(scaled), BigInt(1) << -exponent);
}

/// Rounds every coordinate except the pair (a, b) and solves the pair from
/// the two linear constraints. Returns nullopt if the pair goes negative.
std::optional<ProbabilityVector> solve_pair(const std::vector<double>& approx, const Rational& theta, std::size_t a,
                                            std::size_t b, const std::optional<BigInt>& grid) {
    std::vector<Rational> tau(approx.size());
    Rational mass(1);
    Rational moment = theta;
    for (std::size_t i = 0; i < approx.size(); ++i) {
        if (i == a || i == b) continue;
        if (grid) {
            tau[i] = Rational(BigInt(std::llround(approx[i] * grid->convert_to<double>())), *grid);
        } else {
            tau[i] = exact_rational(approx[i]);
        }
        mass -= tau[i];
        moment -= tau[i] * Rational(static_cast<std::int64_t>(i));
    }
    const Rational ra(static_cast<std::int64_t>(a));
    const Rational rb(static_cast<std::int64_t>(b));
    tau[b] = (moment - ra * mass) / (rb - ra);
    tau[a] = mass - tau[b];
    if (tau[a] < Rational(0) || tau[b] < Rational(0)) return std::nullopt;
    return ProbabilityVector(std::move(tau));
}

}  // namespace

std::vector<std::uint8_t> greedy_increments(const ProbabilityVector& tau, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("greedy_increments: n must be >= 1");
    FloorTable t(tau);
    std::vector<std::uint8_t> out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) out[i] = static_cast<std::uint8_t>(t.floor(i, n + 1) - t.floor(i, n));
    return out;
}

std::vector<std::uint64_t> greedy_counts(const ProbabilityVector& tau, std::uint64_t n) {
    FloorTable t(tau);
    std::vector<std::uint64_t> out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) out[i] = t.floor(i, n);
    return out;
}

DigitStream greedy_stream(const ProbabilityVector& tau) {
    return DigitStream(tau.base(), std::make_shared<GreedySource>(tau));
}

std::vector<std::uint64_t> block_counts(const ColumnSchedule& columns, const ScheduleSpec& schedule, std::uint64_t k) {
    const ProbabilityVector col = columns.column(k);
    const Rational len = schedule.length(k);
    std::vector<std::uint64_t> counts(col.size());
    for (std::size_t i = 0; i < col.size(); ++i) {
        BigInt c = (col[i] * len).floor();
        if (c > std::numeric_limits<std::uint64_t>::max()) {
            throw std::invalid_argument("block " + std::to_string(k) + " is too long for 64-bit counts");
        }
        counts[i] = c.convert_to<std::uint64_t>();
    }
    return counts;
}

std::vector<BlockBoundary> block_boundaries(const ColumnSchedule& columns, const ScheduleSpec& schedule,
                                            std::uint64_t max_digits) {
    std::vector<BlockBoundary> out;
    BlockBoundary cur;
    cur.counts.assign(static_cast<std::size_t>(columns.base().value()), 0);
    for (std::uint64_t k = 1;; ++k) {
        std::vector<std::uint64_t> c = block_counts(columns, schedule, k);
        std::uint64_t len = 0;
        for (std::uint64_t v : c) len += v;
        if (cur.end + len > max_digits) break;
        cur.block = k;
        cur.end += len;
        cur.schedule_total += schedule.length(k);
        for (std::size_t i = 0; i < c.size(); ++i) cur.counts[i] += c[i];
        out.push_back(cur);
    }
    return out;
}

DigitStream block_stream(const ColumnSchedule& columns, const ScheduleSpec& schedule) {
    ScheduleValidation v = validate_schedule(schedule);
    if (const ScheduleCondition* f = v.failure()) {
        throw std::invalid_argument("schedule " + schedule.describe() + " rejected: condition " +
                                    std::to_string(f->number) + " (" + f->statement + ") fails: " + f->reason);
    }
    return DigitStream(columns.base(), std::make_shared<BlockSource>(columns, schedule));
}

ProbabilityVector mean_target_vector(const Rational& theta, Base base) {
    const Rational top(base.max_digit());
    if (theta < Rational(0) || theta > top) {
        throw std::domain_error("mean target theta must lie in [0, " + std::to_string(base.max_digit()) + "], got " +
                                theta.str());
    }
    if (theta.is_zero()) return ProbabilityVector::point_mass(base, 0);
    if (theta == top) return ProbabilityVector::point_mass(base, base.max_digit());

    const EntropyResult opt = m_theta(theta.to_double(), base);
    // The Gibbs vector is monotone in the digit, so its two largest entries
    // sit at one end; solving those exactly keeps every entry nonnegative.
    const std::size_t s = opt.argmin.size();
    const bool upper = opt.multiplier >= 0.0;
    const std::size_t a = upper ? s - 1 : 0;
    const std::size_t b = upper ? s - 2 : 1;

    for (const std::optional<BigInt>& grid : {std::optional<BigInt>(power(10, 9)), std::optional<BigInt>()}) {
        if (auto tau = solve_pair(opt.argmin, theta, a, b, grid)) return *tau;
    }
    throw std::runtime_error("mean_target_vector: could not round the optimal vector for theta = " + theta.str());
}

DigitStream mean_target_stream(const Rational& theta, Base base) {
    ProbabilityVector tau = mean_target_vector(theta, base);
    if (theta.is_zero()) return DigitStream::constant(base, 0);
    if (theta == Rational(base.max_digit())) return DigitStream::constant(base, base.max_digit());
    return greedy_stream(tau);
}

Distinction prefix_distinguish(const DigitStream& a, const DigitStream& b, std::uint64_t horizon) {
    if (horizon == 0) throw std::invalid_argument("prefix_distinguish: horizon must be >= 1");
    if (a.base() != b.base()) throw std::invalid_argument("prefix_distinguish: streams have different bases");
    DigitCursor ca = a.cursor();
    DigitCursor cb = b.cursor();
    for (std::uint64_t k = 1; k <= horizon; ++k) {
        if (ca.next() != cb.next()) return {k, horizon};
    }
    return {std::nullopt, horizon};
}

}  // namespace adiclab
