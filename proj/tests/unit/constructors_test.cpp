#include <gtest/gtest.h>

#include "adiclab/constructors.hpp"
#include "adiclab/digit_stats.hpp"
#include "oracles.hpp"

using namespace adiclab;

namespace {

ProbabilityVector pv(const char* text) { return ProbabilityVector::parse(text); }

// Test battery of rational vectors on the 4-simplex, written over a common
// denominator for the simulation oracle.
struct Battery {
    const char* text;
    std::vector<std::uint64_t> numerators;
    std::uint64_t denominator;
};

const std::vector<Battery>& battery() {
    static const std::vector<Battery> b{
        {"1/4,1/4,1/4,1/4", {1, 1, 1, 1}, 4},
        {"1/2,1/3,1/6,0", {3, 2, 1, 0}, 6},
        {"1/10,2/10,3/10,4/10", {1, 2, 3, 4}, 10},
        {"1/2,1/2,0,0", {1, 1, 0, 0}, 2},
        {"0,0,0,1", {0, 0, 0, 1}, 1},
        {"1,0,0,0", {1, 0, 0, 0}, 1},
        {"3/7,1/7,2/7,1/7", {3, 1, 2, 1}, 7},
        {"1/97,13/97,40/97,43/97", {1, 13, 40, 43}, 97},
    };
    return b;
}

}  // namespace

TEST(ProbabilityVector, Validation) {
    EXPECT_NO_THROW(pv("1/2,1/2"));
    EXPECT_THROW(pv("1/2,1/3"), std::invalid_argument);
    EXPECT_THROW(pv("3/2,-1/2"), std::invalid_argument);
    EXPECT_THROW(pv("1"), std::invalid_argument);
    EXPECT_EQ(pv("1/6,1/3,1/3,1/6").mean(), Rational(3, 2));
    EXPECT_EQ(ProbabilityVector::uniform(Base(4)), pv("1/4,1/4,1/4,1/4"));
}

TEST(GreedyIncrements, SpotValues) {
    using V = std::vector<std::uint8_t>;
    for (std::uint64_t n : {1u, 2u, 17u, 1000u}) EXPECT_EQ(greedy_increments(pv("1,0,0,0"), n), (V{1, 0, 0, 0}));
    EXPECT_EQ(greedy_increments(pv("1/2,1/2,0,0"), 1), (V{1, 1, 0, 0}));
    EXPECT_EQ(greedy_increments(pv("1/2,1/2,0,0"), 2), (V{0, 0, 0, 0}));
    EXPECT_THROW(greedy_increments(pv("1/2,1/2,0,0"), 0), std::invalid_argument);
}

TEST(GreedyIncrements, BinaryAndTelescoping) {
    for (const auto& b : battery()) {
        ProbabilityVector tau = pv(b.text);
        std::vector<std::uint64_t> sum(4, 0);
        for (std::uint64_t n = 1; n <= 500; ++n) {
            auto inc = greedy_increments(tau, n);
            for (std::size_t i = 0; i < 4; ++i) {
                ASSERT_LE(inc[i], 1);
                sum[i] += inc[i];
                ASSERT_EQ(sum[i], oracle::floor_mul(b.numerators[i], b.denominator, n + 1) -
                                      oracle::floor_mul(b.numerators[i], b.denominator, 1));
            }
        }
    }
}

TEST(GreedyStream, SpotValues) {
    EXPECT_EQ(greedy_stream(pv("0,0,0,1")).prefix(8).str(), "33333333");
    EXPECT_EQ(greedy_stream(pv("1/2,1/2,0,0")).prefix(8).str(), "01010101");
    // m copies of each digit at every m-step boundary
    DigitPrefix p = greedy_stream(ProbabilityVector::uniform(Base(4))).prefix(400);
    for (std::size_t m = 1; m <= 100; ++m) {
        auto counts = oracle::tally(p.str().substr(0, 4 * m), 4);
        for (auto c : counts) ASSERT_EQ(c, m);
    }
}

TEST(GreedyStream, MatchesLiteralSimulation) {
    for (const auto& b : battery()) {
        std::vector<oracle::cpp_int> p(b.numerators.begin(), b.numerators.end());
        std::string expected = oracle::greedy_simulation(p, b.denominator, 3000);
        EXPECT_EQ(greedy_stream(pv(b.text)).prefix(3000).str(), expected) << b.text;
    }
}

TEST(GreedyStream, ExactCountsAtStepBoundaries) {
    for (const auto& b : battery()) {
        std::string digits = greedy_stream(pv(b.text)).prefix(10000).str();
        for (std::uint64_t n = 1;; ++n) {
            std::vector<std::uint64_t> expect(4);
            std::uint64_t len = 0;
            for (std::size_t i = 0; i < 4; ++i) {
                expect[i] = oracle::floor_mul(b.numerators[i], b.denominator, n);
                len += expect[i];
            }
            if (len > digits.size()) break;
            ASSERT_EQ(oracle::tally(digits.substr(0, len), 4), expect) << b.text << " n=" << n;
        }
    }
}

TEST(GreedyStream, RandomAccessAgreesWithCursor) {
    for (const auto& b : battery()) {
        DigitStream s = greedy_stream(pv(b.text));
        DigitPrefix p = s.prefix(2000);
        for (std::uint64_t k = 0; k < 2000; k += 7) ASSERT_EQ(s.at(k), p[k]) << b.text << " k=" << k;
        ASSERT_EQ(s.at(1999), p[1999]);
    }
}

TEST(GreedyStream, LargeDenominatorsUseExactArithmetic) {
    // Denominator above 2^62 takes the arbitrary-precision path.
    BigInt big = power(2, 70) + 1;
    BigInt a = big / 3;
    ProbabilityVector tau({Rational(a, big), Rational(big - a, big)});
    DigitStream s = greedy_stream(tau);
    std::string expected = oracle::greedy_simulation({a, big - a}, big, 3000);
    EXPECT_EQ(s.prefix(3000).str(), expected);
    EXPECT_EQ(s.at(2999), static_cast<Digit>(expected[2999] - '0'));
}

TEST(MeanTarget, Endpoints) {
    EXPECT_EQ(mean_target_stream(Rational(0)).prefix(10).str(), "0000000000");
    EXPECT_EQ(mean_target_stream(Rational(3)).prefix(10).str(), "3333333333");
    EXPECT_EQ(mean_target_stream(Rational(1), Base(2)).prefix(5).str(), "11111");
    EXPECT_THROW(mean_target_stream(Rational(-1, 10)), std::domain_error);
    EXPECT_THROW(mean_target_stream(Rational(31, 10)), std::domain_error);
}

TEST(MeanTarget, MidpointIsUniformGreedy) {
    EXPECT_EQ(mean_target_vector(Rational(3, 2)), ProbabilityVector::uniform(Base(4)));
    DigitStream s = mean_target_stream(Rational(3, 2));
    EXPECT_EQ(s.prefix(4000), greedy_stream(ProbabilityVector::uniform(Base(4))).prefix(4000));
    std::vector<std::uint64_t> cps{100000};
    EXPECT_LE((convergence_trace(s, cps).reports[0].mean - Rational(3, 2)).abs(), Rational(1, 1000));
}

TEST(MeanTarget, VectorSatisfiesConstraintsExactly) {
    for (const char* t : {"1/100", "1/10", "1/2", "1", "7/5", "2", "5/2", "29/10", "299/100", "2.999999"}) {
        Rational theta = Rational::parse(t);
        ProbabilityVector tau = mean_target_vector(theta);
        EXPECT_EQ(tau.mean(), theta) << t;
    }
    for (int s : {2, 3, 5, 10}) {
        Rational theta(s - 1, 3);
        EXPECT_EQ(mean_target_vector(theta, Base(s)).mean(), theta) << s;
    }
}

TEST(MeanTarget, NearEndpointStaysNonnegative) {
    Rational theta = Rational(3) - Rational(BigInt(1), power(10, 15));
    ProbabilityVector tau = mean_target_vector(theta);
    EXPECT_EQ(tau.mean(), theta);
    Rational low(BigInt(1), power(10, 15));
    EXPECT_EQ(mean_target_vector(low).mean(), low);
}

TEST(PrefixDistinguish, SpotValues) {
    DigitStream zeros = DigitStream::constant(Base(4), 0);
    DigitStream threes = DigitStream::constant(Base(4), 3);
    Distinction d = prefix_distinguish(zeros, threes, 10);
    ASSERT_TRUE(d.differ());
    EXPECT_EQ(*d.first_difference, 1u);

    Distinction same = prefix_distinguish(expand(Rational(1, 3)), expand(Rational(1, 3)), 100);
    EXPECT_FALSE(same.differ());
    EXPECT_EQ(same.horizon, 100u);
}

TEST(PrefixDistinguish, BlockStreamsWithDifferentColumns) {
    ScheduleSpec linear = ScheduleSpec::polynomial(1);
    DigitStream a = block_stream(ColumnSchedule::constant(ProbabilityVector::uniform(Base(4))), linear);
    DigitStream b = block_stream(ColumnSchedule::constant(pv("1/2,1/2,0,0")), linear);
    // a: blocks 1..3 empty, block 4 is "0123"; b: "01" from blocks 2 and 3.
    Distinction d = prefix_distinguish(a, b, 100);
    ASSERT_TRUE(d.differ());
    EXPECT_EQ(*d.first_difference, 3u);
}

TEST(PrefixDistinguish, SymmetricAndMonotone) {
    DigitStream a = expand(Rational(1, 7));
    DigitStream b = expand(Rational(1, 7) + Rational(BigInt(1), power(4, 30)));
    for (std::uint64_t n : {1u, 10u, 29u, 30u, 31u, 100u}) {
        Distinction ab = prefix_distinguish(a, b, n);
        Distinction ba = prefix_distinguish(b, a, n);
        EXPECT_EQ(ab.first_difference, ba.first_difference);
    }
    Distinction at40 = prefix_distinguish(a, b, 40);
    ASSERT_TRUE(at40.differ());
    for (std::uint64_t n = *at40.first_difference; n < 200; n += 13) {
        EXPECT_EQ(prefix_distinguish(a, b, n).first_difference, at40.first_difference);
    }
    EXPECT_FALSE(prefix_distinguish(a, b, *at40.first_difference - 1).differ());
}

TEST(PrefixDistinguish, Errors) {
    DigitStream a = DigitStream::constant(Base(4), 0);
    EXPECT_THROW(prefix_distinguish(a, a, 0), std::invalid_argument);
    EXPECT_THROW(prefix_distinguish(a, DigitStream::constant(Base(3), 0), 5), std::invalid_argument);
}
