#include <gtest/gtest.h>

#include <thread>

#include "adiclab/digits.hpp"
#include "oracles.hpp"

using namespace adiclab;

namespace {

std::string head(const DigitStream& s, std::size_t n) { return s.prefix(n).str(); }

std::string as_text(const std::vector<Digit>& digits) {
    std::string out;
    for (Digit d : digits) out.push_back(static_cast<char>('0' + d));
    return out;
}

}  // namespace

TEST(Base, RejectsTooSmall) {
    EXPECT_THROW(Base(1), std::invalid_argument);
    EXPECT_THROW(Base(0), std::invalid_argument);
    EXPECT_EQ(Base().value(), 4);
}

TEST(DigitPrefix, ParseValidatesCharactersAndRange) {
    EXPECT_EQ(DigitPrefix::parse("0123").size(), 4u);
    EXPECT_THROW(DigitPrefix::parse("0124"), std::invalid_argument);
    EXPECT_THROW(DigitPrefix::parse("01a"), std::invalid_argument);
    EXPECT_EQ(DigitPrefix::parse("1021", Base(3)).str(), "1021");
    EXPECT_THROW(DigitPrefix(Base(12), {11}).str(), std::invalid_argument);
}

TEST(Expand, QuarterTerminatesWithPeriodZero) {
    DigitStream s = expand(Rational(1, 4));
    EXPECT_EQ(head(s, 6), "100000");
    ASSERT_TRUE(s.periodicity());
    EXPECT_EQ(as_text(s.periodicity()->preperiod), "1");
    EXPECT_EQ(as_text(s.periodicity()->period), "0");
}

TEST(Expand, ThirdIsAllOnes) {
    DigitStream s = expand(Rational(1, 3));
    EXPECT_EQ(head(s, 8), "11111111");
    EXPECT_TRUE(s.periodicity()->preperiod.empty());
    EXPECT_EQ(as_text(s.periodicity()->period), "1");
    // geometric series sum_k 4^-k = 1/3
    EXPECT_EQ(oracle::digit_sum("1", 4) / (1 - oracle::cpp_rational(1, 4)), oracle::cpp_rational(1, 3));
}

TEST(Expand, FifthHasPeriodZeroThree) {
    DigitStream s = expand(Rational(1, 5));
    EXPECT_EQ(head(s, 6), "030303");
    EXPECT_EQ(as_text(s.periodicity()->period), "03");
    // 3 / (4^2 - 1) = 1/5
    EXPECT_EQ(oracle::cpp_rational(3, 15), oracle::cpp_rational(1, 5));
}

TEST(Expand, EndpointsAndDomain) {
    EXPECT_EQ(head(expand(Rational(0)), 4), "0000");
    EXPECT_EQ(head(expand(Rational(1)), 4), "3333");
    EXPECT_EQ(head(expand(Rational(1), Base(2)), 4), "1111");
    EXPECT_THROW(expand(Rational(-1, 2)), std::domain_error);
    EXPECT_THROW(expand(Rational(5, 4)), std::domain_error);
}

TEST(Expand, MatchesLongDivisionOracleAcrossBases) {
    for (unsigned s : {2u, 3u, 4u, 7u, 10u}) {
        for (std::uint64_t q = 1; q <= 60; ++q) {
            for (std::uint64_t p = 0; p < q; ++p) {
                Rational x(static_cast<std::int64_t>(p), static_cast<std::int64_t>(q));
                auto [pre, per] = oracle::long_division(x.num().convert_to<std::uint64_t>(),
                                                        x.den().convert_to<std::uint64_t>(), s);
                DigitStream stream = expand(x, Base(static_cast<int>(s)));
                ASSERT_EQ(as_text(stream.periodicity()->preperiod), pre) << p << "/" << q << " base " << s;
                ASSERT_EQ(as_text(stream.periodicity()->period), per) << p << "/" << q << " base " << s;
                ASSERT_LE(pre.size() + per.size(), x.den().convert_to<std::size_t>());
            }
        }
    }
}

TEST(Expand, IsDeterministicAndIndexable) {
    DigitStream a = expand(Rational(17, 91));
    DigitStream b = expand(Rational(17, 91));
    EXPECT_EQ(a.prefix(500), b.prefix(500));
    DigitPrefix p = a.prefix(300);
    for (std::uint64_t k = 0; k < 300; ++k) ASSERT_EQ(a.at(k), p[k]);
}

TEST(PrefixValue, SpotValues) {
    EXPECT_EQ(prefix_value(DigitPrefix(Base(4))), Rational(0));
    EXPECT_EQ(prefix_value(DigitPrefix::parse("33")), Rational(15, 16));
    EXPECT_EQ(prefix_value(DigitPrefix::parse("102")), Rational(9, 32));
    oracle::cpp_rational ref = oracle::digit_sum("102", 4);
    EXPECT_EQ(ref, oracle::cpp_rational(9, 32));
}

TEST(PrefixValue, RoundTripWithinOneUlpOfTheBase) {
    for (std::int64_t q = 1; q <= 120; ++q) {
        for (std::int64_t p = 0; p <= q; ++p) {
            Rational x(p, q);
            DigitStream s = expand(x);
            for (std::uint64_t n : {1u, 5u, 17u, 40u}) {
                Rational v = prefix_value(s.prefix(n));
                Rational gap = x - v;
                ASSERT_GE(gap, Rational(0));
                ASSERT_LE(gap, Rational(BigInt(1), power(4, n)));
            }
        }
    }
}

TEST(DualRepresentation, SpotValues) {
    EXPECT_EQ(head(dual_representation(DigitPrefix::parse("1")), 5), "03333");
    EXPECT_EQ(head(dual_representation(DigitPrefix::parse("21")), 5), "20333");
    EXPECT_EQ(head(dual_representation(DigitPrefix::parse("3")), 4), "2333");
    // 9/16 = 1/2 + sum_{k>=3} 3 * 4^-k
    EXPECT_EQ(oracle::digit_sum("20", 4) + oracle::cpp_rational(3, 64) / (1 - oracle::cpp_rational(1, 4)),
              oracle::cpp_rational(9, 16));
}

TEST(DualRepresentation, Errors) {
    EXPECT_THROW(dual_representation(DigitPrefix(Base(4))), std::invalid_argument);
    EXPECT_THROW(dual_representation(DigitPrefix::parse("120")), std::invalid_argument);
}

TEST(DualRepresentation, ValuesAgreeExactly) {
    // At length n >= k the canonical prefix value exceeds the dual one by
    // exactly s^-n; both converge to the same rational.
    for (const char* text : {"1", "21", "3", "0013", "3332", "101"}) {
        DigitPrefix p = DigitPrefix::parse(text);
        DigitStream canonical = expand(prefix_value(p));
        DigitStream dual = dual_representation(p);
        for (std::uint64_t n = p.size(); n < p.size() + 20; ++n) {
            Rational diff = prefix_value(canonical.prefix(n)) - prefix_value(dual.prefix(n));
            ASSERT_EQ(diff, Rational(BigInt(1), power(4, n))) << text << " n=" << n;
        }
    }
}

TEST(HasTwoRepresentations, SpotValuesAndConsistency) {
    EXPECT_TRUE(has_two_representations(Rational(1, 4)));
    EXPECT_FALSE(has_two_representations(Rational(1, 3)));
    EXPECT_FALSE(has_two_representations(Rational(0)));
    EXPECT_FALSE(has_two_representations(Rational(1)));
    EXPECT_TRUE(has_two_representations(Rational(1, 2)));  // 2/4
    EXPECT_FALSE(has_two_representations(Rational(1, 2), Base(3)));
    EXPECT_TRUE(has_two_representations(Rational(1, 6), Base(6)));
    EXPECT_THROW(has_two_representations(Rational(2)), std::domain_error);

    for (std::int64_t q = 2; q <= 100; ++q) {
        for (std::int64_t p = 1; p < q; ++p) {
            DigitStream s = expand(Rational(p, q));
            bool terminates = s.periodicity()->period == std::vector<Digit>{0};
            ASSERT_EQ(has_two_representations(Rational(p, q)), terminates) << p << "/" << q;
        }
    }
}

TEST(DigitStream, OutOfRangeSourceIsReported) {
    DigitStream bad = DigitStream::from_function(Base(4), [](std::uint64_t k) { return static_cast<Digit>(k); });
    EXPECT_EQ(bad.at(3), 3);
    EXPECT_THROW(bad.at(4), std::logic_error);
    EXPECT_THROW(bad.prefix(10), std::logic_error);
}

TEST(DigitStream, ConcurrentIndexedReadsAgree) {
    DigitStream s = expand(Rational(123, 997));
    DigitPrefix ref = s.prefix(2000);
    std::vector<int> mismatches(4, 0);
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&, t] {
            for (std::uint64_t k = 0; k < 2000; ++k) mismatches[t] += s.at(k) != ref[k];
        });
    }
    for (auto& th : threads) th.join();
    for (int m : mismatches) EXPECT_EQ(m, 0);
}

TEST(DigitStream, CursorOutlivesStream) {
    std::optional<DigitCursor> c;
    {
        DigitStream s = expand(Rational(1, 5));
        c.emplace(s.cursor());
    }
    EXPECT_EQ(c->next(), 0);
    EXPECT_EQ(c->next(), 3);
}
