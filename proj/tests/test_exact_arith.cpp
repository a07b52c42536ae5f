#include <gtest/gtest.h>

#include <random>

#include "plumbcalc/continued_fraction.hpp"
#include "plumbcalc/number_theory.hpp"
#include "plumbcalc/rational.hpp"

using namespace plumbcalc;

TEST(Rational, NormalizesSignOfDenominator) {
    const Rational r = make_rational(3, -6);
    EXPECT_EQ(numerator_of(r), -1);
    EXPECT_EQ(denominator_of(r), 2);
    EXPECT_EQ(to_string(r), "-1/2");
    EXPECT_EQ(to_string(Rational(4)), "4");
}

TEST(Rational, FieldAxiomsOnRandomInputs) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> num(-1000, 1000), den(1, 1000);
    for (int t = 0; t < 300; ++t) {
        const Rational a = make_rational(num(rng), den(rng));
        const Rational b = make_rational(num(rng), den(rng));
        const Rational c = make_rational(num(rng), den(rng));
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(boost::multiprecision::gcd(numerator_of(a), denominator_of(a)) == 1 || numerator_of(a) == 0,
                  true);
    }
}

TEST(Rational, FloorCeil) {
    EXPECT_EQ(plumbcalc::floor(make_rational(-7, 2)), -4);
    EXPECT_EQ(plumbcalc::ceil(make_rational(-7, 2)), -3);
    EXPECT_EQ(plumbcalc::floor(make_rational(7, 2)), 3);
    EXPECT_EQ(plumbcalc::ceil(Rational(5)), 5);
}

TEST(ContinuedFraction, EvalExamples) {
    const std::vector<std::int64_t> single{7}, twos{2, 2, 2}, minus{-2, -2, -2, -2};
    EXPECT_EQ(cf_eval(single), 7);
    EXPECT_EQ(cf_eval(twos), make_rational(4, 3));
    EXPECT_EQ(cf_eval(minus), make_rational(-5, 4));
}

TEST(ContinuedFraction, ZeroTail) {
    const std::vector<std::int64_t> w{3, 1, 1};  // 1 - 1/1 = 0
    try {
        cf_eval(w);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ZeroTail);
    }
}

TEST(ContinuedFraction, ExpandExamples) {
    EXPECT_EQ(cf_expand(make_rational(4, 3), ExpandMode::AllAtLeast2), (CFWord{2, 2, 2}));
    EXPECT_EQ(cf_expand(Rational(9), ExpandMode::AllAtLeast2), (CFWord{9}));
    EXPECT_EQ(cf_expand(make_rational(-5, 4), ExpandMode::AllAtMostMinus2), (CFWord{-2, -2, -2, -2}));
}

TEST(ContinuedFraction, RejectsUnexpandable) {
    for (const Rational& v : {Rational(0), Rational(1), make_rational(1, 2), make_rational(-3, 2)}) {
        try {
            cf_expand(v, ExpandMode::AllAtLeast2);
            FAIL() << to_string(v);
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::NotExpandable);
        }
    }
}

TEST(ContinuedFraction, RoundTripAllReducedUpTo60) {
    for (std::int64_t p = 2; p <= 60; ++p) {
        for (std::int64_t q = 1; q < p; ++q) {
            if (std::gcd(p, q) != 1) {
                continue;
            }
            const Rational v = make_rational(p, q);
            const CFWord w = cf_expand(v, ExpandMode::AllAtLeast2);
            EXPECT_EQ(cf_eval(w), v);
            EXPECT_LE(static_cast<std::int64_t>(w.size()), p);
            for (auto c : w) {
                EXPECT_GE(c, 2);
            }
            const CFWord m = cf_expand(-v, ExpandMode::AllAtMostMinus2);
            EXPECT_EQ(cf_eval(m), -v);
            for (auto c : m) {
                EXPECT_LE(c, -2);
            }
        }
    }
}

// Reversing a word keeps the numerator p and replaces q by its inverse mod p.
TEST(ContinuedFraction, ReversalDuality) {
    std::vector<std::int64_t> word;
    std::size_t checked = 0;
    auto rec = [&](auto&& self) -> void {
        if (!word.empty()) {
            const Rational a = cf_eval(word);
            const std::vector<std::int64_t> rev(word.rbegin(), word.rend());
            const Rational b = cf_eval(rev);
            EXPECT_EQ(numerator_of(a), numerator_of(b));
            const auto p = to_int64(numerator_of(a));
            if (p > 1) {
                EXPECT_EQ(mod_floor(to_int64(denominator_of(a)) * to_int64(denominator_of(b)), p), 1);
            }
            ++checked;
        }
        if (word.size() == 6) {
            return;
        }
        for (std::int64_t c = 2; c <= 5; ++c) {
            word.push_back(c);
            self(self);
            word.pop_back();
        }
    };
    rec(rec);
    EXPECT_EQ(checked, 4u + 16 + 64 + 256 + 1024 + 4096);
}

TEST(NumberTheory, Bezout) {
    for (auto [a, b] : std::vector<std::pair<std::int64_t, std::int64_t>>{{5, 3}, {6, 4}, {-7, 0}, {0, 9}, {-12, 18}}) {
        const auto r = bezout(a, b);
        EXPECT_EQ(r.g, std::gcd(a, b));
        EXPECT_EQ(a * r.x + b * r.y, r.g);
    }
    EXPECT_EQ(bezout(7, 0), (BezoutResult{7, 1, 0}));
    EXPECT_EQ(bezout(-7, 0), (BezoutResult{7, -1, 0}));
    EXPECT_THROW(bezout(0, 0), Error);
}

TEST(NumberTheory, ModInverse) {
    EXPECT_EQ(mod_inverse(1, 9), 1);
    EXPECT_EQ(mod_inverse(2, 5), 3);
    EXPECT_EQ(mod_inverse(7, 23), 10);
    EXPECT_EQ(mod_inverse(-2, 5), 2);
    try {
        mod_inverse(4, 6);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotCoprime);
    }
}

TEST(NumberTheory, CheckedArithmeticOverflows) {
    const std::int64_t big = std::numeric_limits<std::int64_t>::max();
    EXPECT_THROW(checked::add(big, 1), Error);
    EXPECT_THROW(checked::mul(big, 2), Error);
    EXPECT_EQ(checked::sub(5, 7), -2);
}
