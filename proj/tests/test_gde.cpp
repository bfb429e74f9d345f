#include "betapar/gde_quadratic.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace betapar;

TEST(GdePlus, WorkedExample) {
    // 0 7 0 in base beta^2 = 4 beta + 2: carry at the 7, borrow below it.
    EXPECT_EQ(to_string(apply_local(gde_plus(4, 2), parse_digit_string("0,7,0"))), "1,2,2.2");
}

TEST(GdePlus, ShapeAndParameters) {
    LocalRule g = gde_plus(4, 2);
    EXPECT_EQ(g.memory(), 2);
    EXPECT_EQ(g.anticipation(), 2);
    EXPECT_EQ(g.input_alphabet(), Alphabet::upto(7));
    EXPECT_EQ(g.output_alphabet(), Alphabet::upto(6));
    EXPECT_THROW(gde_plus(3, 2), std::invalid_argument);
    EXPECT_THROW(gde_plus(4, 1), std::invalid_argument);
    EXPECT_THROW(gde_plus_special(2), std::invalid_argument);
    EXPECT_THROW(gde_minus(3, 2), std::invalid_argument);
    EXPECT_THROW(gde_minus(3, 0), std::invalid_argument);
    LocalRule s = gde_plus_special(3);
    EXPECT_EQ(s.width(), 6);
    EXPECT_EQ(s.output_alphabet(), Alphabet::upto(5));
    LocalRule m = gde_minus(4, 2);
    EXPECT_EQ(m.width(), 7);
    EXPECT_EQ(m.input_alphabet(), Alphabet::upto(5));
    EXPECT_EQ(m.output_alphabet(), Alphabet::upto(4));
}

TEST(Gde, ExhaustiveShortStrings) {
    for (const LocalRule& rule : {gde_plus(4, 2), gde_plus(5, 3), gde_plus(6, 2), gde_plus_special(3),
                                  gde_plus_special(5), gde_minus(3, 1), gde_minus(4, 1), gde_minus(4, 2),
                                  gde_minus(6, 3)}) {
        const int len = rule.input_alphabet().cardinality() > 8 ? 4 : 5;
        ConversionReport r = verify_conversion(rule, Exhaustive{len});
        EXPECT_TRUE(r.passed()) << rule.name() << ": " << (r.passed() ? "" : r.failures.front().input);
    }
}

TEST(Gde, RandomLongStringsAgainstIndependentOracle) {
    std::mt19937_64 rng(41);
    struct Case {
        LocalRule rule;
        std::vector<long long> f;
    };
    const Case cases[] = {{gde_plus(5, 2), {1, -5, -2}}, {gde_plus_special(4), {1, -4, -3}}, {gde_minus(5, 3), {1, -5, 3}}};
    for (const auto& [rule, f] : cases) {
        std::uniform_int_distribution<int> dig(0, rule.input_alphabet().max_digit());
        for (int i = 0; i < 300; ++i) {
            std::vector<int> d(14);
            for (auto& v : d) {
                v = dig(rng);
            }
            DigitString u = DigitString::from_lsd(d, -5);
            DigitString v = apply_local(rule, u);
            EXPECT_TRUE(v.within(rule.output_alphabet()));
            EXPECT_TRUE(oracle::same_value(oracle::digits_of(u), oracle::digits_of(v), f)) << rule.name();
        }
    }
}

TEST(Gde, KindLookupFromBase) {
    auto q = quadratic_gde_for(quadratic_plus_base(4, 2));
    ASSERT_TRUE(q);
    EXPECT_EQ(q->kind, QuadraticKind::plus);
    q = quadratic_gde_for(quadratic_plus_base(4, 3));
    ASSERT_TRUE(q);
    EXPECT_EQ(q->kind, QuadraticKind::plus_special);
    q = quadratic_gde_for(quadratic_minus_base(5, 3));
    ASSERT_TRUE(q);
    EXPECT_EQ(q->kind, QuadraticKind::minus);
    EXPECT_EQ(q->b, 3);
    EXPECT_FALSE(quadratic_gde_for(dbonacci_base(2)));
    EXPECT_FALSE(quadratic_gde_for(quadratic_plus_base(3, 3)));  // a = b is not covered
    EXPECT_FALSE(quadratic_gde_for(dbonacci_base(3)));
}

TEST(QuadraticAdder, RandomPairs) {
    for (auto [kind, a, b] : {std::tuple{QuadraticKind::plus, 4, 2}, {QuadraticKind::plus, 5, 3},
                              {QuadraticKind::plus_special, 3, 2}, {QuadraticKind::minus, 4, 1},
                              {QuadraticKind::minus, 4, 2}}) {
        Adder add = quadratic_adder(kind, a, b);
        EXPECT_EQ(add.alphabet, Alphabet::upto(quadratic_max_digit(kind, a, b)));
        ConversionReport r = verify_adder(add, RandomSample{300, 42, 10});
        EXPECT_TRUE(r.passed()) << add.name;
    }
}

TEST(QuadraticAdder, AdditionExamples) {
    Adder add = quadratic_adder(QuadraticKind::plus, 4, 2);
    DigitString z = add(parse_digit_string("6"), parse_digit_string("6"));
    EXPECT_TRUE(z.within(Alphabet::upto(6)));
    EXPECT_TRUE(oracle::same_value(oracle::digits_of(z), {{0, 12}}, {1, -4, -2}));
    EXPECT_TRUE(add(parse_digit_string("0"), parse_digit_string("0")).is_zero());
    EXPECT_THROW(add(parse_digit_string("7"), parse_digit_string("0")), std::invalid_argument);
}

TEST(ShiftedAdder, EveryAdmissibleShift) {
    // plus: 0 <= d <= a + b; minus: b <= d <= a - 2.
    for (int d = 0; d <= 6; ++d) {
        Adder add = shifted_adder(QuadraticKind::plus, 4, 2, d);
        EXPECT_EQ(add.alphabet, Alphabet(-d, 6 - d));
        EXPECT_TRUE(verify_adder(add, RandomSample{100, 7, 10}).passed()) << d;
    }
    for (int d = 1; d <= 3; ++d) {
        EXPECT_TRUE(verify_adder(shifted_adder(QuadraticKind::minus, 5, 1, d), RandomSample{100, 8, 10}).passed());
    }
    EXPECT_THROW(shifted_adder(QuadraticKind::plus, 4, 2, 7), std::invalid_argument);
    EXPECT_THROW(shifted_adder(QuadraticKind::minus, 4, 2, 1), std::invalid_argument);
    EXPECT_THROW(shifted_adder(QuadraticKind::minus, 4, 2, 3), std::invalid_argument);
    EXPECT_NO_THROW(shifted_adder(QuadraticKind::minus, 4, 2, 2));
}

TEST(ShiftedAdder, SymmetricAlphabet) {
    // {-3..3} for beta^2 = 4 beta + 2.
    Adder add = shifted_adder(QuadraticKind::plus, 4, 2, 3);
    DigitString z = add(parse_digit_string("3,-3,3"), parse_digit_string("3,3,-3"));
    EXPECT_TRUE(z.within(Alphabet(-3, 3)));
    EXPECT_TRUE(oracle::same_value(oracle::digits_of(z), {{2, 6}}, {1, -4, -2}));
}
