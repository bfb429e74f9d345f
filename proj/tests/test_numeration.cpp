#include "betapar/numeration.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace betapar;

namespace {

EventuallyPeriodicString ep(const char* s) { return parse_eventually_periodic(s); }

std::vector<long long> coeffs_of(const BetaBase& b) {
    std::vector<long long> c;
    for (const auto& v : b.poly().coefficients()) {
        c.push_back(static_cast<long long>(v));
    }
    return c;
}

// Random admissible fraction 0.x_1...x_n by rejection over C_beta.
DigitString random_admissible(std::mt19937_64& rng, const BetaBase& base, const EventuallyPeriodicString& dstar,
                              int max_len) {
    std::uniform_int_distribution<int> len(1, max_len), dig(0, canonical_alphabet(base).max_digit());
    while (true) {
        std::vector<int> d(static_cast<std::size_t>(len(rng)));
        for (auto& v : d) {
            v = dig(rng);
        }
        DigitString s(std::move(d), -1);
        if (is_admissible(s, dstar)) {
            return s;
        }
    }
}

}  // namespace

TEST(EventuallyPeriodic, TextRoundTrip) {
    for (const char* s : {"111", "3(1)", "42", "(110)", "2(1)", "11(2)", "10,2(1)", "1,12(3,4)"}) {
        EXPECT_EQ(to_string(ep(s)), s);
    }
    EXPECT_EQ(ep("3(1)").preperiod, std::vector<int>{3});
    EXPECT_EQ(ep("3(1)").period, std::vector<int>{1});
    EXPECT_EQ(ep("10,2(1)").preperiod, (std::vector<int>{10, 2}));
    EXPECT_THROW(ep("3(1"), std::invalid_argument);
    EXPECT_THROW(ep("3()"), std::invalid_argument);
    EXPECT_THROW(ep("3a"), std::invalid_argument);
}

TEST(EventuallyPeriodic, Normalization) {
    EXPECT_EQ(ep("1(11)").normalized(), ep("(1)"));
    EXPECT_EQ(ep("21(21)").normalized(), ep("(21)"));
    EXPECT_EQ(ep("420").normalized(), ep("42"));
    EXPECT_EQ(ep("42(0)").normalized(), ep("42"));
    EXPECT_EQ(ep("3(11)").normalized(), ep("3(1)"));
}

TEST(LexCompare, OrdersAndEquates) {
    EXPECT_EQ(lex_compare(ep("(1)"), ep("1(1)")), std::strong_ordering::equal);
    EXPECT_EQ(lex_compare(ep("(10)"), ep("(1)")), std::strong_ordering::less);
    EXPECT_EQ(lex_compare(ep("11"), ep("(110)")), std::strong_ordering::less);
    EXPECT_EQ(lex_compare(ep("(110)"), ep("111")), std::strong_ordering::less);
    EXPECT_EQ(lex_compare(ep("4"), ep("3(9)")), std::strong_ordering::greater);
    // Differences late in a long period are still found.
    EXPECT_EQ(lex_compare(ep("(1111112)"), ep("(111111)")), std::strong_ordering::greater);
}

TEST(RenyiDbeta, DBonacci) {
    for (int d = 2; d <= 6; ++d) {
        auto r = renyi_dbeta(dbonacci_base(d));
        ASSERT_TRUE(r);
        EXPECT_EQ(*r, EventuallyPeriodicString(std::vector<int>(static_cast<std::size_t>(d), 1), {})) << d;
    }
}

TEST(RenyiDbeta, QuadraticPlusIsAB) {
    for (auto [a, b] : {std::pair{4, 2}, {5, 2}, {5, 3}, {3, 2}}) {
        auto r = renyi_dbeta(quadratic_plus_base(a, b));
        ASSERT_TRUE(r);
        EXPECT_EQ(*r, (EventuallyPeriodicString{{a, b}, {}}));
    }
}

TEST(RenyiDbeta, QuadraticMinusIsEventuallyPeriodic) {
    for (auto [a, b] : {std::pair{3, 1}, {4, 1}, {4, 2}, {5, 3}}) {
        auto r = renyi_dbeta(quadratic_minus_base(a, b));
        ASSERT_TRUE(r);
        EXPECT_EQ(*r, (EventuallyPeriodicString{{a - 1}, {a - b - 1}}));
    }
}

TEST(RenyiDbeta, DigitsMatchFloatingOracle) {
    // Plain floating greedy on a cubic with a non-trivial expansion.
    BetaBase b = base_from_spec("1,-2,0,-1");
    const long double beta = oracle::largest_root(coeffs_of(b));
    auto r = renyi_dbeta(b);
    ASSERT_TRUE(r);
    long double x = 1;
    for (std::size_t i = 0; i < 12; ++i) {
        long double t = beta * x;
        int digit = static_cast<int>(std::floor(t));
        EXPECT_EQ(r->at(i), digit) << i;
        x = t - digit;
    }
}

TEST(QuasiGreedy, FiniteAndInfinite) {
    EXPECT_EQ(quasi_greedy(ep("111")), ep("(110)"));
    EXPECT_EQ(quasi_greedy(ep("42")), ep("(41)"));
    EXPECT_EQ(quasi_greedy(ep("3(1)")), ep("3(1)"));
}

TEST(Admissibility, Fibonacci) {
    const auto dstar = quasi_greedy(*renyi_dbeta(dbonacci_base(2)));
    EXPECT_TRUE(is_admissible(parse_digit_string("1,0,1,0,0,1"), dstar));
    EXPECT_FALSE(is_admissible(parse_digit_string("1,1"), dstar));
    EXPECT_FALSE(is_admissible(parse_digit_string("1,0,1,1"), dstar));
    EXPECT_FALSE(is_admissible(ep("(10)"), dstar));  // equals d* itself
    EXPECT_TRUE(is_admissible(ep("(100)"), dstar));
}

TEST(Admissibility, NonSimple) {
    const auto dstar = quasi_greedy(*renyi_dbeta(quadratic_minus_base(4, 2)));
    EXPECT_TRUE(is_admissible(parse_digit_string("3,0,2"), dstar));
    EXPECT_FALSE(is_admissible(parse_digit_string("3,1,1,1,2"), dstar));
    EXPECT_FALSE(is_admissible(parse_digit_string("4"), dstar));
}

TEST(GreedyExpansion, FibonacciTwo) {
    BetaBase fib = dbonacci_base(2);
    GreedyExpansion g = greedy_expand_ge1(QuotientValue::from_integer(fib, 2), 10);
    EXPECT_TRUE(g.exact);
    EXPECT_EQ(to_string(g.digits), "1,0.0,1");
    // Value check with an unrelated evaluator.
    const long double beta = oracle::largest_root({1, -1, -1});
    EXPECT_NEAR(static_cast<double>(oracle::value(oracle::digits_of(g.digits), beta)), 2.0, 1e-12);
}

TEST(GreedyExpansion, DomainAndBudget) {
    BetaBase fib = dbonacci_base(2);
    EXPECT_THROW(greedy_expand(QuotientValue::from_integer(fib, 1), 5), std::domain_error);
    EXPECT_THROW(greedy_expand(QuotientValue::from_integer(fib, -1).mul_beta_pow(-3), 5), std::domain_error);
    EXPECT_THROW(greedy_expand_ge1(QuotientValue::from_integer(fib, -1), 5), std::domain_error);
    EXPECT_TRUE(greedy_expand_ge1(QuotientValue(fib), 5).digits.is_zero());
    // 1 - beta^-1 = 0.01 does not fit in one digit.
    GreedyExpansion g = greedy_expand(QuotientValue::from_integer(fib, 1) - QuotientValue::beta_power(fib, -1), 1);
    EXPECT_FALSE(g.exact);
    EXPECT_TRUE(g.digits.is_zero());
}

TEST(GreedyExpansion, MaximalityOnAdmissibleStrings) {
    std::mt19937_64 rng(21);
    for (const char* spec : {"fibonacci", "tribonacci", "quadratic-plus:4,2", "quadratic-minus:4,2"}) {
        BetaBase b = base_from_spec(spec);
        const auto dstar = quasi_greedy(*renyi_dbeta(b));
        for (int i = 0; i < 250; ++i) {
            DigitString s = random_admissible(rng, b, dstar, 16);
            GreedyExpansion g = greedy_expand(eval_digit_string(s, b), 40);
            ASSERT_TRUE(g.exact) << spec;
            EXPECT_EQ(g.digits, s) << spec << " " << to_string(s);
        }
    }
}

TEST(GreedyExpansion, OutputIsAdmissibleAndValueExact) {
    std::mt19937_64 rng(22);
    BetaBase tri = dbonacci_base(3);
    const auto dstar = quasi_greedy(*renyi_dbeta(tri));
    const auto f = coeffs_of(tri);
    std::uniform_int_distribution<int> dig(0, 2);
    for (int i = 0; i < 100; ++i) {
        std::vector<int> d(8);
        for (auto& v : d) {
            v = dig(rng);
        }
        DigitString x = DigitString::integer(d);
        GreedyExpansion g = greedy_expand_ge1(eval_digit_string(x, tri), 30);
        ASSERT_TRUE(g.exact);
        EXPECT_TRUE(is_admissible(g.digits, dstar)) << to_string(g.digits);
        EXPECT_TRUE(oracle::same_value(oracle::digits_of(x), oracle::digits_of(g.digits), f));
    }
}

TEST(Classification, ParryKindAndPf) {
    EXPECT_EQ(classify_parry(dbonacci_base(3)).kind, ParryKind::simple);
    EXPECT_EQ(classify_parry(quadratic_minus_base(4, 2)).kind, ParryKind::non_simple);
    EXPECT_EQ(pf_sufficient(ep("111")), PfClass::F);
    EXPECT_EQ(pf_sufficient(ep("42")), PfClass::F);
    EXPECT_EQ(pf_sufficient(ep("3(1)")), PfClass::PF);
    EXPECT_EQ(pf_sufficient(ep("12")), PfClass::inconclusive);
    EXPECT_EQ(pf_sufficient(ep("2(2)")), PfClass::inconclusive);
    EXPECT_EQ(to_string(PfClass::PF), "PF");
}

TEST(CanonicalAlphabet, FloorOfBeta) {
    EXPECT_EQ(canonical_alphabet(dbonacci_base(2)), Alphabet::upto(1));
    EXPECT_EQ(canonical_alphabet(quadratic_plus_base(4, 2)), Alphabet::upto(4));
    EXPECT_EQ(canonical_alphabet(quadratic_minus_base(4, 2)), Alphabet::upto(3));
    EXPECT_EQ(beta_floor(dbonacci_base(6)), 1);
}
