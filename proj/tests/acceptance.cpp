// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include "betapar/betapar.hpp"
#include "oracle.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace betapar;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
    std::printf("[%s] AC%d %s: %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    std::fflush(stdout);
    failures += ok ? 0 : 1;
}

// Runs fn, turning an escaped exception into a failure with its message.
void criterion(int id, const std::string& what, const std::function<bool(std::string&)>& fn) {
    std::string detail;
    bool ok = false;
    try {
        ok = fn(detail);
    } catch (const std::exception& e) {
        detail += std::string(" exception: ") + e.what();
    }
    report(id, ok, what, detail);
}

std::vector<int> range(int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) {
        v.push_back(i);
    }
    return v;
}

struct QuadPreset {
    QuadraticKind kind;
    int a;
    int b;
};

const QuadPreset kPresets[] = {
    {QuadraticKind::plus, 4, 2},          {QuadraticKind::plus, 5, 2},  {QuadraticKind::plus, 5, 3},
    {QuadraticKind::plus_special, 3, 2},  {QuadraticKind::plus_special, 4, 3},
    {QuadraticKind::minus, 3, 1},         {QuadraticKind::minus, 4, 1}, {QuadraticKind::minus, 4, 2},
    {QuadraticKind::minus, 5, 3},
};

}  // namespace

int main() {
    // 1. Expansion of unity, exact, under 1 s each.
    criterion(1, "d_beta(1) reproduction", [](std::string& detail) {
        bool ok = true;
        double worst = 0;
        auto check = [&](const BetaBase& base, const EventuallyPeriodicString& want) {
            auto t0 = Clock::now();
            auto got = renyi_dbeta(base);
            const double dt = seconds_since(t0);
            worst = std::max(worst, dt);
            if (!got || !(*got == want) || dt >= 1.0) {
                ok = false;
                detail += " " + base.name() + "=" + (got ? to_string(*got) : "none");
            }
        };
        for (int d = 2; d <= 6; ++d) {
            check(dbonacci_base(d), {std::vector<int>(static_cast<std::size_t>(d), 1), {}});
        }
        for (auto [a, b] : {std::pair{4, 2}, {5, 2}, {5, 3}}) {
            check(quadratic_plus_base(a, b), {{a, b}, {}});
        }
        for (auto [a, b] : {std::pair{3, 1}, {4, 1}, {4, 2}, {5, 3}}) {
            check(quadratic_minus_base(a, b), {{a - 1}, {a - b - 1}});
        }
        detail = "12 bases, slowest " + std::to_string(worst) + " s (limit 1 s)" + detail;
        return ok;
    });

    // 2. Exhaustive conversion sweeps, all strings of length <= 6.
    criterion(2, "GDE exhaustive correctness", [](std::string& detail) {
        auto t0 = Clock::now();
        bool ok = true;
        std::size_t total = 0;
        for (const LocalRule& rule : {gde_plus(4, 2), gde_plus(5, 3), gde_plus_special(3), gde_plus_special(4),
                                      gde_minus(3, 1), gde_minus(4, 2)}) {
            ConversionReport r = verify_conversion(rule, Exhaustive{6});
            total += r.checked_count;
            if (!r.passed()) {
                ok = false;
                detail += " " + rule.name() + " fails on " + r.failures.front().input;
            }
        }
        const double dt = seconds_since(t0);
        detail = std::to_string(total) + " strings, 0 counterexamples required, " + std::to_string(dt) +
                 " s (limit 300 s)" + detail;
        return ok && dt < 300.0;
    });

    // 3. Fixed letters.
    criterion(3, "fixed letters", [](std::string& detail) {
        bool ok = true;
        for (auto [a, b] : {std::pair{4, 2}, {5, 2}, {5, 3}}) {
            const bool eq = fixed_letters(gde_plus(a, b)) == range(0, a + b - 1);
            ok = ok && eq;
            detail += " plus(" + std::to_string(a) + "," + std::to_string(b) + ")" + (eq ? "=" : "!=") + "{0.." +
                      std::to_string(a + b - 1) + "}";
        }
        for (auto [a, b] : {std::pair{3, 1}, {4, 1}, {4, 2}, {5, 3}}) {
            const bool eq = fixed_letters(gde_minus(a, b)) == range(0, a - 2);
            ok = ok && eq;
            detail += " minus(" + std::to_string(a) + "," + std::to_string(b) + ")" + (eq ? "=" : "!=") + "{0.." +
                      std::to_string(a - 2) + "}";
        }
        return ok;
    });

    // 4. Full and shifted adders.
    criterion(4, "quadratic adders", [](std::string& detail) {
        bool ok = true;
        std::size_t pairs = 0;
        int shifted = 0;
        for (const auto& p : kPresets) {
            Adder add = quadratic_adder(p.kind, p.a, p.b);
            ConversionReport r = verify_adder(add, RandomSample{1000, 2024, 10});
            pairs += r.checked_count;
            if (!r.passed()) {
                ok = false;
                detail += " " + add.name + ": " + r.failures.front().input;
            }
            const LocalRule gde = gde_rule(p.kind, p.a, p.b);
            const int m = quadratic_max_digit(p.kind, p.a, p.b);
            for (int d = 0; d <= m; ++d) {
                if (!shift_allowed(p.kind, gde, p.a, p.b, d)) {
                    continue;
                }
                Adder sh = shifted_adder(p.kind, p.a, p.b, d);
                ConversionReport rs = verify_adder(sh, RandomSample{200, 4242 + static_cast<std::uint64_t>(d), 10});
                pairs += rs.checked_count;
                ++shifted;
                if (!rs.passed()) {
                    ok = false;
                    detail += " " + sh.name + ": " + rs.failures.front().input;
                }
            }
        }
        detail = std::to_string(std::size(kPresets)) + " full adders x 1000 pairs, " + std::to_string(shifted) +
                 " shifted adders x 200 pairs, " + std::to_string(pairs) + " pairs total" + detail;
        return ok;
    });

    // 5. Tribonacci block adder and the fractional-digit constant.
    criterion(5, "Tribonacci 14-block adder", [](std::string& detail) {
        auto t0 = Clock::now();
        Adder add = dbonacci_block_adder(3, false, 5);
        std::mt19937_64 rng(47);
        std::uniform_int_distribution<int> len(1, 40), dig(0, 2), off(-20, 20);
        int bad = 0, insufficient = 0;
        const std::vector<long long> f{1, -1, -1, -1};
        for (int i = 0; i < 500; ++i) {
            auto rnd = [&] {
                std::vector<int> d(static_cast<std::size_t>(len(rng)));
                for (auto& v : d) {
                    v = dig(rng);
                }
                return DigitString::from_lsd(d, off(rng));
            };
            DigitString x = rnd(), y = rnd();
            try {
                DigitString z = add(x, y);
                const bool value_ok = values_equal(eval_digit_string(x, add.base) + eval_digit_string(y, add.base),
                                                   eval_digit_string(z, add.base)) &&
                                      oracle::same_value(oracle::plus(oracle::digits_of(x), oracle::digits_of(y)),
                                                         oracle::digits_of(z), f);
                bad += (z.within(Alphabet::upto(2)) && value_ok) ? 0 : 1;
            } catch (const ParametersInsufficient&) {
                ++insufficient;
            }
        }
        const double dt = seconds_since(t0);
        SEstimate est = estimate_s(dbonacci_base(3), 12);
        detail = "k=14 l=2 s=5, 500 pairs: " + std::to_string(bad) + " wrong, " + std::to_string(insufficient) +
                 " insufficient, " + std::to_string(dt) + " s (limit 120 s); estimate_s(12) = " +
                 std::to_string(est.s) + " (want 5)";
        return bad == 0 && insufficient == 0 && dt < 120.0 && est.s == 5;
    });

    // 6. Bound values.
    criterion(6, "bound consistency", [](std::string& detail) {
        bool ok = true;
        for (int d = 2; d <= 6; ++d) {
            ok = ok && lower_bound_1block(dbonacci_base(d).poly(), true) == d + 1;
        }
        const auto simple = block_lower_bound_simple(parse_eventually_periodic("42"));
        const int attained_plus = quadratic_adder(QuadraticKind::plus, 4, 2).alphabet.cardinality();
        const auto nonsimple = block_lower_bound_nonsimple(parse_eventually_periodic("3(1)"));
        const int attained_minus = quadratic_adder(QuadraticKind::minus, 4, 2).alphabet.cardinality();
        ok = ok && simple == 7 && attained_plus == 7 && nonsimple == 5 && attained_minus == 5;
        detail = "1-block d+1 for d=2..6; simple(42)=" + (simple ? std::to_string(*simple) : "n/a") +
                 " vs adder " + std::to_string(attained_plus) + "; nonsimple(3(1))=" +
                 (nonsimple ? std::to_string(*nonsimple) : "n/a") + " vs adder " + std::to_string(attained_minus);
        return ok;
    });

    // 7. Unit-circle conjugate reporter.
    criterion(7, "impossibility reporter", [](std::string& detail) {
        const auto salem = block_impossible_unit_conjugate(MinimalPolynomial({1, -1, -1, -1, 1}));
        const auto fib = block_impossible_unit_conjugate(MinimalPolynomial({1, -1, -1}));
        const auto tri = block_impossible_unit_conjugate(MinimalPolynomial({1, -1, -1, -1}));
        detail = "X^4-X^3-X^2-X+1: " + to_string(salem) + ", X^2-X-1: " + to_string(fib) +
                 ", X^3-X^2-X-1: " + to_string(tri);
        return salem == UnitConjugateEvidence::impossible_evidence && fib == UnitConjugateEvidence::no_evidence &&
               tri == UnitConjugateEvidence::no_evidence;
    });

    // 8. Property suites.
    criterion(8, "property suites", [](std::string& detail) {
        std::mt19937_64 rng(88);
        // Locality: 10^4 perturbations outside the window.
        int locality_bad = 0;
        const LocalRule rules[] = {gde_plus(4, 2), gde_plus_special(3), gde_minus(4, 2)};
        for (int trial = 0; trial < 10000; ++trial) {
            const LocalRule& rule = rules[trial % 3];
            std::uniform_int_distribution<int> dig(0, rule.input_alphabet().max_digit()), pos(0, 23);
            std::vector<int> d(24);
            for (auto& v : d) {
                v = dig(rng);
            }
            const int j = pos(rng);
            int e = pos(rng);
            while (e >= j - rule.memory() && e <= j + rule.anticipation()) {
                e = pos(rng);
            }
            const int before = apply_local(rule, DigitString::from_lsd(d, 0)).at(j);
            d[static_cast<std::size_t>(e)] = dig(rng);
            locality_bad += apply_local(rule, DigitString::from_lsd(d, 0)).at(j) != before;
        }

        // Decomposition identity on 10^4 random blocks over A + A.
        BetaBase tri = dbonacci_base(3);
        BlockAdder blocks(tri, params_for_pf_base(tri, 5));
        const std::vector<long long> f{1, -1, -1, -1};
        int decomp_bad = 0;
        std::uniform_int_distribution<int> d4(0, 4), d1(0, 1);
        auto as_digits = [](const std::vector<int>& u, int lsd) {
            oracle::Digits m;
            for (std::size_t i = 0; i < u.size(); ++i) {
                if (u[i]) {
                    m[lsd + static_cast<int>(i)] = u[i];
                }
            }
            return m;
        };
        for (int i = 0; i < 10000; ++i) {
            std::vector<int> u(14);
            for (auto& v : u) {
                v = d4(rng);
            }
            BlockDecomposition dec = blocks.decompose(u);
            oracle::Digits rebuilt =
                oracle::plus(oracle::plus(as_digits(dec.L, 14), as_digits(dec.C, 0)), as_digits(dec.S, -10));
            decomp_bad += !oracle::same_value(as_digits(u, 0), rebuilt, f);
        }

        // Phi(u, u, u) = u for 100 random blocks over B.
        int fixed_bad = 0;
        for (int i = 0; i < 100; ++i) {
            std::vector<int> u(14);
            for (auto& v : u) {
                v = d1(rng);
            }
            fixed_bad += blocks.phi(u, u, u) != u;
        }

        // Greedy maximality: an admissible string is its own greedy expansion.
        int greedy_bad = 0;
        const BetaBase bases[] = {dbonacci_base(2), tri, quadratic_plus_base(4, 2), quadratic_minus_base(4, 2)};
        for (int i = 0; i < 1000; ++i) {
            const BetaBase& b = bases[i % 4];
            const auto dstar = quasi_greedy(*renyi_dbeta(b));
            std::uniform_int_distribution<int> len(1, 16), dig(0, beta_floor(b));
            DigitString s;
            do {
                std::vector<int> d(static_cast<std::size_t>(len(rng)));
                for (auto& v : d) {
                    v = dig(rng);
                }
                s = DigitString(std::move(d), -1);
            } while (!is_admissible(s, dstar));
            GreedyExpansion g = greedy_expand(eval_digit_string(s, b), 40);
            greedy_bad += !(g.exact && g.digits == s);
        }

        detail = "locality " + std::to_string(locality_bad) + "/10000, decomposition " +
                 std::to_string(decomp_bad) + "/10000, fixed blocks " + std::to_string(fixed_bad) +
                 "/100, greedy maximality " + std::to_string(greedy_bad) + "/1000 failures";
        return locality_bad == 0 && decomp_bad == 0 && fixed_bad == 0 && greedy_bad == 0;
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
