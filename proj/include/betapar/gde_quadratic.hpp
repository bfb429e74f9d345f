#pragma once

// Greatest-digit elimination for the quadratic bases beta^2 = a beta + b,
// beta^2 = a beta + a - 1 and beta^2 = a beta - b, and the adders built on
// them.
//
// Each rule computes a carry q_j in {-1, 0, 1} from a few neighbouring input
// digits and then writes x_j = z_j - a q_j + (carry terms of q_{j+1},
// q_{j-1}). Since x_j reads q_{j+1} and q_{j-1}, the output window is the
// carry window widened by one on each side.

#include "betapar/algebraic.hpp"
#include "betapar/digit_string.hpp"
#include "betapar/local_conversion.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace betapar {

enum class QuadraticKind { plus, plus_special, minus };

inline std::string to_string(QuadraticKind k) {
    switch (k) {
        case QuadraticKind::plus:
            return "plus";
        case QuadraticKind::plus_special:
            return "plus-special";
        case QuadraticKind::minus:
            return "minus";
    }
    return "?";
}

namespace detail {

// Carry of GDE(beta^2 = a beta + b); zp1 = z_{j+1}, zm1 = z_{j-1}.
inline int carry_plus(int a, int b, int zp1, int z0, int zm1) {
    const bool up = z0 == a + b + 1 || (z0 == a + b && (zp1 <= b - 1 || zm1 >= a)) ||
                    (a + 1 <= z0 && z0 <= a + b - 1 && zp1 <= b - 1) || (z0 == a && zp1 <= b - 1 && zm1 >= a);
    if (up) {
        return 1;
    }
    if (z0 <= b - 1 && zp1 >= a) {
        return -1;
    }
    return 0;
}

// Carry of GDE(beta^2 = a beta + a - 1).
inline int carry_plus_special(int a, int zp2, int zp1, int z0, int zm1) {
    const bool up = (z0 == 2 * a && zp1 <= 2 * a - 1) || (z0 == 2 * a && zp1 == 2 * a && a <= zp2) ||
                    (z0 == 2 * a - 1 && zp1 <= a - 1) ||
                    (z0 == 2 * a - 1 && a <= zp1 && zp1 <= 2 * a - 1 && a <= zm1) ||
                    (z0 == 2 * a - 1 && zp1 == 2 * a && a <= zp2 && a <= zm1) ||
                    (a + 1 <= z0 && z0 <= 2 * a - 2 && zp1 <= a - 1) || (z0 == a && zp1 <= a - 1 && a <= zm1);
    if (up) {
        return 1;
    }
    if (z0 <= a - 2 && a <= zp1) {
        return -1;
    }
    return 0;
}

// Carry of GDE(beta^2 = a beta - b); q in {0, 1}.
inline int carry_minus(int a, int b, int zp2, int zp1, int z0, int zm1, int zm2) {
    const int top = a + b - 1;
    const bool up = z0 == top || (a - 1 <= z0 && z0 <= a + b - 2 && (zp1 >= a - 1 || zm1 >= a - 1)) ||
                    (z0 == a - 2 && zp1 == top && zm1 == top) ||
                    (z0 == a - 2 && zp1 == top && zm1 >= a - 1 && zm2 >= a - 1) ||
                    (z0 == a - 2 && zm1 == top && zp1 >= a - 1 && zp2 >= a - 1) ||
                    (z0 == a - 2 && zp1 >= a - 1 && zm1 >= a - 1 && zp2 >= a - 1 && zm2 >= a - 1);
    return up ? 1 : 0;
}

// Every window over the input alphabet must land in the output alphabet.
inline void check_rule_closure(const LocalRule& rule) {
    const Alphabet& out = rule.output_alphabet();
    std::string bad;
    rule.for_each_window([&](std::span<const int> w) {
        if (!bad.empty()) {
            return;
        }
        int v = rule(w);
        if (!out.contains(v)) {
            for (std::size_t i = w.size(); i-- > 0;) {
                bad += std::to_string(w[i]) + (i ? "," : "");
            }
            bad += " -> " + std::to_string(v);
        }
    });
    if (!bad.empty()) {
        throw std::logic_error(rule.name() + ": window " + bad + " leaves " + out.to_string());
    }
}

// The quantity removed by a unit carry at position i must be 0 in Z[beta].
// `terms` lists (exponent offset, coefficient) pairs.
inline void check_carry_neutral(const BetaBase& base, std::span<const std::pair<int, int>> terms,
                                const std::string& name) {
    QuotientValue total(base);
    for (const auto& [offset, coeff] : terms) {
        total += QuotientValue::beta_power(base, offset) * Integer(coeff);
    }
    if (!total.is_zero()) {
        throw std::logic_error(name + ": carry is not value-neutral");
    }
}

}  // namespace detail

/// GDE(beta^2 = a beta + b), a >= b + 2, b >= 2: {0..a+b+1} -> {0..a+b}.
/// Window z_{j-2} .. z_{j+2}.
inline LocalRule gde_plus(int a, int b) {
    if (!(a >= b + 2 && b >= 2)) {
        throw std::invalid_argument("gde_plus needs a >= b + 2 and b >= 2");
    }
    BetaBase base = quadratic_plus_base(a, b);
    WindowFunction fn = [a, b](std::span<const int> w) {
        // w[0] = z_{j-2} ... w[4] = z_{j+2}
        const int q0 = detail::carry_plus(a, b, w[3], w[2], w[1]);
        const int qp = detail::carry_plus(a, b, w[4], w[3], w[2]);
        const int qm = detail::carry_plus(a, b, w[2], w[1], w[0]);
        return w[2] - a * q0 - b * qp + qm;
    };
    std::string name = "gde-plus:" + std::to_string(a) + "," + std::to_string(b);
    LocalRule rule = LocalRule(name, base, 2, 2, Alphabet::upto(a + b + 1), Alphabet::upto(a + b), std::move(fn))
                         .tabulated();
    detail::check_rule_closure(rule);
    const std::array<std::pair<int, int>, 3> terms{{{1, 1}, {0, -a}, {-1, -b}}};
    detail::check_carry_neutral(base, terms, name);
    return rule;
}

/// GDE(beta^2 = a beta + a - 1), a >= 3: {0..2a} -> {0..2a-1}.
/// Window z_{j-2} .. z_{j+3}.
inline LocalRule gde_plus_special(int a) {
    if (a < 3) {
        throw std::invalid_argument("gde_plus_special needs a >= 3");
    }
    BetaBase base = quadratic_plus_base(a, a - 1);
    WindowFunction fn = [a](std::span<const int> w) {
        // w[0] = z_{j-2} ... w[2] = z_j ... w[5] = z_{j+3}
        const int q0 = detail::carry_plus_special(a, w[4], w[3], w[2], w[1]);
        const int qp = detail::carry_plus_special(a, w[5], w[4], w[3], w[2]);
        const int qm = detail::carry_plus_special(a, w[3], w[2], w[1], w[0]);
        return w[2] - a * q0 - (a - 1) * qp + qm;
    };
    std::string name = "gde-plus-special:" + std::to_string(a);
    LocalRule rule =
        LocalRule(name, base, 2, 3, Alphabet::upto(2 * a), Alphabet::upto(2 * a - 1), std::move(fn)).tabulated();
    detail::check_rule_closure(rule);
    const std::array<std::pair<int, int>, 3> terms{{{1, 1}, {0, -a}, {-1, -(a - 1)}}};
    detail::check_carry_neutral(base, terms, name);
    return rule;
}

/// GDE(beta^2 = a beta - b), a >= b + 2, b >= 1: {0..a+b-1} -> {0..a+b-2}.
/// Window z_{j-3} .. z_{j+3}.
inline LocalRule gde_minus(int a, int b) {
    if (!(a >= b + 2 && b >= 1)) {
        throw std::invalid_argument("gde_minus needs a >= b + 2 and b >= 1");
    }
    BetaBase base = quadratic_minus_base(a, b);
    WindowFunction fn = [a, b](std::span<const int> w) {
        // w[0] = z_{j-3} ... w[3] = z_j ... w[6] = z_{j+3}
        const int q0 = detail::carry_minus(a, b, w[5], w[4], w[3], w[2], w[1]);
        const int qp = detail::carry_minus(a, b, w[6], w[5], w[4], w[3], w[2]);
        const int qm = detail::carry_minus(a, b, w[4], w[3], w[2], w[1], w[0]);
        return w[3] - a * q0 + b * qp + qm;
    };
    std::string name = "gde-minus:" + std::to_string(a) + "," + std::to_string(b);
    LocalRule rule =
        LocalRule(name, base, 3, 3, Alphabet::upto(a + b - 1), Alphabet::upto(a + b - 2), std::move(fn)).tabulated();
    detail::check_rule_closure(rule);
    const std::array<std::pair<int, int>, 3> terms{{{1, 1}, {0, -a}, {-1, b}}};
    detail::check_carry_neutral(base, terms, name);
    return rule;
}

/// The elimination rule for a kind; `b` is ignored for plus_special.
inline LocalRule gde_rule(QuadraticKind kind, int a, int b) {
    switch (kind) {
        case QuadraticKind::plus:
            return gde_plus(a, b);
        case QuadraticKind::plus_special:
            return gde_plus_special(a);
        case QuadraticKind::minus:
            return gde_minus(a, b);
    }
    throw std::invalid_argument("unknown quadratic kind");
}

/// Largest digit of the target alphabet: a+b, 2a-1, a+b-2.
inline int quadratic_max_digit(QuadraticKind kind, int a, int b) {
    switch (kind) {
        case QuadraticKind::plus:
            return a + b;
        case QuadraticKind::plus_special:
            return 2 * a - 1;
        case QuadraticKind::minus:
            return a + b - 2;
    }
    throw std::invalid_argument("unknown quadratic kind");
}

inline std::string quadratic_label(QuadraticKind kind, int a, int b) {
    if (kind == QuadraticKind::plus_special) {
        return "plus-special:" + std::to_string(a);
    }
    return to_string(kind) + ":" + std::to_string(a) + "," + std::to_string(b);
}

struct QuadraticGde {
    QuadraticKind kind;
    int a;
    int b;
};

/// The elimination family covering a quadratic base X^2 - aX - c, if any.
/// c = a - 1 selects plus_special, other c > 0 plus, c < 0 minus with b = -c.
inline std::optional<QuadraticGde> quadratic_gde_for(const BetaBase& base) {
    const MinimalPolynomial& f = base.poly();
    if (f.degree() != 2) {
        return std::nullopt;
    }
    const Integer a = -f.coeff(1);
    const Integer c = -f.coeff(0);
    if (a > 1000 || c > 1000 || c < -1000) {
        return std::nullopt;
    }
    const int ai = static_cast<int>(a);
    const int ci = static_cast<int>(c);
    if (ci == ai - 1 && ai >= 3) {
        return QuadraticGde{QuadraticKind::plus_special, ai, ci};
    }
    if (ci >= 2 && ai >= ci + 2) {
        return QuadraticGde{QuadraticKind::plus, ai, ci};
    }
    if (ci <= -1 && ai >= -ci + 2) {
        return QuadraticGde{QuadraticKind::minus, ai, -ci};
    }
    return std::nullopt;
}

/// Parallel adder on {0, ..., M} by chained eliminations.
inline Adder quadratic_adder(QuadraticKind kind, int a, int b) {
    const LocalRule gde = gde_rule(kind, a, b);
    const int m = quadratic_max_digit(kind, a, b);
    return make_adder_by_elimination(gde, m).as_adder("quadratic-adder:" + quadratic_label(kind, a, b));
}

/// Admissible shifts d for the alphabet {-d, ..., M-d}.
///
/// plus (and plus_special): any d in 0..M whose used letters are fixed, i.e.
/// d fixed unless d = M and M - d fixed unless d = 0. minus: b <= d <= a-2.
inline bool shift_allowed(QuadraticKind kind, const LocalRule& gde, int a, int b, int d) {
    const int m = quadratic_max_digit(kind, a, b);
    if (kind == QuadraticKind::minus) {
        return b <= d && d <= a - 2;
    }
    if (d < 0 || d > m) {
        return false;
    }
    return (d == m || is_fixed_letter(gde, d)) && (d == 0 || is_fixed_letter(gde, m - d));
}

/// Parallel adder on {-d, ..., M-d}, verified against the value oracle on
/// 200 seeded random pairs before it is returned.
inline Adder shifted_adder(QuadraticKind kind, int a, int b, int d) {
    const LocalRule gde = gde_rule(kind, a, b);
    if (!shift_allowed(kind, gde, a, b, d)) {
        throw std::invalid_argument("shifted_adder: d = " + std::to_string(d) + " outside the admissible range for " +
                                    quadratic_label(kind, a, b));
    }
    const int m = quadratic_max_digit(kind, a, b);
    Adder adder = make_shifted_elimination_adder(gde, m, d).as_adder("shifted-adder:" + quadratic_label(kind, a, b) +
                                                                      ":d=" + std::to_string(d));
    ConversionReport report = verify_adder(adder, RandomSample{200, 0x5eed, 10});
    if (!report.passed()) {
        throw std::logic_error("shifted_adder failed verification: " + report.failures.front().input + " -> " +
                               report.failures.front().output);
    }
    return adder;
}

}  // namespace betapar
