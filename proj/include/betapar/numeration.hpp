#pragma once

// Greedy (Renyi) beta-expansions, the expansion of unity and its quasi-greedy
// form, Parry admissibility, and the (F)/(PF) sufficient conditions.

#include "betapar/algebraic.hpp"
#include "betapar/digit_string.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace betapar {

/// t_1 ... t_m (t_{m+1} ... t_{m+p})^omega. An empty period means the
/// sequence is finite (followed by 0^omega).
struct EventuallyPeriodicString {
    std::vector<int> preperiod;
    std::vector<int> period;

    bool is_finite() const noexcept { return period.empty(); }

    /// i-th term, 0-based.
    int at(std::size_t i) const {
        if (i < preperiod.size()) {
            return preperiod[i];
        }
        if (period.empty()) {
            return 0;
        }
        return period[(i - preperiod.size()) % period.size()];
    }

    std::size_t effective_preperiod() const noexcept { return preperiod.size(); }
    std::size_t effective_period() const noexcept { return period.empty() ? 1 : period.size(); }

    /// Primitive period, minimal preperiod, no trailing zeros on finite strings.
    EventuallyPeriodicString normalized() const {
        EventuallyPeriodicString r = *this;
        if (!r.period.empty() && std::all_of(r.period.begin(), r.period.end(), [](int d) { return d == 0; })) {
            r.period.clear();
        }
        if (r.period.empty()) {
            while (!r.preperiod.empty() && r.preperiod.back() == 0) {
                r.preperiod.pop_back();
            }
            return r;
        }
        const std::size_t n = r.period.size();
        for (std::size_t len = 1; len <= n; ++len) {
            if (n % len != 0) {
                continue;
            }
            bool repeats = true;
            for (std::size_t i = len; i < n && repeats; ++i) {
                repeats = r.period[i] == r.period[i - len];
            }
            if (repeats) {
                r.period.resize(len);
                break;
            }
        }
        while (!r.preperiod.empty() && r.preperiod.back() == r.period.back()) {
            std::rotate(r.period.rbegin(), r.period.rbegin() + 1, r.period.rend());
            r.preperiod.pop_back();
        }
        return r;
    }

    friend bool operator==(const EventuallyPeriodicString&, const EventuallyPeriodicString&) = default;
};

namespace detail {

inline void append_digits(std::string& out, const std::vector<int>& d, bool commas) {
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (commas && i > 0) {
            out += ',';
        }
        out += std::to_string(d[i]);
    }
}

}  // namespace detail

/// `pre(per)`. Digits are concatenated when all lie in 0..9 ("3(1)",
/// "111"), comma-separated otherwise ("10,2(1)").
inline std::string to_string(const EventuallyPeriodicString& s) {
    auto single = [](const std::vector<int>& v) {
        return std::all_of(v.begin(), v.end(), [](int d) { return d >= 0 && d <= 9; });
    };
    const bool commas = !(single(s.preperiod) && single(s.period));
    std::string out;
    detail::append_digits(out, s.preperiod, commas);
    if (!s.period.empty()) {
        out += '(';
        detail::append_digits(out, s.period, commas);
        out += ')';
    }
    if (out.empty()) {
        out = "0";
    }
    return out;
}

inline EventuallyPeriodicString parse_eventually_periodic(std::string_view text) {
    text = detail::trim_ws(text);
    const bool commas = text.find(',') != std::string_view::npos;
    auto parse_part = [&](std::string_view part) {
        if (commas) {
            return detail::parse_digit_list(part);
        }
        std::vector<int> out;
        for (char ch : part) {
            if (ch < '0' || ch > '9') {
                throw std::invalid_argument("bad digit in '" + std::string(text) + "'");
            }
            out.push_back(ch - '0');
        }
        return out;
    };
    EventuallyPeriodicString s;
    std::size_t open = text.find('(');
    if (open == std::string_view::npos) {
        s.preperiod = parse_part(text);
        return s;
    }
    if (text.back() != ')') {
        throw std::invalid_argument("unterminated period in '" + std::string(text) + "'");
    }
    std::string_view pre = text.substr(0, open);
    if (commas && !pre.empty() && pre.back() == ',') {
        pre.remove_suffix(1);
    }
    s.preperiod = parse_part(pre);
    s.period = parse_part(text.substr(open + 1, text.size() - open - 2));
    if (s.period.empty()) {
        throw std::invalid_argument("empty period in '" + std::string(text) + "'");
    }
    return s;
}

/// Lexicographic order of two eventually periodic sequences.
///
/// Let N = max(|pre_a|, |pre_b|) and L = lcm(|per_a|, |per_b|). For n >= N
/// both a_{n+L} = a_n and b_{n+L} = b_n, so agreement on [0, N + L) extends
/// by induction to every position: the first difference, if any, occurs
/// before N + L.
inline std::strong_ordering lex_compare(const EventuallyPeriodicString& a, const EventuallyPeriodicString& b) {
    const std::size_t horizon = std::max(a.effective_preperiod(), b.effective_preperiod())
                                + std::lcm(a.effective_period(), b.effective_period()) + 1;
    for (std::size_t i = 0; i < horizon; ++i) {
        if (auto c = a.at(i) <=> b.at(i); c != 0) {
            return c;
        }
    }
    return std::strong_ordering::equal;
}

/// Suffix of an eventually periodic sequence starting at index k.
inline EventuallyPeriodicString suffix(const EventuallyPeriodicString& s, std::size_t k) {
    EventuallyPeriodicString r;
    if (k < s.preperiod.size()) {
        r.preperiod.assign(s.preperiod.begin() + static_cast<std::ptrdiff_t>(k), s.preperiod.end());
        r.period = s.period;
        return r;
    }
    if (s.period.empty()) {
        return r;
    }
    std::size_t off = (k - s.preperiod.size()) % s.period.size();
    r.period.assign(s.period.begin() + static_cast<std::ptrdiff_t>(off), s.period.end());
    r.period.insert(r.period.end(), s.period.begin(), s.period.begin() + static_cast<std::ptrdiff_t>(off));
    return r;
}

/// C_beta = {0, ..., ceil(beta) - 1}.
inline Alphabet canonical_alphabet(const BetaBase& base) {
    QuotientValue beta = QuotientValue::beta_power(base, 1);
    Integer fl = certified_floor(beta);
    // beta is irrational, so ceil(beta) = floor(beta) + 1.
    return Alphabet::upto(static_cast<int>(fl));
}

/// floor(beta)
inline int beta_floor(const BetaBase& base) {
    return static_cast<int>(certified_floor(QuotientValue::beta_power(base, 1)));
}

/// Result of a greedy expansion. `exact` is false when the digit budget ran
/// out before a zero remainder (the digits are then a prefix).
struct GreedyExpansion {
    DigitString digits;
    bool exact = true;
};

/// Greedy expansion of x in [0, 1): r_0 = x, x_j = floor(beta r_{j-1}),
/// r_j = beta r_{j-1} - x_j. Digits sit at exponents -1, -2, ...
inline GreedyExpansion greedy_expand(const QuotientValue& x, int max_digits) {
    if (max_digits < 1) {
        throw std::invalid_argument("greedy_expand: max_digits must be >= 1");
    }
    CertifiedReals reals(x.base());
    if (reals.sign(x) < 0 || reals.compare(x, QuotientValue::from_integer(x.base(), 1)) >= 0) {
        throw std::domain_error("greedy_expand: x must lie in [0, 1)");
    }
    std::vector<int> digits;
    QuotientValue r = x;
    while (!r.is_zero() && static_cast<int>(digits.size()) < max_digits) {
        // Fixed scale keeps one cached inverse power in the evaluator.
        QuotientValue t = r.times_beta();
        Integer digit = reals.floor(t);
        digits.push_back(static_cast<int>(digit));
        r = t - QuotientValue::from_integer(x.base(), digit);
    }
    return {DigitString(std::move(digits), -1), r.is_zero()};
}

/// Greedy expansion of x >= 0 with up to max_frac fractional digits.
inline GreedyExpansion greedy_expand_ge1(const QuotientValue& x, int max_frac) {
    CertifiedReals reals(x.base());
    const int s = reals.sign(x);
    if (s < 0) {
        throw std::domain_error("greedy_expand_ge1: x must be non-negative");
    }
    if (s == 0) {
        return {};
    }
    // Smallest n >= 0 with x < beta^n.
    int n = 0;
    QuotientValue power = QuotientValue::from_integer(x.base(), 1);
    while (reals.compare(x, power) >= 0) {
        power = power.mul_beta_pow(1);
        ++n;
    }
    GreedyExpansion g = greedy_expand(x.mul_beta_pow(-n), n + max_frac);
    g.digits = g.digits.shifted(n);
    return g;
}

/// d_beta(1) by exact remainder tracking; nullopt when neither a zero nor a
/// repeated remainder shows up within max_steps.
inline std::optional<EventuallyPeriodicString> renyi_dbeta(const BetaBase& base, int max_steps = 10000) {
    if (max_steps < 1) {
        throw std::invalid_argument("renyi_dbeta: max_steps must be >= 1");
    }
    CertifiedReals reals(base);
    std::map<std::vector<Integer>, std::size_t> seen;  // remainder r_j -> j
    std::vector<int> digits;
    QuotientValue r = QuotientValue::from_integer(base, 1);
    for (int step = 1; step <= max_steps; ++step) {
        QuotientValue t = r.mul_beta_pow(1);
        Integer digit = reals.floor(t);
        digits.push_back(static_cast<int>(digit));
        r = t - QuotientValue::from_integer(base, digit);
        if (r.is_zero()) {
            return EventuallyPeriodicString{digits, {}};
        }
        auto [it, inserted] = seen.emplace(r.coeffs(), digits.size());
        if (!inserted) {
            const std::size_t first = it->second;  // r_first == r_now
            EventuallyPeriodicString out;
            out.preperiod.assign(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(first));
            out.period.assign(digits.begin() + static_cast<std::ptrdiff_t>(first), digits.end());
            return out.normalized();
        }
    }
    return std::nullopt;
}

/// d*_beta(1): (t_1 ... t_{m-1} (t_m - 1))^omega for finite d, else d.
inline EventuallyPeriodicString quasi_greedy(const EventuallyPeriodicString& d) {
    if (!d.is_finite()) {
        return d;
    }
    if (d.preperiod.empty() || d.preperiod.front() < 1) {
        throw std::invalid_argument("quasi_greedy: not an expansion of unity");
    }
    EventuallyPeriodicString r;
    r.period = d.preperiod;
    r.period.back() -= 1;
    return r.normalized();
}

/// Every suffix strictly below d*_beta(1).
inline bool is_admissible(const EventuallyPeriodicString& s, const EventuallyPeriodicString& dstar) {
    for (int digit : s.preperiod) {
        if (digit < 0) {
            return false;
        }
    }
    for (int digit : s.period) {
        if (digit < 0) {
            return false;
        }
    }
    const std::size_t starts = s.preperiod.size() + s.period.size();
    for (std::size_t k = 0; k < std::max<std::size_t>(starts, 1); ++k) {
        if (lex_compare(suffix(s, k), dstar) != std::strong_ordering::less) {
            return false;
        }
    }
    return true;
}

/// Finite digit string read from its most significant digit, padded by 0^omega.
inline bool is_admissible(const DigitString& s, const EventuallyPeriodicString& dstar) {
    return is_admissible(EventuallyPeriodicString{s.digits(), {}}, dstar);
}

enum class ParryKind { simple, non_simple, unknown };

inline std::string to_string(ParryKind k) {
    switch (k) {
        case ParryKind::simple:
            return "simple";
        case ParryKind::non_simple:
            return "non-simple";
        case ParryKind::unknown:
            return "unknown";
    }
    return "unknown";
}

struct ParryClassification {
    ParryKind kind = ParryKind::unknown;
    std::optional<EventuallyPeriodicString> dbeta;
};

inline ParryClassification classify_parry(const BetaBase& base, int max_steps = 10000) {
    auto d = renyi_dbeta(base, max_steps);
    if (!d) {
        return {ParryKind::unknown, std::nullopt};
    }
    return {d->is_finite() ? ParryKind::simple : ParryKind::non_simple, d};
}

enum class PfClass { F, PF, inconclusive };

inline std::string to_string(PfClass c) {
    switch (c) {
        case PfClass::F:
            return "F";
        case PfClass::PF:
            return "PF";
        case PfClass::inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

/// Sufficient conditions for (F) / (PF) in terms of d_beta(1). Inconclusive is
/// not a negative certificate.
inline PfClass pf_sufficient(const EventuallyPeriodicString& d) {
    const auto& t = d.preperiod;
    auto non_increasing = [&] {
        for (std::size_t i = 1; i < t.size(); ++i) {
            if (t[i] > t[i - 1]) {
                return false;
            }
        }
        return true;
    };
    if (d.is_finite()) {
        if (!t.empty() && non_increasing() && t.back() >= 1) {
            return PfClass::F;
        }
        return PfClass::inconclusive;
    }
    if (d.period.size() == 1 && !t.empty() && non_increasing() && t.back() > d.period[0] && d.period[0] >= 1) {
        return PfClass::PF;
    }
    return PfClass::inconclusive;
}

}  // namespace betapar
