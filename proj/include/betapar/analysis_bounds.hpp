#pragma once

// Lower and upper bounds on alphabets admitting parallel addition, computed
// from the minimal polynomial or from d_beta(1). Each bound checks its own
// hypotheses and reports "not applicable" instead of extrapolating.

#include "betapar/algebraic.hpp"
#include "betapar/numeration.hpp"

#include <optional>
#include <string>
#include <vector>

namespace betapar {

/// #A >= |f(1)|, and #A >= |f(1)| + 2 when beta is real and > 1.
inline Integer lower_bound_1block(const MinimalPolynomial& f, bool is_real_gt1) {
    Integer v = f.eval(Integer(1));
    if (v < 0) {
        v = -v;
    }
    return is_real_gt1 ? v + 2 : v;
}

/// Cardinality bound t_1 + t_m + 1 (M >= t_1 + t_m) for finite
/// d = t_1 ... t_m with m >= 2 and 1 <= t_m <= t_i.
inline std::optional<int> block_lower_bound_simple(const EventuallyPeriodicString& d) {
    if (!d.is_finite() || d.preperiod.size() < 2) {
        return std::nullopt;
    }
    const auto& t = d.preperiod;
    const int tm = t.back();
    if (tm < 1) {
        return std::nullopt;
    }
    for (int ti : t) {
        if (tm > ti) {
            return std::nullopt;
        }
    }
    return t.front() + tm + 1;
}

/// Cardinality bound 2 t_1 - t_2 (M >= 2 t_1 - t_2 - 1) for
/// d = t_1 ... t_m (t_{m+1} ... t_{m+p})^omega under one of:
///   m = p = 1;
///   m = 1, p >= 2, t_1 > t_2 > t_j for j >= 3;
///   m >= 2, t_1 > t_2 >= t_j for 3 <= j <= m, t_2 > t_j for j > m.
/// Indices j run over one preperiod and one period, which covers every
/// letter of d.
inline std::optional<int> block_lower_bound_nonsimple(const EventuallyPeriodicString& raw) {
    const EventuallyPeriodicString d = raw.normalized();
    if (d.is_finite()) {
        return std::nullopt;
    }
    const std::size_t m = d.preperiod.size();
    const std::size_t p = d.period.size();
    if (m == 0) {
        return std::nullopt;
    }
    auto t = [&](std::size_t j) { return d.at(j - 1); };  // 1-based
    const std::size_t last = m + p;
    bool ok = false;
    if (m == 1 && p == 1) {
        ok = true;
    } else if (m == 1) {
        ok = t(1) > t(2);
        for (std::size_t j = 3; ok && j <= last; ++j) {
            ok = t(2) > t(j);
        }
    } else {
        ok = t(1) > t(2);
        for (std::size_t j = 3; ok && j <= m; ++j) {
            ok = t(2) >= t(j);
        }
        for (std::size_t j = m + 1; ok && j <= last; ++j) {
            ok = t(2) > t(j);
        }
    }
    if (!ok) {
        return std::nullopt;
    }
    return 2 * t(1) - t(2);
}

struct MInterval {
    int lo = 0;
    int hi = 0;
};

/// Range of the least M such that {0..M} admits block parallel addition:
///   [t_1 + t_m, 2 t_1] for finite non-increasing d with t_m >= 1,
///   [2 t_1 - t_2 - 1, 2 t_1] for d = t_1 ... t_m t^omega with
///   t_1 > t_2 >= ... >= t_m > t >= 1 (t_2 is read as the second letter of d,
///   so it is t itself when m = 1).
inline std::optional<MInterval> upper_bound_corollaries(const EventuallyPeriodicString& raw) {
    const EventuallyPeriodicString d = raw.normalized();
    const auto& t = d.preperiod;
    if (t.empty()) {
        return std::nullopt;
    }
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (t[i] > t[i - 1]) {
            return std::nullopt;
        }
    }
    if (d.is_finite()) {
        if (t.back() < 1) {
            return std::nullopt;
        }
        return MInterval{t.front() + t.back(), 2 * t.front()};
    }
    if (d.period.size() != 1) {
        return std::nullopt;
    }
    const int tail = d.period[0];
    const int t2 = d.at(1);
    if (!(tail >= 1 && t.back() > tail && t.front() > t2)) {
        return std::nullopt;
    }
    return MInterval{2 * t.front() - t2 - 1, 2 * t.front()};
}

enum class UnitConjugateEvidence { impossible_evidence, no_evidence };

inline std::string to_string(UnitConjugateEvidence e) {
    return e == UnitConjugateEvidence::impossible_evidence ? "impossible-evidence" : "no-evidence";
}

/// A conjugate on the unit circle rules out block parallel addition. This
/// reports numerical evidence only: f self-reciprocal and a certified root
/// modulus enclosure of width < eps containing 1.
inline UnitConjugateEvidence block_impossible_unit_conjugate(const MinimalPolynomial& f, long double eps = 1e-6L) {
    if (!self_reciprocal(f)) {
        return UnitConjugateEvidence::no_evidence;
    }
    for (const RootModulus& r : root_moduli(f, eps)) {
        if (r.certified && r.lo <= 1.0L && 1.0L <= r.hi && r.hi - r.lo < eps) {
            return UnitConjugateEvidence::impossible_evidence;
        }
    }
    return UnitConjugateEvidence::no_evidence;
}

}  // namespace betapar
