#pragma once

// k-block 3-local parallel addition for bases with the (PF) property.
//
// A block u (k digits over A + A) is split as u = L(u) beta^k + C(u) +
// S(u) beta^{-2s}, with L, C, S over B = {0..floor(beta)}, by slicing the
// greedy expansion of its value. The block map
//   Phi(f, g, h) = L(h) + C(g) + S(f) beta^{2l}
// then lands in B + B = A, and v_j = Phi(u_{j+1}, u_j, u_{j-1}) telescopes
// to the same value because k = 2(l + s).

#include "betapar/algebraic.hpp"
#include "betapar/digit_string.hpp"
#include "betapar/local_conversion.hpp"
#include "betapar/numeration.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace betapar {

struct BlockParams {
    int k = 0;
    int ell = 0;
    int s = 0;
    Alphabet B;  // {0..floor(beta)}
    Alphabet A;  // B + B

    static BlockParams make(int ell, int s, int beta_floor) {
        if (ell < 0 || s < 0 || beta_floor < 1) {
            throw std::invalid_argument("block parameters must be non-negative");
        }
        BlockParams p;
        p.ell = ell;
        p.s = s;
        p.k = 2 * (ell + s);
        p.B = Alphabet::upto(beta_floor);
        p.A = p.B + p.B;
        return p;
    }

    void validate() const {
        if (k != 2 * (ell + s) || k <= 0) {
            throw std::invalid_argument("block parameters need k = 2(l + s) > 0");
        }
        if (A != B + B) {
            throw std::invalid_argument("block parameters need A = B + B");
        }
    }

    std::string to_string() const {
        return "k=" + std::to_string(k) + ",l=" + std::to_string(ell) + ",s=" + std::to_string(s);
    }
};

/// Digits are least significant first: L has 2l entries, C has k, S has 2s.
struct BlockDecomposition {
    std::vector<int> L;
    std::vector<int> C;
    std::vector<int> S;

    friend bool operator==(const BlockDecomposition&, const BlockDecomposition&) = default;
};

class ParametersInsufficient : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Block adder over A = {0..2 floor(beta)}. Copies share one memo of
/// decompositions; lookups and inserts are thread-safe and idempotent.
class BlockAdder {
public:
    BlockAdder(BetaBase base, BlockParams params)
        : base_(std::move(base)), params_(params), memo_(std::make_shared<Memo>()) {
        params_.validate();
        if (params_.B != Alphabet::upto(beta_floor(base_))) {
            throw std::invalid_argument("block adder: B must be {0..floor(beta)}");
        }
    }

    const BetaBase& base() const noexcept { return base_; }
    const BlockParams& params() const noexcept { return params_; }
    std::size_t memo_size() const {
        std::shared_lock lock(memo_->mutex);
        return memo_->table.size();
    }

    /// Canonical (deterministic) decomposition of a block over A + A.
    BlockDecomposition decompose(std::span<const int> u) const {
        const int k = params_.k;
        if (static_cast<int>(u.size()) != k) {
            throw std::invalid_argument("decompose: block must have exactly k = " + std::to_string(k) + " digits");
        }
        const Alphabet in = params_.A + params_.A;
        std::vector<int> key(u.begin(), u.end());
        if (!std::all_of(key.begin(), key.end(), [&](int d) { return in.contains(d); })) {
            throw std::invalid_argument("decompose: block digit outside " + in.to_string());
        }
        if (std::all_of(key.begin(), key.end(), [&](int d) { return params_.B.contains(d); })) {
            return {std::vector<int>(2 * params_.ell, 0), key, std::vector<int>(2 * params_.s, 0)};
        }
        {
            std::shared_lock lock(memo_->mutex);
            auto it = memo_->table.find(key);
            if (it != memo_->table.end()) {
                return it->second;
            }
        }
        BlockDecomposition dec = compute(key);
        std::unique_lock lock(memo_->mutex);
        return memo_->table.emplace(std::move(key), std::move(dec)).first->second;
    }

    /// Phi(f, g, h): f is the more significant neighbour, h the less.
    std::vector<int> phi(std::span<const int> f, std::span<const int> g, std::span<const int> h) const {
        const BlockDecomposition df = decompose(f);
        const BlockDecomposition dg = decompose(g);
        const BlockDecomposition dh = decompose(h);
        const int two_l = 2 * params_.ell;
        std::vector<int> out(static_cast<std::size_t>(params_.k));
        for (int i = 0; i < params_.k; ++i) {
            const int side = i < two_l ? dh.L[static_cast<std::size_t>(i)] : df.S[static_cast<std::size_t>(i - two_l)];
            out[static_cast<std::size_t>(i)] = dg.C[static_cast<std::size_t>(i)] + side;
        }
        return out;
    }

    /// Applies v_j = Phi(u_{j+1} + c, u_j + c, u_{j-1} + c) - c blockwise.
    /// Block j holds exponents jk .. jk + k - 1. With c a letter of B the
    /// constant block c..c is fixed by Phi, so zero blocks stay zero and only
    /// blocks jmin - 1 .. jmax + 1 need computing.
    DigitString convert(const DigitString& u, int c = 0) const {
        if (!params_.B.contains(c)) {
            throw std::invalid_argument("convert: offset must lie in B");
        }
        if (u.is_zero()) {
            return {};
        }
        const int k = params_.k;
        auto block_index = [k](int e) { return e >= 0 ? e / k : -((-e + k - 1) / k); };
        const int jmin = block_index(u.lsd_exponent()) - 1;
        const int jmax = block_index(u.msd_exponent()) + 1;
        auto block = [&](int j) {
            std::vector<int> b = u.window_lsd(j * k, j * k + k - 1);
            for (auto& d : b) {
                d += c;
            }
            return b;
        };
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>((jmax - jmin + 1) * k));
        std::vector<int> lo = block(jmin - 1);
        std::vector<int> mid = block(jmin);
        for (int j = jmin; j <= jmax; ++j) {
            std::vector<int> hi = block(j + 1);
            std::vector<int> v = phi(hi, mid, lo);
            for (int d : v) {
                out.push_back(d - c);
            }
            lo = std::move(mid);
            mid = std::move(hi);
        }
        return DigitString::from_lsd(out, jmin * k);
    }

    /// x + y for x, y over A; the result is over A.
    DigitString add(const DigitString& x, const DigitString& y) const {
        require_within(x, params_.A);
        require_within(y, params_.A);
        return convert(digitwise_add(x, y));
    }

    /// x + y for x, y over {-h..h}, h = floor(beta), in two conjugated passes:
    /// t = x + y+ is brought back to {-h..h}, then -(y- - t) likewise.
    DigitString add_signed(const DigitString& x, const DigitString& y) const {
        const int h = params_.B.max_digit();
        const Alphabet sym(-h, h);
        require_within(x, sym);
        require_within(y, sym);
        DigitString yp = map_digits(y, [](int d) { return std::max(d, 0); });
        DigitString ym = map_digits(y, [](int d) { return std::max(-d, 0); });
        DigitString t = convert(digitwise_add(x, yp), h);
        return negate(convert(digitwise_sub(ym, t), h));
    }

private:
    struct Memo {
        mutable std::shared_mutex mutex;
        std::map<std::vector<int>, BlockDecomposition> table;
    };

    static void require_within(const DigitString& x, const Alphabet& a) {
        if (!x.within(a)) {
            throw std::invalid_argument("block adder: operand digit outside " + a.to_string());
        }
    }

    BlockDecomposition compute(const std::vector<int>& u) const {
        const int k = params_.k;
        const int two_l = 2 * params_.ell;
        const int two_s = 2 * params_.s;
        const DigitString us = DigitString::from_lsd(u, 0);
        const QuotientValue value = eval_digit_string(us, base_);
        const GreedyExpansion g = greedy_expand_ge1(value, two_s);
        if (!g.exact || (!g.digits.is_zero() && g.digits.msd_exponent() > k + two_l - 1)) {
            throw ParametersInsufficient("parameters (l, s) insufficient (" + params_.to_string() + ") for block " +
                                         to_string(us));
        }
        BlockDecomposition dec;
        dec.S = g.digits.window_lsd(-two_s, -1);
        dec.C = g.digits.window_lsd(0, k - 1);
        dec.L = g.digits.window_lsd(k, k + two_l - 1);
        const QuotientValue rebuilt = eval_digit_string(DigitString::from_lsd(dec.L, k), base_) +
                                      eval_digit_string(DigitString::from_lsd(dec.C, 0), base_) +
                                      eval_digit_string(DigitString::from_lsd(dec.S, -two_s), base_);
        if (!values_equal(rebuilt, value)) {
            throw std::logic_error("decompose: value identity failed for block " + to_string(us));
        }
        return dec;
    }

    BetaBase base_;
    BlockParams params_;
    std::shared_ptr<Memo> memo_;
};

inline BlockDecomposition decompose(std::span<const int> u, const BlockParams& params, const BetaBase& base) {
    return BlockAdder(base, params).decompose(u);
}

inline std::vector<int> block_phi(std::span<const int> f, std::span<const int> g, std::span<const int> h,
                                  const BlockParams& params, const BetaBase& base) {
    return BlockAdder(base, params).phi(f, g, h);
}

inline DigitString block_add(const DigitString& x, const DigitString& y, const BlockParams& params,
                             const BetaBase& base) {
    return BlockAdder(base, params).add(x, y);
}

/// Smallest l >= 0 with 2 floor(beta) / (beta - 1) < beta^l, i.e.
/// beta^{l+1} - beta^l - 2 floor(beta) > 0, decided by certified sign.
inline int minimal_ell(const BetaBase& base) {
    const int fl = beta_floor(base);
    CertifiedReals reals(base);
    for (int ell = 0; ell < 4096; ++ell) {
        QuotientValue gap = QuotientValue::beta_power(base, ell + 1) - QuotientValue::beta_power(base, ell) -
                            QuotientValue::from_integer(base, 2 * fl);
        if (reals.sign(gap) > 0) {
            return ell;
        }
    }
    throw std::logic_error("minimal_ell: no l found");
}

/// Block parameters for a (PF) base with caller-chosen s.
inline BlockParams params_for_pf_base(const BetaBase& base, int s, bool allow_non_pf = false) {
    if (!allow_non_pf) {
        auto d = renyi_dbeta(base);
        if (!d || pf_sufficient(*d) == PfClass::inconclusive) {
            throw std::invalid_argument("params_for_pf_base: " + base.name() +
                                        " is not known to have (PF); pass allow_non_pf to override");
        }
    }
    return BlockParams::make(minimal_ell(base), s, beta_floor(base));
}

struct SEstimate {
    int s = 0;
    /// True when the pairs were sampled rather than enumerated; s is then
    /// only an estimate from below.
    bool sampled = false;
    std::size_t integers = 0;
    std::size_t pairs = 0;
    std::size_t distinct_sums = 0;
};

/// Largest number of fractional greedy digits of x + y over beta-integers
/// x, y with at most test_len digits. All pairs when they fit in `budget`,
/// otherwise `budget` seeded random pairs.
inline SEstimate estimate_s(const BetaBase& base, int test_len, std::size_t budget = 2'000'000,
                            std::uint64_t seed = 1) {
    if (test_len < 1) {
        throw std::invalid_argument("estimate_s: test_len must be >= 1");
    }
    const auto d = renyi_dbeta(base);
    if (!d) {
        throw std::invalid_argument("estimate_s: d_beta(1) not found for " + base.name());
    }
    const EventuallyPeriodicString dstar = quasi_greedy(*d);
    const int card = canonical_alphabet(base).cardinality();
    double total = 1;
    for (int i = 0; i < test_len; ++i) {
        total *= card;
    }
    if (total > double(1 << 22)) {
        throw std::invalid_argument("estimate_s: too many candidate strings");
    }

    // Admissible integer strings of exactly test_len digits (shorter ones are
    // the zero-padded ones), least significant first.
    std::vector<std::vector<int>> ints;
    std::vector<int> w(static_cast<std::size_t>(test_len), 0);
    while (true) {
        if (is_admissible(DigitString::from_lsd(w, 0), dstar)) {
            ints.push_back(w);
        }
        std::size_t i = 0;
        while (i < w.size() && ++w[i] == card) {
            w[i++] = 0;
        }
        if (i == w.size()) {
            break;
        }
    }

    SEstimate est;
    est.integers = ints.size();
    const std::size_t n = ints.size();
    const std::size_t all_pairs = n * (n + 1) / 2;
    est.sampled = all_pairs > budget;

    // Digitwise sums deduped by packed digits; values by exact coefficients.
    const int radix = 2 * card - 1;
    std::set<std::uint64_t> sums;
    auto pack = [&](const std::vector<int>& a, const std::vector<int>& b) {
        std::uint64_t key = 0;
        for (std::size_t i = a.size(); i-- > 0;) {
            key = key * static_cast<std::uint64_t>(radix) + static_cast<std::uint64_t>(a[i] + b[i]);
        }
        return key;
    };
    if (!est.sampled) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                sums.insert(pack(ints[i], ints[j]));
            }
        }
        est.pairs = all_pairs;
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (std::size_t p = 0; p < budget; ++p) {
            sums.insert(pack(ints[pick(rng)], ints[pick(rng)]));
        }
        est.pairs = budget;
    }

    std::set<std::vector<Integer>> values;
    std::vector<int> digits(static_cast<std::size_t>(test_len));
    for (std::uint64_t key : sums) {
        for (auto& v : digits) {
            v = static_cast<int>(key % static_cast<std::uint64_t>(radix));
            key /= static_cast<std::uint64_t>(radix);
        }
        // Integer strings have scale 0, so coefficients identify the value.
        QuotientValue v = eval_digit_string(DigitString::from_lsd(digits, 0), base);
        if (!values.insert(v.coeffs()).second) {
            continue;
        }
        GreedyExpansion g = greedy_expand_ge1(v, 64);
        if (!g.exact) {
            throw std::domain_error("estimate_s: a sum has no finite greedy expansion within 64 digits");
        }
        est.s = std::max(est.s, g.digits.fractional_depth());
    }
    est.distinct_sums = values.size();
    return est;
}

/// Block adder for the d-bonacci base on {0, 1, 2}, or on {-1, 0, 1} when
/// `is_signed`. Without s the estimate at test length 12 is used. The signed
/// variant is checked against the value oracle on 200 random pairs first.
inline Adder dbonacci_block_adder(int d, bool is_signed, std::optional<int> s = std::nullopt) {
    BetaBase base = dbonacci_base(d);
    const int s_used = s ? *s : estimate_s(base, 12).s;
    BlockAdder blocks(base, params_for_pf_base(base, s_used));
    const int k = blocks.params().k;
    std::string name = "block-adder:" + base.name() + ":" + blocks.params().to_string();
    if (!is_signed) {
        return Adder{name, base, blocks.params().A, 3 * k,
                     [blocks](const DigitString& x, const DigitString& y) { return blocks.add(x, y); }};
    }
    Adder adder{name + ":signed", base, Alphabet(-1, 1), 5 * k,
                [blocks](const DigitString& x, const DigitString& y) { return blocks.add_signed(x, y); }};
    ConversionReport report = verify_adder(adder, RandomSample{200, 0x5eed, 24});
    if (!report.passed()) {
        throw std::logic_error("signed block adder failed verification: " + report.failures.front().input + " -> " +
                               report.failures.front().output + " (" + report.failures.front().reason + ")");
    }
    return adder;
}

}  // namespace betapar
