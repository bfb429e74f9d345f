#pragma once

// p-local digit maps applied through a sliding window, oracle verification of
// digit set conversions, fixed letters, alphabet conjugation, and addition by
// chaining greatest-digit eliminations.

#include "betapar/algebraic.hpp"
#include "betapar/digit_string.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace betapar {

/// Output digit for one window. The window holds u_{j-r}, ..., u_{j+t}:
/// index r is the position being written, higher indices are more significant.
using WindowFunction = std::function<int(std::span<const int>)>;

/// A p-local function, p = memory + anticipation + 1, with declared alphabets.
///
/// Windows of all zeros must map to 0 so that finite strings stay finite.
class LocalRule {
public:
    static constexpr std::size_t kDefaultTableLimit = 1'000'000;

    LocalRule(std::string name, BetaBase base, int memory, int anticipation, Alphabet input, Alphabet output,
              WindowFunction fn)
        : name_(std::move(name)),
          base_(std::move(base)),
          memory_(memory),
          anticipation_(anticipation),
          input_(input),
          output_(output),
          fn_(std::move(fn)) {
        if (memory < 0 || anticipation < 0) {
            throw std::invalid_argument("memory and anticipation must be non-negative");
        }
        std::vector<int> zeros(static_cast<std::size_t>(width()), 0);
        if (fn_(zeros) != 0) {
            throw std::invalid_argument("local rule '" + name_ + "' does not map the zero window to 0");
        }
    }

    const std::string& name() const noexcept { return name_; }
    const BetaBase& base() const noexcept { return base_; }
    int memory() const noexcept { return memory_; }
    int anticipation() const noexcept { return anticipation_; }
    int width() const noexcept { return memory_ + anticipation_ + 1; }
    const Alphabet& input_alphabet() const noexcept { return input_; }
    const Alphabet& output_alphabet() const noexcept { return output_; }

    /// Whether each output digit may depend on its neighbours. Informational.
    bool neighbour_sensitive() const noexcept { return neighbour_sensitive_; }
    LocalRule& set_neighbour_sensitive(bool v) {
        neighbour_sensitive_ = v;
        return *this;
    }

    int operator()(std::span<const int> window) const {
        if (table_) {
            std::size_t idx = 0;
            const std::size_t card = static_cast<std::size_t>(input_.cardinality());
            for (std::size_t i = window.size(); i-- > 0;) {
                idx = idx * card + static_cast<std::size_t>(window[i] - input_.min_digit());
            }
            return (*table_)[idx];
        }
        return fn_(window);
    }

    /// Number of windows over the input alphabet, saturating at SIZE_MAX.
    std::size_t window_count() const noexcept {
        std::size_t n = 1;
        const auto card = static_cast<std::size_t>(input_.cardinality());
        for (int i = 0; i < width(); ++i) {
            if (n > SIZE_MAX / card) {
                return SIZE_MAX;
            }
            n *= card;
        }
        return n;
    }

    /// Visits every window over the input alphabet; window[0] varies fastest.
    template <typename Visit>
    void for_each_window(Visit visit) const {
        const std::size_t total = window_count();
        std::vector<int> w(static_cast<std::size_t>(width()), input_.min_digit());
        for (std::size_t n = 0; n < total; ++n) {
            visit(std::span<const int>(w));
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (++w[i] <= input_.max_digit()) {
                    break;
                }
                w[i] = input_.min_digit();
            }
        }
    }

    /// Same rule backed by a lookup table when |A|^p <= limit.
    LocalRule tabulated(std::size_t limit = kDefaultTableLimit) const {
        LocalRule r = *this;
        if (window_count() > limit) {
            return r;
        }
        auto table = std::make_shared<std::vector<int>>();
        table->reserve(window_count());
        // for_each_window steps index 0 fastest, matching operator()'s index.
        for_each_window([&](std::span<const int> w) { table->push_back(fn_(w)); });
        r.table_ = std::move(table);
        return r;
    }

    bool is_tabulated() const noexcept { return table_ != nullptr; }

    const WindowFunction& function() const noexcept { return fn_; }

private:
    std::string name_;
    BetaBase base_;
    int memory_;
    int anticipation_;
    Alphabet input_;
    Alphabet output_;
    WindowFunction fn_;
    std::shared_ptr<const std::vector<int>> table_;
    bool neighbour_sensitive_ = true;
};

/// v_j = Phi(u_{j+t} ... u_{j-r}) on every position where the window meets
/// the support of u.
inline DigitString apply_local(const LocalRule& rule, const DigitString& u) {
    if (!u.within(rule.input_alphabet())) {
        throw std::invalid_argument("apply_local: digit outside " + rule.input_alphabet().to_string() + " for rule " +
                                    rule.name());
    }
    if (u.is_zero()) {
        return {};
    }
    const int r = rule.memory();
    const int t = rule.anticipation();
    const int out_lo = u.lsd_exponent() - t;
    const int out_hi = u.msd_exponent() + r;
    // Padded copy covering every window, least significant first.
    const int pad_lo = out_lo - r;
    std::vector<int> padded = u.window_lsd(pad_lo, out_hi + t);
    std::vector<int> out(static_cast<std::size_t>(out_hi - out_lo + 1));
    const std::size_t p = static_cast<std::size_t>(rule.width());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = rule(std::span<const int>(padded.data() + i, p));
    }
    return DigitString::from_lsd(out, out_lo);
}

/// Digits h with Phi(h^p) = h.
inline std::vector<int> fixed_letters(const LocalRule& rule) {
    std::vector<int> out;
    const Alphabet& in = rule.input_alphabet();
    const Alphabet& o = rule.output_alphabet();
    for (int h = std::max(in.min_digit(), o.min_digit()); h <= std::min(in.max_digit(), o.max_digit()); ++h) {
        std::vector<int> w(static_cast<std::size_t>(rule.width()), h);
        if (rule(w) == h) {
            out.push_back(h);
        }
    }
    return out;
}

inline bool is_fixed_letter(const LocalRule& rule, int h) {
    const auto f = fixed_letters(rule);
    return std::find(f.begin(), f.end(), h) != f.end();
}

/// Conjugation by a fixed letter h: Phi'(w) = Phi(w + h) - h on alphabets
/// shifted by -h.
///
/// Far from the support the input reads h^p, which Phi maps to h, so the
/// shifted rule keeps finite support. Comparing phi on a long block of h's
/// with and without the finite perturbation shows values are preserved.
/// Callers should still re-verify the result.
inline LocalRule shift_rule(const LocalRule& rule, int h) {
    if (h == 0) {
        return rule;
    }
    if (!is_fixed_letter(rule, h)) {
        throw std::invalid_argument("shift_rule: " + std::to_string(h) + " is not a fixed letter of " + rule.name());
    }
    WindowFunction fn = [inner = rule, h](std::span<const int> w) {
        std::vector<int> tmp(w.begin(), w.end());
        for (auto& d : tmp) {
            d += h;
        }
        return inner(tmp) - h;
    };
    LocalRule out(rule.name() + "-shift" + std::to_string(h), rule.base(), rule.memory(), rule.anticipation(),
                  rule.input_alphabet().shifted(h), rule.output_alphabet().shifted(h), std::move(fn));
    return out.tabulated();
}

/// Phi'(w) = -Phi(-w) on negated alphabets.
inline LocalRule negate_rule(const LocalRule& rule) {
    WindowFunction fn = [inner = rule](std::span<const int> w) {
        std::vector<int> tmp(w.begin(), w.end());
        for (auto& d : tmp) {
            d = -d;
        }
        return -inner(tmp);
    };
    LocalRule out(rule.name() + "-neg", rule.base(), rule.memory(), rule.anticipation(),
                  rule.input_alphabet().negated(), rule.output_alphabet().negated(), std::move(fn));
    return out.tabulated();
}

// ---------------------------------------------------------------------------
// Verification against the exact value oracle
// ---------------------------------------------------------------------------

struct ConversionFailure {
    std::string input;
    std::string output;
    std::string reason;
};

struct ConversionReport {
    std::string subject;
    std::string strategy;
    std::size_t checked_count = 0;
    std::vector<ConversionFailure> failures;

    static constexpr std::size_t kMaxRecordedFailures = 16;

    bool passed() const noexcept { return failures.empty(); }

    void record(std::string input, std::string output, std::string reason) {
        if (failures.size() < kMaxRecordedFailures) {
            failures.push_back({std::move(input), std::move(output), std::move(reason)});
        }
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["subject"] = subject;
        j["strategy"] = strategy;
        j["checked"] = checked_count;
        j["verdict"] = passed() ? "pass" : "fail";
        j["failures"] = nlohmann::json::array();
        for (const auto& f : failures) {
            j["failures"].push_back({{"input", f.input}, {"output", f.output}, {"reason", f.reason}});
        }
        return j;
    }
};

/// All strings of exactly max_len digits at exponents 0..max_len-1; shorter
/// strings appear padded with zeros.
struct Exhaustive {
    int max_len = 0;
};

/// Seeded random strings of length 1..max_len at random offsets.
struct RandomSample {
    std::size_t count = 0;
    std::uint64_t seed = 0;
    int max_len = 12;
};

using VerificationStrategy = std::variant<Exhaustive, RandomSample>;

inline std::string describe(const VerificationStrategy& s) {
    if (const auto* e = std::get_if<Exhaustive>(&s)) {
        return "exhaustive(" + std::to_string(e->max_len) + ")";
    }
    const auto& r = std::get<RandomSample>(s);
    return "random(" + std::to_string(r.count) + ", seed=" + std::to_string(r.seed) + ")";
}

namespace detail {

inline DigitString random_string(std::mt19937_64& rng, const Alphabet& a, int max_len) {
    std::uniform_int_distribution<int> len_dist(1, max_len);
    std::uniform_int_distribution<int> digit_dist(a.min_digit(), a.max_digit());
    std::uniform_int_distribution<int> offset_dist(-4, 6);
    const int len = len_dist(rng);
    std::vector<int> d(static_cast<std::size_t>(len));
    for (auto& v : d) {
        v = digit_dist(rng);
    }
    return DigitString(std::move(d), offset_dist(rng) + len - 1);
}

}  // namespace detail

/// Checks one conversion input against (i) output alphabet, (ii) exact value,
/// (iii) finite support (implicit in DigitString).
inline bool check_conversion(const LocalRule& rule, const DigitString& u, ConversionReport& report) {
    ++report.checked_count;
    DigitString v = apply_local(rule, u);
    if (!v.within(rule.output_alphabet())) {
        report.record(to_string(u), to_string(v), "output digit outside " + rule.output_alphabet().to_string());
        return false;
    }
    if (!values_equal(eval_digit_string(u, rule.base()), eval_digit_string(v, rule.base()))) {
        report.record(to_string(u), to_string(v), "value mismatch");
        return false;
    }
    return true;
}

inline ConversionReport verify_conversion(const LocalRule& rule, const VerificationStrategy& strategy) {
    ConversionReport report;
    report.subject = rule.name();
    report.strategy = describe(strategy);
    const Alphabet& in = rule.input_alphabet();
    if (const auto* e = std::get_if<Exhaustive>(&strategy)) {
        if (e->max_len <= 0) {
            return report;
        }
        std::vector<int> d(static_cast<std::size_t>(e->max_len), in.min_digit());
        while (true) {
            check_conversion(rule, DigitString(d, e->max_len - 1), report);
            std::size_t i = d.size();
            while (i > 0) {
                --i;
                if (++d[i] <= in.max_digit()) {
                    break;
                }
                d[i] = in.min_digit();
                if (i == 0) {
                    return report;
                }
            }
        }
    }
    const auto& r = std::get<RandomSample>(strategy);
    std::mt19937_64 rng(r.seed);
    for (std::size_t n = 0; n < r.count; ++n) {
        check_conversion(rule, detail::random_string(rng, in, r.max_len), report);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Adders
// ---------------------------------------------------------------------------

/// Type-erased parallel adder over a single alphabet.
struct Adder {
    std::string name;
    BetaBase base;
    Alphabet alphabet;
    /// Width of the digit window each output digit depends on.
    int locality = 0;
    std::function<DigitString(const DigitString&, const DigitString&)> fn;

    DigitString operator()(const DigitString& x, const DigitString& y) const {
        if (!x.within(alphabet) || !y.within(alphabet)) {
            throw std::invalid_argument("adder " + name + ": operand digit outside " + alphabet.to_string());
        }
        return fn(x, y);
    }
};

/// Seeded random operand pairs checked against the value oracle.
inline ConversionReport verify_adder(const Adder& adder, const RandomSample& sample) {
    ConversionReport report;
    report.subject = adder.name;
    report.strategy = "random-pairs(" + std::to_string(sample.count) + ", seed=" + std::to_string(sample.seed) + ")";
    std::mt19937_64 rng(sample.seed);
    for (std::size_t n = 0; n < sample.count; ++n) {
        DigitString x = detail::random_string(rng, adder.alphabet, sample.max_len);
        DigitString y = detail::random_string(rng, adder.alphabet, sample.max_len);
        ++report.checked_count;
        const std::string in = to_string(x) + " + " + to_string(y);
        DigitString z;
        try {
            z = adder(x, y);
        } catch (const std::exception& ex) {
            report.record(in, "", ex.what());
            continue;
        }
        if (!z.within(adder.alphabet)) {
            report.record(in, to_string(z), "output digit outside " + adder.alphabet.to_string());
            continue;
        }
        if (!values_equal(eval_digit_string(x, adder.base) + eval_digit_string(y, adder.base),
                          eval_digit_string(z, adder.base))) {
            report.record(in, to_string(z), "value mismatch");
        }
    }
    return report;
}

/// Addition on {m, ..., M'} by repeated greatest-digit elimination.
///
/// y is split into indicator strings. An up step adds [y_j >= i] and applies
/// a rule removing the top digit; a down step subtracts [y_j <= -i] and
/// applies a rule removing the bottom digit. Every intermediate sum stays
/// within one digit of the target alphabet.
class EliminationAdder {
public:
    EliminationAdder(Alphabet alphabet, std::optional<LocalRule> up, std::optional<LocalRule> down)
        : alphabet_(alphabet), up_(std::move(up)), down_(std::move(down)) {
        if (alphabet_.max_digit() > 0) {
            if (!up_ || up_->input_alphabet() != Alphabet(alphabet_.min_digit(), alphabet_.max_digit() + 1) ||
                up_->output_alphabet() != alphabet_) {
                throw std::invalid_argument("elimination adder: up rule must map A+{0,1} onto A = " +
                                            alphabet_.to_string());
            }
        }
        if (alphabet_.min_digit() < 0) {
            if (!down_ || down_->input_alphabet() != Alphabet(alphabet_.min_digit() - 1, alphabet_.max_digit()) ||
                down_->output_alphabet() != alphabet_) {
                throw std::invalid_argument("elimination adder: down rule must map A+{-1,0} onto A = " +
                                            alphabet_.to_string());
            }
        }
        if (!up_ && !down_) {
            throw std::invalid_argument("elimination adder needs at least one rule");
        }
    }

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    const BetaBase& base() const { return up_ ? up_->base() : down_->base(); }

    int steps() const noexcept { return alphabet_.max_digit() - alphabet_.min_digit(); }

    /// steps * (p - 1) + 1 for the widest rule used.
    int locality() const noexcept {
        int p = std::max(up_ ? up_->width() : 1, down_ ? down_->width() : 1);
        return steps() * (p - 1) + 1;
    }

    DigitString add(const DigitString& x, const DigitString& y) const {
        if (!x.within(alphabet_) || !y.within(alphabet_)) {
            throw std::invalid_argument("elimination adder: operand digit outside " + alphabet_.to_string());
        }
        DigitString s = x;
        for (int i = 1; i <= alphabet_.max_digit(); ++i) {
            DigitString ind = map_digits(y, [i](int d) { return d >= i ? 1 : 0; });
            s = apply_local(*up_, digitwise_add(s, ind));
        }
        for (int i = 1; i <= -alphabet_.min_digit(); ++i) {
            DigitString ind = map_digits(y, [i](int d) { return d <= -i ? 1 : 0; });
            s = apply_local(*down_, digitwise_sub(s, ind));
        }
        return s;
    }

    Adder as_adder(std::string name) const {
        auto self = std::make_shared<EliminationAdder>(*this);
        return Adder{std::move(name), base(), alphabet_, locality(),
                     [self](const DigitString& x, const DigitString& y) { return self->add(x, y); }};
    }

private:
    Alphabet alphabet_;
    std::optional<LocalRule> up_;
    std::optional<LocalRule> down_;
};

/// Adder on {0, ..., M} from an elimination {0, ..., M+1} -> {0, ..., M}.
inline EliminationAdder make_adder_by_elimination(const LocalRule& gde, int max_digit) {
    if (gde.input_alphabet() != Alphabet::upto(max_digit + 1) || gde.output_alphabet() != Alphabet::upto(max_digit)) {
        throw std::invalid_argument("make_adder_by_elimination: rule must convert {0.." + std::to_string(max_digit + 1) +
                                    "} to {0.." + std::to_string(max_digit) + "}");
    }
    return EliminationAdder(Alphabet::upto(max_digit), gde, std::nullopt);
}

/// Adder on {-d, ..., M-d}: the up rule is gde conjugated by d, the down rule
/// is the mirror of gde conjugated by M - d. Each letter actually used must be
/// fixed by gde.
inline EliminationAdder make_shifted_elimination_adder(const LocalRule& gde, int max_digit, int d) {
    if (d < 0 || d > max_digit) {
        throw std::invalid_argument("shift must lie in 0..M");
    }
    if (d == 0) {
        return make_adder_by_elimination(gde, max_digit);
    }
    std::optional<LocalRule> up;
    if (d < max_digit) {
        up = shift_rule(gde, d);
    }
    LocalRule down = negate_rule(shift_rule(gde, max_digit - d));
    return EliminationAdder(Alphabet(-d, max_digit - d), std::move(up), std::move(down));
}

}  // namespace betapar
