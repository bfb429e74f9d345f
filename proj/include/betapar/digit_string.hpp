#pragma once

// Finite digit strings with a radix point, contiguous digit alphabets, and
// the textual digit format used by the CLI and reports.

#include "betapar/algebraic.hpp"

#include <algorithm>
#include <cstddef>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace betapar {

/// Contiguous integer digits {min_digit, ..., max_digit} containing 0.
class Alphabet {
public:
    constexpr Alphabet() = default;

    constexpr Alphabet(int min_digit, int max_digit) : min_(min_digit), max_(max_digit) {
        if (min_digit > 0 || max_digit < 0) {
            throw std::invalid_argument("alphabet must contain 0");
        }
    }

    /// {0, ..., max_digit}
    static constexpr Alphabet upto(int max_digit) { return Alphabet(0, max_digit); }

    constexpr int min_digit() const noexcept { return min_; }
    constexpr int max_digit() const noexcept { return max_; }
    constexpr int cardinality() const noexcept { return max_ - min_ + 1; }
    constexpr bool contains(int digit) const noexcept { return min_ <= digit && digit <= max_; }

    /// A - d
    constexpr Alphabet shifted(int d) const { return Alphabet(min_ - d, max_ - d); }
    constexpr Alphabet negated() const { return Alphabet(-max_, -min_); }

    friend constexpr Alphabet operator+(const Alphabet& a, const Alphabet& b) {
        return Alphabet(a.min_ + b.min_, a.max_ + b.max_);
    }

    friend constexpr bool operator==(const Alphabet&, const Alphabet&) = default;

    std::string to_string() const { return "{" + std::to_string(min_) + ".." + std::to_string(max_) + "}"; }

private:
    int min_ = 0;
    int max_ = 0;
};

/// Finite digit string: digits are most significant first, the first one
/// sitting at exponent msd_exponent. Positions outside are 0.
///
/// Always canonical: no leading or trailing zeros, and the empty string is 0.
class DigitString {
public:
    DigitString() = default;

    DigitString(std::vector<int> digits_msd_first, int msd_exponent)
        : digits_(std::move(digits_msd_first)), msd_(msd_exponent) {
        canonicalize();
    }

    /// Digits given least significant first starting at exponent lsd_exponent.
    static DigitString from_lsd(std::span<const int> digits_lsd_first, int lsd_exponent) {
        std::vector<int> d(digits_lsd_first.rbegin(), digits_lsd_first.rend());
        return DigitString(std::move(d), lsd_exponent + static_cast<int>(digits_lsd_first.size()) - 1);
    }

    /// Integer string: digits occupy exponents size-1, ..., 0.
    static DigitString integer(std::vector<int> digits_msd_first) {
        int msd = static_cast<int>(digits_msd_first.size()) - 1;
        return DigitString(std::move(digits_msd_first), msd);
    }

    const std::vector<int>& digits() const noexcept { return digits_; }
    bool is_zero() const noexcept { return digits_.empty(); }
    std::size_t size() const noexcept { return digits_.size(); }
    int msd_exponent() const noexcept { return msd_; }
    int lsd_exponent() const noexcept { return msd_ - static_cast<int>(digits_.size()) + 1; }
    int fractional_depth() const noexcept { return is_zero() ? 0 : std::max(0, -lsd_exponent()); }

    int at(int exponent) const noexcept {
        if (is_zero() || exponent > msd_ || exponent < lsd_exponent()) {
            return 0;
        }
        return digits_[static_cast<std::size_t>(msd_ - exponent)];
    }

    int min_digit() const noexcept { return is_zero() ? 0 : *std::min_element(digits_.begin(), digits_.end()); }
    int max_digit() const noexcept { return is_zero() ? 0 : *std::max_element(digits_.begin(), digits_.end()); }

    bool within(const Alphabet& a) const noexcept {
        return std::all_of(digits_.begin(), digits_.end(), [&](int d) { return a.contains(d); });
    }

    /// Digits on [lo, hi], least significant first.
    std::vector<int> window_lsd(int lo, int hi) const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(std::max(0, hi - lo + 1)));
        for (int e = lo; e <= hi; ++e) {
            out.push_back(at(e));
        }
        return out;
    }

    DigitString shifted(int n) const {
        DigitString r = *this;
        if (!r.is_zero()) {
            r.msd_ += n;
        }
        return r;
    }

    friend bool operator==(const DigitString&, const DigitString&) = default;

private:
    void canonicalize() {
        auto first = std::find_if(digits_.begin(), digits_.end(), [](int d) { return d != 0; });
        msd_ -= static_cast<int>(first - digits_.begin());
        digits_.erase(digits_.begin(), first);
        while (!digits_.empty() && digits_.back() == 0) {
            digits_.pop_back();
        }
        if (digits_.empty()) {
            msd_ = 0;
        }
    }

    std::vector<int> digits_;
    int msd_ = 0;
};

/// Positionwise map over the union of supports.
template <typename Op>
DigitString zip_digits(const DigitString& x, const DigitString& y, Op op) {
    if (x.is_zero() && y.is_zero()) {
        return {};
    }
    int hi = x.is_zero() ? y.msd_exponent() : (y.is_zero() ? x.msd_exponent() : std::max(x.msd_exponent(), y.msd_exponent()));
    int lo = x.is_zero() ? y.lsd_exponent() : (y.is_zero() ? x.lsd_exponent() : std::min(x.lsd_exponent(), y.lsd_exponent()));
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (int e = hi; e >= lo; --e) {
        out.push_back(op(x.at(e), y.at(e)));
    }
    return DigitString(std::move(out), hi);
}

/// Positionwise integer sum; digits land in A + B.
inline DigitString digitwise_add(const DigitString& x, const DigitString& y) {
    return zip_digits(x, y, [](int a, int b) { return a + b; });
}

inline DigitString digitwise_sub(const DigitString& x, const DigitString& y) {
    return zip_digits(x, y, [](int a, int b) { return a - b; });
}

template <typename Op>
DigitString map_digits(const DigitString& x, Op op) {
    std::vector<int> d = x.digits();
    for (auto& v : d) {
        v = op(v);
    }
    return DigitString(std::move(d), x.msd_exponent());
}

inline DigitString negate(const DigitString& x) {
    return map_digits(x, [](int d) { return -d; });
}

/// Exact value sum_j s_j beta^j, with scale max(0, -lsd_exponent).
inline QuotientValue eval_digit_string(const DigitString& s, const BetaBase& base) {
    QuotientValue acc(base);
    if (s.is_zero()) {
        return acc;
    }
    // Horner, most significant digit first.
    for (int digit : s.digits()) {
        acc = acc.mul_beta_pow(1);
        if (digit != 0) {
            acc += QuotientValue::from_integer(base, digit);
        }
    }
    return acc.mul_beta_pow(s.lsd_exponent());
}

// ---------------------------------------------------------------------------
// Text format: comma-separated signed digits, '.' as radix point.
// "1,2,2.2" is 1*b^2 + 2*b + 2 + 2*b^-1.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string_view trim_ws(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

inline std::vector<int> parse_digit_list(std::string_view part) {
    std::vector<int> out;
    part = trim_ws(part);
    if (part.empty()) {
        return out;
    }
    std::size_t start = 0;
    while (true) {
        std::size_t comma = part.find(',', start);
        std::string item(trim_ws(part.substr(start, comma == std::string_view::npos ? part.npos : comma - start)));
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad digit '" + item + "'");
        }
        if (pos != item.size()) {
            throw std::invalid_argument("bad digit '" + item + "'");
        }
        out.push_back(v);
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

}  // namespace detail

inline DigitString parse_digit_string(std::string_view text) {
    text = detail::trim_ws(text);
    std::size_t dot = text.find('.');
    if (dot != std::string_view::npos && text.find('.', dot + 1) != std::string_view::npos) {
        throw std::invalid_argument("more than one radix point in '" + std::string(text) + "'");
    }
    std::vector<int> ip = detail::parse_digit_list(text.substr(0, dot));
    std::vector<int> fp;
    if (dot != std::string_view::npos) {
        fp = detail::parse_digit_list(text.substr(dot + 1));
    }
    int msd = static_cast<int>(ip.size()) - 1;
    ip.insert(ip.end(), fp.begin(), fp.end());
    return DigitString(std::move(ip), msd);
}

inline std::string to_string(const DigitString& s) {
    if (s.is_zero()) {
        return "0";
    }
    std::ostringstream os;
    int top = std::max(s.msd_exponent(), 0);
    for (int e = top; e >= 0; --e) {
        os << s.at(e);
        if (e > 0) {
            os << ',';
        }
    }
    if (s.lsd_exponent() < 0) {
        os << '.';
        for (int e = -1; e >= s.lsd_exponent(); --e) {
            os << s.at(e);
            if (e > s.lsd_exponent()) {
                os << ',';
            }
        }
    }
    return os.str();
}

}  // namespace betapar
