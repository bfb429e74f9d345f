#pragma once

// Exact arithmetic in Z[X]/(f) for a real algebraic integer base beta > 1,
// certified real enclosures of beta, and the value oracle every conversion
// in this library is checked against.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace betapar {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

// floor(x / 2^bits) for signed x.
inline Integer floor_shift(const Integer& x, unsigned bits) {
    if (x >= 0) {
        return x >> bits;
    }
    Integer neg = -x;
    Integer q = neg >> bits;
    if ((q << bits) != neg) {
        ++q;
    }
    return -q;
}

inline Integer ceil_shift(const Integer& x, unsigned bits) {
    return -floor_shift(-x, bits);
}

inline Integer floor_rational(const Rational& r) {
    Integer num = boost::multiprecision::numerator(r);
    Integer den = boost::multiprecision::denominator(r);
    Integer q = num / den;  // truncates toward zero
    if (num < 0 && q * den != num) {
        --q;
    }
    return q;
}

inline Integer ceil_rational(const Rational& r) {
    return -floor_rational(-r);
}

// Rational polynomial, lowest degree first. Used only for Sturm counting.
using RationalPoly = std::vector<Rational>;

inline void trim(RationalPoly& p) {
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

inline Rational eval_poly(const RationalPoly& p, const Rational& x) {
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

inline RationalPoly poly_rem(RationalPoly num, const RationalPoly& den) {
    trim(num);
    const std::size_t dd = den.size() - 1;
    while (!num.empty() && num.size() - 1 >= dd) {
        const std::size_t shift = num.size() - 1 - dd;
        Rational factor = num.back() / den.back();
        for (std::size_t i = 0; i <= dd; ++i) {
            num[i + shift] -= factor * den[i];
        }
        num.pop_back();
        trim(num);
    }
    return num;
}

inline std::vector<RationalPoly> sturm_chain(const RationalPoly& f) {
    std::vector<RationalPoly> chain{f};
    RationalPoly df;
    for (std::size_t i = 1; i < f.size(); ++i) {
        df.push_back(f[i] * static_cast<int>(i));
    }
    trim(df);
    chain.push_back(df);
    while (chain.back().size() > 1) {
        RationalPoly r = poly_rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) {
            break;
        }
        for (auto& c : r) {
            c = -c;
        }
        chain.push_back(std::move(r));
    }
    return chain;
}

inline int sign_changes(const std::vector<RationalPoly>& chain, const Rational& x) {
    int changes = 0;
    int last = 0;
    for (const auto& p : chain) {
        Rational v = eval_poly(p, x);
        int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s == 0) {
            continue;
        }
        if (last != 0 && s != last) {
            ++changes;
        }
        last = s;
    }
    return changes;
}

}  // namespace detail

/// Monic integer polynomial X^d + c_{d-1} X^{d-1} + ... + c_0 with d >= 2.
///
/// Irreducibility is the caller's claim. The constructor rejects polynomials
/// with an integer root, which settles it for degree 2 and 3.
class MinimalPolynomial {
public:
    MinimalPolynomial() = default;

    explicit MinimalPolynomial(std::vector<Integer> highest_first) : high_first_(std::move(highest_first)) {
        if (high_first_.size() < 3) {
            throw std::invalid_argument("minimal polynomial must have degree >= 2");
        }
        if (high_first_.front() != 1) {
            throw std::invalid_argument("minimal polynomial must be monic");
        }
        if (high_first_.back() == 0) {
            throw std::invalid_argument("polynomial is divisible by X");
        }
        if (auto root = integer_root()) {
            throw std::invalid_argument("polynomial has the integer root " + root->str() + " and is reducible");
        }
    }

    int degree() const noexcept { return static_cast<int>(high_first_.size()) - 1; }

    const std::vector<Integer>& coefficients() const noexcept { return high_first_; }

    /// Coefficient of X^i.
    const Integer& coeff(int i) const { return high_first_[static_cast<std::size_t>(degree() - i)]; }

    template <typename T>
    T eval(const T& x) const {
        T acc = 0;
        for (const auto& c : high_first_) {
            acc = acc * x + T(c);
        }
        return acc;
    }

    detail::RationalPoly as_rational_poly() const {
        detail::RationalPoly p;
        for (int i = 0; i <= degree(); ++i) {
            p.emplace_back(coeff(i));
        }
        return p;
    }

    /// 1 + max |c_i|: every complex root has modulus strictly below this.
    Integer cauchy_bound() const {
        Integer m = 0;
        for (std::size_t i = 1; i < high_first_.size(); ++i) {
            m = std::max(m, Integer(abs(high_first_[i])));
        }
        return m + 1;
    }

    std::string to_string() const {
        std::ostringstream os;
        const int d = degree();
        for (int i = d; i >= 0; --i) {
            const Integer& c = coeff(i);
            if (c == 0) {
                continue;
            }
            if (i != d) {
                os << (c < 0 ? "-" : "+");
            } else if (c < 0) {
                os << "-";
            }
            Integer mag = abs(c);
            if (mag != 1 || i == 0) {
                os << mag;
            }
            if (i >= 1) {
                os << "X";
            }
            if (i >= 2) {
                os << "^" << i;
            }
        }
        return os.str();
    }

    friend bool operator==(const MinimalPolynomial&, const MinimalPolynomial&) = default;

private:
    std::optional<Integer> integer_root() const {
        const Integer c0 = abs(high_first_.back());
        const Integer limit = std::min(c0, cauchy_bound());
        // Rational roots of a monic integer polynomial are integer divisors of c_0.
        constexpr int kMaxTrials = 1'000'000;
        int trials = 0;
        for (Integer r = 1; r <= limit && trials < kMaxTrials; ++r, ++trials) {
            if (c0 % r != 0) {
                continue;
            }
            if (eval(r) == 0) {
                return r;
            }
            if (eval(Integer(-r)) == 0) {
                return Integer(-r);
            }
        }
        return std::nullopt;
    }

    std::vector<Integer> high_first_;
};

/// Closed rational interval [lo, hi].
struct RationalInterval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    double midpoint() const { return static_cast<double>((lo + hi) / 2); }
};

namespace detail {

// Enclosure of beta in fixed point: beta in [lo, hi] * 2^-bits.
struct FixedBeta {
    unsigned bits = 0;
    Integer lo;
    Integer hi;
};

struct BaseData {
    MinimalPolynomial poly;
    RationalInterval isolating;
    std::string label;
    FixedBeta fixed;
};

}  // namespace detail

/// Real algebraic integer beta > 1, determined by its minimal polynomial and
/// an interval (lo, hi), lo > 1, that contains exactly one root of it.
///
/// A BetaBase is a cheap shared handle to immutable data.
class BetaBase {
public:
    static constexpr unsigned kDefaultBits = 128;

    /// Uses the largest real root of f, which must exceed 1.
    explicit BetaBase(MinimalPolynomial f, std::string label = {}) {
        auto interval = isolate_largest_root(f);
        init(std::move(f), std::move(interval), std::move(label));
    }

    BetaBase(MinimalPolynomial f, RationalInterval isolating, std::string label = {}) {
        validate_interval(f, isolating);
        init(std::move(f), std::move(isolating), std::move(label));
    }

    const MinimalPolynomial& poly() const noexcept { return data_->poly; }
    int degree() const noexcept { return data_->poly.degree(); }
    const RationalInterval& isolating_interval() const noexcept { return data_->isolating; }
    const std::string& label() const noexcept { return data_->label; }
    const detail::FixedBeta& default_fixed() const noexcept { return data_->fixed; }

    std::string name() const { return data_->label.empty() ? data_->poly.to_string() : data_->label; }

    /// Same ring and same real embedding.
    bool same_as(const BetaBase& other) const {
        if (data_ == other.data_) {
            return true;
        }
        const auto& a = isolating_interval();
        const auto& b = other.isolating_interval();
        return poly() == other.poly() && a.lo <= b.hi && b.lo <= a.hi;
    }

    /// Bisection interval of width <= target containing beta.
    RationalInterval refine(const Rational& target_width) const {
        if (target_width <= 0) {
            throw std::invalid_argument("refine_beta: target width must be positive");
        }
        RationalInterval iv = isolating_interval();
        const auto& f = poly();
        int sign_lo = f.eval(iv.lo) > 0 ? 1 : -1;
        while (iv.width() > target_width) {
            Rational mid = (iv.lo + iv.hi) / 2;
            Rational v = f.eval(mid);
            int s = v > 0 ? 1 : -1;  // no rational roots, so v != 0
            if (s == sign_lo) {
                iv.lo = mid;
            } else {
                iv.hi = mid;
            }
        }
        return iv;
    }

    detail::FixedBeta fixed_point(unsigned bits) const {
        if (bits == data_->fixed.bits) {
            return data_->fixed;
        }
        return make_fixed(*this, bits);
    }

private:
    void init(MinimalPolynomial f, RationalInterval iv, std::string label) {
        auto data = std::make_shared<detail::BaseData>();
        data->poly = std::move(f);
        data->isolating = std::move(iv);
        data->label = std::move(label);
        data_ = data;
        data->fixed = make_fixed(*this, kDefaultBits);
    }

    static detail::FixedBeta make_fixed(const BetaBase& base, unsigned bits) {
        Rational scale = Rational(Integer(1) << bits);
        RationalInterval iv = base.refine(Rational(1) / scale);
        detail::FixedBeta fx;
        fx.bits = bits;
        fx.lo = detail::floor_rational(iv.lo * scale);
        fx.hi = detail::ceil_rational(iv.hi * scale);
        return fx;
    }

    static RationalInterval isolate_largest_root(const MinimalPolynomial& f) {
        auto chain = detail::sturm_chain(f.as_rational_poly());
        Rational lo = 1;
        Rational hi = Rational(f.cauchy_bound());
        auto count = [&](const Rational& a, const Rational& b) {
            return detail::sign_changes(chain, a) - detail::sign_changes(chain, b);
        };
        if (count(lo, hi) == 0) {
            throw std::invalid_argument("polynomial " + f.to_string() + " has no real root greater than 1");
        }
        while (count(lo, hi) > 1 || lo == 1) {
            Rational mid = (lo + hi) / 2;
            if (count(mid, hi) >= 1) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return {lo, hi};
    }

    static void validate_interval(const MinimalPolynomial& f, const RationalInterval& iv) {
        if (!(iv.lo > 1) || !(iv.lo < iv.hi)) {
            throw std::invalid_argument("isolating interval must satisfy 1 < lo < hi");
        }
        Rational flo = f.eval(iv.lo);
        Rational fhi = f.eval(iv.hi);
        if ((flo > 0) == (fhi > 0) || flo == 0 || fhi == 0) {
            throw std::invalid_argument("f does not change sign on the isolating interval");
        }
        auto chain = detail::sturm_chain(f.as_rational_poly());
        if (detail::sign_changes(chain, iv.lo) - detail::sign_changes(chain, iv.hi) != 1) {
            throw std::invalid_argument("isolating interval brackets more than one root");
        }
    }

    std::shared_ptr<const detail::BaseData> data_;
};

/// Free-function spelling of BetaBase::refine.
inline RationalInterval refine_beta(const BetaBase& base, const Rational& target_width) {
    return base.refine(target_width);
}

/// beta^-scale * sum coeffs[i] beta^i, with coeffs reduced modulo f.
class QuotientValue {
public:
    explicit QuotientValue(BetaBase base)
        : base_(std::move(base)), coeffs_(static_cast<std::size_t>(base_.degree())), scale_(0) {}

    QuotientValue(BetaBase base, std::vector<Integer> coeffs, unsigned scale)
        : base_(std::move(base)), coeffs_(std::move(coeffs)), scale_(scale) {
        reduce();
    }

    static QuotientValue from_integer(const BetaBase& base, const Integer& n) {
        QuotientValue v(base);
        v.coeffs_[0] = n;
        return v;
    }

    static QuotientValue beta_power(const BetaBase& base, int n) {
        return from_integer(base, 1).mul_beta_pow(n);
    }

    const BetaBase& base() const noexcept { return base_; }
    /// Lowest degree first, length d.
    const std::vector<Integer>& coeffs() const noexcept { return coeffs_; }
    unsigned scale() const noexcept { return scale_; }

    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c == 0; });
    }

    QuotientValue mul_beta_pow(int n) const {
        QuotientValue r = *this;
        if (n < 0) {
            r.scale_ += static_cast<unsigned>(-n);
            return r;
        }
        unsigned up = static_cast<unsigned>(n);
        unsigned absorbed = std::min(up, r.scale_);
        r.scale_ -= absorbed;
        for (unsigned i = absorbed; i < up; ++i) {
            r.times_beta_in_place();
        }
        return r;
    }

    /// value * beta at the same scale (the coefficient vector is multiplied).
    QuotientValue times_beta() const {
        QuotientValue r = *this;
        r.times_beta_in_place();
        return r;
    }

    /// Same value, expressed with a scale of at least `scale`.
    QuotientValue at_scale(unsigned scale) const {
        QuotientValue r = *this;
        while (r.scale_ < scale) {
            r.times_beta_in_place();
            ++r.scale_;
        }
        return r;
    }

    QuotientValue& operator+=(const QuotientValue& other) {
        check_base(other);
        const unsigned common = std::max(scale_, other.scale_);
        QuotientValue rhs = other.at_scale(common);
        *this = at_scale(common);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            coeffs_[i] += rhs.coeffs_[i];
        }
        return *this;
    }

    QuotientValue& operator-=(const QuotientValue& other) { return *this += -other; }

    QuotientValue& operator*=(const Integer& k) {
        for (auto& c : coeffs_) {
            c *= k;
        }
        return *this;
    }

    friend QuotientValue operator+(QuotientValue a, const QuotientValue& b) { return a += b; }
    friend QuotientValue operator-(QuotientValue a, const QuotientValue& b) { return a -= b; }
    friend QuotientValue operator*(QuotientValue a, const Integer& k) { return a *= k; }

    QuotientValue operator-() const {
        QuotientValue r = *this;
        for (auto& c : r.coeffs_) {
            c = -c;
        }
        return r;
    }

    /// Multiplication in Z[beta, 1/beta].
    friend QuotientValue operator*(const QuotientValue& a, const QuotientValue& b) {
        a.check_base(b);
        QuotientValue acc(a.base_);
        QuotientValue term = a;
        term.scale_ = 0;
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
            if (b.coeffs_[i] != 0) {
                acc += term * b.coeffs_[i];
            }
            term.times_beta_in_place();
        }
        acc.scale_ = a.scale_ + b.scale_;
        return acc;
    }

    /// Exact equality: compares a * beta^{e_b} with b * beta^{e_a} coefficientwise.
    friend bool values_equal(const QuotientValue& a, const QuotientValue& b) {
        a.check_base(b);
        const unsigned common = std::max(a.scale_, b.scale_);
        return a.at_scale(common).coeffs_ == b.at_scale(common).coeffs_;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "(";
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            os << (i ? "," : "") << coeffs_[i];
        }
        os << ")";
        if (scale_ != 0) {
            os << "*beta^-" << scale_;
        }
        return os.str();
    }

private:
    void check_base(const QuotientValue& other) const {
        if (!base_.same_as(other.base_)) {
            throw std::invalid_argument("quotient values over different bases");
        }
    }

    // coeffs <- coeffs * X mod f
    void times_beta_in_place() {
        const auto& f = base_.poly();
        const std::size_t d = coeffs_.size();
        Integer top = coeffs_[d - 1];
        for (std::size_t i = d - 1; i > 0; --i) {
            coeffs_[i] = coeffs_[i - 1];
        }
        coeffs_[0] = 0;
        if (top != 0) {
            for (std::size_t i = 0; i < d; ++i) {
                coeffs_[i] -= top * f.coeff(static_cast<int>(i));
            }
        }
    }

    // Folds any coefficient vector into length d.
    void reduce() {
        const std::size_t d = static_cast<std::size_t>(base_.degree());
        if (coeffs_.size() <= d) {
            coeffs_.resize(d);
            return;
        }
        const auto& f = base_.poly();
        for (std::size_t top = coeffs_.size() - 1; top >= d; --top) {
            Integer c = coeffs_[top];
            coeffs_[top] = 0;
            if (c != 0) {
                for (std::size_t i = 0; i < d; ++i) {
                    coeffs_[top - d + i] -= c * f.coeff(static_cast<int>(i));
                }
            }
        }
        coeffs_.resize(d);
    }

    BetaBase base_;
    std::vector<Integer> coeffs_;
    unsigned scale_;
};

inline QuotientValue qv_add(const QuotientValue& a, const QuotientValue& b) { return a + b; }

inline QuotientValue qv_mul_beta_pow(const QuotientValue& a, int n) { return a.mul_beta_pow(n); }

/// Fixed-point enclosure of an element's real value: value in [lo, hi] * 2^-bits.
struct FixedInterval {
    unsigned bits = 0;
    Integer lo;
    Integer hi;

    RationalInterval as_rational() const {
        Rational scale = Rational(Integer(1) << bits);
        return {Rational(lo) / scale, Rational(hi) / scale};
    }
};

/// Interval evaluator of real embeddings at one working precision.
///
/// Holds per-scale caches, so it is meant to be a local object: construct one
/// per computation and do not share it between threads.
class RealEvaluator {
public:
    explicit RealEvaluator(const BetaBase& base, unsigned bits = BetaBase::kDefaultBits)
        : base_(base), fixed_(base.fixed_point(bits)) {
        const unsigned b = fixed_.bits;
        const Integer one = Integer(1) << b;
        pow_lo_.push_back(one);
        pow_hi_.push_back(one);
        for (int i = 1; i < base.degree(); ++i) {
            pow_lo_.push_back(detail::floor_shift(pow_lo_.back() * fixed_.lo, b));
            pow_hi_.push_back(detail::ceil_shift(pow_hi_.back() * fixed_.hi, b));
        }
        const Integer two_b = Integer(1) << (2 * b);
        inv_lo_ = two_b / fixed_.hi;
        inv_hi_ = (two_b + fixed_.lo - 1) / fixed_.lo;
    }

    unsigned bits() const noexcept { return fixed_.bits; }
    const BetaBase& base() const noexcept { return base_; }

    FixedInterval enclose(const QuotientValue& v) {
        const unsigned b = fixed_.bits;
        Integer lo = 0;
        Integer hi = 0;
        const auto& c = v.coeffs();
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] >= 0) {
                lo += c[i] * pow_lo_[i];
                hi += c[i] * pow_hi_[i];
            } else {
                lo += c[i] * pow_hi_[i];
                hi += c[i] * pow_lo_[i];
            }
        }
        if (v.scale() == 0) {
            return {b, lo, hi};
        }
        const auto& [ilo, ihi] = inverse_power(v.scale());
        Integer rlo = lo >= 0 ? lo * ilo : lo * ihi;
        Integer rhi = hi >= 0 ? hi * ihi : hi * ilo;
        return {b, detail::floor_shift(rlo, b), detail::ceil_shift(rhi, b)};
    }

private:
    const std::pair<Integer, Integer>& inverse_power(unsigned e) {
        auto it = inv_pow_.find(e);
        if (it != inv_pow_.end()) {
            return it->second;
        }
        const unsigned b = fixed_.bits;
        Integer lo = Integer(1) << b;
        Integer hi = lo;
        Integer blo = inv_lo_;
        Integer bhi = inv_hi_;
        for (unsigned n = e; n != 0; n >>= 1) {
            if (n & 1U) {
                lo = detail::floor_shift(lo * blo, b);
                hi = detail::ceil_shift(hi * bhi, b);
            }
            if (n > 1) {
                blo = detail::floor_shift(blo * blo, b);
                bhi = detail::ceil_shift(bhi * bhi, b);
            }
        }
        return inv_pow_.emplace(e, std::make_pair(std::move(lo), std::move(hi))).first->second;
    }

    BetaBase base_;
    detail::FixedBeta fixed_;
    std::vector<Integer> pow_lo_;
    std::vector<Integer> pow_hi_;
    Integer inv_lo_;
    Integer inv_hi_;
    std::map<unsigned, std::pair<Integer, Integer>> inv_pow_;
};

/// Evaluator ladder: starts at the default precision and doubles on demand.
class CertifiedReals {
public:
    explicit CertifiedReals(BetaBase base) : base_(std::move(base)) {}

    static constexpr unsigned kMaxBits = 1U << 16;

    /// Exact floor of the real value.
    Integer floor(const QuotientValue& v) {
        bool candidate_checked = false;
        for (unsigned bits = BetaBase::kDefaultBits; bits <= kMaxBits; bits *= 2) {
            FixedInterval iv = at(bits).enclose(v);
            Integer fl = detail::floor_shift(iv.lo, iv.bits);
            Integer fh = detail::floor_shift(iv.hi, iv.bits);
            if (fl == fh) {
                return fl;
            }
            if (fh == fl + 1 && !candidate_checked) {
                candidate_checked = true;
                if (values_equal(v, QuotientValue::from_integer(base_, fh))) {
                    return fh;
                }
            }
        }
        throw std::runtime_error("certified_floor: precision budget exhausted");
    }

    /// Sign of the real value; exact for zero.
    int sign(const QuotientValue& v) {
        if (v.is_zero()) {
            return 0;
        }
        for (unsigned bits = BetaBase::kDefaultBits; bits <= kMaxBits; bits *= 2) {
            FixedInterval iv = at(bits).enclose(v);
            if (iv.lo > 0) {
                return 1;
            }
            if (iv.hi < 0) {
                return -1;
            }
        }
        throw std::runtime_error("certified sign: precision budget exhausted");
    }

    int compare(const QuotientValue& a, const QuotientValue& b) { return sign(a - b); }

    RationalInterval enclose(const QuotientValue& v) { return at(BetaBase::kDefaultBits).enclose(v).as_rational(); }

    double approximate(const QuotientValue& v) { return enclose(v).midpoint(); }

    const BetaBase& base() const noexcept { return base_; }

private:
    RealEvaluator& at(unsigned bits) {
        for (auto& ev : ladder_) {
            if (ev.bits() == bits) {
                return ev;
            }
        }
        ladder_.emplace_back(base_, bits);
        return ladder_.back();
    }

    BetaBase base_;
    std::vector<RealEvaluator> ladder_;
};

/// floor(value(v)) with an exact-integer check.
inline Integer certified_floor(const QuotientValue& v) {
    CertifiedReals reals(v.base());
    return reals.floor(v);
}

inline int certified_sign(const QuotientValue& v) {
    CertifiedReals reals(v.base());
    return reals.sign(v);
}

inline int certified_compare(const QuotientValue& a, const QuotientValue& b) { return certified_sign(a - b); }

/// Coefficients palindromic or anti-palindromic. A real algebraic integer
/// with a conjugate on the unit circle has such a minimal polynomial.
inline bool self_reciprocal(const MinimalPolynomial& f) {
    const auto& c = f.coefficients();
    const std::size_t n = c.size();
    bool palindromic = true;
    bool anti = true;
    for (std::size_t i = 0; i < n; ++i) {
        palindromic = palindromic && c[i] == c[n - 1 - i];
        anti = anti && c[i] == -c[n - 1 - i];
    }
    return palindromic || anti;
}

/// Enclosure of the modulus of one complex root.
struct RootModulus {
    long double lo = 0;
    long double hi = 0;
    bool certified = false;  // false: "undecided" within the iteration budget
    std::complex<long double> approximation;

    bool contains(long double x) const { return lo <= x && x <= hi; }
};

/// Moduli of all complex roots of f, enclosed to width <= eps.
///
/// Roots come from Weierstrass (Durand-Kerner) iteration; each approximation
/// z_i is then validated by the inclusion disc of radius d * |f(z_i)| /
/// prod_{j != i} |z_i - z_j| (inflated by a rounding bound on the
/// evaluation). Pairwise disjoint discs each hold exactly one root.
inline std::vector<RootModulus> root_moduli(const MinimalPolynomial& f, long double eps, int max_iterations = 2000) {
    using C = std::complex<long double>;
    const int d = f.degree();
    std::vector<long double> a;  // lowest degree first
    for (int i = 0; i <= d; ++i) {
        a.push_back(static_cast<long double>(f.coeff(i)));
    }
    auto eval = [&](C z) {
        C acc = 0;
        for (int i = d; i >= 0; --i) {
            acc = acc * z + a[static_cast<std::size_t>(i)];
        }
        return acc;
    };
    auto eval_bound = [&](C z) {
        long double m = std::abs(z);
        long double acc = 0;
        for (int i = d; i >= 0; --i) {
            acc = acc * m + std::fabs(a[static_cast<std::size_t>(i)]);
        }
        return acc;
    };

    std::vector<C> z(static_cast<std::size_t>(d));
    const C seed(0.4L, 0.9L);
    C p = 1;
    for (auto& zi : z) {
        p *= seed;
        zi = p;
    }
    const long double unit = std::numeric_limits<long double>::epsilon();
    std::vector<long double> radius(static_cast<std::size_t>(d));
    bool separated = false;
    for (int iter = 0; iter < max_iterations; ++iter) {
        long double step = 0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            C denom = 1;
            for (std::size_t j = 0; j < z.size(); ++j) {
                if (j != i) {
                    denom *= z[i] - z[j];
                }
            }
            C delta = eval(z[i]) / denom;
            z[i] -= delta;
            step = std::max(step, std::abs(delta));
        }
        if (step > 1e-14L && iter + 1 < max_iterations) {
            continue;
        }
        // A posteriori validation.
        for (std::size_t i = 0; i < z.size(); ++i) {
            long double prod = 1;
            for (std::size_t j = 0; j < z.size(); ++j) {
                if (j != i) {
                    prod *= std::abs(z[i] - z[j]);
                }
            }
            long double num = std::abs(eval(z[i])) + 4 * (d + 1) * unit * eval_bound(z[i]);
            radius[i] = prod > 0 ? d * num / prod * (1 + 64 * unit) + 64 * unit * std::abs(z[i])
                                 : std::numeric_limits<long double>::infinity();
        }
        separated = true;
        for (std::size_t i = 0; i < z.size() && separated; ++i) {
            for (std::size_t j = i + 1; j < z.size(); ++j) {
                if (std::abs(z[i] - z[j]) <= radius[i] + radius[j]) {
                    separated = false;
                    break;
                }
            }
        }
        if (separated) {
            break;
        }
    }

    std::vector<RootModulus> out;
    for (std::size_t i = 0; i < z.size(); ++i) {
        RootModulus rm;
        rm.approximation = z[i];
        long double m = std::abs(z[i]);
        long double r = radius[i];
        rm.lo = std::max<long double>(0, m - r);
        rm.hi = m + r;
        rm.certified = separated && (rm.hi - rm.lo) <= eps;
        out.push_back(rm);
    }
    std::sort(out.begin(), out.end(), [](const RootModulus& x, const RootModulus& y) { return x.hi > y.hi; });
    return out;
}

// ---------------------------------------------------------------------------
// Base presets
// ---------------------------------------------------------------------------

/// X^d - X^{d-1} - ... - 1.
inline BetaBase dbonacci_base(int d) {
    if (d < 2) {
        throw std::invalid_argument("d-bonacci base needs d >= 2");
    }
    std::vector<Integer> c(static_cast<std::size_t>(d) + 1, Integer(-1));
    c[0] = 1;
    std::string label = d == 2 ? "fibonacci" : (d == 3 ? "tribonacci" : "dbonacci:" + std::to_string(d));
    return BetaBase(MinimalPolynomial(std::move(c)), std::move(label));
}

/// X^2 - aX - b.
inline BetaBase quadratic_plus_base(int a, int b) {
    return BetaBase(MinimalPolynomial({1, -a, -b}),
                    "quadratic-plus:" + std::to_string(a) + "," + std::to_string(b));
}

/// X^2 - aX + b.
inline BetaBase quadratic_minus_base(int a, int b) {
    return BetaBase(MinimalPolynomial({1, -a, b}),
                    "quadratic-minus:" + std::to_string(a) + "," + std::to_string(b));
}

namespace detail {

inline std::vector<long long> parse_int_list(std::string_view text) {
    std::vector<long long> out;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ',')) {
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("not an integer: '" + item + "'");
        }
        if (pos != item.size()) {
            throw std::invalid_argument("not an integer: '" + item + "'");
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace detail

/// Parses `fibonacci`, `tribonacci`, `dbonacci:d`, `quadratic-plus:a,b`,
/// `quadratic-minus:a,b`, or a raw coefficient list (highest degree first).
inline BetaBase base_from_spec(std::string_view spec) {
    auto args_of = [&](std::string_view prefix) -> std::optional<std::vector<long long>> {
        if (spec.substr(0, prefix.size()) != prefix) {
            return std::nullopt;
        }
        return detail::parse_int_list(spec.substr(prefix.size()));
    };
    auto expect = [&](const std::vector<long long>& v, std::size_t n) {
        if (v.size() != n) {
            throw std::invalid_argument("wrong number of parameters in base spec '" + std::string(spec) + "'");
        }
    };
    if (spec == "fibonacci") {
        return dbonacci_base(2);
    }
    if (spec == "tribonacci") {
        return dbonacci_base(3);
    }
    if (auto v = args_of("dbonacci:")) {
        expect(*v, 1);
        return dbonacci_base(static_cast<int>((*v)[0]));
    }
    if (auto v = args_of("quadratic-plus:")) {
        expect(*v, 2);
        return quadratic_plus_base(static_cast<int>((*v)[0]), static_cast<int>((*v)[1]));
    }
    if (auto v = args_of("quadratic-minus:")) {
        expect(*v, 2);
        return quadratic_minus_base(static_cast<int>((*v)[0]), static_cast<int>((*v)[1]));
    }
    auto raw = detail::parse_int_list(spec);
    std::vector<Integer> coeffs(raw.begin(), raw.end());
    return BetaBase(MinimalPolynomial(std::move(coeffs)));
}

}  // namespace betapar
