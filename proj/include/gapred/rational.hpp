#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "gapred/error.hpp"

namespace gapred {

namespace detail {

using i128 = __int128;

inline std::int64_t narrow_checked(i128 v, const char* op) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min()) {
        throw OverflowError(std::string("rational overflow in ") + op);
    }
    return static_cast<std::int64_t>(v);
}

inline i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace detail

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always kept in lowest terms with a positive denominator, so structural
/// equality is value equality. Intermediate products are formed in 128 bits;
/// a result that does not fit back into 64 bits raises OverflowError rather
/// than wrapping.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(implicit)

    Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

    static Rational from_i128(detail::i128 num, detail::i128 den) {
        Rational r;
        r.assign128(num, den);
        return r;
    }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    bool is_integer() const noexcept { return den_ == 1; }

    std::int64_t floor() const noexcept {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    std::int64_t ceil() const noexcept {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ > 0) ++q;
        return q;
    }

    double to_double() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    long double to_long_double() const noexcept {
        return static_cast<long double>(num_) / static_cast<long double>(den_);
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "P", "P/Q" or "-P/Q". Throws ParameterError on malformed text
    /// or a zero denominator.
    static Rational parse(std::string_view text) {
        auto parse_int = [&](std::string_view s) -> std::int64_t {
            if (s.empty()) throw ParameterError("malformed rational '" + std::string(text) + "'");
            std::size_t pos = 0;
            bool neg = false;
            if (s[0] == '-' || s[0] == '+') {
                neg = s[0] == '-';
                pos = 1;
            }
            if (pos == s.size()) throw ParameterError("malformed rational '" + std::string(text) + "'");
            detail::i128 v = 0;
            for (; pos < s.size(); ++pos) {
                char c = s[pos];
                if (c < '0' || c > '9') {
                    throw ParameterError("malformed rational '" + std::string(text) + "'");
                }
                v = v * 10 + (c - '0');
                if (v > std::numeric_limits<std::int64_t>::max()) {
                    throw OverflowError("rational literal out of range '" + std::string(text) + "'");
                }
            }
            return static_cast<std::int64_t>(neg ? -v : v);
        };
        auto slash = text.find('/');
        if (slash == std::string_view::npos) return Rational(parse_int(text));
        std::int64_t d = parse_int(text.substr(slash + 1));
        if (d == 0) throw ParameterError("zero denominator in '" + std::string(text) + "'");
        return Rational(parse_int(text.substr(0, slash)), d);
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        using detail::i128;
        return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        using detail::i128;
        return from_i128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        using detail::i128;
        return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        using detail::i128;
        if (b.num_ == 0) throw ParameterError("rational division by zero");
        return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational operator-() const { return from_i128(-detail::i128(num_), den_); }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
        using detail::i128;
        i128 lhs = i128(a.num_) * b.den_;
        i128 rhs = i128(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void assign(std::int64_t num, std::int64_t den) { assign128(num, den); }

    void assign128(detail::i128 num, detail::i128 den) {
        if (den == 0) throw ParameterError("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        detail::i128 g = detail::gcd128(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        num_ = detail::narrow_checked(num, "numerator");
        den_ = detail::narrow_checked(den, "denominator");
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace gapred
