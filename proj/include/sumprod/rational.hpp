#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "sumprod/error.hpp"

namespace sumprod {

static_assert(sizeof(long) == 8, "Rational assumes an LP64 platform");

/// Exact arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
class Rational {
public:
    // Rationals form a single field; the context carries no data.
    struct Context {
        friend constexpr bool operator==(Context, Context) noexcept { return true; }
    };

    Rational() = default;
    Rational(long long v) : q_(static_cast<long>(v)) {}  // NOLINT
    Rational(int v) : q_(static_cast<long>(v)) {}        // NOLINT
    Rational(const mpz_class& v) : q_(v) {}                        // NOLINT
    Rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw DivisionByZero("rational with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    static Rational from_integer(long long v, Context = {}) { return Rational(v); }
    static Rational zero(Context = {}) { return Rational(); }
    static Rational one(Context = {}) { return Rational(1); }

    /// Parses `n` or `p/q`. Surrounding whitespace is not accepted.
    static Rational parse(std::string_view text) {
        if (text.empty()) throw ParseError("empty rational literal");
        const auto slash = text.find('/');
        auto parse_int = [&](std::string_view s) {
            std::string_view digits = s;
            if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
            if (digits.empty()) throw ParseError("malformed rational literal '" + std::string(text) + "'");
            for (char c : digits)
                if (c < '0' || c > '9') throw ParseError("malformed rational literal '" + std::string(text) + "'");
            mpz_class z;
            std::string owned(s.front() == '+' ? s.substr(1) : s);
            z.set_str(owned, 10);
            return z;
        };
        if (slash == std::string_view::npos) return Rational(parse_int(text));
        mpz_class num = parse_int(text.substr(0, slash));
        mpz_class den = parse_int(text.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }

    Context context() const noexcept { return {}; }

    const mpq_class& value() const noexcept { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }
    bool is_zero() const noexcept { return sgn(q_) == 0; }
    bool is_integer() const noexcept { return q_.get_den() == 1; }
    int sign() const noexcept { return sgn(q_); }
    double to_double() const { return q_.get_d(); }

    std::string str() const { return q_.get_str(10); }

    Rational operator-() const { return Rational(mpq_class(-q_), raw{}); }
    friend Rational operator+(const Rational& a, const Rational& b) { return {mpq_class(a.q_ + b.q_), raw{}}; }
    friend Rational operator-(const Rational& a, const Rational& b) { return {mpq_class(a.q_ - b.q_), raw{}}; }
    friend Rational operator*(const Rational& a, const Rational& b) { return {mpq_class(a.q_ * b.q_), raw{}}; }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw DivisionByZero();
        return {mpq_class(a.q_ / b.q_), raw{}};
    }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DivisionByZero();
        q_ /= o.q_;
        return *this;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

    std::size_t hash() const noexcept {
        std::size_t h = hash_mpz(q_.get_num_mpz_t());
        h ^= hash_mpz(q_.get_den_mpz_t()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

private:
    struct raw {};
    // GMP arithmetic results are already canonical.
    Rational(mpq_class q, raw) : q_(std::move(q)) {}

    static std::size_t hash_mpz(mpz_srcptr z) noexcept {
        std::size_t h = static_cast<std::size_t>(mpz_sgn(z)) * 0x100000001b3ULL;
        const std::size_t n = mpz_size(z);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= static_cast<std::size_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i)));
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    mpq_class q_;
};

}  // namespace sumprod

template <>
struct std::hash<sumprod::Rational> {
    std::size_t operator()(const sumprod::Rational& r) const noexcept { return r.hash(); }
};
