#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

#include "sumprod/error.hpp"

namespace sumprod {

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1U) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the witness set is exact for all 64-bit n.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % small == 0) return n == small;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = detail::pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = detail::mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// The prime field F_p. Construction validates primality once; every
/// Residue carries the modulus it was made with.
class PrimeField {
public:
    // F_2; lets result structs default-construct their set members.
    PrimeField() noexcept = default;
    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (!is_prime(p)) throw PreconditionError("modulus " + std::to_string(p) + " is not prime");
    }
    std::uint64_t modulus() const noexcept { return p_; }
    friend bool operator==(PrimeField a, PrimeField b) noexcept { return a.p_ == b.p_; }

private:
    friend class Residue;
    struct unchecked {};
    PrimeField(std::uint64_t p, unchecked) noexcept : p_(p) {}

    std::uint64_t p_ = 2;
};

/// Residue class modulo a prime, canonical representative in [0, p).
class Residue {
public:
    using Context = PrimeField;

    Residue(long long v, PrimeField field) : p_(field.modulus()) {
        const auto m = static_cast<__int128>(p_);
        __int128 r = static_cast<__int128>(v) % m;
        if (r < 0) r += m;
        v_ = static_cast<std::uint64_t>(r);
    }

    static Residue from_integer(long long v, Context ctx) { return {v, ctx}; }
    static Residue zero(Context ctx) { return {0, ctx}; }
    static Residue one(Context ctx) { return {1, ctx}; }

    Context context() const { return PrimeField(p_, PrimeField::unchecked{}); }
    std::uint64_t value() const noexcept { return v_; }
    std::uint64_t modulus() const noexcept { return p_; }
    bool is_zero() const noexcept { return v_ == 0; }
    std::string str() const { return std::to_string(v_); }

    Residue inverse() const {
        if (v_ == 0) throw DivisionByZero("inverse of zero residue");
        return {detail::pow_mod(v_, p_ - 2, p_), p_, trusted{}};
    }

    Residue operator-() const { return {v_ == 0 ? 0 : p_ - v_, p_, trusted{}}; }
    friend Residue operator+(const Residue& a, const Residue& b) {
        check(a, b);
        std::uint64_t s = a.v_ + b.v_;
        if (s < a.v_ || s >= a.p_) s -= a.p_;
        return {s, a.p_, trusted{}};
    }
    friend Residue operator-(const Residue& a, const Residue& b) { return a + (-b); }
    friend Residue operator*(const Residue& a, const Residue& b) {
        check(a, b);
        return {detail::mul_mod(a.v_, b.v_, a.p_), a.p_, trusted{}};
    }
    friend Residue operator/(const Residue& a, const Residue& b) {
        check(a, b);
        return a * b.inverse();
    }
    Residue& operator+=(const Residue& o) { return *this = *this + o; }
    Residue& operator-=(const Residue& o) { return *this = *this - o; }
    Residue& operator*=(const Residue& o) { return *this = *this * o; }
    Residue& operator/=(const Residue& o) { return *this = *this / o; }

    // Mixed-modulus comparison is an error like mixed-modulus arithmetic.
    friend bool operator==(const Residue& a, const Residue& b) {
        check(a, b);
        return a.v_ == b.v_;
    }
    friend std::strong_ordering operator<=>(const Residue& a, const Residue& b) {
        check(a, b);
        return a.v_ <=> b.v_;
    }

    friend std::ostream& operator<<(std::ostream& os, const Residue& r) { return os << r.v_; }

    std::size_t hash() const noexcept { return std::hash<std::uint64_t>{}(v_ * 0x9e3779b97f4a7c15ULL ^ p_); }

private:
    struct trusted {};
    Residue(std::uint64_t v, std::uint64_t p, trusted) : v_(v), p_(p) {}

    static void check(const Residue& a, const Residue& b) {
        if (a.p_ != b.p_)
            throw ModeMismatch("residues modulo " + std::to_string(a.p_) + " and " + std::to_string(b.p_));
    }

    std::uint64_t v_ = 0;
    std::uint64_t p_ = 2;
};

}  // namespace sumprod

template <>
struct std::hash<sumprod::Residue> {
    std::size_t operator()(const sumprod::Residue& r) const noexcept { return r.hash(); }
};
