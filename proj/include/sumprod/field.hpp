#pragma once

#include <concepts>
#include <cstddef>
#include <functional>
#include <string>
#include <type_traits>

#include "sumprod/rational.hpp"
#include "sumprod/residue.hpp"

namespace sumprod {

// An exact field element. Elements of one field share a Context: empty for
// the rationals, the modulus for F_p.
template <class F>
concept FieldValue =
    std::totally_ordered<F> && std::copyable<F> &&
    requires(const F& a, const F& b, typename F::Context ctx, long long n) {
        { a + b } -> std::same_as<F>;
        { a - b } -> std::same_as<F>;
        { a * b } -> std::same_as<F>;
        { a / b } -> std::same_as<F>;
        { -a } -> std::same_as<F>;
        { F::from_integer(n, ctx) } -> std::same_as<F>;
        { a.context() } -> std::convertible_to<typename F::Context>;
        { a.is_zero() } -> std::convertible_to<bool>;
        { a.str() } -> std::convertible_to<std::string>;
        { std::hash<F>{}(a) } -> std::convertible_to<std::size_t>;
    };

template <class F>
inline constexpr bool is_rational_v = std::is_same_v<F, Rational>;

static_assert(FieldValue<Rational>);
static_assert(FieldValue<Residue>);

}  // namespace sumprod
