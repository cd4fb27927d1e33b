#pragma once

#include <algorithm>
#include <iterator>
#include <vector>

#include "sumprod/arith_set.hpp"
#include "sumprod/limits.hpp"

namespace sumprod {

namespace detail {

template <FieldValue F, class Op>
ArithSet<F> combine(const ArithSet<F>& s, const ArithSet<F>& t, Op op, const Limits& limits, const char* what) {
    s.check_same_field(t);
    check_ceiling(s.size() * t.size(), limits.max_elements, what);
    std::vector<F> out;
    out.reserve(s.size() * t.size());
    for (const F& x : s)
        for (const F& y : t) out.push_back(op(x, y));
    return ArithSet<F>(std::move(out), s.context());
}

}  // namespace detail

/// {s + t : s in S, t in T}.
template <FieldValue F>
ArithSet<F> sumset(const ArithSet<F>& s, const ArithSet<F>& t, const Limits& limits = {}) {
    return detail::combine(s, t, [](const F& x, const F& y) { return x + y; }, limits, "sumset");
}

template <FieldValue F>
ArithSet<F> product_set(const ArithSet<F>& s, const ArithSet<F>& t, const Limits& limits = {}) {
    return detail::combine(s, t, [](const F& x, const F& y) { return x * y; }, limits, "product set");
}

template <FieldValue F>
ArithSet<F> difference_set(const ArithSet<F>& s, const ArithSet<F>& t, const Limits& limits = {}) {
    return detail::combine(s, t, [](const F& x, const F& y) { return x - y; }, limits, "difference set");
}

/// {s / t}; T must not contain zero.
template <FieldValue F>
ArithSet<F> ratio_set(const ArithSet<F>& s, const ArithSet<F>& t, const Limits& limits = {}) {
    if (t.contains_zero()) throw DivisionByZero("ratio set with 0 in the divisor set");
    return detail::combine(s, t, [](const F& x, const F& y) { return x / y; }, limits, "ratio set");
}

/// AA/A. Its size can reach |A|^3, so the pre-deduplication count
/// |AA|*|A| is checked against the element ceiling first.
template <FieldValue F>
ArithSet<F> aa_over_a(const ArithSet<F>& a, const Limits& limits = {}) {
    if (a.contains_zero()) throw PreconditionError("AA/A requires 0 not in A");
    return ratio_set(product_set(a, a, limits), a, limits);
}

template <FieldValue F>
ArithSet<F> dilate(const ArithSet<F>& s, const F& lambda) {
    std::vector<F> out;
    out.reserve(s.size());
    for (const F& x : s) out.push_back(lambda * x);
    return ArithSet<F>(std::move(out), s.context());
}

template <FieldValue F>
ArithSet<F> translate(const ArithSet<F>& s, const F& shift) {
    std::vector<F> out;
    out.reserve(s.size());
    for (const F& x : s) out.push_back(x + shift);
    return ArithSet<F>(std::move(out), s.context());
}

template <FieldValue F>
ArithSet<F> negate(const ArithSet<F>& s) {
    std::vector<F> out;
    out.reserve(s.size());
    for (const F& x : s) out.push_back(-x);
    return ArithSet<F>(std::move(out), s.context());
}

template <FieldValue F>
ArithSet<F> set_union(const ArithSet<F>& s, const ArithSet<F>& t) {
    s.check_same_field(t);
    std::vector<F> out(s.begin(), s.end());
    out.insert(out.end(), t.begin(), t.end());
    return ArithSet<F>(std::move(out), s.context());
}

template <FieldValue F>
ArithSet<F> set_intersection(const ArithSet<F>& s, const ArithSet<F>& t) {
    s.check_same_field(t);
    std::vector<F> out;
    std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(out));
    return ArithSet<F>::from_sorted_unique(std::move(out), s.context());
}

template <FieldValue F>
ArithSet<F> remove_zero(const ArithSet<F>& s) {
    std::vector<F> out;
    for (const F& x : s)
        if (!x.is_zero()) out.push_back(x);
    return ArithSet<F>::from_sorted_unique(std::move(out), s.context());
}

/// Drops 0 and divides by a fixed nonzero element so that 1 is a member.
/// The divisor is the smallest positive element for rationals (falling
/// back to the smallest in absolute value order when all are negative) and
/// the least nonzero residue for F_p.
template <FieldValue F>
ArithSet<F> normalize(const ArithSet<F>& a) {
    ArithSet<F> nz = remove_zero(a);
    if (nz.empty()) throw PreconditionError("cannot normalize the empty set or {0}");
    const F* divisor = &nz.front();
    if constexpr (is_rational_v<F>) {
        for (const F& x : nz) {
            if (x.sign() > 0) {
                divisor = &x;
                break;
            }
        }
        if (divisor->sign() < 0) divisor = &nz.back();  // all negative: the one closest to zero
    }
    return dilate(nz, F::one(a.context()) / *divisor);
}

/// |AA| / |A| as an exact rational.
template <FieldValue F>
Rational multiplicative_doubling(const ArithSet<F>& a, const Limits& limits = {}) {
    if (a.empty()) throw PreconditionError("multiplicative doubling of the empty set");
    const auto aa = product_set(a, a, limits);
    return Rational(mpz_class(static_cast<unsigned long>(aa.size())), mpz_class(static_cast<unsigned long>(a.size())));
}

}  // namespace sumprod
