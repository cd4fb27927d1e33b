#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "sumprod/set_ops.hpp"

namespace sumprod {

enum class BinaryOp { plus, minus, times };

/// r(s) = #{(u, v) in S x T : u op v = s}.
template <FieldValue F>
using RepresentationFunction = std::unordered_map<F, std::uint64_t>;

template <FieldValue F>
RepresentationFunction<F> representation_function(const ArithSet<F>& s, const ArithSet<F>& t, BinaryOp op) {
    s.check_same_field(t);
    RepresentationFunction<F> r;
    r.reserve(s.size() * t.size());
    for (const F& u : s) {
        for (const F& v : t) {
            switch (op) {
                case BinaryOp::plus: ++r[u + v]; break;
                case BinaryOp::minus: ++r[u - v]; break;
                case BinaryOp::times: ++r[u * v]; break;
            }
        }
    }
    return r;
}

template <FieldValue F>
std::uint64_t sum_of_squares(const RepresentationFunction<F>& r) {
    std::uint64_t total = 0;
    for (const auto& [key, count] : r) total += count * count;
    return total;
}

/// E_+(S): quadruples with s1 + s2 = s3 + s4.
template <FieldValue F>
std::uint64_t additive_energy(const ArithSet<F>& s) {
    return sum_of_squares(representation_function(s, s, BinaryOp::plus));
}

/// E_x(S): quadruples with s1 s2 = s3 s4 (zero products included).
template <FieldValue F>
std::uint64_t multiplicative_energy(const ArithSet<F>& s) {
    return sum_of_squares(representation_function(s, s, BinaryOp::times));
}

enum class SigmaMode { plus, minus };

/// Ordered pairs (b1, b2) in B^2 with b1 + b2 (or b1 - b2) in A.
template <FieldValue F>
std::uint64_t sigma(const ArithSet<F>& a, const ArithSet<F>& b, SigmaMode mode) {
    a.check_same_field(b);
    std::uint64_t count = 0;
    for (const F& b1 : b)
        for (const F& b2 : b)
            if (a.contains(mode == SigmaMode::plus ? b1 + b2 : b1 - b2)) ++count;
    return count;
}

/// |A ∩ (A + alpha)| for alpha != 0.
template <FieldValue F>
std::uint64_t shift_intersection(const ArithSet<F>& a, const F& alpha) {
    if (alpha.is_zero()) throw PreconditionError("shift intersection needs a nonzero shift");
    std::uint64_t count = 0;
    for (const F& x : a)
        if (a.contains(x + alpha)) ++count;
    return count;
}

using HighPrecision = boost::multiprecision::cpp_bin_float_quad;

struct ShiftBoundCheck {
    std::uint64_t overlap = 0;        // |A ∩ (A + alpha)|
    std::uint64_t product_size = 0;   // |AA|
    std::uint64_t set_size = 0;       // |A|
    HighPrecision bound = 0;          // M^{4/3} |A|^{2/3}
    std::uint64_t bound_ceil = 0;
    bool holds_float = false;         // overlap <= bound - 1e-9
    bool near_tie = false;
    bool holds = false;               // exact: overlap^3 |A|^2 <= |AA|^4
};

/// Checks |A ∩ (A + alpha)| <= M^{4/3} |A|^{2/3} with M = |AA|/|A|.
///
/// The verdict is exact: cubing both sides gives overlap^3 |A|^2 <= |AA|^4
/// in integers. The quad-precision value is kept for reporting, and the
/// float comparison with a 1e-9 margin is recorded alongside.
template <FieldValue F>
ShiftBoundCheck shift_bound_check(const ArithSet<F>& a, const F& alpha, const Limits& limits = {}) {
    ShiftBoundCheck out;
    out.overlap = shift_intersection(a, alpha);
    out.set_size = a.size();
    out.product_size = product_set(a, a, limits).size();
    const HighPrecision m = HighPrecision(out.product_size) / HighPrecision(out.set_size);
    out.bound = pow(m, HighPrecision(4) / 3) * pow(HighPrecision(out.set_size), HighPrecision(2) / 3);
    out.bound_ceil = static_cast<std::uint64_t>(ceil(out.bound));
    const HighPrecision margin("1e-9");
    out.holds_float = HighPrecision(out.overlap) <= out.bound - margin;
    out.near_tie = abs(HighPrecision(out.overlap) - out.bound) <= margin;
    const mpz_class lhs = mpz_class(static_cast<unsigned long>(out.overlap)) * out.overlap * out.overlap *
                          out.set_size * out.set_size;
    mpz_class rhs = static_cast<unsigned long>(out.product_size);
    rhs = rhs * rhs * rhs * rhs;
    out.holds = lhs <= rhs;
    return out;
}

}  // namespace sumprod
