#pragma once

// Bitmask enumeration oracles for the solvers over small integer ranges.
// Bit i of a mask stands for the integer i.

#include <bit>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "sumprod/arith_set.hpp"

namespace sumprod::testing {

inline std::uint64_t mask_sumset(std::uint32_t s, std::uint32_t t) {
    std::uint64_t out = 0;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) out |= static_cast<std::uint64_t>(t) << std::countr_zero(rest);
    return out;
}

inline RationalSet mask_to_set(std::uint64_t m) {
    std::vector<Rational> v;
    for (int i = 0; i < 64; ++i)
        if (m >> i & 1) v.emplace_back(i);
    return RationalSet(v);
}

// Minimum |B| over B in the universe {0..n-1} with A inside B+B, for every
// target mask; 0 where no B exists.
class BasisOracle {
public:
    explicit BasisOracle(int n) : n_(n) {
        sums_.resize(std::size_t{1} << n);
        for (std::uint32_t b = 0; b < sums_.size(); ++b) sums_[b] = mask_sumset(b, b);
    }

    int min_size(std::uint64_t target) const {
        int best = 0;
        for (std::uint32_t b = 1; b < sums_.size(); ++b) {
            const int size = std::popcount(b);
            if (best && size >= best) continue;
            if ((sums_[b] & target) == target) best = size;
        }
        return best;
    }

    int universe_size() const noexcept { return n_; }

private:
    int n_;
    std::vector<std::uint64_t> sums_;
};

// Every A inside {0..n-1} of the form B + C with |B|, |C| >= 2.
class DecomposeOracle {
public:
    explicit DecomposeOracle(int n) {
        const std::uint32_t full = (1U << n) - 1;
        for (std::uint32_t b = 1; b <= full; b += 2) {  // 0 in B
            if (std::popcount(b) < 2) continue;
            for (std::uint32_t c = 1; c <= full; ++c) {
                if (std::popcount(c) < 2) continue;
                const auto s = mask_sumset(b, c);
                if (s <= full) reducible_.insert(s);
            }
        }
    }

    bool reducible(std::uint64_t a) const { return reducible_.count(a) > 0; }

private:
    std::unordered_set<std::uint64_t> reducible_;
};

}  // namespace sumprod::testing
