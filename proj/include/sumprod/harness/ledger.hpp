#pragma once

#include <string>
#include <vector>

#include "sumprod/error.hpp"
#include "sumprod/rational.hpp"

namespace sumprod::harness {

struct LedgerCheck {
    std::string what;
    bool holds = false;
};

/// Exponent bookkeeping from the ratio-energy saving c to the basis
/// exponent 1/2 + c/17.
struct ExponentLedger {
    Rational c;
    Rational basis_exponent;       // 1/2 + c/17
    Rational ceiling{1, 26};       // 5/2 - 32/13
    Rational headline{1, 442};     // ceiling / 17
    // L and K exponents: popular-ratio step (8, 14), assembled chain (10, 17).
    int ratio_l = 8, ratio_k = 14;
    int chain_l = 10, chain_k = 17;
    bool at_lower_endpoint = false;  // c = 0
    bool at_upper_endpoint = false;  // c = 1/26, the o(1) limit
    std::vector<LedgerCheck> checks;

    bool all_hold() const {
        for (const auto& ch : checks)
            if (!ch.holds) return false;
        return true;
    }
};

/// Accepts 0 <= c <= 1/26; the endpoints are limits of admissible values
/// and are flagged.
inline ExponentLedger exponent_ledger(const Rational& c) {
    const Rational ceiling(1, 26);
    if (c < Rational(0) || c > ceiling) throw PreconditionError("exponent ledger: c must lie in [0, 1/26]");
    ExponentLedger l;
    l.c = c;
    l.basis_exponent = Rational(1, 2) + c / Rational(17);
    l.at_lower_endpoint = c.is_zero();
    l.at_upper_endpoint = c == ceiling;
    l.checks.push_back({"5/2 - 32/13 = 1/26", Rational(5, 2) - Rational(32, 13) == ceiling});
    l.checks.push_back({"(1/26)/17 = 1/442", ceiling / Rational(17) == Rational(1, 442)});
    l.checks.push_back({"L exponent 2 + 8 = 10", 2 + l.ratio_l == l.chain_l});
    l.checks.push_back({"K exponent 3 + 14 = 17", 3 + l.ratio_k == l.chain_k});
    l.checks.push_back({"basis exponent <= 1/2 + 1/442", l.basis_exponent <= Rational(1, 2) + l.headline});
    if (l.at_upper_endpoint)
        l.checks.push_back({"c = 1/26 gives 1/2 + 1/442", l.basis_exponent == Rational(1, 2) + Rational(1, 442)});
    return l;
}

}  // namespace sumprod::harness
