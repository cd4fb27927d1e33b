#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sumprod/arith_set.hpp"

namespace sumprod {

// Text set files:
//
//   # field rational          (default when absent)
//   # field fp 101
//   3
//   -7/2
//
// One element per line; anything after '#' is a comment. Rational
// elements are `n` or `p/q` in lowest terms; residues are bare integers in
// [0, p). Writers emit the header and canonical order.

/// Field of a set file: nullopt = rationals, a value = F_p.
using FieldChoice = std::optional<std::uint64_t>;

using AnySet = std::variant<RationalSet, ResidueSet>;

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Recognizes "# field rational" / "# field fp <p>"; other comments are nullopt.
inline std::optional<FieldChoice> parse_field_header(std::string_view line, std::size_t lineno) {
    std::istringstream in{std::string(line)};
    std::string hash, keyword, kind;
    in >> hash >> keyword;
    if (hash != "#" || keyword != "field") return std::nullopt;
    in >> kind;
    if (kind == "rational") return FieldChoice{};
    if (kind == "fp") {
        std::string p;
        in >> p;
        if (p.empty() || p.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": 'fp' header needs a prime modulus");
        return FieldChoice{std::stoull(p)};
    }
    throw ParseError("line " + std::to_string(lineno) + ": unknown field '" + kind + "'");
}

}  // namespace detail

/// Parses set-file text. `fallback` applies when the text has no header.
inline AnySet parse_set(std::string_view text, FieldChoice fallback = {}) {
    FieldChoice field = fallback;
    bool saw_header = false;
    std::vector<std::pair<std::string, std::size_t>> literals;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        std::string_view body = detail::trim(line);
        if (body.empty()) continue;
        if (body.front() == '#') {
            if (auto header = detail::parse_field_header(body, lineno)) {
                if (saw_header || !literals.empty())
                    throw ParseError("line " + std::to_string(lineno) + ": field header must come first");
                field = *header;
                saw_header = true;
            }
            continue;
        }
        if (const auto hash = body.find('#'); hash != std::string_view::npos) body = detail::trim(body.substr(0, hash));
        literals.emplace_back(std::string(body), lineno);
    }

    auto where = [](std::size_t n) { return "line " + std::to_string(n) + ": "; };
    if (!field) {
        std::vector<Rational> out;
        out.reserve(literals.size());
        for (const auto& [lit, n] : literals) {
            Rational r;
            try {
                r = Rational::parse(lit);
            } catch (const ParseError& e) {
                throw ParseError(where(n) + e.what());
            }
            out.push_back(r);
            if (const auto slash = lit.find('/'); slash != std::string::npos) {
                const mpz_class den(lit.substr(slash + 1));
                if (den <= 0 || r.denominator() != den)
                    throw ParseError(where(n) + "'" + lit + "' is not in lowest terms");
            }
        }
        return RationalSet(std::move(out));
    }
    const PrimeField fp(*field);
    std::vector<Residue> out;
    out.reserve(literals.size());
    for (const auto& [lit, n] : literals) {
        if (lit.empty() || lit.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError(where(n) + "residue '" + lit + "' is not a non-negative integer");
        const auto v = std::stoull(lit);
        if (v >= fp.modulus()) throw ParseError(where(n) + "residue " + lit + " is not below p");
        out.emplace_back(static_cast<long long>(v), fp);
    }
    return ResidueSet(std::move(out), fp);
}

inline AnySet read_set_file(const std::string& path, FieldChoice fallback = {}) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open set file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_set(buf.str(), fallback);
}

template <FieldValue F>
std::string format_set(const ArithSet<F>& s) {
    std::string out;
    if constexpr (is_rational_v<F>) {
        out = "# field rational\n";
    } else {
        out = "# field fp " + std::to_string(s.context().modulus()) + "\n";
    }
    for (const F& x : s) out += x.str() + "\n";
    return out;
}

inline std::string format_set(const AnySet& s) {
    return std::visit([](const auto& set) { return format_set(set); }, s);
}

template <FieldValue F>
void write_set_file(const std::string& path, const ArithSet<F>& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write set file '" + path + "'");
    out << format_set(s);
}

}  // namespace sumprod
