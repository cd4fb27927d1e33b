#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace sumprod::harness {

enum class Verdict { pass, fail, ratio, info, skipped };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::ratio: return "ratio";
        case Verdict::info: return "info";
        case Verdict::skipped: return "skipped";
    }
    return "?";
}

/// One claim evaluated on one instance. lhs/rhs are exact integers or
/// rationals when the claim is exact, decimal strings otherwise.
struct VerificationRecord {
    std::string claim_id;
    std::string anchor;
    std::string instance;
    std::uint64_t a_size = 0;
    std::uint64_t b_size = 0;
    std::string lhs;
    std::string rhs;
    double ratio = 0;
    Verdict verdict = Verdict::info;
    std::uint64_t millis = 0;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

inline const char* csv_header() { return "claim_id,anchor,|A|,|B|,lhs,rhs,ratio,verdict,millis"; }

inline void write_csv(std::ostream& os, const std::vector<VerificationRecord>& rows) {
    os << csv_header() << '\n';
    for (const auto& r : rows) {
        os << csv_escape(r.claim_id) << ',' << csv_escape(r.anchor) << ',' << r.a_size << ',' << r.b_size << ','
           << csv_escape(r.lhs) << ',' << csv_escape(r.rhs) << ',' << format_double(r.ratio) << ','
           << to_string(r.verdict) << ',' << r.millis << '\n';
    }
}

inline nlohmann::ordered_json to_json(const VerificationRecord& r) {
    nlohmann::ordered_json j;
    j["claim_id"] = r.claim_id;
    j["anchor"] = r.anchor;
    j["instance"] = r.instance;
    j["|A|"] = r.a_size;
    j["|B|"] = r.b_size;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["ratio"] = format_double(r.ratio);
    j["verdict"] = to_string(r.verdict);
    j["millis"] = r.millis;
    if (!r.details.empty()) j["details"] = r.details;
    return j;
}

inline std::size_t exact_failures(const std::vector<VerificationRecord>& rows) {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.verdict == Verdict::fail;
    return n;
}

}  // namespace sumprod::harness
