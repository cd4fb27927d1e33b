#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sumprod/fit.hpp"
#include "sumprod/harness/claims.hpp"
#include "sumprod/harness/families.hpp"
#include "sumprod/harness/records.hpp"
#include "sumprod/set_io.hpp"

namespace sumprod::harness {

struct ReportSpec {
    std::vector<std::string> families;  // "kind:key=value,..." (one list-valued key allowed)
    std::vector<std::string> suite;     // claim ids; "all" expands
    std::optional<std::uint64_t> seed;  // default seed for random kinds
    double slack = 0.2;                 // fit threshold = exponent + slack
    ClaimOptions options;
};

/// Reads {"families": [...], "suite": [...], "seed": n, "slack": x}.
inline ReportSpec parse_report_spec(const nlohmann::json& j) {
    ReportSpec s;
    if (!j.is_object()) throw ParseError("report spec must be a JSON object");
    if (j.contains("families")) s.families = j.at("families").get<std::vector<std::string>>();
    if (j.contains("suite")) s.suite = j.at("suite").get<std::vector<std::string>>();
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("slack")) s.slack = j.at("slack").get<double>();
    return s;
}

struct FamilyFit {
    std::string family;
    std::string claim;
    LogLogFit fit;
    double exponent = 0;
    bool lower_bound = false;
    double threshold = 0;
    bool within = false;
};

struct ReportResult {
    std::vector<VerificationRecord> rows;
    std::vector<FamilyFit> fits;
    nlohmann::ordered_json summary;
    // (file name, contents) for every generated instance
    std::vector<std::pair<std::string, std::string>> set_files;

    std::size_t exact_failures() const { return harness::exact_failures(rows); }
};

inline std::vector<std::string> expand_suite(const std::vector<std::string>& suite) {
    std::vector<std::string> out;
    for (const auto& id : suite) {
        if (id == "all") {
            for (const auto& a : all_claim_ids()) out.push_back(a);
        } else {
            if (!find_claim(id)) throw ParseError("unknown claim '" + id + "'");
            out.push_back(id);
        }
    }
    return out;
}

inline std::string set_file_name(const std::string& spec) {
    std::string out;
    for (char c : spec) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.') ? c : '_';
    return out + ".set";
}

namespace detail {

inline double numeric(const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        return pos == s.size() ? v : 0.0;
    } catch (const std::exception&) {
        return 0.0;
    }
}

}  // namespace detail

/// Runs the suite over every family instance. Rows are sorted by
/// (claim_id, |A|) with generation order breaking ties.
inline ReportResult run_report(const ReportSpec& spec) {
    const auto suite = expand_suite(spec.suite);
    ReportResult res;
    nlohmann::ordered_json fam_json = nlohmann::ordered_json::array();

    struct Point {
        double x, y;
    };
    std::map<std::pair<std::string, std::string>, std::vector<Point>> series;
    std::vector<std::string> family_order;

    for (const auto& fam_text : spec.families) {
        const auto specs = parse_family(fam_text, spec.seed);
        nlohmann::ordered_json fj;
        fj["family"] = fam_text;
        fj["instances"] = nlohmann::ordered_json::array();
        family_order.push_back(fam_text);
        for (const auto& fs : specs) {
            const std::string instance = fs.str();
            const AnySet set = generate(fs);
            const std::string file = set_file_name(instance);
            res.set_files.emplace_back(file, format_set(set));
            nlohmann::ordered_json ij;
            ij["spec"] = instance;
            ij["set_file"] = "sets/" + file;
            ClaimOptions opts = spec.options;
            opts.seed = fs.seed.value_or(spec.seed.value_or(0));
            std::visit(
                [&](const auto& a) {
                    ij["size"] = a.size();
                    for (auto& row : run_claims(suite, a, opts, instance)) {
                        const ClaimInfo* info = find_claim(row.claim_id);
                        if (info && info->exponent && (row.verdict == Verdict::ratio || row.verdict == Verdict::pass)) {
                            const double y = detail::numeric(row.lhs);
                            if (y > 0) series[{fam_text, row.claim_id}].push_back({static_cast<double>(row.a_size), y});
                        }
                        res.rows.push_back(std::move(row));
                    }
                },
                set);
            fj["instances"].push_back(ij);
        }
        fam_json.push_back(fj);
    }
    std::stable_sort(res.rows.begin(), res.rows.end(), [](const auto& x, const auto& y) {
        return std::tie(x.claim_id, x.a_size) < std::tie(y.claim_id, y.a_size);
    });

    nlohmann::ordered_json fits = nlohmann::ordered_json::array();
    for (const auto& fam : family_order) {
        for (const auto& id : suite) {
            const auto it = series.find({fam, id});
            if (it == series.end() || it->second.size() < 2) continue;
            const ClaimInfo* info = find_claim(id);
            std::vector<double> xs, ys;
            for (const auto& p : it->second) {
                xs.push_back(p.x);
                ys.push_back(p.y);
            }
            FamilyFit f;
            f.family = fam;
            f.claim = id;
            f.fit = fit_loglog(xs, ys);
            f.exponent = *info->exponent;
            f.lower_bound = info->lower_bound;
            f.threshold = f.lower_bound ? f.exponent - spec.slack : f.exponent + spec.slack;
            f.within = f.lower_bound ? f.fit.slope >= f.threshold : f.fit.slope <= f.threshold;
            nlohmann::ordered_json j;
            j["family"] = f.family;
            j["claim_id"] = f.claim;
            j["points"] = f.fit.points;
            j["slope"] = format_double(f.fit.slope);
            j["rms_residual"] = format_double(f.fit.rms_residual);
            j["exponent"] = format_double(f.exponent);
            j["bound_kind"] = f.lower_bound ? "lower" : "upper";
            j["threshold"] = format_double(f.threshold);
            j["within_threshold"] = f.within;
            fits.push_back(j);
            res.fits.push_back(f);
        }
    }

    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (const auto& r : res.rows) records.push_back(to_json(r));
    res.summary["suite"] = suite;
    res.summary["families"] = fam_json;
    res.summary["fits"] = fits;
    res.summary["records"] = records;
    res.summary["exact_failures"] = res.exact_failures();
    return res;
}

/// Writes report.csv, summary.json and sets/*.set under dir.
inline void write_report(const ReportResult& res, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir / "sets");
    {
        std::ofstream csv(dir / "report.csv");
        if (!csv) throw Error("cannot write " + (dir / "report.csv").string());
        write_csv(csv, res.rows);
    }
    {
        std::ofstream js(dir / "summary.json");
        if (!js) throw Error("cannot write " + (dir / "summary.json").string());
        js << res.summary.dump(2) << '\n';
    }
    for (const auto& [name, text] : res.set_files) {
        std::ofstream f(dir / "sets" / name);
        if (!f) throw Error("cannot write set file " + name);
        f << text;
    }
}

}  // namespace sumprod::harness
