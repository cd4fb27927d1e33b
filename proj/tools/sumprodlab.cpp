// sumprodlab: command-line front end for the sumprod library and harness.
//
// Exit codes: 0 all exact checks passed, 1 an exact check failed,
// 2 usage, input or ceiling error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sumprod/harness/report.hpp"
#include "sumprod/sumprod.hpp"

namespace {

using namespace sumprod;
using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct Globals {
    std::string out;
    std::optional<std::uint64_t> seed;
    std::string format = "json";
    std::string field = "rational";
    bool timing = false;
    FieldChoice fallback;
};

struct UsageError : Error {
    using Error::Error;
};

FieldChoice parse_field_option(const std::string& s) {
    if (s == "rational") return {};
    if (s.rfind("fp:", 0) == 0) {
        const std::string p = s.substr(3);
        if (p.empty() || p.find_first_not_of("0123456789") != std::string::npos)
            throw UsageError("--field fp:<p> needs a decimal prime");
        const auto v = std::stoull(p);
        if (!is_prime(v)) throw UsageError("--field: " + p + " is not prime");
        return v;
    }
    throw UsageError("--field must be 'rational' or 'fp:<p>'");
}

void emit_text(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out);
    if (!f) throw Error("cannot write " + g.out);
    f << text;
}

// Scalars as "key,value" rows; nested values are written as compact JSON.
std::string flat_csv(const json& j) {
    std::ostringstream os;
    os << "key,value\n";
    for (const auto& [k, v] : j.items()) {
        const std::string value = v.is_string() ? v.get<std::string>() : v.dump();
        os << harness::csv_escape(k) << ',' << harness::csv_escape(value) << '\n';
    }
    return os.str();
}

void emit_json(const Globals& g, const json& j) { emit_text(g, g.format == "csv" ? flat_csv(j) : j.dump(2) + "\n"); }

AnySet load(const Globals& g, const std::string& path) { return read_set_file(path, g.fallback); }

template <FieldValue F>
ArithSet<F> load_as(const Globals& g, const std::string& path) {
    auto s = load(g, path);
    if (auto* p = std::get_if<ArithSet<F>>(&s)) return std::move(*p);
    throw ModeMismatch(path + ": field differs from the first set");
}

RationalSet load_rational(const Globals& g, const std::string& path) {
    auto s = load(g, path);
    if (auto* p = std::get_if<RationalSet>(&s)) return std::move(*p);
    throw UsageError(path + ": this command needs a rational set");
}

// ---- gen ----------------------------------------------------------------

int cmd_gen(const Globals& g, const std::string& family) {
    auto specs = harness::parse_family(family, g.seed);
    for (auto& s : specs)
        if (s.kind == harness::FamilyKind::subgroup && s.p == 0 && g.fallback) s.p = *g.fallback;
    if (specs.size() == 1) {
        emit_text(g, format_set(harness::generate(specs.front())));
        return kOk;
    }
    if (g.out.empty()) throw UsageError("a value list yields several sets; give --out <dir>");
    std::filesystem::create_directories(g.out);
    for (const auto& s : specs) {
        const auto path = std::filesystem::path(g.out) / harness::set_file_name(s.str());
        std::ofstream f(path);
        if (!f) throw Error("cannot write " + path.string());
        f << format_set(harness::generate(s));
        std::cout << path.string() << '\n';
    }
    return kOk;
}

// ---- stats / verify -------------------------------------------------------

int emit_records(const Globals& g, const std::vector<harness::VerificationRecord>& rows) {
    if (g.format == "csv") {
        std::ostringstream os;
        harness::write_csv(os, rows);
        emit_text(g, os.str());
    } else {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(harness::to_json(r));
        emit_text(g, arr.dump(2) + "\n");
    }
    return harness::exact_failures(rows) ? kCheckFailed : kOk;
}

int cmd_stats(const Globals& g, const std::string& file) {
    harness::ClaimOptions opts;
    opts.timing = g.timing;
    const auto set = load(g, file);
    return std::visit([&](const auto& a) { return emit_records(g, harness::run_claims({"stats"}, a, opts, file)); }, set);
}

int cmd_verify(const Globals& g, const std::string& file, const std::vector<std::string>& claims,
               const std::string& basis_file, const std::string& c_text, std::uint64_t node_limit) {
    harness::ClaimOptions opts;
    opts.timing = g.timing;
    opts.seed = g.seed.value_or(0);
    if (!c_text.empty()) {
        opts.c = Rational::parse(c_text);
        harness::exponent_ledger(opts.c);  // range check
    }
    if (node_limit) opts.basis_node_limit = node_limit;
    if (!basis_file.empty()) opts.basis = load_rational(g, basis_file);
    const auto ids = harness::expand_suite(claims.empty() ? std::vector<std::string>{"all"} : claims);
    const auto set = load(g, file);
    return std::visit([&](const auto& a) { return emit_records(g, harness::run_claims(ids, a, opts, file)); }, set);
}

// ---- basis ----------------------------------------------------------------

int cmd_basis_min(const Globals& g, const std::string& file, const std::string& universe, std::optional<std::size_t> cap,
                  std::uint64_t node_limit) {
    const auto a = load_rational(g, file);
    BasisOptions opts;
    if (!universe.empty()) opts.universe = load_rational(g, universe);
    opts.size_cap = cap;
    opts.node_limit = node_limit;
    const auto r = min_basis(a, opts);
    json j;
    j["status"] = to_string(r.status);
    j["size"] = r.size();
    j["basis"] = r.found() ? r.basis.str() : "";
    j["counting_lower_bound"] = r.counting_lower_bound;
    j["size_cap"] = r.size_cap;
    j["nodes"] = r.nodes;
    j["universe_size"] = r.universe.size();
    bool ok = true;
    if (r.found()) {
        const bool covers = a.is_subset_of(sumset(r.basis, r.basis));
        j["covers_target"] = covers;
        ok = covers && r.size() >= r.counting_lower_bound;
        const auto p = lk_of_candidate(a, r.basis);
        j["L"] = p.l().str();
        j["K_squared"] = p.k_squared().str();
    }
    emit_json(g, j);
    return ok ? kOk : kCheckFailed;
}

int cmd_basis_lk(const Globals& g, const std::string& a_file, const std::string& b_file) {
    const auto a = load_rational(g, a_file);
    const auto b = load_rational(g, b_file);
    const auto p = lk_of_candidate(a, b);
    json j;
    j["basis_size"] = p.basis_size;
    j["target_size"] = p.target_size;
    j["edges"] = p.edges;
    j["covers_target"] = p.covers_target;
    j["L"] = p.l().str();
    j["K_squared"] = p.k_squared().str();
    j["density"] = p.density().str();
    j["richness_threshold"] = default_richness_threshold(p);
    emit_json(g, j);
    return kOk;
}

// ---- decompose ------------------------------------------------------------

int cmd_decompose(const Globals& g, const std::string& file, std::uint64_t node_limit) {
    const auto a = load_rational(g, file);
    const auto r = decomposition_report(a, node_limit);
    const auto& d = r.decomposition;
    json j;
    j["status"] = to_string(d.status);
    j["nodes"] = d.nodes;
    j["size"] = r.set_size;
    j["M"] = r.doubling.str();
    j["cube_root"] = harness::format_double(r.cube_root);
    bool ok = true;
    if (d.found()) {
        j["B"] = d.b.str();
        j["C"] = d.c.str();
        j["sumset_verified"] = r.sumset_verified;
        j["alpha"] = r.alpha->str();
        j["shift_containment"] = r.shift_containment;
        j["shift_bound_holds"] = r.shift_bound->holds;
        ok = r.sumset_verified && r.shift_containment && r.shift_bound->holds;
    }
    emit_json(g, j);
    return ok ? kOk : kCheckFailed;
}

// ---- popdiff --------------------------------------------------------------

template <FieldValue F>
int popdiff_for(const Globals& g, const ArithSet<F>& a, const ArithSet<F>& b, const std::string& eps_text,
                std::optional<std::uint64_t> tau_opt) {
    const auto graph = build_containment_graph(b, a);
    const auto profile = lk_profile(graph);
    const Rational eps = eps_text.empty() ? Rational(1, 2) : Rational::parse(eps_text);
    const auto ext = gowers_extract(graph, eps);
    const std::uint64_t tau = tau_opt.value_or(default_richness_threshold(profile));
    const auto cert = build_popular_ratios(graph, ext.subset_set, tau);
    const auto diff = verify_difference_representations(graph, ext.subset_set, tau);
    const auto sols = ratio_solution_report(graph, cert);
    json j;
    j["edges"] = profile.edges;
    j["density"] = profile.density().str();
    j["L"] = profile.l().str();
    j["K_squared"] = profile.k_squared().str();
    j["epsilon"] = eps.str();
    j["pivot"] = ext.pivot;
    j["extract"] = ext.subset_set.str();
    j["extract_success"] = ext.success;
    j["bad_fraction"] = ext.bad_fraction.str();
    j["tau"] = tau;
    j["rich_pairs"] = cert.rich_pairs;
    j["R"] = cert.ratios.str();
    json mult = json::array();
    for (std::size_t i = 0; i < cert.ratios.size(); ++i) mult.push_back({cert.ratios[i].str(), cert.multiplicity[i]});
    j["multiplicity"] = mult;
    j["triple_count"] = cert.triple_count;
    j["multiplicity_sum"] = cert.multiplicity_sum;
    j["Q"] = cert.collisions.get_str();
    j["skipped_triples"] = cert.skipped_triples;
    j["conservation"] = cert.conservation_holds;
    j["cauchy_schwarz"] = cert.cauchy_schwarz_holds;
    j["R_inside_A_over_A"] = cert.subset_of_ratio_set;
    j["difference_injection"] = diff.injection_holds;
    j["min_constructive_solutions"] = sols.min_constructive;
    j["min_exact_solutions"] = sols.min_exact;
    j["identity_failures"] = sols.identity_failures;
    emit_json(g, j);
    const bool ok = cert.conservation_holds && cert.cauchy_schwarz_holds && cert.subset_of_ratio_set &&
                    diff.injection_holds && sols.identity_failures == 0 && sols.exact_dominates;
    return ok ? kOk : kCheckFailed;
}

int cmd_popdiff(const Globals& g, const std::string& a_file, const std::string& b_file, const std::string& eps,
                std::optional<std::uint64_t> tau) {
    const auto a = load(g, a_file);
    return std::visit(
        [&](const auto& aa) {
            using S = std::decay_t<decltype(aa)>;
            return popdiff_for(g, aa, load_as<typename S::value_type>(g, b_file), eps, tau);
        },
        a);
}

// ---- triples --------------------------------------------------------------

template <FieldValue F>
int triples_for(const Globals& g, const ArithSet<F>& x, const ArithSet<F>& y, const ArithSet<F>& z, bool brute) {
    json j;
    const auto t = collinear_triples(x, y, z);
    j["T"] = t;
    bool ok = true;
    if (brute) {
        const auto slow = oracle::collinear_triples(x, y, z);
        j["T_brute"] = slow;
        j["agree"] = slow == t;
        ok = slow == t;
    }
    // Bucket table for the pair of grids (X*X, Z*Z).
    if (x.size() >= 2 || z.size() >= 2) {
        const auto table = dyadic_table(x, z);
        json buckets = json::array();
        for (const auto& [key, count] : table.buckets) buckets.push_back({{"i", key.first}, {"j", key.second}, {"lines", count}});
        j["buckets"] = buckets;
        j["lines"] = table.line_count();
        j["T_XXZ_from_table"] = table.triples();
        if constexpr (is_rational_v<F>) {
            const auto st = st_line_bound_check(table);
            json ratios = json::array();
            for (const auto& b : st.buckets)
                ratios.push_back({{"i", b.i},
                                  {"j", b.j},
                                  {"lines", b.lines},
                                  {"bound", b.bound.str()},
                                  {"ratio", b.ratio.str()},
                                  {"exact_richness_lines", b.exact_lines},
                                  {"exact_richness_ratio", b.exact_ratio.str()}});
            j["st_ratios"] = ratios;
            j["st_max_ratio"] = st.max_ratio.str();
        }
    }
    emit_json(g, j);
    return ok ? kOk : kCheckFailed;
}

int cmd_triples(const Globals& g, const std::vector<std::string>& files, bool brute) {
    const auto x = load(g, files.at(0));
    return std::visit(
        [&](const auto& xs) {
            using F = typename std::decay_t<decltype(xs)>::value_type;
            return triples_for(g, xs, load_as<F>(g, files.at(1)), load_as<F>(g, files.at(2)), brute);
        },
        x);
}

// ---- report ---------------------------------------------------------------

int cmd_report(const Globals& g, const std::string& spec_file, const std::vector<std::string>& families,
               const std::vector<std::string>& suite, std::uint64_t node_limit) {
    harness::ReportSpec spec;
    if (!spec_file.empty()) {
        std::ifstream in(spec_file);
        if (!in) throw UsageError("cannot read " + spec_file);
        spec = harness::parse_report_spec(nlohmann::json::parse(in));
    }
    for (const auto& f : families) spec.families.push_back(f);
    for (const auto& s : suite) spec.suite.push_back(s);
    if (g.seed) spec.seed = g.seed;
    if (g.fallback) throw UsageError("report: the field comes from each family");
    if (g.out.empty()) throw UsageError("report needs --out <dir>");
    spec.options.timing = g.timing;
    if (node_limit) spec.options.basis_node_limit = node_limit;
    const auto res = harness::run_report(spec);
    harness::write_report(res, g.out);
    std::cout << res.rows.size() << " rows, " << res.exact_failures() << " exact failures, written to " << g.out << '\n';
    return res.exact_failures() ? kCheckFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sumprodlab: exact sum-product experiments"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    std::string field_text = "rational";
    app.add_option("--out", g.out, "Output file (directory for report)");
    app.add_option("--seed", g.seed, "Seed for random families and sampled checks");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--field", field_text, "Field for set files without a header: rational or fp:<p>");
    app.add_flag("--timing", g.timing, "Record wall-clock millis in records (breaks byte determinism)");

    std::string family;
    auto* gen = app.add_subcommand("gen", "Generate a family instance as a set file");
    gen->add_option("family", family, "kind:key=value,... e.g. gp:q=2,n=8")->required();

    std::string a_file;
    auto* stats = app.add_subcommand("stats", "Sizes of sum/product/ratio sets and energies");
    stats->add_option("A", a_file)->required()->check(CLI::ExistingFile);

    auto* basis = app.add_subcommand("basis", "Additive basis tools");
    basis->require_subcommand(1);
    std::string universe;
    std::optional<std::size_t> cap;
    std::uint64_t node_limit = 0;
    auto* bmin = basis->add_subcommand("min", "Minimum basis within a universe");
    bmin->add_option("A", a_file)->required()->check(CLI::ExistingFile);
    bmin->add_option("--universe", universe, "Candidate universe set file")->check(CLI::ExistingFile);
    bmin->add_option("--cap", cap, "Largest basis size to search");
    bmin->add_option("--node-limit", node_limit, "Stop after this many search nodes (0 = none)");
    std::string b_file;
    auto* blk = basis->add_subcommand("lk", "(L, K) profile of a candidate basis");
    blk->add_option("A", a_file)->required()->check(CLI::ExistingFile);
    blk->add_option("B", b_file)->required()->check(CLI::ExistingFile);

    auto* dec = app.add_subcommand("decompose", "Search for A = B + C with |B|, |C| >= 2");
    dec->add_option("A", a_file)->required()->check(CLI::ExistingFile);
    dec->add_option("--node-limit", node_limit, "Stop after this many search nodes (0 = none)");

    std::string eps;
    std::optional<std::uint64_t> tau;
    auto* pop = app.add_subcommand("popdiff", "Popular-ratio certificate for target A and basis B");
    pop->add_option("A", a_file)->required()->check(CLI::ExistingFile);
    pop->add_option("B", b_file)->required()->check(CLI::ExistingFile);
    pop->add_option("--epsilon", eps, "Extraction epsilon in (0,1), default 1/2");
    pop->add_option("--tau", tau, "Rich-pair threshold (default from the (L,K) profile)");

    std::vector<std::string> files;
    bool brute = false;
    auto* tri = app.add_subcommand("triples", "Collinear triples T(X,Y,Z) and dyadic line buckets");
    tri->add_option("files", files, "X Y Z set files")->required()->expected(3)->check(CLI::ExistingFile);
    tri->add_flag("--brute", brute, "Cross-check against direct triple enumeration");

    std::vector<std::string> claims;
    std::string c_text;
    auto* ver = app.add_subcommand("verify", "Run claims on one set");
    ver->add_option("A", a_file)->required()->check(CLI::ExistingFile);
    ver->add_option("--claims", claims, "Claim ids (default all)")->delimiter(',');
    ver->add_option("--basis", b_file, "Candidate basis B for chain claims")->check(CLI::ExistingFile);
    ver->add_option("--c", c_text, "Saving c in [0, 1/26] for sigma (default 1/26)");
    ver->add_option("--node-limit", node_limit, "Node limit for the basis search");

    std::string spec_file;
    std::vector<std::string> families, suite;
    auto* rep = app.add_subcommand("report", "Run a claim suite over families and write CSV/JSON");
    rep->add_option("--spec", spec_file, "JSON spec with families, suite, seed")->check(CLI::ExistingFile);
    rep->add_option("--family", families, "Family spec (repeatable); one key may list values a|b|c");
    rep->add_option("--suite", suite, "Claim ids or 'all'")->delimiter(',');
    rep->add_option("--node-limit", node_limit, "Node limit for the basis search");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        g.fallback = parse_field_option(field_text);
        if (*gen) return cmd_gen(g, family);
        if (*stats) return cmd_stats(g, a_file);
        if (*bmin) return cmd_basis_min(g, a_file, universe, cap, node_limit);
        if (*blk) return cmd_basis_lk(g, a_file, b_file);
        if (*dec) return cmd_decompose(g, a_file, node_limit);
        if (*pop) return cmd_popdiff(g, a_file, b_file, eps, tau);
        if (*tri) return cmd_triples(g, files, brute);
        if (*ver) return cmd_verify(g, a_file, claims, b_file, c_text, node_limit);
        if (*rep) return cmd_report(g, spec_file, families, suite, node_limit);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
