#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "missgen/report.hpp"
#include "missgen/verify.hpp"

namespace {

using namespace missgen;

// Exit codes: 0 ok, 1 invariant violation, 2 invalid input,
// 3 unsupported prime class, 4 search exhausted.
constexpr int kExitViolation = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitExhausted = 4;

struct Options {
    bool json = false;
    bool reproducible = false;
};

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void emit_json(nlohmann::json doc, const Options& opt) {
    if (!opt.reproducible) doc["generated_at"] = utc_timestamp();
    std::cout << doc.dump(2) << '\n';
}

std::string join(const std::vector<u64>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(xs[i]);
    }
    return out;
}

u64 require_odd_prime(u64 p) {
    if (p < 3 || !is_prime(p)) {
        throw std::invalid_argument(std::to_string(p) + " is not an odd prime");
    }
    return p;
}

void run_classify(u64 p, const Options& opt) {
    require_odd_prime(p);
    if (opt.json) {
        emit_json(classify_doc(p), opt);
        return;
    }
    const ElementClassification cls = classify_elements(make_prime_context(p));
    std::cout << "p = " << p << '\n'
              << "|R| = " << cls.residues().size() << ", |N| = " << (p - 1) / 2
              << ", |G| = " << cls.generators().size()
              << ", |NG| = " << cls.non_gen_non_residues().size() << '\n'
              << "R  = " << join(cls.residues()) << '\n'
              << "G  = " << join(cls.generators()) << '\n'
              << "NG = " << join(cls.non_gen_non_residues()) << '\n';
}

void run_missing(u64 p, const Options& opt) {
    require_odd_prime(p);
    if (opt.json) {
        emit_json(missing_doc(p), opt);
        return;
    }
    const nlohmann::json doc = missing_doc(p);
    std::cout << "p = " << p << ", |M(g)| = " << doc["m_cardinality"].get<std::string>() << '\n';
    for (const auto& entry : doc["sets"]) {
        std::cout << "{" << join(entry["generators"].get<std::vector<u64>>()) << "} -> {"
                  << join(entry["missing"].get<std::vector<u64>>()) << "}\n";
    }
}

void run_triplet(u64 p, const Options& opt) {
    require_odd_prime(p);
    if (opt.json) {
        emit_json(triplet_doc(p), opt);
        return;
    }
    const TripletRecord r = make_triplet_record(p);
    std::cout << "T(" << p << ") = (" << r.c << "," << r.n << "," << r.e << "), phi(p-1) = " << r.phi;
    if (r.q1) std::cout << ", q1 = " << *r.q1 << ", q2 = " << *r.q2;
    std::cout << ", S: " << r.s_character << '\n';
}

void run_table(u64 pmax, const Options& opt) {
    const auto rows = make_table(pmax);
    if (opt.json) {
        nlohmann::json arr = nlohmann::json::array();
        for (u64 p : primes_up_to(pmax)) {
            if (p > 2) arr.push_back(triplet_doc(p));
        }
        emit_json(nlohmann::json{{"pmax", pmax}, {"rows", arr}}, opt);
        return;
    }
    std::cout << table_to_csv(rows);
}

void run_digraph(u64 p, const std::string& dot_path, const Options&) {
    require_odd_prime(p);
    const PrimeContext ctx = make_prime_context(p);
    if (!ctx.is_p3) {
        throw UnsupportedPrimeClass("digraph: p-1 must have exactly three distinct prime factors");
    }
    const MissingDigraph d = build_digraph(build_partition(classify_elements(ctx)));
    const std::string dot = digraph_to_dot(d);
    if (dot_path.empty()) {
        std::cout << dot;
    } else {
        std::ofstream out(dot_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot open " + dot_path);
        out << dot;
    }
}

void run_factor(const std::string& n_str, unsigned bound, const Options& opt) {
    const u128 n = parse_u128(n_str);
    if (bound == 0) bound = default_scan_bound(n);
    const FactoringReport rep = factor_semiprime(n, bound);
    if (opt.json) {
        nlohmann::json doc = factor_doc(rep);
        if (opt.reproducible) doc.erase("elapsed_ms");
        emit_json(std::move(doc), opt);
        return;
    }
    std::cout << "N = " << to_string(rep.n) << " = " << to_string(rep.q1) << " * " << to_string(rep.q2)
              << "\nprime found: p = 2^" << rep.chosen_i << " * N^" << rep.chosen_j << " + 1 = "
              << to_string(rep.p) << " after " << rep.search_trace.size() << " candidates\n"
              << "T(p) = (" << to_string(rep.triplet.c) << "," << to_string(rep.triplet.n) << ","
              << to_string(rep.triplet.e) << ")\n";
    std::cout << "note: T is computed by factoring p-1 internally; this demonstrates the\n"
                 "triplet-to-factoring reduction at desk scale, it is not a faster factoring method.\n";
}

void run_scan(const std::string& n_str, unsigned bound, unsigned k_exp, bool full, const Options& opt) {
    const u128 n = parse_u128(n_str);
    std::string bound_source = "default-5log2";
    if (bound != 0 && k_exp != 0) throw std::invalid_argument("--bound and --k are mutually exclusive");
    if (bound == 0) {
        if (k_exp != 0) {
            // strict form: exponents below (log2 n)^k
            const long double lg = log2l(static_cast<long double>(n));
            long double b = 1.0L;
            for (unsigned t = 0; t < k_exp; ++t) b *= lg;
            const long double ceiled = ceill(b);
            bound = ceiled < 2.0L ? 1u : static_cast<unsigned>(ceiled) - 1;
            bound_source = "k-strict";
        } else {
            bound = default_scan_bound(n);
        }
    } else {
        bound_source = "explicit";
    }
    const PrimeGridScan scan = scan_prime_grid(n, bound, full);
    if (opt.json) {
        nlohmann::json doc = scan_doc(scan);
        doc["bound_source"] = bound_source;
        emit_json(std::move(doc), opt);
        return;
    }
    std::cout << "N = " << to_string(n) << ", grid 1.." << scan.bound << " (" << bound_source
              << "), mode " << (full ? "full" : "first-hit") << '\n';
    std::cout << "tested " << scan.tested << " candidates, skipped " << scan.skipped_overflow
              << " beyond 128 bits\n";
    if (scan.first_hit) {
        std::cout << "first hit (i,j) = (" << scan.first_hit->i << "," << scan.first_hit->j << ")\n";
    } else {
        std::cout << "no prime found in the grid\n";
    }
    if (full) std::cout << "hits: " << scan.hits.size() << '\n';
}

int run_verify(u64 pmax, const std::string& fault, const Options& opt) {
    const VerifyReport rep = run_verification(pmax, fault);
    if (opt.json) {
        emit_json(verify_doc(rep), opt);
    } else {
        for (const auto& c : rep.checks) {
            std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
            if (!c.detail.empty()) std::cout << (c.passed ? " (" : ": ") << c.detail << (c.passed ? ")" : "");
            std::cout << '\n';
        }
        std::cout << rep.passed_count() << "/" << rep.checks.size() << " checks passed (pmax = " << pmax
                  << ")\n";
    }
    return rep.all_passed() ? 0 : kExitViolation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"missing-generator structure of Z_p*: classification, unicycle digraph,\n"
                 "triplet map and the triplet-based semiprime factoring demo"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--json", opt.json, "machine-readable JSON output");
    app.add_flag("--reproducible", opt.reproducible, "omit timestamp/elapsed fields");

    u64 p = 0, pmax = 0;
    std::string n_str, dot_path, fault;
    unsigned bound = 0, k_exp = 0;
    bool full = false;

    auto* c_classify = app.add_subcommand("classify", "residue / generator / non-generator tags of Z_p*");
    c_classify->add_option("p", p, "odd prime")->required();
    auto* c_missing = app.add_subcommand("missing", "missing-generator sets M(g), grouped");
    c_missing->add_option("p", p, "odd prime")->required();
    auto* c_triplet = app.add_subcommand("triplet", "triplet T(p) = (c,n,e)");
    c_triplet->add_option("p", p, "odd prime")->required();
    auto* c_table = app.add_subcommand("table", "CSV of T(p) for all odd primes <= pmax");
    c_table->add_option("pmax,--pmax", pmax, "upper bound");
    auto* c_digraph = app.add_subcommand("digraph", "DOT export of the missing-generator unicycles");
    c_digraph->add_option("p", p, "odd prime with p-1 = 2^i q1^j1 q2^j2")->required();
    c_digraph->add_option("--dot", dot_path, "write DOT here instead of stdout");
    auto* c_factor = app.add_subcommand("factor", "factor an odd semiprime via the triplet reduction");
    c_factor->add_option("N", n_str, "odd product of two distinct odd primes")->required();
    c_factor->add_option("--bound", bound, "exponent bound (default ceil(5*log2 N))");
    auto* c_scan = app.add_subcommand("scan", "scan 2^i*N^j+1 for primes");
    c_scan->add_option("N", n_str, "odd integer >= 3")->required();
    c_scan->add_option("--bound", bound, "inclusive exponent bound");
    c_scan->add_option("--k", k_exp, "use the strict bound (log2 N)^k");
    c_scan->add_flag("--full", full, "test the whole grid instead of stopping at the first hit");
    auto* c_verify = app.add_subcommand("verify", "run the invariant suite for primes <= pmax");
    c_verify->add_option("pmax,--pmax", pmax, "upper bound");
    c_verify->add_option("--inject-fault", fault, "corrupt a named quantity (harness self-test)")
        ->group(""); // hidden

    for (CLI::App* sc : {c_classify, c_missing, c_triplet, c_table, c_digraph, c_factor, c_scan, c_verify}) {
        sc->add_flag("--json", opt.json, "machine-readable JSON output");
        sc->add_flag("--reproducible", opt.reproducible, "omit timestamp/elapsed fields");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try {
        if (c_classify->parsed()) {
            run_classify(p, opt);
        } else if (c_missing->parsed()) {
            run_missing(p, opt);
        } else if (c_triplet->parsed()) {
            run_triplet(p, opt);
        } else if (c_table->parsed()) {
            if (pmax == 0) throw std::invalid_argument("table: pmax required");
            run_table(pmax, opt);
        } else if (c_digraph->parsed()) {
            run_digraph(p, dot_path, opt);
        } else if (c_factor->parsed()) {
            run_factor(n_str, bound, opt);
        } else if (c_scan->parsed()) {
            run_scan(n_str, bound, k_exp, full, opt);
        } else if (c_verify->parsed()) {
            if (pmax == 0) throw std::invalid_argument("verify: pmax required");
            return run_verify(pmax, fault, opt);
        }
    } catch (const UnsupportedPrimeClass& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUnsupported;
    } catch (const SearchExhausted& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitExhausted;
    } catch (const StructuralViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitViolation;
    } catch (const PipelineInconsistency& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return 0;
}
