#include "missgen/report.hpp"

#include <limits>
#include <map>
#include <sstream>

namespace missgen {

namespace {

u64 narrow(u128 v, const char* what) {
    if (v > std::numeric_limits<u64>::max()) {
        throw std::invalid_argument(std::string(what) + " exceeds 64 bits: " + to_string(v));
    }
    return static_cast<u64>(v);
}

nlohmann::json json_u128(u128 v) { return to_string(v); }

} // namespace

std::string to_string(SCharacter c) {
    return c == SCharacter::Reflexive ? "Reflexive" : "Symmetric";
}

TripletRecord make_triplet_record(u64 p) {
    const PrimeContext ctx = make_prime_context(p);
    TripletRecord rec;
    rec.p = p;
    rec.phi = narrow(euler_phi(ctx.pm1), "phi(p-1)");
    if (!ctx.is_p3) return rec;
    rec.q1 = narrow(ctx.q1, "q1");
    rec.q2 = narrow(ctx.q2, "q2");
    const ElementClassification cls = classify_elements(ctx);
    const MissingDigraph d = build_digraph(build_partition(cls));
    const Triplet t = triplet_from_digraph(d);
    rec.c = narrow(t.c, "c");
    rec.n = narrow(t.n, "n");
    rec.e = narrow(t.e, "e");
    if (p % 4 == 3) {
        const NiPartition ni = build_ni_partition(cls, d.partition);
        rec.s_character = to_string(build_relation_s(cls, d, ni).character);
    }
    return rec;
}

std::vector<TripletRecord> make_table(u64 pmax) {
    if (pmax < 3) throw std::invalid_argument("make_table: pmax must be >= 3");
    std::vector<TripletRecord> rows;
    for (u64 p : primes_up_to(pmax)) {
        if (p == 2) continue;
        rows.push_back(make_triplet_record(p));
    }
    return rows;
}

std::string table_to_csv(const std::vector<TripletRecord>& rows) {
    std::string out = "p,c,n,e,phi,q1,q2,s_character\n";
    for (const auto& r : rows) {
        out += std::to_string(r.p) + ',' + std::to_string(r.c) + ',' + std::to_string(r.n) + ',' +
               std::to_string(r.e) + ',' + std::to_string(r.phi) + ',';
        out += r.q1 ? std::to_string(*r.q1) : "";
        out += ',';
        out += r.q2 ? std::to_string(*r.q2) : "";
        out += ',' + r.s_character + '\n';
    }
    return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.push_back("");
        rows.push_back(std::move(fields));
    }
    return rows;
}

std::string to_csv(const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

nlohmann::json classify_doc(u64 p) {
    const ElementClassification cls = classify_elements(make_prime_context(p));
    std::vector<u64> non_residues;
    non_residues.reserve(cls.generators().size() + cls.non_gen_non_residues().size());
    for (u64 x = 1; x < cls.p(); ++x) {
        if (!cls.is_residue(x)) non_residues.push_back(x);
    }
    return nlohmann::json{
        {"p", p},
        {"cardinalities",
         {{"residues", cls.residues().size()},
          {"non_residues", non_residues.size()},
          {"generators", cls.generators().size()},
          {"non_generator_non_residues", cls.non_gen_non_residues().size()}}},
        {"residues", cls.residues()},
        {"non_residues", non_residues},
        {"generators", cls.generators()},
        {"non_generator_non_residues", cls.non_gen_non_residues()},
    };
}

nlohmann::json missing_doc(u64 p) {
    const ElementClassification cls = classify_elements(make_prime_context(p));
    // Group generators by identical missing-set; definitional for any odd
    // prime, the partition theorems only apply when p is in P_3.
    std::map<std::vector<u64>, std::vector<u64>> groups;
    for (u64 g : cls.generators()) groups[missing_set(g, cls)].push_back(g);
    std::vector<std::pair<std::vector<u64>, std::vector<u64>>> items(groups.begin(), groups.end());
    std::sort(items.begin(), items.end(),
              [](const auto& a, const auto& b) { return a.second.front() < b.second.front(); });
    nlohmann::json sets = nlohmann::json::array();
    for (const auto& [mset, members] : items) {
        sets.push_back({{"generators", members}, {"missing", mset}});
    }
    return nlohmann::json{
        {"p", p},
        {"m_cardinality", to_string(missing_count(cls.ctx().pm1))},
        {"is_p3", cls.ctx().is_p3},
        {"sets", sets},
    };
}

nlohmann::json triplet_doc(u64 p) {
    const TripletRecord r = make_triplet_record(p);
    nlohmann::json doc{
        {"p", r.p},   {"c", r.c},     {"n", r.n},
        {"e", r.e},   {"phi", r.phi}, {"s_character", r.s_character},
    };
    doc["q1"] = r.q1 ? nlohmann::json(*r.q1) : nlohmann::json(nullptr);
    doc["q2"] = r.q2 ? nlohmann::json(*r.q2) : nlohmann::json(nullptr);
    return doc;
}

nlohmann::json factor_doc(const FactoringReport& rep) {
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& t : rep.search_trace) {
        const char* verdict = t.verdict == CandidateTrace::Verdict::Prime      ? "prime"
                              : t.verdict == CandidateTrace::Verdict::Composite ? "composite"
                                                                                : "overflow";
        trace.push_back({{"i", t.i},
                         {"j", t.j},
                         {"candidate", t.verdict == CandidateTrace::Verdict::Overflow
                                           ? nlohmann::json(nullptr)
                                           : json_u128(t.value)},
                         {"verdict", verdict}});
    }
    return nlohmann::json{
        {"n", json_u128(rep.n)},
        {"bound", rep.bound},
        {"search_trace", trace},
        {"chosen", {{"i", rep.chosen_i}, {"j", rep.chosen_j}, {"p", json_u128(rep.p)}}},
        {"triplet",
         {{"c", json_u128(rep.triplet.c)}, {"n", json_u128(rep.triplet.n)}, {"e", json_u128(rep.triplet.e)}}},
        {"recovered", {{"q1", json_u128(rep.q1)}, {"q2", json_u128(rep.q2)}}},
        {"elapsed_ms", rep.elapsed.count()},
    };
}

nlohmann::json scan_doc(const PrimeGridScan& scan) {
    nlohmann::json hits = nlohmann::json::array();
    for (const auto& h : scan.hits) hits.push_back({{"i", h.i}, {"j", h.j}});
    return nlohmann::json{
        {"n", json_u128(scan.n)},
        {"bound", scan.bound},
        {"mode", scan.full_grid ? "full" : "first_hit"},
        {"tested", scan.tested},
        {"skipped_overflow", scan.skipped_overflow},
        {"hits", hits},
        {"first_hit", scan.first_hit
                          ? nlohmann::json{{"i", scan.first_hit->i}, {"j", scan.first_hit->j}}
                          : nlohmann::json(nullptr)},
    };
}

std::string digraph_to_dot(const MissingDigraph& d) {
    const auto& pt = d.partition;
    std::string out = "digraph missing_generators_" + to_string(pt.ctx.p) + " {\n";
    out += "  labelloc=\"t\";\n";
    out += "  label=\"missing-generator unicycles, p = " + to_string(pt.ctx.p) + "\";\n";
    out += "  node [shape=box];\n";
    for (std::size_t ci = 0; ci < d.cycles.size(); ++ci) {
        out += "  subgraph cluster_cycle_" + std::to_string(ci + 1) + " {\n";
        out += "    label=\"cycle " + std::to_string(ci + 1) + "\";\n";
        for (std::size_t u : d.cycles[ci]) {
            out += "    b" + std::to_string(u) + " [label=\"{";
            const auto& members = pt.blocks[u];
            for (std::size_t t = 0; t < members.size(); ++t) {
                if (t) out += ", ";
                out += std::to_string(members[t]);
            }
            out += "}\"];\n";
        }
        out += "  }\n";
    }
    for (std::size_t u = 0; u < d.successor.size(); ++u) {
        out += "  b" + std::to_string(u) + " -> b" + std::to_string(d.successor[u]) + ";\n";
    }
    out += "}\n";
    return out;
}

} // namespace missgen
