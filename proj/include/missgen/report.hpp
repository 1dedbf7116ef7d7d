#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "missgen/factoring.hpp"
#include "missgen/inverse_relation.hpp"

namespace missgen {

/// One table row: triplet, phi(p-1), the odd prime pair when p is in P_3,
/// and the observed relation-S character when it applies.
struct TripletRecord {
    u64 p = 0;
    u64 c = 0, n = 0, e = 0;
    u64 phi = 0;
    std::optional<u64> q1, q2;
    std::string s_character = "NotApplicable";

    friend bool operator==(const TripletRecord&, const TripletRecord&) = default;
};

TripletRecord make_triplet_record(u64 p);

/// One record per odd prime <= pmax, ascending.
std::vector<TripletRecord> make_table(u64 pmax);

std::string table_to_csv(const std::vector<TripletRecord>& rows);

/// Minimal CSV split/join used for the emit-parse-emit round trip.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);
std::string to_csv(const std::vector<std::vector<std::string>>& rows);

nlohmann::json classify_doc(u64 p);
nlohmann::json missing_doc(u64 p);
nlohmann::json triplet_doc(u64 p);
nlohmann::json factor_doc(const FactoringReport& rep);
nlohmann::json scan_doc(const PrimeGridScan& scan);

/// DOT document: one node per block labelled with its generators, one
/// cluster per unicycle.
std::string digraph_to_dot(const MissingDigraph& d);

std::string to_string(SCharacter c);

} // namespace missgen
