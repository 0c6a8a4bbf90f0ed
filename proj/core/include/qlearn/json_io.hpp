#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qlearn/bounds.hpp"
#include "qlearn/concepts.hpp"
#include "qlearn/learners.hpp"
#include "qlearn/quantum.hpp"

namespace qlearn::io {

// ordered_json keeps field order stable so identical configs produce
// byte-identical reports
using json = nlohmann::ordered_json;

// Truth tables travel as hex strings: 2^n bits, most-significant bit first
// (bit 0 of the table is the top bit of the first hex digit), zero-padded on
// the right to a whole digit.
std::string encode_table_hex(const std::vector<std::uint8_t>& table);
std::vector<std::uint8_t> decode_table_hex(const std::string& hex, int n);

// {"n": int, "kind": "parity"|"points_plus_zero"|"all"|"conjunctions"|
//  "explicit", "tables": [hex, ...]}
json class_to_json(const ConceptClass& cls, const std::string& kind = "explicit");
ConceptClass class_from_json(const json& j);

// inline form used by the CLI, e.g. "parity n=3"
ConceptClass class_from_spec(const std::string& spec);
ConceptClass make_class(const std::string& kind, int n);

// stage list with {"type": "dense"|"gates"|"oracle"|"qex"}; dense matrices
// carry amplitudes as [re, im] pairs
json network_to_json(const quantum::QueryNetwork& net);
quantum::QueryNetwork network_from_json(const json& j);

json bound_report_to_json(const std::string& class_label, const bounds::BoundReport& report);
// one row per class per bound: class,model,kind,name,value
std::string bound_report_csv_header();
std::string bound_report_to_csv(const std::string& class_label, const bounds::BoundReport& report);

json certification_to_json(const std::string& class_label, const ConceptClass& cls,
                           const learners::CertificationReport& report,
                           const bounds::BoundReport& bounds_row);

struct RunRecord {
    std::string target;     // hex table or "(adversary)"
    std::string class_label;
    std::string mode;
    std::uint64_t seed;
    std::size_t queries;
    std::string hypothesis; // hex table
    bool success;
};

json run_record_to_json(const RunRecord& record);

} // namespace qlearn::io
