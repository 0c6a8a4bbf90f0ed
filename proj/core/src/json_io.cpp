#include "qlearn/json_io.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "qlearn/bits.hpp"

namespace qlearn::io {

namespace {

int hex_digit_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument(std::string("invalid hex digit '") + c + "'");
}

constexpr char kHexDigits[] = "0123456789abcdef";

} // namespace

std::string encode_table_hex(const std::vector<std::uint8_t>& table) {
    const std::size_t digits = (table.size() + 3) / 4;
    std::string out(digits, '0');
    for (std::size_t k = 0; k < digits; ++k) {
        int nibble = 0;
        for (std::size_t j = 0; j < 4; ++j) {
            const std::size_t idx = 4 * k + j;
            if (idx < table.size() && table[idx]) nibble |= 1 << (3 - j);
        }
        out[k] = kHexDigits[nibble];
    }
    return out;
}

std::vector<std::uint8_t> decode_table_hex(const std::string& hex, int n) {
    const std::size_t bits = std::size_t{1} << n;
    const std::size_t digits = (bits + 3) / 4;
    if (hex.size() != digits)
        throw std::invalid_argument("table hex string has " + std::to_string(hex.size()) +
                                    " digits, expected " + std::to_string(digits));
    std::vector<std::uint8_t> table(bits, 0);
    for (std::size_t k = 0; k < digits; ++k) {
        const int nibble = hex_digit_value(hex[k]);
        for (std::size_t j = 0; j < 4; ++j) {
            const std::size_t idx = 4 * k + j;
            const std::uint8_t bit = static_cast<std::uint8_t>((nibble >> (3 - j)) & 1);
            if (idx < bits)
                table[idx] = bit;
            else if (bit)
                throw std::invalid_argument("table hex string has nonzero padding bits");
        }
    }
    return table;
}

json class_to_json(const ConceptClass& cls, const std::string& kind) {
    json j;
    j["n"] = cls.n();
    j["kind"] = kind;
    json tables = json::array();
    for (const auto& c : cls.concepts()) tables.push_back(encode_table_hex(c.table()));
    j["tables"] = std::move(tables);
    return j;
}

ConceptClass make_class(const std::string& kind, int n) {
    if (kind == "parity") return parity_class(n);
    if (kind == "points_plus_zero") return point_functions_plus_zero(n);
    if (kind == "all") return all_functions(n);
    if (kind == "conjunctions") return conjunctions(n);
    throw std::invalid_argument("unknown class kind '" + kind + "'");
}

ConceptClass class_from_json(const json& j) {
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw std::invalid_argument("class JSON: missing integer field 'n'");
    const int n = j["n"].get<int>();
    const std::string kind = j.value("kind", std::string("explicit"));
    if (kind != "explicit") {
        ConceptClass built = make_class(kind, n);
        if (j.contains("tables")) {
            // tables may accompany a named kind but must agree with it
            const ConceptClass explicit_cls = class_from_json(
                json{{"n", n}, {"kind", "explicit"}, {"tables", j["tables"]}});
            if (explicit_cls.concepts() != built.concepts())
                throw std::invalid_argument("class JSON: tables disagree with kind '" + kind + "'");
        }
        return built;
    }
    if (!j.contains("tables") || !j["tables"].is_array())
        throw std::invalid_argument("class JSON: explicit kind needs a 'tables' array");
    std::vector<std::vector<std::uint8_t>> tables;
    for (const auto& t : j["tables"]) {
        if (!t.is_string()) throw std::invalid_argument("class JSON: tables must be hex strings");
        tables.push_back(decode_table_hex(t.get<std::string>(), n));
    }
    return from_tables(n, tables);
}

ConceptClass class_from_spec(const std::string& spec) {
    std::istringstream in(spec);
    std::string kind, nfield;
    in >> kind >> nfield;
    if (kind.empty() || nfield.rfind("n=", 0) != 0)
        throw std::invalid_argument("class spec must look like \"parity n=3\"");
    int n = 0;
    try {
        n = std::stoi(nfield.substr(2));
    } catch (const std::exception&) {
        throw std::invalid_argument("class spec has a malformed n field");
    }
    return make_class(kind, n);
}

namespace {

json complex_to_json(const quantum::Amplitude& a) { return json::array({a.real(), a.imag()}); }

quantum::Amplitude complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("amplitude must be an [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

const char* gate_name(quantum::GateOp::Kind kind) {
    switch (kind) {
    case quantum::GateOp::Kind::H: return "h";
    case quantum::GateOp::Kind::X: return "x";
    case quantum::GateOp::Kind::Z: return "z";
    case quantum::GateOp::Kind::Phase: return "phase";
    case quantum::GateOp::Kind::Cnot: return "cnot";
    }
    return "?";
}

} // namespace

json network_to_json(const quantum::QueryNetwork& net) {
    json j;
    j["m"] = net.m();
    j["n"] = net.n();
    json stages = json::array();
    for (const auto& stage : net.stages()) {
        json s;
        if (std::holds_alternative<quantum::MembershipSlot>(stage)) {
            s["type"] = "oracle";
        } else if (std::holds_alternative<quantum::ExampleSlot>(stage)) {
            s["type"] = "qex";
        } else if (const auto* dense = std::get_if<quantum::DenseUnitary>(&stage)) {
            s["type"] = "dense";
            json rows = json::array();
            const std::size_t dim = std::size_t{1} << dense->m;
            for (std::size_t r = 0; r < dim; ++r) {
                json row = json::array();
                for (std::size_t c = 0; c < dim; ++c) row.push_back(complex_to_json(dense->at(r, c)));
                rows.push_back(std::move(row));
            }
            s["matrix"] = std::move(rows);
        } else {
            s["type"] = "gates";
            json gates = json::array();
            for (const auto& g : std::get<std::vector<quantum::GateOp>>(stage)) {
                json gj;
                gj["g"] = gate_name(g.kind);
                gj["q"] = g.q0;
                if (g.kind == quantum::GateOp::Kind::Cnot) gj["t"] = g.q1;
                if (g.kind == quantum::GateOp::Kind::Phase) gj["theta"] = g.theta;
                gates.push_back(std::move(gj));
            }
            s["gates"] = std::move(gates);
        }
        stages.push_back(std::move(s));
    }
    j["stages"] = std::move(stages);

    json decode;
    decode["measure"] = net.decode().measured_qubits;
    json outcomes = json::object();
    for (const auto& [outcome, table] : net.decode().outcomes)
        outcomes[format_bits(static_cast<Index>(outcome),
                             static_cast<int>(net.decode().measured_qubits.size()))] =
            encode_table_hex(table);
    decode["outcomes"] = std::move(outcomes);
    j["decode"] = std::move(decode);
    return j;
}

quantum::QueryNetwork network_from_json(const json& j) {
    const int m = j.at("m").get<int>();
    const int n = j.at("n").get<int>();
    std::vector<quantum::Stage> stages;
    for (const auto& s : j.at("stages")) {
        const std::string type = s.at("type").get<std::string>();
        if (type == "oracle") {
            stages.emplace_back(quantum::MembershipSlot{});
        } else if (type == "qex") {
            stages.emplace_back(quantum::ExampleSlot{});
        } else if (type == "dense") {
            quantum::DenseUnitary dense;
            dense.m = m;
            const auto& rows = s.at("matrix");
            const std::size_t dim = std::size_t{1} << m;
            if (rows.size() != dim)
                throw std::invalid_argument("network JSON: dense matrix has wrong row count");
            dense.entries.reserve(dim * dim);
            for (const auto& row : rows) {
                if (row.size() != dim)
                    throw std::invalid_argument("network JSON: dense matrix has wrong column count");
                for (const auto& e : row) dense.entries.push_back(complex_from_json(e));
            }
            stages.emplace_back(std::move(dense));
        } else if (type == "gates") {
            std::vector<quantum::GateOp> gates;
            for (const auto& gj : s.at("gates")) {
                const std::string g = gj.at("g").get<std::string>();
                quantum::GateOp op{};
                op.q0 = gj.at("q").get<int>();
                if (g == "h") op.kind = quantum::GateOp::Kind::H;
                else if (g == "x") op.kind = quantum::GateOp::Kind::X;
                else if (g == "z") op.kind = quantum::GateOp::Kind::Z;
                else if (g == "phase") {
                    op.kind = quantum::GateOp::Kind::Phase;
                    op.theta = gj.at("theta").get<double>();
                } else if (g == "cnot") {
                    op.kind = quantum::GateOp::Kind::Cnot;
                    op.q1 = gj.at("t").get<int>();
                } else {
                    throw std::invalid_argument("network JSON: unknown gate '" + g + "'");
                }
                gates.push_back(op);
            }
            stages.emplace_back(std::move(gates));
        } else {
            throw std::invalid_argument("network JSON: unknown stage type '" + type + "'");
        }
    }

    quantum::Decoder decode;
    if (j.contains("decode")) {
        const auto& dj = j.at("decode");
        decode.measured_qubits = dj.at("measure").get<std::vector<int>>();
        for (const auto& [key, value] : dj.at("outcomes").items()) {
            const Index outcome =
                parse_bits(key, static_cast<int>(decode.measured_qubits.size()));
            decode.outcomes.emplace(outcome, decode_table_hex(value.get<std::string>(), n));
        }
    }
    return quantum::QueryNetwork(m, n, std::move(stages), std::move(decode));
}

json bound_report_to_json(const std::string& class_label, const bounds::BoundReport& report) {
    json j;
    j["class"] = class_label;
    j["size"] = report.class_size;
    j["gamma_hat"] = report.gamma.to_string();
    j["vc_dim"] = report.vc_dim;
    json classical;
    classical["similarity_lower"] = report.classical_similarity_lower;
    classical["size_lower"] = report.classical_size_lower;
    classical["exact_upper"] = report.classical_exact_upper;
    classical["pac_lower"] = report.classical_pac_lower;
    if (report.classical_pac_upper) classical["pac_upper"] = *report.classical_pac_upper;
    j["classical"] = std::move(classical);
    json q;
    q["similarity_lower"] = report.quantum_similarity_lower;
    q["size_lower"] = report.quantum_size_lower;
    q["pac_lower"] = report.quantum_pac_lower;
    j["quantum"] = std::move(q);
    return j;
}

std::string bound_report_csv_header() { return "class,model,kind,name,value"; }

namespace {

void csv_row(std::ostringstream& out, const std::string& cls, const char* model, const char* kind,
             const char* name, double value) {
    out << cls << ',' << model << ',' << kind << ',' << name << ',';
    out.precision(12);
    out << value << '\n';
}

} // namespace

std::string bound_report_to_csv(const std::string& class_label,
                                const bounds::BoundReport& report) {
    std::ostringstream out;
    csv_row(out, class_label, "classical", "lower", "similarity", report.classical_similarity_lower);
    csv_row(out, class_label, "classical", "lower", "size", report.classical_size_lower);
    csv_row(out, class_label, "classical", "upper", "exact", report.classical_exact_upper);
    csv_row(out, class_label, "classical", "lower", "pac_vc", report.classical_pac_lower);
    if (report.classical_pac_upper)
        csv_row(out, class_label, "classical", "upper", "pac_sample",
                static_cast<double>(*report.classical_pac_upper));
    csv_row(out, class_label, "quantum", "lower", "similarity", report.quantum_similarity_lower);
    csv_row(out, class_label, "quantum", "lower", "size", report.quantum_size_lower);
    csv_row(out, class_label, "quantum", "lower", "pac_vc", report.quantum_pac_lower);
    return out.str();
}

json certification_to_json(const std::string& class_label, const ConceptClass& cls,
                           const learners::CertificationReport& report,
                           const bounds::BoundReport& bounds_row) {
    json j;
    j["class"] = class_label;
    j["T"] = report.query_count;
    j["threshold"] = report.threshold;
    json per_target = json::object();
    for (std::size_t i = 0; i < report.per_target_success.size(); ++i)
        per_target[encode_table_hex(cls.at(i).table())] = report.per_target_success[i];
    j["per_target_success"] = std::move(per_target);
    j["min_success"] = report.min_success;
    j["max_undecoded_mass"] = report.max_undecoded_mass;
    j["verdict"] = report.pass ? "pass" : "fail";
    j["bounds"] = bound_report_to_json(class_label, bounds_row);
    return j;
}

json run_record_to_json(const RunRecord& record) {
    json j;
    j["target"] = record.target;
    j["class"] = record.class_label;
    j["mode"] = record.mode;
    j["seed"] = record.seed;
    j["queries"] = record.queries;
    j["hypothesis"] = record.hypothesis;
    j["success"] = record.success;
    return j;
}

} // namespace qlearn::io
