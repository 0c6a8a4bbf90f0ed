// Experiment harness: build concept classes, run learners against oracles
// and adversaries, print bound-versus-measured tables, and drive the
// verification suites.
//
// Exit codes: 0 success, 1 usage or parse error, 2 resource cap exceeded,
// 3 guarantee or suite violation.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "qlearn/bounds.hpp"
#include "qlearn/classical.hpp"
#include "qlearn/errors.hpp"
#include "qlearn/json_io.hpp"
#include "qlearn/learners.hpp"
#include "qlearn/verify.hpp"

namespace {

using qlearn::io::json;

struct ClassChoice {
    std::string label;
    std::string kind;
    qlearn::ConceptClass cls;
};

ClassChoice load_class(const std::string& inline_spec, const std::string& class_file) {
    if (!inline_spec.empty() && !class_file.empty())
        throw std::invalid_argument("give either an inline class spec or --class-file, not both");
    if (!inline_spec.empty()) {
        std::istringstream in(inline_spec);
        std::string kind;
        in >> kind;
        return {inline_spec, kind, qlearn::io::class_from_spec(inline_spec)};
    }
    if (!class_file.empty()) {
        std::ifstream in(class_file);
        if (!in) throw std::invalid_argument("cannot open class file '" + class_file + "'");
        json j = json::parse(in, nullptr, true, true);
        const std::string kind = j.value("kind", std::string("explicit"));
        const std::string label = kind + " n=" + std::to_string(j.value("n", 0));
        return {label, kind, qlearn::io::class_from_json(j)};
    }
    throw std::invalid_argument("no class given; pass an inline spec like \"parity n=3\" or --class-file");
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file '" + out_path + "'");
    out << text;
}

std::string csv_escape_label(const std::string& s) {
    // labels are of the form "kind n=K"; no commas appear, kept simple
    return s;
}

// -------------------------------------------------------------- class ----

int cmd_class(const std::string& spec, const std::string& class_file, const std::string& format,
              const std::string& out_path) {
    const ClassChoice choice = load_class(spec, class_file);
    const auto stats = qlearn::gamma_hat(choice.cls);
    const auto vc = qlearn::vc_dimension(choice.cls);

    if (format == "csv") {
        std::ostringstream out;
        out << "class,n,size,gamma_hat,witness_query,vc_dim\n";
        out << csv_escape_label(choice.label) << ',' << choice.cls.n() << ',' << choice.cls.size()
            << ',' << stats.gamma_hat.to_string() << ','
            << qlearn::format_bits(stats.witness_query, choice.cls.n()) << ',' << vc.dimension
            << '\n';
        emit(out.str(), out_path);
        return 0;
    }
    json j;
    j["class"] = choice.label;
    j["n"] = choice.cls.n();
    j["size"] = choice.cls.size();
    j["gamma_hat"] = stats.gamma_hat.to_string();
    j["gamma_witness_subset"] = stats.witness_subset;
    j["gamma_witness_query"] = qlearn::format_bits(stats.witness_query, choice.cls.n());
    j["vc_dim"] = vc.dimension;
    json witness = json::array();
    for (auto x : vc.witness) witness.push_back(qlearn::format_bits(x, choice.cls.n()));
    j["vc_witness"] = std::move(witness);
    emit(j.dump(2) + "\n", out_path);
    return 0;
}

// -------------------------------------------------------------- bounds ----

int cmd_bounds(const std::string& spec, const std::string& class_file, double epsilon,
               double delta, const std::string& format, const std::string& out_path) {
    const ClassChoice choice = load_class(spec, class_file);
    std::optional<qlearn::classical::PacParams> params;
    if (epsilon > 0.0 && delta > 0.0) params.emplace(epsilon, delta);
    const auto report = qlearn::bounds::bound_report(choice.cls, params);
    if (format == "csv") {
        emit(qlearn::io::bound_report_csv_header() + "\n" +
                 qlearn::io::bound_report_to_csv(choice.label, report),
             out_path);
        return 0;
    }
    emit(qlearn::io::bound_report_to_json(choice.label, report).dump(2) + "\n", out_path);
    return 0;
}

// --------------------------------------------------------------- learn ----

struct LearnResult {
    json output;
    bool ok = true;
    std::string violation;

    void require(bool condition, const std::string& what) {
        if (!condition && ok) {
            ok = false;
            violation = what;
        }
    }
};

void append_classical_bound_columns(json& record, const qlearn::bounds::BoundReport& bounds) {
    record["similarity_lower"] = bounds.classical_similarity_lower;
    record["size_lower"] = bounds.classical_size_lower;
    record["exact_upper"] = bounds.classical_exact_upper;
}

LearnResult learn_exact_classical(const ClassChoice& choice, const std::string& mode,
                                  std::uint64_t seed) {
    using qlearn::classical::MembershipOracle;
    const auto& cls = choice.cls;
    const auto bounds = qlearn::bounds::bound_report(cls);
    const auto stats = qlearn::gamma_hat(cls);

    LearnResult result;
    json records = json::array();

    if (mode == "honest") {
        std::size_t max_queries = 0;
        for (const auto& target : cls.concepts()) {
            auto oracle = MembershipOracle::honest(target);
            const auto run = qlearn::classical::greedy_exact_learner(cls, oracle);
            const bool success = run.hypothesis == target;
            max_queries = std::max(max_queries, run.queries);
            json record = qlearn::io::run_record_to_json(
                {qlearn::io::encode_table_hex(target.table()), choice.label, mode, seed,
                 run.queries, qlearn::io::encode_table_hex(run.hypothesis.table()), success});
            append_classical_bound_columns(record, bounds);
            records.push_back(std::move(record));
            result.require(success, "hypothesis differs from target");
        }
        result.require(static_cast<double>(max_queries) <= bounds.classical_exact_upper,
                       "query count exceeded the upper bound");
        result.output["summary"] = {{"max_queries", max_queries},
                                    {"exact_upper", bounds.classical_exact_upper},
                                    {"similarity_lower", bounds.classical_similarity_lower},
                                    {"size_lower", bounds.classical_size_lower}};
    } else {
        auto oracle = mode == "adversary-similarity"
                          ? MembershipOracle::similarity_adversary(cls.subset(stats.witness_subset))
                          : MembershipOracle::majority_adversary(cls);
        const auto run = qlearn::classical::greedy_exact_learner(cls, oracle);
        std::size_t pinned = oracle.live_history().size() + 1;
        for (std::size_t i = 0; i < oracle.live_history().size(); ++i) {
            if (oracle.live_history()[i] < 2) {
                pinned = i + 1;
                break;
            }
        }
        const double lower = mode == "adversary-similarity"
                                 ? bounds.classical_similarity_lower
                                 : std::ceil(std::log2(static_cast<double>(cls.size()))) - 1.0;
        json record = qlearn::io::run_record_to_json(
            {"(adversary)", choice.label, mode, seed, run.queries,
             qlearn::io::encode_table_hex(run.hypothesis.table()), true});
        record["queries_until_pinned"] = pinned;
        append_classical_bound_columns(record, bounds);
        records.push_back(std::move(record));
        result.require(static_cast<double>(pinned) >= lower,
                       "adversary was pinned in fewer queries than the lower bound");
        result.require(static_cast<double>(run.queries) <= bounds.classical_exact_upper,
                       "query count exceeded the upper bound");
        result.output["summary"] = {{"queries", run.queries},
                                    {"queries_until_pinned", pinned},
                                    {"lower_bound", lower},
                                    {"exact_upper", bounds.classical_exact_upper}};
    }
    result.output["records"] = std::move(records);
    result.output["bounds"] = qlearn::io::bound_report_to_json(choice.label, bounds);
    return result;
}

LearnResult learn_exact_quantum(const ClassChoice& choice, const std::string& network_file,
                                double threshold) {
    const auto& cls = choice.cls;
    std::optional<qlearn::quantum::QueryNetwork> net;
    if (!network_file.empty()) {
        std::ifstream in(network_file);
        if (!in) throw std::invalid_argument("cannot open network file '" + network_file + "'");
        net.emplace(qlearn::io::network_from_json(json::parse(in, nullptr, true, true)));
    } else {
        if (choice.kind != "parity")
            throw std::invalid_argument(
                "exact-quantum ships a parity learner only; pass a parity class or --network-file");
        net.emplace(qlearn::learners::build_parity_learner(cls.n()));
    }

    const auto cert = qlearn::learners::certify_learner(*net, cls, threshold);
    const auto bounds = qlearn::bounds::bound_report(cls);
    LearnResult result;
    result.output = qlearn::io::certification_to_json(choice.label, cls, cert, bounds);
    result.require(cert.pass, "certification fell below the success threshold");
    result.require(cert.query_count >= bounds.quantum_similarity_lower,
                   "query count undercuts the quantum similarity bound");
    result.require(cert.query_count >= bounds.quantum_size_lower,
                   "query count undercuts the quantum size bound");
    return result;
}

LearnResult learn_pac(const ClassChoice& choice, bool quantum, double epsilon, double delta,
                      const std::string& dist_name, std::uint64_t seed, int trials) {
    const auto& cls = choice.cls;
    const qlearn::classical::PacParams params(epsilon, delta);
    const qlearn::Distribution dist = dist_name == "hard"
                                          ? qlearn::classical::hard_pac_distribution(cls)
                                          : qlearn::Distribution::uniform(cls.n());
    const auto bounds = qlearn::bounds::bound_report(cls, params);
    const int sample_size =
        qlearn::classical::pac_sample_size(params, qlearn::vc_dimension(cls).dimension);

    LearnResult result;
    json records = json::array();
    int ok_count = 0;
    for (int trial = 0; trial < trials; ++trial) {
        const auto& target = cls.at(static_cast<std::size_t>(trial) % cls.size());
        const std::uint64_t trial_seed = qlearn::derive_seed(seed, static_cast<std::uint64_t>(trial));
        qlearn::Concept hypothesis = [&] {
            if (quantum) {
                qlearn::Rng rng(trial_seed);
                return qlearn::learners::qex_sampling_learner(cls, target, dist, params, rng);
            }
            qlearn::classical::ExampleOracle oracle(target, dist, trial_seed);
            return qlearn::classical::pac_consistent_learner(cls, oracle, params);
        }();
        const double error = qlearn::classical::empirical_error(hypothesis, target, dist);
        const bool success = error <= epsilon;
        if (success) ++ok_count;
        json record = qlearn::io::run_record_to_json(
            {qlearn::io::encode_table_hex(target.table()), choice.label,
             quantum ? "pac-quantum" : "pac-classical", trial_seed, static_cast<std::size_t>(sample_size),
             qlearn::io::encode_table_hex(hypothesis.table()), success});
        record["trial"] = trial;
        record["error"] = error;
        records.push_back(std::move(record));
    }
    const double rate = trials > 0 ? static_cast<double>(ok_count) / trials : 1.0;
    result.require(rate >= 1.0 - delta, "success rate fell below 1 - delta");
    result.output["summary"] = {{"trials", trials},
                                {"successes", ok_count},
                                {"success_rate", rate},
                                {"required_rate", 1.0 - delta},
                                {"sample_size", sample_size},
                                {"distribution", dist_name}};
    result.output["records"] = std::move(records);
    result.output["bounds"] = qlearn::io::bound_report_to_json(choice.label, bounds);
    return result;
}

std::string learn_records_csv(const json& output, const std::string& task) {
    std::ostringstream out;
    out << "class,task,mode,seed,target,queries,hypothesis,success,error\n";
    for (const auto& r : output.at("records")) {
        out << r.value("class", "") << ',' << task << ',' << r.value("mode", "") << ','
            << r.value("seed", std::uint64_t{0}) << ',' << r.value("target", "") << ','
            << r.value("queries", std::size_t{0}) << ',' << r.value("hypothesis", "") << ','
            << (r.value("success", false) ? 1 : 0) << ',';
        if (r.contains("error")) out << r["error"].get<double>();
        out << '\n';
    }
    return out.str();
}

std::string certification_csv(const json& output) {
    std::ostringstream out;
    out.precision(12);
    out << "class,task,target,success,T,min_success,verdict\n";
    for (const auto& [target, success] : output.at("per_target_success").items())
        out << output.value("class", "") << ",exact-quantum," << target << ','
            << success.get<double>() << ',' << output.value("T", 0) << ','
            << output.value("min_success", 0.0) << ',' << output.value("verdict", "") << '\n';
    return out.str();
}

int cmd_learn(const std::string& task, const std::string& spec, const std::string& class_file,
              const std::string& mode, const std::string& dist_name,
              const std::string& network_file, double epsilon, double delta, std::uint64_t seed,
              int trials, double threshold, const std::string& format,
              const std::string& out_path) {
    const ClassChoice choice = load_class(spec, class_file);
    LearnResult result;
    if (task == "exact-classical")
        result = learn_exact_classical(choice, mode, seed);
    else if (task == "exact-quantum")
        result = learn_exact_quantum(choice, network_file, threshold);
    else if (task == "pac-classical")
        result = learn_pac(choice, false, epsilon, delta, dist_name, seed, trials);
    else if (task == "pac-quantum")
        result = learn_pac(choice, true, epsilon, delta, dist_name, seed, trials);
    else
        throw std::invalid_argument("unknown task '" + task + "'");

    result.output["config"] = {{"class", choice.label}, {"task", task},   {"mode", mode},
                               {"epsilon", epsilon},    {"delta", delta}, {"seed", seed},
                               {"trials", trials}};
    if (!result.ok) result.output["violation"] = result.violation;

    if (format == "csv" && result.output.contains("records"))
        emit(learn_records_csv(result.output, task), out_path);
    else if (format == "csv" && result.output.contains("per_target_success"))
        emit(certification_csv(result.output), out_path);
    else
        emit(result.output.dump(2) + "\n", out_path);

    if (!result.ok) {
        std::cerr << "guarantee violation: " << result.violation << "\n";
        return 3;
    }
    return 0;
}

// -------------------------------------------------------------- verify ----

int cmd_verify(const std::vector<std::string>& suites, std::uint64_t seed,
               const std::string& out_path) {
    const auto results = qlearn::verify::run_suites(suites, seed);
    json j;
    j["seed"] = seed;
    json rows = json::array();
    bool all_pass = true;
    for (const auto& r : results) {
        rows.push_back({{"name", r.name}, {"pass", r.pass}, {"checks", r.checks},
                        {"detail", r.detail}});
        all_pass = all_pass && r.pass;
        std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.checks << " checks)"
                  << (r.detail.empty() ? "" : ": " + r.detail) << "\n";
    }
    j["suites"] = std::move(rows);
    j["pass"] = all_pass;
    emit(j.dump(2) + "\n", out_path);
    return all_pass ? 0 : 3;
}

// -------------------------------------------------------------- report ----

int cmd_report(double epsilon, double delta, const std::string& format,
               const std::string& out_path) {
    const qlearn::classical::PacParams params(epsilon, delta);
    json rows = json::array();
    std::ostringstream csv;
    csv << "class,size,gamma_hat,vc_dim,similarity_lower,size_lower,exact_upper,"
           "greedy_max_queries,greedy_exact,quantum_similarity_lower,quantum_size_lower,"
           "quantum_T,quantum_min_success\n";

    for (const auto& [label, cls] : qlearn::verify::built_in_small_classes()) {
        const auto bounds = qlearn::bounds::bound_report(cls, params);
        std::size_t max_queries = 0;
        bool exact = true;
        for (const auto& target : cls.concepts()) {
            auto oracle = qlearn::classical::MembershipOracle::honest(target);
            const auto run = qlearn::classical::greedy_exact_learner(cls, oracle);
            max_queries = std::max(max_queries, run.queries);
            exact = exact && (run.hypothesis == target);
        }
        std::optional<qlearn::learners::CertificationReport> cert;
        if (label.rfind("parity", 0) == 0)
            cert = qlearn::learners::certify_learner(
                qlearn::learners::build_parity_learner(cls.n()), cls);

        json row;
        row["class"] = label;
        row["size"] = cls.size();
        row["gamma_hat"] = bounds.gamma.to_string();
        row["vc_dim"] = bounds.vc_dim;
        row["similarity_lower"] = bounds.classical_similarity_lower;
        row["size_lower"] = bounds.classical_size_lower;
        row["exact_upper"] = bounds.classical_exact_upper;
        row["greedy_max_queries"] = max_queries;
        row["greedy_exact"] = exact;
        row["quantum_similarity_lower"] = bounds.quantum_similarity_lower;
        row["quantum_size_lower"] = bounds.quantum_size_lower;
        if (cert) {
            row["quantum_T"] = cert->query_count;
            row["quantum_min_success"] = cert->min_success;
        }
        rows.push_back(row);

        csv.precision(12);
        csv << label << ',' << cls.size() << ',' << bounds.gamma.to_string() << ','
            << bounds.vc_dim << ',' << bounds.classical_similarity_lower << ','
            << bounds.classical_size_lower << ',' << bounds.classical_exact_upper << ','
            << max_queries << ',' << (exact ? 1 : 0) << ',' << bounds.quantum_similarity_lower
            << ',' << bounds.quantum_size_lower << ',';
        if (cert)
            csv << cert->query_count << ',' << cert->min_success;
        else
            csv << ',';
        csv << '\n';
    }

    if (format == "csv")
        emit(csv.str(), out_path);
    else
        emit(json{{"classes", rows}}.dump(2) + "\n", out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum versus classical learning laboratory"};
    app.require_subcommand(1);

    std::string spec, class_file, format = "json", out_path;
    std::string task, mode = "honest", dist_name = "uniform", network_file;
    double epsilon = 0.1, delta = 0.1, threshold = 2.0 / 3.0;
    std::uint64_t seed = 0;
    int trials = 200;
    std::vector<std::string> suites;

    auto add_class_options = [&](CLI::App* cmd, bool positional) {
        if (positional) cmd->add_option("spec", spec, "inline class spec, e.g. \"parity n=3\"");
        cmd->add_option("--class", spec, "inline class spec, e.g. \"parity n=3\"");
        cmd->add_option("--class-file", class_file, "JSON class description");
    };
    auto add_output_options = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--out", out_path, "output file (default stdout)");
    };

    auto* cls_cmd = app.add_subcommand("class", "summarize a concept class");
    add_class_options(cls_cmd, true);
    add_output_options(cls_cmd);

    auto* bounds_cmd = app.add_subcommand("bounds", "print the bound report for a class");
    add_class_options(bounds_cmd, true);
    bounds_cmd->add_option("--epsilon", epsilon, "PAC accuracy (enables the sample-size row)");
    bounds_cmd->add_option("--delta", delta, "PAC confidence");
    add_output_options(bounds_cmd);

    auto* learn_cmd = app.add_subcommand("learn", "run a learner and check its guarantees");
    add_class_options(learn_cmd, false);
    learn_cmd->add_option("--task", task, "exact-classical|exact-quantum|pac-classical|pac-quantum")
        ->required()
        ->check(CLI::IsMember({"exact-classical", "exact-quantum", "pac-classical", "pac-quantum"}));
    learn_cmd->add_option("--mode", mode, "honest|adversary-similarity|adversary-majority")
        ->check(CLI::IsMember({"honest", "adversary-similarity", "adversary-majority"}));
    learn_cmd->add_option("--dist", dist_name, "uniform|hard (PAC tasks)")
        ->check(CLI::IsMember({"uniform", "hard"}));
    learn_cmd->add_option("--network-file", network_file, "JSON network (exact-quantum)");
    learn_cmd->add_option("--epsilon", epsilon, "PAC accuracy");
    learn_cmd->add_option("--delta", delta, "PAC confidence");
    learn_cmd->add_option("--seed", seed, "base RNG seed (default 0)");
    learn_cmd->add_option("--trials", trials, "PAC trial count (default 200)");
    learn_cmd->add_option("--threshold", threshold, "certification threshold (default 2/3)");
    add_output_options(learn_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "run the property suites");
    verify_cmd->add_option("--suite", suites, "suite name (repeatable; default all)");
    verify_cmd->add_option("--seed", seed, "base RNG seed (default 0)");
    verify_cmd->add_option("--out", out_path, "output file (default stdout)");

    auto* report_cmd = app.add_subcommand("report", "bound-versus-measured table, built-in classes");
    report_cmd->add_option("--epsilon", epsilon, "PAC accuracy");
    report_cmd->add_option("--delta", delta, "PAC confidence");
    add_output_options(report_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        if (cls_cmd->parsed()) return cmd_class(spec, class_file, format, out_path);
        if (bounds_cmd->parsed()) {
            const bool want_pac = bounds_cmd->count("--epsilon") || bounds_cmd->count("--delta");
            return cmd_bounds(spec, class_file, want_pac ? epsilon : 0.0, want_pac ? delta : 0.0,
                              format, out_path);
        }
        if (learn_cmd->parsed())
            return cmd_learn(task, spec, class_file, mode, dist_name, network_file, epsilon, delta,
                             seed, trials, threshold, format, out_path);
        if (verify_cmd->parsed()) return cmd_verify(suites, seed, out_path);
        if (report_cmd->parsed()) return cmd_report(epsilon, delta, format, out_path);
        std::cerr << "no subcommand given\n";
        return 1;
    } catch (const qlearn::CapExceeded& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 2;
    } catch (const qlearn::ProtocolViolation& e) {
        std::cerr << "protocol violation: " << e.what() << "\n";
        return 3;
    } catch (const json::exception& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
