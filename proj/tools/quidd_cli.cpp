// Command-line front end: build DDs from circuit files or serialized DDs,
// run equivalence checks, emit JSON reports, run the benchmark suites.
//
// Exit codes: 0 equivalent / check passed, 1 not equivalent, 2 usage or
// parse error, 3 numeric failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "quidd/bench.hpp"
#include "quidd/build.hpp"
#include "quidd/dd.hpp"
#include "quidd/equiv.hpp"
#include "quidd/serialize.hpp"

namespace {

using nlohmann::json;
using namespace quidd;

constexpr int kExitEquivalent = 0;
constexpr int kExitNotEquivalent = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool looks_like_dd(const std::string& text) { return text.rfind("quidd ", 0) == 0; }

struct LoadedInput {
    QuIDD dd;
    double build_ms = 0.0;
};

LoadedInput load_input(DDManager& m, const std::string& path, bool as_operator) {
    const std::string text = read_file(path);
    const auto t0 = std::chrono::steady_clock::now();
    QuIDD dd;
    if (looks_like_dd(text)) {
        dd = read_dd_string(text, m);
    } else {
        const Circuit c = parse_circuit(text);
        dd = as_operator ? build_operator(m, c) : build_state(m, c);
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return {dd, ms};
}

EquivVerdict dispatch_check(const QuIDD& a, const QuIDD& b, const std::string& method,
                            CheckLevel level) {
    if (method == "auto") return auto_check(a, b, level);
    if (method == "gprc") return gprc(a, b);
    if (method == "nodecount") return node_count_filter(a, b);
    if (method == "merge") return non_zero_terminal_merge(a, b);
    if (method == "moddd") return mod_dd_compare(a, b);
    if (method == "elemdiv") return elementwise_div_states(a, b);
    if (method == "rpdiv") return rp_div_operators(a, b);
    if (method == "inner")
        return level == CheckLevel::Relative ? rel_mod_inner(a, b) : global_inner_product(a, b);
    if (method == "matrix")
        return level == CheckLevel::Relative ? rel_mod_matrix(a, b) : global_matrix_product(a, b);
    throw std::invalid_argument("unknown method '" + method + "'");
}

json verdict_report(const EquivVerdict& v, const LoadedInput& a, const LoadedInput& b,
                    int qubits, const std::string& phases_path) {
    json rep;
    rep["method"] = to_string(v.method);
    rep["verdict"] = to_string(v.outcome);
    rep["equivalent"] = v.equivalent();
    rep["phase"] = nullptr;
    if (v.phase) rep["phase"] = {{"re", v.phase->real()}, {"im", v.phase->imag()}};
    rep["phases_file"] = nullptr;
    if (!phases_path.empty() && v.phases) rep["phases_file"] = phases_path;
    rep["side"] = v.side == PhaseSide::State ? "state" : (v.side == PhaseSide::Left ? "left" : "right");
    rep["nodes_a"] = v.stats.nodes_a;
    rep["nodes_b"] = v.stats.nodes_b;
    rep["build_ms"] = a.build_ms + b.build_ms;
    rep["check_ms"] = v.stats.check_ms;
    rep["qubits"] = qubits;
    json ran = json::array(), skipped = json::array();
    for (Method m : v.stats.ran) ran.push_back(to_string(m));
    for (Method m : v.stats.skipped) skipped.push_back(to_string(m));
    rep["ran"] = ran;
    rep["skipped"] = skipped;
    return rep;
}

void print_human(const json& rep, std::ostream& os) {
    os << "verdict:  " << rep["verdict"].get<std::string>() << "  (method "
       << rep["method"].get<std::string>() << ")\n";
    if (!rep["phase"].is_null())
        os << "phase:    " << rep["phase"]["re"].get<double>() << " + "
           << rep["phase"]["im"].get<double>() << "i\n";
    if (!rep["phases_file"].is_null())
        os << "phases:   " << rep["phases_file"].get<std::string>() << "\n";
    os << "qubits:   " << rep["qubits"].get<int>() << "\n"
       << "nodes:    " << rep["nodes_a"].get<std::size_t>() << " / "
       << rep["nodes_b"].get<std::size_t>() << "\n"
       << "build_ms: " << rep["build_ms"].get<double>() << "\n"
       << "check_ms: " << rep["check_ms"].get<double>() << "\n";
}

int cmd_check(const std::string& file_a, const std::string& file_b, const std::string& level_str,
              const std::string& method, bool as_operator, bool as_json, bool quiet,
              const std::string& phases_out) {
    const CheckLevel level = level_str == "exact"
                                 ? CheckLevel::Exact
                                 : (level_str == "global" ? CheckLevel::Global : CheckLevel::Relative);
    DDManager m;
    const LoadedInput a = load_input(m, file_a, as_operator);
    const LoadedInput b = load_input(m, file_b, as_operator);
    if (a.dd.kind != b.dd.kind) throw std::invalid_argument("inputs mix state and operator DDs");
    if (a.dd.n_qubits != b.dd.n_qubits)
        throw std::invalid_argument("inputs have different qubit counts");

    const EquivVerdict v = dispatch_check(a.dd, b.dd, method, level);

    if (!phases_out.empty() && v.phases) {
        std::ofstream out(phases_out);
        if (!out) throw std::invalid_argument("cannot write '" + phases_out + "'");
        write_dd(out, *v.phases);
    }
    const json rep = verdict_report(v, a, b, a.dd.n_qubits, v.phases ? phases_out : "");
    if (!quiet) {
        if (as_json)
            std::cout << rep.dump(2) << "\n";
        else
            print_human(rep, std::cout);
    }
    const bool ok = v.equivalent() || v.outcome == Outcome::FilterPassed;
    return ok ? kExitEquivalent : kExitNotEquivalent;
}

std::vector<int> parse_sizes(const std::string& spec) {
    // "8,16,24" or "8..64" or "8..64:8"
    std::vector<int> out;
    const auto dots = spec.find("..");
    if (dots != std::string::npos) {
        const int lo = std::stoi(spec.substr(0, dots));
        std::string rest = spec.substr(dots + 2);
        int step = 1;
        if (const auto colon = rest.find(':'); colon != std::string::npos) {
            step = std::stoi(rest.substr(colon + 1));
            rest = rest.substr(0, colon);
        }
        const int hi = std::stoi(rest);
        if (step <= 0 || hi < lo) throw std::invalid_argument("bad size range '" + spec + "'");
        for (int v = lo; v <= hi; v += step) out.push_back(v);
        return out;
    }
    std::istringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    if (out.empty()) throw std::invalid_argument("empty size list");
    return out;
}

int cmd_bench(const std::string& suite_str, const std::string& sizes_str, bool as_json,
              bool quiet) {
    const BenchSuite suite = parse_suite(suite_str);
    const std::vector<int> sizes = parse_sizes(sizes_str);
    const BenchResult res = run_bench(suite, sizes);

    json out;
    out["suite"] = to_string(res.suite);
    json rows = json::array();
    for (const BenchRow& r : res.rows) {
        json row;
        row["n"] = r.n;
        row["qubits"] = r.qubits;
        row["nodes"] = r.nodes;
        row["build_ms"] = r.build_ms;
        row["check_ms"] = r.check_ms;
        row["verdicts"] = r.verdicts;
        rows.push_back(std::move(row));
    }
    out["rows"] = rows;
    json fits;
    fits["nodes"] = {{"coeffs", res.nodes_fit.coeffs}, {"r2", res.nodes_fit.r_squared}};
    for (const auto& kv : res.time_fits)
        fits["check_ms_" + kv.first] = {{"coeffs", kv.second.coeffs}, {"r2", kv.second.r_squared}};
    out["fits"] = fits;

    if (!quiet) {
        if (as_json) {
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << "suite " << to_string(res.suite) << "\n";
            for (const BenchRow& r : res.rows) {
                std::cout << "n=" << r.n << " qubits=" << r.qubits << " nodes=" << r.nodes
                          << " build_ms=" << r.build_ms;
                for (const auto& kv : r.check_ms)
                    std::cout << " " << kv.first << "_ms=" << kv.second;
                std::cout << "\n";
            }
            std::cout << "nodes fit: " << res.nodes_fit.coeffs[1] << "*n + "
                      << res.nodes_fit.coeffs[0] << "  (R2 " << res.nodes_fit.r_squared << ")\n";
        }
    }
    return kExitEquivalent;
}

int cmd_dd_serialize(const std::string& input, const std::string& output, bool as_operator) {
    DDManager m;
    const LoadedInput in = load_input(m, input, as_operator);
    std::ofstream out(output);
    if (!out) throw std::invalid_argument("cannot write '" + output + "'");
    write_dd(out, in.dd);
    return kExitEquivalent;
}

int cmd_dd_deserialize(const std::string& input, const std::string& output) {
    DDManager m;
    const std::string text = read_file(input);
    if (!looks_like_dd(text)) throw std::invalid_argument("'" + input + "' is not a DD file");
    const QuIDD dd = read_dd_string(text, m);
    if (!output.empty()) {
        std::ofstream out(output);
        if (!out) throw std::invalid_argument("cannot write '" + output + "'");
        write_dd(out, dd);
    } else {
        std::cout << "ok: " << (dd.kind == DDKind::State ? "state" : "operator") << " over "
                  << dd.n_qubits << " qubits, " << dd.manager().node_count(dd.root) << " nodes\n";
    }
    return kExitEquivalent;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QuIDD equivalence checking tool"};
    app.require_subcommand(1);

    // check
    std::string file_a, file_b, level = "global", method = "auto", phases_out;
    bool as_operator = false, as_json = false, quiet = false;
    CLI::App* check = app.add_subcommand("check", "check equivalence of two circuits or DDs");
    check->add_option("fileA", file_a)->required();
    check->add_option("fileB", file_b)->required();
    check->add_option("--level", level)->check(CLI::IsMember({"exact", "global", "relative"}));
    check->add_option("--method", method)
        ->check(CLI::IsMember({"auto", "inner", "matrix", "gprc", "nodecount", "elemdiv", "rpdiv",
                               "merge", "moddd"}));
    check->add_flag("--operator", as_operator, "build circuit inputs as operators");
    check->add_flag("--json", as_json);
    check->add_flag("--quiet", quiet);
    check->add_option("--phases-out", phases_out, "write relative-phase DD here");

    // bench
    std::string suite, sizes;
    bool bench_json = false, bench_quiet = false;
    CLI::App* bench = app.add_subcommand("bench", "run a benchmark suite");
    bench->add_option("suite", suite)->required()
        ->check(CLI::IsMember({"grover", "epr", "hamiltonian", "qft", "modexp"}));
    bench->add_option("--sizes", sizes)->required();
    bench->add_flag("--json", bench_json);
    bench->add_flag("--quiet", bench_quiet);

    // dd
    std::string dd_mode, dd_in, dd_out;
    bool dd_operator = false;
    CLI::App* dd = app.add_subcommand("dd", "serialize / deserialize decision diagrams");
    dd->add_option("mode", dd_mode)->required()->check(CLI::IsMember({"serialize", "deserialize"}));
    dd->add_option("input", dd_in)->required();
    dd->add_option("-o,--output", dd_out);
    dd->add_flag("--operator", dd_operator, "build circuit input as an operator");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (check->parsed())
            return cmd_check(file_a, file_b, level, method, as_operator, as_json, quiet, phases_out);
        if (bench->parsed()) return cmd_bench(suite, sizes, bench_json, bench_quiet);
        if (dd->parsed()) {
            if (dd_mode == "serialize") {
                if (dd_out.empty()) throw std::invalid_argument("serialize needs -o <output>");
                return cmd_dd_serialize(dd_in, dd_out, dd_operator);
            }
            return cmd_dd_deserialize(dd_in, dd_out);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const ArithmeticError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
