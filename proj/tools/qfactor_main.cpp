// Command-line front end: factor odd biprimes through the clause pipeline,
// inspect the preprocessing, export circuits, or run the built-in checks.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qfactor/pipeline.hpp"
#include "qfactor/verify.hpp"

namespace {

qfactor::RunOptions make_options(const std::string& method, std::uint64_t seed,
                                 int max_qubits, bool trial_division) {
    qfactor::RunOptions opt;
    opt.method = method;
    opt.seed = seed;
    opt.max_qubits = max_qubits;
    opt.trial_division = trial_division;
    return opt;
}

int run_factor_cmd(std::uint64_t n, const qfactor::RunOptions& opt, bool as_json,
                   bool dump_trace) {
    try {
        qfactor::RunReport report = qfactor::run_factor(n, opt);
        if (as_json) {
            std::cout << qfactor::report_to_json(report).dump(2) << "\n";
        } else {
            std::cout << qfactor::report_to_text(report);
            if (dump_trace) {
                std::cout << "\nsimplification trace:\n";
                for (const auto& s : report.trace.steps)
                    std::cout << "  " << qfactor::to_string(s) << "\n";
            }
        }
        return report.ok ? 0 : 2;
    } catch (const qfactor::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"factors odd biprimes by compiling the problem into binary "
                 "clauses, simplifying them, synthesizing a feasibility-labeling "
                 "circuit, and searching the simulated state vector"};
    app.require_subcommand(1);

    std::uint64_t n = 0;
    std::string method = "exhaustive";
    std::uint64_t seed = 1;
    int max_qubits = 0;
    bool as_json = false;
    bool trial_division = false;
    bool dump_trace = false;
    std::string out_path;

    auto* factor = app.add_subcommand("factor", "find the factors of N");
    factor->add_option("N", n, "odd biprime to factor")->required();
    factor->add_option("--method", method, "search method: exhaustive or vqs")
        ->check(CLI::IsMember({"exhaustive", "vqs"}));
    factor->add_flag("--json", as_json, "emit a JSON report");
    factor->add_option("--seed", seed, "random seed for sampling and the variational search");
    factor->add_option("--max-qubits", max_qubits, "qubit budget (0 = automatic per method)");
    factor->add_flag("--trial-division", trial_division,
                     "prune bit-length candidates by trial division");
    factor->add_flag("--dump-trace", dump_trace, "append the simplification trace");

    auto* inspect = app.add_subcommand(
        "inspect", "print the multiplication table, raw clauses, trace, and reduction");
    inspect->add_option("N", n, "odd biprime to inspect")->required();
    inspect->add_flag("--trial-division", trial_division,
                      "prune bit-length candidates by trial division");

    auto* circuit = app.add_subcommand("circuit", "write the labeling circuit as OpenQASM");
    circuit->add_option("N", n, "odd biprime to compile")->required();
    circuit->add_option("--out", out_path, "output file (stdout if omitted)");

    auto* verify = app.add_subcommand("verify", "run the built-in check suite");

    CLI11_PARSE(app, argc, argv);

    if (factor->parsed())
        return run_factor_cmd(n, make_options(method, seed, max_qubits, trial_division),
                              as_json, dump_trace);

    if (inspect->parsed()) {
        try {
            qfactor::RunReport report =
                qfactor::run_factor(n, make_options("exhaustive", seed, max_qubits,
                                                    trial_division));
            std::cout << qfactor::inspect_text(report);
            return report.ok ? 0 : 2;
        } catch (const qfactor::Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }

    if (circuit->parsed()) {
        try {
            qfactor::RunReport report =
                qfactor::run_factor(n, make_options("exhaustive", seed, max_qubits, false));
            if (!report.ok || !report.circuit) {
                std::cerr << "error: no circuit for " << n
                          << (report.ok ? " (preprocessing fixed every bit)" : "") << "\n";
                return 2;
            }
            const std::string qasm = report.circuit->to_qasm();
            if (out_path.empty()) {
                std::cout << qasm;
            } else {
                std::ofstream f(out_path);
                if (!f) {
                    std::cerr << "error: cannot write " << out_path << "\n";
                    return 1;
                }
                f << qasm;
            }
            return 0;
        } catch (const qfactor::Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }

    if (verify->parsed()) {
        const auto results = qfactor::run_builtin_checks(std::cout);
        int failed = 0;
        for (const auto& r : results)
            if (!r.passed) ++failed;
        return failed == 0 ? 0 : 1;
    }
    return 1;
}
