#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qfactor/search.hpp"

namespace qfactor {

// ---------------------------------------------------------------------------
// Options and report
// ---------------------------------------------------------------------------

struct RunOptions {
    std::string method{"exhaustive"}; // or "vqs"
    std::uint64_t seed{1};
    // 0 = automatic: the state-vector cap when the search simulates
    // amplitudes (vqs), a wider budget when it only traces basis states.
    int max_qubits{0};
    bool trial_division{false};
    VqsConfig vqs{};
    SynthOptions synth{};
};

inline int effective_qubit_budget(const RunOptions& opt) {
    if (opt.max_qubits > 0) return opt.max_qubits;
    return opt.method == "vqs" ? StateVector::kMaxQubits : 64;
}

struct CandidateOutcome {
    int n_p{0};
    int n_q{0};
    std::string status; // "ok", "unsatisfiable", "no-factors", "capacity"
};

struct RunReport {
    std::uint64_t n{0};
    int n_bits{0};
    bool ok{false};
    int n_p{0};
    int n_q{0};

    MultiplicationTable table;
    ClauseSystem raw;
    ReducedSystem reduced;
    SimplificationTrace trace;

    std::optional<Circuit> circuit;
    std::optional<QubitLayout> layout;

    std::vector<Assignment> assignments;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> factors;
    std::string method;
    std::uint64_t seed{0};
    std::optional<VqsResult> vqs;

    std::vector<CandidateOutcome> tried;
    double elapsed_seconds{0.0};
};

// ---------------------------------------------------------------------------
// End-to-end run
// ---------------------------------------------------------------------------

/// Compile, simplify, synthesize, and search one bit-length candidate after
/// another (cheapest first) until factors appear.
inline RunReport run_factor(std::uint64_t n, const RunOptions& opt = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    const FactorInstance inst = make_instance(n);
    const BitLengthPlan plan = estimate_bit_lengths(inst, opt.trial_division);

    RunReport report;
    report.n = n;
    report.n_bits = inst.n_bits;
    report.method = opt.method;
    report.seed = opt.seed;

    for (const auto& [np, nq] : plan.candidates) {
        CandidateOutcome outcome{np, nq, "ok"};
        try {
            MultiplicationTable table = build_multiplication_table(np, nq, n);
            ClauseSystem raw = generate_clauses(table);
            SimplifyResult simp = simplify(raw);

            std::vector<Assignment> feasible;
            std::optional<Circuit> circuit;
            std::optional<QubitLayout> layout;
            std::optional<VqsResult> vqs_result;

            if (simp.reduced.residual.empty()) {
                feasible.push_back(Assignment{}); // bindings pin everything
            } else {
                SynthOptions synth = opt.synth;
                synth.max_qubits = effective_qubit_budget(opt);
                auto [c, lay] = synth_qfl(simp.reduced, synth);
                if (opt.method == "vqs") {
                    VqsConfig cfg = opt.vqs;
                    cfg.seed = opt.seed;
                    VqsResult r = vqs_optimize(cfg, c, lay);
                    for (const auto& [index, prob] : r.readout.conditional) {
                        if (prob <= 0.0) continue;
                        Assignment a;
                        for (int k = 0; k < lay.data_count(); ++k)
                            a[lay.data_vars[static_cast<std::size_t>(k)]] =
                                (index >> k) & 1;
                        feasible.push_back(std::move(a));
                    }
                    vqs_result = std::move(r);
                } else {
                    feasible = exhaustive_search(c, lay);
                }
                circuit = std::move(c);
                layout = std::move(lay);
            }

            auto factors = extract_factors(feasible, simp.reduced);

            report.ok = true;
            report.n_p = np;
            report.n_q = nq;
            report.table = std::move(table);
            report.raw = std::move(raw);
            report.reduced = std::move(simp.reduced);
            report.trace = std::move(simp.trace);
            report.circuit = std::move(circuit);
            report.layout = std::move(layout);
            report.assignments = std::move(feasible);
            report.factors = std::move(factors);
            report.vqs = std::move(vqs_result);
            report.tried.push_back(outcome);
            break;
        } catch (const UnsatisfiableError&) {
            outcome.status = "unsatisfiable";
        } catch (const NoValidFactorsError&) {
            outcome.status = "no-factors";
        } catch (const CapacityError&) {
            outcome.status = "capacity";
        } catch (const TooLargeError&) {
            outcome.status = "capacity";
        }
        report.tried.push_back(outcome);
    }

    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

/// Interior bits (p_1..p_{n_p-2}, q_1..q_{n_q-2}) of one feasible solution,
/// bound bits filled from the binding set. This is the tuple layout the
/// result tables use.
inline std::vector<int> interior_bits(const Assignment& a,
                                      const ReducedSystem& reduced) {
    std::vector<int> row;
    for (int k = 1; k <= reduced.n_p - 2; ++k) {
        auto b = detail::bit_from(a, reduced, p_bit(k));
        row.push_back(b.value_or(false) ? 1 : 0);
    }
    for (int k = 1; k <= reduced.n_q - 2; ++k) {
        auto b = detail::bit_from(a, reduced, q_bit(k));
        row.push_back(b.value_or(false) ? 1 : 0);
    }
    return row;
}

inline nlohmann::ordered_json report_to_json(const RunReport& r) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["n"] = r.n;
    j["n_bits"] = r.n_bits;
    j["ok"] = r.ok;
    j["method"] = r.method;
    j["seed"] = r.seed;
    if (r.ok) {
        j["plan"] = {{"n_p", r.n_p}, {"n_q", r.n_q}};
        auto bindings = nlohmann::ordered_json::array();
        for (const Binding& b : r.reduced.bindings) bindings.push_back(to_string(b));
        j["bindings"] = bindings;
        auto residual = nlohmann::ordered_json::array();
        for (const Clause& c : r.reduced.residual) residual.push_back(to_string(c));
        j["residual"] = residual;
        auto rows = nlohmann::ordered_json::array();
        for (const Assignment& a : r.assignments) {
            nlohmann::ordered_json row;
            for (const auto& [v, val] : a) row[to_string(v)] = val ? 1 : 0;
            rows.push_back(row);
        }
        j["assignments"] = rows;
        auto factors = nlohmann::ordered_json::array();
        for (const auto& [p, q] : r.factors) factors.push_back({p, q});
        j["factors"] = factors;
        if (r.circuit) {
            nlohmann::ordered_json c;
            c["qubits"] = r.circuit->num_qubits();
            c["depth"] = r.circuit->depth();
            c["lowered_depth"] = r.circuit->lowered().depth();
            nlohmann::ordered_json counts;
            for (const auto& [name, k] : r.circuit->gate_counts()) counts[name] = k;
            c["gates"] = counts;
            c["data_qubits"] = r.layout->data_count();
            c["ancillas"] = static_cast<int>(r.layout->ancilla_ids.size());
            c["labels"] = static_cast<int>(r.layout->label_ids.size());
            c["modules"] = static_cast<int>(r.layout->modules.size());
            j["circuit"] = c;
        }
        if (r.vqs) {
            nlohmann::ordered_json v;
            v["iterations"] = r.vqs->iterations;
            v["converged"] = r.vqs->converged;
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.12g", r.vqs->final_cost);
            v["final_cost"] = std::string(buf);
            std::snprintf(buf, sizeof(buf), "%.12g", r.vqs->label_probability);
            v["label_probability"] = std::string(buf);
            j["search"] = v;
        }
    }
    auto tried = nlohmann::ordered_json::array();
    for (const auto& t : r.tried)
        tried.push_back({{"n_p", t.n_p}, {"n_q", t.n_q}, {"status", t.status}});
    j["candidates"] = tried;
    return j;
}

inline std::string report_to_text(const RunReport& r) {
    std::ostringstream os;
    os << "N = " << r.n << " (" << r.n_bits << " bits)\n";
    for (const auto& t : r.tried)
        os << "  candidate (" << t.n_p << ", " << t.n_q << "): " << t.status << "\n";
    if (!r.ok) {
        os << "no factors found\n";
        return os.str();
    }
    os << "bit lengths: n_p = " << r.n_p << ", n_q = " << r.n_q << "\n";
    os << "bindings:\n";
    for (const Binding& b : r.reduced.bindings) os << "  " << to_string(b) << "\n";
    os << "residual clauses:\n";
    for (const Clause& c : r.reduced.residual) os << "  " << to_string(c) << "\n";
    if (r.circuit) {
        os << "circuit: " << r.circuit->num_qubits() << " qubits ("
           << r.layout->data_count() << " data, " << r.layout->ancilla_ids.size()
           << " ancilla, " << r.layout->label_ids.size() << " label), depth "
           << r.circuit->depth() << ", " << r.circuit->gate_count() << " gates\n";
        os << "modules:";
        for (const auto& mod : r.layout->modules) os << " " << to_string(mod.kind);
        os << "\n";
    }
    os << "feasible assignments:\n";
    for (const Assignment& a : r.assignments) {
        os << " ";
        for (const auto& [v, val] : a) os << " " << to_string(v) << "=" << (val ? 1 : 0);
        if (a.empty()) os << " (all bits fixed by preprocessing)";
        os << "\n";
    }
    if (r.vqs)
        os << "search: " << r.vqs->iterations << " iterations, label probability "
           << r.vqs->label_probability << (r.vqs->converged ? "" : " (not converged)")
           << "\n";
    os << "factors:";
    for (const auto& [p, q] : r.factors) os << " " << p << " * " << q << " = " << p * q;
    os << "\n";
    return os.str();
}

/// Multiplication table, raw clauses, full trace, and the reduced system —
/// the `inspect` view.
inline std::string inspect_text(const RunReport& r) {
    std::ostringstream os;
    os << to_string(r.table) << "\n";
    os << "raw clauses:\n";
    for (const Clause& c : r.raw.clauses) os << "  " << to_string(c) << "\n";
    os << "\nsimplification trace:\n";
    for (const auto& s : r.trace.steps) os << "  " << to_string(s) << "\n";
    os << "\n" << report_to_text(r);
    return os.str();
}

} // namespace qfactor
