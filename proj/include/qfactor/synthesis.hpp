#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "qfactor/circuit.hpp"
#include "qfactor/simplify.hpp"
#include "qfactor/simulator.hpp"

namespace qfactor {

// ---------------------------------------------------------------------------
// Layout
// ---------------------------------------------------------------------------

enum class ModuleKind : std::uint8_t { Parity, ProductParity, Nor, Generic };

inline const char* to_string(ModuleKind k) {
    switch (k) {
    case ModuleKind::Parity: return "parity";
    case ModuleKind::ProductParity: return "product-parity";
    case ModuleKind::Nor: return "nor";
    default: return "generic";
    }
}

struct ModulePlan {
    Clause clause;
    ModuleKind kind{ModuleKind::Generic};
    int label{-1};              // label qubit receiving this clause's bit
    std::vector<int> ancillas;  // reservations from the shared pool
    bool uncompute{true};       // final module leaves its scratch dirty
};

/// Qubit map for one labeling circuit: data qubits carry the residual free
/// variables (factor bits ascending, then carries), then the shared ancilla
/// pool, then one label per module plus one per AND.
struct QubitLayout {
    std::vector<Variable> data_vars;
    std::map<Variable, int> qubit_of;
    std::vector<int> ancilla_ids;
    std::vector<int> label_ids;
    int final_label{-1};
    std::vector<ModulePlan> modules;
    int and_count{0};

    int data_count() const { return static_cast<int>(data_vars.size()); }
};

struct SynthOptions {
    bool always_uncompute{false};
    int max_qubits{StateVector::kMaxQubits};
    int generic_variable_cap{14};
};

// ---------------------------------------------------------------------------
// Clause-shape classification
// ---------------------------------------------------------------------------

inline ModuleKind classify_clause(const Clause& c) {
    if (c.terms.size() == 2 && c.terms[0].coeff == 1 && c.terms[1].coeff == 1) {
        const int d0 = c.terms[0].mono.degree, d1 = c.terms[1].mono.degree;
        if (c.rhs == 1 && d0 == 1 && d1 == 1) return ModuleKind::Parity;
        if (c.rhs == 1 && d0 == 2 && d1 == 2) return ModuleKind::ProductParity;
        if (c.rhs == 0 && d0 == 2 && d1 == 2) return ModuleKind::Nor;
    }
    return ModuleKind::Generic;
}

// ---------------------------------------------------------------------------
// Module emitters
// ---------------------------------------------------------------------------

/// x + y = 1: the first CNOT folds the sum into y's qubit, the second copies
/// it onto the label, the third restores y.
inline void synth_parity_module(Circuit& c, const Clause& clause,
                                const QubitLayout& lay, int label) {
    if (classify_clause(clause) != ModuleKind::Parity)
        throw ShapeMismatchError("not an x + y = 1 clause: " + to_string(clause));
    const int x = lay.qubit_of.at(clause.terms[0].mono.v[0]);
    const int y = lay.qubit_of.at(clause.terms[1].mono.v[0]);
    c.append(Gate::cx(x, y));
    c.append(Gate::cx(y, label));
    c.append(Gate::cx(x, y));
}

/// x*y + u*v = 1: Toffoli the first product into the ancilla, the second
/// into the label, then XOR the ancilla onto the label. A non-final module
/// recomputes the ancilla back to |0>.
inline void synth_product_parity_module(Circuit& c, const Clause& clause,
                                        const QubitLayout& lay, int label,
                                        int ancilla, bool uncompute) {
    if (classify_clause(clause) != ModuleKind::ProductParity)
        throw ShapeMismatchError("not an x*y + u*v = 1 clause: " + to_string(clause));
    const auto& m1 = clause.terms[0].mono;
    const auto& m2 = clause.terms[1].mono;
    const int x = lay.qubit_of.at(m1.v[0]), y = lay.qubit_of.at(m1.v[1]);
    const int u = lay.qubit_of.at(m2.v[0]), v = lay.qubit_of.at(m2.v[1]);
    c.append(Gate::ccx(x, y, ancilla));
    c.append(Gate::ccx(u, v, label));
    c.append(Gate::cx(ancilla, label));
    if (uncompute) c.append(Gate::ccx(x, y, ancilla));
}

/// x*y + u*v = 0: both products into ancillas, X both, Toffoli the pair onto
/// the label (so it fires exactly when both products are 0), then undo.
inline void synth_nor_module(Circuit& c, const Clause& clause,
                             const QubitLayout& lay, int label, int anc0,
                             int anc1, bool uncompute) {
    if (classify_clause(clause) != ModuleKind::Nor)
        throw ShapeMismatchError("not an x*y + u*v = 0 clause: " + to_string(clause));
    const auto& m1 = clause.terms[0].mono;
    const auto& m2 = clause.terms[1].mono;
    const int x = lay.qubit_of.at(m1.v[0]), y = lay.qubit_of.at(m1.v[1]);
    const int u = lay.qubit_of.at(m2.v[0]), v = lay.qubit_of.at(m2.v[1]);
    c.append(Gate::ccx(x, y, anc0));
    c.append(Gate::ccx(u, v, anc1));
    c.append(Gate::x(anc0));
    c.append(Gate::x(anc1));
    c.append(Gate::ccx(anc0, anc1, label));
    if (uncompute) {
        c.append(Gate::x(anc0));
        c.append(Gate::x(anc1));
        c.append(Gate::ccx(x, y, anc0));
        c.append(Gate::ccx(u, v, anc1));
    }
}

/// Any clause over few variables: one multi-controlled X per satisfying
/// assignment, control polarities spelling the assignment out.
inline void synth_generic_module(Circuit& c, const Clause& clause,
                                 const QubitLayout& lay, int label,
                                 const std::vector<int>& work,
                                 int variable_cap = 8) {
    const std::vector<Variable> vars = clause.variables();
    if (static_cast<int>(vars.size()) > variable_cap)
        throw TooLargeError("clause over " + std::to_string(vars.size()) +
                            " variables exceeds the truth-table cap");
    const std::uint64_t limit = std::uint64_t{1} << vars.size();
    for (std::uint64_t bits = 0; bits < limit; ++bits) {
        Assignment a;
        for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = (bits >> i) & 1;
        if (!clause.holds(a)) continue;
        std::vector<int> controls;
        std::vector<bool> polarity;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            controls.push_back(lay.qubit_of.at(vars[i]));
            polarity.push_back(((bits >> i) & 1) != 0);
        }
        std::vector<int> used_work(
            work.begin(),
            work.begin() + std::min(work.size(),
                                    controls.size() > 2 ? controls.size() - 2 : 0));
        c.append(Gate::mcx(controls, polarity, label, used_work));
    }
}

/// Fresh-target Toffoli combining two feasibility bits.
inline void synth_and(Circuit& c, int label_a, int label_b, int label_out) {
    if (label_a == label_b || label_a == label_out || label_b == label_out)
        throw QubitReuseError("AND needs three distinct label qubits");
    c.append(Gate::ccx(label_a, label_b, label_out));
}

// ---------------------------------------------------------------------------
// Whole-circuit synthesis
// ---------------------------------------------------------------------------

/// Builds the labeling circuit: one module per residual clause, chained with
/// AND gates into a single final label. Modules run in canonical clause
/// order; only the last one may leave scratch qubits dirty.
inline std::pair<Circuit, QubitLayout> synth_qfl(const ReducedSystem& reduced,
                                                 const SynthOptions& opt = {}) {
    if (reduced.residual.empty())
        throw ShapeMismatchError("no residual clauses; nothing to synthesize");

    QubitLayout lay;
    // Data qubits: every variable of every residual clause, canonical order.
    {
        std::set<Variable> vars;
        for (const Clause& c : reduced.residual)
            for (const Variable& v : c.variables()) vars.insert(v);
        lay.data_vars.assign(vars.begin(), vars.end());
    }

    // Shared ancilla pool sized by the hungriest module.
    const auto m = reduced.residual.size();
    int pool = 0;
    std::vector<ModuleKind> kinds;
    for (const Clause& c : reduced.residual) {
        const ModuleKind k = classify_clause(c);
        kinds.push_back(k);
        int need = 0;
        if (k == ModuleKind::ProductParity) need = 1;
        if (k == ModuleKind::Nor) need = 2;
        if (k == ModuleKind::Generic) {
            const auto nvars = c.variables().size();
            need = nvars > 2 ? static_cast<int>(nvars) - 2 : 0;
        }
        pool = std::max(pool, need);
    }

    const int label_count = static_cast<int>(m) + (m >= 1 ? static_cast<int>(m) - 1 : 0);
    const int total = static_cast<int>(lay.data_vars.size()) + pool + label_count;
    if (total > opt.max_qubits)
        throw CapacityError("circuit needs " + std::to_string(total) +
                            " qubits, cap is " + std::to_string(opt.max_qubits));

    Circuit circuit;
    for (const Variable& v : lay.data_vars)
        lay.qubit_of[v] = circuit.add_data_qubit(v);
    for (int i = 0; i < pool; ++i)
        lay.ancilla_ids.push_back(circuit.add_ancilla_qubit(i + 1));

    int next_label = 1;
    auto new_label = [&] {
        const int id = circuit.add_label_qubit(next_label++);
        lay.label_ids.push_back(id);
        return id;
    };

    auto emit_module = [&](std::size_t index) {
        const Clause& clause = reduced.residual[index];
        const ModuleKind kind = kinds[index];
        const bool final_module = index + 1 == m;
        const bool uncompute = opt.always_uncompute || !final_module;
        const int label = new_label();
        ModulePlan plan{clause, kind, label, {}, uncompute};
        switch (kind) {
        case ModuleKind::Parity:
            synth_parity_module(circuit, clause, lay, label);
            break;
        case ModuleKind::ProductParity:
            plan.ancillas = {lay.ancilla_ids[0]};
            synth_product_parity_module(circuit, clause, lay, label,
                                        lay.ancilla_ids[0], uncompute);
            break;
        case ModuleKind::Nor:
            plan.ancillas = {lay.ancilla_ids[0], lay.ancilla_ids[1]};
            synth_nor_module(circuit, clause, lay, label, lay.ancilla_ids[0],
                             lay.ancilla_ids[1], uncompute);
            break;
        case ModuleKind::Generic: {
            const auto nvars = clause.variables().size();
            const std::size_t need = nvars > 2 ? nvars - 2 : 0;
            plan.ancillas.assign(lay.ancilla_ids.begin(),
                                 lay.ancilla_ids.begin() +
                                     static_cast<std::ptrdiff_t>(need));
            synth_generic_module(circuit, clause, lay, label, plan.ancillas,
                                 opt.generic_variable_cap);
            break;
        }
        }
        lay.modules.push_back(std::move(plan));
        return label;
    };

    int running = emit_module(0);
    for (std::size_t i = 1; i < m; ++i) {
        const int next = emit_module(i);
        const int conj = new_label();
        synth_and(circuit, running, next, conj);
        ++lay.and_count;
        running = conj;
    }
    lay.final_label = running;
    return {std::move(circuit), std::move(lay)};
}

} // namespace qfactor
