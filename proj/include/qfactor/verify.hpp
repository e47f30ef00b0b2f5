#pragma once

// Built-in check suite shared by the CLI `verify` subcommand, the tests, and
// the acceptance runner: module truth tables, the classical-oracle
// equivalence sweep, and state-vector norm checks.

#include <iomanip>
#include <ostream>
#include <sstream>

#include "qfactor/pipeline.hpp"

namespace qfactor {

struct CheckResult {
    std::string name;
    bool passed{false};
    std::string detail;
};

// ---------------------------------------------------------------------------
// Frozen module truth tables
// ---------------------------------------------------------------------------
// Each table lists the label bit for inputs enumerated in the stated column
// order, first column most significant, rows 0..2^k-1.

struct ModuleTruthTable {
    std::string name;
    Clause clause;
    std::vector<Variable> input_order;
    std::vector<int> label;
};

inline Clause make_clause(std::vector<Term> terms, std::int64_t rhs) {
    Clause c;
    c.terms = std::move(terms);
    c.rhs = rhs;
    c.canonicalize();
    return c;
}

/// x + y = 1 over (p1, q1).
inline ModuleTruthTable parity_truth_table() {
    return {"parity module",
            make_clause({{1, Monomial::var(p_bit(1))}, {1, Monomial::var(q_bit(1))}}, 1),
            {p_bit(1), q_bit(1)},
            {0, 1, 1, 0}};
}

/// p1*q2 + p2*q1 = 1, inputs wired pairwise: (p1, q2, p2, q1).
inline ModuleTruthTable product_parity_truth_table() {
    return {"product-parity module",
            make_clause({{1, Monomial::prod(p_bit(1), q_bit(2))},
                         {1, Monomial::prod(p_bit(2), q_bit(1))}},
                        1),
            {p_bit(1), q_bit(2), p_bit(2), q_bit(1)},
            {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 1, 0}};
}

/// p1*q2 + p2*q1 = 0, inputs in ascending variable order (p1, p2, q1, q2).
inline ModuleTruthTable nor_truth_table() {
    return {"nor module",
            make_clause({{1, Monomial::prod(p_bit(1), q_bit(2))},
                         {1, Monomial::prod(p_bit(2), q_bit(1))}},
                        0),
            {p_bit(1), p_bit(2), q_bit(1), q_bit(2)},
            {1, 1, 1, 1, 1, 1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0}};
}

/// p1*q3 + p3*q1 = 0, inputs wired pairwise: (p1, q3, p3, q1).
inline ModuleTruthTable nor_high_bits_truth_table() {
    return {"nor module, bit-3 pair",
            make_clause({{1, Monomial::prod(p_bit(1), q_bit(3))},
                         {1, Monomial::prod(p_bit(3), q_bit(1))}},
                        0),
            {p_bit(1), q_bit(3), p_bit(3), q_bit(1)},
            {1, 1, 1, 0, 1, 1, 1, 0, 1, 1, 1, 0, 0, 0, 0, 0}};
}

inline std::vector<ModuleTruthTable> all_module_truth_tables() {
    return {parity_truth_table(), product_parity_truth_table(), nor_truth_table(),
            nor_high_bits_truth_table()};
}

// ---------------------------------------------------------------------------
// Standalone module evaluation
// ---------------------------------------------------------------------------

/// Synthesizes just this clause's module (no AND chain) and evaluates its
/// label over every input row in the table's column order. Also confirms the
/// data register is restored and, with uncompute forced, that ancillas are.
inline CheckResult check_module_truth_table(const ModuleTruthTable& table,
                                            bool force_uncompute = false) {
    ReducedSystem red;
    red.residual = {table.clause};
    SynthOptions opt;
    opt.always_uncompute = force_uncompute;
    auto [circuit, lay] = synth_qfl(red, opt);

    const std::size_t k = table.input_order.size();
    for (std::size_t row = 0; row < (std::size_t{1} << k); ++row) {
        std::vector<bool> in(static_cast<std::size_t>(circuit.num_qubits()), false);
        Assignment a;
        for (std::size_t col = 0; col < k; ++col) {
            const bool bit = (row >> (k - 1 - col)) & 1;
            a[table.input_order[col]] = bit;
        }
        for (const auto& [v, bit] : a)
            in[static_cast<std::size_t>(lay.qubit_of.at(v))] = bit;
        const std::vector<bool> out = run_basis(circuit, in);

        const int got = out[static_cast<std::size_t>(lay.final_label)] ? 1 : 0;
        if (got != table.label[row])
            return {table.name, false,
                    "row " + std::to_string(row) + ": label " + std::to_string(got) +
                        ", expected " + std::to_string(table.label[row])};
        for (int d = 0; d < lay.data_count(); ++d)
            if (out[static_cast<std::size_t>(d)] != in[static_cast<std::size_t>(d)])
                return {table.name, false,
                        "row " + std::to_string(row) + ": data register not restored"};
        if (force_uncompute)
            for (int anc : lay.ancilla_ids)
                if (out[static_cast<std::size_t>(anc)])
                    return {table.name, false,
                            "row " + std::to_string(row) + ": ancilla left dirty"};
    }
    return {table.name, true, std::to_string(std::size_t{1} << k) + " rows"};
}

// ---------------------------------------------------------------------------
// Oracle equivalence sweep
// ---------------------------------------------------------------------------

/// Odd N in [9, limit) that are products of exactly two primes.
inline std::vector<std::uint64_t> odd_biprimes(std::uint64_t limit) {
    std::vector<std::uint64_t> spf(limit, 0);
    for (std::uint64_t i = 2; i < limit; ++i)
        if (spf[i] == 0)
            for (std::uint64_t j = i; j < limit; j += i)
                if (spf[j] == 0) spf[j] = i;
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 9; n < limit; n += 2) {
        const std::uint64_t a = spf[n];
        if (a == n) continue; // prime
        const std::uint64_t b = n / a;
        if (spf[b] == b) out.push_back(n); // b prime => exactly two factors
    }
    return out;
}

/// For every basis state of the data register, the circuit's final label must
/// equal the classical conjunction of the residual clauses.
inline bool label_matches_conjunction(const Circuit& circuit, const QubitLayout& lay,
                                      const std::vector<Clause>& residual,
                                      std::string* why = nullptr) {
    const int d = lay.data_count();
    const CompiledPermutation perm = CompiledPermutation::from(circuit);
    const std::uint64_t label_mask = std::uint64_t{1} << lay.final_label;
    const std::uint64_t data_mask = (std::uint64_t{1} << d) - 1;

    // Residual clauses packed against the data-qubit numbering.
    struct PackedTerm { std::int64_t coeff; std::uint64_t mask; };
    struct PackedClause { std::vector<PackedTerm> terms; std::int64_t rhs; };
    std::vector<PackedClause> packed;
    for (const Clause& c : residual) {
        PackedClause pc;
        pc.rhs = c.rhs;
        for (const Term& t : c.terms) {
            std::uint64_t mask = 0;
            for (int k = 0; k < t.mono.degree; ++k)
                mask |= std::uint64_t{1} << lay.qubit_of.at(t.mono.v[k]);
            pc.terms.push_back({t.coeff, mask});
        }
        packed.push_back(std::move(pc));
    }

    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << d); ++bits) {
        const std::uint64_t out = perm.apply(bits);
        bool classical = true;
        for (const PackedClause& pc : packed) {
            std::int64_t sum = 0;
            for (const PackedTerm& t : pc.terms)
                if ((bits & t.mask) == t.mask) sum += t.coeff;
            if (sum != pc.rhs) { classical = false; break; }
        }
        if (static_cast<bool>(out & label_mask) != classical) {
            if (why)
                *why = "data index " + std::to_string(bits) + ": label " +
                       std::to_string((out & label_mask) != 0) + " vs clauses " +
                       std::to_string(classical);
            return false;
        }
        if ((out & data_mask) != bits) {
            if (why) *why = "data register not preserved";
            return false;
        }
    }
    return true;
}

struct SweepStats {
    int tested{0};
    int with_circuit{0};
    int fully_reduced{0};
    int max_data_qubits{0};
};

inline CheckResult check_oracle_equivalence(std::uint64_t limit, SweepStats* stats = nullptr) {
    SweepStats local;
    for (std::uint64_t n : odd_biprimes(limit)) {
        RunReport r = run_factor(n);
        if (!r.ok)
            return {"oracle equivalence sweep", false,
                    "no factors for " + std::to_string(n)};
        for (const auto& [p, q] : r.factors)
            if (p * q != n)
                return {"oracle equivalence sweep", false,
                        "bad factor pair for " + std::to_string(n)};
        ++local.tested;
        if (!r.circuit) {
            ++local.fully_reduced;
            continue;
        }
        ++local.with_circuit;
        local.max_data_qubits = std::max(local.max_data_qubits, r.layout->data_count());
        std::string why;
        if (!label_matches_conjunction(*r.circuit, *r.layout, r.reduced.residual, &why))
            return {"oracle equivalence sweep", false,
                    "N = " + std::to_string(n) + ": " + why};
    }
    if (stats) *stats = local;
    return {"oracle equivalence sweep", true,
            std::to_string(local.tested) + " biprimes, " +
                std::to_string(local.with_circuit) + " circuits, max data register " +
                std::to_string(local.max_data_qubits)};
}

// ---------------------------------------------------------------------------
// Norm checks
// ---------------------------------------------------------------------------

/// Runs the circuit from a uniform data superposition and records the worst
/// norm drift after each gate.
inline double max_norm_drift(const Circuit& circuit, const QubitLayout& lay) {
    StateVector s = StateVector::zero_state(circuit.num_qubits());
    double worst = std::abs(s.norm() - 1.0);
    for (int k = 0; k < lay.data_count(); ++k) {
        s.apply(Gate::h(k));
        worst = std::max(worst, std::abs(s.norm() - 1.0));
    }
    for (const Gate& g : circuit.gates()) {
        s.apply(g);
        worst = std::max(worst, std::abs(s.norm() - 1.0));
    }
    return worst;
}

inline CheckResult check_norms() {
    double worst = 0.0;
    for (std::uint64_t n : {std::uint64_t{143}, std::uint64_t{323}}) {
        RunReport r = run_factor(n);
        if (!r.ok || !r.circuit)
            return {"norm preservation", false, "no circuit for " + std::to_string(n)};
        worst = std::max(worst, max_norm_drift(*r.circuit, *r.layout));
        worst = std::max(worst, max_norm_drift(r.circuit->lowered(), *r.layout));
    }
    std::ostringstream os;
    os << "max |norm - 1| = " << std::scientific << std::setprecision(2) << worst;
    return {"norm preservation", worst < 1e-10, os.str()};
}

// ---------------------------------------------------------------------------
// Suite
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> run_builtin_checks(std::ostream& os,
                                                   std::uint64_t sweep_limit = 1000) {
    std::vector<CheckResult> results;
    for (const auto& table : all_module_truth_tables())
        results.push_back(check_module_truth_table(table));
    results.push_back(check_oracle_equivalence(sweep_limit));
    results.push_back(check_norms());

    std::size_t width = 0;
    for (const auto& r : results) width = std::max(width, r.name.size());
    for (const auto& r : results)
        os << "  " << std::left << std::setw(static_cast<int>(width) + 2) << r.name
           << (r.passed ? "pass" : "FAIL") << "  " << r.detail << "\n";
    return results;
}

} // namespace qfactor
