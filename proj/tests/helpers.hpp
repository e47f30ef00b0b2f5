#pragma once

// Shared test utilities: an independent long-multiplication oracle for carry
// assignments, biprime enumeration, and tuple rendering.

#include <optional>

#include "qfactor/pipeline.hpp"
#include "qfactor/verify.hpp"

namespace qtest {

using namespace qfactor;

/// Grade-school binary multiplication of p*q laid out on the table: returns
/// the complete assignment (factor bits and every carry) or nullopt if a
/// column's carry does not fit its allocated bits. Independent of
/// generate_clauses and of the simplifier.
inline std::optional<Assignment>
long_multiplication_assignment(const MultiplicationTable& t, std::uint64_t p,
                               std::uint64_t q) {
    Assignment a;
    for (int k = 1; k < t.n_p; ++k) a[p_bit(k)] = (p >> k) & 1;
    for (int k = 1; k < t.n_q; ++k) a[q_bit(k)] = (q >> k) & 1;
    const std::uint64_t n = p * q;
    for (int i = 0; i < t.width(); ++i) {
        const auto& col = t.columns[i];
        std::int64_t sum = col.has_constant_product ? 1 : 0;
        for (const Monomial& m : col.products) {
            bool val = true;
            for (int k = 0; k < m.degree; ++k) val = val && a.at(m.v[k]);
            sum += val ? 1 : 0;
        }
        for (const Variable& z : col.carries_in) sum += a.at(z) ? 1 : 0;
        const std::int64_t n_i = (i < 64) ? static_cast<std::int64_t>((n >> i) & 1) : 0;
        if (((sum - n_i) & 1) != 0) return std::nullopt;
        std::int64_t c = (sum - n_i) / 2;
        if (c < 0) return std::nullopt;
        for (const Variable& z : col.carries_out) {
            a[z] = c & 1;
            c >>= 1;
        }
        if (c != 0) return std::nullopt; // carry overflow: allocation too small
    }
    return a;
}

/// The unique (p, q) with p <= q for a biprime, by trial division.
inline std::pair<std::uint64_t, std::uint64_t> split_biprime(std::uint64_t n) {
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return {d, n / d};
    return {0, 0};
}

inline std::vector<std::string> render_all(const std::vector<Clause>& cs) {
    std::vector<std::string> out;
    out.reserve(cs.size());
    for (const Clause& c : cs) out.push_back(to_string(c));
    return out;
}

inline std::vector<std::string> render_all(const std::vector<Binding>& bs) {
    std::vector<std::string> out;
    out.reserve(bs.size());
    for (const Binding& b : bs) out.push_back(to_string(b));
    return out;
}

/// Runs the full pipeline for the instance's true bit-length pair only.
inline SimplifyResult reduce_true_pair(std::uint64_t n) {
    auto [p, q] = split_biprime(n);
    int np = bit_length(p), nq = bit_length(q);
    if (np > nq) std::swap(np, nq);
    return simplify(generate_clauses(build_multiplication_table(np, nq, n)));
}

/// Extends each reduced-side solution to the raw system's variables through
/// the bindings, for comparing against raw brute force.
inline std::set<std::vector<int>>
reduced_solutions_on(const std::vector<Variable>& raw_vars,
                     const ReducedSystem& reduced,
                     const std::vector<Assignment>& residual_solutions) {
    std::set<std::vector<int>> out;
    for (const Assignment& s : residual_solutions) {
        std::vector<int> row;
        bool complete = true;
        for (const Variable& v : raw_vars) {
            auto b = qfactor::detail::bit_from(s, reduced, v);
            if (!b.has_value()) { complete = false; break; }
            row.push_back(*b ? 1 : 0);
        }
        if (complete) out.insert(std::move(row));
    }
    return out;
}

inline std::set<std::vector<int>>
assignments_on(const std::vector<Variable>& vars,
               const std::vector<Assignment>& solutions) {
    std::set<std::vector<int>> out;
    for (const Assignment& s : solutions) {
        std::vector<int> row;
        for (const Variable& v : vars) row.push_back(s.at(v) ? 1 : 0);
        out.insert(std::move(row));
    }
    return out;
}

} // namespace qtest
