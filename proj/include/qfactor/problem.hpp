#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qfactor/errors.hpp"

namespace qfactor {

// ---------------------------------------------------------------------------
// Variables
// ---------------------------------------------------------------------------

enum class VarKind : std::uint8_t { PBit = 0, QBit = 1, Carry = 2 };

/// A binary unknown: a factor bit p_k / q_k, or a carry from one
/// multiplication column into a later one.
struct Variable {
    VarKind kind{VarKind::PBit};
    std::int16_t a{0}; // bit index for P/Q; source column for Carry
    std::int16_t b{0}; // unused for P/Q; target column for Carry

    friend auto operator<=>(const Variable&, const Variable&) = default;
};

inline Variable p_bit(int k) { return Variable{VarKind::PBit, static_cast<std::int16_t>(k), 0}; }
inline Variable q_bit(int k) { return Variable{VarKind::QBit, static_cast<std::int16_t>(k), 0}; }
inline Variable carry(int from, int to) {
    return Variable{VarKind::Carry, static_cast<std::int16_t>(from), static_cast<std::int16_t>(to)};
}

inline std::string to_string(const Variable& v) {
    switch (v.kind) {
    case VarKind::PBit: return "p" + std::to_string(v.a);
    case VarKind::QBit: return "q" + std::to_string(v.a);
    default: return "z(" + std::to_string(v.a) + "," + std::to_string(v.b) + ")";
    }
}

// ---------------------------------------------------------------------------
// Monomials and clauses
// ---------------------------------------------------------------------------

/// Product of at most two distinct binary variables. Degree 0 is the
/// constant 1 (only appears transiently; canonical clauses fold it away).
/// x*x normalizes to x.
struct Monomial {
    int degree{0};
    std::array<Variable, 2> v{};

    static Monomial one() { return Monomial{}; }
    static Monomial var(Variable x) { return Monomial{1, {x, Variable{}}}; }
    static Monomial prod(Variable x, Variable y) {
        if (x == y) return var(x);
        if (y < x) std::swap(x, y);
        return Monomial{2, {x, y}};
    }

    bool is_constant() const { return degree == 0; }
    bool contains(const Variable& x) const {
        return (degree > 0 && v[0] == x) || (degree > 1 && v[1] == x);
    }

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

inline std::string to_string(const Monomial& m) {
    if (m.degree == 0) return "1";
    if (m.degree == 1) return to_string(m.v[0]);
    return to_string(m.v[0]) + "*" + to_string(m.v[1]);
}

struct Term {
    std::int64_t coeff{0};
    Monomial mono;

    friend auto operator<=>(const Term&, const Term&) = default;
};

/// One integer equation over binary variables: sum(coeff * monomial) = rhs.
/// Canonical form: monomials sorted and unique, no zero coefficients, no
/// constant monomials (folded into rhs).
struct Clause {
    std::vector<Term> terms;
    std::int64_t rhs{0};
    int column{-1}; // multiplication-table column of origin, -1 if synthetic

    friend bool operator==(const Clause& a, const Clause& b) {
        return a.terms == b.terms && a.rhs == b.rhs;
    }
    friend auto operator<=>(const Clause& a, const Clause& b) {
        if (auto c = a.terms <=> b.terms; c != 0) return c;
        return a.rhs <=> b.rhs;
    }

    bool trivially_true() const { return terms.empty() && rhs == 0; }
    bool contradiction() const { return terms.empty() && rhs != 0; }

    void canonicalize() {
        std::sort(terms.begin(), terms.end(),
                  [](const Term& x, const Term& y) { return x.mono < y.mono; });
        std::vector<Term> out;
        for (const Term& t : terms) {
            if (t.coeff == 0) continue;
            if (t.mono.is_constant()) {
                rhs -= t.coeff;
                continue;
            }
            if (!out.empty() && out.back().mono == t.mono)
                out.back().coeff += t.coeff;
            else
                out.push_back(t);
        }
        out.erase(std::remove_if(out.begin(), out.end(),
                                 [](const Term& t) { return t.coeff == 0; }),
                  out.end());
        terms = std::move(out);
    }

    std::vector<Variable> variables() const {
        std::vector<Variable> vs;
        for (const Term& t : terms)
            for (int i = 0; i < t.mono.degree; ++i) vs.push_back(t.mono.v[i]);
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return vs;
    }

    /// Evaluates the equation under a total assignment of its variables.
    bool holds(const std::map<Variable, bool>& a) const {
        std::int64_t sum = 0;
        for (const Term& t : terms) {
            bool val = true;
            for (int i = 0; i < t.mono.degree; ++i) {
                auto it = a.find(t.mono.v[i]);
                if (it == a.end() || !it->second) { val = false; break; }
            }
            if (val) sum += t.coeff;
        }
        return sum == rhs;
    }
};

inline std::string to_string(const Clause& c) {
    std::ostringstream os;
    bool first = true;
    for (const Term& t : c.terms) {
        std::int64_t k = t.coeff;
        if (first) {
            if (k < 0) { os << "-"; k = -k; }
        } else {
            os << (k < 0 ? " - " : " + ");
            if (k < 0) k = -k;
        }
        if (k != 1) os << k << "*";
        os << to_string(t.mono);
        first = false;
    }
    if (first) os << "0";
    os << " = " << c.rhs;
    return os.str();
}

/// A full system plus the instance data it was generated from.
struct ClauseSystem {
    int n_p{0};
    int n_q{0};
    std::uint64_t n_value{0};
    std::vector<Clause> clauses;
};

using Assignment = std::map<Variable, bool>;

// ---------------------------------------------------------------------------
// Factoring instance and bit-length estimation
// ---------------------------------------------------------------------------

inline int bit_length(std::uint64_t x) {
    return x == 0 ? 0 : 64 - std::countl_zero(x);
}

inline std::uint64_t isqrt_u64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

struct FactorInstance {
    std::uint64_t n{0};
    int n_bits{0};
};

inline FactorInstance make_instance(std::uint64_t n) {
    if (n % 2 == 0) throw EvenInputError("N is even; divide out factors of 2 first");
    if (n < 9) throw TooSmallError("N must be at least 9");
    return FactorInstance{n, bit_length(n)};
}

/// Ordered bit-length candidates (n_p <= n_q). Ordering is a deterministic
/// qubit-cost proxy: total width ascending, then n_p ascending.
struct BitLengthPlan {
    std::vector<std::pair<int, int>> candidates;
};

inline bool has_divisor_of_bit_length(std::uint64_t n, int bits) {
    std::uint64_t lo = bits <= 1 ? 1 : (std::uint64_t{1} << (bits - 1));
    std::uint64_t hi = (std::uint64_t{1} << bits) - 1;
    for (std::uint64_t d = lo | 1; d <= hi; d += 2)
        if (n % d == 0) return true;
    return false;
}

inline BitLengthPlan estimate_bit_lengths(const FactorInstance& inst,
                                          bool trial_division = false) {
    const std::uint64_t n = inst.n;
    if (n % 2 == 0) throw EvenInputError("N is even");
    if (n < 9) throw TooSmallError("N must be at least 9");

    const int np_max = bit_length(isqrt_u64(n));
    BitLengthPlan plan;
    for (int np = 2; np <= np_max; ++np) {
        for (int nq = np; nq <= inst.n_bits - 1; ++nq) {
            // Range feasibility: the smallest and largest products of
            // exact-width factors must bracket N.
            const auto min_prod = (__int128{1} << (np - 1)) * (__int128{1} << (nq - 1));
            const auto max_prod =
                ((__int128{1} << np) - 1) * ((__int128{1} << nq) - 1);
            if (min_prod > __int128{n} || __int128{n} > max_prod) continue;
            if (trial_division && !has_divisor_of_bit_length(n, np)) continue;
            plan.candidates.emplace_back(np, nq);
        }
    }
    std::sort(plan.candidates.begin(), plan.candidates.end(),
              [](auto& a, auto& b) {
                  if (a.first + a.second != b.first + b.second)
                      return a.first + a.second < b.first + b.second;
                  return a.first < b.first;
              });
    return plan;
}

// ---------------------------------------------------------------------------
// Binary multiplication table
// ---------------------------------------------------------------------------

/// Long-multiplication layout for N = p*q with p_0 = q_0 = 1 fixed.
/// Column i holds the products q_j * p_(i-j) plus incoming carries; a column
/// with t addends emits ceil(log2(t+1)) - 1 outgoing carries, never past
/// column n_p + n_q - 1 (the product is below 2^(n_p+n_q)).
struct MultiplicationTable {
    int n_p{0};
    int n_q{0};
    std::uint64_t n_value{0};

    struct Column {
        std::vector<Monomial> products;
        std::vector<Variable> carries_in;
        std::vector<Variable> carries_out; // weight of carries_out[k] is 2^(k+1)
        bool has_constant_product{false};  // the p_0*q_0 = 1 entry (column 0)
    };
    std::vector<Column> columns;

    int width() const { return static_cast<int>(columns.size()); }
    int extra_columns() const { return width() - (n_p + n_q - 1); }
};

inline MultiplicationTable build_multiplication_table(int n_p, int n_q,
                                                      std::uint64_t n) {
    MultiplicationTable t;
    t.n_p = n_p;
    t.n_q = n_q;
    t.n_value = n;
    const int last_col = n_p + n_q - 1;
    t.columns.resize(last_col + 1);

    for (int i = 0; i <= last_col; ++i) {
        auto& col = t.columns[i];
        for (int j = 0; j < n_q; ++j) {
            const int k = i - j; // p-bit index
            if (k < 0 || k >= n_p) continue;
            if (j == 0 && k == 0) {
                col.has_constant_product = true;
            } else if (j == 0) {
                col.products.push_back(Monomial::var(p_bit(k)));
            } else if (k == 0) {
                col.products.push_back(Monomial::var(q_bit(j)));
            } else {
                col.products.push_back(Monomial::prod(p_bit(k), q_bit(j)));
            }
        }
    }

    // Ascending pass: outgoing carries only feed later columns, so one sweep
    // reaches the fixpoint.
    for (int i = 0; i <= last_col; ++i) {
        auto& col = t.columns[i];
        const int addends = static_cast<int>(col.products.size()) +
                            static_cast<int>(col.carries_in.size()) +
                            (col.has_constant_product ? 1 : 0);
        int carries = addends <= 1 ? 0 : bit_length(static_cast<std::uint64_t>(addends)) - 1;
        // bit_length(t) == ceil(log2(t+1)) for t >= 1.
        for (int k = 1; k <= carries; ++k) {
            const int target = i + k;
            if (target > last_col) break;
            Variable z = carry(i, target);
            col.carries_out.push_back(z);
            t.columns[target].carries_in.push_back(z);
        }
    }

    // Trim a trailing column that received nothing (tiny instances).
    while (!t.columns.empty()) {
        const auto& back = t.columns.back();
        if (back.products.empty() && back.carries_in.empty() &&
            !back.has_constant_product)
            t.columns.pop_back();
        else
            break;
    }
    return t;
}

/// One clause per non-trivial column: products + carries-in = N_i + weighted
/// carries-out, with N_i moved to the right-hand side.
inline ClauseSystem generate_clauses(const MultiplicationTable& t) {
    const std::uint64_t n = t.n_value;
    if ((n & 1) == 0)
        throw InconsistentColumnError(
            "column 0 reads 1 but N is even; reject even N upstream");

    ClauseSystem sys;
    sys.n_p = t.n_p;
    sys.n_q = t.n_q;
    sys.n_value = n;
    for (int i = 1; i < t.width(); ++i) {
        const auto& col = t.columns[i];
        Clause c;
        c.column = i;
        for (const Monomial& m : col.products) c.terms.push_back({1, m});
        for (const Variable& z : col.carries_in)
            c.terms.push_back({1, Monomial::var(z)});
        for (std::size_t k = 0; k < col.carries_out.size(); ++k)
            c.terms.push_back({-(std::int64_t{1} << (k + 1)),
                               Monomial::var(col.carries_out[k])});
        c.rhs = (i < 64) ? static_cast<std::int64_t>((n >> i) & 1) : 0;
        c.canonicalize();
        sys.clauses.push_back(std::move(c));
    }
    return sys;
}

inline std::string to_string(const MultiplicationTable& t) {
    std::ostringstream os;
    os << "multiplication table " << t.n_p << "x" << t.n_q
       << " for N = " << t.n_value << " (" << t.width() << " columns)\n";
    for (int i = 0; i < t.width(); ++i) {
        const auto& col = t.columns[i];
        os << "  2^" << i << ": ";
        bool first = true;
        if (col.has_constant_product) { os << "1"; first = false; }
        for (const auto& m : col.products) {
            if (!first) os << " ";
            os << to_string(m);
            first = false;
        }
        if (!col.carries_in.empty()) {
            os << " | in:";
            for (const auto& z : col.carries_in) os << " " << to_string(z);
        }
        if (!col.carries_out.empty()) {
            os << " | out:";
            for (const auto& z : col.carries_out) os << " " << to_string(z);
        }
        os << " | N_" << i << " = "
           << ((i < 64) ? ((t.n_value >> i) & 1) : 0) << "\n";
    }
    return os.str();
}

} // namespace qfactor
