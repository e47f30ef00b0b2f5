#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qfactor/problem.hpp"

namespace qfactor {

// ---------------------------------------------------------------------------
// Bindings
// ---------------------------------------------------------------------------

/// A deduced fact about one variable: either a constant 0/1 or an identity
/// with another variable (the representative of its class).
struct Binding {
    Variable var;
    bool is_const{true};
    bool value{false};
    Variable alias{};

    friend auto operator<=>(const Binding&, const Binding&) = default;
};

inline std::string to_string(const Binding& b) {
    if (b.is_const) return to_string(b.var) + " = " + (b.value ? "1" : "0");
    return to_string(b.var) + " = " + to_string(b.alias);
}

/// Union-find over variables with an optional constant at each root.
/// Representative of a class is its smallest variable, so exports are
/// deterministic and chains are path-compressed.
class BindingStore {
public:
    Variable rep(Variable v) const {
        while (true) {
            auto it = parent_.find(v);
            if (it == parent_.end()) return v;
            v = it->second;
        }
    }

    std::optional<bool> value_of(Variable v) const {
        auto it = value_.find(rep(v));
        if (it == value_.end()) return std::nullopt;
        return it->second;
    }

    bool known(Variable v) const {
        return parent_.contains(v) || value_.contains(rep(v));
    }

    /// Returns true if new information was added.
    bool bind_const(Variable v, bool val) {
        Variable r = rep(v);
        auto it = value_.find(r);
        if (it != value_.end()) {
            if (it->second != val)
                throw UnsatisfiableError("conflicting values for " + qfactor::to_string(r));
            return false;
        }
        value_[r] = val;
        return true;
    }

    /// Merges the classes of a and b. Returns true if they were distinct.
    bool bind_alias(Variable a, Variable b) {
        Variable ra = rep(a), rb = rep(b);
        if (ra == rb) return false;
        if (rb < ra) std::swap(ra, rb);
        auto va = value_.find(ra), vb = value_.find(rb);
        if (va != value_.end() && vb != value_.end() && va->second != vb->second)
            throw UnsatisfiableError("conflicting classes for " + qfactor::to_string(ra) +
                                     " and " + qfactor::to_string(rb));
        if (vb != value_.end() && va == value_.end()) value_[ra] = vb->second;
        if (vb != value_.end()) value_.erase(rb);
        parent_[rb] = ra;
        return true;
    }

    /// All established facts: a Binding per non-representative or valued
    /// variable, constants resolved through their class.
    std::vector<Binding> export_all() const {
        std::set<Variable> vars;
        for (const auto& [v, p] : parent_) { vars.insert(v); vars.insert(p); }
        for (const auto& [v, _] : value_) vars.insert(v);
        std::vector<Binding> out;
        for (const Variable& v : vars) {
            Variable r = rep(v);
            auto val = value_.find(r);
            if (val != value_.end())
                out.push_back(Binding{v, true, val->second, {}});
            else if (r != v)
                out.push_back(Binding{v, false, false, r});
        }
        return out;
    }

private:
    std::map<Variable, Variable> parent_;
    std::map<Variable, bool> value_;
};

// ---------------------------------------------------------------------------
// Trace
// ---------------------------------------------------------------------------

struct TraceStep {
    enum class Kind {
        Seed,          // assumed binding (fixed top bit)
        Rewrite,       // clause rewritten under current bindings/kill facts
        Force,         // bound deduction produced bindings
        Alias,         // identity rule produced alias bindings
        Kill,          // product fact recorded (never a residual clause)
        DropTrivial,   // clause became 0 = 0
        DropDuplicate, // clause equals an earlier one
        Unsat          // contradiction detected
    };

    Kind kind;
    std::string rule;
    std::optional<Clause> before;
    std::optional<Clause> after;
    std::vector<Binding> bindings;
    std::optional<Monomial> kill;
};

inline std::string to_string(const TraceStep& s) {
    std::ostringstream os;
    os << s.rule << ":";
    if (s.before) os << " [" << to_string(*s.before) << "]";
    switch (s.kind) {
    case TraceStep::Kind::Rewrite:
        os << " -> [" << (s.after ? to_string(*s.after) : std::string{}) << "]";
        break;
    case TraceStep::Kind::DropTrivial: os << " -> satisfied"; break;
    case TraceStep::Kind::DropDuplicate: os << " -> duplicate, dropped"; break;
    case TraceStep::Kind::Unsat: os << " -> contradiction"; break;
    case TraceStep::Kind::Kill:
        os << " -> " << (s.kill ? to_string(*s.kill) : std::string{}) << " = 0";
        break;
    default: break;
    }
    for (const Binding& b : s.bindings) os << " " << to_string(b) << ";";
    return os.str();
}

/// Ordered record of every deduction; replaying it against the raw system
/// reproduces the reduced system (see replay_trace).
struct SimplificationTrace {
    std::vector<TraceStep> steps;

    std::string to_text() const {
        std::ostringstream os;
        for (const auto& s : steps) os << to_string(s) << "\n";
        return os.str();
    }
};

/// Bindings plus the surviving clauses, all substitutions applied.
struct ReducedSystem {
    int n_p{0};
    int n_q{0};
    std::uint64_t n_value{0};
    std::vector<Binding> bindings;
    std::vector<Clause> residual;

    std::optional<bool> binding_value(Variable v) const {
        // Resolve through alias chains.
        for (int guard = 0; guard < 64; ++guard) {
            for (const Binding& b : bindings) {
                if (b.var != v) continue;
                if (b.is_const) return b.value;
                v = b.alias;
                break;
            }
            bool found = false;
            for (const Binding& b : bindings)
                if (b.var == v) { found = true; break; }
            if (!found) return std::nullopt; // free representative
        }
        return std::nullopt;
    }
};

// ---------------------------------------------------------------------------
// Per-clause deduction
// ---------------------------------------------------------------------------

namespace detail {

/// Exact reachability of sums over the clause's monomials treated as
/// independent 0/1 unknowns. Over-approximates the true solution set, so any
/// value forced here is forced in reality too.
inline std::set<std::int64_t> achievable_sums(const std::vector<Term>& terms,
                                              std::size_t skip) {
    std::set<std::int64_t> sums{0};
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i == skip) continue;
        std::set<std::int64_t> next;
        for (std::int64_t s : sums) {
            next.insert(s);
            next.insert(s + terms[i].coeff);
        }
        sums = std::move(next);
    }
    return sums;
}

} // namespace detail

struct ClauseDeduction {
    std::vector<std::pair<Variable, bool>> consts;
    std::vector<std::pair<Variable, Variable>> aliases;
    std::vector<Monomial> kills;
    Clause reduced;           // clause with forced monomials substituted out
    bool drop{false};         // clause fully resolved (0 = 0 after deductions)
    std::vector<std::string> rules;
};

/// Generalized low/high-bit deduction: a monomial whose 0 or 1 value makes
/// the remaining sum unable to reach the right-hand side is forced. Forcing
/// a product to 1 pins both of its variables; products are never forced to
/// 0 here (that information lives in the clause itself).
inline ClauseDeduction deduce_clause_bounds(Clause c) {
    ClauseDeduction d;
    bool changed = true;
    while (changed) {
        changed = false;
        c.canonicalize();
        if (c.contradiction())
            throw UnsatisfiableError("clause cannot hold: " + to_string(c));
        if (c.trivially_true()) break;

        auto all = detail::achievable_sums(c.terms, c.terms.size());
        if (!all.contains(c.rhs))
            throw UnsatisfiableError("clause cannot hold: " + to_string(c));

        for (std::size_t i = 0; i < c.terms.size(); ++i) {
            const Term& t = c.terms[i];
            auto rest = detail::achievable_sums(c.terms, i);
            const bool can0 = rest.contains(c.rhs);
            const bool can1 = rest.contains(c.rhs - t.coeff);
            if (can0 == can1) continue;
            if (can1) {
                // monomial forced to 1: every variable in it is 1
                for (int k = 0; k < t.mono.degree; ++k) {
                    d.consts.emplace_back(t.mono.v[k], true);
                    d.rules.push_back(t.mono.degree == 2 ? "product-one" : "bound-force");
                }
                c.rhs -= t.coeff;
                c.terms.erase(c.terms.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
            if (t.mono.degree == 1) {
                d.consts.emplace_back(t.mono.v[0], false);
                d.rules.push_back("bound-force");
                c.terms.erase(c.terms.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
            // Forcing a product to 0 binds neither variable; keep the clause
            // as the carrier of that constraint.
        }
    }
    c.canonicalize();
    d.reduced = c;
    d.drop = c.trivially_true();
    return d;
}

/// Identity patterns: x + y = 2z makes all three equal; a matched pair
/// a*m - a*n = 0 merges m and n. Degree-1 monomials only.
inline ClauseDeduction deduce_clause_identities(const Clause& c) {
    ClauseDeduction d;
    d.reduced = c;
    auto deg1 = [](const Term& t) { return t.mono.degree == 1; };

    if (c.terms.size() == 3 && c.rhs == 0) {
        std::vector<const Term*> plus, minus;
        for (const Term& t : c.terms)
            (t.coeff > 0 ? plus : minus).push_back(&t);
        if (plus.size() == 2 && minus.size() == 1 && plus[0]->coeff == 1 &&
            plus[1]->coeff == 1 && minus[0]->coeff == -2 && deg1(*plus[0]) &&
            deg1(*plus[1]) && deg1(*minus[0])) {
            d.aliases.emplace_back(plus[0]->mono.v[0], plus[1]->mono.v[0]);
            d.aliases.emplace_back(plus[0]->mono.v[0], minus[0]->mono.v[0]);
            d.rules.push_back("half-sum-merge");
            d.drop = true;
            return d;
        }
    }
    if (c.terms.size() == 2 && c.rhs == 0 &&
        c.terms[0].coeff == -c.terms[1].coeff && deg1(c.terms[0]) &&
        deg1(c.terms[1])) {
        d.aliases.emplace_back(c.terms[0].mono.v[0], c.terms[1].mono.v[0]);
        d.rules.push_back("matched-pair-merge");
        d.drop = true;
        return d;
    }
    return d;
}

/// Exactly-one pattern x + y = 1 over single variables: records the product
/// fact x*y = 0 used to delete matching products elsewhere.
inline std::optional<Monomial> product_fact(const Clause& c) {
    if (c.terms.size() == 2 && c.rhs == 1 && c.terms[0].coeff == 1 &&
        c.terms[1].coeff == 1 && c.terms[0].mono.degree == 1 &&
        c.terms[1].mono.degree == 1)
        return Monomial::prod(c.terms[0].mono.v[0], c.terms[1].mono.v[0]);
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Whole-system simplification
// ---------------------------------------------------------------------------

struct SimplifyResult {
    ReducedSystem reduced;
    SimplificationTrace trace;
};

namespace detail {

struct Engine {
    BindingStore store;
    std::set<Monomial> kills;
    SimplificationTrace trace;

    Monomial rewrite_monomial(Monomial m) const {
        if (m.degree == 0) return m;
        if (m.degree == 1) return Monomial::var(store.rep(m.v[0]));
        return Monomial::prod(store.rep(m.v[0]), store.rep(m.v[1]));
    }

    /// Substitutes constants, alias representatives, and product facts.
    Clause substitute(const Clause& c) const {
        Clause out;
        out.column = c.column;
        out.rhs = c.rhs;
        for (const Term& t : c.terms) {
            Monomial m = rewrite_monomial(t.mono);
            std::int64_t coeff = t.coeff;
            Monomial reduced = Monomial::one();
            bool zero = false;
            for (int k = 0; k < m.degree; ++k) {
                auto v = store.value_of(m.v[k]);
                if (!v.has_value()) {
                    reduced = reduced.is_constant()
                                  ? Monomial::var(m.v[k])
                                  : Monomial::prod(reduced.v[0], m.v[k]);
                } else if (!*v) {
                    zero = true;
                    break;
                }
            }
            if (zero) continue;
            if (reduced.degree == 2 && kills.contains(reduced)) continue;
            out.terms.push_back({coeff, reduced});
        }
        out.canonicalize();
        return out;
    }

    bool add_const(Variable v, bool val, const std::string& rule,
                   const Clause& from) {
        Variable r = store.rep(v);
        auto known = store.value_of(r);
        if (known.has_value()) {
            if (*known != val)
                throw UnsatisfiableError("conflicting values for " + qfactor::to_string(v));
            return false;
        }
        store.bind_const(r, val);
        trace.steps.push_back({TraceStep::Kind::Force, rule, from, std::nullopt,
                               {Binding{v, true, val, {}}}, std::nullopt});
        return true;
    }

    bool add_alias(Variable a, Variable b, const std::string& rule,
                   const Clause& from) {
        Variable ra = store.rep(a), rb = store.rep(b);
        if (ra == rb) return false;
        auto va = store.value_of(ra), vb = store.value_of(rb);
        if (va.has_value() && vb.has_value() && *va != *vb)
            throw UnsatisfiableError("conflicting identity " + qfactor::to_string(a) +
                                     " = " + qfactor::to_string(b));
        store.bind_alias(ra, rb);
        trace.steps.push_back({TraceStep::Kind::Alias, rule, from, std::nullopt,
                               {Binding{std::max(ra, rb), false, false,
                                        std::min(ra, rb)}},
                               std::nullopt});
        return true;
    }

    bool add_kill(Monomial m, const Clause& from) {
        m = rewrite_monomial(m);
        if (m.degree != 2) return false;
        if (kills.contains(m)) return false;
        kills.insert(m);
        trace.steps.push_back({TraceStep::Kind::Kill, "pair-sum-one", from,
                               std::nullopt, {}, m});
        return true;
    }

    /// Re-normalizes product facts after new bindings: a fact with a known-0
    /// variable is spent; one with a known-1 variable pins its partner to 0.
    bool refresh_kills() {
        bool changed = false;
        std::set<Monomial> next;
        for (Monomial m : kills) {
            m = rewrite_monomial(m);
            if (m.degree == 2) {
                auto a = store.value_of(m.v[0]);
                auto b = store.value_of(m.v[1]);
                if ((a.has_value() && !*a) || (b.has_value() && !*b)) {
                    changed = true;
                    continue;
                }
                if (a.has_value() && *a) {
                    changed |= store.bind_const(store.rep(m.v[1]), false);
                    continue;
                }
                if (b.has_value() && *b) {
                    changed |= store.bind_const(store.rep(m.v[0]), false);
                    continue;
                }
                if (!next.contains(m)) { next.insert(m); }
            } else if (m.degree == 1) {
                // x*x fact collapsed to x: x = 0
                auto v = store.value_of(m.v[0]);
                if (!v.has_value()) {
                    changed |= store.bind_const(store.rep(m.v[0]), false);
                } else if (*v) {
                    throw UnsatisfiableError("product fact contradicts binding");
                }
                changed = true;
            }
        }
        if (next != kills) changed = true;
        kills = std::move(next);
        return changed;
    }
};

} // namespace detail

/// Fixpoint simplification: substitute known facts, run bound deductions and
/// the identity/product rules on every clause, repeat until nothing changes.
/// Candidate bit lengths are asserted by seeding the top bits to 1.
inline SimplifyResult simplify(const ClauseSystem& sys) {
    detail::Engine eng;
    std::vector<Clause> clauses = sys.clauses;

    if (sys.n_p >= 2) {
        eng.store.bind_const(p_bit(sys.n_p - 1), true);
        eng.trace.steps.push_back({TraceStep::Kind::Seed, "length-fix",
                                   std::nullopt, std::nullopt,
                                   {Binding{p_bit(sys.n_p - 1), true, true, {}}},
                                   std::nullopt});
    }
    if (sys.n_q >= 2) {
        eng.store.bind_const(q_bit(sys.n_q - 1), true);
        eng.trace.steps.push_back({TraceStep::Kind::Seed, "length-fix",
                                   std::nullopt, std::nullopt,
                                   {Binding{q_bit(sys.n_q - 1), true, true, {}}},
                                   std::nullopt});
    }

    bool changed = true;
    while (changed) {
        changed = false;
        changed |= eng.refresh_kills();

        // Substitution pass.
        std::vector<Clause> next;
        for (const Clause& c : clauses) {
            Clause s = eng.substitute(c);
            if (s.contradiction()) {
                eng.trace.steps.push_back({TraceStep::Kind::Unsat, "substitute",
                                           c, s, {}, std::nullopt});
                throw UnsatisfiableError("clause cannot hold: " + to_string(c));
            }
            if (!(s == c)) {
                changed = true;
                if (s.trivially_true()) {
                    eng.trace.steps.push_back({TraceStep::Kind::DropTrivial,
                                               "substitute", c, s, {},
                                               std::nullopt});
                    continue;
                }
                eng.trace.steps.push_back({TraceStep::Kind::Rewrite, "substitute",
                                           c, s, {}, std::nullopt});
            } else if (s.trivially_true()) {
                changed = true;
                eng.trace.steps.push_back({TraceStep::Kind::DropTrivial,
                                           "substitute", c, s, {}, std::nullopt});
                continue;
            }
            bool dup = false;
            for (const Clause& seen : next)
                if (seen == s) { dup = true; break; }
            if (dup) {
                changed = true;
                eng.trace.steps.push_back({TraceStep::Kind::DropDuplicate,
                                           "duplicate", s, std::nullopt, {},
                                           std::nullopt});
                continue;
            }
            next.push_back(std::move(s));
        }
        clauses = std::move(next);

        // Deduction passes, in fixed order per clause.
        for (const Clause& c : clauses) {
            ClauseDeduction bounds = deduce_clause_bounds(c);
            for (std::size_t i = 0; i < bounds.consts.size(); ++i)
                changed |= eng.add_const(bounds.consts[i].first,
                                         bounds.consts[i].second,
                                         bounds.rules[i], c);
        }
        for (const Clause& c : clauses) {
            Clause s = eng.substitute(c);
            ClauseDeduction ids = deduce_clause_identities(s);
            for (const auto& [a, b] : ids.aliases)
                changed |= eng.add_alias(a, b, ids.rules.empty() ? "merge" : ids.rules[0], s);
        }
        for (const Clause& c : clauses) {
            Clause s = eng.substitute(c);
            if (auto fact = product_fact(s))
                changed |= eng.add_kill(*fact, s);
        }
    }

    SimplifyResult out;
    out.reduced.n_p = sys.n_p;
    out.reduced.n_q = sys.n_q;
    out.reduced.n_value = sys.n_value;
    out.reduced.bindings = eng.store.export_all();
    out.reduced.residual = std::move(clauses);
    std::sort(out.reduced.residual.begin(), out.reduced.residual.end());
    out.trace = std::move(eng.trace);
    return out;
}

/// Spec-level wrapper: bound deductions for a single clause.
inline std::vector<Binding> deduce_parity_bounds(const Clause& c) {
    ClauseDeduction d = deduce_clause_bounds(c);
    std::vector<Binding> out;
    for (const auto& [v, val] : d.consts) out.push_back(Binding{v, true, val, {}});
    return out;
}

/// Spec-level wrapper: a single pass of every rule over the system.
inline std::pair<std::vector<Binding>, ClauseSystem>
apply_rules(const ClauseSystem& sys) {
    detail::Engine eng;
    std::vector<Clause> clauses;
    for (const Clause& c : sys.clauses) {
        Clause s = eng.substitute(c);
        if (s.contradiction())
            throw UnsatisfiableError("clause cannot hold: " + to_string(c));
        if (!s.trivially_true()) clauses.push_back(std::move(s));
    }
    for (const Clause& c : clauses) {
        ClauseDeduction bounds = deduce_clause_bounds(c);
        for (std::size_t i = 0; i < bounds.consts.size(); ++i)
            eng.add_const(bounds.consts[i].first, bounds.consts[i].second,
                          bounds.rules[i], c);
        ClauseDeduction ids = deduce_clause_identities(eng.substitute(c));
        for (const auto& [a, b] : ids.aliases)
            eng.add_alias(a, b, "merge", c);
        if (auto fact = product_fact(eng.substitute(c))) eng.add_kill(*fact, c);
    }
    ClauseSystem out;
    out.n_p = sys.n_p;
    out.n_q = sys.n_q;
    out.n_value = sys.n_value;
    for (const Clause& c : clauses) {
        Clause s = eng.substitute(c);
        if (!s.trivially_true()) out.clauses.push_back(std::move(s));
    }
    return {eng.store.export_all(), std::move(out)};
}

/// Mechanical replay: applies the trace's rewrite/drop/binding effects to the
/// raw clause list and checks nothing else is needed to reach the output.
inline ReducedSystem replay_trace(const ClauseSystem& sys,
                                  const SimplificationTrace& trace) {
    std::vector<Clause> clauses = sys.clauses;
    BindingStore store;
    auto erase_one = [&clauses](const Clause& c) {
        for (auto it = clauses.begin(); it != clauses.end(); ++it)
            if (*it == c) { clauses.erase(it); return true; }
        return false;
    };
    for (const TraceStep& s : trace.steps) {
        switch (s.kind) {
        case TraceStep::Kind::Seed:
        case TraceStep::Kind::Force:
            for (const Binding& b : s.bindings) store.bind_const(b.var, b.value);
            break;
        case TraceStep::Kind::Alias:
            for (const Binding& b : s.bindings) store.bind_alias(b.var, b.alias);
            break;
        case TraceStep::Kind::Rewrite:
            if (s.before && s.after && erase_one(*s.before))
                clauses.push_back(*s.after);
            break;
        case TraceStep::Kind::DropTrivial:
        case TraceStep::Kind::DropDuplicate:
            if (s.before) erase_one(*s.before);
            break;
        case TraceStep::Kind::Kill:
        case TraceStep::Kind::Unsat:
            break;
        }
    }
    ReducedSystem out;
    out.n_p = sys.n_p;
    out.n_q = sys.n_q;
    out.n_value = sys.n_value;
    out.bindings = store.export_all();
    out.residual = std::move(clauses);
    std::sort(out.residual.begin(), out.residual.end());
    return out;
}

// ---------------------------------------------------------------------------
// Brute-force oracle
// ---------------------------------------------------------------------------

/// Enumerates every assignment of the system's variables (minus the fixed
/// ones) and keeps those satisfying all clauses. Independent of the
/// simplifier; used as ground truth throughout the tests.
inline std::vector<Assignment>
brute_force_solutions(const std::vector<Clause>& clauses,
                      const Assignment& fixed = {}, int cap = 24) {
    std::set<Variable> var_set;
    for (const Clause& c : clauses)
        for (const Variable& v : c.variables())
            if (!fixed.contains(v)) var_set.insert(v);
    std::vector<Variable> vars(var_set.begin(), var_set.end());
    if (static_cast<int>(vars.size()) > cap)
        throw TooLargeError("free variable count " + std::to_string(vars.size()) +
                            " exceeds cap " + std::to_string(cap));

    struct PackedTerm { std::int64_t coeff; std::uint64_t mask; };
    struct PackedClause { std::vector<PackedTerm> terms; std::int64_t rhs; };
    std::vector<PackedClause> packed;
    for (const Clause& c : clauses) {
        PackedClause pc;
        pc.rhs = c.rhs;
        for (const Term& t : c.terms) {
            std::uint64_t mask = 0;
            std::int64_t coeff = t.coeff;
            bool zero = false;
            for (int k = 0; k < t.mono.degree; ++k) {
                const Variable& v = t.mono.v[k];
                auto fx = fixed.find(v);
                if (fx != fixed.end()) {
                    if (!fx->second) { zero = true; break; }
                    continue;
                }
                auto it = std::lower_bound(vars.begin(), vars.end(), v);
                mask |= std::uint64_t{1} << (it - vars.begin());
            }
            if (!zero) pc.terms.push_back({coeff, mask});
        }
        packed.push_back(std::move(pc));
    }

    std::vector<Assignment> solutions;
    const std::uint64_t limit = std::uint64_t{1} << vars.size();
    for (std::uint64_t bits = 0; bits < limit; ++bits) {
        bool ok = true;
        for (const PackedClause& pc : packed) {
            std::int64_t sum = 0;
            for (const PackedTerm& t : pc.terms)
                if ((bits & t.mask) == t.mask) sum += t.coeff;
            if (sum != pc.rhs) { ok = false; break; }
        }
        if (!ok) continue;
        Assignment a = fixed;
        for (std::size_t i = 0; i < vars.size(); ++i)
            a[vars[i]] = (bits >> i) & 1;
        solutions.push_back(std::move(a));
    }
    return solutions;
}

inline std::vector<Assignment>
brute_force_solutions(const ClauseSystem& sys, const Assignment& fixed = {},
                      int cap = 24) {
    return brute_force_solutions(sys.clauses, fixed, cap);
}

} // namespace qfactor
