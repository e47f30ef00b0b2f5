#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace qfactor;
using qtest::render_all;

namespace {

Clause clause_of(std::vector<Term> terms, std::int64_t rhs) {
    return make_clause(std::move(terms), rhs);
}

ClauseSystem system_of(std::vector<Clause> clauses, int np = 0, int nq = 0,
                       std::uint64_t n = 0) {
    ClauseSystem sys;
    sys.n_p = np;
    sys.n_q = nq;
    sys.n_value = n;
    sys.clauses = std::move(clauses);
    return sys;
}

} // namespace

TEST_CASE("bound deduction zeroes an unreachable carry") {
    // two bits summing to an odd value cannot also produce a carry
    const Clause c = clause_of({{1, Monomial::var(p_bit(1))},
                                {1, Monomial::var(q_bit(1))},
                                {-2, Monomial::var(carry(1, 2))}},
                               1);
    const auto bindings = deduce_parity_bounds(c);
    REQUIRE(bindings.size() == 1);
    CHECK(to_string(bindings[0]) == "z(1,2) = 0");
}

TEST_CASE("bound deduction zeroes both carries of a two-bit column") {
    const Clause c = clause_of({{1, Monomial::var(p_bit(2))},
                                {1, Monomial::var(q_bit(2))},
                                {-2, Monomial::var(carry(2, 3))},
                                {-4, Monomial::var(carry(2, 4))}},
                               1);
    const auto bindings = deduce_parity_bounds(c);
    REQUIRE(bindings.size() == 2);
    CHECK(to_string(bindings[0]) == "z(2,3) = 0");
    CHECK(to_string(bindings[1]) == "z(2,4) = 0");
}

TEST_CASE("contradictions are detected") {
    CHECK_THROWS_AS(deduce_parity_bounds(clause_of({}, 1)), UnsatisfiableError);
    // sum of two bits can never be negative
    CHECK_THROWS_AS(deduce_parity_bounds(clause_of({{1, Monomial::var(p_bit(1))},
                                                    {1, Monomial::var(q_bit(1))}},
                                                   -1)),
                    UnsatisfiableError);
}

TEST_CASE("odd target forces a lone variable and its doubler") {
    // x - 2z = -1 can only hold with x = 1, z = 1
    const Clause c = clause_of({{1, Monomial::var(p_bit(1))},
                                {-2, Monomial::var(carry(3, 4))}},
                               -1);
    const auto bindings = deduce_parity_bounds(c);
    REQUIRE(bindings.size() == 2);
    CHECK(to_string(bindings[0]) == "p1 = 1");
    CHECK(to_string(bindings[1]) == "z(3,4) = 1");
}

TEST_CASE("product pinned to one binds both factors") {
    const Clause c = clause_of({{1, Monomial::prod(p_bit(3), q_bit(3))}}, 1);
    const auto bindings = deduce_parity_bounds(c);
    REQUIRE(bindings.size() == 2);
    CHECK(to_string(bindings[0]) == "p3 = 1");
    CHECK(to_string(bindings[1]) == "q3 = 1");
}

TEST_CASE("zero sum zeroes every variable") {
    const Clause c = clause_of({{1, Monomial::var(p_bit(1))},
                                {1, Monomial::var(q_bit(1))},
                                {1, Monomial::var(carry(1, 2))}},
                               0);
    const auto bindings = deduce_parity_bounds(c);
    CHECK(bindings.size() == 3);
}

TEST_CASE("product pair summing to zero is kept, not decomposed") {
    const Clause c = clause_of({{1, Monomial::prod(p_bit(1), q_bit(2))},
                                {1, Monomial::prod(p_bit(2), q_bit(1))}},
                               0);
    CHECK(deduce_parity_bounds(c).empty());
    const ClauseDeduction d = deduce_clause_bounds(c);
    CHECK_FALSE(d.drop);
    CHECK(d.reduced == c);
}

TEST_CASE("half-sum merges all three variables") {
    const Clause c = clause_of({{1, Monomial::var(p_bit(2))},
                                {1, Monomial::var(q_bit(2))},
                                {-2, Monomial::var(carry(2, 3))}},
                               0);
    const ClauseDeduction d = deduce_clause_identities(c);
    REQUIRE(d.aliases.size() == 2);
    CHECK(d.drop);
    CHECK(d.aliases[0] == std::make_pair(p_bit(2), q_bit(2)));
    CHECK(d.aliases[1] == std::make_pair(p_bit(2), carry(2, 3)));
}

TEST_CASE("matched pair merges two variables") {
    const Clause c = clause_of({{2, Monomial::var(q_bit(2))},
                                {-2, Monomial::var(carry(2, 3))}},
                               0);
    const ClauseDeduction d = deduce_clause_identities(c);
    REQUIRE(d.aliases.size() == 1);
    CHECK(d.drop);
}

TEST_CASE("exactly-one records a product fact") {
    const Clause c = clause_of({{1, Monomial::var(p_bit(1))},
                                {1, Monomial::var(q_bit(1))}},
                               1);
    const auto fact = product_fact(c);
    REQUIRE(fact.has_value());
    CHECK(*fact == Monomial::prod(p_bit(1), q_bit(1)));
    CHECK_FALSE(product_fact(clause_of({{1, Monomial::var(p_bit(1))},
                                        {1, Monomial::var(q_bit(1))}},
                                       0))
                    .has_value());
}

TEST_CASE("product facts erase matching products elsewhere") {
    // x + y = 1 plus a column containing x*y: the product term must vanish.
    const auto sys = system_of({clause_of({{1, Monomial::var(p_bit(1))},
                                           {1, Monomial::var(q_bit(1))}},
                                          1),
                                clause_of({{1, Monomial::prod(p_bit(1), q_bit(1))},
                                           {1, Monomial::var(p_bit(2))},
                                           {1, Monomial::var(q_bit(2))}},
                                          1)});
    const auto [bindings, out] = apply_rules(sys);
    REQUIRE(out.clauses.size() == 2);
    CHECK(to_string(out.clauses[1]) == "p2 + q2 = 1");
}

TEST_CASE("fixing one side of a product fact zeroes the other") {
    const auto sys = system_of({clause_of({{1, Monomial::var(p_bit(1))},
                                           {1, Monomial::var(q_bit(1))}},
                                          1),
                                clause_of({{1, Monomial::var(p_bit(1))}}, 1)});
    const auto result = simplify(sys);
    CHECK(result.reduced.residual.empty());
    CHECK(render_all(result.reduced.bindings) ==
          std::vector<std::string>{"p1 = 1", "q1 = 0"});
}

TEST_CASE("x + 2y - 2z = 0 fixes x and merges y with z") {
    const auto sys = system_of({clause_of({{1, Monomial::var(p_bit(1))},
                                           {2, Monomial::var(q_bit(1))},
                                           {-2, Monomial::var(carry(1, 2))}},
                                          0)});
    const auto result = simplify(sys);
    CHECK(result.reduced.residual.empty());
    CHECK(render_all(result.reduced.bindings) ==
          std::vector<std::string>{"p1 = 0", "z(1,2) = q1"});
}

TEST_CASE("empty system reduces to nothing") {
    const auto result = simplify(system_of({}));
    CHECK(result.reduced.bindings.empty());
    CHECK(result.reduced.residual.empty());
    CHECK(result.trace.steps.empty());
}

TEST_CASE("143 reduces to the three-clause system over four bits") {
    const auto sys = generate_clauses(build_multiplication_table(4, 4, 143));
    const auto result = simplify(sys);

    CHECK(render_all(result.reduced.residual) ==
          std::vector<std::string>{"p1 + q1 = 1", "p2 + q2 = 1",
                                   "p1*q2 + p2*q1 = 1"});
    CHECK(render_all(result.reduced.bindings) ==
          std::vector<std::string>{"p3 = 1", "q3 = 1", "z(1,2) = 0", "z(2,3) = 0",
                                   "z(2,4) = 0", "z(3,4) = 1", "z(3,5) = 0",
                                   "z(4,5) = 1", "z(4,6) = 0", "z(5,6) = 1",
                                   "z(5,7) = 0", "z(6,7) = 1"});
}

TEST_CASE("323 reduces to one clause with every other bit pinned") {
    const auto sys = generate_clauses(build_multiplication_table(5, 5, 323));
    const auto result = simplify(sys);

    CHECK(render_all(result.reduced.residual) ==
          std::vector<std::string>{"p1 + q1 = 1"});
    CHECK(render_all(result.reduced.bindings) ==
          std::vector<std::string>{
              "p2 = 0", "p3 = 0", "p4 = 1", "q2 = 0", "q3 = 0", "q4 = 1",
              "z(1,2) = 0", "z(2,3) = 0", "z(2,4) = 0", "z(3,4) = 0",
              "z(3,5) = 0", "z(4,5) = 1", "z(4,6) = 0", "z(5,6) = 1",
              "z(5,7) = 0", "z(6,7) = 0", "z(6,8) = 0", "z(7,8) = 0",
              "z(7,9) = 0", "z(8,9) = 0"});
}

TEST_CASE("simplification is deterministic and its trace replays") {
    for (std::uint64_t n : {std::uint64_t{143}, std::uint64_t{323},
                            std::uint64_t{259}, std::uint64_t{391}}) {
        const auto sys = qtest::reduce_true_pair(n);
        const auto again = qtest::reduce_true_pair(n);
        CHECK(sys.trace.to_text() == again.trace.to_text());
        CHECK(render_all(sys.reduced.residual) == render_all(again.reduced.residual));

        auto [p, q] = qtest::split_biprime(n);
        int np = bit_length(p), nq = bit_length(q);
        if (np > nq) std::swap(np, nq);
        const auto raw = generate_clauses(build_multiplication_table(np, nq, n));
        const auto replayed = replay_trace(raw, sys.trace);
        CHECK(render_all(replayed.residual) == render_all(sys.reduced.residual));
        CHECK(render_all(replayed.bindings) == render_all(sys.reduced.bindings));
    }
}

TEST_CASE("wrong bit lengths are rejected as unsatisfiable") {
    const auto sys = generate_clauses(build_multiplication_table(2, 6, 143));
    CHECK_THROWS_AS(simplify(sys), UnsatisfiableError);
}

TEST_CASE("brute force on a single exactly-one clause") {
    const std::vector<Clause> cs = {make_clause({{1, Monomial::var(p_bit(1))},
                                                 {1, Monomial::var(q_bit(1))}},
                                                1)};
    const auto sols = brute_force_solutions(cs);
    REQUIRE(sols.size() == 2);
    const auto rows = qtest::assignments_on({p_bit(1), q_bit(1)}, sols);
    CHECK(rows == std::set<std::vector<int>>{{0, 1}, {1, 0}});
}

TEST_CASE("brute force cap") {
    std::vector<Clause> cs;
    std::vector<Term> terms;
    for (int i = 0; i < 30; ++i) terms.push_back({1, Monomial::var(p_bit(i))});
    cs.push_back(make_clause(std::move(terms), 1));
    CHECK_THROWS_AS(brute_force_solutions(cs), TooLargeError);
}

TEST_CASE("raw 143 system has exactly the two factorizations") {
    const auto sys = generate_clauses(build_multiplication_table(4, 4, 143));
    // Fixing the top bits leaves fourteen free variables.
    const Assignment seeds{{p_bit(3), true}, {q_bit(3), true}};
    const auto sols = brute_force_solutions(sys, seeds);
    REQUIRE(sols.size() == 2);
    std::set<std::uint64_t> ps;
    for (const auto& s : sols) {
        std::uint64_t p = 1 | (1u << 3);
        for (int k = 1; k <= 2; ++k)
            if (s.at(p_bit(k))) p |= std::uint64_t{1} << k;
        ps.insert(p);
    }
    CHECK(ps == std::set<std::uint64_t>{11, 13});
}

TEST_CASE("residual 143 system matches the published feasible rows") {
    const auto result = qtest::reduce_true_pair(143);
    const auto sols = brute_force_solutions(result.reduced.residual);
    const auto rows = qtest::assignments_on(
        {p_bit(1), p_bit(2), q_bit(1), q_bit(2)}, sols);
    CHECK(rows == std::set<std::vector<int>>{{1, 0, 0, 1}, {0, 1, 1, 0}});
}

TEST_CASE("reduction preserves the raw solution set") {
    // The reduced system (bindings plus residual) must describe exactly the
    // raw system's solutions, for a spread of instances.
    for (std::uint64_t n :
         {std::uint64_t{9}, std::uint64_t{15}, std::uint64_t{21}, std::uint64_t{25},
          std::uint64_t{33}, std::uint64_t{35}, std::uint64_t{49}, std::uint64_t{77},
          std::uint64_t{143}, std::uint64_t{259}, std::uint64_t{323},
          std::uint64_t{391}, std::uint64_t{817}}) {
        auto [p, q] = qtest::split_biprime(n);
        int np = bit_length(p), nq = bit_length(q);
        if (np > nq) std::swap(np, nq);
        const auto raw = generate_clauses(build_multiplication_table(np, nq, n));
        const Assignment seeds{{p_bit(np - 1), true}, {q_bit(nq - 1), true}};
        const auto raw_sols = brute_force_solutions(raw, seeds, 26);

        std::set<Variable> raw_vars;
        for (const Clause& c : raw.clauses)
            for (const Variable& v : c.variables()) raw_vars.insert(v);
        const std::vector<Variable> vars(raw_vars.begin(), raw_vars.end());

        const auto result = simplify(raw);
        const auto residual_sols = brute_force_solutions(result.reduced.residual);
        const auto reduced_rows =
            qtest::reduced_solutions_on(vars, result.reduced, residual_sols);

        INFO("N = " << n);
        CHECK(qtest::assignments_on(vars, raw_sols) == reduced_rows);
    }
}

TEST_CASE("residual right-hand sides stay in {0, 1} for the worked examples") {
    for (std::uint64_t n : {std::uint64_t{143}, std::uint64_t{323}}) {
        const auto result = qtest::reduce_true_pair(n);
        for (const Clause& c : result.reduced.residual) {
            CHECK(c.rhs >= 0);
            CHECK(c.rhs <= 1);
        }
    }
}
