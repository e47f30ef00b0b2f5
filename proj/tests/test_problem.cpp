#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace qfactor;
using qtest::long_multiplication_assignment;
using qtest::render_all;
using qtest::split_biprime;

TEST_CASE("instance validation") {
    CHECK(make_instance(143).n_bits == 8);
    CHECK(make_instance(323).n_bits == 9);
    CHECK(make_instance(9).n_bits == 4);
    CHECK_THROWS_AS(make_instance(144), EvenInputError);
    CHECK_THROWS_AS(make_instance(2), EvenInputError);
    CHECK_THROWS_AS(make_instance(7), TooSmallError);
}

TEST_CASE("variable ordering and rendering") {
    CHECK(p_bit(1) < p_bit(2));
    CHECK(p_bit(3) < q_bit(1));
    CHECK(q_bit(3) < carry(1, 2));
    CHECK(carry(2, 3) < carry(2, 4));
    CHECK(carry(2, 4) < carry(3, 4));
    CHECK(to_string(p_bit(2)) == "p2");
    CHECK(to_string(carry(5, 7)) == "z(5,7)");
    CHECK(to_string(Monomial::prod(q_bit(1), p_bit(2))) == "p2*q1");
    CHECK(Monomial::prod(p_bit(1), p_bit(1)) == Monomial::var(p_bit(1)));
}

TEST_CASE("bit length candidates for 143") {
    const auto plan = estimate_bit_lengths(make_instance(143));
    auto has = [&](int np, int nq) {
        return std::count(plan.candidates.begin(), plan.candidates.end(),
                          std::make_pair(np, nq)) == 1;
    };
    CHECK(has(4, 4));
    CHECK_FALSE(has(2, 4)); // a 2x4-bit product tops out at 45
    CHECK_FALSE(has(3, 4)); // a 3x4-bit product tops out at 105
    for (auto [np, nq] : plan.candidates) {
        CHECK(np >= 2);
        CHECK(np <= nq);
        CHECK(nq <= 7);
    }
    // Width-ascending order.
    for (std::size_t i = 1; i < plan.candidates.size(); ++i)
        CHECK(plan.candidates[i - 1].first + plan.candidates[i - 1].second <=
              plan.candidates[i].first + plan.candidates[i].second);
}

TEST_CASE("bit length candidates for 323 and 15") {
    const auto plan323 = estimate_bit_lengths(make_instance(323));
    CHECK(std::count(plan323.candidates.begin(), plan323.candidates.end(),
                     std::make_pair(5, 5)) == 1);

    const auto plan15 = estimate_bit_lengths(make_instance(15));
    REQUIRE(plan15.candidates.size() == 1);
    CHECK(plan15.candidates[0] == std::make_pair(2, 3));
}

TEST_CASE("trial division pruning") {
    const auto plan = estimate_bit_lengths(make_instance(143), true);
    for (auto [np, nq] : plan.candidates) CHECK(np == 4); // only 11 divides 143
    CHECK(std::count(plan.candidates.begin(), plan.candidates.end(),
                     std::make_pair(4, 4)) == 1);
}

TEST_CASE("plan always contains the true pair") {
    for (std::uint64_t n : odd_biprimes(10000)) {
        auto [p, q] = split_biprime(n);
        int np = bit_length(p), nq = bit_length(q);
        if (np > nq) std::swap(np, nq);
        const auto plan = estimate_bit_lengths(make_instance(n));
        INFO("N = " << n);
        CHECK(std::count(plan.candidates.begin(), plan.candidates.end(),
                         std::make_pair(np, nq)) == 1);
    }
}

TEST_CASE("4x4 table for 143") {
    const auto t = build_multiplication_table(4, 4, 143);
    REQUIRE(t.width() == 8);
    CHECK(t.extra_columns() == 1);

    auto outs = [&](int col) { return t.columns[col].carries_out; };
    CHECK(outs(0).empty());
    CHECK(outs(1) == std::vector<Variable>{carry(1, 2)});
    CHECK(outs(2) == std::vector<Variable>{carry(2, 3), carry(2, 4)});
    CHECK(outs(3) == std::vector<Variable>{carry(3, 4), carry(3, 5)});
    CHECK(outs(4) == std::vector<Variable>{carry(4, 5), carry(4, 6)});
    CHECK(outs(5) == std::vector<Variable>{carry(5, 6), carry(5, 7)});
    CHECK(outs(6) == std::vector<Variable>{carry(6, 7)});
    CHECK(outs(7).empty());

    CHECK(t.columns[0].has_constant_product);
    CHECK(t.columns[0].products.empty());
    CHECK(t.columns[1].products ==
          std::vector<Monomial>{Monomial::var(p_bit(1)), Monomial::var(q_bit(1))});
    CHECK(t.columns[7].products.empty());
    CHECK(t.columns[7].carries_in ==
          std::vector<Variable>{carry(6, 7), carry(5, 7)});
}

TEST_CASE("5x5 table for 323") {
    const auto t = build_multiplication_table(5, 5, 323);
    REQUIRE(t.width() == 10);
    CHECK(t.extra_columns() == 1);
    CHECK(t.columns[8].carries_out == std::vector<Variable>{carry(8, 9)});
    CHECK(t.columns[9].carries_out.empty());
    CHECK(t.columns[9].carries_in ==
          std::vector<Variable>{carry(8, 9), carry(7, 9)});
    // Column 4 holds the full diagonal plus two carries: seven addends.
    CHECK(t.columns[4].products.size() == 5);
    CHECK(t.columns[4].carries_in.size() == 2);
    CHECK(t.columns[4].carries_out ==
          std::vector<Variable>{carry(4, 5), carry(4, 6)});
}

TEST_CASE("2x2 table for 9") {
    const auto t = build_multiplication_table(2, 2, 9);
    REQUIRE(t.width() == 4);
    CHECK(t.columns[1].carries_out == std::vector<Variable>{carry(1, 2)});
    CHECK(t.columns[2].products ==
          std::vector<Monomial>{Monomial::prod(p_bit(1), q_bit(1))});
    CHECK(t.columns[2].carries_out == std::vector<Variable>{carry(2, 3)});
    CHECK(t.columns[3].carries_in == std::vector<Variable>{carry(2, 3)});
    CHECK(t.columns[3].carries_out.empty());
}

TEST_CASE("clause system for 143") {
    const auto sys = generate_clauses(build_multiplication_table(4, 4, 143));
    const std::vector<std::string> expected = {
        "p1 + q1 - 2*z(1,2) = 1",
        "p2 + q2 + z(1,2) - 2*z(2,3) - 4*z(2,4) + p1*q1 = 1",
        "p3 + q3 + z(2,3) - 2*z(3,4) - 4*z(3,5) + p1*q2 + p2*q1 = 1",
        "z(2,4) + z(3,4) - 2*z(4,5) - 4*z(4,6) + p1*q3 + p2*q2 + p3*q1 = 0",
        "z(3,5) + z(4,5) - 2*z(5,6) - 4*z(5,7) + p2*q3 + p3*q2 = 0",
        "z(4,6) + z(5,6) - 2*z(6,7) + p3*q3 = 0",
        "z(5,7) + z(6,7) = 1",
    };
    CHECK(render_all(sys.clauses) == expected);
}

TEST_CASE("clause system for 9") {
    const auto sys = generate_clauses(build_multiplication_table(2, 2, 9));
    const std::vector<std::string> expected = {
        "p1 + q1 - 2*z(1,2) = 0",
        "z(1,2) - 2*z(2,3) + p1*q1 = 0",
        "z(2,3) = 1",
    };
    CHECK(render_all(sys.clauses) == expected);
}

TEST_CASE("clause system for 323 matches its table") {
    const auto table = build_multiplication_table(5, 5, 323);
    const auto sys = generate_clauses(table);
    REQUIRE(sys.clauses.size() == 9); // one per column above 2^0
    CHECK(to_string(sys.clauses.front()) == "p1 + q1 - 2*z(1,2) = 1");
    CHECK(to_string(sys.clauses.back()) == "z(7,9) + z(8,9) = 0");
    // Clause count equals non-trivial columns; width is products + one extra.
    CHECK(static_cast<int>(sys.clauses.size()) == table.width() - 1);
}

TEST_CASE("even N caught at clause generation") {
    const auto t = build_multiplication_table(4, 4, 144);
    CHECK_THROWS_AS(generate_clauses(t), InconsistentColumnError);
}

TEST_CASE("true factorizations satisfy every clause") {
    for (std::uint64_t n : odd_biprimes(2000)) {
        auto [p, q] = split_biprime(n);
        int np = bit_length(p), nq = bit_length(q);
        std::uint64_t pv = p, qv = q;
        if (np > nq) { std::swap(np, nq); std::swap(pv, qv); }
        const auto table = build_multiplication_table(np, nq, n);
        const auto assignment = long_multiplication_assignment(table, pv, qv);
        INFO("N = " << n << " = " << pv << " * " << qv);
        REQUIRE(assignment.has_value()); // carry allocation always suffices
        const auto sys = generate_clauses(table);
        for (const Clause& c : sys.clauses) {
            INFO("clause " << to_string(c));
            CHECK(c.holds(*assignment));
        }
    }
}

TEST_CASE("clause canonical form") {
    Clause c;
    c.terms = {{1, Monomial::var(q_bit(1))},
               {2, Monomial::var(p_bit(1))},
               {-2, Monomial::var(p_bit(1))},
               {3, Monomial::one()},
               {1, Monomial::prod(p_bit(1), q_bit(2))}};
    c.rhs = 5;
    c.canonicalize();
    CHECK(to_string(c) == "q1 + p1*q2 = 2");

    Clause trivial;
    trivial.canonicalize();
    CHECK(trivial.trivially_true());
    trivial.rhs = 1;
    CHECK(trivial.contradiction());
}
