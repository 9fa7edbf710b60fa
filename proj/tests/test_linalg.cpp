#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "toricstab/linalg.hpp"

using namespace toricstab;

namespace {

Subspace random_subspace(std::size_t ambient, std::size_t dim, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> entry(-5, 5);
    while (true) {
        std::vector<QVec> rows;
        for (std::size_t i = 0; i < dim; ++i) {
            QVec v(ambient);
            for (std::size_t j = 0; j < ambient; ++j) v[j] = Rational(entry(rng));
            rows.push_back(v);
        }
        Subspace s = Subspace::span(ambient, rows);
        if (s.dim() == dim) return s;
    }
}

} // namespace

TEST_CASE("rational parsing and printing") {
    CHECK(to_string(parse_rational("3/6")) == "1/2");
    CHECK(to_string(parse_rational("-4/2")) == "-2");
    CHECK(to_string(parse_rational("7")) == "7");
    CHECK(parse_rational("2/-4") == Rational(-1) / Rational(2));
    CHECK_THROWS_AS(parse_rational("1/0"), ToricError);
    CHECK_THROWS_AS(parse_rational("x"), ToricError);
}

TEST_CASE("subspace meet: transverse and containment cases") {
    Subspace x = Subspace::line({Rational(1), Rational(0)});
    Subspace y = Subspace::line({Rational(0), Rational(1)});
    CHECK(subspace_meet(x, y).dim() == 0);

    Subspace plane = Subspace::full(2);
    Subspace diag = Subspace::line({Rational(1), Rational(1)});
    CHECK(subspace_meet(plane, diag) == diag);
    CHECK(subspace_join(x, y) == plane);
    CHECK(subspace_join(x, x) == x);
}

TEST_CASE("meet agrees with the kernel-based oracle on random 3-dim pairs in Q^5") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        Subspace a = random_subspace(5, 3, rng);
        Subspace b = random_subspace(5, 3, rng);
        CHECK(subspace_meet(a, b) == oracle::meet_via_kernels(a, b));
    }
}

TEST_CASE("dimension formula dim(meet) + dim(join) = dim A + dim B") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> d(0, 4);
    for (int trial = 0; trial < 60; ++trial) {
        Subspace a = random_subspace(4, d(rng), rng);
        Subspace b = random_subspace(4, d(rng), rng);
        CHECK(subspace_meet(a, b).dim() + subspace_join(a, b).dim() == a.dim() + b.dim());
    }
}

TEST_CASE("canonicity: results do not depend on the basis presentation") {
    Subspace a = Subspace::span(3, {{Rational(1), Rational(2), Rational(3)},
                                    {Rational(0), Rational(1), Rational(1)}});
    // Same space, different presentation.
    Subspace b = Subspace::span(3, {{Rational(1), Rational(3), Rational(4)},
                                    {Rational(2), Rational(5), Rational(7)}});
    CHECK(a == b);
    Subspace c = Subspace::line({Rational(1), Rational(1), Rational(1)});
    CHECK(subspace_meet(a, c) == subspace_meet(b, c));
    CHECK(subspace_join(a, c) == subspace_join(b, c));
}

TEST_CASE("ambient mismatch is rejected") {
    CHECK_THROWS_AS(subspace_meet(Subspace::full(2), Subspace::full(3)), ToricError);
    CHECK_THROWS_AS(subspace_join(Subspace::full(2), Subspace::full(3)), ToricError);
}

TEST_CASE("lattice multiplicity") {
    CHECK(lattice_multiplicity({{Integer(1), Integer(0)}, {Integer(0), Integer(1)}}) == 1);
    CHECK(lattice_multiplicity({{Integer(0), Integer(-1)}, {Integer(-2), Integer(1)}}) == 2);
    CHECK(lattice_multiplicity({{Integer(1), Integer(1), Integer(0)},
                                {Integer(1), Integer(-1), Integer(0)}}) == 2);
    CHECK_THROWS_AS(lattice_multiplicity({{Integer(1), Integer(0)}, {Integer(2), Integer(0)}}),
                    ToricError);
}

TEST_CASE("multiplicity equals the product of Smith divisors on random inputs") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> entry(-4, 4);
    int done = 0;
    while (done < 40) {
        std::size_t k = 1 + (rng() % 3), n = k + (rng() % 2);
        std::vector<ZVec> gens(k, ZVec(n));
        for (auto& row : gens)
            for (auto& x : row) x = Integer(entry(rng));
        QMat m(k, n);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = Rational(gens[i][j]);
        if (rank(m) != k) continue;
        CHECK(lattice_multiplicity(gens) == oracle::multiplicity_via_snf(gens));
        ++done;
    }
}

TEST_CASE("multiplicity is invariant under unimodular column operations") {
    std::vector<ZVec> gens{{Integer(2), Integer(1), Integer(3)}, {Integer(0), Integer(4), Integer(1)}};
    Integer before = lattice_multiplicity(gens);
    // col_0 += 2 col_2, then swap col_1, col_2
    for (auto& row : gens) row[0] += 2 * row[2];
    for (auto& row : gens) std::swap(row[1], row[2]);
    CHECK(lattice_multiplicity(gens) == before);
}

TEST_CASE("primitivity and lattice surjectivity") {
    CHECK(!is_primitive({Integer(2), Integer(4)}));
    CHECK(is_primitive({Integer(2), Integer(3)}));
    CHECK_THROWS_AS(is_primitive({Integer(0), Integer(0)}), ToricError);

    CHECK(is_surjective_lattice_map({{Integer(1), Integer(0)}, {Integer(0), Integer(1)}}, 2));
    CHECK(!is_surjective_lattice_map({{Integer(2)}}, 1));
    CHECK(is_surjective_lattice_map({{Integer(2), Integer(3)}}, 2));
    CHECK(!is_surjective_lattice_map({{Integer(1), Integer(0)}, {Integer(0), Integer(2)}}, 2));
}

TEST_CASE("smith normal form transforms are consistent") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> entry(-6, 6);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t r = 1 + rng() % 3, c = 1 + rng() % 3;
        std::vector<ZVec> a(r, ZVec(c));
        for (auto& row : a)
            for (auto& x : row) x = Integer(entry(rng));
        SmithForm s = smith_normal_form(a);
        // D = P A Q
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) {
                Integer v = 0;
                for (std::size_t k = 0; k < r; ++k)
                    for (std::size_t l = 0; l < c; ++l) v += s.p[i][k] * a[k][l] * s.q[l][j];
                CHECK(v == (i == j && i < s.divisors.size() ? s.divisors[i] : Integer(0)));
            }
        for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i)
            if (s.divisors[i + 1] != 0)
                CHECK((s.divisors[i] == 0 || s.divisors[i + 1] % s.divisors[i] == 0));
    }
}

TEST_CASE("integer solve via smith form") {
    // x + 2y = 3 has integer solutions; 2x + 4y = 3 does not.
    auto sol = solve_integer({{Integer(1), Integer(2)}}, {Integer(3)});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] + 2 * (*sol)[1] == 3);
    CHECK(!solve_integer({{Integer(2), Integer(4)}}, {Integer(3)}).has_value());
}

TEST_CASE("lp feasibility") {
    // x + y = 1, x,y >= 0 feasible; x = -1 infeasible.
    QMat a(1, 2);
    a.at(0, 0) = 1;
    a.at(0, 1) = 1;
    CHECK(lp_feasible(a, {Rational(1)}));
    QMat b(1, 1);
    b.at(0, 0) = 1;
    CHECK(!lp_feasible(b, {Rational(-1)}));
    // x - y = 0, x + y = 2 -> x = y = 1
    QMat c(2, 2);
    c.at(0, 0) = 1; c.at(0, 1) = -1;
    c.at(1, 0) = 1; c.at(1, 1) = 1;
    CHECK(lp_feasible(c, {Rational(0), Rational(2)}));
    CHECK(!lp_feasible(c, {Rational(0), Rational(-2)}));
}
