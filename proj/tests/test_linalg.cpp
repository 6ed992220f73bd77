#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ohcp/linalg.hpp"

using namespace ohcp;

namespace {

RationalMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    RationalMatrix m(int(rows.size()), rows.empty() ? 0 : int(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m(int(i), int(j)) = long(rows[i][j]);
    return m;
}

// Cofactor expansion, the slow second opinion.
Rat det_cofactor(const RationalMatrix& m) {
    int n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    Rat sum = 0;
    for (int j = 0; j < n; ++j) {
        if (m(0, j) == 0) continue;
        RationalMatrix minor(n - 1, n - 1);
        for (int i = 1; i < n; ++i)
            for (int k = 0, c = 0; k < n; ++k)
                if (k != j) minor(i - 1, c++) = m(i, k);
        Rat term = m(0, j) * det_cofactor(minor);
        sum += (j % 2 == 0) ? term : -term;
    }
    return sum;
}

}  // namespace

TEST_CASE("determinant on known matrices") {
    CHECK(determinant(from_rows({{2, 1}, {1, 1}})) == 1);
    CHECK(determinant(from_rows({{1, 2}, {2, 4}})) == 0);
    CHECK(determinant(RationalMatrix::identity(4)) == 1);
    CHECK(determinant(RationalMatrix(0, 0)) == 1);

    RationalMatrix m(2, 2);
    m(0, 0) = Rat(1, 2);
    m(0, 1) = Rat(1, 3);
    m(1, 0) = Rat(1, 5);
    m(1, 1) = Rat(1, 7);
    CHECK(determinant(m) == Rat(1, 14) - Rat(1, 15));

    // Row swap flips the sign.
    CHECK(determinant(from_rows({{0, 1}, {1, 0}})) == -1);
}

TEST_CASE("determinant agrees with cofactor expansion on random matrices") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + int(rng() % 5);
        RationalMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                m(i, j) = Rat(d(rng), 1 + (rng() % 3));
                mpq_canonicalize(m(i, j).get_mpq_t());
            }
        CHECK(determinant(m) == det_cofactor(m));
    }
}

TEST_CASE("rank") {
    CHECK(rank(from_rows({{1, 2, 3}, {2, 4, 6}, {0, 0, 1}})) == 2);
    CHECK(rank(RationalMatrix(3, 3)) == 0);
    CHECK(rank(RationalMatrix::identity(5)) == 5);
    CHECK(rank(from_rows({{1, 0}, {0, 1}, {1, 1}})) == 2);
}

TEST_CASE("kernel basis spans the null space with primitive integer vectors") {
    RationalMatrix m = from_rows({{1, 2, 3}, {2, 4, 6}});
    auto basis = kernel_basis(m);
    REQUIRE(basis.size() == 2);
    for (const auto& v : basis) {
        auto out = m.multiply(v);
        for (const Rat& x : out) CHECK(x == 0);
        Int g = 0;
        for (const Rat& x : v) {
            CHECK(is_integer(x));
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
        }
        CHECK(g == 1);
        for (const Rat& x : v)
            if (x != 0) {
                CHECK(x > 0);  // leading entry positive
                break;
            }
    }
    CHECK(kernel_basis(RationalMatrix::identity(3)).empty());
}

TEST_CASE("solve_exact") {
    RationalMatrix m = from_rows({{2, 1}, {1, 1}});
    auto x = solve_exact(m, {Rat(3), Rat(2)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 1);

    // Inconsistent system.
    RationalMatrix s = from_rows({{1, 1}, {2, 2}});
    CHECK(!solve_exact(s, {Rat(1), Rat(3)}).has_value());

    // Underdetermined: free variables zero, still a solution.
    RationalMatrix u = from_rows({{1, 1, 1}});
    auto y = solve_exact(u, {Rat(5)});
    REQUIRE(y.has_value());
    CHECK(u.multiply(*y) == std::vector<Rat>{Rat(5)});
}

TEST_CASE("smith normal form invariants") {
    auto verify = [](const RationalMatrix& m) {
        SnfResult s = smith_normal_form(m);
        // u * m * v is the diagonal of invariant factors.
        RationalMatrix d = s.u.multiply(m).multiply(s.v);
        for (int i = 0; i < d.rows(); ++i)
            for (int j = 0; j < d.cols(); ++j) {
                if (i == j && i < s.rank)
                    CHECK(d(i, j) == Rat(s.diag[i]));
                else
                    CHECK(d(i, j) == 0);
            }
        for (size_t i = 1; i < s.diag.size(); ++i) CHECK(Rat(s.diag[i]) / Rat(s.diag[i - 1]) ==
                                                          Rat(s.diag[i] / s.diag[i - 1]));
        Rat du = determinant(s.u), dv = determinant(s.v);
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));
        return s;
    };

    SnfResult a = verify(from_rows({{2, 4}, {6, 8}}));
    CHECK(a.diag == std::vector<Int>{2, 4});

    SnfResult b = verify(from_rows({{1, 0}, {0, 1}, {0, 0}}));
    CHECK(b.diag == std::vector<Int>{1, 1});

    verify(from_rows({{6, 10, 15}, {10, 15, 6}, {15, 6, 10}}));
    verify(RationalMatrix(2, 3));

    std::mt19937 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        int r = 1 + int(rng() % 4), c = 1 + int(rng() % 4);
        RationalMatrix m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m(i, j) = long(rng() % 9) - 4;
        SnfResult s = verify(m);
        CHECK(s.rank == rank(m));
    }
}

TEST_CASE("size limit and dimension errors") {
    CHECK_THROWS_AS(RationalMatrix(501, 2), InternalError);
    CHECK_THROWS_AS(determinant(RationalMatrix(2, 3)), InternalError);
    CHECK_THROWS_AS(solve_exact(RationalMatrix(2, 2), {Rat(1)}), InternalError);
    RationalMatrix frac(1, 1);
    frac(0, 0) = Rat(1, 2);
    CHECK_THROWS_AS(smith_normal_form(frac), InternalError);
}
