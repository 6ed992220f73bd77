#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ohcp/fixtures.hpp"
#include "ohcp/lp.hpp"

using namespace ohcp;

namespace {

OhcpInstance make_instance(const char* name, const std::vector<Rat>& c,
                           const std::vector<Rat>& w) {
    auto kc = build_complex(fixture(name).maximal);
    return formulate(kc, 1, c, w);
}

// Möbius-5 edge order: 12 13 14 15 23 24 25 34 35 45. Interior edges carry
// weight 1, exterior 1/20; input chain is the first interior edge.
OhcpInstance mobius5_skewed() {
    std::vector<Rat> c(10), w(10, Rat(1, 20));
    c[0] = 1;
    for (int i : {0, 3, 4, 7, 9}) w[i] = 1;
    return make_instance("mobius5", c, w);
}

SolutionVector random_feasible(const OhcpInstance& inst, std::mt19937& rng) {
    RationalMatrix n = kernel_basis_n(inst);
    SolutionVector z = identity_solution(inst);
    std::uniform_int_distribution<int> d(-2, 2);
    for (int c = 0; c < n.cols(); ++c) {
        int u = d(rng);
        if (u == 0) continue;
        for (int r = 0; r < inst.cols(); ++r) z[r] += u * n(r, c);
    }
    // Slide each opposite pair along its kernel direction into z >= 0.
    for (int i = 0; i < inst.cols(); ++i) {
        int o = opposite_index(i, inst.m, inst.n);
        if (i > o) continue;
        Rat t = 0;
        if (z[i] < 0) t = -z[i];
        if (z[o] < 0 && -z[o] > t) t = -z[o];
        z[i] += t;
        z[o] += t;
    }
    return z;
}

RationalMatrix dense_a(const OhcpInstance& inst) {
    RationalMatrix a(inst.m, inst.cols());
    for (int i = 0; i < inst.m; ++i)
        for (int j = 0; j < inst.cols(); ++j) a(i, j) = inst.acol(i, j);
    return a;
}

// Second implementation of the basicness test: z is basic iff no nonzero
// kernel combination vanishes on the zero set of z.
bool basic_by_kernel_witness(const OhcpInstance& inst, const SolutionVector& z) {
    auto v = kernel_basis(dense_a(inst));
    std::vector<int> zeros;
    for (int i = 0; i < inst.cols(); ++i)
        if (z[i] == 0) zeros.push_back(i);
    RationalMatrix m0(int(zeros.size()), int(v.size()));
    for (size_t r = 0; r < zeros.size(); ++r)
        for (size_t c = 0; c < v.size(); ++c) m0(int(r), int(c)) = v[c][zeros[r]];
    return rank(m0) == int(v.size());
}

Rat objective_of(const OhcpInstance& inst, const SolutionVector& z) {
    Rat s = 0;
    for (int j = 0; j < inst.cols(); ++j) s += inst.cost(j) * z[j];
    return s;
}

}  // namespace

TEST_CASE("formulate validates its inputs") {
    auto kc = build_complex(fixture("square").maximal);
    std::vector<Rat> c(5), w(5, Rat(1));
    CHECK_NOTHROW(formulate(kc, 1, c, w));
    CHECK_THROWS_AS(formulate(kc, 1, std::vector<Rat>(4), w), InternalError);
    std::vector<Rat> neg = w;
    neg[0] = -1;
    CHECK_THROWS_AS(formulate(kc, 1, c, neg), InternalError);
    std::vector<Rat> frac = c;
    frac[0] = Rat(1, 2);
    CHECK_THROWS_AS(formulate(kc, 1, frac, w), InternalError);
}

TEST_CASE("pair indexing and coefficient extraction") {
    OhcpInstance inst = mobius5_skewed();
    for (int i = 0; i < inst.cols(); ++i)
        CHECK(opposite_index(opposite_index(i, inst.m, inst.n), inst.m, inst.n) == i);

    SolutionVector z(inst.cols());
    z[0] = 3;
    z[inst.m] = 1;  // same pair, opposite side
    z[2 * inst.m + 2] = Rat(1, 2);
    CHECK(p_coefficient(inst, z, 0) == 2);
    CHECK(q_coefficient(inst, z, 2) == Rat(1, 2));
    CHECK(q_coefficient(inst, z, 0) == 0);
}

TEST_CASE("kernel basis of the constraint matrix") {
    OhcpInstance inst = mobius5_skewed();
    RationalMatrix n = kernel_basis_n(inst);
    CHECK(n.rows() == inst.cols());
    CHECK(n.cols() == inst.m + 2 * inst.n);
    for (int c = 0; c < n.cols(); ++c) {
        auto out = apply_a(inst, n.column(c));
        for (const Rat& x : out) CHECK(x == 0);
    }
    CHECK(rank(n) == n.cols());  // columns independent
    // Dimension count: rank(A) = m, so the kernel has cols - m dimensions.
    CHECK(rank(dense_a(inst)) == inst.m);
}

TEST_CASE("identity solution and conciseness") {
    std::vector<Rat> c(10), w(10, Rat(1));
    c[0] = 2;
    c[5] = -3;
    OhcpInstance inst = make_instance("mobius5", c, w);
    SolutionVector zi = identity_solution(inst);
    CHECK(apply_a(inst, zi) == inst.c);
    CHECK(is_concise(inst, zi));
    CHECK(zi[0] == 2);
    CHECK(zi[inst.m + 5] == 3);
    for (int j = 2 * inst.m; j < inst.cols(); ++j) CHECK(zi[j] == 0);
    CHECK(canonicalize_concise(inst, zi) == zi);
    CHECK(is_basic_solution(inst, zi));
}

TEST_CASE("canonicalization keeps coefficients and minimizes support") {
    OhcpInstance inst = mobius5_skewed();
    std::mt19937 rng(3);
    for (int t = 0; t < 20; ++t) {
        SolutionVector z = random_feasible(inst, rng);
        SolutionVector zc = canonicalize_concise(inst, z);
        CHECK(is_concise(inst, zc));
        CHECK(canonicalize_concise(inst, zc) == zc);
        for (int i = 0; i < inst.m; ++i)
            CHECK(p_coefficient(inst, z, i) == p_coefficient(inst, zc, i));
        for (int j = 0; j < inst.n; ++j)
            CHECK(q_coefficient(inst, z, j) == q_coefficient(inst, zc, j));
        CHECK(apply_a(inst, zc) == inst.c);
    }
}

TEST_CASE("linear conciseness is a pair-side condition") {
    OhcpInstance inst = mobius5_skewed();
    SolutionVector a(inst.cols()), b(inst.cols());
    a[0] = 1;
    b[1] = 2;
    CHECK(linearly_concise(inst, {&a, &b}));
    b[inst.m] = 1;  // opposite side of a's pair
    CHECK(!linearly_concise(inst, {&a, &b}));
    b[inst.m] = 0;
    b[0] = 5;  // same side is fine
    CHECK(linearly_concise(inst, {&a, &b}));
}

TEST_CASE("basicness test agrees with the kernel-witness oracle") {
    std::mt19937 rng(17);
    for (const char* name : {"square", "mobius5", "filled_core"}) {
        auto kc = build_complex(fixture(name).maximal);
        int m = kc.count(1);
        std::vector<Rat> c(m), w(m, Rat(1));
        c[0] = 1;
        if (m > 3) c[3] = -2;
        OhcpInstance inst = formulate(kc, 1, c, w);
        for (int t = 0; t < 25; ++t) {
            SolutionVector z = random_feasible(inst, rng);
            CHECK(is_basic_solution(inst, z) == basic_by_kernel_witness(inst, z));
        }
    }
    OhcpInstance inst = mobius5_skewed();
    SolutionVector bad(inst.cols());
    CHECK_THROWS_AS(is_basic_solution(inst, bad), InternalError);  // infeasible point
}

TEST_CASE("solver reproduces the skewed band optimum exactly") {
    OhcpInstance inst = mobius5_skewed();
    LpSolution sol = solve(inst);
    CHECK(sol.objective == Rat(1, 8));
    CHECK(apply_a(inst, sol.z) == inst.c);
    CHECK(is_basic_solution(inst, sol.z));
    CHECK(is_concise(inst, sol.z));
    CHECK(objective_of(inst, sol.z) == Rat(1, 8));

    // p-coefficients: zero on interior edges, +-1/2 on five exterior ones.
    std::vector<Rat> expect(10);
    expect[1] = Rat(1, 2);
    expect[2] = Rat(1, 2);
    expect[5] = Rat(-1, 2);
    expect[6] = Rat(-1, 2);
    expect[8] = Rat(1, 2);
    for (int i = 0; i < 10; ++i) CHECK(p_coefficient(inst, sol.z, i) == expect[i]);

    VertexEnumeration census = enumerate_optimal_vertices(inst, 10000);
    CHECK(!census.limit_hit);
    CHECK(census.vertices.size() == 1);  // unique optimal vertex
}

TEST_CASE("solver on the square and on zero input") {
    std::vector<Rat> c(5), w(5, Rat(1));
    c[0] = 1;
    w[0] = 10;
    OhcpInstance inst = make_instance("square", c, w);
    LpSolution sol = solve(inst);
    CHECK(sol.objective == 2);
    CHECK(p_coefficient(inst, sol.z, 1) == 1);   // edge 02
    CHECK(p_coefficient(inst, sol.z, 3) == -1);  // edge 12
    for (const Rat& v : sol.z) CHECK(is_integer(v));

    OhcpInstance zero = make_instance("square", std::vector<Rat>(5), std::vector<Rat>(5, Rat(1)));
    CHECK(solve(zero).objective == 0);
}

TEST_CASE("solver agrees with support enumeration on small instances") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> dc(-2, 2), dw(1, 6);
    for (int t = 0; t < 12; ++t) {
        std::vector<Rat> c(5), w(5);
        for (int i = 0; i < 5; ++i) {
            c[i] = dc(rng);
            w[i] = Rat(dw(rng), dw(rng));
            mpq_canonicalize(w[i].get_mpq_t());
        }
        OhcpInstance inst = make_instance("square", c, w);  // 14 LP columns
        CHECK(solve(inst).objective == oracle::solve_by_support_enumeration(inst).objective);
    }
}

TEST_CASE("optimal vertex enumeration yields feasible basic optima") {
    std::mt19937 rng(29);
    std::uniform_int_distribution<int> dc(-2, 2);
    for (int t = 0; t < 5; ++t) {
        std::vector<Rat> c(10), w(10, Rat(1));
        for (int i = 0; i < 10; ++i) c[i] = dc(rng);
        OhcpInstance inst = make_instance("mobius5", c, w);
        LpSolution sol = solve(inst);
        VertexEnumeration census = enumerate_optimal_vertices(inst, 20000);
        CHECK(!census.vertices.empty());
        bool has_solution_vertex = false;
        for (const SolutionVector& z : census.vertices) {
            CHECK(apply_a(inst, z) == inst.c);
            CHECK(is_basic_solution(inst, z));
            CHECK(is_concise(inst, z));  // every basic solution is concise
            CHECK(objective_of(inst, z) == sol.objective);
            if (z == sol.z) has_solution_vertex = true;
        }
        CHECK(has_solution_vertex);
    }
}

TEST_CASE("kernel peeling against a basic solution") {
    OhcpInstance inst = mobius5_skewed();
    LpSolution sol = solve(inst);

    // Already basic: nothing to peel.
    SolutionVector zero(inst.cols());
    CHECK(!decompose_against_basic(inst, sol.z, zero).has_value());

    // Add a boundary-column kernel direction whose pair sides are
    // compatible with the vertex, forcing a non-basic point.
    RationalMatrix n = kernel_basis_n(inst);
    bool exercised = false;
    for (int j = inst.m + inst.n; j < n.cols() && !exercised; ++j) {
        SolutionVector zk = n.column(j);
        if (!linearly_concise(inst, {&sol.z, &zk})) continue;
        auto dec = decompose_against_basic(inst, sol.z, zk);
        if (!dec) continue;
        SolutionVector zc = dec->z_c, zd = dec->z_d;
        SolutionVector rebuilt(inst.cols()), peeled(inst.cols());
        bool zd_nonzero = false;
        for (int i = 0; i < inst.cols(); ++i) {
            rebuilt[i] = zc[i] + zd[i];
            peeled[i] = sol.z[i] + zc[i];
            if (zd[i] != 0) zd_nonzero = true;
        }
        CHECK(rebuilt == zk);
        CHECK(zd_nonzero);
        CHECK(support_independent(inst, peeled));
        for (const Rat& v : apply_a(inst, zd)) CHECK(v == 0);  // z_d stays in the kernel
        exercised = true;
    }
    CHECK(exercised);

    SolutionVector clash(inst.cols());
    clash[0] = 1;
    SolutionVector other(inst.cols());
    other[inst.m] = 1;
    CHECK_THROWS_AS(decompose_against_basic(inst, clash, other), InternalError);
}

TEST_CASE("decomposition into elementary solutions") {
    OhcpInstance inst = mobius5_skewed();
    LpSolution sol = solve(inst);
    RationalMatrix zmat = decompose_into_elementary(inst, sol.z);
    CHECK(zmat.multiply(inst.c) == sol.z);
    for (int col = 0; col < inst.m; ++col) {
        if (inst.c[col] == 0) continue;
        SolutionVector zc = zmat.column(col);
        auto image = apply_a(inst, zc);
        for (int r = 0; r < inst.m; ++r) CHECK(image[r] == (r == col ? Rat(1) : Rat(0)));
        CHECK(support_independent(inst, zc));
    }

    // Multi-simplex input chain.
    std::vector<Rat> c(10), w(10, Rat(1));
    c[0] = 2;
    c[7] = -1;
    OhcpInstance inst2 = make_instance("mobius5", c, w);
    LpSolution sol2 = solve(inst2);
    if (linearly_concise(inst2, {&sol2.z, &sol2.z})) {
        SolutionVector zi = identity_solution(inst2);
        if (linearly_concise(inst2, {&sol2.z, &zi})) {
            RationalMatrix z2 = decompose_into_elementary(inst2, sol2.z);
            CHECK(z2.multiply(inst2.c) == sol2.z);
        }
    }
}

TEST_CASE("stripping integral q-coefficients") {
    OhcpInstance inst = mobius5_skewed();
    LpSolution sol = solve(inst);

    // Push one boundary column in, giving that pair an integral coefficient.
    SolutionVector z = sol.z;
    for (int i = 0; i < inst.m; ++i) z[i] += inst.b(i, 2);
    z[2 * inst.m + 2] += 1;
    z = canonicalize_concise(inst, z);
    CHECK(apply_a(inst, z) == inst.c);

    StrippedSolution st = strip_integral_y(inst, z);
    CHECK(apply_a(st.instance, st.z) == st.instance.c);
    for (int j = 0; j < inst.n; ++j) {
        Rat qc = q_coefficient(st.instance, st.z, j);
        if (qc != 0) CHECK(!is_integer(qc));
    }
    for (int i = 0; i < inst.m; ++i)
        CHECK(p_coefficient(st.instance, st.z, i) == p_coefficient(inst, z, i));

    // Fully integral points are rejected.
    OhcpInstance sq = make_instance("square", {Rat(1), Rat(0), Rat(0), Rat(0), Rat(0)},
                                    std::vector<Rat>(5, Rat(1)));
    CHECK_THROWS_AS(strip_integral_y(sq, identity_solution(sq)), InternalError);
}

TEST_CASE("projection and basicness in the projection") {
    OhcpInstance inst = mobius5_skewed();
    LpSolution sol = solve(inst);
    std::vector<Rat> x = project_to_x(inst, sol.z);
    CHECK(int(x.size()) == 2 * inst.m);
    // The unique fractional optimum projects to a vertex of the projection.
    CHECK(is_basic_solution_x(inst, x));

    // A point outside the projected affine space is rejected.
    std::vector<Rat> junk(2 * inst.m);
    junk[1] = Rat(1, 3);
    CHECK_THROWS_AS(is_basic_solution_x(inst, junk), InternalError);
}
