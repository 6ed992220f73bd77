#pragma once

#include <optional>
#include <vector>

#include "ohcp/complex.hpp"
#include "ohcp/linalg.hpp"

namespace ohcp {

// The minimum-weight-homologous-chain LP:
//   min (w,w,0,0)^T z   s.t.  [I -I -B B] z = c,  z >= 0
// with B the q-boundary matrix (m x n) and z = (x+, x-, y+, y-) of
// length 2(m+n). The constraint matrix A is never materialized densely;
// acol() produces entries on demand.
struct OhcpInstance {
    int p = 1, q = 2;
    int m = 0, n = 0;
    RationalMatrix b;    // m x n boundary matrix
    std::vector<Rat> c;  // integral input chain, length m
    std::vector<Rat> w;  // nonnegative weights, length m

    int cols() const { return 2 * (m + n); }

    Rat acol(int row, int col) const {
        if (col < m) return col == row ? Rat(1) : Rat(0);
        if (col < 2 * m) return col - m == row ? Rat(-1) : Rat(0);
        if (col < 2 * m + n) return -b(row, col - 2 * m);
        return b(row, col - 2 * m - n);
    }
    Rat cost(int col) const { return col < 2 * m ? w[col % m] : Rat(0); }
};

using SolutionVector = std::vector<Rat>;

// Index of the opposite entry within the same x or y pair.
inline int opposite_index(int i, int m, int n) {
    if (i < m) return i + m;
    if (i < 2 * m) return i - m;
    if (i < 2 * m + n) return i + n;
    return i - n;
}

inline Rat p_coefficient(const OhcpInstance& inst, const SolutionVector& z, int i) {
    return z[i] - z[i + inst.m];
}
inline Rat q_coefficient(const OhcpInstance& inst, const SolutionVector& z, int j) {
    return z[2 * inst.m + j] - z[2 * inst.m + inst.n + j];
}

OhcpInstance formulate(const SimplicialComplex& k, int p, const std::vector<Rat>& c,
                       const std::vector<Rat>& w);

// Kernel basis N of A, 2(m+n) x (m+2n): the m opposite-x-pair directions,
// the n opposite-y-pair directions, then the n columns (B_j, 0, e_j, 0).
RationalMatrix kernel_basis_n(const OhcpInstance& inst);

// Unique concise feasible solution with all y-coordinates zero.
SolutionVector identity_solution(const OhcpInstance& inst);

// Concise: in every opposite-entry pair at least one entry is zero.
bool is_concise(const OhcpInstance& inst, const SolutionVector& z);

// The unique equivalent nonnegative concise vector: each pair is replaced
// by its net value placed in the sign-appropriate slot.
SolutionVector canonicalize_concise(const OhcpInstance& inst, const SolutionVector& z);

// Any linear combination of the set stays concise; for vectors this holds
// iff each opposite pair is used on only one side across the whole set.
bool linearly_concise(const OhcpInstance& inst, const std::vector<const SolutionVector*>& vecs);

// Columns of A on the support of z are linearly independent. Requires
// A z = inst.c; throws otherwise.
bool is_basic_solution(const OhcpInstance& inst, const SolutionVector& z);

// Same support-independence test without the feasibility check, usable on
// points of other right-hand sides over the same A.
bool support_independent(const OhcpInstance& inst, const SolutionVector& z);

std::vector<Rat> apply_a(const OhcpInstance& inst, const SolutionVector& z);

struct LpSolution {
    SolutionVector z;
    Rat objective;
    std::vector<int> basis;  // column indices, ascending
};

// Exact rational simplex with Bland's rule; starts from the identity
// solution's signed-unit basis, so no phase 1 is needed.
LpSolution solve(const OhcpInstance& inst);

struct VertexEnumeration {
    std::vector<SolutionVector> vertices;  // deduplicated, discovery order
    bool limit_hit = false;
    long bases_explored = 0;
};

// All optimal vertices reachable by zero-reduced-cost pivots from the
// first optimum. `limit` caps the number of bases explored.
VertexEnumeration enumerate_optimal_vertices(const OhcpInstance& inst, long limit);

struct KernelDecomposition {
    SolutionVector z_c;
    SolutionVector z_d;
};

// If z0 + zk is basic returns nothing; otherwise peels zk into z_c + z_d
// with z0 + z_c basic and z_d the nonzero remainder (minimal-ratio
// cancellation of y-entries, at most n rounds).
std::optional<KernelDecomposition> decompose_against_basic(const OhcpInstance& inst,
                                                           const SolutionVector& z0,
                                                           const SolutionVector& zk);

// Z with one column per p-simplex, each nonzero-input column a basic
// solution of its elementary instance, and Z c = z.
RationalMatrix decompose_into_elementary(const OhcpInstance& inst, const SolutionVector& z);

struct StrippedSolution {
    OhcpInstance instance;  // input chain absorbed the integral q-coefficients
    SolutionVector z;
};

// Moves every integral nonzero q-coefficient of a basic nonintegral z
// into the input chain, leaving all nonzero y-coordinates nonintegral.
StrippedSolution strip_integral_y(const OhcpInstance& inst, const SolutionVector& z);

// First 2m entries.
std::vector<Rat> project_to_x(const OhcpInstance& inst, const SolutionVector& z);

// Basic in the projection: no nonzero projected kernel element is
// supported inside supp(x). The projected kernel is spanned by the m
// opposite-pair directions (e_i, e_i) and the n columns (B_j, 0).
bool is_basic_solution_x(const OhcpInstance& inst, const std::vector<Rat>& x);

namespace oracle {

// Independent slow solver: enumerate every independent column subset,
// solve the restricted equality system exactly, and keep the cheapest
// nonnegative solution. Intended for instances with at most ~14 columns.
LpSolution solve_by_support_enumeration(const OhcpInstance& inst);

}  // namespace oracle

}  // namespace ohcp
