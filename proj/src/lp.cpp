#include "ohcp/lp.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace ohcp {

OhcpInstance formulate(const SimplicialComplex& k, int p, const std::vector<Rat>& c,
                       const std::vector<Rat>& w) {
    if (p < 1 && k.top_dimension() < 1) throw InternalError("complex has no positive dimension");
    OhcpInstance inst;
    inst.p = p;
    inst.q = p + 1;
    BoundaryMatrix b = boundary_matrix(k, p + 1);
    inst.b = b.mat;
    inst.m = b.m;
    inst.n = b.n;
    if (int(c.size()) != inst.m) throw InternalError("input chain dimension mismatch");
    if (int(w.size()) != inst.m) throw InternalError("weight vector dimension mismatch");
    for (const Rat& ci : c)
        if (!is_integer(ci)) throw InternalError("input chain must be integral");
    for (const Rat& wi : w)
        if (wi < 0) throw InternalError("weights must be nonnegative");
    inst.c = c;
    inst.w = w;
    return inst;
}

RationalMatrix kernel_basis_n(const OhcpInstance& inst) {
    const int m = inst.m, n = inst.n;
    RationalMatrix nb(2 * (m + n), m + 2 * n);
    for (int i = 0; i < m; ++i) {
        nb(i, i) = 1;
        nb(m + i, i) = 1;
    }
    for (int j = 0; j < n; ++j) {
        nb(2 * m + j, m + j) = 1;
        nb(2 * m + n + j, m + j) = 1;
    }
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < m; ++i) nb(i, m + n + j) = inst.b(i, j);
        nb(2 * m + j, m + n + j) = 1;
    }
    return nb;
}

SolutionVector identity_solution(const OhcpInstance& inst) {
    SolutionVector z(inst.cols());
    for (int i = 0; i < inst.m; ++i) {
        if (inst.c[i] > 0)
            z[i] = inst.c[i];
        else if (inst.c[i] < 0)
            z[inst.m + i] = -inst.c[i];
    }
    return z;
}

bool is_concise(const OhcpInstance& inst, const SolutionVector& z) {
    for (int i = 0; i < inst.cols(); ++i) {
        int o = opposite_index(i, inst.m, inst.n);
        if (i < o && z[i] != 0 && z[o] != 0) return false;
    }
    return true;
}

SolutionVector canonicalize_concise(const OhcpInstance& inst, const SolutionVector& z) {
    SolutionVector out(inst.cols());
    for (int i = 0; i < inst.cols(); ++i) {
        int o = opposite_index(i, inst.m, inst.n);
        if (i > o) continue;
        Rat net = z[i] - z[o];
        if (net >= 0)
            out[i] = net;
        else
            out[o] = -net;
    }
    return out;
}

bool linearly_concise(const OhcpInstance& inst, const std::vector<const SolutionVector*>& vecs) {
    for (int i = 0; i < inst.cols(); ++i) {
        int o = opposite_index(i, inst.m, inst.n);
        if (i > o) continue;
        bool lo = false, hi = false;
        for (const SolutionVector* v : vecs) {
            if ((*v)[i] != 0) lo = true;
            if ((*v)[o] != 0) hi = true;
        }
        if (lo && hi) return false;
    }
    return true;
}

std::vector<Rat> apply_a(const OhcpInstance& inst, const SolutionVector& z) {
    if (int(z.size()) != inst.cols()) throw InternalError("solution vector length mismatch");
    const int m = inst.m, n = inst.n;
    std::vector<Rat> out(m);
    for (int i = 0; i < m; ++i) out[i] = z[i] - z[m + i];
    for (int j = 0; j < n; ++j) {
        Rat ynet = z[2 * m + j] - z[2 * m + n + j];
        if (ynet == 0) continue;
        for (int i = 0; i < m; ++i)
            if (inst.b(i, j) != 0) out[i] -= inst.b(i, j) * ynet;
    }
    return out;
}

bool support_independent(const OhcpInstance& inst, const SolutionVector& z) {
    std::vector<int> supp;
    for (int j = 0; j < inst.cols(); ++j)
        if (z[j] != 0) supp.push_back(j);
    if (supp.empty()) return true;
    if (int(supp.size()) > inst.m) return false;
    RationalMatrix s(inst.m, int(supp.size()));
    for (size_t j = 0; j < supp.size(); ++j)
        for (int i = 0; i < inst.m; ++i) s(i, int(j)) = inst.acol(i, supp[j]);
    return rank(s) == int(supp.size());
}

bool is_basic_solution(const OhcpInstance& inst, const SolutionVector& z) {
    if (apply_a(inst, z) != inst.c) throw InternalError("point does not satisfy the equality system");
    return support_independent(inst, z);
}

namespace {

// Solve the square system M x = b; M must be nonsingular.
std::vector<Rat> solve_square(const RationalMatrix& m, const std::vector<Rat>& b) {
    auto x = solve_exact(m, b);
    if (!x) throw InternalError("singular basis matrix");
    return *x;
}

RationalMatrix basis_matrix(const OhcpInstance& inst, const std::vector<int>& basis) {
    RationalMatrix bm(inst.m, inst.m);
    for (int j = 0; j < inst.m; ++j)
        for (int i = 0; i < inst.m; ++i) bm(i, j) = inst.acol(i, basis[j]);
    return bm;
}

SolutionVector basis_point(const OhcpInstance& inst, const std::vector<int>& basis,
                           const std::vector<Rat>& xb) {
    SolutionVector z(inst.cols());
    for (int j = 0; j < inst.m; ++j) z[basis[j]] = xb[j];
    return z;
}

// Reduced costs for all columns given the simplex multipliers.
std::vector<Rat> multipliers(const OhcpInstance& inst, const RationalMatrix& bm,
                             const std::vector<int>& basis) {
    std::vector<Rat> fb(inst.m);
    for (int j = 0; j < inst.m; ++j) fb[j] = inst.cost(basis[j]);
    return solve_square(bm.transposed(), fb);
}

Rat reduced_cost(const OhcpInstance& inst, const std::vector<Rat>& y, int col) {
    Rat r = inst.cost(col);
    for (int i = 0; i < inst.m; ++i) {
        Rat a = inst.acol(i, col);
        if (a != 0) r -= y[i] * a;
    }
    return r;
}

}  // namespace

LpSolution solve(const OhcpInstance& inst) {
    const int m = inst.m;
    // Signed unit columns make the identity solution the starting vertex.
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = inst.c[i] >= 0 ? i : m + i;

    std::vector<bool> in_basis(inst.cols(), false);
    for (int j : basis) in_basis[j] = true;

    for (long iter = 0;; ++iter) {
        if (iter > 100000) throw InternalError("simplex iteration limit");
        RationalMatrix bm = basis_matrix(inst, basis);
        std::vector<Rat> y = multipliers(inst, bm, basis);

        int entering = -1;  // Bland: lowest-index negative reduced cost
        for (int j = 0; j < inst.cols(); ++j) {
            if (in_basis[j]) continue;
            if (reduced_cost(inst, y, j) < 0) {
                entering = j;
                break;
            }
        }
        std::vector<Rat> xb = solve_square(bm, inst.c);
        if (entering < 0) {
            SolutionVector z = basis_point(inst, basis, xb);
            Rat obj = 0;
            for (int j = 0; j < m; ++j) obj += inst.cost(basis[j]) * xb[j];
            std::vector<int> sorted = basis;
            std::sort(sorted.begin(), sorted.end());
            return {z, obj, sorted};
        }

        std::vector<Rat> acol(m);
        for (int i = 0; i < m; ++i) acol[i] = inst.acol(i, entering);
        std::vector<Rat> d = solve_square(bm, acol);
        int leave = -1;
        Rat best;
        for (int i = 0; i < m; ++i) {
            if (d[i] <= 0) continue;
            Rat ratio = xb[i] / d[i];
            if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) throw InternalError("unbounded improving direction in a bounded objective");
        in_basis[basis[leave]] = false;
        in_basis[entering] = true;
        basis[leave] = entering;
    }
}

VertexEnumeration enumerate_optimal_vertices(const OhcpInstance& inst, long limit) {
    VertexEnumeration out;
    LpSolution first = solve(inst);

    std::set<std::vector<int>> seen_bases;
    std::set<SolutionVector> seen_vertices;
    std::deque<std::vector<int>> queue;
    seen_bases.insert(first.basis);
    queue.push_back(first.basis);

    while (!queue.empty()) {
        if (out.bases_explored >= limit) {
            out.limit_hit = true;
            break;
        }
        std::vector<int> basis = queue.front();
        queue.pop_front();
        ++out.bases_explored;

        RationalMatrix bm = basis_matrix(inst, basis);
        std::vector<Rat> xb = solve_square(bm, inst.c);
        SolutionVector z = basis_point(inst, basis, xb);
        if (seen_vertices.insert(z).second) out.vertices.push_back(z);

        std::vector<Rat> y = multipliers(inst, bm, basis);
        std::vector<bool> in_basis(inst.cols(), false);
        for (int j : basis) in_basis[j] = true;

        for (int e = 0; e < inst.cols(); ++e) {
            if (in_basis[e]) continue;
            if (reduced_cost(inst, y, e) != 0) continue;  // stay on the optimal face
            std::vector<Rat> acol(inst.m);
            for (int i = 0; i < inst.m; ++i) acol[i] = inst.acol(i, e);
            std::vector<Rat> d = solve_square(bm, acol);
            bool any = false;
            Rat best;
            for (int i = 0; i < inst.m; ++i) {
                if (d[i] <= 0) continue;
                Rat ratio = xb[i] / d[i];
                if (!any || ratio < best) {
                    any = true;
                    best = ratio;
                }
            }
            if (!any) continue;  // unbounded ray on the face
            for (int i = 0; i < inst.m; ++i) {
                if (d[i] <= 0 || xb[i] / d[i] != best) continue;
                std::vector<int> nb = basis;
                nb[i] = e;
                std::sort(nb.begin(), nb.end());
                if (seen_bases.insert(nb).second) queue.push_back(nb);
            }
        }
    }
    return out;
}

namespace {

// Kernel witness supported inside supp(z1), or empty if z1's support
// columns are independent. Deterministic: first kernel basis vector.
SolutionVector kernel_witness(const OhcpInstance& inst, const SolutionVector& z1) {
    std::vector<int> supp;
    for (int j = 0; j < inst.cols(); ++j)
        if (z1[j] != 0) supp.push_back(j);
    if (supp.empty()) return {};
    RationalMatrix s(inst.m, int(supp.size()));
    for (size_t j = 0; j < supp.size(); ++j)
        for (int i = 0; i < inst.m; ++i) s(i, int(j)) = inst.acol(i, supp[j]);
    auto basis = kernel_basis(s);
    if (basis.empty()) return {};
    SolutionVector zn(inst.cols());
    for (size_t j = 0; j < supp.size(); ++j) zn[supp[j]] = basis[0][j];
    return zn;
}

// Peel kernel mass off z1 until its support columns are independent,
// canceling the minimal-ratio y-entry each round. Returns the removed part.
SolutionVector peel_to_basic(const OhcpInstance& inst, SolutionVector z1) {
    const int m = inst.m, n = inst.n;
    SolutionVector zd(inst.cols());
    for (int round = 0; round <= n; ++round) {
        SolutionVector zn = kernel_witness(inst, z1);
        if (zn.empty()) return zd;
        int pick = -1;
        Rat best;
        for (int i = 2 * m; i < inst.cols(); ++i) {
            if (zn[i] == 0) continue;
            Rat ratio = abs(z1[i] / zn[i]);
            if (pick < 0 || ratio < best) {
                pick = i;
                best = ratio;
            }
        }
        if (pick < 0) throw InternalError("kernel witness with no y-coordinate");
        Rat alpha = z1[pick] / zn[pick];
        for (int i = 0; i < inst.cols(); ++i) {
            zd[i] += alpha * zn[i];
            z1[i] -= alpha * zn[i];
        }
    }
    throw InternalError("kernel peeling did not terminate within n rounds");
}

bool all_zero(const SolutionVector& v) {
    for (const Rat& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace

std::optional<KernelDecomposition> decompose_against_basic(const OhcpInstance& inst,
                                                           const SolutionVector& z0,
                                                           const SolutionVector& zk) {
    if (!linearly_concise(inst, {&z0, &zk}))
        throw InternalError("decompose_against_basic requires a linearly concise pair");
    if (all_zero(zk)) return std::nullopt;
    SolutionVector z(inst.cols());
    for (int i = 0; i < inst.cols(); ++i) z[i] = z0[i] + zk[i];
    if (support_independent(inst, z)) return std::nullopt;

    SolutionVector zd = peel_to_basic(inst, z);
    KernelDecomposition dec;
    dec.z_d = zd;
    dec.z_c.resize(inst.cols());
    for (int i = 0; i < inst.cols(); ++i) dec.z_c[i] = zk[i] - zd[i];
    return dec;
}

RationalMatrix decompose_into_elementary(const OhcpInstance& inst, const SolutionVector& z) {
    SolutionVector zi = identity_solution(inst);
    if (!linearly_concise(inst, {&z, &zi}))
        throw InternalError("decompose_into_elementary requires {z, identity} linearly concise");
    if (!is_basic_solution(inst, z))
        throw InternalError("decompose_into_elementary requires a basic solution");

    const int m = inst.m;
    // Extend supp(z) to a column basis S of A; supp(z) is independent since
    // z is basic, and the signed x-unit columns alone span the row space, so
    // candidates never run out. S holds at most one slot per opposite pair
    // (the two slots carry dependent columns), which keeps every vector
    // supported on S concise and the column set linearly concise.
    std::vector<int> candidates;
    for (int i = 0; i < inst.cols(); ++i)
        if (z[i] != 0) candidates.push_back(i);
    for (int i = 0; i < m; ++i) candidates.push_back(inst.c[i] >= 0 ? i : m + i);

    std::vector<int> basis;
    for (int cand : candidates) {
        if (int(basis.size()) == m) break;
        RationalMatrix trial(m, int(basis.size()) + 1);
        for (size_t k = 0; k < basis.size(); ++k)
            for (int r = 0; r < m; ++r) trial(r, int(k)) = inst.acol(r, basis[k]);
        for (int r = 0; r < m; ++r) trial(r, int(basis.size())) = inst.acol(r, cand);
        if (rank(trial) == int(basis.size()) + 1) basis.push_back(cand);
    }
    if (int(basis.size()) != m) throw InternalError("could not extend support to a basis");

    RationalMatrix bm(m, m);
    for (int k = 0; k < m; ++k)
        for (int r = 0; r < m; ++r) bm(r, k) = inst.acol(r, basis[k]);

    // Column i expresses e_i in the basis; it is supported on an independent
    // column set, so it is a basic solution of the elementary instance, and
    // the columns sum against c to the basis representation of z itself.
    RationalMatrix zmat(inst.cols(), m);
    for (int i = 0; i < m; ++i) {
        std::vector<Rat> e(m);
        e[i] = 1;
        auto v = solve_exact(bm, e);
        if (!v) throw InternalError("basis matrix is singular");
        for (int k = 0; k < m; ++k) zmat(basis[k], i) = (*v)[k];
    }

    if (zmat.multiply(inst.c) != z) throw InternalError("elementary decomposition check Z c = z failed");
    return zmat;
}

StrippedSolution strip_integral_y(const OhcpInstance& inst, const SolutionVector& z) {
    bool nonintegral = false;
    for (const Rat& v : z)
        if (!is_integer(v)) nonintegral = true;
    if (!nonintegral) throw InternalError("strip_integral_y requires a nonintegral solution");

    StrippedSolution out;
    out.instance = inst;
    out.z = canonicalize_concise(inst, z);
    const int m = inst.m, n = inst.n;
    for (int j = 0; j < n; ++j) {
        Rat gamma = q_coefficient(inst, out.z, j);
        if (gamma == 0 || !is_integer(gamma)) continue;
        // Move the whole integral coefficient into the input chain.
        for (int i = 0; i < m; ++i)
            if (inst.b(i, j) != 0) out.instance.c[i] += gamma * inst.b(i, j);
        out.z[2 * m + j] = 0;
        out.z[2 * m + n + j] = 0;
    }
    return out;
}

std::vector<Rat> project_to_x(const OhcpInstance& inst, const SolutionVector& z) {
    return std::vector<Rat>(z.begin(), z.begin() + 2 * inst.m);
}

bool is_basic_solution_x(const OhcpInstance& inst, const std::vector<Rat>& x) {
    const int m = inst.m, n = inst.n;
    if (int(x.size()) != 2 * m) throw InternalError("projected vector length mismatch");
    // Membership in the projected hyperplane: B y = (x+ - x-) - c solvable.
    std::vector<Rat> rhs(m);
    for (int i = 0; i < m; ++i) rhs[i] = x[i] - x[m + i] - inst.c[i];
    if (!solve_exact(inst.b, rhs)) throw InternalError("point not in the projected solution space");

    // Projected kernel span: (e_i, e_i) pair directions and (B_j, 0).
    auto wcol = [&](int r, int c) -> Rat {
        if (c < m) return (r == c || r == m + c) ? Rat(1) : Rat(0);
        return r < m ? inst.b(r, c - m) : Rat(0);
    };
    std::vector<int> zero_rows;
    for (int r = 0; r < 2 * m; ++r)
        if (x[r] == 0) zero_rows.push_back(r);

    RationalMatrix full(2 * m, m + n);
    for (int r = 0; r < 2 * m; ++r)
        for (int c = 0; c < m + n; ++c) full(r, c) = wcol(r, c);
    RationalMatrix outside(std::max<int>(1, int(zero_rows.size())), m + n);
    for (size_t r = 0; r < zero_rows.size(); ++r)
        for (int c = 0; c < m + n; ++c) outside(int(r), c) = wcol(zero_rows[r], c);
    if (zero_rows.empty()) return rank(full) == 0;
    return rank(outside) == rank(full);
}

namespace oracle {

LpSolution solve_by_support_enumeration(const OhcpInstance& inst) {
    const int cols = inst.cols();
    if (cols > 20) throw InternalError("support enumeration limited to small instances");

    bool found = false;
    LpSolution best;
    for (unsigned mask = 0; mask < (1u << cols); ++mask) {
        std::vector<int> supp;
        for (int j = 0; j < cols; ++j)
            if (mask & (1u << j)) supp.push_back(j);
        if (int(supp.size()) > inst.m) continue;

        RationalMatrix s(inst.m, std::max<int>(1, int(supp.size())));
        for (size_t j = 0; j < supp.size(); ++j)
            for (int i = 0; i < inst.m; ++i) s(i, int(j)) = inst.acol(i, supp[j]);
        if (!supp.empty() && rank(s) != int(supp.size())) continue;

        std::optional<std::vector<Rat>> x;
        if (supp.empty()) {
            bool zero = true;
            for (const Rat& v : inst.c)
                if (v != 0) zero = false;
            if (zero) x = std::vector<Rat>{};
        } else {
            x = solve_exact(s, inst.c);
            if (x && s.multiply(*x) != inst.c) x.reset();
        }
        if (!x) continue;
        bool nonneg = true;
        for (const Rat& v : *x)
            if (v < 0) nonneg = false;
        if (!nonneg) continue;

        SolutionVector z(cols);
        Rat obj = 0;
        for (size_t j = 0; j < supp.size(); ++j) {
            z[supp[j]] = (*x)[j];
            obj += inst.cost(supp[j]) * (*x)[j];
        }
        if (!found || obj < best.objective) {
            found = true;
            best.z = z;
            best.objective = obj;
            best.basis = supp;
        }
    }
    if (!found) throw InternalError("no feasible point in support enumeration");
    return best;
}

}  // namespace oracle

}  // namespace ohcp
