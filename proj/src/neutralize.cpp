#include "ohcp/neutralize.hpp"

#include <algorithm>
#include <cstdint>

namespace ohcp {

namespace {

int row_position(const MntuCertificate& cert, int row) {
    auto it = std::lower_bound(cert.rows.begin(), cert.rows.end(), row);
    if (it == cert.rows.end() || *it != row) throw InternalError("row is not interior to the certificate");
    return int(it - cert.rows.begin());
}

// Integral solution v of M v = 2 e_pos; entries are +-1.
std::vector<Rat> unit_null_core(const MntuCertificate& cert, int pos) {
    std::vector<Rat> rhs(cert.m.rows());
    rhs[pos] = 2;
    auto v = solve_exact(cert.m, rhs);
    if (!v) throw InternalError("certificate submatrix is singular");
    for (const Rat& x : *v)
        if (x != 1 && x != -1) throw InternalError("unit null core entry is not +-1");
    return *v;
}

// Embed net p/q coefficient vectors as the canonical nonnegative concise
// solution-space vector.
SolutionVector embed_canonical(const OhcpInstance& inst, const std::vector<Rat>& pnet,
                               const std::vector<Rat>& qnet) {
    SolutionVector z(inst.cols());
    for (int i = 0; i < inst.m; ++i) {
        if (pnet[i] > 0)
            z[i] = pnet[i];
        else if (pnet[i] < 0)
            z[inst.m + i] = -pnet[i];
    }
    for (int j = 0; j < inst.n; ++j) {
        if (qnet[j] > 0)
            z[2 * inst.m + j] = qnet[j];
        else if (qnet[j] < 0)
            z[2 * inst.m + inst.n + j] = -qnet[j];
    }
    return z;
}

// Embed net coefficients on the same pair sides z uses; where z's pair is
// entirely zero, place the value so both entries are <= 0.
SolutionVector embed_against(const OhcpInstance& inst, const std::vector<Rat>& pnet,
                             const std::vector<Rat>& qnet, const SolutionVector& z) {
    SolutionVector out(inst.cols());
    auto place = [&](int plus, int minus, const Rat& d) {
        if (z[plus] != 0)
            out[plus] = d;
        else if (z[minus] != 0)
            out[minus] = -d;
        else if (d > 0)
            out[minus] = -d;
        else
            out[plus] = d;
    };
    for (int i = 0; i < inst.m; ++i) place(i, inst.m + i, pnet[i]);
    for (int j = 0; j < inst.n; ++j) place(2 * inst.m + j, 2 * inst.m + inst.n + j, qnet[j]);
    return out;
}

std::vector<Rat> net_p(const OhcpInstance& inst, const SolutionVector& z) {
    std::vector<Rat> p(inst.m);
    for (int i = 0; i < inst.m; ++i) p[i] = p_coefficient(inst, z, i);
    return p;
}

std::vector<Rat> net_q(const OhcpInstance& inst, const SolutionVector& z) {
    std::vector<Rat> q(inst.n);
    for (int j = 0; j < inst.n; ++j) q[j] = q_coefficient(inst, z, j);
    return q;
}

bool in_kernel(const OhcpInstance& inst, const SolutionVector& z) {
    for (const Rat& v : apply_a(inst, z))
        if (v != 0) return false;
    return true;
}

OhcpInstance elementary_instance(const OhcpInstance& base, int row, int sign) {
    OhcpInstance inst = base;
    inst.c.assign(base.m, Rat(0));
    inst.c[row] = sign;
    inst.w.assign(base.m, Rat(1));
    return inst;
}

// Row and sign encoded by an elementary instance's input chain.
std::pair<int, int> elementary_row_sign(const OhcpInstance& inst) {
    int row = -1, sign = 0;
    for (int i = 0; i < inst.m; ++i) {
        if (inst.c[i] == 0) continue;
        if (row >= 0 || (inst.c[i] != 1 && inst.c[i] != -1))
            throw InternalError("instance input chain is not +-e_i");
        row = i;
        sign = inst.c[i] == 1 ? 1 : -1;
    }
    if (row < 0) throw InternalError("instance input chain is zero");
    return {row, sign};
}

}  // namespace

UnitNull unit_null(const OhcpInstance& inst, const MntuCertificate& cert, int row) {
    int pos = row_position(cert, row);
    std::vector<Rat> v = unit_null_core(cert, pos);

    std::vector<Rat> qnet(inst.n);
    for (size_t j = 0; j < cert.cols.size(); ++j) qnet[cert.cols[j]] = v[j] / 2;
    std::vector<Rat> pnet = inst.b.multiply(qnet);

    for (size_t t = 0; t < cert.rows.size(); ++t) {
        Rat want = cert.rows[t] == row ? 1 : 0;
        if (pnet[cert.rows[t]] != want)
            throw InternalError("unit null interior p-coefficients are not a unit vector");
    }
    UnitNull un;
    un.row = row;
    un.z = embed_canonical(inst, pnet, qnet);
    if (!in_kernel(inst, un.z)) throw InternalError("unit null is not a kernel element");
    return un;
}

SolutionVector m_of(const OhcpInstance& inst, const MntuCertificate& cert,
                    const SolutionVector& z) {
    if (!is_concise(inst, z)) throw InternalError("m_of requires a concise vector");
    std::vector<Rat> qnet(inst.n);
    for (size_t t = 0; t < cert.rows.size(); ++t) {
        Rat pt = p_coefficient(inst, z, cert.rows[t]);
        if (pt == 0) continue;
        std::vector<Rat> v = unit_null_core(cert, int(t));
        for (size_t j = 0; j < cert.cols.size(); ++j) qnet[cert.cols[j]] += pt * v[j] / 2;
    }
    std::vector<Rat> pnet = inst.b.multiply(qnet);
    return embed_against(inst, pnet, qnet, z);
}

SolutionVector elementary_fractional_vertex(const OhcpInstance& inst,
                                            const MntuCertificate& cert) {
    auto [row, sign] = elementary_row_sign(inst);
    row_position(cert, row);  // must be interior
    (void)sign;

    SolutionVector zi = identity_solution(inst);
    SolutionVector mm = m_of(inst, cert, zi);
    SolutionVector z(inst.cols());
    for (int i = 0; i < inst.cols(); ++i) {
        z[i] = zi[i] - mm[i];
        if (z[i] < 0) throw InternalError("fractional vertex has a negative entry");
    }
    if (!is_concise(inst, z)) throw InternalError("fractional vertex is not concise");
    if (!is_basic_solution(inst, z)) throw InternalError("fractional vertex is not basic");
    for (int r : cert.rows)
        if (p_coefficient(inst, z, r) != 0)
            throw InternalError("fractional vertex has a nonzero interior p-coefficient");
    for (int j = 0; j < inst.n; ++j)
        if (q_coefficient(inst, z, j) != 0 &&
            !std::binary_search(cert.cols.begin(), cert.cols.end(), j))
            throw InternalError("fractional vertex q-support leaves the certificate columns");
    return z;
}

std::optional<NeutralizingChain> find_neutralizing_chain(const OhcpInstance& inst,
                                                         const MntuCertificate& cert, int radius,
                                                         long budget) {
    if (radius < 1) throw InternalError("search radius must be at least 1");
    const int m = inst.m, n = inst.n;
    SolutionVector zvert = elementary_fractional_vertex(inst, cert);

    // Everything below runs on doubled integers so the half-integral
    // quantities stay exact in machine words.
    std::vector<int64_t> zp2(m);  // 2 * |p-coefficients of z^i|
    for (int i = 0; i < m; ++i) {
        Rat d = 2 * p_coefficient(inst, zvert, i);
        if (!is_integer(d)) throw InternalError("fractional vertex p-coefficients are not halves");
        zp2[i] = std::abs(d.get_num().get_si());
    }
    std::vector<std::vector<int64_t>> bint(m, std::vector<int64_t>(n));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) bint[i][j] = inst.b(i, j).get_num().get_si();
    const int k = int(cert.rows.size());
    std::vector<std::vector<int64_t>> vcore(k);  // unit null cores, entries +-1
    for (int t = 0; t < k; ++t) {
        auto v = unit_null_core(cert, t);
        vcore[t].resize(cert.cols.size());
        for (size_t j = 0; j < cert.cols.size(); ++j) vcore[t][j] = v[j].get_num().get_si();
    }

    long tested = 0;
    std::vector<int64_t> u(n), bu(m);
    std::vector<int64_t> mu2(cert.cols.size());

    auto test_point = [&]() -> bool {
        if (++tested > budget) throw BudgetError("neutralizing-chain lattice budget exhausted");
        int64_t interior = 0;
        for (int t = 0; t < k; ++t) interior += bu[cert.rows[t]];
        if (((interior % 2) + 2) % 2 == 0) return false;

        std::fill(mu2.begin(), mu2.end(), 0);
        for (int t = 0; t < k; ++t) {
            int64_t pt = bu[cert.rows[t]];
            if (pt == 0) continue;
            for (size_t j = 0; j < mu2.size(); ++j) mu2[j] += pt * vcore[t][j];
        }
        bool nonzero = false;
        for (int r = 0; r < m; ++r) {
            int64_t d2 = 2 * bu[r];
            for (size_t j = 0; j < mu2.size(); ++j) d2 -= bint[r][cert.cols[j]] * mu2[j];
            if (std::abs(d2) > zp2[r]) return false;
            if (d2 != 0) nonzero = true;
        }
        return nonzero;
    };

    auto build_chain = [&]() {
        std::vector<Rat> qnet(n), pnet(m);
        for (int j = 0; j < n; ++j) qnet[j] = Rat(long(u[j]));
        for (int i = 0; i < m; ++i) pnet[i] = Rat(long(bu[i]));
        NeutralizingChain ch;
        ch.k = embed_canonical(inst, pnet, qnet);
        if (!in_kernel(inst, ch.k)) throw InternalError("lattice point is not a kernel element");
        SolutionVector mk = m_of(inst, cert, ch.k);
        ch.difference.resize(inst.cols());
        for (int i = 0; i < inst.cols(); ++i) ch.difference[i] = ch.k[i] - mk[i];
        long interior = 0;
        for (int r : cert.rows) interior += long(bu[r]);
        ch.interior_sum = interior;
        ch.lattice_u.assign(u.begin(), u.end());
        return ch;
    };

    for (int shell = 1; shell <= radius; ++shell) {
        std::fill(u.begin(), u.end(), int64_t(-shell));
        std::fill(bu.begin(), bu.end(), 0);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < m; ++i) bu[i] -= shell * bint[i][j];
        for (;;) {
            bool on_shell = false;
            for (int j = 0; j < n; ++j)
                if (u[j] == shell || u[j] == -shell) {
                    on_shell = true;
                    break;
                }
            if (on_shell && test_point()) return build_chain();

            // Odometer step, keeping bu = B u incrementally exact.
            int j = n - 1;
            while (j >= 0 && u[j] == shell) --j;
            if (j < 0) break;
            ++u[j];
            for (int i = 0; i < m; ++i) bu[i] += bint[i][j];
            for (int j2 = j + 1; j2 < n; ++j2) {
                int64_t delta = -shell - u[j2];
                u[j2] = -shell;
                if (delta != 0)
                    for (int i = 0; i < m; ++i) bu[i] += delta * bint[i][j2];
            }
        }
    }
    return std::nullopt;
}

namespace {

NeutralizationReport decide(const SimplicialComplex& kc, int q, int radius, long budget,
                            bool use_projection) {
    NeutralizationReport rep;
    rep.radius = radius;
    rep.budget = budget;
    BoundaryMatrix bm = boundary_matrix(kc, q);
    OhcpInstance base;
    base.p = q - 1;
    base.q = q;
    base.m = bm.m;
    base.n = bm.n;
    base.b = bm.mat;
    base.c.assign(bm.m, Rat(0));
    base.w.assign(bm.m, Rat(1));

    rep.mntus = find_mntus(bm.mat);
    if (rep.mntus.certificates.empty()) {
        rep.vacuous = rep.mntus.complete;
        rep.overall = rep.mntus.complete ? OverallVerdict::Neutralized : OverallVerdict::Unknown;
        return rep;
    }

    bool any_no = false, all_yes = true;
    for (size_t ci = 0; ci < rep.mntus.certificates.size(); ++ci) {
        const MntuCertificate& cert = rep.mntus.certificates[ci];
        for (int row : cert.rows) {
            for (int sign : {1, -1}) {
                NeutralizationCell cell;
                cell.cert_index = int(ci);
                cell.row = row;
                cell.sign = sign;
                OhcpInstance inst = elementary_instance(base, row, sign);
                SolutionVector z = elementary_fractional_vertex(inst, cert);
                if (use_projection && is_basic_solution_x(inst, project_to_x(inst, z))) {
                    cell.verdict = CellVerdict::NotNeutralized;
                    cell.witness_projection = project_to_x(inst, z);
                    any_no = true;
                } else {
                    std::optional<NeutralizingChain> ch;
                    try {
                        ch = find_neutralizing_chain(inst, cert, radius, budget);
                    } catch (const BudgetError&) {
                        ch.reset();
                    }
                    if (ch) {
                        cell.verdict = CellVerdict::Neutralized;
                        cell.chain = std::move(ch);
                    } else {
                        cell.verdict = CellVerdict::Unknown;
                    }
                }
                if (cell.verdict != CellVerdict::Neutralized) all_yes = false;
                rep.cells.push_back(std::move(cell));
            }
        }
    }
    if (any_no)
        rep.overall = OverallVerdict::NotNeutralized;
    else if (all_yes && rep.mntus.complete)
        rep.overall = OverallVerdict::Neutralized;
    else
        rep.overall = OverallVerdict::Unknown;
    return rep;
}

}  // namespace

NeutralizationReport decide_by_projection(const SimplicialComplex& k, int q, long budget,
                                          int radius) {
    return decide(k, q, radius, budget, true);
}

NeutralizationReport decide_by_definition(const SimplicialComplex& k, int q, int radius,
                                          long budget) {
    return decide(k, q, radius, budget, false);
}

std::optional<OverallVerdict> h1_trivial_shortcut(const SimplicialComplex& k) {
    if (k.top_dimension() != 2) throw InternalError("shortcut applies to 2-complexes only");
    if (homology(k, 1).trivial()) return OverallVerdict::Neutralized;
    return std::nullopt;
}

std::pair<SolutionVector, SolutionVector> neutralized_vertex_decomposition(
    const OhcpInstance& inst, const SolutionVector& z_i, const NeutralizingChain& chain) {
    if (int(z_i.size()) != inst.cols() || int(chain.difference.size()) != inst.cols())
        throw InternalError("decomposition dimension mismatch");
    if (!in_kernel(inst, chain.difference))
        throw InternalError("chain difference is not a kernel element");

    auto shifted = [&](int dir) {
        SolutionVector raw(inst.cols());
        for (int i = 0; i < inst.cols(); ++i) raw[i] = z_i[i] + dir * chain.difference[i];
        return canonicalize_concise(inst, raw);
    };
    SolutionVector z1 = shifted(1), z2 = shifted(-1);
    for (const SolutionVector* z : {&z1, &z2}) {
        if (apply_a(inst, *z) != inst.c)
            throw InternalError("shifted solution is not feasible");
        for (int i = 0; i < 2 * inst.m; ++i)
            if (!is_integer((*z)[i]))
                throw InternalError("shifted solution has a nonintegral projection");
    }
    for (int i = 0; i < 2 * inst.m; ++i)
        if (2 * z_i[i] != z1[i] + z2[i])
            throw InternalError("projections do not average to the fractional vertex");
    return {std::move(z1), std::move(z2)};
}

}  // namespace ohcp
