#include "ohcp/tu.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

namespace ohcp {

BipartiteIncidenceGraph bipartite_graph(const RationalMatrix& b) {
    BipartiteIncidenceGraph g;
    g.m = b.rows();
    g.n = b.cols();
    g.row_adj.resize(g.m);
    g.col_adj.resize(g.n);
    for (int i = 0; i < g.m; ++i)
        for (int j = 0; j < g.n; ++j) {
            const Rat& v = b(i, j);
            if (v == 0) continue;
            if (v != 1 && v != -1) throw InternalError("matrix entry outside {0, +1, -1}");
            int w = v == 1 ? 1 : -1;
            g.row_adj[i].emplace_back(j, w);
            g.col_adj[j].emplace_back(i, w);
            ++g.edge_count;
        }
    return g;
}

namespace {

// DFS state for induced-circuit enumeration. Vertex ids: rows 0..m-1,
// columns m..m+n-1; the start vertex is always the circuit's minimum row.
struct CircuitSearch {
    int m = 0, n = 0;
    std::vector<std::vector<std::pair<int, int>>> adj;  // (vertex id, weight)
    std::vector<std::vector<bool>> adjacent;

    long budget = 0;
    long nodes = 0;
    bool complete = true;

    int start = 0;
    std::vector<int> path;
    std::vector<bool> on_path;
    int weight_sum = 0;

    // circuits with edge-weight sum 2 mod 4, as vertex-id paths from start
    std::vector<std::vector<int>> found;

    void run() {
        on_path.assign(m + n, false);
        for (start = 0; start < m && complete; ++start) {
            path = {start};
            on_path[start] = true;
            weight_sum = 0;
            extend();
            on_path[start] = false;
        }
    }

    void extend() {
        if (!complete) return;
        if (++nodes > budget) {
            complete = false;
            return;
        }
        int u = path.back();
        for (auto [w, wt] : adj[u]) {
            if (w <= start || on_path[w]) continue;
            // Induced: w may touch the path only at its predecessor u and,
            // when closing, at the start vertex.
            bool chord = false;
            for (size_t k = 1; k + 1 < path.size(); ++k)
                if (adjacent[w][path[k]]) {
                    chord = true;
                    break;
                }
            if (chord) continue;
            if (path.size() > 1 && adjacent[w][start]) {
                // Closing is the only option; extending past w would leave
                // the chord (w, start) behind.
                if (path.size() + 1 >= 4 && path[1] < w) {
                    int total = weight_sum + wt + edge_weight(w, start);
                    if (((total % 4) + 4) % 4 == 2) {
                        std::vector<int> cyc = path;
                        cyc.push_back(w);
                        found.push_back(std::move(cyc));
                    }
                }
                continue;
            }
            path.push_back(w);
            on_path[w] = true;
            weight_sum += wt;
            extend();
            weight_sum -= wt;
            on_path[w] = false;
            path.pop_back();
            if (!complete) return;
        }
    }

    int edge_weight(int a, int b) const {
        for (auto [v, wt] : adj[a])
            if (v == b) return wt;
        throw InternalError("missing edge weight");
    }
};

bool subset(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

long mod4_entry_sum(const RationalMatrix& m) {
    long s = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) s += m(i, j) == 1 ? 1 : (m(i, j) == -1 ? -1 : 0);
    return ((s % 4) + 4) % 4;
}

void check_certificate_invariants(const MntuCertificate& cert) {
    if (cert.det != 2 && cert.det != -2) throw InternalError("submatrix determinant is not +-2");
    for (int i = 0; i < cert.m.rows(); ++i) {
        int cnt = 0;
        for (int j = 0; j < cert.m.cols(); ++j)
            if (cert.m(i, j) != 0) ++cnt;
        if (cnt == 0 || cnt % 2 != 0) throw InternalError("submatrix row nonzero count not even");
    }
    for (int j = 0; j < cert.m.cols(); ++j) {
        int cnt = 0;
        for (int i = 0; i < cert.m.rows(); ++i)
            if (cert.m(i, j) != 0) ++cnt;
        if (cnt == 0 || cnt % 2 != 0) throw InternalError("submatrix column nonzero count not even");
    }
    if (mod4_entry_sum(cert.m) != 2) throw InternalError("submatrix entry sum is not 2 mod 4");
}

}  // namespace

MntusResult find_mntus(const RationalMatrix& b, long budget) {
    BipartiteIncidenceGraph g = bipartite_graph(b);
    CircuitSearch cs;
    cs.m = g.m;
    cs.n = g.n;
    cs.budget = budget;
    cs.adj.resize(g.m + g.n);
    cs.adjacent.assign(g.m + g.n, std::vector<bool>(g.m + g.n, false));
    for (int i = 0; i < g.m; ++i)
        for (auto [j, w] : g.row_adj[i]) {
            cs.adj[i].emplace_back(g.m + j, w);
            cs.adj[g.m + j].emplace_back(i, w);
            cs.adjacent[i][g.m + j] = cs.adjacent[g.m + j][i] = true;
        }
    cs.run();

    MntusResult res;
    res.complete = cs.complete;
    res.nodes_explored = cs.nodes;

    struct Raw {
        std::vector<int> rows, cols;          // sorted
        std::vector<int> crows, ccols;        // traversal order
    };
    std::vector<Raw> raw;
    std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
    for (const auto& cyc : cs.found) {
        Raw r;
        for (size_t k = 0; k < cyc.size(); k += 2) {
            r.crows.push_back(cyc[k]);
            r.ccols.push_back(cyc[k + 1] - g.m);
        }
        r.rows = r.crows;
        r.cols = r.ccols;
        std::sort(r.rows.begin(), r.rows.end());
        std::sort(r.cols.begin(), r.cols.end());
        if (seen.emplace(r.rows, r.cols).second) raw.push_back(std::move(r));
    }

    // Keep only circuits not properly containing another found circuit.
    std::vector<char> minimal(raw.size(), 1);
    for (size_t a = 0; a < raw.size(); ++a)
        for (size_t b2 = 0; b2 < raw.size(); ++b2) {
            if (a == b2) continue;
            if (subset(raw[b2].rows, raw[a].rows) && subset(raw[b2].cols, raw[a].cols)) {
                minimal[a] = 0;
                break;
            }
        }

    for (size_t a = 0; a < raw.size(); ++a) {
        if (!minimal[a]) continue;
        MntuCertificate cert;
        cert.rows = raw[a].rows;
        cert.cols = raw[a].cols;
        cert.circuit_rows = raw[a].crows;
        cert.circuit_cols = raw[a].ccols;
        cert.m = RationalMatrix(int(cert.rows.size()), int(cert.cols.size()));
        for (size_t i = 0; i < cert.rows.size(); ++i)
            for (size_t j = 0; j < cert.cols.size(); ++j)
                cert.m(int(i), int(j)) = b(cert.rows[i], cert.cols[j]);
        cert.det = determinant(cert.m);
        check_certificate_invariants(cert);
        for (int i = 0; i < b.rows(); ++i) {
            if (std::binary_search(cert.rows.begin(), cert.rows.end(), i)) continue;
            for (int c : cert.cols)
                if (b(i, c) != 0) {
                    cert.exterior_rows.push_back(i);
                    break;
                }
        }
        res.certificates.push_back(std::move(cert));
    }
    std::sort(res.certificates.begin(), res.certificates.end(),
              [](const MntuCertificate& x, const MntuCertificate& y) {
                  return std::tie(x.cols, x.rows) < std::tie(y.cols, y.rows);
              });
    for (auto& cert : res.certificates)
        cert.is_cmntus = classify_cmntus(cert, b, res.certificates);
    return res;
}

bool is_totally_unimodular(const RationalMatrix& b, long budget) {
    MntusResult r = find_mntus(b, budget);
    if (!r.complete && r.certificates.empty())
        throw BudgetError("circuit search budget exhausted before any verdict");
    return r.certificates.empty();
}

bool classify_cmntus(const MntuCertificate& cert, const RationalMatrix& b,
                     const std::vector<MntuCertificate>& all_certs) {
    for (size_t i = 0; i < cert.rows.size(); ++i)
        for (size_t j = 0; j < cert.cols.size(); ++j)
            if (cert.m(int(i), int(j)) != b(cert.rows[i], cert.cols[j]))
                throw InternalError("certificate does not match the given matrix");
    for (const MntuCertificate& other : all_certs) {
        if (other.rows == cert.rows && other.cols == cert.cols) continue;
        if (other.cols.size() < cert.cols.size() && subset(other.cols, cert.cols)) return false;
    }
    // Necessary condition for column-minimality: each exterior row meets the
    // certificate's columns an odd number of times.
    for (int r : cert.exterior_rows) {
        int cnt = 0;
        for (int c : cert.cols)
            if (b(r, c) != 0) ++cnt;
        if (cnt % 2 == 0)
            throw InternalError("column-minimal certificate with an even exterior row");
    }
    return true;
}

OrientationReversingChain extract_orientation_reversing_chain(const MntuCertificate& cert,
                                                              const RationalMatrix& b) {
    const size_t k = cert.circuit_cols.size();
    if (k < 2 || cert.circuit_rows.size() != k) throw InternalError("malformed circuit");
    OrientationReversingChain ch;
    ch.q_simplices = cert.circuit_cols;
    long sum = 0;
    for (size_t i = 0; i < k; ++i) {
        // Row r_i joins columns c_{i-1} and c_i.
        int r = cert.circuit_rows[i];
        int cprev = cert.circuit_cols[(i + k - 1) % k];
        int ccur = cert.circuit_cols[i];
        if (b(r, cprev) == 0 || b(r, ccur) == 0)
            throw InternalError("circuit row does not join its neighboring columns");
        sum += b(r, cprev) == 1 ? 1 : -1;
        sum += b(r, ccur) == 1 ? 1 : -1;
        ch.shared_faces.push_back(cert.circuit_rows[(i + 1) % k]);
    }
    if (((sum % 4) + 4) % 4 != 2)
        throw InternalError("circuit incidence-entry sum is not 2 mod 4");
    return ch;
}

bool relative_torsion_free(const SimplicialComplex& k, int p, long budget) {
    return is_totally_unimodular(boundary_matrix(k, p + 1).mat, budget);
}

namespace oracle {

namespace {

// Integer Bareiss determinant; fine in 64 bits for the <=12x12 {0,±1}
// submatrices this oracle handles.
int64_t idet(std::vector<std::vector<int64_t>> a) {
    const int n = int(a.size());
    if (n == 0) return 1;
    int sign = 1;
    int64_t prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

std::vector<std::vector<int64_t>> to_int(const RationalMatrix& b) {
    std::vector<std::vector<int64_t>> a(b.rows(), std::vector<int64_t>(b.cols()));
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            if (b(i, j) != 0 && b(i, j) != 1 && b(i, j) != -1)
                throw InternalError("matrix entry outside {0, +1, -1}");
            a[i][j] = int64_t(b(i, j).get_num().get_si());
        }
    return a;
}

bool next_combination(std::vector<int>& idx, int limit) {
    int k = int(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < limit - (k - i)) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<int> first_combination(int k) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    return idx;
}

template <typename Fn>
void for_each_square_submatrix(const std::vector<std::vector<int64_t>>& a, int size_cap, Fn fn) {
    const int rows = int(a.size());
    const int cols = rows ? int(a[0].size()) : 0;
    int lim = std::min({rows, cols, size_cap});
    for (int k = 1; k <= lim; ++k) {
        std::vector<int> rs = first_combination(k);
        do {
            std::vector<int> csel = first_combination(k);
            do {
                if (!fn(rs, csel)) return;
            } while (next_combination(csel, cols));
        } while (next_combination(rs, rows));
    }
}

}  // namespace

bool is_tu_by_determinant_scan(const RationalMatrix& b, int size_cap) {
    auto a = to_int(b);
    bool tu = true;
    for_each_square_submatrix(a, size_cap, [&](const std::vector<int>& rs,
                                               const std::vector<int>& cs) {
        std::vector<std::vector<int64_t>> sub(rs.size(), std::vector<int64_t>(cs.size()));
        for (size_t i = 0; i < rs.size(); ++i)
            for (size_t j = 0; j < cs.size(); ++j) sub[i][j] = a[rs[i]][cs[j]];
        int64_t d = idet(sub);
        if (d < -1 || d > 1) {
            tu = false;
            return false;
        }
        return true;
    });
    return tu;
}

std::vector<std::pair<std::vector<int>, std::vector<int>>> mntus_by_determinant_scan(
    const RationalMatrix& b, int size_cap) {
    auto a = to_int(b);
    std::vector<std::pair<std::vector<int>, std::vector<int>>> cand;
    for_each_square_submatrix(a, size_cap, [&](const std::vector<int>& rs,
                                               const std::vector<int>& cs) {
        // Minimal violators have even nonzero counts in every line, so the
        // parity prefilter cannot lose any of them.
        for (size_t i = 0; i < rs.size(); ++i) {
            int cnt = 0;
            for (size_t j = 0; j < cs.size(); ++j)
                if (a[rs[i]][cs[j]] != 0) ++cnt;
            if (cnt == 0 || cnt % 2 != 0) return true;
        }
        for (size_t j = 0; j < cs.size(); ++j) {
            int cnt = 0;
            for (size_t i = 0; i < rs.size(); ++i)
                if (a[rs[i]][cs[j]] != 0) ++cnt;
            if (cnt == 0 || cnt % 2 != 0) return true;
        }
        std::vector<std::vector<int64_t>> sub(rs.size(), std::vector<int64_t>(cs.size()));
        for (size_t i = 0; i < rs.size(); ++i)
            for (size_t j = 0; j < cs.size(); ++j) sub[i][j] = a[rs[i]][cs[j]];
        int64_t d = idet(sub);
        if (d <= -2 || d >= 2) cand.emplace_back(rs, cs);
        return true;
    });

    std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
    for (size_t x = 0; x < cand.size(); ++x) {
        bool minimal = true;
        for (size_t y = 0; y < cand.size(); ++y) {
            if (x == y) continue;
            if (subset(cand[y].first, cand[x].first) && subset(cand[y].second, cand[x].second)) {
                minimal = false;
                break;
            }
        }
        if (minimal) out.push_back(cand[x]);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return std::tie(x.second, x.first) < std::tie(y.second, y.first);
    });
    return out;
}

}  // namespace oracle

}  // namespace ohcp
