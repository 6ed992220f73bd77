#include "ohcp/linalg.hpp"

#include <sstream>

namespace ohcp {

std::vector<Rat> RationalMatrix::multiply(const std::vector<Rat>& v) const {
    if (int(v.size()) != cols_) throw InternalError("matrix-vector dimension mismatch");
    std::vector<Rat> out(rows_);
    for (int i = 0; i < rows_; ++i) {
        Rat s = 0;
        for (int j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0 && v[j] != 0) s += (*this)(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

RationalMatrix RationalMatrix::multiply(const RationalMatrix& o) const {
    if (cols_ != o.rows_) throw InternalError("matrix-matrix dimension mismatch");
    RationalMatrix out(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rat& x = (*this)(i, k);
            if (x == 0) continue;
            for (int j = 0; j < o.cols_; ++j)
                if (o(k, j) != 0) out(i, j) += x * o(k, j);
        }
    return out;
}

std::string RationalMatrix::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            if (j) os << ' ';
            os << (*this)(i, j).get_str();
        }
        os << '\n';
    }
    return os.str();
}

Rat determinant(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw InternalError("determinant of non-square matrix");
    const int n = m.rows();
    if (n == 0) return 1;

    // Scale each row to integers, remembering the total scale factor.
    std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
    Int scale = 1;
    for (int i = 0; i < n; ++i) {
        Int l = 1;
        for (int j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (int j = 0; j < n; ++j) {
            Rat v = m(i, j) * Rat(l);
            a[i][j] = v.get_num();
        }
        scale *= l;
    }

    // Bareiss fraction-free elimination: every division below is exact.
    int sign = 1;
    Int prev = 1;
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
            for (int j = k + 1; j < n; ++j) {
                Int t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Rat det(a[n - 1][n - 1]);
    det /= Rat(scale);
    if (sign < 0) det = -det;
    mpq_canonicalize(det.get_mpq_t());
    return det;
}

namespace {

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<int> rref(RationalMatrix& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
        Rat inv = 1 / m(r, c);
        for (int j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

void make_primitive(std::vector<Rat>& v) {
    Int l = 1;
    for (const Rat& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    Int g = 0;
    for (Rat& x : v) {
        x *= Rat(l);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
    }
    if (g == 0) return;
    for (Rat& x : v) {
        x /= Rat(g);
        mpq_canonicalize(x.get_mpq_t());
    }
    for (const Rat& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (Rat& y : v) y = -y;
        break;
    }
}

}  // namespace

int rank(const RationalMatrix& m) {
    RationalMatrix t = m;
    return int(rref(t).size());
}

std::vector<std::vector<Rat>> kernel_basis(const RationalMatrix& m) {
    RationalMatrix t = m;
    std::vector<int> pivots = rref(t);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Rat>> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(m.cols());
        v[f] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -t(int(r), f);
        make_primitive(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rat>> solve_exact(const RationalMatrix& m, const std::vector<Rat>& b) {
    if (int(b.size()) != m.rows()) throw InternalError("solve_exact dimension mismatch");
    RationalMatrix aug(m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    std::vector<int> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;  // 0 = 1 row
    std::vector<Rat> x(m.cols());
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(int(r), m.cols());
    return x;
}

SnfResult smith_normal_form(const RationalMatrix& m) {
    const int rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            if (!is_integer(m(i, j))) throw InternalError("smith_normal_form requires integer entries");
            a[i][j] = m(i, j).get_num();
        }

    // Track row ops in u, column ops in v, so u * m * v = diag.
    std::vector<std::vector<Int>> u(rows, std::vector<Int>(rows)), v(cols, std::vector<Int>(cols));
    for (int i = 0; i < rows; ++i) u[i][i] = 1;
    for (int j = 0; j < cols; ++j) v[j][j] = 1;

    auto swap_rows = [&](int r1, int r2) {
        std::swap(a[r1], a[r2]);
        std::swap(u[r1], u[r2]);
    };
    auto swap_cols = [&](int c1, int c2) {
        for (int i = 0; i < rows; ++i) std::swap(a[i][c1], a[i][c2]);
        for (int j = 0; j < cols; ++j) std::swap(v[j][c1], v[j][c2]);
    };
    auto addmul_row = [&](int dst, int src, const Int& f) {  // row_dst += f * row_src
        for (int j = 0; j < cols; ++j) a[dst][j] += f * a[src][j];
        for (int j = 0; j < rows; ++j) u[dst][j] += f * u[src][j];
    };
    auto addmul_col = [&](int dst, int src, const Int& f) {
        for (int i = 0; i < rows; ++i) a[i][dst] += f * a[i][src];
        for (int i = 0; i < cols; ++i) v[i][dst] += f * v[i][src];
    };
    auto negate_row = [&](int r) {
        for (int j = 0; j < cols; ++j) a[r][j] = -a[r][j];
        for (int j = 0; j < rows; ++j) u[r][j] = -u[r][j];
    };

    int t = 0;
    const int lim = std::min(rows, cols);
    while (t < lim) {
        // Smallest-magnitude nonzero pivot in the trailing submatrix.
        int pi = -1, pj = -1;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j)
                if (a[i][j] != 0 &&
                    (pi < 0 || mpz_cmpabs(a[i][j].get_mpz_t(), a[pi][pj].get_mpz_t()) < 0)) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        if (pi != t) swap_rows(pi, t);
        if (pj != t) swap_cols(pj, t);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                Int q = a[i][t] / a[t][t];  // truncated; remainder handled below
                if (q != 0) addmul_row(i, t, -q);
                if (a[i][t] != 0) {  // remainder smaller than pivot: promote it
                    swap_rows(i, t);
                    clean = false;
                }
            }
            for (int j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                Int q = a[t][j] / a[t][t];
                if (q != 0) addmul_col(j, t, -q);
                if (a[t][j] != 0) {
                    swap_cols(j, t);
                    clean = false;
                }
            }
        }

        // Divisibility: pivot must divide every remaining entry.
        bool redo = false;
        for (int i = t + 1; i < rows && !redo; ++i)
            for (int j = t + 1; j < cols && !redo; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    addmul_row(t, i, 1);
                    redo = true;
                }
        if (redo) continue;

        if (a[t][t] < 0) negate_row(t);
        ++t;
    }

    SnfResult res;
    res.rank = t;
    for (int i = 0; i < t; ++i) res.diag.push_back(a[i][i]);
    res.u = RationalMatrix(rows, rows);
    res.v = RationalMatrix(cols, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rows; ++j) res.u(i, j) = Rat(u[i][j]);
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < cols; ++j) res.v(i, j) = Rat(v[i][j]);
    return res;
}

}  // namespace ohcp
