#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ohcp {

using Rat = mpq_class;
using Int = mpz_class;

// Error taxonomy shared across the library. The CLI maps these to exit codes.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// Dense matrix of exact rationals. Row-major. Anything above 500x500 is
// outside the supported envelope and constructors refuse it.
class RationalMatrix {
public:
    RationalMatrix() : rows_(0), cols_(0) {}
    RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {
        if (rows < 0 || cols < 0) throw InternalError("negative matrix dimension");
        if (rows > 500 || cols > 500)
            throw InternalError("matrix exceeds the 500x500 supported size limit");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Rat& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    bool operator==(const RationalMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    static RationalMatrix identity(int n) {
        RationalMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    RationalMatrix transposed() const {
        RationalMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    std::vector<Rat> column(int j) const {
        std::vector<Rat> v(rows_);
        for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    std::vector<Rat> multiply(const std::vector<Rat>& v) const;
    RationalMatrix multiply(const RationalMatrix& o) const;

    std::string to_string() const;  // exact p/q text grid, for debugging

private:
    int rows_, cols_;
    std::vector<Rat> a_;
};

// Exact determinant via fraction-free (Bareiss) elimination on the
// integer-scaled matrix.
Rat determinant(const RationalMatrix& m);

int rank(const RationalMatrix& m);

// Basis of the right null space, each vector scaled to primitive integer
// entries (content 1, leading nonzero positive). Deterministic.
std::vector<std::vector<Rat>> kernel_basis(const RationalMatrix& m);

// One exact solution of M x = b, or nothing if inconsistent. Free
// variables are set to zero; pivot order is fixed, so the result is
// deterministic.
std::optional<std::vector<Rat>> solve_exact(const RationalMatrix& m, const std::vector<Rat>& b);

struct SnfResult {
    std::vector<Int> diag;  // invariant factors d1 | d2 | ... | dr, positive
    int rank = 0;
    RationalMatrix u;  // unimodular, u * m * v = diag
    RationalMatrix v;
};

// Smith normal form of an integer matrix. Pivot selection by minimal
// absolute value to limit coefficient growth.
SnfResult smith_normal_form(const RationalMatrix& m);

}  // namespace ohcp
