#pragma once

#include <vector>

#include "ohcp/complex.hpp"
#include "ohcp/linalg.hpp"

namespace ohcp {

// Undirected bipartite graph of a {0,±1} matrix: one vertex per row, one
// per column, one weighted edge per nonzero entry.
struct BipartiteIncidenceGraph {
    int m = 0, n = 0;
    // adjacency: row r -> (col, weight), col c -> (row, weight); both sorted.
    std::vector<std::vector<std::pair<int, int>>> row_adj;
    std::vector<std::vector<std::pair<int, int>>> col_adj;
    long edge_count = 0;
};

BipartiteIncidenceGraph bipartite_graph(const RationalMatrix& b);

// A minimal violation of total unimodularity, witnessed by an induced
// circuit of the bipartite graph whose edge-weight sum is 2 mod 4.
struct MntuCertificate {
    std::vector<int> rows;  // interior rows, ascending
    std::vector<int> cols;  // column set Q_M, ascending
    RationalMatrix m;       // square submatrix B[rows, cols]
    Rat det;                // +2 or -2
    // Circuit r0 c0 r1 c1 ... r_{k-1} c_{k-1} (back to r0): row r_i is the
    // shared face of columns c_{i-1} and c_i. Canonical start/direction.
    std::vector<int> circuit_rows;
    std::vector<int> circuit_cols;
    std::vector<int> exterior_rows;  // rows outside `rows` hitting Q_M columns
    bool is_cmntus = false;          // set by classify_cmntus over the full list
};

struct MntusResult {
    std::vector<MntuCertificate> certificates;
    bool complete = true;  // false when the search budget ran out
    long nodes_explored = 0;
};

// All minimal non-TU submatrices of a {0,±1} matrix, found by exhaustive
// induced-circuit search with parity filtering. Certificates are
// deduplicated by (row set, column set) and invariant-checked. Fills
// is_cmntus on each certificate.
MntusResult find_mntus(const RationalMatrix& b, long budget = 5000000);

bool is_totally_unimodular(const RationalMatrix& b, long budget = 5000000);

// True iff no other certificate's column set is a proper subset of this
// one's. When true, verifies that every exterior row has an odd number of
// nonzeros in the certificate's columns.
bool classify_cmntus(const MntuCertificate& cert, const RationalMatrix& b,
                     const std::vector<MntuCertificate>& all_certs);

// Cyclic sequence of q-simplices in which consecutive entries share the
// stated p-face and the incidence-entry sum along the cycle is 2 mod 4.
struct OrientationReversingChain {
    std::vector<int> q_simplices;   // column indices in traversal order
    std::vector<int> shared_faces;  // shared_faces[i] joins q[i] and q[i+1 mod k]
};

OrientationReversingChain extract_orientation_reversing_chain(const MntuCertificate& cert,
                                                              const RationalMatrix& b);

// Torsion-freeness of all pure subcomplex quotients in dimension p is
// equivalent to total unimodularity of the (p+1)-boundary matrix; this is
// a direct alias of that test.
bool relative_torsion_free(const SimplicialComplex& k, int p, long budget = 5000000);

// Independent slow checks, used by tests and the CLI --oracle flag.
namespace oracle {

// Exhaustive scan of all square submatrices up to size_cap.
bool is_tu_by_determinant_scan(const RationalMatrix& b, int size_cap);

// Minimal (by row/column-set containment) square submatrices with
// |det| >= 2, as (row set, column set) pairs, ascending.
std::vector<std::pair<std::vector<int>, std::vector<int>>> mntus_by_determinant_scan(
    const RationalMatrix& b, int size_cap);

}  // namespace oracle

}  // namespace ohcp
