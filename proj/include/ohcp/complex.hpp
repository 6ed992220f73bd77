#pragma once

#include <map>
#include <string>
#include <vector>

#include "ohcp/linalg.hpp"

namespace ohcp {

// Canonical form of an oriented simplex: vertices sorted ascending plus the
// sign of the sorting permutation. The canonical order carries orientation +1.
struct Simplex {
    std::vector<long> vertices;  // sorted ascending, pairwise distinct
    int sign = 1;                // parity of the permutation that sorted the input

    int dimension() const { return int(vertices.size()) - 1; }

    // Canonicalize an input vertex sequence. Throws ParseError on duplicates.
    static Simplex canonical(const std::vector<long>& verts);

    bool operator<(const Simplex& o) const { return vertices < o.vertices; }
    bool operator==(const Simplex& o) const { return vertices == o.vertices; }
};

class SimplicialComplex {
public:
    int top_dimension() const { return int(by_dim_.size()) - 1; }
    int count(int dim) const {
        return (dim >= 0 && dim <= top_dimension()) ? int(by_dim_[dim].size()) : 0;
    }
    // Simplices of one dimension in index order (sorted canonical order).
    const std::vector<std::vector<long>>& simplices(int dim) const { return by_dim_.at(dim); }
    // Index of a simplex given its sorted vertex list; -1 if absent.
    int index_of(int dim, const std::vector<long>& sorted_verts) const;

    friend SimplicialComplex build_complex(const std::vector<std::vector<long>>& maximal);

private:
    std::vector<std::vector<std::vector<long>>> by_dim_;       // dim -> index -> vertices
    std::vector<std::map<std::vector<long>, int>> index_;      // dim -> vertices -> index
};

// Face closure of the given maximal simplices with deterministic index maps.
SimplicialComplex build_complex(const std::vector<std::vector<long>>& maximal);

// Sparse chain: dimension plus simplex-index -> rational coefficient,
// zero coefficients never stored.
struct Chain {
    int dim = 0;
    std::map<int, Rat> coef;

    void set(int index, const Rat& value) {
        if (value == 0)
            coef.erase(index);
        else
            coef[index] = value;
    }
    bool is_zero() const { return coef.empty(); }
    bool operator==(const Chain& o) const { return dim == o.dim && coef == o.coef; }
};

Chain chain_add(const Chain& a, const Chain& b);
Chain chain_scale(const Chain& a, const Rat& s);

struct BoundaryMatrix {
    int p = 0;  // row dimension
    int q = 1;  // column dimension, p + 1
    int m = 0;  // rows = number of p-simplices
    int n = 0;  // cols = number of q-simplices
    RationalMatrix mat;  // entries in {0, +1, -1}
};

// Boundary operator matrix with the alternating-sign convention
// d[v0..vq] = sum_k (-1)^k [v0..^vk..vq] on canonical orientations.
BoundaryMatrix boundary_matrix(const SimplicialComplex& k, int q);

Chain apply_boundary(const SimplicialComplex& k, const Chain& chain);

struct HomologyGroup {
    long betti = 0;
    std::vector<Int> torsion;  // invariant factors > 1, divisibility order
    bool trivial() const { return betti == 0 && torsion.empty(); }
};

HomologyGroup homology(const SimplicialComplex& k, int p);

}  // namespace ohcp
