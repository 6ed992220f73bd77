#include "ohcp/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ohcp {

Simplex Simplex::canonical(const std::vector<long>& verts) {
    Simplex s;
    s.vertices = verts;
    // Insertion sort, counting swaps for the orientation sign.
    int swaps = 0;
    for (size_t i = 1; i < s.vertices.size(); ++i) {
        long v = s.vertices[i];
        size_t j = i;
        while (j > 0 && s.vertices[j - 1] > v) {
            s.vertices[j] = s.vertices[j - 1];
            --j;
            ++swaps;
        }
        s.vertices[j] = v;
    }
    for (size_t i = 1; i < s.vertices.size(); ++i)
        if (s.vertices[i] == s.vertices[i - 1]) {
            std::ostringstream os;
            os << "duplicate vertex " << s.vertices[i] << " in simplex";
            throw ParseError(os.str());
        }
    s.sign = (swaps % 2 == 0) ? 1 : -1;
    return s;
}

int SimplicialComplex::index_of(int dim, const std::vector<long>& sorted_verts) const {
    if (dim < 0 || dim > top_dimension()) return -1;
    auto it = index_[dim].find(sorted_verts);
    return it == index_[dim].end() ? -1 : it->second;
}

SimplicialComplex build_complex(const std::vector<std::vector<long>>& maximal) {
    std::vector<std::set<std::vector<long>>> faces;
    for (const auto& verts : maximal) {
        Simplex s = Simplex::canonical(verts);
        int d = s.dimension();
        if (d >= int(faces.size())) faces.resize(d + 1);
        // All nonempty subsets, via bitmask over the (small) vertex list.
        int k = int(s.vertices.size());
        for (unsigned mask = 1; mask < (1u << k); ++mask) {
            std::vector<long> f;
            for (int b = 0; b < k; ++b)
                if (mask & (1u << b)) f.push_back(s.vertices[b]);
            faces[int(f.size()) - 1].insert(std::move(f));
        }
    }
    SimplicialComplex kc;
    kc.by_dim_.resize(faces.size());
    kc.index_.resize(faces.size());
    for (size_t d = 0; d < faces.size(); ++d) {
        for (const auto& f : faces[d]) {  // std::set iteration = sorted order
            kc.index_[d][f] = int(kc.by_dim_[d].size());
            kc.by_dim_[d].push_back(f);
        }
    }
    return kc;
}

Chain chain_add(const Chain& a, const Chain& b) {
    if (a.dim != b.dim) throw InternalError("chain_add dimension mismatch");
    Chain out = a;
    for (const auto& [i, v] : b.coef) {
        Rat s = v;
        auto it = out.coef.find(i);
        if (it != out.coef.end()) s += it->second;
        out.set(i, s);
    }
    return out;
}

Chain chain_scale(const Chain& a, const Rat& s) {
    Chain out;
    out.dim = a.dim;
    if (s == 0) return out;
    for (const auto& [i, v] : a.coef) out.coef[i] = v * s;
    return out;
}

BoundaryMatrix boundary_matrix(const SimplicialComplex& k, int q) {
    if (q < 1 || q > k.top_dimension()) throw InternalError("boundary dimension out of range");
    BoundaryMatrix b;
    b.p = q - 1;
    b.q = q;
    b.m = k.count(q - 1);
    b.n = k.count(q);
    b.mat = RationalMatrix(b.m, b.n);
    for (int j = 0; j < b.n; ++j) {
        const auto& verts = k.simplices(q)[j];
        for (size_t drop = 0; drop < verts.size(); ++drop) {
            std::vector<long> face = verts;
            face.erase(face.begin() + long(drop));
            int i = k.index_of(q - 1, face);
            if (i < 0) throw InternalError("complex not closed under faces");
            b.mat(i, j) = (drop % 2 == 0) ? 1 : -1;
        }
    }
    return b;
}

Chain apply_boundary(const SimplicialComplex& k, const Chain& chain) {
    if (chain.dim < 1) throw InternalError("boundary of a 0-chain is undefined");
    BoundaryMatrix b = boundary_matrix(k, chain.dim);
    Chain out;
    out.dim = chain.dim - 1;
    for (const auto& [j, v] : chain.coef) {
        if (j < 0 || j >= b.n) throw InternalError("chain index out of range");
        for (int i = 0; i < b.m; ++i) {
            if (b.mat(i, j) == 0) continue;
            Rat s = b.mat(i, j) * v;
            auto it = out.coef.find(i);
            if (it != out.coef.end()) s += it->second;
            out.set(i, s);
        }
    }
    return out;
}

HomologyGroup homology(const SimplicialComplex& k, int p) {
    if (p < 0 || p > k.top_dimension()) throw InternalError("homology dimension out of range");
    long np = k.count(p);
    long rank_p = 0, rank_p1 = 0;
    HomologyGroup h;
    if (p >= 1 && np > 0) rank_p = rank(boundary_matrix(k, p).mat);
    if (p + 1 <= k.top_dimension() && k.count(p + 1) > 0) {
        SnfResult s = smith_normal_form(boundary_matrix(k, p + 1).mat);
        rank_p1 = s.rank;
        for (const Int& d : s.diag)
            if (d > 1) h.torsion.push_back(d);
    }
    h.betti = np - rank_p - rank_p1;
    return h;
}

}  // namespace ohcp
