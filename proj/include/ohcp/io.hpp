#pragma once

#include <string>
#include <vector>

#include "ohcp/complex.hpp"

namespace ohcp {

// "p/q" or plain integer text to an exact rational. Throws ParseError.
Rat parse_rational(const std::string& token);

struct ParsedComplex {
    SimplicialComplex complex;
    std::vector<std::vector<long>> maximal;  // input lines in file order
};

// Complex text format: '#' starts a comment; every other nonempty line is
// the whitespace-separated vertex labels of one maximal simplex.
ParsedComplex load_complex(const std::string& path);

// Chain text format: each line `coefficient v0 v1 ... vp`. Vertex order
// need not be canonical; odd permutations negate the coefficient.
// Repeated simplices accumulate.
Chain load_chain(const std::string& path, const SimplicialComplex& kc, int p);

// Weight file: each line `value v0 v1 ... vp` with value >= 0. Unlisted
// p-simplices default to weight 1.
std::vector<Rat> load_weights(const std::string& path, const SimplicialComplex& kc, int p);

// Dense coefficient vector over all p-simplices of the complex.
std::vector<Rat> chain_to_dense(const SimplicialComplex& kc, const Chain& chain);

}  // namespace ohcp
