#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ohcp/complex.hpp"
#include "ohcp/lp.hpp"
#include "ohcp/tu.hpp"

namespace ohcp {

// Kernel element with q-coefficients +-1/2 exactly on the certificate's
// columns and interior p-coefficients equal to a unit vector.
struct UnitNull {
    int row = 0;       // global row index of the unit p-coefficient
    SolutionVector z;  // full-length concise kernel element
};

UnitNull unit_null(const OhcpInstance& inst, const MntuCertificate& cert, int row);

// The unique combination of unit nulls whose interior p-coefficients match
// z, with entries placed linearly concisely with z and nonpositively on
// pairs where z vanishes. Entries may be negative.
SolutionVector m_of(const OhcpInstance& inst, const MntuCertificate& cert,
                    const SolutionVector& z);

// For an elementary instance (c = +-e_row, row interior to cert): the
// nonintegral basic solution z^I - m(z^I), with zero interior
// p-coefficients and q-support inside the certificate's columns.
SolutionVector elementary_fractional_vertex(const OhcpInstance& inst, const MntuCertificate& cert);

// Integral kernel element whose interior p-coefficient sum is odd and
// whose deviation from its half-integral companion m(k) is nonzero on the
// x-part yet componentwise dominated by the fractional vertex.
struct NeutralizingChain {
    SolutionVector k;           // integral concise kernel element
    SolutionVector difference;  // k - m(k), slotwise
    long interior_sum = 0;      // odd by construction
    std::vector<long> lattice_u;  // coefficients over the (B_j, e_j) kernel columns
};

// Deterministic lattice search over integer combinations of the
// boundary-column kernel directions, by ascending max-norm shell, then
// lexicographically. Absence within the radius is a value, not an error;
// exceeding `budget` tested lattice points throws BudgetError.
std::optional<NeutralizingChain> find_neutralizing_chain(const OhcpInstance& inst,
                                                         const MntuCertificate& cert, int radius,
                                                         long budget = 1000000000L);

enum class CellVerdict { Neutralized, NotNeutralized, Unknown };
enum class OverallVerdict { Neutralized, NotNeutralized, Unknown };

// One decision cell: a certificate, one of its interior rows, and the sign
// of the elementary input chain.
struct NeutralizationCell {
    int cert_index = 0;
    int row = 0;
    int sign = 1;
    CellVerdict verdict = CellVerdict::Unknown;
    std::optional<NeutralizingChain> chain;                 // "yes" evidence
    std::optional<std::vector<Rat>> witness_projection;     // "no" evidence
};

struct NeutralizationReport {
    MntusResult mntus;
    std::vector<NeutralizationCell> cells;
    OverallVerdict overall = OverallVerdict::Unknown;
    bool vacuous = false;  // no certificates at all
    int radius = 0;
    long budget = 0;
};

// Decides via projections of the elementary fractional vertices: a vertex
// of the projected polyhedron is a sound "not neutralized" witness;
// otherwise per-cell chain certificates establish "neutralized". Cells
// with neither stay unknown.
NeutralizationReport decide_by_projection(const SimplicialComplex& k, int q, long budget,
                                          int radius = 2);

// Decides purely by chain search; can answer "neutralized" or "unknown",
// never "not neutralized" (absence within the radius proves nothing).
NeutralizationReport decide_by_definition(const SimplicialComplex& k, int q, int radius,
                                          long budget = 1000000000L);

// Sufficient condition for 2-complexes: trivial first homology over the
// integers forces the neutralized verdict. No conclusion otherwise.
std::optional<OverallVerdict> h1_trivial_shortcut(const SimplicialComplex& k);

// The two integral solutions z^i +- (k - m(k)), canonicalized; their
// projections average exactly to the fractional vertex's projection.
std::pair<SolutionVector, SolutionVector> neutralized_vertex_decomposition(
    const OhcpInstance& inst, const SolutionVector& z_i, const NeutralizingChain& chain);

}  // namespace ohcp
