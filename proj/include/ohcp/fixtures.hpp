#pragma once

#include <string>
#include <vector>

#include "ohcp/complex.hpp"

namespace ohcp {

// Built-in test corpus. `expected_*` fields carry frozen values that the
// pipeline re-verifies; -1 / empty means "not pinned for this fixture".
struct Fixture {
    std::string name;
    std::string description;
    std::vector<std::vector<long>> maximal;

    long expected_h1_betti = -1;
    std::vector<long> expected_h1_torsion;
    int expected_tu = -1;           // 0 false, 1 true, -1 unpinned
    int expected_mntus_count = -1;
    std::string expected_neutralized;  // "yes", "no", "" unpinned
};

const std::vector<Fixture>& builtin_fixtures();

const Fixture& fixture(const std::string& name);

// Writes <name>.cplx files plus manifest.json into dir (created if needed).
void write_fixtures(const std::string& dir);

}  // namespace ohcp
