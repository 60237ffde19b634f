#pragma once

#include <string>
#include <vector>

#include "khlab/corpus.hpp"

namespace khlab {

struct SuiteResult {
    std::string suite;
    bool pass = true;
    long long checks = 0;
    std::vector<std::string> failures;
    double seconds = 0;
};

// Named verification suites over a diagram corpus:
//   d2         - the differential squares to zero in all four rings
//   mod2       - even and odd complexes agree entrywise modulo 2
//   pullback   - the unified complex is the even/odd fiber product
//   ses        - both (1 ± xi) short exact sequences are degreewise exact
//   splitting  - odd homology splits through the reduced theory
//   reduced    - reduced/unreduced exact sequence and generator counts
//   burnside   - square matchings unique, hexagons commute, totalization and
//                doubling reproduce the complexes
//   jones      - graded Euler characteristic equals the bracket state sum
//   invariance - homology invariance under reorder/arrow/assignment/moves
//   moves      - movie witnesses: chain maps, mod-2 agreement, genus bounds
//   s          - filtered-homology invariants across the knot corpus
std::vector<std::string> suite_names();

SuiteResult run_suite(const std::string& name, const std::vector<CorpusEntry>& corpus, int jobs,
                      uint64_t seed);

std::vector<SuiteResult> run_suites(const std::vector<std::string>& names,
                                    const std::vector<CorpusEntry>& corpus, int jobs, uint64_t seed);

}  // namespace khlab
