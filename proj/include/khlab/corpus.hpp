#pragma once

#include <random>
#include <string>
#include <vector>

#include "khlab/diagram.hpp"
#include "khlab/moves.hpp"

namespace khlab {

// Braid letter: generator index i >= 1 crossing strands (i, i+1); sign picks
// the chirality.
struct BraidLetter {
    int i;
    int sign;  // ±1
};

// PD code of the closure of a braid word on `strands` strands. Labels are
// consecutive along the strands; pure identity strands contribute free loops.
Diagram braid_closure(int strands, const std::vector<BraidLetter>& word);

// named small diagrams
Diagram unknot_0();          // U
Diagram unknot_kink_pos();   // one positive twist
Diagram unknot_kink_neg();
Diagram unknot_clasp();      // two-crossing unlink clasp
Diagram hopf_neg();          // PD[X(1,4,2,3),X(3,2,4,1)]
Diagram hopf_pos();
Diagram trefoil_left();      // Rolfsen code, all negative
Diagram trefoil_right();
Diagram figure_eight();
Diagram unlink(int k);

struct CorpusEntry {
    std::string name;
    Diagram d;
};

// Deterministic mixed corpus: the named diagrams plus seeded random braid
// closures with at most `max_crossings` crossings.
std::vector<CorpusEntry> standard_corpus(int count, int max_crossings, uint64_t seed);

// Knots only (single component), for the concordance suites.
std::vector<CorpusEntry> knot_corpus(int count, int max_crossings, uint64_t seed);

// A random planar-safe movie on the diagram: twists, corner clasps, braid
// triangles where available.
MovieScript random_reidemeister_movie(const Diagram& d, int moves, uint64_t seed);

}  // namespace khlab
