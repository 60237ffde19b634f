#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "khlab/util.hpp"

namespace khlab {

// One crossing of a PD code. e = (a,b,c,d): a is the incoming under-strand
// edge and b,c,d follow counterclockwise. The under-strand runs a -> c.
// sign = +1 iff the over-strand enters at d (and leaves at b).
struct Crossing {
    std::array<int, 4> e{};
    int sign = 0;
};

// Oriented link diagram. Immutable after construction; all transforms
// return fresh diagrams.
struct Diagram {
    std::vector<Crossing> crossings;
    std::vector<char> arrows;  // per crossing; true = surgery-arrow tail on the 0-smoothing arc through slot a
    int free_loops = 0;        // crossingless circles carried alongside
    std::optional<int> basepoint;  // edge label
    bool based_loop = false;       // basepoint sits on the first free loop instead

    // derived during validation
    std::vector<int> edges;  // sorted labels
    int n_plus = 0, n_minus = 0;

    int n() const { return static_cast<int>(crossings.size()); }
    int components() const;
    bool has_basepoint() const { return basepoint.has_value() || based_loop; }

    // occurrences of an edge label: (crossing index, slot), exactly two
    using Occ = std::pair<int, int>;
    const std::array<Occ, 2>& occ(int edge) const;

    std::map<int, std::array<Occ, 2>> occ_map;  // filled by validate
};

// Parse the PD grammar:
//   PD[X(a,b,c,d),...] [U | U*]... [arrows=TF...] [bp=<edge>]
// A diagram may also consist of U tokens alone. Throws input_error on
// malformed text, on edge labels not occurring exactly twice, and when no
// coherent strand orientation exists.
Diagram parse_pd(const std::string& text);

// Canonical serialization; parse(serialize(d)) == d.
std::string serialize(const Diagram& d);

// Over/under exchanged at every crossing; n_plus and n_minus swap.
Diagram mirror(const Diagram& d);

// Replace per-crossing arrow choices; length must match.
Diagram set_crossing_orientations(const Diagram& d, const std::vector<char>& arrows);

// Fresh diagram with crossings listed in the given order.
Diagram reorder_crossings(const Diagram& d, const std::vector<int>& perm);

// Relabel edges by a map (labels must stay positive and distinct).
Diagram relabel_edges(const Diagram& d, const std::map<int, int>& relab);

// Validation used by parse and by the movie rewriter: recomputes edge
// occurrences, solves strand orientations, classifies signs.
void validate(Diagram& d);

// first unused positive edge label
int fresh_edge_label(const Diagram& d, int count = 1);

}  // namespace khlab
