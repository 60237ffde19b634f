#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "khlab/f2.hpp"
#include "khlab/util.hpp"

namespace khlab {

// Vertices of {0,1}^n packed as integers, bit i = coordinate of crossing i+1.
using Vertex = uint32_t;

inline int vweight(Vertex v) { return popcount32(v); }
inline bool vleq(Vertex v, Vertex u) { return (v & u) == v; }  // v <= u coordinatewise

// Standard sign of the edge u >= v with |u|-|v| = 1 (u = v | bit):
// the parity of the coordinates of u below the flipped bit.
inline int standard_sign(Vertex u, Vertex v)
{
    KHLAB_CHECK(vleq(v, u) && vweight(u) == vweight(v) + 1, "not a cube edge");
    uint32_t bit = u ^ v;
    return popcount32(u & (bit - 1)) & 1;
}

// Edge of the cube: lower vertex and the flipped bit index.
struct Edge {
    Vertex lo;
    int bit;
    Vertex hi() const { return lo | (1u << bit); }
    bool operator==(const Edge& o) const { return lo == o.lo && bit == o.bit; }
    bool operator<(const Edge& o) const { return lo != o.lo ? lo < o.lo : bit < o.bit; }
};

// Square face: lower vertex and the two flipped bit indices (b1 < b2).
struct Square {
    Vertex lo;
    int b1, b2;
    Vertex hi() const { return lo | (1u << b1) | (1u << b2); }
    bool operator==(const Square& o) const { return lo == o.lo && b1 == o.b1 && b2 == o.b2; }
    bool operator<(const Square& o) const
    {
        if (lo != o.lo) return lo < o.lo;
        if (b1 != o.b1) return b1 < o.b1;
        return b2 < o.b2;
    }
};

// 3-face: lower vertex plus three bits (ascending).
struct Cube3 {
    Vertex lo;
    int b1, b2, b3;
};

std::vector<Vertex> all_vertices(int n);
std::vector<Edge> all_edges(int n);        // lexicographic in (lo, bit)
std::vector<Square> all_squares(int n);    // lexicographic in (lo, b1, b2)
std::vector<Cube3> all_cubes3(int n);

inline int edge_index(int n, const Edge& e)
{
    // position in all_edges(n): edges are grouped by lo ascending, bit ascending
    int idx = 0;
    for (Vertex v = 0; v < e.lo; ++v) idx += n - vweight(v);
    int k = 0;
    for (int b = 0; b < e.bit; ++b)
        if (!(e.lo >> b & 1)) ++k;
    return idx + k;
}

// Multiplicative F2 cochain on the cube, degree 0, 1 or 2. Values stored
// additively: 0 = 1, 1 = xi.
struct Cochain {
    int n = 0;
    int degree = 0;
    std::vector<char> val;  // indexed by vertex / edge index / square index

    static Cochain zero(int n, int degree);
};

int square_index(int n, const Square& s);

// Coboundary of a degree-0 or degree-1 cochain.
Cochain coboundary(const Cochain& c);

// A partially constrained square target for the edge-assignment solve.
struct FaceConstraints {
    int n = 0;
    // one entry per square in all_squares(n): -1 free, 0 value 1, 1 value xi
    std::vector<int> target;
};

// Least solution of (delta eps)(f) = target(f) over constrained faces, where
// "least" minimizes the integer whose bit i is the value on the i-th edge in
// canonical (or permuted) enumeration order. Throws internal_error when the
// system has no solution.
Cochain solve_coboundary(const FaceConstraints& fc,
                         const std::vector<int>* edge_priority = nullptr);

}  // namespace khlab
