#pragma once

#include <map>
#include <string>
#include <vector>

#include "khlab/algebra.hpp"
#include "khlab/cube.hpp"
#include "khlab/diagram.hpp"

namespace khlab {

// Complete resolution of a diagram at a cube vertex: circles plus one directed
// surgery arc per crossing. Ports are the crossing slots, numbered 4*ci+slot.
//
// Smoothings pair ports (0,1),(2,3) at a 0-resolved crossing and (0,3),(1,2)
// at a 1-resolved one. Circle ids are canonical: ascending minimal edge label,
// free loops after all edge-bearing circles, and the basepoint circle forced
// last when a basepoint is present.
struct Resolution {
    Vertex vertex = 0;
    int ncircles = 0;
    std::vector<int> port_circle;            // size 4n
    std::vector<std::vector<int>> circle_ports;  // traversal order per circle
    std::vector<std::vector<int>> circle_edges;  // sorted edge labels per circle
    std::vector<int> circle_min_edge;        // INT_MAX-like sentinel for free loops

    struct Arc {
        int tail_circle = -1, head_circle = -1;
        int tail_pos = 0, head_pos = 0;  // index into circle_ports of the arc's first port
    };
    std::vector<Arc> arcs;  // per crossing

    int basepoint_circle() const { return ncircles - 1; }
};

Resolution resolve(const Diagram& d, Vertex v);

// Line-oriented debug listing: circles with their cyclic edge traversals and
// the directed arcs.
std::string resolution_debug(const Diagram& d, const Resolution& r);

// Cobordism data across a cube edge (lo -> lo|bit): exactly one merge or split.
struct EdgeCob {
    bool merge = false;
    // merge: lo circles {a1, a2} -> up circle a
    int m_a1 = -1, m_a2 = -1, m_a = -1;
    // split: lo circle a -> up circles (a1 = arc tail, a2 = arc head)
    int s_a = -1, s_a1 = -1, s_a2 = -1;
    CircleMap lo_to_up;  // unaffected circles (affected slots hold -1)
};

EdgeCob edge_cobordism(const Diagram& d, const Resolution& lo, const Resolution& up, int bit);

// Sparse matrix over Zu with explicit shape.
struct SparseZu {
    int rows = 0, cols = 0;
    std::map<std::pair<int, int>, Zu> v;  // (row, col) -> nonzero value

    void add(int r, int c, const Zu& x)
    {
        if (x.is_zero()) return;
        auto [it, fresh] = v.emplace(std::make_pair(r, c), x);
        if (!fresh) {
            it->second += x;
            if (it->second.is_zero()) v.erase(it);
        }
    }
    SparseZu fold(Ring ring) const
    {
        SparseZu out;
        out.rows = rows;
        out.cols = cols;
        for (auto& [rc, x] : v) out.add(rc.first, rc.second, x.fold(ring));
        return out;
    }
    SparseZu transposed() const
    {
        SparseZu out;
        out.rows = cols;
        out.cols = rows;
        for (auto& [rc, x] : v) out.add(rc.second, rc.first, x);
        return out;
    }
    SparseZu times(const Zu& c) const
    {
        SparseZu out;
        out.rows = rows;
        out.cols = cols;
        for (auto& [rc, x] : v) out.add(rc.first, rc.second, x * c);
        return out;
    }
    friend SparseZu operator*(const SparseZu& A, const SparseZu& B)
    {
        KHLAB_CHECK(A.cols == B.rows, "sparse product shape");
        SparseZu out;
        out.rows = A.rows;
        out.cols = B.cols;
        for (auto& [rc, x] : B.v) {
            auto [k, c] = rc;
            for (auto& [rc2, y] : A.v) {
                if (rc2.second != k) continue;
                out.add(rc2.first, c, y * x);
            }
        }
        return out;
    }
    bool operator==(const SparseZu& o) const { return rows == o.rows && cols == o.cols && v == o.v; }
};

// All monomial masks at a vertex, ascending (the Khovanov generators).
std::vector<Mono> khovanov_generators(const Resolution& r);

// Matrix of the algebra/module map across the cube edge (lo -> up) in the
// generator bases, as the map from the lower to the upper vertex: entry
// (row = up generator index, col = lo generator index). Entries lie in
// {0, xi^k} before ring folding; no edge assignment, no standard sign.
SparseZu edge_block_raw(const Diagram& d, const Resolution& lo, const Resolution& up, int bit,
                        Ring ring = Ring::unified);

enum class FaceType { C = 0, A = 1, XY = 2 };

// Compare the two composites around a square over Z[xi]/(xi^2-1): C when they
// agree on the nose only, A when they agree only after multiplying one by xi,
// XY when both hold. "Neither" is a convention bug and throws.
FaceType classify_face(const Diagram& d, const std::vector<Resolution>& res, const Square& s);

// Constraint targets for the edge assignment: xi on A faces, 1 on C faces,
// free on XY faces.
FaceConstraints psi_constraints(const Diagram& d, const std::vector<Resolution>& res);

// All 2^n resolutions, indexed by vertex.
std::vector<Resolution> all_resolutions(const Diagram& d, int jobs = 1);

}  // namespace khlab
