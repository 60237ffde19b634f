#pragma once

#include <map>
#include <string>
#include <vector>

#include "khlab/complexes.hpp"

namespace khlab {

// A signed correspondence between the generator sets of two cube vertices.
// Elements are (source generator, target generator, sign); source generators
// live at the higher vertex, targets at the lower one.
struct SignedCorrespondence {
    Vertex src_vertex = 0, dst_vertex = 0;
    struct Elem {
        Mono src, dst;
        int sign;  // ±1
        bool operator<(const Elem& o) const
        {
            if (src != o.src) return src < o.src;
            if (dst != o.dst) return dst < o.dst;
            return sign < o.sign;
        }
        bool operator==(const Elem& o) const { return src == o.src && dst == o.dst && sign == o.sign; }
    };
    std::vector<Elem> elems;  // sorted
};

// A 2-chain element: a path src -> mid -> dst through two correspondences,
// with the product sign.
struct PathElem {
    Mono src, mid, dst;
    int sign;
    bool operator<(const PathElem& o) const
    {
        if (src != o.src) return src < o.src;
        if (mid != o.mid) return mid < o.mid;
        if (dst != o.dst) return dst < o.dst;
        return sign < o.sign;
    }
};

// Cube-shaped functor to the signed Burnside category: generator sets at the
// vertices, signed correspondences on the edges, and the unique
// sign-respecting bijections across square faces.
struct SignedBurnsideFunctor {
    int n = 0;
    int n_minus = 0;
    int stable_shift = 0;  // carried as metadata (suspension level)
    std::vector<std::vector<Mono>> objects;       // per vertex
    std::map<Edge, SignedCorrespondence> edges;   // per cube edge
    // per square, the matching between the two composite correspondences:
    // paths through (lo|b1) mapped to paths through (lo|b2)
    std::map<Square, std::map<PathElem, PathElem>> squares;
    // quantum grading of each generator (totalization bookkeeping)
    std::map<std::pair<Vertex, Mono>, int> qdeg;
};

// Read the functor off the odd-complex cube: correspondence elements are the
// nonzero entries of the edge maps, the square bijections are the unique
// sign-respecting matchings.
SignedBurnsideFunctor build_functor(const KhCube& odd_cube);

// Composite correspondence along lo -> lo|b_first -> hi.
std::vector<PathElem> composite_paths(const SignedBurnsideFunctor& f, const Square& s, bool through_b1);

struct HexReport {
    long long faces_checked = 0;
    long long paths_checked = 0;
    bool pass = true;
    std::string failure;
};

// Walk the six square bijections around every 3-face and demand the identity.
HexReport check_hexagons(const SignedBurnsideFunctor& f);

// Chain complex of the functor: free abelian groups on the objects with the
// standard sign; graded so the differential raises i (i = n_minus - |v|).
ChainCx totalize(const SignedBurnsideFunctor& f);

// Check Tot(F)^T equals the odd cochain complex, block by block.
bool totalization_duality_check(const SignedBurnsideFunctor& f, const KhCube& odd_cube);

// Doubling into the free Z/2-equivariant world: objects {1,xi} x Kg(v), signs
// absorbed into the xi coordinate. Returned as the integer chain complex of
// the doubled functor (same grading scheme as totalize), which must coincide
// with the transposed doubled integer form of the unified complex.
ChainCx double_totalization(const SignedBurnsideFunctor& f);
bool doubling_matches_unified(const SignedBurnsideFunctor& f, const KhCube& unified_cube);

// Sign reassignment by per-vertex sign functions zeta: Kg(v) -> ±1.
SignedBurnsideFunctor sign_reassign(const SignedBurnsideFunctor& f,
                                    const std::map<std::pair<Vertex, Mono>, int>& zeta);

// Sub/quotient pair on a generator subset S (checked to be closed under
// sources mapping into S): returns (sub on S, quotient on the complement).
std::pair<SignedBurnsideFunctor, SignedBurnsideFunctor> subfunctor(
    const SignedBurnsideFunctor& f, const std::map<std::pair<Vertex, Mono>, char>& in_sub);

// The reduced subfunctor on generators NOT containing the basepoint circle,
// and the quotient on those containing it; the canonical bijection between
// them must preserve all signs (verified; returns false on failure).
bool reduced_functor_signs_match(const SignedBurnsideFunctor& f, const KhCube& odd_cube);

// Coproduct (disjoint union on objects and correspondences).
SignedBurnsideFunctor coproduct(const SignedBurnsideFunctor& a, const SignedBurnsideFunctor& b);

// Debug emitter: per-edge element listing and per-square matchings.
std::string functor_debug(const SignedBurnsideFunctor& f);

}  // namespace khlab
