#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "khlab/resolution.hpp"

namespace khlab {

// A chain-complex generator label: cube vertex, monomial, and a {1,xi}
// coordinate used by doubled integer bases (0 for plain complexes).
struct GenRef {
    Vertex v = 0;
    Mono m = 0;
    char xi = 0;

    bool operator==(const GenRef& o) const { return v == o.v && m == o.m && xi == o.xi; }
    bool operator<(const GenRef& o) const
    {
        if (v != o.v) return v < o.v;
        if (m != o.m) return m < o.m;
        return xi < o.xi;
    }
};

using Bideg = std::pair<int, int>;  // (i, j); differentials raise i by 1 and preserve j

// Bigraded complex with exact coefficients. Entries are Zu folded to `ring`;
// integer complexes keep b = 0. Generators are sorted by (i, j, v, m, xi) so
// all block bases are deterministic.
struct ChainCx {
    Ring ring = Ring::even;
    std::vector<GenRef> gens;
    std::vector<Bideg> deg;
    std::vector<std::vector<std::pair<int, Zu>>> dcol;  // column g: (target index, coeff), target deg = deg(g)+(1,0)

    std::map<Bideg, std::pair<int, int>> ranges;  // (i,j) -> [begin,end) in gens, set by sort_canonical

    int size() const { return static_cast<int>(gens.size()); }
    int find(const GenRef& g, const Bideg& dg) const;

    // indices of the (i,j) block, in basis order
    std::vector<int> block(int i, int j) const;
    std::vector<Bideg> bidegrees() const;

    Zu entry(int row, int col) const;
    void sort_canonical();   // sort gens by (deg, label) and remap dcol
    void check_d_squared() const;  // throws on failure
    void check_degrees() const;
};

// Complete cube-level data for one diagram and one coefficient ring.
struct KhCube {
    Diagram d;
    Ring ring = Ring::even;
    int n = 0;
    std::vector<Resolution> res;                 // 2^n
    Cochain eps;                                 // edge assignment (degree-1, additive F2)
    std::vector<int> face_types;                 // per square: 0=C, 1=A, 2=XY
    std::map<Edge, SparseZu> blocks;             // cochain-direction edge maps, eps included, ring folded

    int i_of(Vertex v) const { return vweight(v) - d.n_minus; }
    int j_of(Vertex v, Mono m) const
    {
        return res[v].ncircles - 2 * popcount64(m) + vweight(v) + n - 3 * d.n_minus;
    }
};

KhCube build_cube(const Diagram& d, Ring ring, int jobs = 1, const Cochain* eps_override = nullptr,
                  const std::vector<int>* edge_priority = nullptr);

// The Khovanov cochain complex: i = |v| - n_minus, differential carries the
// standard sign times the assigned edge unit.
ChainCx cochain_complex(const KhCube& cube);
ChainCx build_complex(const Diagram& d, Ring ring, int jobs = 1);

// Subcomplex on generators containing the basepoint circle, quantum grading
// shifted up by one.
ChainCx reduced_subcomplex(const ChainCx& c, const KhCube& cube);
// Quotient on the complementary generators, quantum grading shifted down.
ChainCx reduced_quotient(const ChainCx& c, const KhCube& cube);

// Integer form of the unified complex on the doubled basis Kg ∪ xiKg, plus the
// xi-action as a signed permutation (here a plain swap of the two sheets).
ChainCx doubled_z_form(const KhCube& unified_cube);

// ---- structural reports -------------------------------------------------

struct CheckReport {
    bool pass = true;
    std::vector<std::string> failures;
    std::map<std::string, long long> stats;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            failures.push_back(what);
        }
    }
};

// Kc_u == {(a,b) in Kc_e ⊕ Kc_o : a ≡ b mod 2} via m+n·xi -> (m+n, m-n),
// verified entrywise per bigrading.
CheckReport unified_pullback_check(const Diagram& d, int jobs = 1);

// The two short exact sequences: multiplication by (1 ± xi) into the doubled
// integer form followed by specialization; chain-map and degreewise-exactness
// verification.
enum class SesVariant { e_u_o, o_u_e };
CheckReport ses_even_unified_odd(const Diagram& d, SesVariant variant, int jobs = 1);

// Kh_o^{i,j} ≅ reduced ⊕ reduced at j∓1, compared through invariant factors.
CheckReport odd_splitting_check(const Diagram& d, int jobs = 1);

// Reduced <-> unreduced short exact sequence (sub at j+1, quotient at j-1).
CheckReport reduced_ses_check(const Diagram& d, Ring ring, int jobs = 1);

}  // namespace khlab
