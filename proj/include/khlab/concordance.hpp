#pragma once

#include <map>
#include <vector>

#include "khlab/complexes.hpp"
#include "khlab/f2.hpp"

namespace khlab {

// F2 Bar-Natan complex of a knot diagram. The underlying Frobenius structure
// is F2[x]/(x^2+x): merges multiply, splits send 1 to 1⊗x + x⊗1 + 1⊗1 and x
// to x⊗x. The quantum grading filters the complex: the differential never
// lowers j, and the j-preserving part is the mod-2 Khovanov differential.
struct FilteredComplex {
    Diagram d;
    std::vector<GenRef> gens;               // (vertex, x-circle mask)
    std::vector<int> ideg, jdeg;
    std::vector<std::vector<int>> dcol;     // F2 differential, sorted targets
    int jmin = 0, jmax = 0;

    int size() const { return static_cast<int>(gens.size()); }
};

FilteredComplex barnatan_complex(const Diagram& d, int jobs = 1);

// dimension of the total homology (must be 2 for a knot)
int barnatan_total_dim(const FilteredComplex& f);

// rank of H^0(F_q) -> H^0 of the whole complex
int filtration_map_rank(const FilteredComplex& f, int q);

// Rasmussen-type invariant from the filtration: both defining formulas are
// evaluated and must agree.
int s_invariant(const Diagram& d, int jobs = 1);

enum class AlphaOp { bockstein_even, bockstein_odd };

struct AlphaInvariants {
    int r_plus = 0, s_plus = 0, r_minus = 0, s_minus = 0;
};

// Bockstein-refined invariants: search odd filtration levels for half-full
// and full classes whose graded leading terms are Bockstein images; the minus
// versions run on the mirror.
AlphaInvariants alpha_invariants(const Diagram& d, AlphaOp alpha, int jobs = 1);

// exposed for tests: is q alpha-(half-)full?
struct AlphaLevel {
    bool half_full = false;
    bool full = false;
};
AlphaLevel alpha_level(const Diagram& d, AlphaOp alpha, int q, int jobs = 1);

}  // namespace khlab
