#pragma once

#include <map>
#include <vector>

#include "khlab/bigint.hpp"
#include "khlab/complexes.hpp"
#include "khlab/f2.hpp"

namespace khlab {

// Dense integer matrix.
struct ZMat {
    int rows = 0, cols = 0;
    std::vector<std::vector<BigInt>> a;

    ZMat() = default;
    ZMat(int r, int c) : rows(r), cols(c), a(r, std::vector<BigInt>(c)) {}
    static ZMat identity(int n);
    friend ZMat operator*(const ZMat& x, const ZMat& y);
    bool operator==(const ZMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool is_zero() const;
};

// U * M * V = D with U, V unimodular and D diagonal, nonzero entries forming a
// divisibility chain. Uinv and Vinv are maintained alongside so unimodularity
// is certified by exact identities rather than determinant recomputation.
struct SnfResult {
    ZMat U, Uinv, V, Vinv, D;
    int rank = 0;
    std::vector<BigInt> diag;  // the nonzero invariant factors, positive
};

SnfResult smith_normal_form(const ZMat& M);

// rank and invariant factors only, no transform bookkeeping
struct SnfDiag {
    int rank = 0;
    std::vector<BigInt> diag;
};
SnfDiag smith_diagonal(ZMat M);

// Finitely generated abelian group with chosen representatives.
struct HomGroup {
    int free_rank = 0;
    std::vector<BigInt> torsion;                  // invariant factors > 1, each dividing the next
    std::vector<std::vector<BigInt>> reps;        // torsion reps first, then free reps (chain coordinates)

    int ngens() const { return static_cast<int>(torsion.size()) + free_rank; }
    bool iso(const HomGroup& o) const { return free_rank == o.free_rank && torsion == o.torsion; }
    std::string str() const;
};

// Invariant factors of the direct sum, recomputed canonically.
HomGroup direct_sum(const HomGroup& a, const HomGroup& b);

// Exact homology of one bigraded complex. Integer complexes go through Smith
// normal form; mod2 goes through F2 rank. Caches per-bigrading solver data so
// cycles can be expressed in homology coordinates.
class Homology {
public:
    // with_reps = false computes the groups only (no stored solvers or
    // representatives; coords/induced_map are then unavailable)
    explicit Homology(const ChainCx& c, int jobs = 1, bool with_reps = true);

    const ChainCx& complex() const { return *c_; }
    HomGroup group(int i, int j) const;
    std::vector<Bideg> support() const;

    // homology coordinates (torsion coords reduced mod the invariant factor)
    // of a cycle given in (i,j)-block chain coordinates
    std::vector<BigInt> coords(int i, int j, const std::vector<BigInt>& cycle) const;

    // graded Euler characteristic sum (-1)^i q^j free_rank as exponent->coeff
    std::map<int, long long> euler() const;

private:
    const ChainCx* c_;
    struct BlockData {
        HomGroup H;
        int m = 0;          // block dimension
        int krank = 0;      // rank of outgoing differential
        ZMat Vout, Vinv_out;  // SNF of outgoing differential d_out: cycles = last columns of Vout
        ZMat Uq, Uqinv;       // SNF row ops of the incoming matrix in kernel coordinates
        std::vector<BigInt> qdiag;  // full diagonal of that SNF (zeros included)
        int qrank = 0;
    };
    std::map<Bideg, BlockData> data_;

    friend class InducedMap;
    const BlockData* block(int i, int j) const;
};

// A chain map between complexes, stored per source generator.
struct ChainMap {
    const ChainCx* src = nullptr;
    const ChainCx* dst = nullptr;
    int di = 0, dj = 0;  // degree shift: source (i,j) lands in (i+di, j+dj)
    std::vector<std::vector<std::pair<int, Zu>>> cols;  // per source gen: (dst index, coeff)

    void verify_chain_map() const;  // f∂ = ∂f exactly; throws otherwise
    bool is_zero() const;
};

ChainMap compose(const ChainMap& second, const ChainMap& first);

// Matrix of the induced map on homology between two computed homologies.
std::vector<std::vector<BigInt>> induced_map(const Homology& hs, const Homology& ht, const ChainMap& f,
                                             int i, int j);

// Degreewise exactness of src --f--> mid --g--> dst at mid (homology of the
// three-term complex vanishes in every bidegree of mid).
bool exact_at_middle(const ChainMap& f, const ChainMap& g);

// ---- mod-2 side ----------------------------------------------------------

// F2 reduction of an integer complex block and its homology, plus the
// Bockstein of the integral complex: beta: H^i(mod2) -> H^{i+1}(mod2),
// computed by lifting cocycles, applying the integral differential, halving.
class Mod2Homology {
public:
    explicit Mod2Homology(const ChainCx& integral);

    int dim(int i, int j) const;
    std::vector<Bideg> support() const;
    F2Mat bockstein(int i, int j) const;  // dim(i+1,j) x dim(i,j)

    const F2Homology* block(int i, int j) const;
    std::vector<int> indices(int i, int j) const;

private:
    const ChainCx* c_;
    std::map<Bideg, F2Homology> data_;
    F2Mat block_matrix(int i, int j) const;  // mod-2 differential block
};

}  // namespace khlab
