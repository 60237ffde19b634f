#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "khlab/complexes.hpp"
#include "khlab/homology.hpp"

namespace khlab {

// ---- Gaussian elimination on bigraded complexes ---------------------------
//
// Cancelling a unit entry between a pair of generators in adjacent homological
// degrees yields a homotopy-equivalent complex together with explicit
// projection and inclusion chain maps. This single engine drives every
// Reidemeister and cobordism witness.
class Eliminator {
public:
    explicit Eliminator(const ChainCx& c);

    // cancel generators g -> h (entry must be a unit); labels refer to the
    // original complex
    void cancel(const GenRef& g, const Bideg& dg, const GenRef& h, const Bideg& dh);
    bool alive(const GenRef& g, const Bideg& dg) const;
    Zu current_entry(const GenRef& g, const Bideg& dg, const GenRef& h, const Bideg& dh) const;

    // number of cancelled pairs so far
    int pairs() const { return pairs_; }

    // finalize: reduced complex plus both witnesses (verified chain maps with
    // projection ∘ inclusion = identity)
    struct Result {
        std::shared_ptr<ChainCx> original;
        std::shared_ptr<ChainCx> reduced;
        ChainMap projection;  // original -> reduced
        ChainMap inclusion;   // reduced -> original
    };
    Result finish() const;

    // cancel unit entries in deterministic label order until none remain
    void reduce_fully();

private:
    std::shared_ptr<ChainCx> orig_;
    std::vector<char> dead_;
    std::vector<std::map<int, Zu>> cols_, rows_;      // current differential
    std::vector<std::map<int, Zu>> pi_rows_;          // current gen -> original coords
    std::vector<std::map<int, Zu>> iota_cols_;        // current gen -> original coords
    int pairs_ = 0;

    int index_of(const GenRef& g, const Bideg& dg) const;
    void cancel_indices(int g, int h);
    Zu fold(const Zu& x) const { return x.fold(orig_->ring); }
};

// ---- structured cancellations ---------------------------------------------

// Cancellation across the cube direction `crossing`, for a merge edge whose
// vanishing circle contains `loop_edge`: cancels every generator at the
// 0-side not containing that circle against its merge image. Returns the
// quotient data (reduced complex + witnesses).
Eliminator::Result cancel_merge(const ChainCx& c, const KhCube& cube, int crossing, int loop_edge);

// Dual cancellation for a split edge: cancels every 0-side generator against
// the image term containing the circle through `loop_edge` at the 1-side.
Eliminator::Result cancel_split(const ChainCx& c, const KhCube& cube, int crossing, int loop_edge);

// ---- diagram rewriting -----------------------------------------------------

Diagram r1_insert(const Diagram& d, int edge, bool positive);
// returns the rewritten diagram; `out_fused` reports the surviving edge label
Diagram r1_remove(const Diagram& d, int crossing, int* out_fused = nullptr);
// push `f` across `g` through a corner they share (consecutive slots at some
// crossing); f_over chooses which strand is on top
Diagram r2_insert(const Diagram& d, int f, int g, bool f_over);
Diagram r2_remove(const Diagram& d, int c1, int c2);
// braid-like third move on a triangle of crossings
Diagram r3_rewrite(const Diagram& d, int ca, int cb, int cc);
Diagram add_loop(const Diagram& d);
Diagram remove_loop(const Diagram& d);
// saddle between two edges, or an edge and a free loop (edge_b = 0), or two
// loops (both 0): returns the (n+1)-crossing trace diagram and the far side
struct SaddleData {
    Diagram trace;  // n+1 crossings; crossing n restores d0 at its 0-resolution
    Diagram d1;
};
SaddleData saddle(const Diagram& d0, int edge_a, int edge_b);

// ---- witnesses -------------------------------------------------------------

// A verified chain map between totalization-side complexes.
struct ChainMapWitness {
    std::shared_ptr<ChainCx> source, target;
    ChainMap map;
    int dq = 0;  // quantum shift carried by the map
    bool is_chain_map = false;
    bool is_quasi_iso = false;
    std::string label;
};

ChainMapWitness compose_witnesses(const ChainMapWitness& second, const ChainMapWitness& first);
// quasi-isomorphism certificate: acyclicity of the mapping cone
bool cone_is_acyclic(const ChainMapWitness& w, int jobs = 1);

enum class MoveKind { R1Pos, R1Neg, R1Inv, R2, R2Under, R2Inv, R3, Birth, Death, Saddle };

struct MovieMove {
    MoveKind kind;
    std::vector<int> args;  // edges or crossing indices per kind
};

struct MovieScript {
    std::vector<MovieMove> moves;
};

MovieScript parse_movie(const std::string& text);
std::string serialize_movie(const MovieScript& s);

// Witness factory: each event yields a verified map Tot(after) -> Tot(before)
// over the requested integer ring (odd or even).
class MovieRunner {
public:
    MovieRunner(const Diagram& start, Ring ring, int jobs = 1);

    void apply(const MovieMove& m);
    const Diagram& diagram() const { return cur_; }
    // composite witness Tot(final) -> Tot(initial); identity for empty movies
    const ChainMapWitness& witness() const { return total_; }
    int births() const { return births_; }
    int deaths() const { return deaths_; }
    int saddles() const { return saddles_; }

private:
    Ring ring_;
    int jobs_;
    Diagram cur_;
    std::shared_ptr<ChainCx> cur_tot_;
    std::shared_ptr<KhCube> cur_cube_;
    ChainMapWitness total_;
    int births_ = 0, deaths_ = 0, saddles_ = 0;

    void chain_into(ChainMapWitness step);
};

// Convenience wrappers mirroring the per-move operations.
ChainMapWitness reidemeister_witness(const Diagram& before, const MovieMove& m, Ring ring, int jobs = 1);
ChainMapWitness movie_map(const Diagram& start, const MovieScript& script, Ring ring, int jobs = 1);

// Tot-side complexes for a diagram (canonical build).
std::shared_ptr<ChainCx> tot_complex(const KhCube& cube);

}  // namespace khlab
