#include "doctest.h"
#include "khlab/concordance.hpp"
#include "khlab/corpus.hpp"
#include "khlab/moves.hpp"

using namespace khlab;

TEST_CASE("filtered complex basics on the unknot")
{
    FilteredComplex f = barnatan_complex(unknot_0());
    CHECK(f.size() == 2);
    CHECK(barnatan_total_dim(f) == 2);
    CHECK(s_invariant(unknot_0()) == 0);
    CHECK(s_invariant(unknot_kink_pos()) == 0);
    CHECK(s_invariant(unknot_kink_neg()) == 0);
}

TEST_CASE("filtered complex rejects links")
{
    CHECK_THROWS_AS(barnatan_complex(hopf_neg()), input_error);
}

TEST_CASE("graded part of the filtered differential is the mod-2 differential")
{
    Diagram d = trefoil_left();
    FilteredComplex f = barnatan_complex(d);
    ChainCx kh = build_complex(d, Ring::mod2);
    std::map<std::pair<Vertex, Mono>, int> pos;
    for (int g = 0; g < kh.size(); ++g) pos[{kh.gens[g].v, kh.gens[g].m}] = g;
    for (int g = 0; g < f.size(); ++g) {
        std::map<int, int> graded;
        for (int t : f.dcol[g])
            if (f.jdeg[t] == f.jdeg[g]) graded[pos.at({f.gens[t].v, f.gens[t].m})] ^= 1;
        std::map<int, int> expect;
        for (auto& [t, v] : kh.dcol[pos.at({f.gens[g].v, f.gens[g].m})])
            if (v.a % 2) expect[t] = 1;
        for (auto it = graded.begin(); it != graded.end();)
            it = it->second == 0 ? graded.erase(it) : std::next(it);
        CHECK(graded == expect);
    }
}

TEST_CASE("total filtered homology has dimension 2 on knots")
{
    for (auto& entry : knot_corpus(8, 6, 17)) {
        FilteredComplex f = barnatan_complex(entry.d);
        CHECK(barnatan_total_dim(f) == 2);
    }
}

TEST_CASE("s distinguishes the trefoils")
{
    CHECK(s_invariant(trefoil_right()) == 2);
    CHECK(s_invariant(trefoil_left()) == -2);
    CHECK(s_invariant(figure_eight()) == 0);
}

TEST_CASE("s flips under mirroring across the corpus")
{
    for (auto& entry : knot_corpus(8, 6, 23)) {
        int s = s_invariant(entry.d);
        CHECK(s_invariant(mirror(entry.d)) == -s);
    }
}

TEST_CASE("s is a move invariant")
{
    Diagram d = trefoil_right();
    int s0 = s_invariant(d);
    MovieScript script = random_reidemeister_movie(d, 2, 5);
    Diagram cur = d;
    for (auto& m : script.moves) {
        switch (m.kind) {
            case MoveKind::R1Pos: cur = r1_insert(cur, m.args[0], true); break;
            case MoveKind::R1Neg: cur = r1_insert(cur, m.args[0], false); break;
            case MoveKind::R2: cur = r2_insert(cur, m.args[0], m.args[1], true); break;
            default: break;
        }
    }
    CHECK(s_invariant(cur) == s0);
}

TEST_CASE("alpha invariants on the unknot are all zero")
{
    for (AlphaOp op : {AlphaOp::bockstein_even, AlphaOp::bockstein_odd}) {
        AlphaInvariants inv = alpha_invariants(unknot_0(), op);
        CHECK(inv.r_plus == 0);
        CHECK(inv.s_plus == 0);
        CHECK(inv.r_minus == 0);
        CHECK(inv.s_minus == 0);
    }
}

TEST_CASE("alpha invariants respect the slice-genus bound on trefoils")
{
    for (AlphaOp op : {AlphaOp::bockstein_even, AlphaOp::bockstein_odd}) {
        AlphaInvariants r = alpha_invariants(trefoil_right(), op);
        CHECK(std::abs(r.r_plus) / 2 <= 1);
        CHECK(std::abs(r.s_plus) / 2 <= 1);
        AlphaInvariants l = alpha_invariants(trefoil_left(), op);
        // mirror antisymmetry holds by construction
        CHECK(l.r_minus == -r.r_plus);
        CHECK(l.s_minus == -r.s_plus);
    }
}

TEST_CASE("alpha level probes: unknot values")
{
    AlphaLevel lv = alpha_level(unknot_0(), AlphaOp::bockstein_even, -1);
    CHECK(lv.half_full);
    CHECK(!lv.full);
    AlphaLevel lv2 = alpha_level(unknot_0(), AlphaOp::bockstein_even, -3);
    CHECK(lv2.full);
    AlphaLevel lv3 = alpha_level(unknot_0(), AlphaOp::bockstein_even, 1);
    CHECK(!lv3.half_full);
}

TEST_CASE("s of the (2,5) torus knot equals twice its slice genus")
{
    Diagram cinq = braid_closure(2, {{1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}});
    REQUIRE(cinq.components() == 1);
    CHECK(s_invariant(cinq) == 4);
    CHECK(s_invariant(mirror(cinq)) == -4);
}
