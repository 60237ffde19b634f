#include "doctest.h"
#include "khlab/complexes.hpp"
#include "khlab/homology.hpp"
#include "khlab/jones.hpp"

using namespace khlab;

namespace {
const char* kHopf = "PD[X(1,4,2,3),X(3,2,4,1)]";       // negative Hopf link
const char* kTrefoilL = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]";
const char* kUnknot2 = "PD[X(2,4,3,1),X(3,4,2,1)]";    // clasp unknot

Laurent euler_of(const Homology& h)
{
    Laurent out;
    for (auto& [e, v] : h.euler()) out.add(e, v);
    return out;
}
}  // namespace

TEST_CASE("crossingless unknot: generators at (0,±1), zero differential")
{
    ChainCx c = build_complex(parse_pd("U"), Ring::even);
    CHECK(c.size() == 2);
    CHECK(c.deg[0] == Bideg{0, -1});
    CHECK(c.deg[1] == Bideg{0, 1});
    for (auto& col : c.dcol) CHECK(col.empty());
}

TEST_CASE("positive kink unknot has homology Z at (0,1) and (0,-1)")
{
    for (Ring r : {Ring::even, Ring::odd}) {
        ChainCx c = build_complex(parse_pd("PD[X(1,1,2,2)]"), r);
        c.check_degrees();
        c.check_d_squared();
        Homology h(c);
        CHECK(h.group(0, 1).iso(HomGroup{1, {}, {}}));
        CHECK(h.group(0, -1).iso(HomGroup{1, {}, {}}));
        CHECK(h.support() == std::vector<Bideg>{{0, -1}, {0, 1}});
    }
}

TEST_CASE("negative kink unknot agrees after normalization")
{
    ChainCx c = build_complex(parse_pd("PD[X(1,2,2,1)]"), Ring::odd);
    Homology h(c);
    CHECK(h.support() == std::vector<Bideg>{{0, -1}, {0, 1}});
}

TEST_CASE("d squared vanishes for all rings on small diagrams")
{
    for (const char* s : {kHopf, kTrefoilL, kUnknot2, "PD[X(2,4,3,1),X(3,4,6,5),X(6,2,1,5)]"}) {
        Diagram d = parse_pd(s);
        for (Ring r : {Ring::unified, Ring::even, Ring::odd, Ring::mod2}) {
            ChainCx c = build_complex(d, r);
            c.check_degrees();
            c.check_d_squared();
        }
    }
}

TEST_CASE("left trefoil: classical integral homology with its 2-torsion")
{
    ChainCx c = build_complex(parse_pd(kTrefoilL), Ring::even);
    Homology h(c);
    CHECK(h.group(0, -1).iso(HomGroup{1, {}, {}}));
    CHECK(h.group(0, -3).iso(HomGroup{1, {}, {}}));
    CHECK(h.group(-2, -5).iso(HomGroup{1, {}, {}}));
    CHECK(h.group(-3, -9).iso(HomGroup{1, {}, {}}));
    HomGroup tor = h.group(-2, -7);
    CHECK(tor.free_rank == 0);
    REQUIRE(tor.torsion.size() == 1);
    CHECK(tor.torsion[0].to_ll() == 2);
    // odd homology of the trefoil is torsion-free
    Homology ho(build_complex(parse_pd(kTrefoilL), Ring::odd));
    for (auto [i, j] : ho.support()) CHECK(ho.group(i, j).torsion.empty());
}

TEST_CASE("graded euler characteristic equals the bracket oracle")
{
    for (const char* s : {"U", "U U", kHopf, kTrefoilL, kUnknot2, "PD[X(1,1,2,2)]"}) {
        Diagram d = parse_pd(s);
        Homology h(build_complex(d, Ring::even));
        CHECK(euler_of(h) == jones_bracket(d));
    }
}

TEST_CASE("mod-2 complexes of even and odd theories coincide entrywise")
{
    for (const char* s : {kHopf, kTrefoilL, kUnknot2}) {
        Diagram d = parse_pd(s);
        KhCube cu = build_cube(d, Ring::unified);
        KhCube ce = build_cube(d, Ring::even, 1, &cu.eps);
        KhCube co = build_cube(d, Ring::odd, 1, &cu.eps);
        ChainCx e = cochain_complex(ce), o = cochain_complex(co);
        REQUIRE(e.size() == o.size());
        for (int g = 0; g < e.size(); ++g) {
            std::map<int, int> me, mo;
            for (auto& [t, v] : e.dcol[g]) me[t] = ((v.a % 2) + 2) % 2;
            for (auto& [t, v] : o.dcol[g]) mo[t] = ((v.a % 2) + 2) % 2;
            CHECK(me == mo);
        }
    }
}

TEST_CASE("unified pullback identity")
{
    for (const char* s : {"U", kHopf, kTrefoilL}) {
        CheckReport rep = unified_pullback_check(parse_pd(s));
        CHECK(rep.pass);
    }
}

TEST_CASE("short exact sequences in both orders")
{
    for (const char* s : {"U", kHopf, kTrefoilL}) {
        CHECK(ses_even_unified_odd(parse_pd(s), SesVariant::e_u_o).pass);
        CHECK(ses_even_unified_odd(parse_pd(s), SesVariant::o_u_e).pass);
    }
}

TEST_CASE("reduced complexes: unknot value and exact sequence")
{
    Diagram d = parse_pd("PD[X(1,1,2,2)] bp=1");
    KhCube cube = build_cube(d, Ring::odd);
    ChainCx full = cochain_complex(cube);
    ChainCx red = reduced_subcomplex(full, cube);
    Homology h(red);
    CHECK(h.support() == std::vector<Bideg>{{0, 0}});
    CHECK(h.group(0, 0).iso(HomGroup{1, {}, {}}));
    CHECK(red.size() * 2 == full.size());
    CHECK(reduced_ses_check(d, Ring::even).pass);
    CHECK(reduced_ses_check(d, Ring::odd).pass);

    // based crossingless unknot
    Diagram u = parse_pd("U*");
    KhCube cu = build_cube(u, Ring::odd);
    ChainCx ru = reduced_subcomplex(cochain_complex(cu), cu);
    CHECK(ru.size() == 1);
    CHECK(ru.deg[0] == Bideg{0, 0});
}

TEST_CASE("odd splitting across the basepoint")
{
    CHECK(odd_splitting_check(parse_pd("U*")).pass);
    CHECK(odd_splitting_check(parse_pd("PD[X(1,1,2,2)] bp=1")).pass);
    CHECK(odd_splitting_check(parse_pd("PD[X(1,4,2,3),X(3,2,4,1)] bp=1")).pass);
    CHECK(odd_splitting_check(parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)] bp=1")).pass);
}

TEST_CASE("homology is invariant under auxiliary choices")
{
    Diagram d = parse_pd(kTrefoilL);
    Homology base(build_complex(d, Ring::odd));
    auto same = [&](const Homology& other) {
        auto sa = base.support(), sb = other.support();
        REQUIRE(sa == sb);
        for (auto [i, j] : sa) CHECK(base.group(i, j).iso(other.group(i, j)));
    };
    // crossing reorder
    same(Homology(build_complex(reorder_crossings(d, {1, 2, 0}), Ring::odd)));
    // arrow flips
    same(Homology(build_complex(set_crossing_orientations(d, {0, 1, 0}), Ring::odd)));
    // alternate edge assignment: permute the solver's variable priority
    auto edges = all_edges(3);
    std::vector<int> prio;
    for (std::size_t k = 0; k < edges.size(); ++k) prio.push_back(static_cast<int>(k));
    KhCube cube = build_cube(d, Ring::odd, 1, nullptr, &prio);
    same(Homology(cochain_complex(cube)));
}

TEST_CASE("unified doubled form has the expected xi-action shape")
{
    Diagram d = parse_pd(kHopf);
    KhCube cu = build_cube(d, Ring::unified);
    ChainCx dz = doubled_z_form(cu);
    ChainCx u = cochain_complex(cu);
    CHECK(dz.size() == 2 * u.size());
    dz.check_d_squared();
    dz.check_degrees();
}
