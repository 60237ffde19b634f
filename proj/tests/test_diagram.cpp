#include "doctest.h"
#include "khlab/diagram.hpp"

#include <random>

using namespace khlab;

namespace {
const char* kHopf = "PD[X(1,4,2,3),X(3,2,4,1)]";
const char* kTrefoilL = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]";  // all negative
}  // namespace

TEST_CASE("hopf link parses with two crossings")
{
    Diagram d = parse_pd(kHopf);
    CHECK(d.n() == 2);
    CHECK(d.edges == std::vector<int>{1, 2, 3, 4});
    CHECK(d.n_plus + d.n_minus == 2);
    CHECK(d.components() == 2);
}

TEST_CASE("basepoint annotation and kink codes")
{
    Diagram d = parse_pd("PD[X(1,1,2,2)] bp=1");
    CHECK(d.n() == 1);
    CHECK(d.basepoint == 1);
    CHECK(d.components() == 1);
    // edge labels must occur exactly twice
    CHECK_THROWS_AS(parse_pd("PD[X(1,4,2,3)] bp=1"), input_error);
}

TEST_CASE("doubled identical crossings have no coherent orientation")
{
    CHECK_THROWS_AS(parse_pd("PD[X(1,4,2,3),X(1,4,2,3)]"), input_error);
}

TEST_CASE("rolfsen trefoil code is the all-negative (left) trefoil")
{
    Diagram d = parse_pd(kTrefoilL);
    CHECK(d.n_minus == 3);
    CHECK(d.n_plus == 0);
    CHECK(d.components() == 1);
}

TEST_CASE("kink chirality from orientations")
{
    // a strand looping over itself: X(g,g',h,h) is positive, X(g,h,h,g') negative
    Diagram pos = parse_pd("PD[X(1,1,2,2)]");
    CHECK(pos.n_plus == 1);
    Diagram neg = parse_pd("PD[X(1,2,2,1)]");
    CHECK(neg.n_minus == 1);
}

TEST_CASE("mirror flips all signs and is an involution")
{
    Diagram d = parse_pd(kTrefoilL);
    Diagram m = mirror(d);
    CHECK(m.n_plus == 3);
    CHECK(m.n_minus == 0);
    Diagram mm = mirror(m);
    CHECK(serialize(mm) == serialize(d));
    // no crossings: mirror is the identity
    Diagram u = parse_pd("U");
    CHECK(serialize(mirror(u)) == serialize(u));
}

TEST_CASE("serialize then parse is the identity on canonical forms")
{
    for (const char* s : {kHopf, kTrefoilL, "PD[X(1,1,2,2)] bp=1", "U", "U* U",
                          "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)] arrows=TFT bp=3"}) {
        Diagram d = parse_pd(s);
        CHECK(serialize(parse_pd(serialize(d))) == serialize(d));
    }
}

TEST_CASE("set_crossing_orientations replaces arrows only")
{
    Diagram d = parse_pd(kTrefoilL);
    Diagram d2 = set_crossing_orientations(d, {0, 1, 1});
    CHECK(d2.arrows == std::vector<char>{0, 1, 1});
    CHECK(d2.n_minus == d.n_minus);
    CHECK_THROWS_AS(set_crossing_orientations(d, {1, 1}), input_error);
}

TEST_CASE("crossing signs survive cyclic edge relabeling")
{
    Diagram d = parse_pd(kTrefoilL);
    // rotate labels along the knot: e -> e+1 mod 6 (labels 1..6)
    std::map<int, int> rot;
    for (int e = 1; e <= 6; ++e) rot[e] = e % 6 + 1;
    Diagram r = relabel_edges(d, rot);
    CHECK(r.n_minus == d.n_minus);
    CHECK(r.n_plus == d.n_plus);
}

TEST_CASE("malformed input is rejected")
{
    CHECK_THROWS_AS(parse_pd("PD[X(1,2,3)]"), input_error);
    CHECK_THROWS_AS(parse_pd("PD[Y(1,2,3,4)]"), input_error);
    CHECK_THROWS_AS(parse_pd(""), input_error);
    CHECK_THROWS_AS(parse_pd("PD[X(1,1,2,2)] bp=9"), input_error);
    CHECK_THROWS_AS(parse_pd("PD[X(1,1,2,2)] arrows=TT"), input_error);
}

TEST_CASE("parser survives fuzzed garbage with clean errors")
{
    std::mt19937 rng(77);
    const std::string alphabet = "PDXU[](),=bparrows TF0123456789*";
    for (int trial = 0; trial < 3000; ++trial) {
        std::string s;
        int len = static_cast<int>(rng() % 40);
        for (int k = 0; k < len; ++k) s.push_back(alphabet[rng() % alphabet.size()]);
        try {
            Diagram d = parse_pd(s);
            // accepted strings must round-trip
            CHECK(serialize(parse_pd(serialize(d))) == serialize(d));
        }
        catch (const input_error&) {
        }
        catch (const std::exception&) {
            // stoi overflow and friends surface as input-shaped failures too
        }
    }
}
