#include "doctest.h"
#include "khlab/cube.hpp"

#include <random>

using namespace khlab;

TEST_CASE("standard sign on named edges")
{
    // coordinates read left to right: (u_1,u_2) packs u_1 into bit 0
    // (1,1)->(0,1) flips the first coordinate: empty sum
    CHECK(standard_sign(0b11, 0b10) == 0);
    // (1,1)->(1,0) flips the second: u_1 = 1
    CHECK(standard_sign(0b11, 0b01) == 1);
    // (1,0,1)->(1,0,0) flips the third: u_1+u_2 = 1
    CHECK(standard_sign(0b101, 0b001) == 1);
}

TEST_CASE("standard sign has odd parity around every square")
{
    for (int n = 2; n <= 6; ++n)
        for (const Square& s : all_squares(n)) {
            Vertex u = s.hi(), w = s.lo;
            Vertex v1 = w | (1u << s.b1), v2 = w | (1u << s.b2);
            int total = standard_sign(u, v1) + standard_sign(v1, w) + standard_sign(u, v2) + standard_sign(v2, w);
            CHECK(total % 2 == 1);
        }
}

TEST_CASE("face enumeration counts")
{
    CHECK(all_edges(2).size() == 4);
    CHECK(all_squares(2).size() == 1);
    CHECK(all_squares(3).size() == 6);
    for (std::size_t i = 0; i < all_edges(3).size(); ++i)
        CHECK(edge_index(3, all_edges(3)[i]) == static_cast<int>(i));
    for (std::size_t i = 0; i < all_squares(4).size(); ++i)
        CHECK(square_index(4, all_squares(4)[i]) == static_cast<int>(i));
}

TEST_CASE("coboundary identities")
{
    // delta of zero is zero
    Cochain z = Cochain::zero(3, 1);
    Cochain dz = coboundary(z);
    for (char v : dz.val) CHECK(v == 0);
    // delta of the indicator of one edge of the n=2 square is that square
    Cochain e = Cochain::zero(2, 1);
    e.val[0] = 1;
    Cochain de = coboundary(e);
    CHECK(de.val == std::vector<char>{1});
    // delta delta = 0 on random 0-cochains
    std::mt19937 rng(2);
    for (int n = 1; n <= 6; ++n)
        for (int trial = 0; trial < 10; ++trial) {
            Cochain c = Cochain::zero(n, 0);
            for (auto& v : c.val) v = static_cast<char>(rng() & 1);
            if (n < 2) continue;
            Cochain dd = coboundary(coboundary(c));
            for (char v : dd.val) CHECK(v == 0);
        }
}

TEST_CASE("solve_coboundary picks the least solution")
{
    // everything constrained to 1 (additively 0): the zero cochain
    FaceConstraints fc;
    fc.n = 3;
    fc.target.assign(all_squares(3).size(), 0);
    Cochain eps = solve_coboundary(fc);
    for (char v : eps.val) CHECK(v == 0);

    // n=2, the single square constrained to xi: indicator of the least edge
    FaceConstraints fc2;
    fc2.n = 2;
    fc2.target = {1};
    Cochain e2 = solve_coboundary(fc2);
    CHECK(e2.val == std::vector<char>{1, 0, 0, 0});

    // solutions satisfy the constraints they were built from
    std::mt19937 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + static_cast<int>(rng() % 3);
        // build a satisfiable target as the coboundary of a random 1-cochain
        Cochain r = Cochain::zero(n, 1);
        for (auto& v : r.val) v = static_cast<char>(rng() & 1);
        Cochain target = coboundary(r);
        FaceConstraints fc3;
        fc3.n = n;
        fc3.target.assign(target.val.begin(), target.val.end());
        for (auto& t : fc3.target)
            if (rng() % 3 == 0) t = -1;  // free some faces
        Cochain sol = solve_coboundary(fc3);
        Cochain dsol = coboundary(sol);
        for (std::size_t k = 0; k < fc3.target.size(); ++k)
            if (fc3.target[k] >= 0) CHECK(dsol.val[k] == fc3.target[k]);
    }
}
