#include "doctest.h"
#include "khlab/resolution.hpp"

using namespace khlab;

namespace {
const char* kHopf = "PD[X(1,4,2,3),X(3,2,4,1)]";
const char* kTrefoilL = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]";
}  // namespace

TEST_CASE("free loop resolves to one circle")
{
    Diagram u = parse_pd("U");
    Resolution r = resolve(u, 0);
    CHECK(r.ncircles == 1);
    CHECK(r.arcs.empty());
}

TEST_CASE("hopf link circle counts match hand tracing")
{
    Diagram d = parse_pd(kHopf);
    CHECK(resolve(d, 0b00).ncircles == 2);
    CHECK(resolve(d, 0b01).ncircles == 1);
    CHECK(resolve(d, 0b10).ncircles == 1);
    CHECK(resolve(d, 0b11).ncircles == 2);
}

TEST_CASE("circle traversal lengths add up to twice the edge count")
{
    for (const char* s : {kHopf, kTrefoilL, "PD[X(1,1,2,2)]", "PD[X(1,2,2,1)] U"}) {
        Diagram d = parse_pd(s);
        for (Vertex v = 0; v < (1u << d.n()); ++v) {
            Resolution r = resolve(d, v);
            std::size_t total = 0;
            for (auto& es : r.circle_edges) total += es.size();
            CHECK(total == d.edges.size());
        }
    }
}

TEST_CASE("resolve is crossing-order independent up to relabeling")
{
    Diagram d = parse_pd(kTrefoilL);
    Diagram p = reorder_crossings(d, {2, 0, 1});
    for (Vertex v = 0; v < 8; ++v) {
        // vertex must be permuted the same way: bit k of v' is bit perm[k] of v
        Vertex vp = 0;
        std::vector<int> perm{2, 0, 1};
        for (int k = 0; k < 3; ++k)
            if (v >> perm[k] & 1) vp |= 1u << k;
        Resolution a = resolve(d, v), b = resolve(p, vp);
        REQUIRE(a.ncircles == b.ncircles);
        for (int c = 0; c < a.ncircles; ++c) CHECK(a.circle_edges[c] == b.circle_edges[c]);
    }
}

TEST_CASE("edge cobordisms are merges or splits with natural relabeling")
{
    Diagram d = parse_pd(kHopf);
    Resolution lo = resolve(d, 0b00), up = resolve(d, 0b01);
    EdgeCob cob = edge_cobordism(d, lo, up, 0);
    CHECK(cob.merge);  // 2 circles -> 1
    Resolution up2 = resolve(d, 0b11);
    EdgeCob cob2 = edge_cobordism(d, resolve(d, 0b01), up2, 1);
    CHECK(!cob2.merge);  // 1 circle -> 2
    CHECK(cob2.s_a1 != cob2.s_a2);
}

TEST_CASE("edge matrices: merge and split shapes and unit entries")
{
    Diagram d = parse_pd(kHopf);
    Resolution lo = resolve(d, 0b00), up = resolve(d, 0b01);
    SparseZu blk = edge_block_raw(d, lo, up, 0);
    CHECK(blk.cols == 4);
    CHECK(blk.rows == 2);
    for (auto& [rc, v] : blk.v) {
        bool unit = v == Zu::one() || v == Zu::xi() || v == -Zu::one() || v == -Zu::xi();
        CHECK(unit);
    }
}

TEST_CASE("face classification on small diagrams")
{
    // Hopf link: the single square is not of ladybug type
    Diagram hopf = parse_pd(kHopf);
    auto res = all_resolutions(hopf);
    FaceType t = classify_face(hopf, res, {0, 0, 1});
    CHECK(t != FaceType::XY);
    FaceConstraints fc = psi_constraints(hopf, res);
    CHECK(fc.target.size() == 1);
    CHECK(fc.target[0] >= 0);  // constrained

    // trefoil: every square resolves to a definite type
    Diagram tre = parse_pd(kTrefoilL);
    auto rtre = all_resolutions(tre);
    int count = 0;
    for (const Square& s : all_squares(3)) {
        classify_face(tre, rtre, s);  // must not throw
        ++count;
    }
    CHECK(count == 6);
}

TEST_CASE("hopf edge assignment verified against exhaustive search")
{
    Diagram hopf = parse_pd(kHopf);
    auto res = all_resolutions(hopf);
    FaceConstraints fc = psi_constraints(hopf, res);
    Cochain eps = solve_coboundary(fc);
    Cochain d_eps = coboundary(eps);
    bool some_valid = false;
    for (int mask = 0; mask < 16; ++mask) {
        Cochain cand = Cochain::zero(2, 1);
        for (int k = 0; k < 4; ++k) cand.val[k] = static_cast<char>(mask >> k & 1);
        Cochain dc = coboundary(cand);
        bool ok = true;
        for (std::size_t f = 0; f < fc.target.size(); ++f)
            if (fc.target[f] >= 0 && dc.val[f] != fc.target[f]) ok = false;
        if (ok) some_valid = true;
    }
    CHECK(some_valid);
    for (std::size_t f = 0; f < fc.target.size(); ++f)
        if (fc.target[f] >= 0) CHECK(d_eps.val[f] == fc.target[f]);
}

TEST_CASE("ladybug squares: both composites vanish at xi=-1")
{
    // the 2-crossing unknot (a clasp of a strand with itself) carries the
    // one-circle -> one-circle square where the matching freedom lives
    Diagram d = parse_pd("PD[X(2,4,3,1),X(3,4,2,1)]");
    auto res = all_resolutions(d);
    CHECK(res[0b00].ncircles == 1);
    CHECK(res[0b11].ncircles == 1);
    REQUIRE(classify_face(d, res, {0, 0, 1}) == FaceType::XY);
    SparseZu via1 = edge_block_raw(d, res[0b01], res[0b11], 1) * edge_block_raw(d, res[0b00], res[0b01], 0);
    SparseZu via2 = edge_block_raw(d, res[0b10], res[0b11], 0) * edge_block_raw(d, res[0b00], res[0b10], 1);
    CHECK(!via1.v.empty());
    for (auto& [rc, v] : via1.v) CHECK(v.at_minus1() == 0);
    for (auto& [rc, v] : via2.v) CHECK(v.at_minus1() == 0);
    // a free face makes it into the constraint system
    FaceConstraints fc = psi_constraints(d, res);
    CHECK(fc.target[0] == -1);

    // a 3-crossing diagram containing the same clasp still has a free face
    Diagram d3 = parse_pd("PD[X(2,4,3,1),X(3,4,6,5),X(6,2,1,5)]");
    auto res3 = all_resolutions(d3);
    FaceConstraints fc3 = psi_constraints(d3, res3);
    bool has_free = false;
    for (int t : fc3.target) has_free = has_free || t < 0;
    CHECK(has_free);
}

TEST_CASE("debug emitter lists circles and arcs")
{
    Diagram d = parse_pd(kHopf);
    Resolution r = resolve(d, 0);
    std::string s = resolution_debug(d, r);
    CHECK(s.find("circle 0:") != std::string::npos);
    CHECK(s.find("arc 1:") != std::string::npos);
}
