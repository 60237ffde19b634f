#include "khlab/cube.hpp"

namespace khlab {

std::vector<Vertex> all_vertices(int n)
{
    std::vector<Vertex> out;
    out.reserve(1u << n);
    for (Vertex v = 0; v < (1u << n); ++v) out.push_back(v);
    return out;
}

std::vector<Edge> all_edges(int n)
{
    std::vector<Edge> out;
    for (Vertex v = 0; v < (1u << n); ++v)
        for (int b = 0; b < n; ++b)
            if (!(v >> b & 1)) out.push_back({v, b});
    return out;
}

std::vector<Square> all_squares(int n)
{
    std::vector<Square> out;
    for (Vertex v = 0; v < (1u << n); ++v)
        for (int b1 = 0; b1 < n; ++b1) {
            if (v >> b1 & 1) continue;
            for (int b2 = b1 + 1; b2 < n; ++b2) {
                if (v >> b2 & 1) continue;
                out.push_back({v, b1, b2});
            }
        }
    return out;
}

std::vector<Cube3> all_cubes3(int n)
{
    std::vector<Cube3> out;
    for (Vertex v = 0; v < (1u << n); ++v)
        for (int b1 = 0; b1 < n; ++b1) {
            if (v >> b1 & 1) continue;
            for (int b2 = b1 + 1; b2 < n; ++b2) {
                if (v >> b2 & 1) continue;
                for (int b3 = b2 + 1; b3 < n; ++b3) {
                    if (v >> b3 & 1) continue;
                    out.push_back({v, b1, b2, b3});
                }
            }
        }
    return out;
}

int square_index(int n, const Square& s)
{
    // matches all_squares enumeration
    int idx = 0;
    for (Vertex v = 0; v < s.lo; ++v) {
        int free = n - vweight(v);
        idx += free * (free - 1) / 2;
    }
    int pos = 0;
    bool done = false;
    for (int b1 = 0; b1 < n && !done; ++b1) {
        if (s.lo >> b1 & 1) continue;
        for (int b2 = b1 + 1; b2 < n; ++b2) {
            if (s.lo >> b2 & 1) continue;
            if (b1 == s.b1 && b2 == s.b2) {
                done = true;
                break;
            }
            ++pos;
        }
    }
    KHLAB_CHECK(done, "square not on the cube");
    return idx + pos;
}

Cochain Cochain::zero(int n, int degree)
{
    Cochain c;
    c.n = n;
    c.degree = degree;
    std::size_t count = 0;
    if (degree == 0)
        count = 1u << n;
    else if (degree == 1)
        count = all_edges(n).size();
    else if (degree == 2)
        count = all_squares(n).size();
    else
        KHLAB_CHECK(false, "cochain degree out of range");
    c.val.assign(count, 0);
    return c;
}

Cochain coboundary(const Cochain& c)
{
    KHLAB_CHECK(c.degree == 0 || c.degree == 1, "coboundary degree");
    int n = c.n;
    if (c.degree == 0) {
        Cochain out = Cochain::zero(n, 1);
        auto edges = all_edges(n);
        for (std::size_t i = 0; i < edges.size(); ++i)
            out.val[i] = static_cast<char>(c.val[edges[i].lo] ^ c.val[edges[i].hi()]);
        return out;
    }
    Cochain out = Cochain::zero(n, 2);
    auto squares = all_squares(n);
    for (std::size_t i = 0; i < squares.size(); ++i) {
        const Square& s = squares[i];
        Vertex v1 = s.lo | (1u << s.b1), v2 = s.lo | (1u << s.b2);
        char sum = static_cast<char>(c.val[edge_index(n, {s.lo, s.b1})] ^ c.val[edge_index(n, {s.lo, s.b2})] ^
                                     c.val[edge_index(n, {v1, s.b2})] ^ c.val[edge_index(n, {v2, s.b1})]);
        out.val[i] = sum;
    }
    return out;
}

Cochain solve_coboundary(const FaceConstraints& fc, const std::vector<int>* edge_priority)
{
    int n = fc.n;
    auto edges = all_edges(n);
    auto squares = all_squares(n);
    KHLAB_CHECK(fc.target.size() == squares.size(), "constraint count");
    std::vector<int> rows;
    for (std::size_t i = 0; i < squares.size(); ++i)
        if (fc.target[i] >= 0) rows.push_back(static_cast<int>(i));
    F2Mat A(static_cast<int>(rows.size()), static_cast<int>(edges.size()));
    std::vector<char> b(rows.size(), 0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const Square& s = squares[rows[r]];
        Vertex v1 = s.lo | (1u << s.b1), v2 = s.lo | (1u << s.b2);
        A.set(static_cast<int>(r), edge_index(n, {s.lo, s.b1}), true);
        A.set(static_cast<int>(r), edge_index(n, {s.lo, s.b2}), true);
        A.set(static_cast<int>(r), edge_index(n, {v1, s.b2}), true);
        A.set(static_cast<int>(r), edge_index(n, {v2, s.b1}), true);
        b[r] = fc.target[rows[r]] ? 1 : 0;
    }
    // minimize sum eps_i 2^i: highest-index edges get top priority for being 0
    std::vector<int> order;
    if (edge_priority) {
        order = *edge_priority;
        KHLAB_CHECK(order.size() == edges.size(), "edge priority size");
    }
    else {
        for (std::size_t i = edges.size(); i-- > 0;) order.push_back(static_cast<int>(i));
    }
    auto sol = f2_min_solution(A, b, order);
    KHLAB_CHECK(sol.has_value(), "edge-assignment constraints unsatisfiable");
    Cochain out = Cochain::zero(n, 1);
    out.val = *sol;
    return out;
}

}  // namespace khlab
