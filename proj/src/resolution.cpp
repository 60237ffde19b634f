#include "khlab/resolution.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace khlab {

namespace {

inline int smooth_partner(int slot, int bit)
{
    // 0-resolution pairs (0,1),(2,3); 1-resolution pairs (0,3),(1,2)
    static const int p0[4] = {1, 0, 3, 2};
    static const int p1[4] = {3, 2, 1, 0};
    return bit ? p1[slot] : p0[slot];
}

}  // namespace

Resolution resolve(const Diagram& d, Vertex v)
{
    const int n = d.n();
    Resolution r;
    r.vertex = v;
    r.port_circle.assign(4 * n, -1);

    std::vector<std::vector<int>> circles_ports;
    std::vector<int> min_edge;
    for (int start = 0; start < 4 * n; ++start) {
        if (r.port_circle[start] >= 0) continue;
        int id = static_cast<int>(circles_ports.size());
        std::vector<int> ports;
        int me = INT_MAX;
        int p = start;
        do {
            // smoothing arc first, then travel the edge at the partner port
            int ci = p / 4, slot = p % 4;
            int q = 4 * ci + smooth_partner(slot, (v >> ci) & 1);
            r.port_circle[p] = id;
            r.port_circle[q] = id;
            ports.push_back(p);
            ports.push_back(q);
            int e = d.crossings[q / 4].e[q % 4];
            me = std::min(me, e);
            const auto& oc = d.occ(e);
            Diagram::Occ other = (oc[0].first == q / 4 && oc[0].second == q % 4) ? oc[1] : oc[0];
            p = 4 * other.first + other.second;
        } while (p != start);
        circles_ports.push_back(std::move(ports));
        min_edge.push_back(me);
    }
    // canonical order: ascending min edge, then free loops, basepoint circle last
    int ncirc = static_cast<int>(circles_ports.size());
    std::vector<int> order(ncirc);
    for (int i = 0; i < ncirc; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return min_edge[a] < min_edge[b]; });

    int bp_old = -1;
    if (d.basepoint) {
        const auto& oc = d.occ(*d.basepoint);
        bp_old = r.port_circle[4 * oc[0].first + oc[0].second];
    }

    int total = ncirc + d.free_loops;
    std::vector<int> newid(ncirc, -1);
    {
        int next = 0;
        for (int i : order) {
            if (i == bp_old) continue;
            newid[i] = next++;
        }
        if (bp_old >= 0) newid[bp_old] = total - 1;
    }
    // free loops take ids after edge-bearing circles (shifted down by one if the
    // basepoint circle was moved past them); a based loop goes last itself
    r.ncircles = total;
    r.circle_ports.assign(total, {});
    r.circle_edges.assign(total, {});
    r.circle_min_edge.assign(total, INT_MAX);
    for (int i = 0; i < ncirc; ++i) {
        int id = newid[i];
        r.circle_ports[id] = circles_ports[i];
        r.circle_min_edge[id] = min_edge[i];
        std::vector<int> es;
        for (std::size_t k = 1; k < circles_ports[i].size(); k += 2) {
            int q = circles_ports[i][k];
            es.push_back(d.crossings[q / 4].e[q % 4]);
        }
        std::sort(es.begin(), es.end());
        r.circle_edges[id] = std::move(es);
    }
    if (d.free_loops > 0) {
        // ids for loops: fill the unused slots in declaration order; when the
        // diagram is based at a loop, that loop becomes the last id
        std::vector<int> unused;
        std::vector<char> taken(total, 0);
        for (int i = 0; i < ncirc; ++i) taken[newid[i]] = 1;
        for (int id = 0; id < total; ++id)
            if (!taken[id]) unused.push_back(id);
        KHLAB_CHECK(static_cast<int>(unused.size()) == d.free_loops, "loop id bookkeeping");
        if (d.based_loop) {
            // loop 0 gets the last unused id
            std::rotate(unused.begin(), unused.end() - 1, unused.end());
        }
        (void)unused;  // ids are positional; loops carry no ports or edges
    }
    for (int i = 0; i < 4 * n; ++i) r.port_circle[i] = newid[r.port_circle[i]];

    // directed surgery arcs
    r.arcs.assign(n, {});
    for (int ci = 0; ci < n; ++ci) {
        int bit = (v >> ci) & 1;
        // arc endpoints sit on the two smoothing arcs; "true" puts the tail on
        // the arc through slot a for the 0-resolution and on the arc through
        // slots (b,c) for the 1-resolution
        int tail_slot, head_slot;
        if (bit == 0) {
            tail_slot = 0;   // arc (a,b)
            head_slot = 2;   // arc (c,d)
        }
        else {
            tail_slot = 1;   // arc (b,c)
            head_slot = 0;   // arc (a,d)
        }
        if (!d.arrows[ci]) std::swap(tail_slot, head_slot);
        Resolution::Arc arc;
        arc.tail_circle = r.port_circle[4 * ci + tail_slot];
        arc.head_circle = r.port_circle[4 * ci + head_slot];
        auto pos_of = [&](int slot) {
            int port = 4 * ci + slot;
            const auto& ps = r.circle_ports[r.port_circle[port]];
            for (std::size_t k = 0; k < ps.size(); ++k)
                if (ps[k] == port) return static_cast<int>(k);
            KHLAB_CHECK(false, "port not on its circle");
            return 0;
        };
        arc.tail_pos = pos_of(tail_slot);
        arc.head_pos = pos_of(head_slot);
        r.arcs[ci] = arc;
    }
    return r;
}

std::string resolution_debug(const Diagram& d, const Resolution& r)
{
    std::ostringstream out;
    for (int id = 0; id < r.ncircles; ++id) {
        out << "circle " << id << ":";
        if (r.circle_ports[id].empty())
            out << " (free loop)";
        else
            for (std::size_t k = 1; k < r.circle_ports[id].size(); k += 2) {
                int q = r.circle_ports[id][k];
                out << " e" << d.crossings[q / 4].e[q % 4];
            }
        out << "\n";
    }
    for (int ci = 0; ci < static_cast<int>(r.arcs.size()); ++ci)
        out << "arc " << ci << ": c" << r.arcs[ci].tail_circle << "@" << r.arcs[ci].tail_pos << " -> c"
            << r.arcs[ci].head_circle << "@" << r.arcs[ci].head_pos << "\n";
    return out.str();
}

std::vector<Resolution> all_resolutions(const Diagram& d, int jobs)
{
    std::vector<Resolution> out(1u << d.n());
    parallel_for(out.size(), jobs, [&](std::size_t v) { out[v] = resolve(d, static_cast<Vertex>(v)); });
    return out;
}

EdgeCob edge_cobordism(const Diagram& d, const Resolution& lo, const Resolution& up, int bit)
{
    (void)d;
    EdgeCob cob;
    // circles through the resolved crossing change; all others keep their ports
    std::map<std::vector<int>, int> up_by_ports;
    std::vector<char> up_affected(up.ncircles, 0), lo_affected(lo.ncircles, 0);
    for (int s = 0; s < 4; ++s) {
        lo_affected[lo.port_circle[4 * bit + s]] = 1;
        up_affected[up.port_circle[4 * bit + s]] = 1;
    }
    for (int id = 0; id < up.ncircles; ++id)
        if (!up_affected[id]) {
            std::vector<int> key = up.circle_ports[id];
            std::sort(key.begin(), key.end());
            up_by_ports[key] = id;
        }
    cob.lo_to_up.to.assign(lo.ncircles, -1);
    int free_seen = 0;
    std::vector<int> lo_aff, up_aff;
    for (int id = 0; id < lo.ncircles; ++id) {
        if (lo_affected[id]) {
            lo_aff.push_back(id);
            continue;
        }
        if (lo.circle_ports[id].empty()) {
            // free loops: match by position among the unaffected loops
            int count = free_seen++;
            int seen = 0, match = -1;
            for (int uid = 0; uid < up.ncircles; ++uid)
                if (!up_affected[uid] && up.circle_ports[uid].empty()) {
                    if (seen == count) {
                        match = uid;
                        break;
                    }
                    ++seen;
                }
            KHLAB_CHECK(match >= 0, "free loop lost across an edge");
            cob.lo_to_up.to[id] = match;
            continue;
        }
        std::vector<int> key = lo.circle_ports[id];
        std::sort(key.begin(), key.end());
        auto it = up_by_ports.find(key);
        KHLAB_CHECK(it != up_by_ports.end(), "circle mismatch across an edge");
        cob.lo_to_up.to[id] = it->second;
    }
    for (int id = 0; id < up.ncircles; ++id)
        if (up_affected[id]) up_aff.push_back(id);

    if (lo_aff.size() == 2 && up_aff.size() == 1) {
        cob.merge = true;
        cob.m_a1 = lo_aff[0];
        cob.m_a2 = lo_aff[1];
        cob.m_a = up_aff[0];
    }
    else if (lo_aff.size() == 1 && up_aff.size() == 2) {
        cob.merge = false;
        cob.s_a = lo_aff[0];
        const Resolution::Arc& arc = up.arcs[bit];
        KHLAB_CHECK(arc.tail_circle != arc.head_circle, "split arc endpoints coincide");
        cob.s_a1 = arc.tail_circle;
        cob.s_a2 = arc.head_circle;
        KHLAB_CHECK((cob.s_a1 == up_aff[0] && cob.s_a2 == up_aff[1]) ||
                        (cob.s_a1 == up_aff[1] && cob.s_a2 == up_aff[0]),
                    "split circles disagree with the surgery arc");
    }
    else
        throw internal_error("edge is neither a merge nor a split (non-planar code?)");
    return cob;
}

std::vector<Mono> khovanov_generators(const Resolution& r)
{
    KHLAB_CHECK(r.ncircles < 63, "too many circles");
    std::vector<Mono> out;
    out.reserve(1ULL << r.ncircles);
    for (Mono m = 0; m < (1ULL << r.ncircles); ++m) out.push_back(m);
    return out;
}

SparseZu edge_block_raw(const Diagram& d, const Resolution& lo, const Resolution& up, int bit, Ring ring)
{
    EdgeCob cob = edge_cobordism(d, lo, up, bit);
    SparseZu out;
    out.rows = 1 << up.ncircles;
    out.cols = 1 << lo.ncircles;
    for (Mono m = 0; m < (1ULL << lo.ncircles); ++m) {
        AlgebraElement img = cob.merge ? merge_monomial(m, Zu::one(), cob.m_a1, cob.m_a2, cob.m_a, cob.lo_to_up)
                                       : split_monomial(m, Zu::one(), cob.s_a, cob.s_a1, cob.s_a2, cob.lo_to_up);
        for (auto& [mono, c] : img.terms) out.add(static_cast<int>(mono), static_cast<int>(m), c.fold(ring));
    }
    return out;
}

FaceType classify_face(const Diagram& d, const std::vector<Resolution>& res, const Square& s)
{
    Vertex w = s.lo, u = s.hi();
    Vertex v1 = w | (1u << s.b1), v2 = w | (1u << s.b2);
    // cochain-direction composites w -> v -> u
    SparseZu via1 = edge_block_raw(d, res[v1], res[u], s.b2) * edge_block_raw(d, res[w], res[v1], s.b1);
    SparseZu via2 = edge_block_raw(d, res[v2], res[u], s.b1) * edge_block_raw(d, res[w], res[v2], s.b2);
    bool plain = via1 == via2;
    bool twisted = via1 == via2.times(Zu::xi());
    if (plain && twisted) return FaceType::XY;
    if (plain) return FaceType::C;
    if (twisted) return FaceType::A;
    throw internal_error("square commutes neither plainly nor after xi");
}

FaceConstraints psi_constraints(const Diagram& d, const std::vector<Resolution>& res)
{
    FaceConstraints fc;
    fc.n = d.n();
    auto squares = all_squares(fc.n);
    fc.target.assign(squares.size(), -1);
    for (std::size_t i = 0; i < squares.size(); ++i) {
        switch (classify_face(d, res, squares[i])) {
            case FaceType::A: fc.target[i] = 1; break;
            case FaceType::C: fc.target[i] = 0; break;
            case FaceType::XY: fc.target[i] = -1; break;
        }
    }
    return fc;
}

}  // namespace khlab
