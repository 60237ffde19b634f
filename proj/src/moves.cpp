#include "khlab/moves.hpp"

#include <algorithm>
#include <sstream>

namespace khlab {

// ---- totalization-side complex --------------------------------------------

std::shared_ptr<ChainCx> tot_complex(const KhCube& cube)
{
    auto c = std::make_shared<ChainCx>();
    c->ring = cube.ring;
    std::map<std::pair<Vertex, Mono>, int> index;
    for (Vertex v = 0; v < (1u << cube.n); ++v)
        for (Mono m = 0; m < (1ULL << cube.res[v].ncircles); ++m) {
            index[{v, m}] = c->size();
            c->gens.push_back({v, m, 0});
            c->deg.push_back({cube.d.n_minus - vweight(v), cube.j_of(v, m)});
        }
    c->dcol.assign(c->gens.size(), {});
    for (auto& [e, blk] : cube.blocks) {
        int sgn = standard_sign(e.hi(), e.lo);
        for (auto& [rc, val] : blk.v) {
            Zu x = (sgn ? -val : val).fold(cube.ring);
            if (x.is_zero()) continue;
            int col = index.at({e.hi(), static_cast<Mono>(rc.first)});
            int row = index.at({e.lo, static_cast<Mono>(rc.second)});
            c->dcol[col].emplace_back(row, x);
        }
    }
    c->sort_canonical();
    return c;
}

// ---- eliminator ------------------------------------------------------------

Eliminator::Eliminator(const ChainCx& c) : orig_(std::make_shared<ChainCx>(c))
{
    int n = orig_->size();
    dead_.assign(n, 0);
    cols_.assign(n, {});
    rows_.assign(n, {});
    pi_rows_.assign(n, {});
    iota_cols_.assign(n, {});
    for (int g = 0; g < n; ++g) {
        for (auto& [t, v] : orig_->dcol[g]) {
            cols_[g][t] = v;
            rows_[t][g] = v;
        }
        pi_rows_[g][g] = Zu(1, 0);
        iota_cols_[g][g] = Zu(1, 0);
    }
}

int Eliminator::index_of(const GenRef& g, const Bideg& dg) const
{
    int k = orig_->find(g, dg);
    KHLAB_CHECK(k >= 0, "no such generator");
    return k;
}

bool Eliminator::alive(const GenRef& g, const Bideg& dg) const
{
    return !dead_[index_of(g, dg)];
}

Zu Eliminator::current_entry(const GenRef& g, const Bideg& dg, const GenRef& h, const Bideg& dh) const
{
    int gi = index_of(g, dg), hi = index_of(h, dh);
    auto it = cols_[gi].find(hi);
    return it == cols_[gi].end() ? Zu() : it->second;
}

void Eliminator::cancel(const GenRef& g, const Bideg& dg, const GenRef& h, const Bideg& dh)
{
    cancel_indices(index_of(g, dg), index_of(h, dh));
}

void Eliminator::cancel_indices(int g, int h)
{
    KHLAB_CHECK(!dead_[g] && !dead_[h], "cancelling a dead generator");
    auto it = cols_[g].find(h);
    KHLAB_CHECK(it != cols_[g].end(), "cancelled pair has no entry");
    Zu alpha = it->second;
    KHLAB_CHECK(alpha.is_unit(), "cancelled entry is not a unit");
    Zu ainv = alpha.inv_unit();

    // snapshot the strips
    std::vector<std::pair<int, Zu>> row_h(rows_[h].begin(), rows_[h].end());   // entries x -> h
    std::vector<std::pair<int, Zu>> col_g(cols_[g].begin(), cols_[g].end());   // entries g -> y
    // differential update: d'[y][x] -= d[y][g] ainv d[h][x]
    for (auto& [x, bx] : row_h) {
        if (x == g) continue;
        for (auto& [y, gy] : col_g) {
            if (y == h) continue;
            Zu delta = fold(Zu() - gy * ainv * bx);
            if (delta.is_zero()) continue;
            Zu& slot = cols_[x][y];
            slot = fold(slot + delta);
            if (slot.is_zero()) {
                cols_[x].erase(y);
                rows_[y].erase(x);
            }
            else
                rows_[y][x] = slot;
        }
    }
    // witness updates (pi(h) = -ainv * gamma, iota correction through g)
    std::map<int, Zu> pih = pi_rows_[h];
    for (auto& [y, gy] : col_g) {
        if (y == h) continue;
        Zu coef = fold(Zu() - ainv * gy);
        for (auto& [o, v] : pih) {
            Zu& slot = pi_rows_[y][o];
            slot = fold(slot + coef * v);
            if (slot.is_zero()) pi_rows_[y].erase(o);
        }
    }
    std::map<int, Zu> iog = iota_cols_[g];
    for (auto& [x, bx] : row_h) {
        if (x == g) continue;
        Zu coef = fold(Zu() - ainv * bx);
        for (auto& [o, v] : iog) {
            Zu& slot = iota_cols_[x][o];
            slot = fold(slot + coef * v);
            if (slot.is_zero()) iota_cols_[x].erase(o);
        }
    }
    // retire the pair
    for (auto& [x, bx] : row_h) cols_[x].erase(h);
    for (auto& [y, gy] : col_g) rows_[y].erase(g);
    for (auto& [t, v] : cols_[h]) rows_[t].erase(h);
    for (auto& [s, v] : rows_[g]) cols_[s].erase(g);
    cols_[g].clear();
    cols_[h].clear();
    rows_[g].clear();
    rows_[h].clear();
    pi_rows_[g].clear();
    pi_rows_[h].clear();
    iota_cols_[g].clear();
    iota_cols_[h].clear();
    dead_[g] = dead_[h] = 1;
    ++pairs_;
}

void Eliminator::reduce_fully()
{
    bool progress = true;
    while (progress) {
        progress = false;
        for (int g = 0; g < orig_->size() && !progress; ++g) {
            if (dead_[g]) continue;
            for (auto& [h, v] : cols_[g]) {
                if (v.is_unit()) {
                    cancel_indices(g, h);
                    progress = true;
                    break;
                }
            }
        }
    }
}

Eliminator::Result Eliminator::finish() const
{
    Result out;
    out.original = orig_;
    auto red = std::make_shared<ChainCx>();
    red->ring = orig_->ring;
    std::vector<int> newpos(orig_->size(), -1);
    for (int g = 0; g < orig_->size(); ++g) {
        if (dead_[g]) continue;
        newpos[g] = red->size();
        red->gens.push_back(orig_->gens[g]);
        red->deg.push_back(orig_->deg[g]);
    }
    red->dcol.assign(red->gens.size(), {});
    for (int g = 0; g < orig_->size(); ++g) {
        if (newpos[g] < 0) continue;
        for (auto& [t, v] : cols_[g]) red->dcol[newpos[g]].emplace_back(newpos[t], v);
    }
    // keep the original generator order (already canonical within survivors)
    std::map<Bideg, std::pair<int, int>> ranges;
    for (int k = 0; k < red->size(); ++k) {
        auto [it, fresh] = ranges.emplace(red->deg[k], std::make_pair(k, k + 1));
        if (!fresh) it->second.second = k + 1;
    }
    red->ranges = std::move(ranges);
    out.reduced = red;

    out.projection.src = out.original.get();
    out.projection.dst = red.get();
    out.projection.cols.assign(orig_->size(), {});
    for (int y = 0; y < orig_->size(); ++y) {
        if (dead_[y]) continue;
        for (auto& [o, v] : pi_rows_[y]) out.projection.cols[o].emplace_back(newpos[y], v);
    }
    out.inclusion.src = red.get();
    out.inclusion.dst = out.original.get();
    out.inclusion.cols.assign(red->size(), {});
    for (int b = 0; b < orig_->size(); ++b) {
        if (dead_[b]) continue;
        for (auto& [o, v] : iota_cols_[b]) out.inclusion.cols[newpos[b]].emplace_back(o, v);
    }
    out.projection.verify_chain_map();
    out.inclusion.verify_chain_map();
    // projection ∘ inclusion = identity on the reduced basis
    ChainMap pi_iota = compose(out.projection, out.inclusion);
    for (int g = 0; g < red->size(); ++g) {
        KHLAB_CHECK(pi_iota.cols[g].size() == 1 && pi_iota.cols[g][0].first == g &&
                        pi_iota.cols[g][0].second.fold(red->ring) == Zu(1, 0).fold(red->ring),
                    "projection ∘ inclusion is not the identity");
    }
    return out;
}

// ---- structured cancellations ----------------------------------------------

namespace {

int circle_of_edge(const Resolution& r, const Diagram& d, int edge)
{
    const auto& oc = d.occ(edge);
    return r.port_circle[4 * oc[0].first + oc[0].second];
}

}  // namespace

namespace {

// the complex may be either the cochain or the totalization side; the pair to
// cancel is located by label and the entry direction probed at run time
void cancel_pair_by_label(Eliminator& el, const ChainCx& c, const GenRef& a, const GenRef& b)
{
    int ia = -1, ib = -1;
    for (int k = 0; k < c.size() && (ia < 0 || ib < 0); ++k) {
        if (c.gens[k] == a) ia = k;
        if (c.gens[k] == b) ib = k;
    }
    KHLAB_CHECK(ia >= 0 && ib >= 0, "cancellation pair not found");
    if (c.deg[ia].first + 1 == c.deg[ib].first)
        el.cancel(c.gens[ia], c.deg[ia], c.gens[ib], c.deg[ib]);
    else
        el.cancel(c.gens[ib], c.deg[ib], c.gens[ia], c.deg[ia]);
}

}  // namespace

void cancel_merge_into(Eliminator& el, const ChainCx& c, const KhCube& cube, int crossing, int loop_edge,
                       const std::function<bool(Vertex)>& filt)
{
    for (Vertex w = 0; w < (1u << cube.n); ++w) {
        if ((w >> crossing) & 1) continue;
        if (filt && !filt(w)) continue;
        Vertex u = w | (1u << crossing);
        EdgeCob cob = edge_cobordism(cube.d, cube.res[w], cube.res[u], crossing);
        KHLAB_CHECK(cob.merge, "designated edge is not a merge");
        int a1 = circle_of_edge(cube.res[w], cube.d, loop_edge);
        KHLAB_CHECK(a1 == cob.m_a1 || a1 == cob.m_a2, "loop edge does not ride the merge");
        int a2 = a1 == cob.m_a1 ? cob.m_a2 : cob.m_a1;
        for (Mono m = 0; m < (1ULL << cube.res[w].ncircles); ++m) {
            if ((m >> a1) & 1) continue;  // keep the circle-bearing half
            AlgebraElement img = merge_monomial(m, Zu::one(), a1, a2, cob.m_a, cob.lo_to_up);
            KHLAB_CHECK(img.terms.size() == 1, "merge image is not a single generator");
            cancel_pair_by_label(el, c, GenRef{w, m, 0}, GenRef{u, img.terms.begin()->first, 0});
        }
    }
}

Eliminator::Result cancel_merge(const ChainCx& c, const KhCube& cube, int crossing, int loop_edge)
{
    Eliminator el(c);
    cancel_merge_into(el, c, cube, crossing, loop_edge, nullptr);
    return el.finish();
}

void cancel_split_into(Eliminator& el, const ChainCx& c, const KhCube& cube, int crossing, int loop_edge,
                       const std::function<bool(Vertex)>& filt)
{
    for (Vertex w = 0; w < (1u << cube.n); ++w) {
        if ((w >> crossing) & 1) continue;
        if (filt && !filt(w)) continue;
        Vertex u = w | (1u << crossing);
        EdgeCob cob = edge_cobordism(cube.d, cube.res[w], cube.res[u], crossing);
        KHLAB_CHECK(!cob.merge, "designated edge is not a split");
        int a1 = circle_of_edge(cube.res[u], cube.d, loop_edge);
        KHLAB_CHECK(a1 == cob.s_a1 || a1 == cob.s_a2, "loop edge does not ride the split");
        for (Mono m = 0; m < (1ULL << cube.res[w].ncircles); ++m) {
            AlgebraElement img = split_monomial(m, Zu::one(), cob.s_a, cob.s_a1, cob.s_a2, cob.lo_to_up);
            Mono tgt = 0;
            bool found = false;
            for (auto& [mono, v] : img.terms)
                if ((mono >> a1) & 1) {
                    KHLAB_CHECK(!found, "split image has two circle-bearing terms");
                    tgt = mono;
                    found = true;
                }
            KHLAB_CHECK(found, "split image misses the designated circle");
            cancel_pair_by_label(el, c, GenRef{w, m, 0}, GenRef{u, tgt, 0});
        }
    }
}

Eliminator::Result cancel_split(const ChainCx& c, const KhCube& cube, int crossing, int loop_edge)
{
    Eliminator el(c);
    cancel_split_into(el, c, cube, crossing, loop_edge, nullptr);
    return el.finish();
}

// ---- rewrites ----------------------------------------------------------------

namespace {

// which occurrence of `edge` is its head (the edge points into that crossing)
Diagram::Occ head_occurrence(const Diagram& d, int edge)
{
    const auto& oc = d.occ(edge);
    for (const auto& o : oc) {
        int slot = o.second;
        int sgn = d.crossings[o.first].sign;
        int role = (slot == 0) ? +1 : (slot == 2) ? -1 : (slot == 1 ? (sgn > 0 ? -1 : +1) : (sgn > 0 ? +1 : -1));
        if (role == +1) return o;
    }
    throw internal_error("edge has no head occurrence");
}

void replace_occurrence(Diagram& d, const Diagram::Occ& o, int new_label)
{
    d.crossings[o.first].e[o.second] = new_label;
}

}  // namespace

Diagram r1_insert(const Diagram& d, int edge, bool positive)
{
    if (!d.occ_map.count(edge)) throw input_error("no such edge for a twist");
    Diagram out = d;
    int g2 = fresh_edge_label(d);
    int h = g2 + 1;
    replace_occurrence(out, head_occurrence(d, edge), g2);
    Crossing c;
    c.e = positive ? std::array<int, 4>{edge, g2, h, h} : std::array<int, 4>{edge, h, h, g2};
    out.crossings.push_back(c);
    out.arrows.push_back(1);
    validate(out);
    KHLAB_CHECK(out.crossings.back().sign == (positive ? 1 : -1), "twist chirality came out wrong");
    return out;
}

Diagram r1_remove(const Diagram& d, int crossing, int* out_fused)
{
    if (crossing < 0 || crossing >= d.n()) throw input_error("no such crossing");
    const auto& e = d.crossings[crossing].e;
    // locate the loop edge: both occurrences at this crossing in adjacent slots
    int loop = -1, s0 = -1;
    for (int s = 0; s < 4; ++s)
        if (e[s] == e[(s + 1) % 4]) {
            loop = e[s];
            s0 = s;
            break;
        }
    if (loop < 0) throw input_error("crossing is not a removable twist");
    // the other two slots hold the strand (possibly the same label = unknot)
    int ga = e[(s0 + 2) % 4], gb = e[(s0 + 3) % 4];
    Diagram out = d;
    out.crossings.erase(out.crossings.begin() + crossing);
    out.arrows.erase(out.arrows.begin() + crossing);
    if (ga == gb) {
        out.free_loops += 1;  // the twisted unknot closes into a free loop
        if (out.basepoint && (*out.basepoint == ga || *out.basepoint == loop)) {
            out.basepoint.reset();
            out.based_loop = true;
        }
    }
    else {
        int keep = std::min(ga, gb), drop = std::max(ga, gb);
        for (auto& c : out.crossings)
            for (int s = 0; s < 4; ++s)
                if (c.e[s] == drop) c.e[s] = keep;
        if (out.basepoint && (*out.basepoint == drop || *out.basepoint == loop)) out.basepoint = keep;
        if (out_fused) *out_fused = keep;
    }
    validate(out);
    return out;
}

Diagram r2_insert(const Diagram& d, int f, int g, bool f_over)
{
    if (!d.occ_map.count(f) || !d.occ_map.count(g)) throw input_error("no such edges for a clasp");
    if (f == g) throw input_error("clasp needs two distinct edges");
    // find a corner where f immediately precedes g counterclockwise
    int kc = -1, slot = -1;
    for (int ci = 0; ci < d.n() && kc < 0; ++ci)
        for (int s = 0; s < 4; ++s)
            if (d.crossings[ci].e[s] == f && d.crossings[ci].e[(s + 1) % 4] == g) {
                kc = ci;
                slot = s;
                break;
            }
    if (kc < 0) throw input_error("edges do not share a corner in this order");
    (void)slot;
    Diagram out = d;
    int base = fresh_edge_label(d);
    int fm = base, fe = base + 1, gm = base + 2, ge = base + 3;
    // the far occurrences (away from the shared crossing kc) get the new labels
    auto far_occ = [&](int edge) {
        const auto& oc = d.occ(edge);
        if (oc[0].first == kc && oc[1].first == kc)
            throw input_error("clasp edge closes on the shared crossing");
        return oc[0].first == kc ? oc[1] : oc[0];
    };
    replace_occurrence(out, far_occ(f), fe);
    replace_occurrence(out, far_occ(g), ge);
    // whether g flows out of the shared crossing decides the tuple rotation
    int gslot = (slot + 1) % 4;  // the corner copy of g
    int sgn = d.crossings[kc].sign;
    int grole = (gslot == 0) ? +1 : (gslot == 2) ? -1 : (gslot == 1 ? (sgn > 0 ? -1 : +1) : (sgn > 0 ? +1 : -1));
    bool g_out_of_k = grole == -1;
    Crossing c1, c2;
    if (f_over) {
        c1.e = g_out_of_k ? std::array<int, 4>{g, f, gm, fm} : std::array<int, 4>{gm, fm, g, f};
        c2.e = g_out_of_k ? std::array<int, 4>{gm, fe, ge, fm} : std::array<int, 4>{ge, fm, gm, fe};
    }
    else {
        bool f_out_of_k = [&] {
            int fslot = slot;
            int r = (fslot == 0) ? +1 : (fslot == 2) ? -1 : (fslot == 1 ? (sgn > 0 ? -1 : +1) : (sgn > 0 ? +1 : -1));
            return r == -1;
        }();
        c1.e = f_out_of_k ? std::array<int, 4>{f, gm, fm, g} : std::array<int, 4>{fm, g, f, gm};
        c2.e = f_out_of_k ? std::array<int, 4>{fm, gm, fe, ge} : std::array<int, 4>{fe, ge, fm, gm};
    }
    out.crossings.push_back(c1);
    out.crossings.push_back(c2);
    out.arrows.push_back(1);
    out.arrows.push_back(1);
    validate(out);
    KHLAB_CHECK(out.crossings[d.n()].sign + out.crossings[d.n() + 1].sign == 0, "clasp signs must cancel");
    return out;
}

std::pair<int, int> find_bigon(const Diagram& d, int c1, int c2)
{
    // two edges, each occurring once at each crossing, at adjacent slots in
    // both, and not on the same strand line
    auto slots_of = [&](int ci, int e) {
        std::vector<int> s;
        for (int k = 0; k < 4; ++k)
            if (d.crossings[ci].e[k] == e) s.push_back(k);
        return s;
    };
    for (int s = 0; s < 4; ++s) {
        int x = d.crossings[c1].e[s];
        int y = d.crossings[c1].e[(s + 1) % 4];
        if (x == y) continue;
        auto sx1 = slots_of(c1, x), sy1 = slots_of(c1, y);
        auto sx2 = slots_of(c2, x), sy2 = slots_of(c2, y);
        if (sx1.size() != 1 || sy1.size() != 1 || sx2.size() != 1 || sy2.size() != 1) continue;
        int dx = (sx2[0] - sy2[0] + 4) % 4;
        if (dx != 1 && dx != 3) continue;  // adjacent at the far crossing too
        return {x, y};
    }
    throw input_error("crossings do not bound a clasp bigon");
}

Diagram r2_remove(const Diagram& d, int c1, int c2)
{
    if (c1 == c2 || c1 < 0 || c2 < 0 || c1 >= d.n() || c2 >= d.n()) throw input_error("bad clasp crossings");
    if (d.crossings[c1].sign + d.crossings[c2].sign != 0) throw input_error("clasp signs do not cancel");
    auto [bx, by] = find_bigon(d, c1, c2);
    auto strand_partner = [&](int ci, int e) {
        for (int s = 0; s < 4; ++s)
            if (d.crossings[ci].e[s] == e) return d.crossings[ci].e[(s + 2) % 4];
        throw internal_error("edge not on crossing");
    };
    int a1 = strand_partner(c1, bx), a2 = strand_partner(c2, bx);
    int b1 = strand_partner(c1, by), b2 = strand_partner(c2, by);
    Diagram out = d;
    out.crossings.erase(out.crossings.begin() + std::max(c1, c2));
    out.crossings.erase(out.crossings.begin() + std::min(c1, c2));
    out.arrows.erase(out.arrows.begin() + std::max(c1, c2));
    out.arrows.erase(out.arrows.begin() + std::min(c1, c2));
    auto fuse = [&](int p, int q) {
        if (p == q) {
            out.free_loops += 1;
            if (out.basepoint && *out.basepoint == p) {
                out.basepoint.reset();
                out.based_loop = true;
            }
            return;
        }
        int keep = std::min(p, q), drop = std::max(p, q);
        for (auto& c : out.crossings)
            for (int s = 0; s < 4; ++s)
                if (c.e[s] == drop) c.e[s] = keep;
        if (out.basepoint && *out.basepoint == drop) out.basepoint = keep;
    };
    fuse(a1, a2);
    fuse(b1, b2);
    if (out.basepoint && (*out.basepoint == bx || *out.basepoint == by))
        throw input_error("basepoint sits on the removed bigon");
    validate(out);
    return out;
}

Diagram add_loop(const Diagram& d)
{
    Diagram out = d;
    out.free_loops += 1;
    validate(out);
    return out;
}

Diagram remove_loop(const Diagram& d)
{
    if (d.free_loops == 0) throw input_error("no free loop to remove");
    if (d.based_loop) throw input_error("cannot remove the based loop");
    Diagram out = d;
    out.free_loops -= 1;
    if (out.n() == 0 && out.free_loops == 0) throw input_error("removing the last component");
    validate(out);
    return out;
}

SaddleData saddle(const Diagram& d0, int edge_a, int edge_b)
{
    SaddleData out;
    Diagram trace = d0;
    int base = fresh_edge_label(d0);
    Crossing c;
    if (edge_a > 0 && edge_b > 0 && edge_a != edge_b) {
        int ea2 = base, eb2 = base + 1;
        replace_occurrence(trace, head_occurrence(d0, edge_a), ea2);
        replace_occurrence(trace, head_occurrence(d0, edge_b), eb2);
        c.e = {edge_a, ea2, eb2, edge_b};
    }
    else if (edge_a > 0 && edge_a == edge_b) {
        // band from an edge back to itself: splits its circle
        int m = base, a2 = base + 1;
        replace_occurrence(trace, head_occurrence(d0, edge_a), a2);
        c.e = {edge_a, m, m, a2};
    }
    else if (edge_a > 0 && edge_b == 0) {
        if (d0.free_loops == 0) throw input_error("no free loop for the saddle");
        if (d0.based_loop) throw input_error("saddle with a based loop unsupported");
        int ea2 = base, y = base + 1;
        replace_occurrence(trace, head_occurrence(d0, edge_a), ea2);
        c.e = {edge_a, ea2, y, y};
        trace.free_loops -= 1;
    }
    else if (edge_a == 0 && edge_b == 0) {
        if (d0.free_loops < 2) throw input_error("need two free loops for the saddle");
        int y1 = base, y2 = base + 1;
        c.e = {y1, y1, y2, y2};
        trace.free_loops -= 2;
    }
    else
        throw input_error("bad saddle location");
    trace.crossings.push_back(c);
    trace.arrows.push_back(1);
    validate(trace);
    out.trace = trace;

    // far side: resolve the new crossing by 1, i.e. identify labels along the
    // pairs (slot0,slot3) and (slot1,slot2); identified classes with no
    // remaining crossing occurrence close into free loops
    Diagram d1 = trace;
    Crossing last = d1.crossings.back();
    d1.crossings.pop_back();
    d1.arrows.pop_back();
    std::map<int, int> parent;
    std::function<int(int)> root = [&](int x) {
        if (!parent.count(x) || parent[x] == x) return x;
        return parent[x] = root(parent[x]);
    };
    auto unite = [&](int p, int q) {
        int rp = root(p), rq = root(q);
        if (rp != rq) parent[std::max(rp, rq)] = std::min(rp, rq);
    };
    unite(last.e[0], last.e[3]);
    unite(last.e[1], last.e[2]);
    std::map<int, int> occs;
    for (auto& cc : d1.crossings)
        for (int s = 0; s < 4; ++s) occs[root(cc.e[s])]++;
    std::map<int, char> seen_class;
    for (int s = 0; s < 4; ++s) {
        int r = root(last.e[s]);
        if (occs.count(r) || seen_class.count(r)) continue;
        seen_class[r] = 1;
        d1.free_loops += 1;  // the identified strand closed up without crossings
    }
    for (auto& cc : d1.crossings)
        for (int s = 0; s < 4; ++s) cc.e[s] = root(cc.e[s]);
    if (d1.basepoint) {
        int r = root(*d1.basepoint);
        if (occs.count(r))
            d1.basepoint = r;
        else {
            d1.basepoint.reset();
            d1.based_loop = true;
        }
    }
    validate(d1);
    out.d1 = d1;
    return out;
}

// ---- assignment extension and face restriction ------------------------------

namespace {

// Solve the edge-assignment constraints of `d` with some edge values pinned.
Cochain solve_pinned(const Diagram& d, const std::vector<Resolution>& res,
                     const std::map<int, char>& pins, int jobs)
{
    int n = d.n();
    auto squares = all_squares(n);
    std::vector<int> target(squares.size(), -1);
    parallel_for(squares.size(), jobs, [&](std::size_t k) {
        FaceType t = classify_face(d, res, squares[k]);
        target[k] = (t == FaceType::A) ? 1 : (t == FaceType::C ? 0 : -1);
    });
    auto edges = all_edges(n);
    std::vector<int> rows;
    for (std::size_t i = 0; i < squares.size(); ++i)
        if (target[i] >= 0) rows.push_back(static_cast<int>(i));
    F2Mat A(static_cast<int>(rows.size() + pins.size()), static_cast<int>(edges.size()));
    std::vector<char> b(rows.size() + pins.size(), 0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const Square& s = squares[rows[r]];
        Vertex v1 = s.lo | (1u << s.b1), v2 = s.lo | (1u << s.b2);
        A.set(static_cast<int>(r), edge_index(n, {s.lo, s.b1}), true);
        A.set(static_cast<int>(r), edge_index(n, {s.lo, s.b2}), true);
        A.set(static_cast<int>(r), edge_index(n, {v1, s.b2}), true);
        A.set(static_cast<int>(r), edge_index(n, {v2, s.b1}), true);
        b[r] = target[rows[r]] ? 1 : 0;
    }
    int r = static_cast<int>(rows.size());
    for (auto& [eidx, val] : pins) {
        A.set(r, eidx, true);
        b[r] = val;
        ++r;
    }
    std::vector<int> order;
    for (std::size_t i = edges.size(); i-- > 0;) order.push_back(static_cast<int>(i));
    auto sol = f2_min_solution(A, b, order);
    KHLAB_CHECK(sol.has_value(), "pinned edge-assignment extension is unsatisfiable");
    Cochain out = Cochain::zero(n, 1);
    out.val = *sol;
    return out;
}

// embed a small-cube vertex into the big cube with coordinate `k` set to bit
Vertex embed_vertex(Vertex w, int k, int bit)
{
    Vertex low = w & ((1u << k) - 1);
    Vertex high = (w >> k) << (k + 1);
    return low | high | (static_cast<Vertex>(bit) << k);
}

Vertex drop_vertex_bit(Vertex v, int k)
{
    Vertex low = v & ((1u << k) - 1);
    Vertex high = (v >> (k + 1)) << k;
    return low | high;
}

// pins for extending a small assignment over both faces of direction k
std::map<int, char> face_pins(const Cochain& eps_small, int small_n, int k)
{
    std::map<int, char> pins;
    auto edges = all_edges(small_n);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        for (int bit = 0; bit < 2; ++bit) {
            Vertex bl = embed_vertex(e.lo, k, bit);
            int bb = e.bit < k ? e.bit : e.bit + 1;
            pins[edge_index(small_n + 1, {bl, bb})] = eps_small.val[i];
        }
    }
    return pins;
}

std::map<int, char> face_pins_one_side(const Cochain& eps_small, int small_n, int k, int bit)
{
    std::map<int, char> pins;
    auto edges = all_edges(small_n);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        Vertex bl = embed_vertex(e.lo, k, bit);
        int bb = e.bit < k ? e.bit : e.bit + 1;
        pins[edge_index(small_n + 1, {bl, bb})] = eps_small.val[i];
    }
    return pins;
}

Cochain restrict_assignment(const Cochain& eps_big, int big_n, int k, int bit)
{
    Cochain out = Cochain::zero(big_n - 1, 1);
    auto edges = all_edges(big_n - 1);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        Vertex bl = embed_vertex(e.lo, k, bit);
        int bb = e.bit < k ? e.bit : e.bit + 1;
        out.val[i] = eps_big.val[edge_index(big_n, {bl, bb})];
    }
    return out;
}

// diagonal-unit isomorphism completing a degree-preserving label bijection
ChainMap fix_iso_signs(const ChainCx& A, const ChainCx& B, const std::vector<int>& bij)
{
    KHLAB_CHECK(A.size() == B.size(), "bijection size mismatch");
    std::vector<Zu> delta(A.size(), Zu());
    // constraint graph BFS: delta_y * a = delta_x * b
    std::vector<std::vector<std::tuple<int, Zu, Zu>>> adj(A.size());  // (other, a, b)
    for (int x = 0; x < A.size(); ++x) {
        std::map<int, Zu> bcol;
        for (auto& [t, v] : B.dcol[bij[x]]) bcol[t] = v;
        std::map<int, Zu> acol;
        for (auto& [y, a] : A.dcol[x]) acol[y] = a;
        for (auto& [y, a] : acol) {
            auto it = bcol.find(bij[y]);
            KHLAB_CHECK(it != bcol.end(), "entry supports do not match");
            adj[x].push_back({y, a, it->second});
            adj[y].push_back({x, it->second, a});  // reversed roles for BFS symmetry
        }
        for (auto& [t, v] : bcol) {
            (void)v;
            bool found = false;
            for (auto& [y, a] : acol)
                if (bij[y] == t) found = true;
            KHLAB_CHECK(found, "entry supports do not match");
        }
    }
    auto unit_ratio = [&](const Zu& num, const Zu& den) -> Zu {
        // num / den when they are associate integers (b == u * a)
        KHLAB_CHECK(den.b == 0 && num.b == 0, "sign fix needs integer entries");
        KHLAB_CHECK(den.a != 0 && (num.a == den.a || num.a == -den.a), "entries are not associates");
        return Zu(num.a == den.a ? 1 : -1, 0);
    };
    for (int start = 0; start < A.size(); ++start) {
        if (!delta[start].is_zero()) continue;
        delta[start] = Zu(1, 0);
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (auto& [y, a, bb] : adj[x]) {
                // delta_y = delta_x * (b/a) when x -> y is a forward edge; the
                // reversed copies carry swapped (a,b) so the same formula holds
                Zu want = delta[x] * unit_ratio(bb, a);
                if (delta[y].is_zero()) {
                    delta[y] = want;
                    stack.push_back(y);
                }
                else
                    KHLAB_CHECK(delta[y] == want, "no diagonal sign fix exists");
            }
        }
    }
    ChainMap out;
    out.src = &A;
    out.dst = &B;
    out.cols.assign(A.size(), {});
    for (int x = 0; x < A.size(); ++x) out.cols[x].emplace_back(bij[x], delta[x]);
    out.di = 0;
    out.dj = 0;
    out.verify_chain_map();
    return out;
}

// label bijection from a face-supported reduced complex to the complex of the
// smaller diagram, through an edge-label translation. `fixed` lists the
// frozen cube coordinates (ascending); `drop_edge` identifies a circle that
// is removed by the translation, with drop_policy demanding its presence (+1)
// or absence (-1) in every surviving monomial.
std::vector<int> face_bijection(const ChainCx& reduced, const KhCube& big,
                                const std::vector<std::pair<int, int>>& fixed, const ChainCx& small_tot,
                                const KhCube& small, const std::map<int, int>& edge_map, int drop_edge,
                                int drop_policy)
{
    auto drop_bits = [&](Vertex v) {
        Vertex out = v;
        for (auto it = fixed.rbegin(); it != fixed.rend(); ++it) out = drop_vertex_bit(out, it->first);
        return out;
    };
    std::map<Vertex, std::vector<int>> circle_maps;
    auto circle_map_at = [&](Vertex bv) -> const std::vector<int>& {
        auto it = circle_maps.find(bv);
        if (it != circle_maps.end()) return it->second;
        Vertex w = drop_bits(bv);
        const Resolution& rb = big.res[bv];
        const Resolution& rs = small.res[w];
        std::vector<int> cm(rb.ncircles, -2);  // -2 = loop-matched later, -1 = dropped
        std::vector<int> loopish;
        for (int c = 0; c < rb.ncircles; ++c) {
            bool is_drop = false;
            if (drop_edge > 0)
                for (int e : rb.circle_edges[c]) is_drop = is_drop || e == drop_edge;
            if (is_drop) {
                cm[c] = -1;
                continue;
            }
            std::vector<int> edges;
            for (int e : rb.circle_edges[c]) {
                auto em = edge_map.find(e);
                if (em != edge_map.end()) edges.push_back(em->second);
            }
            if (edges.empty()) {
                loopish.push_back(c);
                continue;
            }
            int found = -1;
            for (int sc = 0; sc < rs.ncircles; ++sc) {
                bool all = true;
                for (int e : edges)
                    all = all && std::find(rs.circle_edges[sc].begin(), rs.circle_edges[sc].end(), e) !=
                                     rs.circle_edges[sc].end();
                if (all) {
                    found = sc;
                    break;
                }
            }
            KHLAB_CHECK(found >= 0, "circle translation failed");
            cm[c] = found;
        }
        // circles with no surviving labels match the small side's port-free
        // circles positionally (they are interchangeable)
        std::vector<int> small_loops;
        for (int sc = 0; sc < rs.ncircles; ++sc)
            if (rs.circle_ports[sc].empty()) small_loops.push_back(sc);
        KHLAB_CHECK(loopish.size() <= small_loops.size(), "closed strand has no loop downstairs");
        for (std::size_t i = 0; i < loopish.size(); ++i) cm[loopish[i]] = small_loops[i];
        return circle_maps.emplace(bv, std::move(cm)).first->second;
    };
    std::vector<int> bij(reduced.size(), -1);
    for (int g = 0; g < reduced.size(); ++g) {
        Vertex bv = reduced.gens[g].v;
        for (auto& [k, bit] : fixed)
            KHLAB_CHECK(((bv >> k) & 1) == static_cast<Vertex>(bit), "survivor off the expected face");
        const auto& cm = circle_map_at(bv);
        Mono mm = 0;
        for (int c = 0; c < static_cast<int>(cm.size()); ++c) {
            bool has = (reduced.gens[g].m >> c) & 1;
            if (cm[c] == -1) {
                if (drop_policy == +1)
                    KHLAB_CHECK(has, "dropped circle expected in the monomial");
                else if (drop_policy == -1)
                    KHLAB_CHECK(!has, "dropped circle must be absent");
                continue;
            }
            if (has) mm |= 1ULL << cm[c];
        }
        int t = small_tot.find({drop_bits(bv), mm, 0}, reduced.deg[g]);
        KHLAB_CHECK(t >= 0, "translated generator not found downstairs");
        bij[g] = t;
    }
    return bij;
}

ChainMap invert_diagonal(const ChainMap& f)
{
    ChainMap out;
    out.src = f.dst;
    out.dst = f.src;
    out.di = -f.di;
    out.dj = -f.dj;
    out.cols.assign(f.dst->size(), {});
    for (std::size_t x = 0; x < f.cols.size(); ++x) {
        KHLAB_CHECK(f.cols[x].size() == 1, "not a diagonal map");
        auto [t, v] = f.cols[x][0];
        out.cols[t].emplace_back(static_cast<int>(x), v.inv_unit());
    }
    return out;
}

}  // namespace

// ---- witness plumbing --------------------------------------------------------

ChainMapWitness compose_witnesses(const ChainMapWitness& second, const ChainMapWitness& first)
{
    KHLAB_CHECK(first.target->gens == second.source->gens && first.target->deg == second.source->deg,
                "witness endpoints do not match");
    ChainMap f1 = first.map;
    f1.dst = second.source.get();
    ChainMapWitness out;
    out.source = first.source;
    out.target = second.target;
    out.map = compose(second.map, f1);
    out.map.src = out.source.get();
    out.map.dst = out.target.get();
    out.dq = first.dq + second.dq;
    out.is_chain_map = first.is_chain_map && second.is_chain_map;
    out.is_quasi_iso = first.is_quasi_iso && second.is_quasi_iso;
    out.label = second.label.empty() ? first.label : first.label.empty() ? second.label
                                                                         : second.label + " ∘ " + first.label;
    return out;
}

bool cone_is_acyclic(const ChainMapWitness& w, int jobs)
{
    const ChainCx& A = *w.source;
    const ChainCx& B = *w.target;
    ChainCx cone;
    cone.ring = A.ring;
    int na = A.size();
    for (int g = 0; g < na; ++g) {
        cone.gens.push_back(A.gens[g]);
        cone.deg.push_back(A.deg[g]);
    }
    for (int g = 0; g < B.size(); ++g) {
        GenRef r = B.gens[g];
        r.xi = static_cast<char>(r.xi + 2);  // keep the two sheets distinct
        cone.gens.push_back(r);
        cone.deg.push_back({B.deg[g].first + 1 - w.map.di, B.deg[g].second - w.map.dj});
    }
    cone.dcol.assign(cone.gens.size(), {});
    for (int g = 0; g < na; ++g) {
        for (auto& [t, v] : A.dcol[g]) cone.dcol[g].emplace_back(t, Zu() - v);
        for (auto& [t, v] : w.map.cols[g]) cone.dcol[g].emplace_back(na + t, v);
    }
    for (int g = 0; g < B.size(); ++g)
        for (auto& [t, v] : B.dcol[g]) cone.dcol[na + g].emplace_back(na + t, v);
    cone.sort_canonical();
    cone.check_degrees();
    cone.check_d_squared();
    Homology h(cone, jobs);
    return h.support().empty();
}

// ---- braid-like triangle rewrite --------------------------------------------

namespace {

std::vector<int> shared_edges(const Diagram& d, int ca, int cb)
{
    std::vector<int> out;
    for (int s = 0; s < 4; ++s) {
        int e = d.crossings[ca].e[s];
        for (int t = 0; t < 4; ++t)
            if (d.crossings[cb].e[t] == e && std::find(out.begin(), out.end(), e) == out.end())
                out.push_back(e);
    }
    return out;
}

// does `edge` ride the over line (slots 1,3) of the crossing?
bool rides_over(const Diagram& d, int ci, int edge)
{
    for (int s = 0; s < 4; ++s)
        if (d.crossings[ci].e[s] == edge) return s == 1 || s == 3;
    throw internal_error("edge not at crossing");
}

int line_partner(const Diagram& d, int ci, int edge)
{
    for (int s = 0; s < 4; ++s)
        if (d.crossings[ci].e[s] == edge) return d.crossings[ci].e[(s + 2) % 4];
    throw internal_error("edge not at crossing");
}

bool edge_flows_into(const Diagram& d, int ci, int edge)
{
    for (int s = 0; s < 4; ++s) {
        if (d.crossings[ci].e[s] != edge) continue;
        int sgn = d.crossings[ci].sign;
        int role = (s == 0) ? +1 : (s == 2) ? -1 : (s == 1 ? (sgn > 0 ? -1 : +1) : (sgn > 0 ? +1 : -1));
        if (role == +1) return true;
    }
    return false;
}

Crossing letter_crossing(int il, int ir, int orr, int ol, int under_in)
{
    // ccw cycle of ends is (il, ir, orr, ol); rotate to start at the under
    // strand's incoming end
    std::array<int, 4> cyc{il, ir, orr, ol};
    int start = -1;
    for (int s = 0; s < 4; ++s)
        if (cyc[s] == under_in) start = s;
    KHLAB_CHECK(start >= 0, "under end missing");
    Crossing c;
    for (int s = 0; s < 4; ++s) c.e[s] = cyc[(start + s) % 4];
    return c;
}

}  // namespace

Diagram r3_rewrite(const Diagram& d, int ca, int cb, int cc)
{
    for (int c : {ca, cb, cc})
        if (c < 0 || c >= d.n()) throw input_error("no such crossing");
    // try the role assignments until the strand through (B,C) is consistently
    // over or under at both
    std::array<std::array<int, 3>, 6> tries = {{{ca, cb, cc},
                                                {cb, ca, cc},
                                                {ca, cc, cb},
                                                {cc, cb, ca},
                                                {cb, cc, ca},
                                                {cc, ca, cb}}};
    for (auto [A, B, C] : tries)
      for (int v : shared_edges(d, A, B))
       for (int u : shared_edges(d, A, C))
        for (int w : shared_edges(d, B, C)) {
        if (v <= 0 || u <= 0 || w <= 0 || v == u || u == w || v == w) continue;
        bool s3_over_B = rides_over(d, B, w), s3_over_C = rides_over(d, C, w);
        if (s3_over_B != s3_over_C) continue;
        // outer ends
        int b1 = line_partner(d, A, v), b2 = line_partner(d, A, u);
        int t3 = line_partner(d, B, v), b3 = line_partner(d, B, w);
        int t2 = line_partner(d, C, u), t1 = line_partner(d, C, w);
        std::vector<int> nine{v, u, w, b1, b2, b3, t1, t2, t3};
        std::sort(nine.begin(), nine.end());
        if (std::adjacent_find(nine.begin(), nine.end()) != nine.end()) continue;  // degenerate
        // strand flows from the outer ends
        bool s1_up = edge_flows_into(d, A, b1);   // s1 runs b1 -> v -> t3
        bool s2_up = edge_flows_into(d, A, b2);   // s2 runs b2 -> u -> t2
        bool s3_up = edge_flows_into(d, B, b3);   // s3 runs b3 -> w -> t1
        bool s1_over_A = rides_over(d, A, v);
        bool s2_over_C = rides_over(d, C, u);
        Diagram out = d;
        // new letters: (s2 x s3) with C's pattern, (s1 x s3) with B's, (s1 x s2) with A's
        // A' : in-left b2 (s2), in-right b3 (s3), out-right u, out-left w
        {
            bool under_is_s2 = !s2_over_C;
            int under_in = under_is_s2 ? (s2_up ? b2 : u) : (s3_up ? b3 : w);
            out.crossings[A] = letter_crossing(b2, b3, u, w, under_in);
        }
        // B' : in-left b1 (s1), in-right w (s3), out-right v, out-left t1
        {
            bool under_is_s1 = s3_over_B;
            int under_in = under_is_s1 ? (s1_up ? b1 : v) : (s3_up ? w : t1);
            out.crossings[B] = letter_crossing(b1, w, v, t1, under_in);
        }
        // C' : in-left v (s1), in-right u (s2), out-right t3, out-left t2
        {
            bool under_is_s1 = !s1_over_A;
            int under_in = under_is_s1 ? (s1_up ? v : t3) : (s2_up ? u : t2);
            out.crossings[C] = letter_crossing(v, u, t3, t2, under_in);
        }
        try {
            validate(out);
        }
        catch (const input_error&) {
            continue;
        }
        if (out.n_plus != d.n_plus || out.n_minus != d.n_minus) continue;
        return out;
    }
    throw input_error("crossings do not form a braid-like triangle");
}

// ---- canonical decomposition (for the triangle witness) ---------------------
//
// Over the integers a bounded complex of free groups splits as a direct sum
// of rank-one pieces: free summands and two-term pieces Z --d--> Z. Tracking
// the unimodular changes of basis while Smith-reducing each block, degree by
// degree, produces that splitting together with explicit isomorphisms. Two
// complexes are isomorphic exactly when their sorted piece lists agree, and
// the isomorphism is the composite through the canonical form.

namespace {

struct CanonicalForm {
    // per level (i,j): current coordinate transform new = T * old
    std::map<Bideg, ZMat> T, Tinv;
    // pieces: (src level, src pos, tgt pos or -1, d) — free pieces have tgt -1
    struct Piece {
        Bideg deg;
        int src;
        int tgt;  // position at (i+1, j), or -1
        BigInt d;
    };
    std::vector<Piece> pieces;
    std::map<Bideg, std::vector<int>> level_sizes;
};

CanonicalForm canonicalize(const ChainCx& c)
{
    CanonicalForm out;
    // dense blocks per (i,j)
    std::map<Bideg, std::vector<int>> levels;
    for (auto [i, j] : c.bidegrees()) levels[{i, j}] = c.block(i, j);
    std::map<Bideg, ZMat> blocks;  // (i,j) -> matrix into (i+1,j)
    for (auto& [ij, idx] : levels) {
        auto up = levels.count({ij.first + 1, ij.second}) ? levels[{ij.first + 1, ij.second}] : std::vector<int>();
        ZMat m(static_cast<int>(up.size()), static_cast<int>(idx.size()));
        std::map<int, int> rp;
        for (std::size_t r = 0; r < up.size(); ++r) rp[up[r]] = static_cast<int>(r);
        for (std::size_t col = 0; col < idx.size(); ++col)
            for (auto& [t, v] : c.dcol[idx[col]]) m.a[rp.at(t)][static_cast<int>(col)] += BigInt(v.a);
        blocks[ij] = std::move(m);
        out.T[ij] = ZMat::identity(static_cast<int>(idx.size()));
        out.Tinv[ij] = ZMat::identity(static_cast<int>(idx.size()));
    }
    // reduce j-lines left to right in i
    for (auto& [ij, m] : blocks) {
        if (m.rows == 0 || m.cols == 0) continue;
        SnfResult s = smith_normal_form(m);
        Bideg up{ij.first + 1, ij.second};
        // column side: C_(i,j) coords transform by V^{-1}
        out.T[ij] = s.Vinv * out.T[ij];
        out.Tinv[ij] = out.Tinv[ij] * s.V;
        // row side: C_(i+1,j) coords transform by U
        out.T[up] = s.U * out.T[up];
        out.Tinv[up] = out.Tinv[up] * s.Uinv;
        m = s.D;
        // propagate to the next block: B' = B * Uinv
        auto nb = blocks.find(up);
        if (nb != blocks.end() && nb->second.rows > 0 && nb->second.cols > 0) nb->second = nb->second * s.Uinv;
    }
    // extract pieces
    std::map<Bideg, std::vector<char>> used;
    for (auto& [ij, idx] : levels) used[ij].assign(idx.size(), 0);
    for (auto& [ij, m] : blocks) {
        Bideg up{ij.first + 1, ij.second};
        for (int r = 0; r < m.rows; ++r)
            for (int col = 0; col < m.cols; ++col) {
                if (m.a[r][col].is_zero()) continue;
                KHLAB_CHECK(!used[ij][col] && !used[up][r], "piece extraction clash");
                BigInt d = m.a[r][col];
                if (d.sign() < 0) {
                    // flip the target coordinate so d > 0
                    d = -d;
                    for (int k = 0; k < out.T[up].cols; ++k) out.T[up].a[r][k] = -out.T[up].a[r][k];
                    for (int k = 0; k < out.Tinv[up].rows; ++k) out.Tinv[up].a[k][r] = -out.Tinv[up].a[k][r];
                }
                out.pieces.push_back({ij, col, r, d});
                used[ij][col] = 1;
                used[up][r] = 1;
            }
    }
    for (auto& [ij, u] : used)
        for (std::size_t k = 0; k < u.size(); ++k)
            if (!u[k]) out.pieces.push_back({ij, static_cast<int>(k), -1, BigInt(0)});
    std::sort(out.pieces.begin(), out.pieces.end(), [](const auto& a, const auto& b) {
        if (a.deg != b.deg) return a.deg < b.deg;
        if ((a.tgt < 0) != (b.tgt < 0)) return a.tgt < 0;
        if (a.d != b.d) return a.d < b.d;
        return a.src < b.src;
    });
    for (auto& [ij, idx] : levels) out.level_sizes[ij] = idx;
    return out;
}

// isomorphism RA -> RB through matching canonical forms; null if shapes differ
std::optional<ChainMap> canonical_match(const ChainCx& A, const ChainCx& B)
{
    CanonicalForm fa = canonicalize(A), fb = canonicalize(B);
    if (fa.pieces.size() != fb.pieces.size()) return std::nullopt;
    for (std::size_t k = 0; k < fa.pieces.size(); ++k) {
        const auto& p = fa.pieces[k];
        const auto& q = fb.pieces[k];
        if (p.deg != q.deg || (p.tgt < 0) != (q.tgt < 0) || p.d != q.d) return std::nullopt;
    }
    // permutation on each level pairing A's canonical coordinates with B's
    std::map<Bideg, std::vector<int>> perm;  // A canonical coord -> B canonical coord
    for (auto& [ij, idx] : fa.level_sizes) {
        if (!fb.level_sizes.count(ij) || fb.level_sizes[ij].size() != idx.size()) return std::nullopt;
        perm[ij].assign(idx.size(), -1);
    }
    for (std::size_t k = 0; k < fa.pieces.size(); ++k) {
        const auto& p = fa.pieces[k];
        const auto& q = fb.pieces[k];
        perm[p.deg][p.src] = q.src;
        if (p.tgt >= 0) perm[{p.deg.first + 1, p.deg.second}][p.tgt] = q.tgt;
    }
    // assemble: x_B = Tinv_B * P * T_A * x_A per level
    ChainMap out;
    out.src = &A;
    out.dst = &B;
    out.cols.assign(A.size(), {});
    for (auto& [ij, idxA] : fa.level_sizes) {
        auto& idxB = fb.level_sizes[ij];
        const ZMat& TA = fa.T[ij];
        const ZMat& TBi = fb.Tinv[ij];
        const auto& pm = perm[ij];
        int nl = static_cast<int>(idxA.size());
        ZMat P(nl, nl);
        for (int k = 0; k < nl; ++k) {
            KHLAB_CHECK(pm[k] >= 0, "incomplete canonical matching");
            P.a[pm[k]][k] = BigInt(1);
        }
        ZMat M = TBi * P * TA;
        for (int col = 0; col < nl; ++col)
            for (int r = 0; r < nl; ++r) {
                if (M.a[r][col].is_zero()) continue;
                out.cols[idxA[col]].emplace_back(idxB[r], Zu(M.a[r][col].to_ll(), 0));
            }
    }
    out.verify_chain_map();
    return out;
}

}  // namespace

// ---- movie parsing// ---- movie parsing -----------------------------------------------------------

MovieScript parse_movie(const std::string& text)
{
    MovieScript out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = line.substr(0, line.find('#'));
        std::istringstream ls(stripped);
        std::string head;
        if (!(ls >> head)) continue;
        auto fail = [&](const std::string& why) {
            throw input_error("movie line " + std::to_string(lineno) + ": " + why);
        };
        auto edge_arg = [&]() {
            std::string t;
            if (!(ls >> t)) fail("missing location");
            if (t == "u" || t == "U") return 0;
            if (t.size() > 1 && (t[0] == 'e' || t[0] == 'u')) t = t.substr(1);
            try {
                return std::stoi(t);
            }
            catch (...) {
                fail("bad edge token");
            }
            return -1;
        };
        auto crossing_arg = [&]() {
            std::string t;
            if (!(ls >> t)) fail("missing crossing");
            if (t.size() > 1 && t[0] == 'c') t = t.substr(1);
            try {
                return std::stoi(t) - 1;  // text is 1-based
            }
            catch (...) {
                fail("bad crossing token");
            }
            return -1;
        };
        MovieMove m;
        if (head == "R1+")
            m = {MoveKind::R1Pos, {edge_arg()}};
        else if (head == "R1-")
            m = {MoveKind::R1Neg, {edge_arg()}};
        else if (head == "R1inv")
            m = {MoveKind::R1Inv, {crossing_arg()}};
        else if (head == "R2" || head == "R2+")
            m = {MoveKind::R2, {edge_arg(), edge_arg()}};
        else if (head == "R2-")
            m = {MoveKind::R2Under, {edge_arg(), edge_arg()}};
        else if (head == "R2inv")
            m = {MoveKind::R2Inv, {crossing_arg(), crossing_arg()}};
        else if (head == "R3")
            m = {MoveKind::R3, {crossing_arg(), crossing_arg(), crossing_arg()}};
        else if (head == "birth")
            m = {MoveKind::Birth, {}};
        else if (head == "death")
            m = {MoveKind::Death, {}};
        else if (head == "saddle")
            m = {MoveKind::Saddle, {edge_arg(), edge_arg()}};
        else
            fail("unknown move '" + head + "'");
        std::string extra;
        if (ls >> extra) fail("trailing token '" + extra + "'");
        out.moves.push_back(std::move(m));
    }
    return out;
}

std::string serialize_movie(const MovieScript& s)
{
    std::ostringstream out;
    for (const auto& m : s.moves) {
        switch (m.kind) {
            case MoveKind::R1Pos: out << "R1+ e" << m.args[0]; break;
            case MoveKind::R1Neg: out << "R1- e" << m.args[0]; break;
            case MoveKind::R1Inv: out << "R1inv c" << m.args[0] + 1; break;
            case MoveKind::R2: out << "R2 e" << m.args[0] << " e" << m.args[1]; break;
            case MoveKind::R2Under: out << "R2- e" << m.args[0] << " e" << m.args[1]; break;
            case MoveKind::R2Inv: out << "R2inv c" << m.args[0] + 1 << " c" << m.args[1] + 1; break;
            case MoveKind::R3:
                out << "R3 c" << m.args[0] + 1 << " c" << m.args[1] + 1 << " c" << m.args[2] + 1;
                break;
            case MoveKind::Birth: out << "birth"; break;
            case MoveKind::Death: out << "death"; break;
            case MoveKind::Saddle:
                out << "saddle " << (m.args[0] ? "e" + std::to_string(m.args[0]) : "u") << " "
                    << (m.args[1] ? "e" + std::to_string(m.args[1]) : "u");
                break;
        }
        out << "\n";
    }
    return out.str();
}

// ---- movie runner -------------------------------------------------------------

namespace {

ChainMapWitness identity_witness(std::shared_ptr<ChainCx> c)
{
    ChainMapWitness w;
    w.source = c;
    w.target = c;
    w.map.src = c.get();
    w.map.dst = c.get();
    w.map.cols.assign(c->size(), {});
    for (int g = 0; g < c->size(); ++g) w.map.cols[g].emplace_back(g, Zu(1, 0));
    w.is_chain_map = true;
    w.is_quasi_iso = true;
    w.label = "id";
    return w;
}

// witness assembled from an elimination on the big side plus the face iso
ChainMapWitness face_reduction_witness(Eliminator::Result res, const std::vector<int>& bij,
                                       std::shared_ptr<ChainCx> small_tot, bool big_to_small,
                                       const std::string& label)
{
    ChainMap iso = fix_iso_signs(*res.reduced, *small_tot, bij);
    ChainMapWitness w;
    if (big_to_small) {
        w.source = res.original;
        w.target = small_tot;
        ChainMap m = compose(iso, res.projection);
        m.src = w.source.get();
        m.dst = w.target.get();
        w.map = std::move(m);
    }
    else {
        w.source = small_tot;
        w.target = res.original;
        ChainMap m = compose(res.inclusion, invert_diagonal(iso));
        m.src = w.source.get();
        m.dst = w.target.get();
        w.map = std::move(m);
    }
    w.map.verify_chain_map();
    w.is_chain_map = true;
    w.is_quasi_iso = true;  // elimination plus isomorphism
    w.dq = 0;
    w.label = label;
    return w;
}

struct Step {
    Diagram after;
    std::shared_ptr<KhCube> after_cube;
    std::shared_ptr<ChainCx> after_tot;
    ChainMapWitness w;  // Tot(after) -> Tot(before)
};

std::map<int, int> identity_edge_map(const Diagram& d)
{
    std::map<int, int> out;
    for (int e : d.edges) out[e] = e;
    return out;
}

Step step_r1(const Diagram& cur, const std::shared_ptr<KhCube>& cube, std::shared_ptr<ChainCx> tot,
             int edge, bool positive, Ring ring, int jobs)
{
    Step st;
    st.after = r1_insert(cur, edge, positive);
    int k = st.after.n() - 1;
    auto res_big = all_resolutions(st.after, jobs);
    Cochain eps_big = solve_pinned(st.after, res_big, face_pins(cube->eps, cur.n(), k), jobs);
    st.after_cube = std::make_shared<KhCube>(build_cube(st.after, ring, jobs, &eps_big));
    auto tot_big = tot_complex(*st.after_cube);
    const auto& e = st.after.crossings[k].e;
    int h = positive ? e[2] : e[1];
    Eliminator::Result red = positive ? cancel_merge(*tot_big, *st.after_cube, k, h)
                                      : cancel_split(*tot_big, *st.after_cube, k, h);
    std::map<int, int> em = identity_edge_map(cur);
    auto bij = face_bijection(*red.reduced, *st.after_cube, {{k, positive ? 0 : 1}}, *tot, *cube, em, h,
                              positive ? +1 : -1);
    st.w = face_reduction_witness(std::move(red), bij, tot, true, positive ? "R1+" : "R1-");
    st.after_tot = st.w.source;
    return st;
}

Step step_r1inv(const Diagram& cur, const std::shared_ptr<KhCube>& cube, std::shared_ptr<ChainCx> tot,
                int crossing, Ring ring, int jobs)
{
    Step st;
    int fused = -1;
    st.after = r1_remove(cur, crossing, &fused);
    // locate the loop and its chirality from the removed crossing
    const auto& e = cur.crossings[crossing].e;
    int loop = -1, s0 = -1;
    for (int s = 0; s < 4; ++s)
        if (e[s] == e[(s + 1) % 4]) {
            loop = e[s];
            s0 = s;
        }
    KHLAB_CHECK(loop > 0, "not a twist");
    bool zero_side = (s0 == 0 || s0 == 2);  // loop separates in the 0-resolution
    Eliminator::Result red = zero_side ? cancel_merge(*tot, *cube, crossing, loop)
                                       : cancel_split(*tot, *cube, crossing, loop);
    Cochain eps_small = restrict_assignment(cube->eps, cur.n(), crossing, zero_side ? 0 : 1);
    st.after_cube = std::make_shared<KhCube>(build_cube(st.after, ring, jobs, &eps_small));
    st.after_tot = tot_complex(*st.after_cube);
    std::map<int, int> em;
    int ga = e[(s0 + 2) % 4], gb = e[(s0 + 3) % 4];
    for (int be : cur.edges)
        if (be != loop && be != ga && be != gb) em[be] = be;
    if (ga != gb && fused > 0) {
        em[ga] = fused;
        em[gb] = fused;
    }
    auto bij = face_bijection(*red.reduced, *cube, {{crossing, zero_side ? 0 : 1}}, *st.after_tot,
                              *st.after_cube, em, loop, zero_side ? +1 : -1);
    st.w = face_reduction_witness(std::move(red), bij, st.after_tot, false, "R1inv");
    return st;
}

// locate the clasp circle among the four partial resolutions of two crossings
std::pair<int, int> clasp_circle_position(const KhCube& cube, int k1, int k2,
                                          const std::vector<int>& inner_edges)
{
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            Vertex v = (static_cast<Vertex>(a) << k1) | (static_cast<Vertex>(b) << k2);
            const Resolution& r = cube.res[v];
            for (int c = 0; c < r.ncircles; ++c) {
                if (r.circle_edges[c].empty()) continue;
                bool inner = true;
                for (int e : r.circle_edges[c])
                    inner = inner && std::find(inner_edges.begin(), inner_edges.end(), e) != inner_edges.end();
                if (inner) return {a, b};
            }
        }
    throw internal_error("no clasp circle in any partial resolution");
}

// shared two-round cancellation for a clasp pair; survivors live on the face
// opposite the circle position
Eliminator::Result clasp_reduction(const ChainCx& tot, const KhCube& cube, int k1, int k2,
                                   const std::vector<int>& inner_edges, int* out_bit1, int* out_bit2)
{
    auto [a0, b0] = clasp_circle_position(cube, k1, k2, inner_edges);
    KHLAB_CHECK(a0 + b0 == 1, "clasp circle sits at an unexpected corner");
    int kz = a0 == 0 ? k1 : k2;  // coordinate that is 0 at the circle vertex
    int ko = a0 == 0 ? k2 : k1;
    int loop_edge = inner_edges[0];
    // find an inner edge actually on the circle
    {
        Vertex v = (static_cast<Vertex>(a0) << k1) | (static_cast<Vertex>(b0) << k2);
        const Resolution& r = cube.res[v];
        for (int c = 0; c < r.ncircles; ++c) {
            bool inner = !r.circle_edges[c].empty();
            for (int e : r.circle_edges[c])
                inner = inner && std::find(inner_edges.begin(), inner_edges.end(), e) != inner_edges.end();
            if (inner) loop_edge = r.circle_edges[c][0];
        }
    }
    Eliminator el(tot);
    // round 1: merge along kz within the ko = 1 face
    cancel_merge_into(el, tot, cube, kz, loop_edge, [&](Vertex w) { return ((w >> ko) & 1) == 1; });
    // round 2: split along ko within the kz = 0 face
    cancel_split_into(el, tot, cube, ko, loop_edge, [&](Vertex w) { return ((w >> kz) & 1) == 0; });
    *out_bit1 = kz == k1 ? 1 : 0;  // survivors: kz = 1, ko = 0
    *out_bit2 = kz == k1 ? 0 : 1;
    return el.finish();
}

// multi-coordinate face helpers
Vertex embed_vertex2(Vertex w, int k1, int b1, int k2, int b2)
{
    KHLAB_CHECK(k1 < k2, "coordinates must be ordered");
    return embed_vertex(embed_vertex(w, k1, b1), k2, b2);
}

Cochain restrict_assignment2(const Cochain& eps_big, int big_n, int k1, int b1, int k2, int b2)
{
    Cochain mid = restrict_assignment(eps_big, big_n, k2, b2);
    return restrict_assignment(mid, big_n - 1, k1, b1);
}

Step step_r2(const Diagram& cur, const std::shared_ptr<KhCube>& cube, std::shared_ptr<ChainCx> tot,
             int f, int g, bool f_over, Ring ring, int jobs)
{
    Step st;
    st.after = r2_insert(cur, f, g, f_over);
    int k1 = st.after.n() - 2, k2 = st.after.n() - 1;
    auto res_big = all_resolutions(st.after, jobs);
    // pin the old directions on all four faces
    std::map<int, char> pins;
    auto edges = all_edges(cur.n());
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (int b1 = 0; b1 < 2; ++b1)
            for (int b2 = 0; b2 < 2; ++b2)
                pins[edge_index(st.after.n(), {embed_vertex2(edges[i].lo, k1, b1, k2, b2), edges[i].bit})] =
                    cube->eps.val[i];
    Cochain eps_big = solve_pinned(st.after, res_big, pins, jobs);
    st.after_cube = std::make_shared<KhCube>(build_cube(st.after, ring, jobs, &eps_big));
    auto tot_big = tot_complex(*st.after_cube);
    // the bigon pair: fresh labels occurring at both new crossings
    std::vector<int> inner;
    for (int e2 : st.after.edges) {
        if (cur.occ_map.count(e2)) continue;
        bool at1 = false, at2 = false;
        for (int s = 0; s < 4; ++s) {
            at1 = at1 || st.after.crossings[k1].e[s] == e2;
            at2 = at2 || st.after.crossings[k2].e[s] == e2;
        }
        if (at1 && at2) inner.push_back(e2);
    }
    KHLAB_CHECK(inner.size() == 2, "clasp gadget lost its bigon");
    int bit1 = 0, bit2 = 0;
    Eliminator::Result red = clasp_reduction(*tot_big, *st.after_cube, k1, k2, inner, &bit1, &bit2);
    // translate: survivors carry only old labels on their circles
    std::map<int, int> em = identity_edge_map(cur);
    auto bij = face_bijection(*red.reduced, *st.after_cube, {{k1, bit1}, {k2, bit2}}, *tot, *cube, em, -1, 0);
    st.w = face_reduction_witness(std::move(red), bij, tot, true, f_over ? "R2" : "R2-");
    st.after_tot = st.w.source;
    return st;
}

Step step_r2inv(const Diagram& cur, const std::shared_ptr<KhCube>& cube, std::shared_ptr<ChainCx> tot,
                int c1, int c2, Ring ring, int jobs)
{
    Step st;
    st.after = r2_remove(cur, c1, c2);
    int k1 = std::min(c1, c2), k2 = std::max(c1, c2);
    auto [bgx, bgy] = find_bigon(cur, k1, k2);
    std::vector<int> inner{bgx, bgy};
    int bit1 = 0, bit2 = 0;
    Eliminator::Result red = clasp_reduction(*tot, *cube, k1, k2, inner, &bit1, &bit2);
    Cochain eps_small = restrict_assignment2(cube->eps, cur.n(), k1, bit1, k2, bit2);
    st.after_cube = std::make_shared<KhCube>(build_cube(st.after, ring, jobs, &eps_small));
    st.after_tot = tot_complex(*st.after_cube);
    // every old label still present downstairs translates to itself; fused or
    // vanished labels are recovered through the circles that carry them
    std::map<int, int> em;
    for (int e : cur.edges)
        if (st.after.occ_map.count(e)) em[e] = e;
    auto bij = face_bijection(*red.reduced, *cube, {{k1, bit1}, {k2, bit2}}, *st.after_tot, *st.after_cube,
                              em, -1, 0);
    st.w = face_reduction_witness(std::move(red), bij, st.after_tot, false, "R2inv");
    return st;
}

}  // namespace

namespace {

Step step_birth(const Diagram& cur, const std::shared_ptr<KhCube>& cube, std::shared_ptr<ChainCx> tot,
                Ring ring, int jobs)
{
    Step st;
    st.after = add_loop(cur);
    st.after_cube = std::make_shared<KhCube>(build_cube(st.after, ring, jobs, &cube->eps));
    st.after_tot = tot_complex(*st.after_cube);
    auto top_loop = [&](const Resolution& r, bool based) {
        int id = r.ncircles - 1 - (based ? 1 : 0);
        KHLAB_CHECK(id >= 0 && r.circle_ports[id].empty(), "expected a loop circle");
        return id;
    };
    // projection onto generators not containing the new loop
    ChainMapWitness w;
    w.source = st.after_tot;
    w.target = tot;
    w.map.src = w.source.get();
    w.map.dst = w.target.get();
    w.map.dj = -1;
    w.map.cols.assign(st.after_tot->size(), {});
    for (int g = 0; g < st.after_tot->size(); ++g) {
        Vertex v = st.after_tot->gens[g].v;
        Mono m = st.after_tot->gens[g].m;
        int loop = top_loop(st.after_cube->res[v], st.after.has_basepoint());
        if ((m >> loop) & 1) continue;
        // other circles keep their ids (the new loop sorts after them)
        int t = tot->find({v, m, 0}, {st.after_tot->deg[g].first, st.after_tot->deg[g].second - 1});
        KHLAB_CHECK(t >= 0, "image generator missing");
        w.map.cols[g].emplace_back(t, Zu(1, 0));
    }
    w.map.verify_chain_map();
    w.is_chain_map = true;
    w.is_quasi_iso = false;
    w.dq = -1;
    w.label = "birth";
    st.w = std::move(w);
    return st;
}

Step step_death(const Diagram& cur, const std::shared_ptr<KhCube>& cube, std::shared_ptr<ChainCx> tot,
                Ring ring, int jobs)
{
    Step st;
    st.after = remove_loop(cur);
    st.after_cube = std::make_shared<KhCube>(build_cube(st.after, ring, jobs, &cube->eps));
    st.after_tot = tot_complex(*st.after_cube);
    // inclusion x -> x ∪ loop into the bigger complex
    ChainMapWitness w;
    w.source = st.after_tot;
    w.target = tot;
    w.map.src = w.source.get();
    w.map.dst = w.target.get();
    w.map.dj = -1;
    w.map.cols.assign(st.after_tot->size(), {});
    for (int g = 0; g < st.after_tot->size(); ++g) {
        Vertex v = st.after_tot->gens[g].v;
        Mono m = st.after_tot->gens[g].m;
        int loop = cube->res[v].ncircles - 1 - (cur.has_basepoint() ? 1 : 0);
        KHLAB_CHECK(loop >= 0 && cube->res[v].circle_ports[loop].empty(), "expected a loop circle");
        int t = tot->find({v, m | (1ULL << loop), 0},
                          {st.after_tot->deg[g].first, st.after_tot->deg[g].second - 1});
        KHLAB_CHECK(t >= 0, "image generator missing");
        w.map.cols[g].emplace_back(t, Zu(1, 0));
    }
    w.map.verify_chain_map();
    w.is_chain_map = true;
    w.is_quasi_iso = false;
    w.dq = -1;
    w.label = "death";
    st.w = std::move(w);
    return st;
}

Step step_saddle(const Diagram& cur, const std::shared_ptr<KhCube>& cube, std::shared_ptr<ChainCx> tot,
                 int ea, int eb, Ring ring, int jobs)
{
    Step st;
    SaddleData sd = saddle(cur, ea, eb);
    st.after = sd.d1;
    int k = sd.trace.n() - 1;
    auto res_trace = all_resolutions(sd.trace, jobs);
    Cochain eps_trace = solve_pinned(sd.trace, res_trace, face_pins_one_side(cube->eps, cur.n(), k, 0), jobs);
    KhCube trace_cube = build_cube(sd.trace, ring, jobs, &eps_trace);
    auto tot_trace = tot_complex(trace_cube);
    // face restrictions of the trace complex
    auto face_complex = [&](int bit) {
        auto c = std::make_shared<ChainCx>();
        c->ring = tot_trace->ring;
        std::vector<int> pos(tot_trace->size(), -1);
        for (int g = 0; g < tot_trace->size(); ++g) {
            if (((tot_trace->gens[g].v >> k) & 1) != static_cast<Vertex>(bit)) continue;
            pos[g] = c->size();
            c->gens.push_back(tot_trace->gens[g]);
            c->deg.push_back(tot_trace->deg[g]);
        }
        c->dcol.assign(c->gens.size(), {});
        for (int g = 0; g < tot_trace->size(); ++g) {
            if (pos[g] < 0) continue;
            for (auto& [t, v] : tot_trace->dcol[g])
                if (pos[t] >= 0) c->dcol[pos[g]].emplace_back(pos[t], v);
        }
        c->sort_canonical();
        return c;
    };
    auto f0 = face_complex(0), f1 = face_complex(1);
    // regrade the faces into the small diagrams' normalizations
    auto regrade = [](ChainCx& c, int di, int dj) {
        for (auto& dg : c.deg) {
            dg.first += di;
            dg.second += dj;
        }
        std::map<Bideg, std::pair<int, int>> r2;
        for (auto& [ij, rg] : c.ranges) r2[{ij.first + di, ij.second + dj}] = rg;
        c.ranges = std::move(r2);
    };
    Cochain eps1 = restrict_assignment(eps_trace, sd.trace.n(), k, 1);
    st.after_cube = std::make_shared<KhCube>(build_cube(st.after, ring, jobs, &eps1));
    st.after_tot = tot_complex(*st.after_cube);
    regrade(*f0, cur.n_minus - sd.trace.n_minus, -1 + 3 * (sd.trace.n_minus - cur.n_minus));
    regrade(*f1, st.after.n_minus - sd.trace.n_minus + 1, 3 * (sd.trace.n_minus - st.after.n_minus) - 2);
    std::map<int, int> em0;
    for (int e : cur.edges)
        if (sd.trace.occ_map.count(e)) em0[e] = e;
    ChainMap iso0 = fix_iso_signs(*f0, *tot,
                                  face_bijection(*f0, trace_cube, {{k, 0}}, *tot, *cube, em0, -1, 0));
    std::map<int, int> em1;
    for (int e : st.after.edges)
        if (sd.trace.occ_map.count(e)) em1[e] = e;
    ChainMap iso1 = fix_iso_signs(*f1, *st.after_tot,
                                  face_bijection(*f1, trace_cube, {{k, 1}}, *st.after_tot, *st.after_cube,
                                                 em1, -1, 0));
    // the saddle components: trace edge blocks in direction k, standard sign
    // stripped (the strip makes the square anticommutation cancel)
    ChainMap mid;
    mid.src = f1.get();
    mid.dst = f0.get();
    mid.cols.assign(f1->size(), {});
    int dj = 0, di = 0;
    bool deg_set = false;
    for (int g = 0; g < f1->size(); ++g) {
        Vertex hi = f1->gens[g].v;
        Vertex lo = hi & ~(1u << k);
        const SparseZu& blk = trace_cube.blocks.at({lo, k});
        for (auto& [rc, val] : blk.v) {
            if (static_cast<Mono>(rc.first) != f1->gens[g].m) continue;
            int t = -1;
            for (int cand = 0; cand < f0->size() && t < 0; ++cand)
                if (f0->gens[cand].v == lo && f0->gens[cand].m == static_cast<Mono>(rc.second)) t = cand;
            KHLAB_CHECK(t >= 0, "saddle image missing");
            mid.cols[g].emplace_back(t, val.fold(ring));
            int jshift = f0->deg[t].second - f1->deg[g].second;
            int ishift = f0->deg[t].first - f1->deg[g].first;
            if (!deg_set) {
                dj = jshift;
                di = ishift;
                deg_set = true;
            }
            else
                KHLAB_CHECK(dj == jshift && di == ishift, "saddle map has mixed degree shifts");
        }
    }
    mid.dj = dj;
    mid.di = di;
    mid.verify_chain_map();
    ChainMapWitness w;
    w.source = st.after_tot;
    w.target = tot;
    ChainMap m = compose(compose(iso0, mid), invert_diagonal(iso1));
    m.src = w.source.get();
    m.dst = w.target.get();
    w.map = std::move(m);
    w.map.verify_chain_map();
    w.is_chain_map = true;
    w.is_quasi_iso = false;
    w.dq = dj;
    w.label = "saddle";
    st.w = std::move(w);
    return st;
}

Step step_r3(const Diagram& cur, const std::shared_ptr<KhCube>& cube, std::shared_ptr<ChainCx> tot,
             int ca, int cb, int cc, Ring ring, int jobs)
{
    (void)cube;
    Step st;
    st.after = r3_rewrite(cur, ca, cb, cc);
    st.after_cube = std::make_shared<KhCube>(build_cube(st.after, ring, jobs));
    st.after_tot = tot_complex(*st.after_cube);
    Eliminator el_before(*tot);
    el_before.reduce_fully();
    Eliminator el_after(*st.after_tot);
    el_after.reduce_fully();
    Eliminator::Result rb = el_before.finish();
    Eliminator::Result ra = el_after.finish();
    auto iso_opt = canonical_match(*ra.reduced, *rb.reduced);
    KHLAB_CHECK(iso_opt.has_value(), "no matching between the reduced triangle complexes");
    ChainMap iso = *iso_opt;
    ChainMapWitness w;
    w.source = ra.original;
    w.target = rb.original;
    ChainMap m = compose(rb.inclusion, compose(iso, ra.projection));
    m.src = w.source.get();
    m.dst = w.target.get();
    w.map = std::move(m);
    w.map.verify_chain_map();
    w.is_chain_map = true;
    w.is_quasi_iso = true;
    w.dq = 0;
    w.label = "R3";
    // re-point the state at the copies held by the witness
    st.after_tot = ra.original;
    // the target copy must be the caller's complex; contents are identical
    KHLAB_CHECK(rb.original->gens == tot->gens, "triangle reduction altered the complex");
    w.target = tot;
    w.map.dst = tot.get();
    st.w = std::move(w);
    return st;
}

}  // namespace

MovieRunner::MovieRunner(const Diagram& start, Ring ring, int jobs) : ring_(ring), jobs_(jobs), cur_(start)
{
    KHLAB_CHECK(ring == Ring::odd || ring == Ring::even, "movie witnesses run over the integer theories");
    cur_cube_ = std::make_shared<KhCube>(build_cube(cur_, ring_, jobs_));
    cur_tot_ = tot_complex(*cur_cube_);
    total_ = identity_witness(cur_tot_);
}

void MovieRunner::chain_into(ChainMapWitness step)
{
    total_ = compose_witnesses(total_, step);
}

void MovieRunner::apply(const MovieMove& m)
{
    Step st;
    switch (m.kind) {
        case MoveKind::R1Pos: st = step_r1(cur_, cur_cube_, cur_tot_, m.args[0], true, ring_, jobs_); break;
        case MoveKind::R1Neg: st = step_r1(cur_, cur_cube_, cur_tot_, m.args[0], false, ring_, jobs_); break;
        case MoveKind::R1Inv: st = step_r1inv(cur_, cur_cube_, cur_tot_, m.args[0], ring_, jobs_); break;
        case MoveKind::R2: st = step_r2(cur_, cur_cube_, cur_tot_, m.args[0], m.args[1], true, ring_, jobs_); break;
        case MoveKind::R2Under:
            st = step_r2(cur_, cur_cube_, cur_tot_, m.args[0], m.args[1], false, ring_, jobs_);
            break;
        case MoveKind::R2Inv:
            st = step_r2inv(cur_, cur_cube_, cur_tot_, m.args[0], m.args[1], ring_, jobs_);
            break;
        case MoveKind::R3:
            st = step_r3(cur_, cur_cube_, cur_tot_, m.args[0], m.args[1], m.args[2], ring_, jobs_);
            break;
        case MoveKind::Birth:
            st = step_birth(cur_, cur_cube_, cur_tot_, ring_, jobs_);
            ++births_;
            break;
        case MoveKind::Death:
            st = step_death(cur_, cur_cube_, cur_tot_, ring_, jobs_);
            ++deaths_;
            break;
        case MoveKind::Saddle:
            st = step_saddle(cur_, cur_cube_, cur_tot_, m.args[0], m.args[1], ring_, jobs_);
            ++saddles_;
            break;
    }
    chain_into(st.w);
    cur_ = st.after;
    cur_cube_ = st.after_cube;
    cur_tot_ = st.after_tot;
}

ChainMapWitness reidemeister_witness(const Diagram& before, const MovieMove& m, Ring ring, int jobs)
{
    MovieRunner r(before, ring, jobs);
    r.apply(m);
    return r.witness();
}

ChainMapWitness movie_map(const Diagram& start, const MovieScript& script, Ring ring, int jobs)
{
    MovieRunner r(start, ring, jobs);
    for (const auto& m : script.moves) r.apply(m);
    return r.witness();
}

}  // namespace khlab
