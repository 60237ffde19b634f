#include "khlab/complexes.hpp"

#include <algorithm>

#include "khlab/homology.hpp"

namespace khlab {

int ChainCx::find(const GenRef& g, const Bideg& dg) const
{
    auto it = ranges.find(dg);
    if (it == ranges.end()) return -1;
    for (int k = it->second.first; k < it->second.second; ++k)
        if (gens[k] == g) return k;
    return -1;
}

std::vector<int> ChainCx::block(int i, int j) const
{
    auto it = ranges.find({i, j});
    std::vector<int> out;
    if (it == ranges.end()) return out;
    for (int k = it->second.first; k < it->second.second; ++k) out.push_back(k);
    return out;
}

std::vector<Bideg> ChainCx::bidegrees() const
{
    std::vector<Bideg> out;
    for (auto& [ij, r] : ranges) out.push_back(ij);
    return out;
}

Zu ChainCx::entry(int row, int col) const
{
    for (auto& [t, v] : dcol[col])
        if (t == row) return v;
    return Zu();
}

void ChainCx::sort_canonical()
{
    std::vector<int> order(gens.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (deg[a] != deg[b]) return deg[a] < deg[b];
        return gens[a] < gens[b];
    });
    std::vector<int> pos(gens.size());
    for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = static_cast<int>(k);
    std::vector<GenRef> g2(gens.size());
    std::vector<Bideg> d2(gens.size());
    std::vector<std::vector<std::pair<int, Zu>>> c2(gens.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        g2[k] = gens[order[k]];
        d2[k] = deg[order[k]];
        for (auto& [t, v] : dcol[order[k]]) c2[k].emplace_back(pos[t], v);
        std::sort(c2[k].begin(), c2[k].end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    gens = std::move(g2);
    deg = std::move(d2);
    dcol = std::move(c2);
    ranges.clear();
    for (int k = 0; k < size(); ++k) {
        auto [it, fresh] = ranges.emplace(deg[k], std::make_pair(k, k + 1));
        if (!fresh) it->second.second = k + 1;
    }
}

void ChainCx::check_degrees() const
{
    for (int g = 0; g < size(); ++g)
        for (auto& [t, v] : dcol[g]) {
            (void)v;
            KHLAB_CHECK(deg[t].first == deg[g].first + 1 && deg[t].second == deg[g].second,
                        "differential entry breaks the bigrading");
        }
}

void ChainCx::check_d_squared() const
{
    for (int g = 0; g < size(); ++g) {
        std::map<int, Zu> acc;
        for (auto& [t, v] : dcol[g])
            for (auto& [t2, v2] : dcol[t]) {
                auto& slot = acc[t2];
                slot += v2 * v;
                if (ring == Ring::mod2) slot = slot.fold(Ring::mod2);
                if (slot.is_zero()) acc.erase(t2);
            }
        KHLAB_CHECK(acc.empty(), "differential does not square to zero");
    }
}

KhCube build_cube(const Diagram& d, Ring ring, int jobs, const Cochain* eps_override,
                  const std::vector<int>* edge_priority)
{
    if (d.n() > 16) throw input_error("diagram too large: " + std::to_string(d.n()) + " crossings");
    KhCube cube;
    cube.d = d;
    cube.ring = ring;
    cube.n = d.n();
    cube.res = all_resolutions(d, jobs);

    auto squares = all_squares(cube.n);
    std::vector<int> types(squares.size(), 0);
    FaceConstraints fc;
    fc.n = cube.n;
    fc.target.assign(squares.size(), -1);
    parallel_for(squares.size(), jobs, [&](std::size_t k) {
        FaceType t = classify_face(d, cube.res, squares[k]);
        types[k] = static_cast<int>(t);
        fc.target[k] = (t == FaceType::A) ? 1 : (t == FaceType::C ? 0 : -1);
    });
    cube.face_types = std::move(types);
    cube.eps = eps_override ? *eps_override : solve_coboundary(fc, edge_priority);
    // the solution must hit every constrained face
    Cochain delta = coboundary(cube.eps);
    for (std::size_t k = 0; k < squares.size(); ++k)
        if (fc.target[k] >= 0)
            KHLAB_CHECK(delta.val[k] == fc.target[k], "edge assignment misses a constraint");

    auto edges = all_edges(cube.n);
    std::vector<std::pair<Edge, SparseZu>> built(edges.size());
    parallel_for(edges.size(), jobs, [&](std::size_t k) {
        const Edge& e = edges[k];
        SparseZu blk = edge_block_raw(d, cube.res[e.lo], cube.res[e.hi()], e.bit, Ring::unified);
        if (cube.eps.val[edge_index(cube.n, e)]) blk = blk.times(Zu::xi());
        built[k] = {e, blk.fold(ring)};
    });
    for (auto& [e, blk] : built) cube.blocks.emplace(e, std::move(blk));
    return cube;
}

ChainCx cochain_complex(const KhCube& cube)
{
    ChainCx c;
    c.ring = cube.ring;
    std::map<std::pair<Vertex, Mono>, int> index;
    for (Vertex v = 0; v < (1u << cube.n); ++v)
        for (Mono m = 0; m < (1ULL << cube.res[v].ncircles); ++m) {
            index[{v, m}] = c.size();
            c.gens.push_back({v, m, 0});
            c.deg.push_back({cube.i_of(v), cube.j_of(v, m)});
        }
    c.dcol.assign(c.gens.size(), {});
    for (auto& [e, blk] : cube.blocks) {
        int sign = standard_sign(e.hi(), e.lo);
        for (auto& [rc, val] : blk.v) {
            Zu x = sign ? -val : val;
            x = x.fold(cube.ring);
            if (x.is_zero()) continue;
            int col = index.at({e.lo, static_cast<Mono>(rc.second)});
            int row = index.at({e.hi(), static_cast<Mono>(rc.first)});
            c.dcol[col].emplace_back(row, x);
        }
    }
    c.sort_canonical();
    return c;
}

ChainCx build_complex(const Diagram& d, Ring ring, int jobs)
{
    return cochain_complex(build_cube(d, ring, jobs));
}

namespace {

ChainCx filter_gens(const ChainCx& c, const KhCube& cube, bool keep_basepoint, int jshift)
{
    KHLAB_CHECK(cube.d.has_basepoint(), "no basepoint");
    ChainCx out;
    out.ring = c.ring;
    std::vector<int> newpos(c.size(), -1);
    for (int g = 0; g < c.size(); ++g) {
        int bp = cube.res[c.gens[g].v].basepoint_circle();
        bool has = (c.gens[g].m >> bp) & 1;
        if (has != keep_basepoint) continue;
        newpos[g] = out.size();
        out.gens.push_back(c.gens[g]);
        out.deg.push_back({c.deg[g].first, c.deg[g].second + jshift});
    }
    out.dcol.assign(out.gens.size(), {});
    for (int g = 0; g < c.size(); ++g) {
        if (newpos[g] < 0) continue;
        for (auto& [t, v] : c.dcol[g]) {
            if (newpos[t] < 0) {
                // leaving the span is fine for a quotient, fatal for a subcomplex
                KHLAB_CHECK(!keep_basepoint, "basepoint span is not a subcomplex");
                continue;
            }
            out.dcol[newpos[g]].emplace_back(newpos[t], v);
        }
    }
    out.sort_canonical();
    return out;
}

}  // namespace

ChainCx reduced_subcomplex(const ChainCx& c, const KhCube& cube)
{
    return filter_gens(c, cube, true, +1);
}

ChainCx reduced_quotient(const ChainCx& c, const KhCube& cube)
{
    return filter_gens(c, cube, false, -1);
}

ChainCx doubled_z_form(const KhCube& cube)
{
    KHLAB_CHECK(cube.ring == Ring::unified, "doubling needs the unified cube");
    ChainCx c;
    c.ring = Ring::even;  // plain integer arithmetic
    std::map<std::tuple<Vertex, Mono, int>, int> index;
    for (Vertex v = 0; v < (1u << cube.n); ++v)
        for (Mono m = 0; m < (1ULL << cube.res[v].ncircles); ++m)
            for (int x = 0; x < 2; ++x) {
                index[{v, m, x}] = c.size();
                c.gens.push_back({v, m, static_cast<char>(x)});
                c.deg.push_back({cube.i_of(v), cube.j_of(v, m)});
            }
    c.dcol.assign(c.gens.size(), {});
    for (auto& [e, blk] : cube.blocks) {
        int sign = standard_sign(e.hi(), e.lo);
        for (auto& [rc, val] : blk.v) {
            Zu x = sign ? -val : val;
            for (int sheet = 0; sheet < 2; ++sheet) {
                int col = index.at({e.lo, static_cast<Mono>(rc.second), sheet});
                if (x.a)
                    c.dcol[col].emplace_back(index.at({e.hi(), static_cast<Mono>(rc.first), sheet}), Zu(x.a, 0));
                if (x.b)
                    c.dcol[col].emplace_back(index.at({e.hi(), static_cast<Mono>(rc.first), 1 - sheet}), Zu(x.b, 0));
            }
        }
    }
    c.sort_canonical();
    return c;
}

CheckReport unified_pullback_check(const Diagram& d, int jobs)
{
    CheckReport rep;
    KhCube cu = build_cube(d, Ring::unified, jobs);
    ChainCx u = cochain_complex(cu);
    // rebuild even/odd with the same edge assignment so entries correspond
    KhCube ce = build_cube(d, Ring::even, jobs, &cu.eps);
    KhCube co = build_cube(d, Ring::odd, jobs, &cu.eps);
    ChainCx e = cochain_complex(ce);
    ChainCx o = cochain_complex(co);
    rep.require(e.size() == u.size() && o.size() == u.size(), "generator sets disagree");
    long long checked = 0;
    for (int g = 0; g < u.size(); ++g) {
        std::map<int, Zu> eu, oo;
        for (auto& [t, v] : e.dcol[g]) eu[t] = v;
        for (auto& [t, v] : o.dcol[g]) oo[t] = v;
        std::map<int, std::pair<long long, long long>> pair_img;
        for (auto& [t, v] : u.dcol[g]) pair_img[t] = {v.at_plus1(), v.at_minus1()};
        for (auto& [t, ab] : pair_img) {
            ++checked;
            long long ev = eu.count(t) ? eu[t].a : 0;
            long long ov = oo.count(t) ? oo[t].a : 0;
            rep.require(ab.first == ev && ab.second == ov, "specialization disagrees with even/odd entry");
            rep.require(((ab.first - ab.second) % 2) == 0, "pullback parity violated");
        }
        for (auto& [t, v] : eu)
            rep.require(pair_img.count(t) || v.is_zero(), "even entry missing from unified");
        for (auto& [t, v] : oo)
            rep.require(pair_img.count(t) || v.is_zero(), "odd entry missing from unified");
    }
    rep.stats["entries"] = checked;
    return rep;
}

CheckReport ses_even_unified_odd(const Diagram& d, SesVariant variant, int jobs)
{
    CheckReport rep;
    KhCube cu = build_cube(d, Ring::unified, jobs);
    ChainCx dz = doubled_z_form(cu);
    KhCube ce = build_cube(d, variant == SesVariant::e_u_o ? Ring::even : Ring::odd, jobs, &cu.eps);
    KhCube co = build_cube(d, variant == SesVariant::e_u_o ? Ring::odd : Ring::even, jobs, &cu.eps);
    ChainCx first = cochain_complex(ce);   // kernel side
    ChainCx last = cochain_complex(co);    // quotient side

    // inclusion: x -> (1 ± xi)·x, i.e. sheet0 + (±1)·sheet1
    int sgn = variant == SesVariant::e_u_o ? +1 : -1;
    ChainMap inc;
    inc.src = &first;
    inc.dst = &dz;
    inc.cols.assign(first.gens.size(), {});
    for (int g = 0; g < first.size(); ++g) {
        GenRef r0 = first.gens[g];
        r0.xi = 0;
        GenRef r1 = first.gens[g];
        r1.xi = 1;
        int t0 = dz.find(r0, first.deg[g]);
        int t1 = dz.find(r1, first.deg[g]);
        KHLAB_CHECK(t0 >= 0 && t1 >= 0, "doubled generator not found");
        inc.cols[g].emplace_back(t0, Zu(1, 0));
        inc.cols[g].emplace_back(t1, Zu(sgn, 0));
    }
    // specialization: sheet0 -> x, sheet1 -> ∓x
    ChainMap spec;
    spec.src = &dz;
    spec.dst = &last;
    spec.cols.assign(dz.gens.size(), {});
    for (int g = 0; g < dz.size(); ++g) {
        GenRef r = dz.gens[g];
        int sheet = r.xi;
        r.xi = 0;
        int t = last.find(r, dz.deg[g]);
        KHLAB_CHECK(t >= 0, "specialized generator not found");
        spec.cols[g].emplace_back(t, Zu(sheet == 0 ? 1 : -sgn, 0));
    }
    try {
        inc.verify_chain_map();
        spec.verify_chain_map();
    }
    catch (const std::exception& ex) {
        rep.require(false, ex.what());
        return rep;
    }
    // injectivity of inc, surjectivity of spec, exactness in the middle
    for (auto [i, j] : first.bidegrees()) {
        auto blockc = first.block(i, j);
        auto dblock = dz.block(i, j);
        ZMat A(static_cast<int>(dblock.size()), static_cast<int>(blockc.size()));
        std::map<int, int> pos;
        for (std::size_t k = 0; k < dblock.size(); ++k) pos[dblock[k]] = static_cast<int>(k);
        for (std::size_t c = 0; c < blockc.size(); ++c)
            for (auto& [t, v] : inc.cols[blockc[c]]) A.a[pos.at(t)][c] += BigInt(v.a);
        SnfResult s = smith_normal_form(A);
        rep.require(s.rank == static_cast<int>(blockc.size()), "inclusion not injective");
    }
    for (auto [i, j] : last.bidegrees()) {
        auto lblock = last.block(i, j);
        auto dblock = dz.block(i, j);
        std::map<int, int> pos;
        for (std::size_t k = 0; k < lblock.size(); ++k) pos[lblock[k]] = static_cast<int>(k);
        ZMat B(static_cast<int>(lblock.size()), static_cast<int>(dblock.size()));
        for (std::size_t c = 0; c < dblock.size(); ++c)
            for (auto& [t, v] : spec.cols[dblock[c]]) B.a[pos.at(t)][c] += BigInt(v.a);
        SnfResult s = smith_normal_form(B);
        bool onto = s.rank == static_cast<int>(lblock.size());
        for (auto& dk : s.diag) onto = onto && dk.is_unit();
        rep.require(onto, "specialization not surjective");
    }
    rep.require(exact_at_middle(inc, spec), "sequence not exact in the middle");
    rep.stats["bidegrees"] = static_cast<long long>(dz.bidegrees().size());
    return rep;
}

CheckReport odd_splitting_check(const Diagram& d, int jobs)
{
    CheckReport rep;
    KHLAB_CHECK(d.has_basepoint(), "splitting check needs a basepoint");
    KhCube cube = build_cube(d, Ring::odd, jobs);
    ChainCx full = cochain_complex(cube);
    ChainCx red = reduced_subcomplex(full, cube);
    Homology hf(full, jobs, false), hr(red, jobs, false);
    std::map<Bideg, char> degrees;
    for (auto ij : hf.support()) degrees[ij] = 1;
    for (auto ij : hr.support()) {
        degrees[{ij.first, ij.second - 1}] = 1;
        degrees[{ij.first, ij.second + 1}] = 1;
    }
    for (auto& [ij, _] : degrees) {
        HomGroup lhs = hf.group(ij.first, ij.second);
        HomGroup rhs = direct_sum(hr.group(ij.first, ij.second - 1), hr.group(ij.first, ij.second + 1));
        rep.require(lhs.iso(rhs), "splitting fails at (" + std::to_string(ij.first) + "," +
                                      std::to_string(ij.second) + "): " + lhs.str() + " vs " + rhs.str());
    }
    rep.stats["bidegrees"] = static_cast<long long>(degrees.size());
    return rep;
}

CheckReport reduced_ses_check(const Diagram& d, Ring ring, int jobs)
{
    CheckReport rep;
    KHLAB_CHECK(d.has_basepoint(), "reduced check needs a basepoint");
    KhCube cube = build_cube(d, ring, jobs);
    ChainCx full = cochain_complex(cube);
    ChainCx sub = reduced_subcomplex(full, cube);
    ChainCx quo = reduced_quotient(full, cube);
    // inclusion (j+1 relabel) and projection (j-1 relabel)
    ChainMap inc;
    inc.src = &sub;
    inc.dst = &full;
    inc.dj = -1;  // reduced j+1 -> unreduced j
    inc.cols.assign(sub.gens.size(), {});
    for (int g = 0; g < sub.size(); ++g) {
        int t = full.find(sub.gens[g], {sub.deg[g].first, sub.deg[g].second - 1});
        KHLAB_CHECK(t >= 0, "reduced generator missing upstairs");
        inc.cols[g].emplace_back(t, Zu(1, 0));
    }
    ChainMap proj;
    proj.src = &full;
    proj.dst = &quo;
    proj.dj = -1;  // unreduced j -> reduced j-1
    proj.cols.assign(full.gens.size(), {});
    for (int g = 0; g < full.size(); ++g) {
        int t = quo.find(full.gens[g], {full.deg[g].first, full.deg[g].second - 1});
        if (t >= 0) proj.cols[g].emplace_back(t, Zu(1, 0));
    }
    try {
        inc.verify_chain_map();
        proj.verify_chain_map();
        sub.check_d_squared();
        quo.check_d_squared();
    }
    catch (const std::exception& ex) {
        rep.require(false, ex.what());
        return rep;
    }
    rep.require(exact_at_middle(inc, proj), "reduced sequence not exact in the middle");
    // rank bookkeeping: half of the generators carry the basepoint circle
    long long nf = full.size(), ns = sub.size(), nq = quo.size();
    rep.require(ns == nq && ns + nq == nf, "reduced generator counts are off");
    rep.stats["generators"] = nf;
    return rep;
}

}  // namespace khlab
