#include "khlab/burnside.hpp"

#include <algorithm>
#include <sstream>

namespace khlab {

namespace {

int elem_sign(const SignedCorrespondence& c, Mono src, Mono dst)
{
    for (const auto& e : c.elems)
        if (e.src == src && e.dst == dst) return e.sign;
    return 0;
}

std::map<PathElem, PathElem> match_square(const SignedBurnsideFunctor& f, const Square& s)
{
    auto via1 = composite_paths(f, s, true);
    auto via2 = composite_paths(f, s, false);
    // group by (src, dst)
    std::map<std::pair<Mono, Mono>, std::vector<PathElem>> g1, g2;
    for (auto& p : via1) g1[{p.src, p.dst}].push_back(p);
    for (auto& p : via2) g2[{p.src, p.dst}].push_back(p);
    KHLAB_CHECK(g1.size() == g2.size(), "square composites have different supports");
    std::map<PathElem, PathElem> out;
    for (auto& [key, a] : g1) {
        auto it = g2.find(key);
        KHLAB_CHECK(it != g2.end(), "square composites have different supports");
        auto& b = it->second;
        KHLAB_CHECK(a.size() == b.size() && a.size() <= 2, "square fibers must match with at most 2 elements");
        for (auto& p : a) {
            int hits = 0;
            PathElem target{};
            for (auto& q : b)
                if (q.sign == p.sign) {
                    ++hits;
                    target = q;
                }
            KHLAB_CHECK(hits == 1, "no unique sign-respecting matching on a square");
            out[p] = target;
        }
    }
    return out;
}

}  // namespace

SignedBurnsideFunctor build_functor(const KhCube& cube)
{
    KHLAB_CHECK(cube.ring == Ring::odd, "the signed functor reads the odd cube");
    SignedBurnsideFunctor f;
    f.n = cube.n;
    f.n_minus = cube.d.n_minus;
    f.stable_shift = -cube.d.n_minus;
    f.objects.resize(1u << f.n);
    for (Vertex v = 0; v < (1u << f.n); ++v) {
        f.objects[v] = khovanov_generators(cube.res[v]);
        for (Mono m : f.objects[v]) f.qdeg[{v, m}] = cube.j_of(v, m);
    }
    for (auto& [e, blk] : cube.blocks) {
        SignedCorrespondence corr;
        corr.src_vertex = e.hi();
        corr.dst_vertex = e.lo;
        for (auto& [rc, val] : blk.v) {
            KHLAB_CHECK(val.b == 0 && (val.a == 1 || val.a == -1), "odd edge entry is not a sign");
            corr.elems.push_back({static_cast<Mono>(rc.first), static_cast<Mono>(rc.second),
                                  static_cast<int>(val.a)});
        }
        std::sort(corr.elems.begin(), corr.elems.end());
        f.edges[e] = std::move(corr);
    }
    for (const Square& s : all_squares(f.n)) f.squares[s] = match_square(f, s);
    return f;
}

std::vector<PathElem> composite_paths(const SignedBurnsideFunctor& f, const Square& s, bool through_b1)
{
    int bfirst = through_b1 ? s.b1 : s.b2;   // bit removed second (lower edge)
    int bsecond = through_b1 ? s.b2 : s.b1;  // bit removed first (upper edge)
    Vertex mid = s.lo | (1u << bfirst);
    const SignedCorrespondence& top = f.edges.at({mid, bsecond});  // hi -> mid
    const SignedCorrespondence& bot = f.edges.at({s.lo, bfirst});  // mid -> lo
    std::vector<PathElem> out;
    for (const auto& t : top.elems)
        for (const auto& b : bot.elems)
            if (t.dst == b.src) out.push_back({t.src, t.dst, b.dst, t.sign * b.sign});
    std::sort(out.begin(), out.end());
    return out;
}

HexReport check_hexagons(const SignedBurnsideFunctor& f)
{
    HexReport rep;
    auto leg_sign = [&](Vertex hi, int bit, Mono src, Mono dst) {
        return elem_sign(f.edges.at({static_cast<Vertex>(hi & ~(1u << bit)), bit}), src, dst);
    };
    auto apply_square = [&](const Square& sq, Vertex mid_now, PathElem pe) -> PathElem {
        const auto& table = f.squares.at(sq);
        bool via_b1 = mid_now == (sq.lo | (1u << sq.b1));
        if (via_b1) return table.at(pe);
        for (auto& [k, v] : table)
            if (v.src == pe.src && v.mid == pe.mid && v.dst == pe.dst && v.sign == pe.sign) return k;
        throw internal_error("square matching not invertible");
    };
    for (const Cube3& c3 : all_cubes3(f.n)) {
        Vertex top = c3.lo | (1u << c3.b1) | (1u << c3.b2) | (1u << c3.b3);
        struct Path {
            Mono x, p, q, z;
        };
        std::vector<Path> start;
        {
            Vertex m1 = top & ~(1u << c3.b1);
            Vertex m2 = m1 & ~(1u << c3.b2);
            const auto& e1 = f.edges.at({m1, c3.b1});
            const auto& e2 = f.edges.at({m2, c3.b2});
            const auto& e3 = f.edges.at({c3.lo, c3.b3});
            for (auto& a : e1.elems)
                for (auto& b : e2.elems) {
                    if (a.dst != b.src) continue;
                    for (auto& c : e3.elems)
                        if (b.dst == c.src) start.push_back({a.src, a.dst, b.dst, c.dst});
                }
        }
        rep.faces_checked++;
        for (const Path& p0 : start) {
            int order[3] = {c3.b1, c3.b2, c3.b3};
            Path cur = p0;
            // six adjacent transpositions of the removal order return to it
            for (int step = 0; step < 6; ++step) {
                if (step % 2 == 0) {
                    Vertex b = top & ~(1u << order[0]) & ~(1u << order[1]);
                    Square sq{b, std::min(order[0], order[1]), std::max(order[0], order[1])};
                    Vertex mid_now = top & ~(1u << order[0]);
                    int s1 = leg_sign(top, order[0], cur.x, cur.p);
                    int s2 = leg_sign(mid_now, order[1], cur.p, cur.q);
                    PathElem img = apply_square(sq, mid_now, {cur.x, cur.p, cur.q, s1 * s2});
                    cur.p = img.mid;
                    std::swap(order[0], order[1]);
                }
                else {
                    Vertex subtop = top & ~(1u << order[0]);
                    Vertex b = subtop & ~(1u << order[1]) & ~(1u << order[2]);
                    Square sq{b, std::min(order[1], order[2]), std::max(order[1], order[2])};
                    Vertex mid_now = subtop & ~(1u << order[1]);
                    int s1 = leg_sign(subtop, order[1], cur.p, cur.q);
                    int s2 = leg_sign(mid_now, order[2], cur.q, cur.z);
                    PathElem img = apply_square(sq, mid_now, {cur.p, cur.q, cur.z, s1 * s2});
                    cur.q = img.mid;
                    std::swap(order[1], order[2]);
                }
            }
            rep.paths_checked++;
            if (!(cur.x == p0.x && cur.p == p0.p && cur.q == p0.q && cur.z == p0.z)) {
                rep.pass = false;
                rep.failure = "hexagon walk did not return to the start";
                return rep;
            }
        }
    }
    return rep;
}

ChainCx totalize(const SignedBurnsideFunctor& f)
{
    // i = n_minus - |v| so the abelianized maps raise i
    ChainCx c;
    c.ring = Ring::odd;
    std::map<std::pair<Vertex, Mono>, int> index;
    for (Vertex v = 0; v < (1u << f.n); ++v)
        for (Mono m : f.objects[v]) {
            index[{v, m}] = c.size();
            c.gens.push_back({v, m, 0});
            c.deg.push_back({f.n_minus - vweight(v), f.qdeg.at({v, m})});
        }
    c.dcol.assign(c.gens.size(), {});
    for (auto& [e, corr] : f.edges) {
        int sgn = standard_sign(e.hi(), e.lo);
        for (const auto& el : corr.elems) {
            int col = index.at({e.hi(), el.src});
            int row = index.at({e.lo, el.dst});
            c.dcol[col].emplace_back(row, Zu(sgn ? -el.sign : el.sign, 0));
        }
    }
    c.sort_canonical();
    return c;
}

bool totalization_duality_check(const SignedBurnsideFunctor& f, const KhCube& odd_cube)
{
    ChainCx tot = totalize(f);
    ChainCx kc = cochain_complex(odd_cube);
    if (tot.size() != kc.size()) return false;
    std::map<std::pair<Vertex, Mono>, int> kidx;
    for (int g = 0; g < kc.size(); ++g) kidx[{kc.gens[g].v, kc.gens[g].m}] = g;
    long long seen = 0;
    for (int g = 0; g < tot.size(); ++g) {
        for (auto& [t, val] : tot.dcol[g]) {
            int src = kidx.at({tot.gens[t].v, tot.gens[t].m});
            int dst = kidx.at({tot.gens[g].v, tot.gens[g].m});
            if (!(kc.entry(dst, src) == val)) return false;
            ++seen;
        }
    }
    long long kc_entries = 0;
    for (auto& col : kc.dcol) kc_entries += static_cast<long long>(col.size());
    return seen == kc_entries;
}

ChainCx double_totalization(const SignedBurnsideFunctor& f)
{
    ChainCx c;
    c.ring = Ring::even;
    std::map<std::tuple<Vertex, Mono, int>, int> index;
    for (Vertex v = 0; v < (1u << f.n); ++v)
        for (Mono m : f.objects[v])
            for (int sheet = 0; sheet < 2; ++sheet) {
                index[{v, m, sheet}] = c.size();
                c.gens.push_back({v, m, static_cast<char>(sheet)});
                c.deg.push_back({f.n_minus - vweight(v), f.qdeg.at({v, m})});
            }
    c.dcol.assign(c.gens.size(), {});
    for (auto& [e, corr] : f.edges) {
        int sgn = standard_sign(e.hi(), e.lo);
        for (const auto& el : corr.elems)
            for (int sheet = 0; sheet < 2; ++sheet) {
                int col = index.at({e.hi(), el.src, sheet});
                int tgt_sheet = el.sign > 0 ? sheet : 1 - sheet;
                int row = index.at({e.lo, el.dst, tgt_sheet});
                c.dcol[col].emplace_back(row, Zu(sgn ? -1 : 1, 0));
            }
    }
    c.sort_canonical();
    return c;
}

bool doubling_matches_unified(const SignedBurnsideFunctor& f, const KhCube& unified_cube)
{
    // the doubled totalization must transpose onto the doubled integer form
    ChainCx dd = double_totalization(f);
    ChainCx dz = doubled_z_form(unified_cube);
    if (dd.size() != dz.size()) return false;
    std::map<std::tuple<Vertex, Mono, int>, int> zidx;
    for (int g = 0; g < dz.size(); ++g) zidx[{dz.gens[g].v, dz.gens[g].m, dz.gens[g].xi}] = g;
    long long seen = 0;
    for (int g = 0; g < dd.size(); ++g)
        for (auto& [t, val] : dd.dcol[g]) {
            int src = zidx.at({dd.gens[t].v, dd.gens[t].m, dd.gens[t].xi});
            int dst = zidx.at({dd.gens[g].v, dd.gens[g].m, dd.gens[g].xi});
            if (!(dz.entry(dst, src) == val)) return false;
            ++seen;
        }
    long long dz_entries = 0;
    for (auto& col : dz.dcol) dz_entries += static_cast<long long>(col.size());
    return seen == dz_entries;
}

SignedBurnsideFunctor sign_reassign(const SignedBurnsideFunctor& f,
                                    const std::map<std::pair<Vertex, Mono>, int>& zeta)
{
    SignedBurnsideFunctor out = f;
    out.squares.clear();
    for (auto& [e, corr] : out.edges) {
        for (auto& el : corr.elems)
            el.sign *= zeta.at({corr.src_vertex, el.src}) * zeta.at({corr.dst_vertex, el.dst});
        std::sort(corr.elems.begin(), corr.elems.end());
    }
    for (const Square& s : all_squares(out.n)) out.squares[s] = match_square(out, s);
    return out;
}

std::pair<SignedBurnsideFunctor, SignedBurnsideFunctor> subfunctor(
    const SignedBurnsideFunctor& f, const std::map<std::pair<Vertex, Mono>, char>& in_sub)
{
    auto member = [&](Vertex v, Mono m) {
        auto it = in_sub.find({v, m});
        return it != in_sub.end() && it->second;
    };
    // sub-closure: elements with source in S stay in S
    for (auto& [e, corr] : f.edges)
        for (auto& el : corr.elems)
            if (member(corr.src_vertex, el.src) && !member(corr.dst_vertex, el.dst))
                throw input_error("generator subset is not closed under the correspondences");
    SignedBurnsideFunctor sub, quot;
    for (SignedBurnsideFunctor* part : {&sub, &quot}) {
        part->n = f.n;
        part->n_minus = f.n_minus;
        part->stable_shift = f.stable_shift;
        part->objects.resize(1u << f.n);
    }
    for (Vertex v = 0; v < (1u << f.n); ++v)
        for (Mono m : f.objects[v]) {
            SignedBurnsideFunctor& part = member(v, m) ? sub : quot;
            part.objects[v].push_back(m);
            part.qdeg[{v, m}] = f.qdeg.at({v, m});
        }
    for (auto& [e, corr] : f.edges) {
        // elements from the complement into S connect the two pieces and
        // belong to neither restricted correspondence
        SignedCorrespondence cs, cq;
        cs.src_vertex = cq.src_vertex = corr.src_vertex;
        cs.dst_vertex = cq.dst_vertex = corr.dst_vertex;
        for (auto& el : corr.elems) {
            bool s = member(corr.src_vertex, el.src), t = member(corr.dst_vertex, el.dst);
            if (s)
                cs.elems.push_back(el);
            else if (!t)
                cq.elems.push_back(el);
        }
        sub.edges[e] = std::move(cs);
        quot.edges[e] = std::move(cq);
    }
    for (const Square& s : all_squares(f.n)) {
        sub.squares[s] = match_square(sub, s);
        quot.squares[s] = match_square(quot, s);
    }
    return {std::move(sub), std::move(quot)};
}

bool reduced_functor_signs_match(const SignedBurnsideFunctor& f, const KhCube& odd_cube)
{
    // sub: generators without the basepoint circle; quotient: with it. The
    // canonical bijection drops the basepoint circle (always the last id);
    // it must take the quotient correspondence onto the sub correspondence
    // with all signs intact. Elements from the sub half into the quotient
    // half are the connecting part and are not constrained here.
    for (auto& [e, corr] : f.edges) {
        int bp_src = odd_cube.res[corr.src_vertex].basepoint_circle();
        int bp_dst = odd_cube.res[corr.dst_vertex].basepoint_circle();
        long long with = 0, without = 0;
        for (auto& el : corr.elems) {
            bool s = (el.src >> bp_src) & 1, t = (el.dst >> bp_dst) & 1;
            if (!s && t) return false;  // would break the sub-closure of the free half
            if (!s && !t) ++without;
            if (!s || !t) continue;
            ++with;
            Mono src2 = el.src & ~(1ULL << bp_src);
            Mono dst2 = el.dst & ~(1ULL << bp_dst);
            if (elem_sign(corr, src2, dst2) != el.sign) return false;
        }
        if (with != without) return false;
    }
    return true;
}

SignedBurnsideFunctor coproduct(const SignedBurnsideFunctor& a, const SignedBurnsideFunctor& b)
{
    KHLAB_CHECK(a.n == b.n && a.n_minus == b.n_minus, "coproduct needs functors on the same cube");
    SignedBurnsideFunctor out;
    out.n = a.n;
    out.n_minus = a.n_minus;
    out.stable_shift = a.stable_shift;
    out.objects.resize(1u << out.n);
    for (Vertex v = 0; v < (1u << out.n); ++v) {
        out.objects[v] = a.objects[v];
        for (Mono m : b.objects[v]) {
            KHLAB_CHECK(std::find(out.objects[v].begin(), out.objects[v].end(), m) == out.objects[v].end(),
                        "coproduct objects must be disjoint");
            out.objects[v].push_back(m);
        }
        std::sort(out.objects[v].begin(), out.objects[v].end());
        for (Mono m : out.objects[v]) {
            auto ita = a.qdeg.find({v, m});
            out.qdeg[{v, m}] = ita != a.qdeg.end() ? ita->second : b.qdeg.at({v, m});
        }
    }
    for (auto& [e, ca] : a.edges) {
        SignedCorrespondence corr = ca;
        const auto& cb = b.edges.at(e);
        corr.elems.insert(corr.elems.end(), cb.elems.begin(), cb.elems.end());
        std::sort(corr.elems.begin(), corr.elems.end());
        out.edges[e] = std::move(corr);
    }
    for (const Square& s : all_squares(out.n)) out.squares[s] = match_square(out, s);
    return out;
}

std::string functor_debug(const SignedBurnsideFunctor& f)
{
    std::ostringstream out;
    for (auto& [e, corr] : f.edges) {
        out << "edge " << e.lo << "+b" << e.bit << ":";
        for (auto& el : corr.elems)
            out << " (" << el.src << "->" << el.dst << "," << (el.sign > 0 ? "+" : "-") << ")";
        out << "\n";
    }
    for (auto& [s, table] : f.squares) {
        if (table.empty()) continue;
        out << "square " << s.lo << "+b" << s.b1 << "b" << s.b2 << ":";
        for (auto& [p, q] : table)
            out << " [" << p.src << "," << p.mid << "," << p.dst << "]->[" << q.src << "," << q.mid << ","
                << q.dst << "]";
        out << "\n";
    }
    return out.str();
}

}  // namespace khlab
