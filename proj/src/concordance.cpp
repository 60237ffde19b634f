#include "khlab/concordance.hpp"

#include <algorithm>

#include "khlab/homology.hpp"

namespace khlab {

FilteredComplex barnatan_complex(const Diagram& d, int jobs)
{
    if (d.components() != 1) throw input_error("filtered invariants need a one-component diagram");
    FilteredComplex f;
    f.d = d;
    auto res = all_resolutions(d, jobs);
    std::map<std::pair<Vertex, Mono>, int> index;
    for (Vertex v = 0; v < (1u << d.n()); ++v) {
        int z = res[v].ncircles;
        for (Mono m = 0; m < (1ULL << z); ++m) {
            index[{v, m}] = f.size();
            f.gens.push_back({v, m, 0});
            f.ideg.push_back(vweight(v) - d.n_minus);
            f.jdeg.push_back(z - 2 * popcount64(m) + vweight(v) + d.n() + -3 * d.n_minus);
        }
    }
    f.dcol.assign(f.gens.size(), {});
    for (const Edge& e : all_edges(d.n())) {
        EdgeCob cob = edge_cobordism(d, res[e.lo], res[e.hi()], e.bit);
        for (Mono m = 0; m < (1ULL << res[e.lo].ncircles); ++m) {
            std::vector<Mono> images;
            if (cob.merge) {
                bool h1 = (m >> cob.m_a1) & 1, h2 = (m >> cob.m_a2) & 1;
                Mono rest = 0;
                for (int c = 0; c < res[e.lo].ncircles; ++c)
                    if ((m >> c) & 1 && c != cob.m_a1 && c != cob.m_a2) rest |= 1ULL << cob.lo_to_up.to[c];
                if (!h1 && !h2)
                    images.push_back(rest);
                else
                    images.push_back(rest | (1ULL << cob.m_a));  // x·1, 1·x and the deformation x·x
            }
            else {
                bool has = (m >> cob.s_a) & 1;
                Mono rest = 0;
                for (int c = 0; c < res[e.lo].ncircles; ++c)
                    if ((m >> c) & 1 && c != cob.s_a) rest |= 1ULL << cob.lo_to_up.to[c];
                if (has)
                    images.push_back(rest | (1ULL << cob.s_a1) | (1ULL << cob.s_a2));
                else {
                    images.push_back(rest | (1ULL << cob.s_a1));
                    images.push_back(rest | (1ULL << cob.s_a2));
                    images.push_back(rest);  // the deformation term
                }
            }
            int src = index.at({e.lo, m});
            for (Mono im : images) f.dcol[src].push_back(index.at({e.hi(), im}));
        }
    }
    for (auto& col : f.dcol) std::sort(col.begin(), col.end());
    if (!f.jdeg.empty()) {
        f.jmin = *std::min_element(f.jdeg.begin(), f.jdeg.end());
        f.jmax = *std::max_element(f.jdeg.begin(), f.jdeg.end());
    }
    // the differential never lowers the quantum filtration
    for (int g = 0; g < f.size(); ++g)
        for (int t : f.dcol[g]) KHLAB_CHECK(f.jdeg[t] >= f.jdeg[g], "filtration violated");
    return f;
}

namespace {

// rows = generators at homological degree i (optionally filtered), columns as
// given by `srcs`; the matrix of the differential restricted accordingly
F2Mat submatrix(const FilteredComplex& f, const std::vector<int>& srcs, const std::vector<int>& tgts)
{
    std::map<int, int> row_of;
    for (std::size_t k = 0; k < tgts.size(); ++k) row_of[tgts[k]] = static_cast<int>(k);
    F2Mat m(static_cast<int>(tgts.size()), static_cast<int>(srcs.size()));
    for (std::size_t c = 0; c < srcs.size(); ++c)
        for (int t : f.dcol[srcs[c]]) {
            auto it = row_of.find(t);
            if (it != row_of.end()) m.flip(it->second, static_cast<int>(c));
        }
    return m;
}

std::vector<int> level(const FilteredComplex& f, int i, int qmin)
{
    std::vector<int> out;
    for (int g = 0; g < f.size(); ++g)
        if (f.ideg[g] == i && f.jdeg[g] >= qmin) out.push_back(g);
    return out;
}

// span rank helper over F2: columns are chain vectors in a common basis
int span_rank(const std::vector<std::vector<char>>& vecs)
{
    if (vecs.empty()) return 0;
    F2Mat m(static_cast<int>(vecs[0].size()), static_cast<int>(vecs.size()));
    for (std::size_t c = 0; c < vecs.size(); ++c)
        for (std::size_t r = 0; r < vecs[c].size(); ++r)
            if (vecs[c][r]) m.set(static_cast<int>(r), static_cast<int>(c), true);
    return m.rank();
}

}  // namespace

int barnatan_total_dim(const FilteredComplex& f)
{
    int total = 0;
    std::map<int, char> is;
    for (int g = 0; g < f.size(); ++g) is[f.ideg[g]] = 1;
    for (auto& [i, _] : is) {
        auto mid = level(f, i, f.jmin), below = level(f, i - 1, f.jmin), above = level(f, i + 1, f.jmin);
        F2Mat dout = submatrix(f, mid, above);
        F2Mat din = submatrix(f, below, mid);
        total += static_cast<int>(mid.size()) - dout.rank() - din.rank();
    }
    return total;
}

int filtration_map_rank(const FilteredComplex& f, int q)
{
    // cocycles of F_q at homological degree 0, pushed into H^0 of the total
    // complex: rank of (Z_q + B) / B
    auto mid_q = level(f, 0, q), up_q = level(f, 1, q);
    auto mid = level(f, 0, f.jmin), below = level(f, -1, f.jmin);
    F2Mat dq = submatrix(f, mid_q, up_q);
    auto zbasis = dq.nullspace();  // coords in mid_q
    std::map<int, int> pos;
    for (std::size_t k = 0; k < mid.size(); ++k) pos[mid[k]] = static_cast<int>(k);
    std::vector<std::vector<char>> bvecs;
    {
        F2Mat din = submatrix(f, below, mid);
        for (int c = 0; c < din.cols(); ++c) {
            std::vector<char> v(mid.size(), 0);
            for (int r = 0; r < din.rows(); ++r)
                if (din.get(r, c)) v[r] = 1;
            bvecs.push_back(std::move(v));
        }
    }
    int rank_b = span_rank(bvecs);
    std::vector<std::vector<char>> all = bvecs;
    for (auto& z : zbasis) {
        std::vector<char> v(mid.size(), 0);
        for (std::size_t k = 0; k < z.size(); ++k)
            if (z[k]) v[pos.at(mid_q[k])] = 1;
        all.push_back(std::move(v));
    }
    return span_rank(all) - rank_b;
}

int s_invariant(const Diagram& d, int jobs)
{
    FilteredComplex f = barnatan_complex(d, jobs);
    KHLAB_CHECK(barnatan_total_dim(f) == 2, "total filtered homology must have dimension 2");
    int max_surj = INT32_MIN, max_nonzero = INT32_MIN;
    int q0 = f.jmin - 2;
    if (((q0 % 2) + 2) % 2 == 0) --q0;  // the formulas range over odd levels
    for (int q = q0; q <= f.jmax + 1; q += 2) {
        int r = filtration_map_rank(f, q);
        if (r >= 2) max_surj = std::max(max_surj, q);
        if (r >= 1) max_nonzero = std::max(max_nonzero, q);
    }
    KHLAB_CHECK(max_surj != INT32_MIN && max_nonzero != INT32_MIN, "filtration never reaches the homology");
    int s1 = max_surj + 1, s2 = max_nonzero - 1;
    KHLAB_CHECK(s1 == s2, "the two filtration formulas disagree");
    return s1;
}

namespace {

struct AlphaContext {
    FilteredComplex f;
    ChainCx integral;
    Mod2Homology h2;

    AlphaContext(const Diagram& d, AlphaOp alpha, int jobs)
        : f(barnatan_complex(d, jobs)),
          integral(build_complex(d, alpha == AlphaOp::bockstein_even ? Ring::even : Ring::odd, jobs)),
          h2(integral)
    {
    }
};

AlphaLevel alpha_level_ctx(const AlphaContext& ctx, int q)
{
    AlphaLevel out;
    const FilteredComplex& f = ctx.f;
    const ChainCx& integral = ctx.integral;
    const Mod2Homology& h2 = ctx.h2;
    // chain-level data at homological degree 0
    auto mid_q = level(f, 0, q), up_q = level(f, 1, q);
    auto mid = level(f, 0, f.jmin), below = level(f, -1, f.jmin);
    F2Mat dq = submatrix(f, mid_q, up_q);
    auto zbasis = dq.nullspace();
    // graded projection coordinates: Khovanov (0,q) block, ordered as in the
    // integral complex
    auto kh_block = integral.block(0, q);
    std::map<std::pair<Vertex, Mono>, int> kh_pos;
    for (std::size_t k = 0; k < kh_block.size(); ++k)
        kh_pos[{integral.gens[kh_block[k]].v, integral.gens[kh_block[k]].m}] = static_cast<int>(k);
    // W = span(im beta ∪ graded boundaries) inside the (0,q) chain group
    std::vector<std::vector<char>> W;
    {
        auto kh_below = integral.block(-1, q);
        for (std::size_t c = 0; c < kh_below.size(); ++c) {
            std::vector<char> v(kh_block.size(), 0);
            for (auto& [t, val] : integral.dcol[kh_below[c]])
                if (((val.a % 2) + 2) % 2) {
                    auto it = kh_pos.find({integral.gens[t].v, integral.gens[t].m});
                    if (it != kh_pos.end()) v[it->second] ^= 1;
                }
            W.push_back(std::move(v));
        }
        const F2Homology* hsrc = h2.block(-1, q);
        if (hsrc) {
            auto src_block = integral.block(-1, q);
            for (int g = 0; g < hsrc->dim(); ++g) {
                // integral lift of the class, halved differential
                std::vector<long long> dx(kh_block.size(), 0);
                const std::vector<char>& rep = hsrc->rep(g);
                for (std::size_t c = 0; c < src_block.size(); ++c) {
                    if (!rep[c]) continue;
                    for (auto& [t, val] : integral.dcol[src_block[c]])
                        dx[kh_pos.at({integral.gens[t].v, integral.gens[t].m})] += val.a;
                }
                std::vector<char> v(kh_block.size(), 0);
                for (std::size_t r = 0; r < dx.size(); ++r) {
                    KHLAB_CHECK(dx[r] % 2 == 0, "lift differential odd");
                    v[r] = static_cast<char>(((dx[r] / 2) % 2 + 2) % 2);
                }
                W.push_back(std::move(v));
            }
        }
    }
    // S = cocycles z in F_q whose graded leading term lies in W
    // solve: for the coefficient space of zbasis, [proj ∘ z] ∈ span W
    // via rank conditions: S = kernel of (quotient by W) ∘ proj on the z-span
    std::vector<std::vector<char>> projz;
    for (auto& z : zbasis) {
        std::vector<char> v(kh_block.size(), 0);
        for (std::size_t k = 0; k < z.size(); ++k) {
            if (!z[k]) continue;
            int g = mid_q[k];
            if (f.jdeg[g] == q) v[kh_pos.at({f.gens[g].v, f.gens[g].m})] ^= 1;
        }
        projz.push_back(std::move(v));
    }
    // basis of the S-subspace of coefficient vectors
    std::vector<std::vector<char>> svecs;  // chain vectors (coords in `mid`)
    {
        // kernel of the map coeffs -> proj mod W: columns = projz vectors
        // against the W span: x in kernel iff sum x_k projz_k ∈ span(W)
        int nz = static_cast<int>(projz.size());
        F2Mat aug(static_cast<int>(kh_block.size()), nz + static_cast<int>(W.size()));
        for (int c = 0; c < nz; ++c)
            for (std::size_t r = 0; r < projz[c].size(); ++r)
                if (projz[c][r]) aug.set(static_cast<int>(r), c, true);
        for (std::size_t c = 0; c < W.size(); ++c)
            for (std::size_t r = 0; r < W[c].size(); ++r)
                if (W[c][r]) aug.set(static_cast<int>(r), nz + static_cast<int>(c), true);
        auto ns = aug.nullspace();
        std::map<int, int> pos;
        for (std::size_t k = 0; k < mid.size(); ++k) pos[mid[k]] = static_cast<int>(k);
        for (auto& n : ns) {
            std::vector<char> chain(mid.size(), 0);
            bool any = false;
            for (int k = 0; k < nz; ++k) {
                if (!n[k]) continue;
                any = true;
                for (std::size_t t = 0; t < zbasis[k].size(); ++t)
                    if (zbasis[k][t]) chain[pos.at(mid_q[t])] ^= 1;
            }
            if (any) svecs.push_back(std::move(chain));
        }
    }
    // push S into the total homology: quotient by all boundaries
    std::vector<std::vector<char>> bvecs;
    {
        F2Mat din = submatrix(f, below, mid);
        for (int c = 0; c < din.cols(); ++c) {
            std::vector<char> v(mid.size(), 0);
            for (int r = 0; r < din.rows(); ++r)
                if (din.get(r, c)) v[r] = 1;
            bvecs.push_back(std::move(v));
        }
    }
    int rank_b = span_rank(bvecs);
    std::vector<std::vector<char>> all = bvecs;
    for (auto& s : svecs) all.push_back(s);
    int image_rank = span_rank(all) - rank_b;
    out.half_full = image_rank >= 1;
    out.full = image_rank >= 2;
    return out;
}

std::pair<int, int> plus_invariants(const Diagram& d, AlphaOp alpha, int jobs)
{
    AlphaContext ctx(d, alpha, jobs);
    int rmax = INT32_MIN, smax = INT32_MIN;
    int q0 = ctx.f.jmin - 2;
    if (((q0 % 2) + 2) % 2 == 0) --q0;
    for (int q = q0; q <= ctx.f.jmax + 1; q += 2) {
        AlphaLevel lv = alpha_level_ctx(ctx, q);
        if (lv.half_full) rmax = std::max(rmax, q);
        if (lv.full) smax = std::max(smax, q);
    }
    KHLAB_CHECK(rmax != INT32_MIN && smax != INT32_MIN, "no full level found");
    return {rmax + 1, smax + 3};
}

}  // namespace

AlphaLevel alpha_level(const Diagram& d, AlphaOp alpha, int q, int jobs)
{
    AlphaContext ctx(d, alpha, jobs);
    return alpha_level_ctx(ctx, q);
}

AlphaInvariants alpha_invariants(const Diagram& d, AlphaOp alpha, int jobs)
{
    AlphaInvariants out;
    auto [rp, sp] = plus_invariants(d, alpha, jobs);
    out.r_plus = rp;
    out.s_plus = sp;
    auto [rm, sm] = plus_invariants(mirror(d), alpha, jobs);
    out.r_minus = -rm;
    out.s_minus = -sm;
    return out;
}

}  // namespace khlab
