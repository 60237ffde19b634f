#include "khlab/homology.hpp"

#include <algorithm>
#include <sstream>

namespace khlab {

ZMat ZMat::identity(int n)
{
    ZMat m(n, n);
    for (int i = 0; i < n; ++i) m.a[i][i] = BigInt(1);
    return m;
}

ZMat operator*(const ZMat& x, const ZMat& y)
{
    KHLAB_CHECK(x.cols == y.rows, "ZMat product shape");
    ZMat out(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (x.a[i][k].is_zero()) continue;
            for (int j = 0; j < y.cols; ++j) {
                if (y.a[k][j].is_zero()) continue;
                out.a[i][j] += x.a[i][k] * y.a[k][j];
            }
        }
    return out;
}

bool ZMat::is_zero() const
{
    for (auto& row : a)
        for (auto& x : row)
            if (!x.is_zero()) return false;
    return true;
}

namespace {

struct SnfWork {
    ZMat M, U, Uinv, V, Vinv;

    void swap_rows(int i, int j)
    {
        if (i == j) return;
        std::swap(M.a[i], M.a[j]);
        std::swap(U.a[i], U.a[j]);
        for (int k = 0; k < Uinv.rows; ++k) std::swap(Uinv.a[k][i], Uinv.a[k][j]);
    }
    void swap_cols(int i, int j)
    {
        if (i == j) return;
        for (int k = 0; k < M.rows; ++k) std::swap(M.a[k][i], M.a[k][j]);
        for (int k = 0; k < V.rows; ++k) std::swap(V.a[k][i], V.a[k][j]);
        std::swap(Vinv.a[i], Vinv.a[j]);
    }
    void negate_row(int i)
    {
        for (auto& x : M.a[i]) x = -x;
        for (auto& x : U.a[i]) x = -x;
        for (int k = 0; k < Uinv.rows; ++k) Uinv.a[k][i] = -Uinv.a[k][i];
    }
    // row j += q * row i
    void addmul_row(int j, int i, const BigInt& q)
    {
        if (q.is_zero()) return;
        for (int k = 0; k < M.cols; ++k)
            if (!M.a[i][k].is_zero()) M.a[j][k] += q * M.a[i][k];
        for (int k = 0; k < U.cols; ++k)
            if (!U.a[i][k].is_zero()) U.a[j][k] += q * U.a[i][k];
        for (int k = 0; k < Uinv.rows; ++k)
            if (!Uinv.a[k][j].is_zero()) Uinv.a[k][i] -= q * Uinv.a[k][j];
    }
    // col j += q * col i
    void addmul_col(int j, int i, const BigInt& q)
    {
        if (q.is_zero()) return;
        for (int k = 0; k < M.rows; ++k)
            if (!M.a[k][i].is_zero()) M.a[k][j] += q * M.a[k][i];
        for (int k = 0; k < V.rows; ++k)
            if (!V.a[k][i].is_zero()) V.a[k][j] += q * V.a[k][i];
        for (int k = 0; k < Vinv.cols; ++k)
            if (!Vinv.a[j][k].is_zero()) Vinv.a[i][k] -= q * Vinv.a[j][k];
    }
};

}  // namespace

SnfDiag smith_diagonal(ZMat M)
{
    SnfDiag out;
    int t = 0;
    int lim = std::min(M.rows, M.cols);
    while (t < lim) {
        int pr = -1, pc = -1;
        for (int i = t; i < M.rows && pr != -2; ++i)
            for (int j = t; j < M.cols; ++j) {
                if (M.a[i][j].is_zero()) continue;
                if (pr < 0 || M.a[i][j].cmp_abs(M.a[pr][pc]) < 0) {
                    pr = i;
                    pc = j;
                    if (M.a[i][j].is_unit()) {
                        i = M.rows;
                        break;
                    }
                }
            }
        if (pr < 0) break;
        std::swap(M.a[t], M.a[pr]);
        if (pc != t)
            for (int i = 0; i < M.rows; ++i) std::swap(M.a[i][t], M.a[i][pc]);
        if (M.a[t][t].sign() < 0)
            for (auto& x : M.a[t]) x = -x;
        bool dirty = false;
        for (int i = t + 1; i < M.rows; ++i) {
            if (M.a[i][t].is_zero()) continue;
            BigInt q = M.a[i][t].divround(M.a[t][t]);
            if (!q.is_zero())
                for (int j = t; j < M.cols; ++j)
                    if (!M.a[t][j].is_zero()) M.a[i][j] -= q * M.a[t][j];
            if (!M.a[i][t].is_zero()) dirty = true;
        }
        for (int j = t + 1; j < M.cols; ++j) {
            if (M.a[t][j].is_zero()) continue;
            BigInt q = M.a[t][j].divround(M.a[t][t]);
            if (!q.is_zero())
                for (int i = t; i < M.rows; ++i)
                    if (!M.a[i][t].is_zero()) M.a[i][j] -= q * M.a[i][t];
            if (!M.a[t][j].is_zero()) dirty = true;
        }
        if (dirty) continue;
        bool fixed = false;
        for (int i = t + 1; i < M.rows && !fixed; ++i)
            for (int j = t + 1; j < M.cols && !fixed; ++j) {
                if (M.a[i][j].is_zero()) continue;
                if ((M.a[i][j] % M.a[t][t]).is_zero()) continue;
                for (int jj = t; jj < M.cols; ++jj) M.a[t][jj] += M.a[i][jj];
                fixed = true;
            }
        if (fixed) continue;
        ++t;
    }
    out.rank = t;
    for (int k = 0; k < t; ++k) out.diag.push_back(M.a[k][k]);
    return out;
}

SnfResult smith_normal_form(const ZMat& Min)
{
    SnfWork w;
    w.M = Min;
    w.U = ZMat::identity(Min.rows);
    w.Uinv = ZMat::identity(Min.rows);
    w.V = ZMat::identity(Min.cols);
    w.Vinv = ZMat::identity(Min.cols);

    int t = 0;
    int lim = std::min(Min.rows, Min.cols);
    while (t < lim) {
        // minimal |entry| pivot in the trailing submatrix; a unit wins outright
        int pr = -1, pc = -1;
        for (int i = t; i < Min.rows && pr != -2; ++i)
            for (int j = t; j < Min.cols; ++j) {
                if (w.M.a[i][j].is_zero()) continue;
                if (pr < 0 || w.M.a[i][j].cmp_abs(w.M.a[pr][pc]) < 0) {
                    pr = i;
                    pc = j;
                    if (w.M.a[i][j].is_unit()) {
                        pr = i;
                        pc = j;
                        i = Min.rows;
                        break;
                    }
                }
            }
        if (pr < 0) break;
        w.swap_rows(t, pr);
        w.swap_cols(t, pc);
        if (w.M.a[t][t].sign() < 0) w.negate_row(t);

        bool dirty = false;
        for (int i = t + 1; i < Min.rows; ++i) {
            if (w.M.a[i][t].is_zero()) continue;
            BigInt q = w.M.a[i][t].divround(w.M.a[t][t]);
            w.addmul_row(i, t, -q);
            if (!w.M.a[i][t].is_zero()) dirty = true;
        }
        for (int j = t + 1; j < Min.cols; ++j) {
            if (w.M.a[t][j].is_zero()) continue;
            BigInt q = w.M.a[t][j].divround(w.M.a[t][t]);
            w.addmul_col(j, t, -q);
            if (!w.M.a[t][j].is_zero()) dirty = true;
        }
        if (dirty) continue;  // smaller pivot now exists; retry this t

        // row and column are clean; enforce divisibility of the rest
        bool fixed = false;
        for (int i = t + 1; i < Min.rows && !fixed; ++i)
            for (int j = t + 1; j < Min.cols && !fixed; ++j) {
                if (w.M.a[i][j].is_zero()) continue;
                if ((w.M.a[i][j] % w.M.a[t][t]).is_zero()) continue;
                w.addmul_row(t, i, BigInt(1));
                fixed = true;
            }
        if (fixed) continue;
        ++t;
    }

    SnfResult out;
    out.U = std::move(w.U);
    out.Uinv = std::move(w.Uinv);
    out.V = std::move(w.V);
    out.Vinv = std::move(w.Vinv);
    out.D = std::move(w.M);
    out.rank = t;
    for (int k = 0; k < t; ++k) out.diag.push_back(out.D.a[k][k]);
    for (int k = 0; k + 1 < t; ++k)
        KHLAB_CHECK((out.diag[k + 1] % out.diag[k]).is_zero(), "divisibility chain broken");
    return out;
}

std::string HomGroup::str() const
{
    std::ostringstream s;
    bool first = true;
    if (free_rank > 0) {
        s << "Z";
        if (free_rank > 1) s << "^" << free_rank;
        first = false;
    }
    for (auto& t : torsion) {
        if (!first) s << " + ";
        s << "Z/" << t.to_string();
        first = false;
    }
    if (first) s << "0";
    return s.str();
}

HomGroup direct_sum(const HomGroup& a, const HomGroup& b)
{
    // canonical invariant factors of the sum via SNF of the diagonal relation matrix
    int na = static_cast<int>(a.torsion.size()), nb = static_cast<int>(b.torsion.size());
    ZMat rel(na + nb, na + nb);
    for (int i = 0; i < na; ++i) rel.a[i][i] = a.torsion[i];
    for (int i = 0; i < nb; ++i) rel.a[na + i][na + i] = b.torsion[i];
    SnfResult s = smith_normal_form(rel);
    HomGroup out;
    out.free_rank = a.free_rank + b.free_rank;
    for (auto& d : s.diag)
        if (!d.is_unit()) out.torsion.push_back(d);
    return out;
}

namespace {

ZMat block_matrix(const ChainCx& c, const std::vector<int>& cols_block, const std::vector<int>& rows_block)
{
    std::map<int, int> row_of;
    for (std::size_t k = 0; k < rows_block.size(); ++k) row_of[rows_block[k]] = static_cast<int>(k);
    ZMat m(static_cast<int>(rows_block.size()), static_cast<int>(cols_block.size()));
    for (std::size_t j = 0; j < cols_block.size(); ++j)
        for (auto& [tgt, val] : c.dcol[cols_block[j]]) {
            auto it = row_of.find(tgt);
            KHLAB_CHECK(it != row_of.end(), "differential leaves the expected block");
            KHLAB_CHECK(val.b == 0, "integer block with unfolded xi entry");
            m.a[it->second][j] += BigInt(val.a);
        }
    return m;
}

}  // namespace

Homology::Homology(const ChainCx& c, int jobs, bool with_reps) : c_(&c)
{
    KHLAB_CHECK(c.ring != Ring::unified, "integer or mod-2 complexes only; use the doubled form for unified");
    auto degrees = c.bidegrees();
    std::vector<Bideg> work(degrees.begin(), degrees.end());
    std::vector<BlockData> results(work.size());
    parallel_for(work.size(), jobs, [&](std::size_t k) {
        auto [i, j] = work[k];
        auto mid = c_->block(i, j);
        auto below = c_->block(i - 1, j);
        auto above = c_->block(i + 1, j);
        BlockData bd;
        bd.m = static_cast<int>(mid.size());
        if (c_->ring == Ring::mod2) {
            F2Mat din(static_cast<int>(mid.size()), static_cast<int>(below.size()));
            std::map<int, int> row_of;
            for (std::size_t t = 0; t < mid.size(); ++t) row_of[mid[t]] = static_cast<int>(t);
            for (std::size_t cidx = 0; cidx < below.size(); ++cidx)
                for (auto& [tgt, val] : c_->dcol[below[cidx]])
                    if ((val.a & 1) != 0) din.set(row_of[tgt], static_cast<int>(cidx), true);
            F2Mat dout(static_cast<int>(above.size()), static_cast<int>(mid.size()));
            std::map<int, int> row_of2;
            for (std::size_t t = 0; t < above.size(); ++t) row_of2[above[t]] = static_cast<int>(t);
            for (std::size_t cidx = 0; cidx < mid.size(); ++cidx)
                for (auto& [tgt, val] : c_->dcol[mid[cidx]])
                    if ((val.a & 1) != 0) dout.set(row_of2[tgt], static_cast<int>(cidx), true);
            int r_out = dout.rank(), r_in = din.rank();
            bd.H.free_rank = bd.m - r_out - r_in;
            results[k] = std::move(bd);
            return;
        }
        ZMat dout = block_matrix(*c_, mid, above);
        ZMat din = block_matrix(*c_, below, mid);
        if (!with_reps) {
            // the kernel is a pure submodule, so the homology torsion equals
            // the nontrivial invariant factors of the incoming matrix
            SnfDiag so = smith_diagonal(dout);
            SnfDiag si = smith_diagonal(din);
            bd.krank = so.rank;
            bd.H.free_rank = bd.m - so.rank - si.rank;
            for (auto& dk : si.diag)
                if (!dk.is_unit()) bd.H.torsion.push_back(dk);
            results[k] = std::move(bd);
            return;
        }
        SnfResult so = smith_normal_form(dout);
        bd.krank = so.rank;
        if (with_reps) {
            bd.Vout = so.V;
            bd.Vinv_out = so.Vinv;
        }
        int p = bd.m - so.rank;  // kernel dimension
        // incoming matrix in kernel coordinates: bottom p rows of Vinv * din
        ZMat kin(p, din.cols);
        {
            ZMat t = so.Vinv * din;
            for (int r = 0; r < so.rank; ++r)
                for (int cix = 0; cix < t.cols; ++cix)
                    KHLAB_CHECK(t.a[r][cix].is_zero(), "boundary is not a cycle");
            for (int r = 0; r < p; ++r) kin.a[r] = t.a[so.rank + r];
        }
        SnfResult si = smith_normal_form(kin);
        bd.qrank = si.rank;
        bd.qdiag.assign(p, BigInt(0));
        for (int r = 0; r < si.rank; ++r) bd.qdiag[r] = si.diag[r];
        if (with_reps) {
            bd.Uq = si.U;
            bd.Uqinv = si.Uinv;
        }
        for (int r = 0; r < p; ++r) {
            BigInt dk = bd.qdiag[r];
            bool is_torsion = !dk.is_zero() && !dk.is_unit();
            bool is_free = dk.is_zero();
            if (!is_torsion && !is_free) continue;
            if (is_torsion)
                bd.H.torsion.push_back(dk);
            else
                bd.H.free_rank++;
            if (!with_reps) continue;
            std::vector<BigInt> y(p);
            for (int rr = 0; rr < p; ++rr) y[rr] = si.Uinv.a[rr][r];
            std::vector<BigInt> cyc(bd.m);
            for (int row = 0; row < bd.m; ++row)
                for (int rr = 0; rr < p; ++rr)
                    if (!y[rr].is_zero()) cyc[row] += so.V.a[row][so.rank + rr] * y[rr];
            bd.H.reps.push_back(std::move(cyc));
        }
        results[k] = std::move(bd);
    });
    for (std::size_t k = 0; k < work.size(); ++k) data_[work[k]] = std::move(results[k]);
}

const Homology::BlockData* Homology::block(int i, int j) const
{
    auto it = data_.find({i, j});
    return it == data_.end() ? nullptr : &it->second;
}

HomGroup Homology::group(int i, int j) const
{
    const BlockData* bd = block(i, j);
    return bd ? bd->H : HomGroup{};
}

std::vector<Bideg> Homology::support() const
{
    std::vector<Bideg> out;
    for (auto& [ij, bd] : data_)
        if (bd.H.free_rank || !bd.H.torsion.empty()) out.push_back(ij);
    return out;
}

std::vector<BigInt> Homology::coords(int i, int j, const std::vector<BigInt>& cycle) const
{
    const BlockData* bd = block(i, j);
    KHLAB_CHECK(bd != nullptr, "no such bigrading");
    KHLAB_CHECK(c_->ring != Ring::mod2, "integer coordinates requested from a mod-2 complex");
    KHLAB_CHECK(static_cast<int>(cycle.size()) == bd->m, "cycle size");
    int p = bd->m - bd->krank;
    // kernel coordinates
    std::vector<BigInt> y(p);
    for (int r = 0; r < bd->m; ++r) {
        BigInt acc;
        for (int cix = 0; cix < bd->m; ++cix)
            if (!cycle[cix].is_zero()) acc += bd->Vinv_out.a[r][cix] * cycle[cix];
        if (r < bd->krank)
            KHLAB_CHECK(acc.is_zero(), "vector is not a cycle");
        else
            y[r - bd->krank] = acc;
    }
    // quotient coordinates w = Uq * y, reduced mod invariant factors
    std::vector<BigInt> out;
    for (int r = 0; r < p; ++r) {
        BigInt acc;
        for (int rr = 0; rr < p; ++rr)
            if (!y[rr].is_zero()) acc += bd->Uq.a[r][rr] * y[rr];
        BigInt dk = bd->qdiag[r];
        if (!dk.is_zero() && dk.is_unit()) continue;  // killed coordinate
        if (!dk.is_zero()) acc = ((acc % dk) + dk) % dk;
        out.push_back(acc);
    }
    return out;
}

std::map<int, long long> Homology::euler() const
{
    std::map<int, long long> chi;
    for (auto& [ij, bd] : data_) {
        long long r = bd.H.free_rank;
        if (r == 0) continue;
        chi[ij.second] += (ij.first % 2 == 0 ? 1 : -1) * r;
    }
    for (auto it = chi.begin(); it != chi.end();)
        it = it->second == 0 ? chi.erase(it) : std::next(it);
    return chi;
}

void ChainMap::verify_chain_map() const
{
    KHLAB_CHECK(src && dst, "unbound chain map");
    // f(dx) == d(f(x)) for every source generator
    for (int g = 0; g < src->size(); ++g) {
        std::map<int, Zu> lhs, rhs;
        for (auto& [t, val] : src->dcol[g])
            for (auto& [ft, fval] : cols[t]) {
                auto& slot = lhs[ft];
                slot += fval * val;
                if (slot.is_zero()) lhs.erase(ft);
            }
        for (auto& [ft, fval] : cols[g])
            for (auto& [t, val] : dst->dcol[ft]) {
                auto& slot = rhs[t];
                slot += val * fval;
                if (slot.is_zero()) rhs.erase(t);
            }
        if (src->ring == Ring::mod2 || dst->ring == Ring::mod2) {
            auto reduce = [](std::map<int, Zu>& m) {
                for (auto it = m.begin(); it != m.end();) {
                    long long v = ((it->second.a % 2) + 2) % 2;
                    if (v == 0)
                        it = m.erase(it);
                    else {
                        it->second = Zu(v, 0);
                        ++it;
                    }
                }
            };
            reduce(lhs);
            reduce(rhs);
        }
        KHLAB_CHECK(lhs == rhs, "not a chain map");
        // degree bookkeeping
        for (auto& [ft, fval] : cols[g]) {
            (void)fval;
            KHLAB_CHECK(dst->deg[ft].first == src->deg[g].first + di && dst->deg[ft].second == src->deg[g].second + dj,
                        "chain map breaks the declared degree shift");
        }
    }
}

bool ChainMap::is_zero() const
{
    for (auto& col : cols)
        if (!col.empty()) return false;
    return true;
}

ChainMap compose(const ChainMap& second, const ChainMap& first)
{
    KHLAB_CHECK(first.dst == second.src, "composition mismatch");
    ChainMap out;
    out.src = first.src;
    out.dst = second.dst;
    out.di = first.di + second.di;
    out.dj = first.dj + second.dj;
    out.cols.assign(first.cols.size(), {});
    for (std::size_t g = 0; g < first.cols.size(); ++g) {
        std::map<int, Zu> acc;
        for (auto& [mid, v1] : first.cols[g])
            for (auto& [tgt, v2] : second.cols[mid]) {
                auto& slot = acc[tgt];
                slot += v2 * v1;
                if (slot.is_zero()) acc.erase(tgt);
            }
        out.cols[g].assign(acc.begin(), acc.end());
    }
    return out;
}

std::vector<std::vector<BigInt>> induced_map(const Homology& hs, const Homology& ht, const ChainMap& f, int i,
                                             int j)
{
    f.verify_chain_map();
    HomGroup Hs = hs.group(i, j);
    auto src_block = hs.complex().block(i, j);
    auto dst_block = ht.complex().block(i + f.di, j + f.dj);
    std::map<int, int> dst_pos;
    for (std::size_t k = 0; k < dst_block.size(); ++k) dst_pos[dst_block[k]] = static_cast<int>(k);
    std::vector<std::vector<BigInt>> out;
    for (int g = 0; g < Hs.ngens(); ++g) {
        // push the representative through f
        std::vector<BigInt> img(dst_block.size());
        for (std::size_t cix = 0; cix < src_block.size(); ++cix) {
            const BigInt& coeff = Hs.reps[g][cix];
            if (coeff.is_zero()) continue;
            for (auto& [tgt, val] : f.cols[src_block[cix]]) {
                KHLAB_CHECK(val.b == 0, "induced map over integer complexes only");
                img[dst_pos.at(tgt)] += coeff * BigInt(val.a);
            }
        }
        out.push_back(ht.coords(i + f.di, j + f.dj, img));
    }
    // transpose to (target coords) x (source gens)
    std::size_t rows = 0;
    for (auto& col : out) rows = std::max(rows, col.size());
    std::vector<std::vector<BigInt>> mat(rows, std::vector<BigInt>(out.size()));
    for (std::size_t c2 = 0; c2 < out.size(); ++c2)
        for (std::size_t r = 0; r < out[c2].size(); ++r) mat[r][c2] = out[c2][r];
    return mat;
}

bool exact_at_middle(const ChainMap& f, const ChainMap& g)
{
    KHLAB_CHECK(f.dst == g.src, "exactness: maps not composable");
    // build the three-term complex per bidegree of mid: src -> mid -> dst
    const ChainCx* mid = f.dst;
    for (auto [i, j] : mid->bidegrees()) {
        auto mblock = mid->block(i, j);
        auto sblock = f.src->block(i - f.di, j - f.dj);
        auto dblock = g.dst->block(i + g.di, j + g.dj);
        std::map<int, int> mpos, dpos;
        for (std::size_t k = 0; k < mblock.size(); ++k) mpos[mblock[k]] = static_cast<int>(k);
        for (std::size_t k = 0; k < dblock.size(); ++k) dpos[dblock[k]] = static_cast<int>(k);
        ZMat A(static_cast<int>(mblock.size()), static_cast<int>(sblock.size()));
        for (std::size_t c = 0; c < sblock.size(); ++c)
            for (auto& [tgt, val] : f.cols[sblock[c]]) A.a[mpos.at(tgt)][static_cast<int>(c)] += BigInt(val.a);
        ZMat B(static_cast<int>(dblock.size()), static_cast<int>(mblock.size()));
        for (std::size_t c = 0; c < mblock.size(); ++c)
            for (auto& [tgt, val] : g.cols[mblock[c]]) B.a[dpos.at(tgt)][static_cast<int>(c)] += BigInt(val.a);
        // H(mid) of  A then B  must vanish: ker B = im A with cokernel torsion-free onto it
        SnfResult sb = smith_normal_form(B);
        int p = static_cast<int>(mblock.size()) - sb.rank;
        ZMat kin(p, A.cols);
        ZMat t = sb.Vinv * A;
        bool ok = true;
        for (int r = 0; r < sb.rank && ok; ++r)
            for (int c = 0; c < t.cols; ++c)
                if (!t.a[r][c].is_zero()) ok = false;
        if (!ok) return false;  // g∘f != 0
        for (int r = 0; r < p; ++r) kin.a[r] = t.a[sb.rank + r];
        SnfResult si = smith_normal_form(kin);
        if (si.rank != p) return false;
        for (auto& dk : si.diag)
            if (!dk.is_unit()) return false;
    }
    return true;
}

Mod2Homology::Mod2Homology(const ChainCx& integral) : c_(&integral)
{
    KHLAB_CHECK(integral.ring == Ring::even || integral.ring == Ring::odd || integral.ring == Ring::mod2,
                "mod-2 reduction of an integer complex");
    for (auto [i, j] : c_->bidegrees()) {
        auto mid = c_->block(i, j);
        auto below = c_->block(i - 1, j);
        F2Mat din(static_cast<int>(mid.size()), static_cast<int>(below.size()));
        std::map<int, int> row_of;
        for (std::size_t t = 0; t < mid.size(); ++t) row_of[mid[t]] = static_cast<int>(t);
        for (std::size_t cix = 0; cix < below.size(); ++cix)
            for (auto& [tgt, val] : c_->dcol[below[cix]])
                if (((val.a % 2) + 2) % 2) din.set(row_of.at(tgt), static_cast<int>(cix), true);
        auto above = c_->block(i + 1, j);
        F2Mat dout(static_cast<int>(above.size()), static_cast<int>(mid.size()));
        std::map<int, int> row_of2;
        for (std::size_t t = 0; t < above.size(); ++t) row_of2[above[t]] = static_cast<int>(t);
        for (std::size_t cix = 0; cix < mid.size(); ++cix)
            for (auto& [tgt, val] : c_->dcol[mid[cix]])
                if (((val.a % 2) + 2) % 2) dout.set(row_of2.at(tgt), static_cast<int>(cix), true);
        data_.emplace(Bideg{i, j}, F2Homology(din, dout));
    }
}

int Mod2Homology::dim(int i, int j) const
{
    auto it = data_.find({i, j});
    return it == data_.end() ? 0 : it->second.dim();
}

std::vector<Bideg> Mod2Homology::support() const
{
    std::vector<Bideg> out;
    for (auto& [ij, h] : data_)
        if (h.dim()) out.push_back(ij);
    return out;
}

const F2Homology* Mod2Homology::block(int i, int j) const
{
    auto it = data_.find({i, j});
    return it == data_.end() ? nullptr : &it->second;
}

std::vector<int> Mod2Homology::indices(int i, int j) const
{
    return c_->block(i, j);
}

F2Mat Mod2Homology::bockstein(int i, int j) const
{
    KHLAB_CHECK(c_->ring != Ring::mod2, "Bockstein needs the integral complex");
    const F2Homology* hsrc = block(i, j);
    const F2Homology* hdst = block(i + 1, j);
    int sdim = hsrc ? hsrc->dim() : 0;
    int ddim = hdst ? hdst->dim() : 0;
    F2Mat out(ddim, sdim);
    if (!sdim || !ddim) return out;
    auto mid = c_->block(i, j);
    auto above = c_->block(i + 1, j);
    std::map<int, int> pos;
    for (std::size_t k = 0; k < above.size(); ++k) pos[above[k]] = static_cast<int>(k);
    for (int g = 0; g < sdim; ++g) {
        const std::vector<char>& rep = hsrc->rep(g);
        // integral lift with 0/1 coefficients, then halve the differential
        std::vector<long long> dx(above.size(), 0);
        for (std::size_t cix = 0; cix < mid.size(); ++cix) {
            if (!rep[cix]) continue;
            for (auto& [tgt, val] : c_->dcol[mid[cix]]) dx[pos.at(tgt)] += val.a;
        }
        std::vector<char> half(above.size(), 0);
        for (std::size_t r = 0; r < dx.size(); ++r) {
            KHLAB_CHECK(dx[r] % 2 == 0, "lifted differential of a mod-2 cocycle is odd");
            half[r] = static_cast<char>(((dx[r] / 2) % 2 + 2) % 2);
        }
        auto coords = hdst->coords(half);
        for (int r = 0; r < ddim; ++r)
            if (coords[r]) out.set(r, g, true);
    }
    return out;
}

}  // namespace khlab
