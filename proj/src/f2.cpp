#include "khlab/f2.hpp"

#include <algorithm>

namespace khlab {

int F2Mat::rank() const
{
    F2Mat m = *this;
    int rank = 0;
    for (int j = 0; j < c_ && rank < r_; ++j) {
        int piv = -1;
        for (int i = rank; i < r_; ++i)
            if (m.get(i, j)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (std::size_t k = 0; k < w_; ++k) std::swap(m.row_ptr(piv)[k], m.row_ptr(rank)[k]);
        for (int i = 0; i < r_; ++i)
            if (i != rank && m.get(i, j)) m.xor_row(i, rank);
        ++rank;
    }
    return rank;
}

std::optional<std::vector<char>> F2Mat::solve(const std::vector<char>& b) const
{
    KHLAB_CHECK(static_cast<int>(b.size()) == r_, "F2Mat::solve shape");
    // Gaussian elimination on [A | b]
    F2Mat m(r_, c_ + 1);
    for (int i = 0; i < r_; ++i) {
        for (int j = 0; j < c_; ++j)
            if (get(i, j)) m.set(i, j, true);
        if (b[i]) m.set(i, c_, true);
    }
    std::vector<int> pivcol;
    int rank = 0;
    for (int j = 0; j < c_ && rank < r_; ++j) {
        int piv = -1;
        for (int i = rank; i < r_; ++i)
            if (m.get(i, j)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int k = 0; k <= c_; ++k) {
                bool t = m.get(piv, k);
                m.set(piv, k, m.get(rank, k));
                m.set(rank, k, t);
            }
        for (int i = 0; i < r_; ++i)
            if (i != rank && m.get(i, j)) m.xor_row(i, rank);
        pivcol.push_back(j);
        ++rank;
    }
    for (int i = rank; i < r_; ++i)
        if (m.get(i, c_)) return std::nullopt;
    std::vector<char> x(c_, 0);
    for (int i = 0; i < rank; ++i) x[pivcol[i]] = m.get(i, c_) ? 1 : 0;
    return x;
}

std::vector<std::vector<char>> F2Mat::nullspace() const
{
    F2Mat m = *this;
    std::vector<int> pivot_of_col(c_, -1);
    int rank = 0;
    for (int j = 0; j < c_ && rank < r_; ++j) {
        int piv = -1;
        for (int i = rank; i < r_; ++i)
            if (m.get(i, j)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (std::size_t k = 0; k < m.w_; ++k) std::swap(m.row_ptr(piv)[k], m.row_ptr(rank)[k]);
        for (int i = 0; i < r_; ++i)
            if (i != rank && m.get(i, j)) m.xor_row(i, rank);
        pivot_of_col[j] = rank;
        ++rank;
    }
    std::vector<std::vector<char>> basis;
    for (int j = 0; j < c_; ++j) {
        if (pivot_of_col[j] >= 0) continue;
        std::vector<char> v(c_, 0);
        v[j] = 1;
        for (int jj = 0; jj < c_; ++jj)
            if (pivot_of_col[jj] >= 0 && m.get(pivot_of_col[jj], j)) v[jj] = 1;
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<char>> f2_min_solution(const F2Mat& A, const std::vector<char>& b,
                                                 const std::vector<int>& order)
{
    const int n = A.cols();
    KHLAB_CHECK(static_cast<int>(order.size()) == n, "f2_min_solution order size");
    // Permute columns so the highest-priority variable comes first, row reduce,
    // take the solution with free variables zero, then canonicalize against the
    // nullspace in the same priority order. That yields the priority-lex minimum.
    std::vector<int> inv(n);
    for (int k = 0; k < n; ++k) inv[order[k]] = k;
    F2Mat P(A.rows(), n);
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < n; ++j)
            if (A.get(i, j)) P.set(i, inv[j], true);
    auto x0p = P.solve(b);
    if (!x0p) return std::nullopt;
    std::vector<char> x = *x0p;
    auto null_basis = P.nullspace();
    // reduce the nullspace to echelon form over the priority order
    std::vector<std::pair<int, std::vector<char>>> ech;  // (leading index, vector)
    for (auto& v : null_basis) {
        std::vector<char> w = v;
        for (auto& [lead, u] : ech)
            if (w[lead]) {
                for (int k = 0; k < n; ++k) w[k] ^= u[k];
            }
        int lead = -1;
        for (int k = 0; k < n; ++k)
            if (w[k]) {
                lead = k;
                break;
            }
        if (lead >= 0) ech.emplace_back(lead, std::move(w));
    }
    std::sort(ech.begin(), ech.end(), [](const auto& a, const auto& b2) { return a.first < b2.first; });
    // back-substitute so each echelon vector is zero at the other leading slots
    for (std::size_t i = ech.size(); i-- > 0;)
        for (std::size_t j = i + 1; j < ech.size(); ++j)
            if (ech[i].second[ech[j].first])
                for (int k = 0; k < n; ++k) ech[i].second[k] ^= ech[j].second[k];
    for (auto& [lead, u] : ech)
        if (x[lead])
            for (int k = 0; k < n; ++k) x[k] ^= u[k];
    std::vector<char> out(n, 0);
    for (int j = 0; j < n; ++j) out[j] = x[inv[j]];
    return out;
}

F2Homology::F2Homology(const F2Mat& d_in, const F2Mat& d_out)
{
    m_ = d_out.cols();
    KHLAB_CHECK(d_in.rows() == m_ || (d_in.rows() == 0 && d_in.cols() == 0), "F2Homology shapes");
    // cycles: nullspace of d_out
    auto cyc = d_out.rows() == 0 ? std::vector<std::vector<char>>() : d_out.nullspace();
    if (d_out.rows() == 0) {
        cyc.clear();
        for (int j = 0; j < m_; ++j) {
            std::vector<char> v(m_, 0);
            v[j] = 1;
            cyc.push_back(std::move(v));
        }
    }
    // boundaries: columns of d_in, reduced to a basis; then extend by cycles.
    // basis_ columns: first the boundary basis, then homology representatives.
    std::vector<std::vector<char>> cols;
    auto try_add = [&](const std::vector<char>& v, bool* added) {
        // incremental elimination over rows
        *added = false;
        std::vector<char> w = v;
        for (auto& c : cols) {
            int lead = -1;
            for (int k = 0; k < m_; ++k)
                if (c[k]) {
                    lead = k;
                    break;
                }
            if (lead >= 0 && w[lead]) {
                for (int k = 0; k < m_; ++k) w[k] = static_cast<char>(w[k] ^ c[k]);
            }
        }
        bool nz = false;
        for (int k = 0; k < m_; ++k) nz = nz || w[k];
        if (nz) {
            *added = true;
            cols.push_back(std::move(w));
        }
    };
    // For the elimination above to work, columns must stay in echelon form: sort after insertions.
    auto renorm = [&]() {
        std::sort(cols.begin(), cols.end(), [&](const std::vector<char>& a, const std::vector<char>& b) {
            int la = m_, lb = m_;
            for (int k = 0; k < m_; ++k)
                if (a[k]) {
                    la = k;
                    break;
                }
            for (int k = 0; k < m_; ++k)
                if (b[k]) {
                    lb = k;
                    break;
                }
            return la < lb;
        });
    };
    std::vector<std::vector<char>> bnd_reps, hom_reps;
    if (d_in.rows() == m_) {
        for (int j = 0; j < d_in.cols(); ++j) {
            std::vector<char> v(m_, 0);
            for (int i = 0; i < m_; ++i) v[i] = d_in.get(i, j);
            bool added = false;
            try_add(v, &added);
            if (added) {
                bnd_reps.push_back(v);
                renorm();
            }
        }
    }
    nboundary_ = static_cast<int>(bnd_reps.size());
    for (auto& v : cyc) {
        bool added = false;
        try_add(v, &added);
        if (added) {
            hom_reps.push_back(v);
            renorm();
        }
    }
    dim_ = static_cast<int>(hom_reps.size());
    reps_ = hom_reps;
    basis_ = F2Mat(m_, nboundary_ + dim_);
    for (int j = 0; j < nboundary_; ++j)
        for (int i = 0; i < m_; ++i)
            if (bnd_reps[j][i]) basis_.set(i, j, true);
    for (int j = 0; j < dim_; ++j)
        for (int i = 0; i < m_; ++i)
            if (hom_reps[j][i]) basis_.set(i, nboundary_ + j, true);
}

std::vector<char> F2Homology::coords(const std::vector<char>& cycle) const
{
    auto sol = basis_.solve(cycle);
    KHLAB_CHECK(sol.has_value(), "vector is not a cycle up to boundaries");
    std::vector<char> out(dim_, 0);
    for (int k = 0; k < dim_; ++k) out[k] = (*sol)[nboundary_ + k];
    return out;
}

}  // namespace khlab
