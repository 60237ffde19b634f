#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "khlab/util.hpp"

namespace khlab {

// Dense F2 matrix with word-packed rows.
class F2Mat {
public:
    F2Mat() = default;
    F2Mat(int rows, int cols) : r_(rows), c_(cols), w_((cols + 63) / 64), bits_(static_cast<std::size_t>(rows) * w_, 0) {}

    int rows() const { return r_; }
    int cols() const { return c_; }

    bool get(int i, int j) const { return (bits_[static_cast<std::size_t>(i) * w_ + j / 64] >> (j % 64)) & 1u; }
    void set(int i, int j, bool v)
    {
        uint64_t& w = bits_[static_cast<std::size_t>(i) * w_ + j / 64];
        uint64_t m = 1ULL << (j % 64);
        if (v)
            w |= m;
        else
            w &= ~m;
    }
    void flip(int i, int j) { bits_[static_cast<std::size_t>(i) * w_ + j / 64] ^= 1ULL << (j % 64); }

    void xor_row(int dst, int src)
    {
        uint64_t* d = row_ptr(dst);
        const uint64_t* s = row_ptr(src);
        for (std::size_t k = 0; k < w_; ++k) d[k] ^= s[k];
    }
    bool row_zero(int i) const
    {
        const uint64_t* p = row_ptr(i);
        for (std::size_t k = 0; k < w_; ++k)
            if (p[k]) return false;
        return true;
    }

    F2Mat transposed() const
    {
        F2Mat t(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j)
                if (get(i, j)) t.set(j, i, true);
        return t;
    }

    friend F2Mat operator*(const F2Mat& a, const F2Mat& b)
    {
        KHLAB_CHECK(a.c_ == b.r_, "F2Mat product shape");
        F2Mat out(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i) {
            uint64_t* o = out.row_ptr(i);
            for (int k = 0; k < a.c_; ++k)
                if (a.get(i, k)) {
                    const uint64_t* s = b.row_ptr(k);
                    for (std::size_t t = 0; t < out.w_; ++t) o[t] ^= s[t];
                }
        }
        return out;
    }

    bool operator==(const F2Mat& o) const { return r_ == o.r_ && c_ == o.c_ && bits_ == o.bits_; }

    int rank() const;

    // Column-space solve: find x with M x = b; nullopt if inconsistent.
    std::optional<std::vector<char>> solve(const std::vector<char>& b) const;

    // Basis of the (right) nullspace, as columns.
    std::vector<std::vector<char>> nullspace() const;

private:
    int r_ = 0, c_ = 0;
    std::size_t w_ = 0;
    std::vector<uint64_t> bits_;

    uint64_t* row_ptr(int i) { return bits_.data() + static_cast<std::size_t>(i) * w_; }
    const uint64_t* row_ptr(int i) const { return bits_.data() + static_cast<std::size_t>(i) * w_; }
};

// Affine system A x = b over F2 with a caller-supplied variable priority.
// Returns the solution minimizing the tuple (x[order[0]], x[order[1]], ...)
// lexicographically, or nullopt if the system is inconsistent.
std::optional<std::vector<char>> f2_min_solution(const F2Mat& A, const std::vector<char>& b,
                                                 const std::vector<int>& order);

// F2 homology of a pair of composable maps d_in: F2^p -> F2^m, d_out: F2^m -> F2^q
// (d_out ∘ d_in = 0). Exposes a basis of cycles completing a basis of boundaries,
// and coordinates of arbitrary cycles in that homology basis.
class F2Homology {
public:
    F2Homology() = default;
    F2Homology(const F2Mat& d_in, const F2Mat& d_out);

    int dim() const { return dim_; }
    // chain-coordinate representative of the k-th homology basis class
    const std::vector<char>& rep(int k) const { return reps_[k]; }
    // homology coordinates of a cycle given in chain coordinates
    std::vector<char> coords(const std::vector<char>& cycle) const;

private:
    int dim_ = 0;
    int m_ = 0;
    std::vector<std::vector<char>> reps_;
    // solver data: columns = [boundaries basis | homology reps], rows = chain coords
    F2Mat basis_;
    int nboundary_ = 0;
};

}  // namespace khlab
