#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "khlab/ring.hpp"

namespace khlab {

// Monomials over a circle set are strictly-ascending products of distinct
// circle generators, packed as bitmasks (bit i = circle i present). A repeated
// generator kills the monomial; transposing adjacent generators costs xi.
using Mono = uint64_t;

// Finite Z[xi]/(xi^2-1)-linear combination of monomials; zero coefficients absent.
struct AlgebraElement {
    std::map<Mono, Zu> terms;

    bool is_zero() const { return terms.empty(); }
    void add(Mono m, const Zu& c)
    {
        if (c.is_zero()) return;
        auto [it, fresh] = terms.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    AlgebraElement& operator+=(const AlgebraElement& o)
    {
        for (auto& [m, c] : o.terms) add(m, c);
        return *this;
    }
    AlgebraElement times(const Zu& c) const
    {
        AlgebraElement out;
        for (auto& [m, v] : terms) out.add(m, v * c);
        return out;
    }
    AlgebraElement fold(Ring r) const
    {
        AlgebraElement out;
        for (auto& [m, v] : terms) out.add(m, v.fold(r));
        return out;
    }
    bool operator==(const AlgebraElement& o) const { return terms == o.terms; }
};

// Sort a word of circle ids into a monomial: zero on repeats, otherwise the
// set with coefficient coeff * xi^(parity of the sorting permutation).
AlgebraElement normalize(const std::vector<int>& word, const Zu& coeff);

// xi-parity of prepending circle z to the sorted set m (z must not lie in m):
// the number of circles in m below z.
inline int prepend_parity(Mono m, int z)
{
    return popcount64(m & ((1ULL << z) - 1));
}

// Multiply a monomial set by a single circle generator on the left.
inline void left_mul_circle(AlgebraElement& out, int z, Mono m, const Zu& c)
{
    if (m >> z & 1) return;  // square kills
    out.add(m | (1ULL << z), c.xi_pow(prepend_parity(m, z)));
}

// A relabeling of circle ids (a not-necessarily-monotone injection), applied
// to monomials with the xi sign produced by re-sorting.
struct CircleMap {
    std::vector<int> to;  // to[i] = image circle id, or -1 for "collapsed" ids handled by the caller

    // image of a plain relabel; parity = inversions of the induced permutation on the set
    void apply(AlgebraElement& out, Mono m, const Zu& c) const;
};

// Algebra morphism for a merge cobordism (circles a1, a2 of the source become
// a in the target; other source circles relabel through `rest`).
AlgebraElement merge_monomial(Mono m, const Zu& coeff, int a1, int a2, int a, const CircleMap& rest);

// Module map for a split cobordism (source circle a becomes a1, a2 in the
// target; the surgery arrow points a1 -> a2; other circles relabel through
// `rest`): embed with a -> a1 and left-multiply by (a1 + xi a2).
AlgebraElement split_monomial(Mono m, const Zu& coeff, int a, int a1, int a2, const CircleMap& rest);

// Same embedding with a -> a2 (used to confirm the choice is immaterial).
AlgebraElement split_monomial_alt(Mono m, const Zu& coeff, int a, int a1, int a2, const CircleMap& rest);

}  // namespace khlab
