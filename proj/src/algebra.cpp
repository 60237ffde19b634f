#include "khlab/algebra.hpp"

#include <algorithm>

namespace khlab {

AlgebraElement normalize(const std::vector<int>& word, const Zu& coeff)
{
    AlgebraElement out;
    if (coeff.is_zero()) return out;
    // count inversions and reject repeats
    int inv = 0;
    Mono m = 0;
    for (std::size_t i = 0; i < word.size(); ++i) {
        for (std::size_t j = i + 1; j < word.size(); ++j) {
            if (word[i] == word[j]) return out;
            if (word[i] > word[j]) ++inv;
        }
        m |= 1ULL << word[i];
    }
    out.add(m, coeff.xi_pow(inv));
    return out;
}

void CircleMap::apply(AlgebraElement& out, Mono m, const Zu& c) const
{
    // Relabel the (ascending) circles of m; the images may interleave, so the
    // sign is xi^(inversions of the image sequence).
    std::vector<int> img;
    for (int i = 0; i < 64; ++i)
        if (m >> i & 1) {
            KHLAB_CHECK(i < static_cast<int>(to.size()) && to[i] >= 0, "relabel out of range");
            img.push_back(to[i]);
        }
    int inv = 0;
    Mono mm = 0;
    for (std::size_t i = 0; i < img.size(); ++i) {
        for (std::size_t j = i + 1; j < img.size(); ++j)
            if (img[i] > img[j]) ++inv;
        mm |= 1ULL << img[i];
    }
    out.add(mm, c.xi_pow(inv));
}

AlgebraElement merge_monomial(Mono m, const Zu& coeff, int a1, int a2, int a, const CircleMap& rest)
{
    AlgebraElement out;
    bool has1 = m >> a1 & 1, has2 = m >> a2 & 1;
    if (has1 && has2) return out;  // a ⊗ a = 0
    std::vector<int> img;
    for (int i = 0; i < 64; ++i)
        if (m >> i & 1) {
            if (i == a1 || i == a2)
                img.push_back(a);
            else
                img.push_back(rest.to[i]);
        }
    int inv = 0;
    Mono mm = 0;
    for (std::size_t i = 0; i < img.size(); ++i) {
        for (std::size_t j = i + 1; j < img.size(); ++j)
            if (img[i] > img[j]) ++inv;
        mm |= 1ULL << img[i];
    }
    out.add(mm, coeff.xi_pow(inv));
    return out;
}

namespace {

AlgebraElement split_embed(Mono m, const Zu& coeff, int a, int a_img, int a1, int a2, const CircleMap& rest)
{
    AlgebraElement embedded;
    std::vector<int> img;
    for (int i = 0; i < 64; ++i)
        if (m >> i & 1) img.push_back(i == a ? a_img : rest.to[i]);
    int inv = 0;
    Mono mm = 0;
    for (std::size_t i = 0; i < img.size(); ++i) {
        for (std::size_t j = i + 1; j < img.size(); ++j)
            if (img[i] > img[j]) ++inv;
        mm |= 1ULL << img[i];
    }
    embedded.add(mm, coeff.xi_pow(inv));
    AlgebraElement out;
    for (auto& [mono, c] : embedded.terms) {
        left_mul_circle(out, a1, mono, c);
        left_mul_circle(out, a2, mono, c.times_xi());
    }
    return out;
}

}  // namespace

AlgebraElement split_monomial(Mono m, const Zu& coeff, int a, int a1, int a2, const CircleMap& rest)
{
    return split_embed(m, coeff, a, a1, a1, a2, rest);
}

AlgebraElement split_monomial_alt(Mono m, const Zu& coeff, int a, int a1, int a2, const CircleMap& rest)
{
    return split_embed(m, coeff, a, a2, a1, a2, rest);
}

}  // namespace khlab
