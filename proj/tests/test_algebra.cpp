#include "doctest.h"
#include "khlab/algebra.hpp"

#include <algorithm>
#include <random>

using namespace khlab;

namespace {
CircleMap identity_map(int n)
{
    CircleMap cm;
    cm.to.resize(n);
    for (int i = 0; i < n; ++i) cm.to[i] = i;
    return cm;
}
}  // namespace

TEST_CASE("normalize sorts with xi signs")
{
    // (a2, a1) -> {a1,a2} with coefficient xi
    AlgebraElement x = normalize({2, 1}, Zu::one());
    REQUIRE(x.terms.size() == 1);
    CHECK(x.terms.begin()->first == ((1ULL << 1) | (1ULL << 2)));
    CHECK(x.terms.begin()->second == Zu::xi());
    // repeated letter dies
    CHECK(normalize({1, 1}, Zu::one()).is_zero());
    // even permutation: coefficient 1
    AlgebraElement y = normalize({3, 1, 2}, Zu::one());
    CHECK(y.terms.begin()->second == Zu::one());
}

TEST_CASE("normalize is idempotent and permutation-coherent")
{
    std::mt19937 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> word;
        int len = 1 + rng() % 5;
        for (int k = 0; k < len; ++k) word.push_back(static_cast<int>(rng() % 6));
        AlgebraElement base = normalize(word, Zu::one());
        // shuffle and track parity
        std::vector<int> perm = word;
        int parity = 0;
        for (int s = 0; s < 8; ++s) {
            int i = static_cast<int>(rng() % len), j = static_cast<int>(rng() % len);
            if (i == j) continue;
            std::swap(perm[i], perm[j]);
            parity ^= 1;
        }
        AlgebraElement other = normalize(perm, Zu::one().xi_pow(parity));
        CHECK(base == other);
    }
}

TEST_CASE("merge formulas")
{
    // circles {0,1} merge into 0, bystander 2 -> 1
    CircleMap rest;
    rest.to = {-1, -1, 1};
    // monomial {a1} -> {a}
    AlgebraElement m1 = merge_monomial(1ULL << 0, Zu::one(), 0, 1, 0, rest);
    CHECK(m1.terms.begin()->first == 1ULL);
    CHECK(m1.terms.begin()->second == Zu::one());
    // {a1,a2} -> 0
    CHECK(merge_monomial(0b11, Zu::one(), 0, 1, 0, rest).is_zero());
    // {a1, b} -> {a, b'}
    AlgebraElement m2 = merge_monomial(0b101, Zu::one(), 0, 1, 0, rest);
    CHECK(m2.terms.begin()->first == 0b11ULL);
}

TEST_CASE("split formulas")
{
    // circle 0 splits into 0,1 (arrow 0 -> 1); bystander 1 -> 2
    CircleMap rest;
    rest.to = {-1, 2};
    // empty monomial -> a1 + xi a2
    AlgebraElement s0 = split_monomial(0, Zu::one(), 0, 0, 1, rest);
    REQUIRE(s0.terms.size() == 2);
    CHECK(s0.terms.at(1ULL << 0) == Zu::one());
    CHECK(s0.terms.at(1ULL << 1) == Zu::xi());
    // {a} -> {a1,a2} with coefficient 1
    AlgebraElement s1 = split_monomial(1, Zu::one(), 0, 0, 1, rest);
    REQUIRE(s1.terms.size() == 1);
    CHECK(s1.terms.at(0b11ULL) == Zu::one());
    // {b} -> a1 b + xi a2 b, normalized
    AlgebraElement s2 = split_monomial(0b10, Zu::one(), 0, 0, 1, rest);
    CHECK(s2.terms.size() == 2);
    CHECK(s2.terms.count((1ULL << 0) | (1ULL << 2)));
    CHECK(s2.terms.count((1ULL << 1) | (1ULL << 2)));
}

TEST_CASE("split is independent of the embedding choice")
{
    std::mt19937 rng(6);
    CircleMap rest;
    rest.to = {-1, 2, 3, 4};
    for (int trial = 0; trial < 64; ++trial) {
        Mono m = rng() % 16;
        AlgebraElement a = split_monomial(m, Zu::one(), 0, 0, 1, rest);
        AlgebraElement b = split_monomial_alt(m, Zu::one(), 0, 0, 1, rest);
        CHECK(a == b);
    }
}

TEST_CASE("specialization commutes with the operations")
{
    CircleMap rest;
    rest.to = {-1, 2};
    for (Ring r : {Ring::even, Ring::odd, Ring::mod2}) {
        for (Mono m = 0; m < 4; ++m) {
            AlgebraElement s = split_monomial(m, Zu::one(), 0, 0, 1, rest);
            AlgebraElement folded_after = s.fold(r);
            AlgebraElement folded_before = split_monomial(m, Zu::one().fold(r), 0, 0, 1, rest).fold(r);
            CHECK(folded_after == folded_before);
        }
    }
}
