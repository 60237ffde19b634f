#include "doctest.h"
#include "khlab/bigint.hpp"

#include <algorithm>
#include <random>

using khlab::BigInt;

TEST_CASE("bigint arithmetic agrees with native on random values")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        long long a = static_cast<long long>(rng()) >> (2 + rng() % 40);
        long long b = static_cast<long long>(rng()) >> (2 + rng() % 40);
        BigInt A(a), B(b);
        CHECK((A + B).to_ll() == a + b);
        CHECK((A - B).to_ll() == a - b);
        __int128 p = static_cast<__int128>(a) * b;
        BigInt P = A * B;
        __int128 q = p;
        bool neg = q < 0;
        if (neg) q = -q;
        std::string s;
        while (q) {
            s.push_back(static_cast<char>('0' + static_cast<int>(q % 10)));
            q /= 10;
        }
        if (s.empty()) s = "0";
        if (neg && s != "0") s.push_back('-');
        std::reverse(s.begin(), s.end());
        CHECK(P.to_string() == s);
        if (b != 0) {
            BigInt qd, rd;
            BigInt::divmod(A, B, qd, rd);
            CHECK(qd.to_ll() == a / b);
            CHECK(rd.to_ll() == a % b);
        }
    }
}

TEST_CASE("bigint long division round trips on large operands")
{
    std::mt19937_64 rng(11);
    auto random_big = [&](int limbs) {
        BigInt x(0);
        for (int i = 0; i < limbs; ++i)
            x = x * BigInt(1LL << 32) + BigInt(static_cast<long long>(rng() & 0xffffffffULL));
        return x;
    };
    for (int trial = 0; trial < 300; ++trial) {
        BigInt a = random_big(1 + static_cast<int>(rng() % 6));
        BigInt b = random_big(1 + static_cast<int>(rng() % 4));
        if (b.is_zero()) continue;
        if (rng() & 1) a = -a;
        if (rng() & 1) b = -b;
        BigInt q, r;
        BigInt::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(r.cmp_abs(b) < 0);
        if (!r.is_zero()) CHECK(r.sign() == a.sign());
        BigInt qr = a.divround(b);
        BigInt rem = a - qr * b;
        CHECK((rem + rem).cmp_abs(b) <= 0);
    }
}

TEST_CASE("bigint decimal round trip")
{
    const char* big = "123456789012345678901234567890123456789";
    BigInt x = BigInt::from_string(big);
    CHECK(x.to_string() == big);
    CHECK((-x).to_string() == std::string("-") + big);
    CHECK(BigInt::from_string("-42").to_ll() == -42);
    CHECK(BigInt(0).to_string() == "0");
    CHECK(BigInt::gcd(BigInt(12 * 35), BigInt(18 * 35)).to_ll() == 6 * 35);
}
