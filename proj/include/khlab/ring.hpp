#pragma once

#include <cstdint>
#include <string>

#include "khlab/util.hpp"

namespace khlab {

// Coefficient rings: the group ring Z[xi]/(xi^2-1) and its three quotients.
enum class Ring : uint8_t { unified, even, odd, mod2 };

inline const char* ring_name(Ring r)
{
    switch (r) {
        case Ring::unified: return "unified";
        case Ring::even: return "even";
        case Ring::odd: return "odd";
        case Ring::mod2: return "mod2";
    }
    return "?";
}

// Element a + b*xi. In the specialized rings b is kept at 0:
// even folds xi to +1, odd to -1, mod2 reduces a+b modulo 2.
struct Zu {
    long long a = 0, b = 0;

    Zu() = default;
    Zu(long long a_, long long b_ = 0) : a(a_), b(b_) {}

    static Zu xi() { return Zu(0, 1); }
    static Zu one() { return Zu(1, 0); }

    bool is_zero() const { return a == 0 && b == 0; }
    // Units of Z[xi]/(xi^2-1) are exactly {1,-1,xi,-xi}; each is its own inverse.
    bool is_unit() const { return (a == 0 && (b == 1 || b == -1)) || (b == 0 && (a == 1 || a == -1)); }

    Zu operator-() const { return Zu(-a, -b); }
    Zu operator+(const Zu& o) const { return Zu(a + o.a, b + o.b); }
    Zu operator-(const Zu& o) const { return Zu(a - o.a, b - o.b); }
    Zu operator*(const Zu& o) const { return Zu(a * o.a + b * o.b, a * o.b + b * o.a); }
    Zu& operator+=(const Zu& o)
    {
        a += o.a;
        b += o.b;
        return *this;
    }
    Zu& operator*=(const Zu& o)
    {
        *this = *this * o;
        return *this;
    }
    bool operator==(const Zu& o) const { return a == o.a && b == o.b; }
    bool operator!=(const Zu& o) const { return !(*this == o); }

    Zu times_xi() const { return Zu(b, a); }
    Zu xi_pow(int k) const { return (k & 1) ? times_xi() : *this; }

    long long at_plus1() const { return a + b; }
    long long at_minus1() const { return a - b; }

    // Fold into the given ring's normal form.
    Zu fold(Ring r) const
    {
        switch (r) {
            case Ring::unified: return *this;
            case Ring::even: return Zu(a + b, 0);
            case Ring::odd: return Zu(a - b, 0);
            case Ring::mod2: return Zu(((a + b) % 2 + 2) % 2, 0);
        }
        return *this;
    }

    Zu inv_unit() const
    {
        KHLAB_CHECK(is_unit(), "inverse of a non-unit");
        return *this;  // all four units square to 1
    }

    std::string str() const;
};

inline std::string Zu::str() const
{
    if (is_zero()) return "0";
    std::string s;
    if (a != 0) s += std::to_string(a);
    if (b != 0) {
        if (!s.empty() && b > 0) s += "+";
        if (b == -1)
            s += "-xi";
        else if (b == 1)
            s += "xi";
        else
            s += std::to_string(b) + "xi";
    }
    return s;
}

}  // namespace khlab
