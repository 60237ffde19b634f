#pragma once

#include <map>
#include <string>

#include "khlab/diagram.hpp"

namespace khlab {

// Laurent polynomial in q with integer coefficients.
struct Laurent {
    std::map<int, long long> c;  // exponent -> coefficient, zeros absent

    void add(int e, long long v)
    {
        if (!v) return;
        auto [it, fresh] = c.emplace(e, v);
        if (!fresh) {
            it->second += v;
            if (!it->second) c.erase(it);
        }
    }
    friend Laurent operator*(const Laurent& a, const Laurent& b)
    {
        Laurent out;
        for (auto& [e1, v1] : a.c)
            for (auto& [e2, v2] : b.c) out.add(e1 + e2, v1 * v2);
        return out;
    }
    friend Laurent operator+(const Laurent& a, const Laurent& b)
    {
        Laurent out = a;
        for (auto& [e, v] : b.c) out.add(e, v);
        return out;
    }
    bool operator==(const Laurent& o) const { return c == o.c; }
    std::string str() const;  // ascending exponents, e.g. "q^-2 + 2 + q^2"
};

// Unnormalized Jones polynomial by the bracket state sum: iterate over all
// smoothings, count circles with a local union-find (independent of the
// resolution module), weight (-q)^{|v|}, multiply (q+1/q)^{circles}, and
// normalize by (-1)^{n_-} q^{n_+ - 2 n_-}. The unknot gives q + 1/q.
Laurent jones_bracket(const Diagram& d);

}  // namespace khlab
