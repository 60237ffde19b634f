#include "khlab/jones.hpp"

#include <functional>
#include <numeric>
#include <sstream>
#include <vector>

namespace khlab {

std::string Laurent::str() const
{
    if (c.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto& [e, v] : c) {
        long long av = v < 0 ? -v : v;
        if (first)
            out << (v < 0 ? "-" : "");
        else
            out << (v < 0 ? " - " : " + ");
        if (av != 1 || e == 0) out << av;
        if (e != 0) {
            if (av != 1) out << "*";
            out << "q";
            if (e != 1) out << "^" << e;
        }
        first = false;
    }
    return out.str();
}

Laurent jones_bracket(const Diagram& d)
{
    const int n = d.n();
    Laurent total;
    std::vector<int> parent(4 * n);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (uint32_t v = 0; v < (1u << n); ++v) {
        std::iota(parent.begin(), parent.end(), 0);
        auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
        for (int ci = 0; ci < n; ++ci) {
            if ((v >> ci) & 1) {
                unite(4 * ci + 0, 4 * ci + 3);
                unite(4 * ci + 1, 4 * ci + 2);
            }
            else {
                unite(4 * ci + 0, 4 * ci + 1);
                unite(4 * ci + 2, 4 * ci + 3);
            }
        }
        for (int e : d.edges) {
            const auto& oc = d.occ(e);
            unite(4 * oc[0].first + oc[0].second, 4 * oc[1].first + oc[1].second);
        }
        int circles = d.free_loops;
        for (int p = 0; p < 4 * n; ++p)
            if (find(p) == p) ++circles;
        Laurent delta;
        delta.add(-1, 1);
        delta.add(1, 1);
        Laurent prod;
        prod.add(popcount32(v), (popcount32(v) % 2) ? -1 : 1);  // (-q)^{|v|}
        for (int k = 0; k < circles; ++k) prod = prod * delta;
        total = total + prod;
    }
    Laurent norm;
    norm.add(d.n_plus - 2 * d.n_minus, (d.n_minus % 2) ? -1 : 1);
    return norm * total;
}

}  // namespace khlab
