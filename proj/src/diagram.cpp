#include "khlab/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace khlab {

const std::array<Diagram::Occ, 2>& Diagram::occ(int edge) const
{
    auto it = occ_map.find(edge);
    KHLAB_CHECK(it != occ_map.end(), "unknown edge label");
    return it->second;
}

int Diagram::components() const
{
    // strands continue a<->c and b<->d through each crossing
    std::map<int, int> comp;
    int next = 0;
    std::vector<int> parent;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int e : edges) {
        comp[e] = next++;
        parent.push_back(static_cast<int>(parent.size()));
    }
    auto unite = [&](int a, int b) {
        int ra = find(comp[a]), rb = find(comp[b]);
        if (ra != rb) parent[ra] = rb;
    };
    for (const auto& c : crossings) {
        unite(c.e[0], c.e[2]);
        unite(c.e[1], c.e[3]);
    }
    std::vector<char> seen(parent.size(), 0);
    int count = 0;
    for (int e : edges)
        if (!seen[find(comp[e])]) {
            seen[find(comp[e])] = 1;
            ++count;
        }
    return count + free_loops;
}

void validate(Diagram& d)
{
    KHLAB_CHECK(d.arrows.size() == d.crossings.size(), "arrow count mismatch");
    d.occ_map.clear();
    d.edges.clear();
    std::map<int, std::vector<Diagram::Occ>> occ;
    for (int ci = 0; ci < d.n(); ++ci)
        for (int s = 0; s < 4; ++s) {
            int e = d.crossings[ci].e[s];
            if (e <= 0) throw input_error("edge labels must be positive");
            occ[e].push_back({ci, s});
        }
    for (auto& [e, v] : occ) {
        if (v.size() != 2)
            throw input_error("edge " + std::to_string(e) + " occurs " + std::to_string(v.size()) +
                              " times (must be exactly 2)");
        d.occ_map[e] = {v[0], v[1]};
        d.edges.push_back(e);
    }
    if (d.basepoint && !d.occ_map.count(*d.basepoint))
        throw input_error("basepoint edge " + std::to_string(*d.basepoint) + " not in diagram");
    if (d.based_loop && d.free_loops == 0) throw input_error("based free loop requires a U token");
    if (d.basepoint && d.based_loop) throw input_error("two basepoints given");
    if (d.n() == 0 && d.free_loops == 0) throw input_error("empty diagram");

    // Solve strand orientations. Each (crossing,slot) is a head (edge points
    // into the crossing) or a tail. Slot 0 is a head and slot 2 a tail; slots
    // 1/3 depend on the crossing sign x: positive means slot1=tail, slot3=head.
    // Every edge must get one head and one tail. Propagate; components with no
    // under-strand anchor default their first crossing to positive.
    std::vector<int> sign(d.n(), 0);
    auto role = [&](int ci, int slot, int sgn) -> int {
        (void)ci;
        // +1 = head, -1 = tail
        switch (slot) {
            case 0: return +1;
            case 2: return -1;
            case 1: return sgn > 0 ? -1 : +1;
            default: return sgn > 0 ? +1 : -1;
        }
    };
    // constraint per edge: role(occ0) + role(occ1) == 0
    bool progress = true;
    auto fixed_role = [&](int ci, int slot) -> int {
        if (slot == 0) return +1;
        if (slot == 2) return -1;
        if (sign[ci] == 0) return 0;
        return role(ci, slot, sign[ci]);
    };
    while (true) {
        progress = false;
        for (int e : d.edges) {
            auto& [o1, o2] = d.occ_map[e];
            int r1 = fixed_role(o1.first, o1.second);
            int r2 = fixed_role(o2.first, o2.second);
            if (r1 != 0 && r2 != 0) {
                if (r1 + r2 != 0) throw input_error("inconsistent orientation at edge " + std::to_string(e));
                continue;
            }
            if (r1 == 0 && r2 == 0) continue;
            auto force = [&](Diagram::Occ o, int want) {
                int need = (o.second == 1) ? (want == -1 ? +1 : -1) : (want == +1 ? +1 : -1);
                // slot1: tail iff positive; slot3: head iff positive
                if (sign[o.first] == 0) {
                    sign[o.first] = need;
                    progress = true;
                }
                else if (sign[o.first] != need)
                    throw input_error("inconsistent orientation at edge " + std::to_string(e));
            };
            if (r1 == 0)
                force(o1, -r2);
            else
                force(o2, -r1);
        }
        if (!progress) {
            // seed an undetermined crossing (component never passing under)
            int seeded = -1;
            for (int ci = 0; ci < d.n(); ++ci)
                if (sign[ci] == 0) {
                    sign[ci] = +1;
                    seeded = ci;
                    break;
                }
            if (seeded < 0) break;
        }
    }
    d.n_plus = d.n_minus = 0;
    for (int ci = 0; ci < d.n(); ++ci) {
        d.crossings[ci].sign = sign[ci];
        (sign[ci] > 0 ? d.n_plus : d.n_minus)++;
    }
    // final consistency sweep
    for (int e : d.edges) {
        auto& [o1, o2] = d.occ_map[e];
        if (role(o1.first, o1.second, sign[o1.first]) + role(o2.first, o2.second, sign[o2.first]) != 0)
            throw input_error("inconsistent orientation at edge " + std::to_string(e));
    }
}

namespace {

struct Tok {
    std::string s;
};

std::vector<std::string> split_tokens(const std::string& text)
{
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch)) && depth == 0) {
            if (!cur.empty()) {
                out.push_back(cur);
                cur.clear();
            }
            continue;
        }
        if (ch == '[') ++depth;
        if (ch == ']') --depth;
        cur.push_back(ch);
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<Crossing> parse_pd_body(const std::string& body)
{
    std::vector<Crossing> out;
    std::size_t i = 0;
    auto skip_ws = [&]() {
        while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
    };
    skip_ws();
    while (i < body.size()) {
        if (body[i] != 'X') throw input_error("expected X(...) in PD body");
        ++i;
        if (i >= body.size() || (body[i] != '(' && body[i] != '[')) throw input_error("expected ( after X");
        char close = body[i] == '(' ? ')' : ']';
        ++i;
        Crossing c;
        for (int k = 0; k < 4; ++k) {
            skip_ws();
            std::size_t j = i;
            while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j]))) ++j;
            if (j == i) throw input_error("expected edge label in X(...)");
            c.e[k] = std::stoi(body.substr(i, j - i));
            i = j;
            skip_ws();
            if (k < 3) {
                if (i >= body.size() || body[i] != ',') throw input_error("expected , in X(...)");
                ++i;
            }
        }
        skip_ws();
        if (i >= body.size() || body[i] != close) throw input_error("expected closing bracket in X(...)");
        ++i;
        out.push_back(c);
        skip_ws();
        if (i < body.size()) {
            if (body[i] != ',') throw input_error("expected , between crossings");
            ++i;
            skip_ws();
        }
    }
    return out;
}

}  // namespace

Diagram parse_pd(const std::string& text)
{
    Diagram d;
    bool saw_pd = false;
    bool saw_arrows = false;
    int based_loop_index = -1;
    for (const std::string& tok : split_tokens(text)) {
        if (tok.rfind("PD[", 0) == 0) {
            if (saw_pd) throw input_error("multiple PD[...] blocks");
            saw_pd = true;
            if (tok.back() != ']') throw input_error("unterminated PD[...]");
            d.crossings = parse_pd_body(tok.substr(3, tok.size() - 4));
        }
        else if (tok == "U" || tok == "U*") {
            if (tok == "U*") {
                if (based_loop_index >= 0) throw input_error("two basepoints given");
                based_loop_index = d.free_loops;
            }
            d.free_loops++;
        }
        else if (tok.rfind("bp=", 0) == 0) {
            if (d.basepoint) throw input_error("two basepoints given");
            d.basepoint = std::stoi(tok.substr(3));
        }
        else if (tok.rfind("arrows=", 0) == 0) {
            saw_arrows = true;
            for (char ch : tok.substr(7)) {
                if (ch == 'T')
                    d.arrows.push_back(1);
                else if (ch == 'F')
                    d.arrows.push_back(0);
                else
                    throw input_error("arrows= must be a string of T/F");
            }
        }
        else
            throw input_error("unrecognized token: " + tok);
    }
    if (based_loop_index > 0) {
        // keep the based loop first so it is addressable
        d.based_loop = true;
    }
    else if (based_loop_index == 0)
        d.based_loop = true;
    if (saw_arrows) {
        if (d.arrows.size() != d.crossings.size()) throw input_error("arrows= length mismatch");
    }
    else
        d.arrows.assign(d.crossings.size(), 1);
    validate(d);
    return d;
}

std::string serialize(const Diagram& d)
{
    std::ostringstream out;
    if (d.n() > 0) {
        out << "PD[";
        for (int i = 0; i < d.n(); ++i) {
            if (i) out << ",";
            const auto& e = d.crossings[i].e;
            out << "X(" << e[0] << "," << e[1] << "," << e[2] << "," << e[3] << ")";
        }
        out << "]";
    }
    for (int i = 0; i < d.free_loops; ++i) {
        if (d.n() > 0 || i > 0) out << " ";
        out << (i == 0 && d.based_loop ? "U*" : "U");
    }
    bool all_true = std::all_of(d.arrows.begin(), d.arrows.end(), [](char a) { return a != 0; });
    if (!all_true) {
        out << " arrows=";
        for (char a : d.arrows) out << (a ? 'T' : 'F');
    }
    if (d.basepoint) out << " bp=" << *d.basepoint;
    return out.str();
}

Diagram mirror(const Diagram& d)
{
    Diagram m = d;
    m.occ_map.clear();
    for (int i = 0; i < d.n(); ++i) {
        const auto& e = d.crossings[i].e;
        // new under-in = old over-in; counterclockwise order of slots is kept
        if (d.crossings[i].sign > 0)
            m.crossings[i].e = {e[3], e[0], e[1], e[2]};
        else
            m.crossings[i].e = {e[1], e[2], e[3], e[0]};
        m.crossings[i].sign = 0;
    }
    validate(m);
    return m;
}

Diagram set_crossing_orientations(const Diagram& d, const std::vector<char>& arrows)
{
    if (arrows.size() != static_cast<std::size_t>(d.n())) throw input_error("arrow count mismatch");
    Diagram out = d;
    out.arrows = arrows;
    validate(out);
    return out;
}

Diagram reorder_crossings(const Diagram& d, const std::vector<int>& perm)
{
    KHLAB_CHECK(perm.size() == static_cast<std::size_t>(d.n()), "permutation size");
    Diagram out = d;
    for (int i = 0; i < d.n(); ++i) {
        out.crossings[i] = d.crossings[perm[i]];
        out.arrows[i] = d.arrows[perm[i]];
    }
    validate(out);
    return out;
}

Diagram relabel_edges(const Diagram& d, const std::map<int, int>& relab)
{
    Diagram out = d;
    for (auto& c : out.crossings)
        for (int s = 0; s < 4; ++s) {
            auto it = relab.find(c.e[s]);
            if (it != relab.end()) c.e[s] = it->second;
        }
    if (out.basepoint) {
        auto it = relab.find(*out.basepoint);
        if (it != relab.end()) out.basepoint = it->second;
    }
    validate(out);
    return out;
}

int fresh_edge_label(const Diagram& d, int count)
{
    int top = 0;
    for (int e : d.edges) top = std::max(top, e);
    (void)count;
    return top + 1;
}

}  // namespace khlab
