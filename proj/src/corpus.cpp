#include "khlab/corpus.hpp"

#include <algorithm>

#include "khlab/resolution.hpp"

namespace khlab {

namespace {

// total generator count of the cube; used to keep random corpora at desk scale
long long cube_size(const Diagram& d)
{
    long long total = 0;
    for (Vertex v = 0; v < (1u << d.n()); ++v) total += 1LL << resolve(d, v).ncircles;
    return total;
}

}  // namespace

Diagram braid_closure(int strands, const std::vector<BraidLetter>& word)
{
    KHLAB_CHECK(strands >= 1, "braid needs strands");
    // current edge label at each strand position
    std::vector<int> at(strands);
    for (int p = 0; p < strands; ++p) at[p] = p + 1;
    std::vector<int> first = at;
    int next = strands + 1;
    Diagram d;
    std::vector<char> touched(strands, 0);
    for (const BraidLetter& l : word) {
        KHLAB_CHECK(l.i >= 1 && l.i < strands, "braid letter out of range");
        int p = at[l.i - 1], q = at[l.i];
        int r = next++, s = next++;
        Crossing c;
        if (l.sign > 0)
            c.e = {q, s, r, p};
        else
            c.e = {p, q, s, r};
        d.crossings.push_back(c);
        at[l.i - 1] = r;
        at[l.i] = s;
        touched[l.i - 1] = touched[l.i] = 1;
    }
    // closure: identify the top labels with the bottom labels
    std::map<int, int> relab;
    for (int p = 0; p < strands; ++p) {
        if (!touched[p]) {
            d.free_loops += 1;  // never crossed: a crossingless component
            continue;
        }
        relab[at[p]] = first[p];
    }
    for (auto& c : d.crossings)
        for (int sl = 0; sl < 4; ++sl) {
            auto it = relab.find(c.e[sl]);
            if (it != relab.end()) c.e[sl] = it->second;
        }
    d.arrows.assign(d.crossings.size(), 1);
    validate(d);
    return d;
}

Diagram unknot_0() { return parse_pd("U"); }
Diagram unknot_kink_pos() { return parse_pd("PD[X(1,1,2,2)]"); }
Diagram unknot_kink_neg() { return parse_pd("PD[X(1,2,2,1)]"); }
Diagram unknot_clasp() { return parse_pd("PD[X(2,4,3,1),X(3,4,2,1)]"); }
Diagram hopf_neg() { return parse_pd("PD[X(1,4,2,3),X(3,2,4,1)]"); }
Diagram hopf_pos() { return braid_closure(2, {{1, 1}, {1, 1}}); }
Diagram trefoil_left() { return parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"); }
Diagram trefoil_right() { return braid_closure(2, {{1, 1}, {1, 1}, {1, 1}}); }
Diagram figure_eight() { return braid_closure(3, {{1, 1}, {2, -1}, {1, 1}, {2, -1}}); }

Diagram unlink(int k)
{
    Diagram d;
    d.free_loops = k;
    validate(d);
    return d;
}

std::vector<CorpusEntry> standard_corpus(int count, int max_crossings, uint64_t seed)
{
    std::vector<CorpusEntry> out;
    out.push_back({"unknot", unknot_0()});
    out.push_back({"unknot-kink+", unknot_kink_pos()});
    out.push_back({"unknot-kink-", unknot_kink_neg()});
    out.push_back({"unknot-clasp", unknot_clasp()});
    out.push_back({"unlink2", unlink(2)});
    out.push_back({"hopf-", hopf_neg()});
    out.push_back({"hopf+", hopf_pos()});
    out.push_back({"trefoil-left", trefoil_left()});
    out.push_back({"trefoil-right", trefoil_right()});
    out.push_back({"figure-eight", figure_eight()});
    std::mt19937_64 rng(seed);
    int made = 0;
    while (static_cast<int>(out.size()) < count) {
        int strands = 2 + static_cast<int>(rng() % 3);
        int len = 1 + static_cast<int>(rng() % static_cast<uint64_t>(max_crossings));
        if (len > max_crossings) len = max_crossings;
        std::vector<BraidLetter> word;
        for (int t = 0; t < len; ++t)
            word.push_back({1 + static_cast<int>(rng() % static_cast<uint64_t>(strands - 1)),
                            (rng() & 1) ? 1 : -1});
        Diagram d = braid_closure(strands, word);
        if (d.n() > max_crossings) continue;
        if (cube_size(d) > 12000) continue;
        out.push_back({"braid-" + std::to_string(made++), d});
    }
    return out;
}

std::vector<CorpusEntry> knot_corpus(int count, int max_crossings, uint64_t seed)
{
    std::vector<CorpusEntry> out;
    out.push_back({"unknot-kink+", unknot_kink_pos()});
    out.push_back({"trefoil-left", trefoil_left()});
    out.push_back({"trefoil-right", trefoil_right()});
    out.push_back({"figure-eight", figure_eight()});
    std::mt19937_64 rng(seed);
    int made = 0;
    int guard = 0;
    while (static_cast<int>(out.size()) < count && guard++ < 10000) {
        int strands = 2 + static_cast<int>(rng() % 2);
        int len = 1 + static_cast<int>(rng() % static_cast<uint64_t>(max_crossings));
        std::vector<BraidLetter> word;
        for (int t = 0; t < len; ++t)
            word.push_back({1 + static_cast<int>(rng() % static_cast<uint64_t>(strands - 1)),
                            (rng() & 1) ? 1 : -1});
        Diagram d = braid_closure(strands, word);
        if (d.n() > max_crossings || d.free_loops > 0) continue;
        if (d.components() != 1) continue;
        if (cube_size(d) > 4000) continue;
        out.push_back({"knot-" + std::to_string(made++), d});
    }
    return out;
}

MovieScript random_reidemeister_movie(const Diagram& d, int moves, uint64_t seed)
{
    std::mt19937_64 rng(seed);
    MovieScript script;
    Diagram cur = d;
    for (int t = 0; t < moves; ++t) {
        int kind = static_cast<int>(rng() % 3);
        bool done = false;
        if (kind == 1 && cur.n() > 0) {
            // corner clasp: a crossing corner with two distinct through-edges
            for (int tries = 0; tries < 8 && !done; ++tries) {
                int ci = static_cast<int>(rng() % cur.n());
                int s = static_cast<int>(rng() % 4);
                int f = cur.crossings[ci].e[s], g = cur.crossings[ci].e[(s + 1) % 4];
                if (f == g) continue;
                const auto& of = cur.occ(f);
                const auto& og = cur.occ(g);
                if (of[0].first == of[1].first || og[0].first == og[1].first) continue;
                try {
                    Diagram next = r2_insert(cur, f, g, rng() & 1);
                    script.moves.push_back({MoveKind::R2, {f, g}});
                    cur = next;
                    done = true;
                }
                catch (const input_error&) {
                }
            }
        }
        if (!done && !cur.edges.empty()) {
            int e = cur.edges[rng() % cur.edges.size()];
            bool pos = rng() & 1;
            script.moves.push_back({pos ? MoveKind::R1Pos : MoveKind::R1Neg, {e}});
            cur = r1_insert(cur, e, pos);
        }
    }
    return script;
}

}  // namespace khlab
