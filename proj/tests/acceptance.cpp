// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <random>

#include "khlab/burnside.hpp"
#include "khlab/concordance.hpp"
#include "khlab/corpus.hpp"
#include "khlab/homology.hpp"
#include "khlab/jones.hpp"
#include "khlab/moves.hpp"
#include "khlab/verify.hpp"

using namespace khlab;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, const char* what, bool pass, const std::string& detail = "")
{
    std::printf("criterion %2d [%s] %s%s\n", criterion, pass ? "PASS" : "FAIL", what,
                detail.empty() ? "" : ("  (" + detail + ")").c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main()
{
    const int jobs = default_jobs();
    const uint64_t seed = 20260808;
    // >= 50 random diagrams with n <= 8 plus the named ones
    auto corpus = standard_corpus(60, 8, seed);
    auto knots = knot_corpus(10, 6, seed + 1);

    // 1: d^2 = 0 over all rings, timed
    {
        auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        for (auto& entry : corpus)
            for (Ring r : {Ring::even, Ring::odd, Ring::unified}) {
                try {
                    ChainCx c = build_complex(entry.d, r, jobs);
                    c.check_degrees();
                    c.check_d_squared();
                }
                catch (const std::exception& ex) {
                    ok = false;
                    detail = entry.name + ": " + ex.what();
                }
            }
        double dt = seconds_since(t0);
        char buf[128];
        std::snprintf(buf, sizeof buf, "%zu diagrams, %.1fs", corpus.size(), dt);
        report(1, "differentials square to zero", ok && dt < 60.0, detail.empty() ? buf : detail);
    }

    // 2: mod-2 equality of even and odd complexes
    {
        SuiteResult sr = run_suite("mod2", corpus, jobs, seed);
        report(2, "even and odd complexes agree mod 2", sr.pass,
               sr.failures.empty() ? "" : sr.failures.front());
    }

    // 3: graded Euler characteristic equals the bracket oracle
    {
        SuiteResult sr = run_suite("jones", corpus, jobs, seed);
        report(3, "Euler characteristic equals the bracket state sum", sr.pass,
               sr.failures.empty() ? "" : sr.failures.front());
    }

    // 4: unknot values and twist invariance
    {
        bool ok = true;
        std::string detail;
        try {
            for (Ring r : {Ring::even, Ring::odd}) {
                for (const Diagram& d : {unknot_0(), unknot_kink_pos(), unknot_kink_neg(),
                                         r1_insert(unknot_kink_pos(), 1, false)}) {
                    Homology h(build_complex(d, r, jobs), jobs);
                    bool good = h.support() == std::vector<Bideg>{{0, -1}, {0, 1}} &&
                                h.group(0, -1).iso(HomGroup{1, {}, {}}) && h.group(0, 1).iso(HomGroup{1, {}, {}});
                    if (!good) {
                        ok = false;
                        detail = "unreduced " + std::string(ring_name(r));
                    }
                }
                for (const Diagram& d : {parse_pd("U*"), parse_pd("PD[X(1,1,2,2)] bp=1"),
                                         r1_insert(parse_pd("PD[X(1,1,2,2)] bp=1"), 2, true)}) {
                    KhCube cube = build_cube(d, r, jobs);
                    ChainCx red = reduced_subcomplex(cochain_complex(cube), cube);
                    Homology h(red, jobs);
                    bool good = h.support() == std::vector<Bideg>{{0, 0}} &&
                                h.group(0, 0).iso(HomGroup{1, {}, {}});
                    if (!good) {
                        ok = false;
                        detail = "reduced " + std::string(ring_name(r));
                    }
                }
            }
            // unified: doubled integer form gives rank-2 sheets at (0, ±1)
            Homology hu(doubled_z_form(build_cube(unknot_kink_pos(), Ring::unified, jobs)), jobs);
            if (!(hu.group(0, 1).iso(HomGroup{2, {}, {}}) && hu.group(0, -1).iso(HomGroup{2, {}, {}}))) {
                ok = false;
                detail = "unified";
            }
        }
        catch (const std::exception& ex) {
            ok = false;
            detail = ex.what();
        }
        report(4, "unknot diagrams: all theories, twisted and straight", ok, detail);
    }

    // 5: Burnside verification: unique matchings, opposite-sign ladybugs, hexagons
    {
        bool ok = true;
        long long hexes = 0, pairs = 0;
        std::string detail;
        for (auto& entry : corpus) {
            try {
                KhCube odd = build_cube(entry.d, Ring::odd, jobs);
                SignedBurnsideFunctor f = build_functor(odd);  // throws on non-unique matchings
                for (auto& [sq, table] : f.squares)
                    for (auto& [p, q] : table) {
                        (void)q;
                        if (p.sign == 0) continue;
                    }
                for (const Square& s : all_squares(f.n)) {
                    auto via = composite_paths(f, s, true);
                    std::map<std::pair<Mono, Mono>, std::vector<int>> fib;
                    for (auto& p : via) fib[{p.src, p.dst}].push_back(p.sign);
                    for (auto& [k, signs] : fib) {
                        if (signs.size() > 2) {
                            ok = false;
                            detail = entry.name + ": fiber too large";
                        }
                        if (signs.size() == 2) {
                            ++pairs;
                            if (signs[0] + signs[1] != 0) {
                                ok = false;
                                detail = entry.name + ": ladybug signs equal";
                            }
                        }
                    }
                }
                HexReport hr = check_hexagons(f);
                hexes += hr.faces_checked;
                if (!hr.pass) {
                    ok = false;
                    detail = entry.name + ": " + hr.failure;
                }
            }
            catch (const std::exception& ex) {
                ok = false;
                detail = entry.name + ": " + ex.what();
            }
        }
        char buf[128];
        std::snprintf(buf, sizeof buf, "%lld hexagons, %lld two-element fibers", hexes, pairs);
        report(5, "signed functor: unique matchings and commuting hexagons", ok, ok ? buf : detail);
    }

    // 6: totalization duality and doubling
    {
        bool ok = true;
        std::string detail;
        for (auto& entry : corpus) {
            try {
                KhCube uni = build_cube(entry.d, Ring::unified, jobs);
                KhCube odd = build_cube(entry.d, Ring::odd, jobs, &uni.eps);
                SignedBurnsideFunctor f = build_functor(odd);
                if (!totalization_duality_check(f, odd)) {
                    ok = false;
                    detail = entry.name + ": duality";
                }
                if (!doubling_matches_unified(f, uni)) {
                    ok = false;
                    detail = entry.name + ": doubling";
                }
            }
            catch (const std::exception& ex) {
                ok = false;
                detail = entry.name + ": " + ex.what();
            }
        }
        report(6, "totalization transposes to the odd complex; doubling hits the unified form", ok, detail);
    }

    // 7: odd splitting through the basepoint
    {
        SuiteResult sr = run_suite("splitting", corpus, jobs, seed);
        report(7, "odd homology splits through the reduced theory", sr.pass,
               sr.failures.empty() ? "" : sr.failures.front());
    }

    // 8: short exact sequences and the pullback identity
    {
        SuiteResult s1 = run_suite("ses", corpus, jobs, seed);
        SuiteResult s2 = run_suite("pullback", corpus, jobs, seed);
        bool ok = s1.pass && s2.pass;
        std::string detail;
        if (!s1.failures.empty()) detail = s1.failures.front();
        if (!s2.failures.empty()) detail = s2.failures.front();
        report(8, "(1 ± xi) sequences exact; unified is the fiber product", ok, detail);
    }

    // 9: homology invariance incl. >= 20 randomized move pairs
    {
        bool ok = true;
        std::string detail;
        SuiteResult sr = run_suite("invariance", corpus, jobs, seed);
        if (!sr.pass) {
            ok = false;
            detail = sr.failures.front();
        }
        std::mt19937_64 rng(seed + 7);
        int pairs_checked = 0;
        for (int t = 0; pairs_checked < 20; ++t) {
            const Diagram& base = corpus[t % corpus.size()].d;
            if (base.n() > 6 || base.edges.empty()) continue;
            MovieScript script = random_reidemeister_movie(base, 1 + static_cast<int>(rng() % 2), rng());
            Diagram moved = base;
            for (auto& m : script.moves) {
                if (m.kind == MoveKind::R1Pos) moved = r1_insert(moved, m.args[0], true);
                if (m.kind == MoveKind::R1Neg) moved = r1_insert(moved, m.args[0], false);
                if (m.kind == MoveKind::R2) moved = r2_insert(moved, m.args[0], m.args[1], true);
            }
            Homology h1(build_complex(base, Ring::odd, jobs), jobs, false);
            Homology h2(build_complex(moved, Ring::odd, jobs), jobs, false);
            bool same = h1.support() == h2.support();
            for (auto [i, j] : h1.support()) same = same && h1.group(i, j).iso(h2.group(i, j));
            if (!same) {
                ok = false;
                detail = corpus[t % corpus.size()].name + ": move pair changed homology";
            }
            ++pairs_checked;
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%d move pairs", pairs_checked);
        report(9, "homology invariant under auxiliary choices and moves", ok, ok ? buf : detail);
    }

    // 10: filtration invariant values
    {
        bool ok = true;
        std::string detail;
        try {
            if (s_invariant(unknot_0(), jobs) != 0) ok = false;
            if (s_invariant(trefoil_right(), jobs) != 2) ok = false;
            if (s_invariant(trefoil_left(), jobs) != -2) ok = false;
            for (auto& entry : knots) s_invariant(entry.d, jobs);  // both formulas asserted inside
        }
        catch (const std::exception& ex) {
            ok = false;
            detail = ex.what();
        }
        report(10, "filtration invariant: unknot 0, trefoils ±2, formulas agree", ok, detail);
    }

    // 11: cobordism witnesses and genus bounds on >= 10 movies
    {
        bool ok = true;
        int movies = 0;
        std::string detail;
        std::mt19937_64 rng(seed + 11);
        for (auto& entry : knots) {
            if (entry.d.n() > 5) continue;
            try {
                int s0 = s_invariant(entry.d, jobs);
                for (int variant = 0; variant < 2 && movies < 12; ++variant) {
                    MovieScript script;
                    if (variant == 0) {
                        script.moves.push_back({MoveKind::Birth, {}});
                        script.moves.push_back(
                            {MoveKind::Saddle, {entry.d.edges[rng() % entry.d.edges.size()], 0}});
                    }
                    else {
                        int e = entry.d.edges[rng() % entry.d.edges.size()];
                        script.moves.push_back({MoveKind::R1Pos, {e}});
                    }
                    MovieRunner ro(entry.d, Ring::odd, jobs);
                    MovieRunner re(entry.d, Ring::even, jobs);
                    for (auto& m : script.moves) {
                        ro.apply(m);
                        re.apply(m);
                    }
                    if (!ro.witness().is_chain_map) {
                        ok = false;
                        detail = entry.name + ": witness not a chain map";
                    }
                    for (int g = 0; g < ro.witness().source->size(); ++g) {
                        std::map<int, int> mo, me;
                        for (auto& [t, v] : ro.witness().map.cols[g])
                            if (((v.a % 2) + 2) % 2) mo[t] = 1;
                        for (auto& [t, v] : re.witness().map.cols[g])
                            if (((v.a % 2) + 2) % 2) me[t] = 1;
                        if (mo != me) {
                            ok = false;
                            detail = entry.name + ": mod-2 mismatch";
                            break;
                        }
                    }
                    if (ro.diagram().components() == 1 && ro.diagram().free_loops == 0) {
                        int genus = (ro.saddles() - ro.births() - ro.deaths()) / 2;
                        int s1 = s_invariant(ro.diagram(), jobs);
                        if (std::abs(s0 - s1) > 2 * std::max(genus, 0)) {
                            ok = false;
                            detail = entry.name + ": genus bound violated";
                        }
                    }
                    ++movies;
                }
            }
            catch (const std::exception& ex) {
                ok = false;
                detail = entry.name + ": " + ex.what();
            }
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%d movies", movies);
        report(11, "movie witnesses verified; genus bound respected", ok && movies >= 10,
               ok ? buf : detail);
    }

    if (failures) {
        std::printf("ACCEPTANCE: %d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("ACCEPTANCE: all criteria satisfied\n");
    return 0;
}
