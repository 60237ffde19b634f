#include "khlab/verify.hpp"

#include <chrono>

#include "khlab/burnside.hpp"
#include "khlab/concordance.hpp"
#include "khlab/homology.hpp"
#include "khlab/jones.hpp"

namespace khlab {

namespace {

using Clock = std::chrono::steady_clock;

void merge_report(SuiteResult& sr, const std::string& name, const CheckReport& rep)
{
    sr.checks += 1;
    if (!rep.pass) {
        sr.pass = false;
        for (auto& f : rep.failures) sr.failures.push_back(name + ": " + f);
    }
}

void fail(SuiteResult& sr, const std::string& what)
{
    sr.pass = false;
    sr.failures.push_back(what);
}

long long cube_size(const Diagram& d)
{
    long long total = 0;
    for (Vertex v = 0; v < (1u << d.n()); ++v) total += 1LL << resolve(d, v).ncircles;
    return total;
}

bool same_homology(const ChainCx& a, const ChainCx& b, int jobs)
{
    Homology ha(a, jobs, false), hb(b, jobs, false);
    if (ha.support() != hb.support()) return false;
    for (auto [i, j] : ha.support())
        if (!ha.group(i, j).iso(hb.group(i, j))) return false;
    return true;
}

Diagram with_basepoint(const Diagram& d)
{
    Diagram out = d;
    if (out.has_basepoint()) return out;
    if (!out.edges.empty())
        out.basepoint = out.edges.front();
    else
        out.based_loop = true;
    validate(out);
    return out;
}

void suite_d2(SuiteResult& sr, const std::vector<CorpusEntry>& corpus, int jobs)
{
    for (auto& entry : corpus)
        for (Ring r : {Ring::unified, Ring::even, Ring::odd, Ring::mod2}) {
            try {
                ChainCx c = build_complex(entry.d, r, jobs);
                c.check_degrees();
                c.check_d_squared();
                sr.checks++;
            }
            catch (const std::exception& ex) {
                fail(sr, entry.name + "/" + ring_name(r) + ": " + ex.what());
            }
        }
}

void suite_mod2(SuiteResult& sr, const std::vector<CorpusEntry>& corpus, int jobs)
{
    for (auto& entry : corpus) {
        KhCube cu = build_cube(entry.d, Ring::unified, jobs);
        ChainCx e = cochain_complex(build_cube(entry.d, Ring::even, jobs, &cu.eps));
        ChainCx o = cochain_complex(build_cube(entry.d, Ring::odd, jobs, &cu.eps));
        bool ok = e.size() == o.size();
        for (int g = 0; ok && g < e.size(); ++g) {
            std::map<int, int> me, mo;
            for (auto& [t, v] : e.dcol[g])
                if (((v.a % 2) + 2) % 2) me[t] = 1;
            for (auto& [t, v] : o.dcol[g])
                if (((v.a % 2) + 2) % 2) mo[t] = 1;
            ok = me == mo;
        }
        sr.checks++;
        if (!ok) fail(sr, entry.name + ": mod-2 reductions differ");
    }
}

void suite_pullback(SuiteResult& sr, const std::vector<CorpusEntry>& corpus, int jobs)
{
    for (auto& entry : corpus) merge_report(sr, entry.name, unified_pullback_check(entry.d, jobs));
}

void suite_ses(SuiteResult& sr, const std::vector<CorpusEntry>& corpus, int jobs)
{
    for (auto& entry : corpus) {
        merge_report(sr, entry.name + "/e-u-o", ses_even_unified_odd(entry.d, SesVariant::e_u_o, jobs));
        merge_report(sr, entry.name + "/o-u-e", ses_even_unified_odd(entry.d, SesVariant::o_u_e, jobs));
    }
}

void suite_splitting(SuiteResult& sr, const std::vector<CorpusEntry>& corpus, int jobs)
{
    for (auto& entry : corpus) merge_report(sr, entry.name, odd_splitting_check(with_basepoint(entry.d), jobs));
}

void suite_reduced(SuiteResult& sr, const std::vector<CorpusEntry>& corpus, int jobs)
{
    for (auto& entry : corpus) {
        Diagram d = with_basepoint(entry.d);
        merge_report(sr, entry.name + "/even", reduced_ses_check(d, Ring::even, jobs));
        merge_report(sr, entry.name + "/odd", reduced_ses_check(d, Ring::odd, jobs));
    }
}

void suite_burnside(SuiteResult& sr, const std::vector<CorpusEntry>& corpus, int jobs)
{
    for (auto& entry : corpus) {
        try {
            KhCube uni = build_cube(entry.d, Ring::unified, jobs);
            KhCube odd = build_cube(entry.d, Ring::odd, jobs, &uni.eps);
            SignedBurnsideFunctor f = build_functor(odd);  // square matchings checked here
            HexReport hr = check_hexagons(f);
            sr.checks += 1 + hr.faces_checked;
            if (!hr.pass) fail(sr, entry.name + ": " + hr.failure);
            if (!totalization_duality_check(f, odd)) fail(sr, entry.name + ": totalization duality broken");
            if (!doubling_matches_unified(f, uni)) fail(sr, entry.name + ": doubling mismatch");
            Diagram bd = with_basepoint(entry.d);
            KhCube oddb = build_cube(bd, Ring::odd, jobs);
            SignedBurnsideFunctor fb = build_functor(oddb);
            if (!reduced_functor_signs_match(fb, oddb)) fail(sr, entry.name + ": reduced signs differ");
        }
        catch (const std::exception& ex) {
            fail(sr, entry.name + ": " + ex.what());
        }
    }
}

void suite_jones(SuiteResult& sr, const std::vector<CorpusEntry>& corpus, int jobs)
{
    for (auto& entry : corpus) {
        Homology h(build_complex(entry.d, Ring::even, jobs), jobs, false);
        Laurent chi;
        for (auto& [e, v] : h.euler()) chi.add(e, v);
        sr.checks++;
        if (!(chi == jones_bracket(entry.d)))
            fail(sr, entry.name + ": Euler characteristic disagrees with the bracket");
    }
}

void suite_invariance(SuiteResult& sr, const std::vector<CorpusEntry>& corpus, int jobs, uint64_t seed)
{
    std::mt19937_64 rng(seed);
    for (auto& entry : corpus) {
        const Diagram& d = entry.d;
        ChainCx base = build_complex(d, Ring::odd, jobs);
        sr.checks++;
        if (d.n() > 1) {
            std::vector<int> perm(d.n());
            for (int k = 0; k < d.n(); ++k) perm[k] = k;
            std::shuffle(perm.begin(), perm.end(), rng);
            if (!same_homology(base, build_complex(reorder_crossings(d, perm), Ring::odd, jobs), jobs))
                fail(sr, entry.name + ": crossing reorder changed homology");
        }
        if (d.n() > 0) {
            std::vector<char> arrows(d.arrows);
            arrows[rng() % arrows.size()] ^= 1;
            if (!same_homology(base, build_complex(set_crossing_orientations(d, arrows), Ring::odd, jobs), jobs))
                fail(sr, entry.name + ": arrow flip changed homology");
            auto edges = all_edges(d.n());
            std::vector<int> prio(edges.size());
            for (std::size_t k = 0; k < prio.size(); ++k) prio[k] = static_cast<int>(k);
            std::shuffle(prio.begin(), prio.end(), rng);
            KhCube cube = build_cube(d, Ring::odd, jobs, nullptr, &prio);
            if (!same_homology(base, cochain_complex(cube), jobs))
                fail(sr, entry.name + ": alternate edge assignment changed homology");
        }
        // a short random move script (kept small so the moved cube stays cheap)
        if (d.n() > 6 || cube_size(d) > 3000) continue;
        MovieScript script = random_reidemeister_movie(d, 1 + static_cast<int>(rng() % 2), rng());
        Diagram cur = d;
        for (auto& m : script.moves) {
            if (m.kind == MoveKind::R1Pos) cur = r1_insert(cur, m.args[0], true);
            if (m.kind == MoveKind::R1Neg) cur = r1_insert(cur, m.args[0], false);
            if (m.kind == MoveKind::R2) cur = r2_insert(cur, m.args[0], m.args[1], true);
        }
        if (!same_homology(base, build_complex(cur, Ring::odd, jobs), jobs))
            fail(sr, entry.name + ": Reidemeister moves changed homology");
    }
}

void suite_moves(SuiteResult& sr, const std::vector<CorpusEntry>& corpus, int jobs, uint64_t seed)
{
    std::mt19937_64 rng(seed);
    int movies = 0;
    for (auto& entry : corpus) {
        if (entry.d.n() > 5) continue;
        if (entry.d.components() != 1 || entry.d.free_loops > 0) continue;
        try {
            int s0 = s_invariant(entry.d, jobs);
            // tube movie: genus 0, connected
            MovieScript script;
            script.moves.push_back({MoveKind::Birth, {}});
            script.moves.push_back({MoveKind::Saddle, {entry.d.edges[rng() % entry.d.edges.size()], 0}});
            MovieRunner ro(entry.d, Ring::odd, jobs);
            MovieRunner re(entry.d, Ring::even, jobs);
            for (auto& m : script.moves) {
                ro.apply(m);
                re.apply(m);
            }
            sr.checks++;
            if (!ro.witness().is_chain_map) fail(sr, entry.name + ": movie witness broken");
            for (int g = 0; g < ro.witness().source->size(); ++g) {
                std::map<int, int> mo, me;
                for (auto& [t, v] : ro.witness().map.cols[g])
                    if (((v.a % 2) + 2) % 2) mo[t] = 1;
                for (auto& [t, v] : re.witness().map.cols[g])
                    if (((v.a % 2) + 2) % 2) me[t] = 1;
                if (mo != me) {
                    fail(sr, entry.name + ": odd and even witnesses differ mod 2");
                    break;
                }
            }
            int genus = (ro.saddles() - ro.births() - ro.deaths()) / 2;
            if (ro.diagram().components() == 1) {
                int s1 = s_invariant(ro.diagram(), jobs);
                if (std::abs(s0 - s1) > 2 * std::max(genus, 0))
                    fail(sr, entry.name + ": genus bound violated");
                ++movies;
            }
        }
        catch (const std::exception& ex) {
            fail(sr, entry.name + ": " + ex.what());
        }
    }
    sr.checks += movies;
}

void suite_s(SuiteResult& sr, const std::vector<CorpusEntry>& corpus, int jobs)
{
    for (auto& entry : corpus) {
        if (entry.d.components() != 1) continue;
        try {
            int s = s_invariant(entry.d, jobs);  // both formulas asserted inside
            int sm = s_invariant(mirror(entry.d), jobs);
            sr.checks++;
            if (s != -sm) fail(sr, entry.name + ": mirror antisymmetry broken");
        }
        catch (const std::exception& ex) {
            fail(sr, entry.name + ": " + ex.what());
        }
    }
}

}  // namespace

std::vector<std::string> suite_names()
{
    return {"d2",      "mod2",    "pullback", "ses",   "splitting", "reduced",
            "burnside", "jones",  "invariance", "moves", "s"};
}

SuiteResult run_suite(const std::string& name, const std::vector<CorpusEntry>& corpus, int jobs,
                      uint64_t seed)
{
    SuiteResult sr;
    sr.suite = name;
    auto t0 = Clock::now();
    if (corpus.empty()) sr.failures.push_back("warning: empty corpus, vacuous pass");
    if (name == "d2")
        suite_d2(sr, corpus, jobs);
    else if (name == "mod2")
        suite_mod2(sr, corpus, jobs);
    else if (name == "pullback")
        suite_pullback(sr, corpus, jobs);
    else if (name == "ses")
        suite_ses(sr, corpus, jobs);
    else if (name == "splitting")
        suite_splitting(sr, corpus, jobs);
    else if (name == "reduced")
        suite_reduced(sr, corpus, jobs);
    else if (name == "burnside")
        suite_burnside(sr, corpus, jobs);
    else if (name == "jones")
        suite_jones(sr, corpus, jobs);
    else if (name == "invariance")
        suite_invariance(sr, corpus, jobs, seed);
    else if (name == "moves")
        suite_moves(sr, corpus, jobs, seed);
    else if (name == "s")
        suite_s(sr, corpus, jobs);
    else
        throw input_error("unknown suite: " + name);
    sr.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return sr;
}

std::vector<SuiteResult> run_suites(const std::vector<std::string>& names,
                                    const std::vector<CorpusEntry>& corpus, int jobs, uint64_t seed)
{
    std::vector<SuiteResult> out;
    for (auto& n : names) out.push_back(run_suite(n, corpus, jobs, seed));
    return out;
}

}  // namespace khlab
