#include "khlab/json_out.hpp"

#include <sstream>

#include "khlab/burnside.hpp"
#include "khlab/concordance.hpp"
#include "khlab/homology.hpp"
#include "khlab/jones.hpp"

namespace khlab {

Coeff parse_coeff(const std::string& s)
{
    if (s == "Z") return Coeff::Z;
    if (s == "F2") return Coeff::F2;
    if (s == "Q") return Coeff::Q;
    throw input_error("unknown coefficient ring: " + s + " (expected Z, F2 or Q)");
}

Ring parse_theory(const std::string& s)
{
    if (s == "even") return Ring::even;
    if (s == "odd") return Ring::odd;
    if (s == "unified") return Ring::unified;
    throw input_error("unknown theory: " + s + " (expected even, odd or unified)");
}

namespace {

json group_entry(int i, int j, const HomGroup& g)
{
    json torsion = json::array();
    for (auto& t : g.torsion) torsion.push_back(t.to_string());
    return json{{"i", i}, {"j", j}, {"rank", g.free_rank}, {"torsion", torsion}};
}

std::string euler_string(const Homology& h)
{
    Laurent l;
    for (auto& [e, v] : h.euler()) l.add(e, v);
    return l.str();
}

}  // namespace

json homology_report(const Diagram& d, Ring theory, Coeff coeff, bool reduced, int jobs)
{
    json out;
    out["command"] = reduced ? "reduced-homology" : "homology";
    out["pd"] = serialize(d);
    out["theory"] = ring_name(theory);
    out["coeff"] = coeff == Coeff::Z ? "Z" : coeff == Coeff::F2 ? "F2" : "Q";
    out["reduced"] = reduced;
    json table = json::array();

    if (reduced && !d.has_basepoint()) throw input_error("reduced homology needs a basepoint (bp=... or U*)");

    if (theory == Ring::unified) {
        if (coeff != Coeff::Z) throw input_error("the unified theory is reported over Z");
        KhCube cube = build_cube(d, Ring::unified, jobs);
        ChainCx dz = doubled_z_form(cube);
        if (reduced) {
            // restrict the doubled form to basepoint-bearing generators
            ChainCx full = std::move(dz);
            ChainCx sub;
            sub.ring = full.ring;
            std::vector<int> newpos(full.size(), -1);
            for (int g = 0; g < full.size(); ++g) {
                int bp = cube.res[full.gens[g].v].basepoint_circle();
                if (!((full.gens[g].m >> bp) & 1)) continue;
                newpos[g] = sub.size();
                sub.gens.push_back(full.gens[g]);
                sub.deg.push_back({full.deg[g].first, full.deg[g].second + 1});
            }
            sub.dcol.assign(sub.gens.size(), {});
            for (int g = 0; g < full.size(); ++g) {
                if (newpos[g] < 0) continue;
                for (auto& [t, v] : full.dcol[g]) {
                    KHLAB_CHECK(newpos[t] >= 0, "reduced doubled span is not a subcomplex");
                    sub.dcol[newpos[g]].emplace_back(newpos[t], v);
                }
            }
            sub.sort_canonical();
            dz = std::move(sub);
        }
        Homology h(dz, jobs);
        // xi acts by swapping the two sheets
        ChainMap xi;
        xi.src = xi.dst = &dz;
        xi.cols.assign(dz.gens.size(), {});
        for (int g = 0; g < dz.size(); ++g) {
            GenRef r = dz.gens[g];
            r.xi = static_cast<char>(1 - r.xi);
            int t = dz.find(r, dz.deg[g]);
            KHLAB_CHECK(t >= 0, "xi partner missing");
            xi.cols[g].emplace_back(t, Zu(1, 0));
        }
        for (auto [i, j] : h.support()) {
            json entry = group_entry(i, j, h.group(i, j));
            auto m = induced_map(h, h, xi, i, j);
            json rows = json::array();
            for (auto& row : m) {
                json r = json::array();
                for (auto& v : row) r.push_back(v.to_string());
                rows.push_back(r);
            }
            entry["xi_action"] = rows;
            table.push_back(entry);
        }
        out["euler"] = euler_string(h);
    }
    else {
        Ring ring = coeff == Coeff::F2 ? Ring::mod2 : theory;
        KhCube cube = build_cube(d, ring, jobs);
        ChainCx c = cochain_complex(cube);
        if (reduced) c = reduced_subcomplex(c, cube);
        Homology h(c, jobs);
        for (auto [i, j] : h.support()) {
            HomGroup g = h.group(i, j);
            if (coeff == Coeff::Q) g.torsion.clear();
            table.push_back(group_entry(i, j, g));
        }
        out["euler"] = euler_string(h);
    }
    out["bigradings"] = table;
    return out;
}

json jones_report(const Diagram& d, int jobs)
{
    json out;
    out["command"] = "jones";
    out["pd"] = serialize(d);
    out["jones"] = jones_bracket(d).str();
    Homology h(build_complex(d, Ring::even, jobs), jobs);
    out["euler"] = euler_string(h);
    out["match"] = out["jones"] == out["euler"];
    return out;
}

json verify_report(const std::vector<SuiteResult>& results)
{
    json out;
    out["command"] = "verify";
    json suites = json::array();
    bool all = true;
    for (auto& r : results) {
        json s;
        s["suite"] = r.suite;
        s["pass"] = r.pass;
        s["checks"] = r.checks;
        s["seconds"] = r.seconds;
        s["failures"] = r.failures;
        suites.push_back(s);
        all = all && r.pass;
    }
    out["suites"] = suites;
    out["pass"] = all;
    return out;
}

json s_report(const Diagram& d, int jobs)
{
    json out;
    out["command"] = "s";
    out["pd"] = serialize(d);
    out["s"] = s_invariant(d, jobs);
    for (AlphaOp op : {AlphaOp::bockstein_even, AlphaOp::bockstein_odd}) {
        AlphaInvariants inv = alpha_invariants(d, op, jobs);
        json a{{"r_plus", inv.r_plus}, {"s_plus", inv.s_plus}, {"r_minus", inv.r_minus},
               {"s_minus", inv.s_minus}};
        out[op == AlphaOp::bockstein_even ? "bockstein_even" : "bockstein_odd"] = a;
    }
    out["alpha"] = json::array({"bockstein_even", "bockstein_odd"});
    return out;
}

json cobordism_report(const Diagram& start, const MovieScript& script, int jobs)
{
    json out;
    out["command"] = "cobordism";
    out["pd"] = serialize(start);
    MovieRunner ro(start, Ring::odd, jobs);
    MovieRunner re(start, Ring::even, jobs);
    for (auto& m : script.moves) {
        ro.apply(m);
        re.apply(m);
    }
    const ChainMapWitness& w = ro.witness();
    out["final_pd"] = serialize(ro.diagram());
    out["moves"] = static_cast<int>(script.moves.size());
    out["chain_map"] = w.is_chain_map;
    out["quantum_shift"] = w.dq;
    out["births"] = ro.births();
    out["deaths"] = ro.deaths();
    out["saddles"] = ro.saddles();
    out["euler_characteristic"] = ro.births() + ro.deaths() - ro.saddles();
    bool mod2_match = true;
    for (int g = 0; g < w.source->size() && mod2_match; ++g) {
        std::map<int, int> mo, me;
        for (auto& [t, v] : w.map.cols[g])
            if (((v.a % 2) + 2) % 2) mo[t] = 1;
        for (auto& [t, v] : re.witness().map.cols[g])
            if (((v.a % 2) + 2) % 2) me[t] = 1;
        mod2_match = mo == me;
    }
    out["mod2_matches_even"] = mod2_match;
    return out;
}

json burnside_report(const Diagram& d, int jobs)
{
    json out;
    out["command"] = "burnside";
    out["pd"] = serialize(d);
    KhCube uni = build_cube(d, Ring::unified, jobs);
    KhCube odd = build_cube(d, Ring::odd, jobs, &uni.eps);
    SignedBurnsideFunctor f = build_functor(odd);
    HexReport hr = check_hexagons(f);
    long long elems = 0;
    for (auto& [e, corr] : f.edges) elems += static_cast<long long>(corr.elems.size());
    out["objects"] = static_cast<long long>(1u << f.n);
    out["correspondence_elements"] = elems;
    out["squares"] = static_cast<long long>(f.squares.size());
    out["hexagons_checked"] = hr.faces_checked;
    out["hexagon_paths"] = hr.paths_checked;
    out["hexagons_pass"] = hr.pass;
    out["totalization_dual_to_odd"] = totalization_duality_check(f, odd);
    out["doubling_matches_unified"] = doubling_matches_unified(f, uni);
    return out;
}

std::string homology_tsv(const json& report)
{
    std::ostringstream out;
    out << "i\tj\trank\ttorsion\n";
    for (auto& row : report.at("bigradings")) {
        out << row.at("i").get<int>() << "\t" << row.at("j").get<int>() << "\t" << row.at("rank").get<long long>()
            << "\t";
        bool first = true;
        for (auto& t : row.at("torsion")) {
            if (!first) out << ",";
            out << t.get<std::string>();
            first = false;
        }
        if (first) out << "-";
        out << "\n";
    }
    return out.str();
}

bool matches_output_schema(const json& report, std::string* why)
{
    auto bad = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (!report.is_object() || !report.contains("command") || !report["command"].is_string())
        return bad("missing command");
    std::string cmd = report["command"];
    auto need = [&](const char* key, bool ok) { return ok || bad(std::string("bad field ") + key + " for " + cmd); };
    if (cmd == "homology" || cmd == "reduced-homology") {
        if (!need("bigradings", report.contains("bigradings") && report["bigradings"].is_array())) return false;
        for (auto& row : report["bigradings"]) {
            if (!row.is_object() || !row.contains("i") || !row.contains("j") || !row.contains("rank") ||
                !row.contains("torsion") || !row["torsion"].is_array())
                return bad("bad bigrading row");
        }
        return need("euler", report.contains("euler") && report["euler"].is_string()) &&
               need("theory", report.contains("theory")) && need("coeff", report.contains("coeff"));
    }
    if (cmd == "jones")
        return need("jones", report.contains("jones") && report["jones"].is_string()) &&
               need("euler", report.contains("euler")) && need("match", report.contains("match"));
    if (cmd == "verify")
        return need("suites", report.contains("suites") && report["suites"].is_array()) &&
               need("pass", report.contains("pass") && report["pass"].is_boolean());
    if (cmd == "s")
        return need("s", report.contains("s") && report["s"].is_number_integer()) &&
               need("bockstein_even", report.contains("bockstein_even")) &&
               need("bockstein_odd", report.contains("bockstein_odd"));
    if (cmd == "cobordism")
        return need("chain_map", report.contains("chain_map")) &&
               need("quantum_shift", report.contains("quantum_shift")) &&
               need("euler_characteristic", report.contains("euler_characteristic"));
    if (cmd == "burnside")
        return need("hexagons_pass", report.contains("hexagons_pass")) &&
               need("totalization_dual_to_odd", report.contains("totalization_dual_to_odd")) &&
               need("doubling_matches_unified", report.contains("doubling_matches_unified"));
    return bad("unknown command " + cmd);
}

}  // namespace khlab
