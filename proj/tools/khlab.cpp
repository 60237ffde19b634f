#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "khlab/json_out.hpp"

namespace {

int log_level()
{
    const char* env = std::getenv("KHLAB_LOG");
    return env ? std::atoi(env) : 0;
}

struct CommonOpts {
    std::string pd, in_path, out_path;
    std::string format = "json";
    bool pretty = false;
    int jobs = 0;
    uint64_t seed = 1;
};

khlab::Diagram load_diagram(const CommonOpts& o)
{
    std::string text = o.pd;
    if (text.empty() && !o.in_path.empty()) {
        std::ifstream in(o.in_path);
        if (!in) throw khlab::input_error("cannot open " + o.in_path);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
        while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    }
    if (text.empty()) throw khlab::input_error("no diagram: pass --pd or --in");
    return khlab::parse_pd(text);
}

void emit(const khlab::json& report, const CommonOpts& o)
{
    std::string why;
    if (!khlab::matches_output_schema(report, &why))
        throw khlab::internal_error("output fails the published schema: " + why);
    std::string text;
    if (o.format == "tsv" && report.contains("bigradings"))
        text = khlab::homology_tsv(report);
    else if (o.pretty)
        text = report.dump(2) + "\n";
    else
        text = report.dump() + "\n";
    if (!o.out_path.empty()) {
        std::ofstream out(o.out_path);
        if (!out) throw khlab::input_error("cannot write " + o.out_path);
        out << text;
    }
    else
        std::cout << text;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_diagram = true)
{
    if (with_diagram) {
        cmd->add_option("--pd", o.pd, "inline PD code");
        cmd->add_option("--in", o.in_path, "file holding a PD code");
    }
    cmd->add_option("--out", o.out_path, "write the report to a file");
    cmd->add_option("--format", o.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
    cmd->add_flag("--pretty", o.pretty, "indent the JSON output");
    cmd->add_option("--jobs", o.jobs, "worker threads (default: hardware)");
    cmd->add_option("--seed", o.seed, "seed for generated corpora");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"compute even, odd and unified Khovanov homology and friends"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string theory = "odd", coeff = "Z", suite = "all";
    bool reduced = false;
    int basepoint = 0;
    std::string movie_path;
    int corpus_size = 12, corpus_max = 6;

    CLI::App* homology = app.add_subcommand("homology", "bigraded homology table");
    add_common(homology, o);
    homology->add_option("--theory", theory, "even, odd or unified");
    homology->add_option("--coeff", coeff, "Z, F2 or Q");
    homology->add_flag("--reduced", reduced, "reduced theory (needs a basepoint)");
    homology->add_option("--bp", basepoint, "basepoint edge label");

    CLI::App* reduced_h = app.add_subcommand("reduced-homology", "reduced bigraded homology");
    add_common(reduced_h, o);
    reduced_h->add_option("--theory", theory, "even, odd or unified");
    reduced_h->add_option("--coeff", coeff, "Z, F2 or Q");
    reduced_h->add_option("--bp", basepoint, "basepoint edge label");

    CLI::App* jones = app.add_subcommand("jones", "bracket state sum against the Euler characteristic");
    add_common(jones, o);

    CLI::App* verify = app.add_subcommand("verify", "run the verification suites");
    add_common(verify, o);
    verify->add_option("--suite", suite, "suite name or 'all'");
    verify->add_option("--corpus-size", corpus_size, "generated corpus size");
    verify->add_option("--corpus-max", corpus_max, "max crossings per generated diagram");

    CLI::App* burnside = app.add_subcommand("burnside", "signed functor verification for one diagram");
    add_common(burnside, o);

    CLI::App* cobordism = app.add_subcommand("cobordism", "movie chain-map witness");
    add_common(cobordism, o);
    cobordism->add_option("--movie", movie_path, "movie script file")->required();

    CLI::App* scmd = app.add_subcommand("s", "filtration and Bockstein concordance invariants");
    add_common(scmd, o);

    CLI11_PARSE(app, argc, argv);

    try {
        int jobs = o.jobs > 0 ? o.jobs : khlab::default_jobs();
        if (log_level() > 0) std::cerr << "jobs=" << jobs << " seed=" << o.seed << "\n";
        if (homology->parsed() || reduced_h->parsed()) {
            khlab::Diagram d = load_diagram(o);
            if (basepoint > 0) {
                d.basepoint = basepoint;
                khlab::validate(d);
            }
            bool red = reduced || reduced_h->parsed();
            emit(khlab::homology_report(d, khlab::parse_theory(theory), khlab::parse_coeff(coeff), red, jobs),
                 o);
        }
        else if (jones->parsed())
            emit(khlab::jones_report(load_diagram(o), jobs), o);
        else if (verify->parsed()) {
            std::vector<khlab::CorpusEntry> corpus;
            if (!o.pd.empty() || !o.in_path.empty())
                corpus.push_back({"input", load_diagram(o)});
            else
                corpus = khlab::standard_corpus(corpus_size, corpus_max, o.seed);
            std::vector<std::string> names =
                suite == "all" ? khlab::suite_names() : std::vector<std::string>{suite};
            auto results = khlab::run_suites(names, corpus, jobs, o.seed);
            khlab::json rep = khlab::verify_report(results);
            emit(rep, o);
            if (!rep["pass"].get<bool>()) return 1;
        }
        else if (burnside->parsed())
            emit(khlab::burnside_report(load_diagram(o), jobs), o);
        else if (cobordism->parsed()) {
            std::ifstream in(movie_path);
            if (!in) throw khlab::input_error("cannot open " + movie_path);
            std::ostringstream ss;
            ss << in.rdbuf();
            emit(khlab::cobordism_report(load_diagram(o), khlab::parse_movie(ss.str()), jobs), o);
        }
        else if (scmd->parsed())
            emit(khlab::s_report(load_diagram(o), jobs), o);
    }
    catch (const khlab::input_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    catch (const std::exception& ex) {
        std::cerr << "internal error: " << ex.what() << "\n";
        return 3;
    }
    return 0;
}
