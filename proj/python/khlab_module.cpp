#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "khlab/json_out.hpp"

namespace py = pybind11;
using namespace khlab;

namespace {

py::object json_to_py(const json& j)
{
    py::module_ pyjson = py::module_::import("json");
    return pyjson.attr("loads")(j.dump());
}

int jobs_or_default(int jobs)
{
    return jobs > 0 ? jobs : default_jobs();
}

}  // namespace

PYBIND11_MODULE(_khlab, m)
{
    m.doc() = "even, odd and unified Khovanov homology of PD-coded link diagrams";

    py::register_exception<input_error>(m, "InputError");

    m.def("parse", [](const std::string& text) { return serialize(parse_pd(text)); },
          "parse a PD code and return its canonical serialization", py::arg("pd"));

    m.def("mirror", [](const std::string& text) { return serialize(mirror(parse_pd(text))); },
          py::arg("pd"));

    m.def("components", [](const std::string& text) { return parse_pd(text).components(); }, py::arg("pd"));

    m.def(
        "homology",
        [](const std::string& pd, const std::string& theory, const std::string& coeff, bool reduced,
           int jobs) {
            return json_to_py(homology_report(parse_pd(pd), parse_theory(theory), parse_coeff(coeff),
                                              reduced, jobs_or_default(jobs)));
        },
        py::arg("pd"), py::arg("theory") = "odd", py::arg("coeff") = "Z", py::arg("reduced") = false,
        py::arg("jobs") = 0);

    m.def(
        "jones",
        [](const std::string& pd, int jobs) {
            return json_to_py(jones_report(parse_pd(pd), jobs_or_default(jobs)));
        },
        py::arg("pd"), py::arg("jobs") = 0);

    m.def(
        "s_invariants",
        [](const std::string& pd, int jobs) {
            return json_to_py(s_report(parse_pd(pd), jobs_or_default(jobs)));
        },
        py::arg("pd"), py::arg("jobs") = 0);

    m.def(
        "burnside",
        [](const std::string& pd, int jobs) {
            return json_to_py(burnside_report(parse_pd(pd), jobs_or_default(jobs)));
        },
        py::arg("pd"), py::arg("jobs") = 0);

    m.def(
        "cobordism",
        [](const std::string& pd, const std::string& movie, int jobs) {
            return json_to_py(cobordism_report(parse_pd(pd), parse_movie(movie), jobs_or_default(jobs)));
        },
        py::arg("pd"), py::arg("movie"), py::arg("jobs") = 0);

    m.def(
        "verify",
        [](const std::string& suite, int corpus_size, int max_crossings, uint64_t seed, int jobs) {
            auto corpus = standard_corpus(corpus_size, max_crossings, seed);
            std::vector<std::string> names =
                suite == "all" ? suite_names() : std::vector<std::string>{suite};
            return json_to_py(verify_report(run_suites(names, corpus, jobs_or_default(jobs), seed)));
        },
        py::arg("suite") = "all", py::arg("corpus_size") = 12, py::arg("max_crossings") = 6,
        py::arg("seed") = 1, py::arg("jobs") = 0);
}
