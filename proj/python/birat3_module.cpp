#include "birat3/cli.hpp"
#include "birat3/depth.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

std::pair<int, std::string> run_job(const std::string& text, unsigned threads, std::optional<std::int64_t> budget) {
    birat3::RunSettings s;
    s.threads = threads;
    s.budget_flag = budget;
    py::gil_scoped_release release;
    birat3::RunOutput o = birat3::run_text(text, s);
    return {o.exit_code, o.text};
}

std::pair<std::int64_t, std::vector<std::int64_t>> parse_weight(const std::string& text) {
    birat3::WeightVector w = birat3::parse_weight(text);
    return {w.r, w.b};
}

std::string discrepancy(const std::string& model_json, const std::string& weight) {
    birat3::SingularityModel m = birat3::model_from_json(nlohmann::json::parse(model_json));
    return birat3::to_string(birat3::weighted_blowup(m, birat3::parse_weight(weight)).discrepancy);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "bindings of the birat3 library";
    m.attr("JOB_VERSION") = birat3::kJobVersion;
    m.def("run_job", &run_job, py::arg("text"), py::arg("threads") = 1u, py::arg("budget") = py::none(),
          "run a job document; returns (exit code, output text)");
    m.def("parse_weight", &parse_weight, py::arg("text"));
    m.def("discrepancy", &discrepancy, py::arg("model_json"), py::arg("weight"));
    py::register_exception<birat3::SchemaError>(m, "SchemaError", PyExc_ValueError);
}
