#include "aldc/constructions.hpp"
#include "aldc/core.hpp"
#include "aldc/io.hpp"
#include "aldc/partition.hpp"
#include "aldc/qquery.hpp"
#include "aldc/reduction.hpp"
#include "aldc/spectral.hpp"
#include "aldc/tiling.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;

namespace {

aldc::RealVec to_realvec(const std::vector<double>& entries) {
    aldc::RealVec v(static_cast<Eigen::Index>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) v[static_cast<Eigen::Index>(i)] = entries[i];
    return v;
}

std::vector<std::vector<double>> points_of(const aldc::CodeConfig& code) {
    std::vector<std::vector<double>> out;
    for (const auto& p : code.points) {
        out.emplace_back(p.data(), p.data() + p.size());
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "approximate-LDC configurations: generation, verification, reduction, "
              "and certification";

    py::register_exception<aldc::Error>(m, "AldcError");

    py::class_<aldc::CodeConfig>(m, "CodeConfig")
        .def(py::init<>())
        .def_readwrite("d", &aldc::CodeConfig::d)
        .def_readwrite("q", &aldc::CodeConfig::q)
        .def_property(
            "points", [](const aldc::CodeConfig& c) { return points_of(c); },
            [](aldc::CodeConfig& c, const std::vector<std::vector<double>>& pts) {
                c.points.clear();
                for (const auto& p : pts) c.points.push_back(to_realvec(p));
            })
        .def("n", &aldc::CodeConfig::n)
        .def("density", &aldc::CodeConfig::density)
        .def("total_tuples", &aldc::CodeConfig::total_tuples)
        .def("validate", &aldc::CodeConfig::validate)
        .def("add_matching",
             [](aldc::CodeConfig& c, int direction,
                const std::vector<std::vector<std::size_t>>& tuples) {
                 aldc::DirectionMatching matching;
                 matching.direction = direction;
                 for (const auto& t : tuples) matching.tuples.push_back(t);
                 c.matchings.push_back(std::move(matching));
             })
        .def("matchings",
             [](const aldc::CodeConfig& c) {
                 std::vector<std::pair<int, std::vector<aldc::Tuple>>> out;
                 for (const auto& matching : c.matchings) {
                     out.emplace_back(matching.direction, matching.tuples);
                 }
                 return out;
             })
        .def("dumps", [](const aldc::CodeConfig& c) { return aldc::io::render(c); })
        .def_static("loads", [](const std::string& text) { return aldc::io::parse(text); });

    m.def("hypercube", &aldc::hypercube, py::arg("d"));
    m.def("perturbed_hypercube", &aldc::perturbed_hypercube, py::arg("d"), py::arg("sigma"),
          py::arg("seed"));
    m.def("basis_code", &aldc::basis_code, py::arg("d"));
    m.def("random_code", &aldc::random_code, py::arg("d"), py::arg("n"), py::arg("q"),
          py::arg("alpha_target"), py::arg("seed"));

    m.def("weight",
          [](const std::vector<double>& u, int i) { return aldc::weight(to_realvec(u), i); },
          py::arg("u"), py::arg("i"));
    m.def("span_weight", &aldc::span_weight, py::arg("code"), py::arg("tuple"), py::arg("i"));
    m.def("is_simple", &aldc::is_simple, py::arg("code"), py::arg("alpha"));
    m.def("simple_alpha", &aldc::simple_alpha, py::arg("code"));
    m.def("boundedness", &aldc::boundedness, py::arg("code"));

    m.def("verify_json",
          [](const aldc::CodeConfig& code, double alpha) {
              return aldc::io::to_json(aldc::verify(code, alpha)).dump();
          },
          py::arg("code"), py::arg("alpha"));

    m.def("reduce_to_simple",
          [](const aldc::CodeConfig& code, double alpha, std::optional<int> k) {
              auto [out, trace] = aldc::reduce_to_simple(code, alpha, k);
              return py::make_tuple(out, aldc::io::to_json(trace).dump());
          },
          py::arg("code"), py::arg("alpha"), py::arg("k") = std::nullopt);
    m.def("bucket_to_2bounded",
          [](const aldc::CodeConfig& code) {
              auto [out, trace] = aldc::bucket_to_2bounded(code);
              return py::make_tuple(out, aldc::io::to_json(trace).dump());
          },
          py::arg("code"));

    m.def("certify_cut_json",
          [](const aldc::CodeConfig& code, std::size_t budget, std::uint64_t seed) {
              return aldc::io::to_json(aldc::recursive_cut_certificate(code, budget, seed))
                  .dump();
          },
          py::arg("code"), py::arg("budget") = std::size_t{0}, py::arg("seed") = 1);
    m.def("certify_tiling_json",
          [](const aldc::CodeConfig& code, double eps, int t, int retries, std::uint64_t seed,
             double kappa) {
              return aldc::io::to_json(
                         aldc::large_alpha_certificate(code, eps, t, retries, seed, kappa))
                  .dump();
          },
          py::arg("code"), py::arg("eps"), py::arg("t"), py::arg("retries") = 16,
          py::arg("seed") = 1, py::arg("kappa") = -1.0);
    m.def("spectral_report_json",
          [](const aldc::CodeConfig& code) {
              return aldc::io::to_json(aldc::trace_inequality_check(code)).dump();
          },
          py::arg("code"));
    m.def("matching_witness_json",
          [](const aldc::CodeConfig& code, int i) {
              return aldc::io::to_json(aldc::matching_witness_bound(code, i)).dump();
          },
          py::arg("code"), py::arg("i"));
    m.def("one_query_bound_json",
          [](const aldc::CodeConfig& code, double alpha) {
              return aldc::io::to_json(aldc::one_query_bound_check(code, alpha)).dump();
          },
          py::arg("code"), py::arg("alpha"));

    m.def("subset_direction_count", &aldc::subset_direction_count, py::arg("code"),
          py::arg("m"), py::arg("seed"));
    m.def("default_subset_size", &aldc::default_subset_size, py::arg("code"));

    m.def("general_bound", &aldc::general_bound, py::arg("alpha"), py::arg("delta"),
          py::arg("d"), py::arg("simple_input") = true);
    m.def("qquery_bound", &aldc::qquery_bound, py::arg("alpha"), py::arg("delta"),
          py::arg("d"), py::arg("q"));
    m.def("good_edge_probability_bound", &aldc::good_edge_probability_bound, py::arg("alpha"),
          py::arg("eps"), py::arg("t"), py::arg("kappa"));
    m.def("bounded_code_bound",
          [](double alpha, double delta, double c, int d) {
              return aldc::io::to_json(aldc::bounded_code_bound(alpha, delta, c, d)).dump();
          },
          py::arg("alpha"), py::arg("delta"), py::arg("c"), py::arg("d"));

    m.def("load", &aldc::io::load, py::arg("path"));
    m.def("save", &aldc::io::save, py::arg("code"), py::arg("path"));
}
