#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "linent/bloch.hpp"
#include "linent/bounds.hpp"
#include "linent/density.hpp"
#include "linent/errors.hpp"
#include "linent/extremal.hpp"
#include "linent/rng.hpp"
#include "linent/state_io.hpp"
#include "linent/verify.hpp"

namespace py = pybind11;
using namespace linent;

namespace {

ComplexMatrix matrix_from_rows(const std::vector<std::vector<cxd>>& rows) {
    if (rows.empty()) throw StructuralError("matrix must be nonempty");
    const std::size_t n = rows.size();
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
            throw StructuralError("matrix rows must all have length " +
                                  std::to_string(n));
        }
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<std::vector<cxd>> rows_from_matrix(const ComplexMatrix& m) {
    std::vector<std::vector<cxd>> rows(m.rows(), std::vector<cxd>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
    return rows;
}

py::object json_to_py(const nlohmann::ordered_json& j) {
    using value_t = nlohmann::ordered_json::value_t;
    switch (j.type()) {
        case value_t::object: {
            py::dict d;
            for (const auto& [key, value] : j.items()) {
                d[py::str(key)] = json_to_py(value);
            }
            return d;
        }
        case value_t::array: {
            py::list l;
            for (const auto& value : j) l.append(json_to_py(value));
            return l;
        }
        case value_t::string: return py::str(j.get<std::string>());
        case value_t::boolean: return py::bool_(j.get<bool>());
        case value_t::number_integer: return py::int_(j.get<std::int64_t>());
        case value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
        case value_t::number_float: return py::float_(j.get<double>());
        default: return py::none();
    }
}

DimPair pair_from(std::pair<int, int> dims) {
    return DimPair{dims.first, dims.second};
}

py::tuple sharp_tuple(const SharpBound& b) {
    return py::make_tuple(b.value, std::string(branch_name(b)), b.on_boundary);
}

py::object maybe_value(const MaybeBound& b) {
    if (!b.applicable) return py::none();
    return py::float_(b.value);
}

DensityMatrix draw_state(const std::vector<int>& dims, std::uint64_t seed,
                         std::uint64_t index, const std::string& ensemble,
                         std::size_t rank) {
    SampleRng rng(seed, index);
    switch (ensemble_from_name(ensemble)) {
        case Ensemble::pure: return sample_pure_state(dims, rng);
        case Ensemble::rank_k: return sample_rank_k_state(dims, rank, rng);
        case Ensemble::hs: default: return sample_hs_state(dims, rng);
    }
}

}  // namespace

PYBIND11_MODULE(linent, m) {
    m.doc() = "Dimension-aware linear-entropy bounds for bipartite and "
              "tripartite quantum states";

    py::register_exception<StructuralError>(m, "StructuralError");
    py::register_exception<ParameterError>(m, "ParameterError");
    py::register_exception<NumericalError>(m, "NumericalError");

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init([](const std::vector<std::vector<cxd>>& matrix,
                         const std::vector<int>& dims) {
                 return DensityMatrix(matrix_from_rows(matrix), dims);
             }),
             py::arg("matrix"), py::arg("dims"),
             "Validated state from a nested row-major matrix.")
        .def_property_readonly(
            "dims", [](const DensityMatrix& s) { return s.dims(); })
        .def_property_readonly("dim", &DensityMatrix::dim)
        .def("matrix",
             [](const DensityMatrix& s) { return rows_from_matrix(s.matrix()); })
        .def("__repr__", [](const DensityMatrix& s) {
            std::string r = "DensityMatrix(dims=[";
            for (std::size_t i = 0; i < s.dims().size(); ++i) {
                if (i) r += ", ";
                r += std::to_string(s.dims()[i]);
            }
            return r + "])";
        });

    m.def("pure_state",
          [](const std::vector<cxd>& amplitudes, const std::vector<int>& dims) {
              return pure_state_density(amplitudes, dims);
          },
          py::arg("amplitudes"), py::arg("dims"),
          "Projector onto a normalized state vector.");

    m.def("purity", &purity, py::arg("state"));
    m.def("linear_entropy", &linear_entropy, py::arg("state"));
    m.def("renyi2_entropy", &renyi2_entropy, py::arg("state"));
    m.def("max_linear_entropy", &max_linear_entropy, py::arg("d"));
    m.def("schatten_qnorm",
          [](const DensityMatrix& rho, double q) { return schatten_qnorm(rho, q); },
          py::arg("state"), py::arg("q"));
    m.def("partial_trace", &partial_trace, py::arg("state"), py::arg("keep"));
    m.def("tensor_product", &tensor_product, py::arg("a"), py::arg("b"));
    m.def("purify",
          [](const DensityMatrix& rho) {
              const Purification p = purify(rho);
              return py::make_tuple(p.amplitudes, p.dims);
          },
          py::arg("state"),
          "Amplitudes and dims of a purification with a d-dimensional ancilla.");
    m.def("schmidt_coefficients",
          [](const std::vector<cxd>& amplitudes, int d_a, int d_b) {
              return schmidt_decompose(amplitudes, d_a, d_b).coefficients;
          },
          py::arg("amplitudes"), py::arg("d_a"), py::arg("d_b"));

    m.def("classic_bounds",
          [](double x, double y) {
              const ClassicBounds b = classic_bounds(x, y);
              return py::make_tuple(b.lower, b.upper);
          },
          py::arg("x"), py::arg("y"),
          "Triangle lower and subadditivity upper bound.");
    m.def("audenaert_bound",
          [](double x, double y) { return maybe_value(audenaert_bound(x, y)); },
          py::arg("x"), py::arg("y"), "None when outside its valid region.");
    m.def("appel_nonlinear_bound",
          [](double x, double y, std::pair<int, int> dims) {
              return appel_nonlinear_bound(x, y, pair_from(dims));
          },
          py::arg("x"), py::arg("y"), py::arg("dims"));
    m.def("isa_h",
          [](double x, double y, std::pair<int, int> dims) {
              return isa_h(x, y, pair_from(dims));
          },
          py::arg("x"), py::arg("y"), py::arg("dims"));
    m.def("dssa_restriction_r",
          [](double y, std::pair<int, int> dims) {
              return dssa_restriction_r(y, pair_from(dims));
          },
          py::arg("y"), py::arg("dims"));
    m.def("dssa_g",
          [](double x, double y, std::pair<int, int> dims) {
              return maybe_value(dssa_g(x, y, pair_from(dims)));
          },
          py::arg("x"), py::arg("y"), py::arg("dims"),
          "None when x exceeds the restriction.");
    m.def("sharp_f",
          [](double x, double y, std::pair<int, int> dims) {
              return sharp_tuple(sharp_f(x, y, pair_from(dims)));
          },
          py::arg("x"), py::arg("y"), py::arg("dims"),
          "(value, branch, on_boundary) of the tight upper bound.");
    m.def("renyi_f",
          [](double x, double y, std::pair<int, int> dims) {
              return sharp_tuple(renyi_f(x, y, pair_from(dims)));
          },
          py::arg("x"), py::arg("y"), py::arg("dims"));
    m.def("purity_f",
          [](double gamma_a, double gamma_b, std::pair<int, int> dims) {
              return sharp_tuple(purity_f(gamma_a, gamma_b, pair_from(dims)));
          },
          py::arg("gamma_a"), py::arg("gamma_b"), py::arg("dims"));
    m.def("gamma_curve",
          [](double t, std::pair<int, int> dims) {
              const EntropyPoint p = gamma_curve(t, pair_from(dims));
              return py::make_tuple(p.x, p.y, p.z);
          },
          py::arg("t"), py::arg("dims"), "Branch seam point at parameter t.");
    m.def("inverted_lower_f",
          [](double x, double y, std::pair<int, int> dims) {
              const InvertedBound b = inverted_lower_f(x, y, pair_from(dims));
              return py::make_tuple(b.value, std::string(method_name(b)),
                                    b.route);
          },
          py::arg("x"), py::arg("y"), py::arg("dims"),
          "(value, method, route) of the inverted lower bound.");
    m.def("sisa_bound", &sisa_bound, py::arg("s_ac"), py::arg("s_bc"),
          py::arg("s_c"), py::arg("d_a"), py::arg("d_b"));

    m.def("evaluate_all",
          [](const DensityMatrix& state) {
              return json_to_py(report_to_json(evaluate_all(state)));
          },
          py::arg("state"),
          "Every applicable bipartite bound with slack, as a dict.");
    m.def("evaluate_sisa",
          [](const DensityMatrix& state) {
              return json_to_py(report_to_json(evaluate_sisa(state)));
          },
          py::arg("state"), "Tripartite bound report as a dict.");

    m.def("isa_family",
          [](double alpha, std::pair<int, int> dims) {
              return isa_family(alpha, pair_from(dims));
          },
          py::arg("alpha"), py::arg("dims"),
          "Saturating state on the branch seam.");
    m.def("dssa_family",
          [](double alpha, double beta, std::pair<int, int> dims) {
              return dssa_family(alpha, beta, pair_from(dims));
          },
          py::arg("alpha"), py::arg("beta"), py::arg("dims"),
          "Saturating state for the curved branch.");
    m.def("boundary_state_for",
          [](double x, double y, std::pair<int, int> dims) {
              return boundary_state_for(x, y, pair_from(dims));
          },
          py::arg("x"), py::arg("y"), py::arg("dims"),
          "State whose entropy point lies on the tight bound at (x, y).");
    m.def("mix_with_maximally_mixed", &mix_with_maximally_mixed,
          py::arg("state"), py::arg("alpha"));

    m.def("sample_state", &draw_state, py::arg("dims"), py::arg("seed"),
          py::arg("index") = 0, py::arg("ensemble") = "hs", py::arg("rank") = 1,
          "One random state from the (seed, index) substream.");

    m.def("run_campaign",
          [](const std::vector<int>& dims, std::size_t count,
             std::uint64_t seed, const std::string& ensemble, std::size_t rank,
             std::size_t workers, bool inject_extremal,
             const std::string& output_prefix) {
              SamplerConfig cfg;
              cfg.dims = dims;
              cfg.count = count;
              cfg.seed = seed;
              cfg.ensemble = ensemble_from_name(ensemble);
              cfg.rank = rank;
              cfg.workers = workers;
              cfg.inject_extremal = inject_extremal;
              cfg.output_prefix = output_prefix;
              const CampaignReport rep = run_campaign(cfg);
              if (!rep.io_error.empty()) {
                  throw StructuralError("campaign output failed: " +
                                        rep.io_error);
              }
              return json_to_py(campaign_summary_json(rep));
          },
          py::arg("dims"), py::arg("count") = 1000, py::arg("seed") = 1,
          py::arg("ensemble") = "hs", py::arg("rank") = 1,
          py::arg("workers") = 1, py::arg("inject_extremal") = false,
          py::arg("output_prefix") = std::string(),
          "Sampling campaign; returns the summary dict, optionally writing "
          ".jsonl and .summary.json files.");

    m.def("identity_suite",
          [](const std::vector<std::pair<int, int>>& pairs,
             std::uint64_t seed) {
              std::vector<DimPair> ps;
              ps.reserve(pairs.size());
              for (const auto& p : pairs) ps.push_back(pair_from(p));
              const IdentityCheckResult res = identity_suite(ps, seed);
              return py::make_tuple(res.passed, res.failures);
          },
          py::arg("pairs"), py::arg("seed") = 1,
          "(passed, failures) of the algebraic identity checks.");

    m.def("surface_grid",
          [](const std::string& form, std::pair<int, int> dims, double step) {
              const std::vector<SurfaceRow> rows =
                  surface_grid(bound_form_from_name(form), pair_from(dims), step);
              py::list out;
              for (const auto& r : rows) {
                  out.append(py::make_tuple(r.x, r.y, r.value, r.branch));
              }
              return out;
          },
          py::arg("form"), py::arg("dims"), py::arg("step"),
          "Rows (x, y, value, branch) of the chosen bound surface.");

    m.def("load_state", [](const std::string& path) { return load_state(path); },
          py::arg("path"));
    m.def("save_state", [](const DensityMatrix& state, const std::string& path) {
              save_state(state, path);
          },
          py::arg("state"), py::arg("path"));
}
