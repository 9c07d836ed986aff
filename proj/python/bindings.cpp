#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcov/inference.hpp"
#include "dcov/scan.hpp"
#include "dcov/simulate.hpp"
#include "dcov/stats.hpp"

namespace py = pybind11;
using npdouble = py::array_t<double, py::array::c_style | py::array::forcecast>;
using npint8 = py::array_t<std::int8_t, py::array::c_style | py::array::forcecast>;

namespace {

dcov::Sample as_sample(const npdouble& arr, const char* name) {
  if (arr.ndim() == 1) {
    const auto n = static_cast<std::size_t>(arr.shape(0));
    std::vector<double> v(arr.data(), arr.data() + n);
    return dcov::Sample::column(std::move(v));
  }
  if (arr.ndim() == 2) {
    const auto n = static_cast<std::size_t>(arr.shape(0));
    const auto p = static_cast<std::size_t>(arr.shape(1));
    std::vector<double> v(arr.data(), arr.data() + n * p);
    return dcov::Sample(dcov::Matrix(n, p, std::move(v)));
  }
  throw dcov::InvalidInputError(std::string(name) + " must be a 1-D or 2-D array");
}

py::array matrix_to_array(const dcov::Matrix& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  std::copy(m.values().begin(), m.values().end(), out.mutable_data());
  return out;
}

py::array vector_to_array(const std::vector<double>& v) {
  py::array_t<double> out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

dcov::MarkerMatrix as_markers(const npint8& genotypes,
                              const std::optional<std::vector<std::string>>& marker_ids,
                              int max_levels) {
  if (genotypes.ndim() != 2)
    throw dcov::InvalidInputError("genotypes must be a 2-D array (individuals x markers)");
  const auto n = static_cast<std::size_t>(genotypes.shape(0));
  const auto m = static_cast<std::size_t>(genotypes.shape(1));
  std::vector<std::int8_t> values(genotypes.data(), genotypes.data() + n * m);
  std::vector<std::string> ids = marker_ids ? *marker_ids : dcov::make_marker_ids(m);
  return {n, m, std::move(values), std::move(ids), max_levels};
}

}  // namespace

PYBIND11_MODULE(_dcov, m) {
  m.doc() = "Distance covariance and distance correlation toolkit";
  m.attr("__version__") = "0.1.0";

  py::register_exception<dcov::ParseError>(m, "CsvParseError", PyExc_ValueError);
  py::register_exception<dcov::InternalError>(m, "InternalError", PyExc_RuntimeError);
  py::register_exception<dcov::Error>(m, "DcovError", PyExc_ValueError);

  py::class_<dcov::DcovResult>(m, "DcovResult")
      .def_readonly("dcov_sq", &dcov::DcovResult::dcov_sq)
      .def_readonly("dvar_x_sq", &dcov::DcovResult::dvar_x_sq)
      .def_readonly("dvar_y_sq", &dcov::DcovResult::dvar_y_sq)
      .def_readonly("dcor", &dcov::DcovResult::dcor)
      .def("__repr__", [](const dcov::DcovResult& r) {
        return "DcovResult(dcov_sq=" + std::to_string(r.dcov_sq) +
               ", dcor=" + std::to_string(r.dcor) + ")";
      });

  py::class_<dcov::TestResult>(m, "TestResult")
      .def_readonly("statistic", &dcov::TestResult::statistic)
      .def_property_readonly("statistic_kind",
                             [](const dcov::TestResult& r) {
                               return std::string(dcov::stat_kind_name(r.statistic_kind));
                             })
      .def_readonly("replicates", &dcov::TestResult::replicates)
      .def_readonly("exceed_count", &dcov::TestResult::exceed_count)
      .def_readonly("p_value", &dcov::TestResult::p_value)
      .def_readonly("seed", &dcov::TestResult::seed)
      .def_readonly("observed", &dcov::TestResult::observed)
      .def("__repr__", [](const dcov::TestResult& r) {
        return "TestResult(statistic=" + std::to_string(r.statistic) +
               ", p_value=" + std::to_string(r.p_value) + ")";
      });

  py::class_<dcov::ScanRecord>(m, "ScanRecord")
      .def_readonly("marker_id", &dcov::ScanRecord::marker_id)
      .def_readonly("n_used", &dcov::ScanRecord::n_used)
      .def_readonly("statistic", &dcov::ScanRecord::statistic)
      .def_readonly("p_value", &dcov::ScanRecord::p_value)
      .def_readonly("neglog10_p", &dcov::ScanRecord::neglog10_p)
      .def_readonly("degenerate", &dcov::ScanRecord::degenerate)
      .def("__repr__", [](const dcov::ScanRecord& r) {
        return "ScanRecord(marker_id='" + r.marker_id +
               "', p_value=" + std::to_string(r.p_value) + ")";
      });

  py::class_<dcov::ScanResult>(m, "ScanResult")
      .def_readonly("records", &dcov::ScanResult::records)
      .def_readonly("replicates", &dcov::ScanResult::replicates)
      .def_readonly("seed", &dcov::ScanResult::seed);

  m.def(
      "pairwise_distance_matrix",
      [](const npdouble& x, const std::string& metric) {
        return matrix_to_array(
            dcov::pairwise_distance_matrix(as_sample(x, "x"), dcov::metric_from_name(metric)).d);
      },
      py::arg("x"), py::arg("metric") = "euclidean",
      "All pairwise distances between the rows of x.");

  m.def(
      "double_center",
      [](const npdouble& d) {
        const auto n = static_cast<std::size_t>(d.ndim() == 2 ? d.shape(0) : 0);
        const auto c = static_cast<std::size_t>(d.ndim() == 2 ? d.shape(1) : 0);
        std::vector<double> values(d.data(), d.data() + n * c);
        return matrix_to_array(
            dcov::double_center(
                dcov::DistanceMatrix::from_matrix(dcov::Matrix(n, c, std::move(values))))
                .a);
      },
      py::arg("d"), "Double-center a distance matrix so all row and column means vanish.");

  m.def(
      "distance_covariance_sq",
      [](const npdouble& x, const npdouble& y, const std::string& metric_x,
         const std::string& metric_y) {
        return dcov::distance_covariance_sq(as_sample(x, "x"), as_sample(y, "y"),
                                            dcov::metric_from_name(metric_x),
                                            dcov::metric_from_name(metric_y));
      },
      py::arg("x"), py::arg("y"), py::arg("metric_x") = "euclidean",
      py::arg("metric_y") = "euclidean", "Squared sample distance covariance.");

  m.def(
      "distance_correlation",
      [](const npdouble& x, const npdouble& y, const std::string& metric_x,
         const std::string& metric_y) {
        return dcov::distance_correlation(as_sample(x, "x"), as_sample(y, "y"),
                                          dcov::metric_from_name(metric_x),
                                          dcov::metric_from_name(metric_y));
      },
      py::arg("x"), py::arg("y"), py::arg("metric_x") = "euclidean",
      py::arg("metric_y") = "euclidean",
      "Distance correlation together with its variance decomposition.");

  m.def(
      "pearson",
      [](const npdouble& x, const npdouble& y) {
        return dcov::pearson(as_sample(x, "x"), as_sample(y, "y"));
      },
      py::arg("x"), py::arg("y"), "Sample Pearson correlation of two 1-D samples.");

  m.def(
      "spearman",
      [](const npdouble& x, const npdouble& y) {
        return dcov::spearman(as_sample(x, "x"), as_sample(y, "y"));
      },
      py::arg("x"), py::arg("y"), "Spearman rank correlation (midranks for ties).");

  m.def(
      "permutation_test",
      [](const npdouble& x, const npdouble& y, int replicates, std::uint64_t seed,
         const std::string& statistic, const std::string& metric_x, const std::string& metric_y,
         int threads) {
        return dcov::permutation_test(as_sample(x, "x"), as_sample(y, "y"), replicates, seed,
                                      dcov::stat_kind_from_name(statistic),
                                      dcov::metric_from_name(metric_x),
                                      dcov::metric_from_name(metric_y), threads);
      },
      py::arg("x"), py::arg("y"), py::arg("replicates") = 999, py::arg("seed") = 0,
      py::arg("statistic") = "dcov_sq", py::arg("metric_x") = "euclidean",
      py::arg("metric_y") = "euclidean", py::arg("threads") = 1,
      "Seeded Monte Carlo permutation test of independence.");

  m.def(
      "permutation_distribution",
      [](const npdouble& x, const npdouble& y, int replicates, std::uint64_t seed,
         const std::string& statistic, const std::string& metric_x, const std::string& metric_y,
         int threads) {
        return vector_to_array(dcov::permutation_distribution(
            as_sample(x, "x"), as_sample(y, "y"), replicates, seed,
            dcov::stat_kind_from_name(statistic), dcov::metric_from_name(metric_x),
            dcov::metric_from_name(metric_y), threads));
      },
      py::arg("x"), py::arg("y"), py::arg("replicates") = 999, py::arg("seed") = 0,
      py::arg("statistic") = "dcov_sq", py::arg("metric_x") = "euclidean",
      py::arg("metric_y") = "euclidean", py::arg("threads") = 1,
      "The replicate statistics of the permutation test, in stream order.");

  m.def(
      "default_noise",
      [](const std::string& shape) { return dcov::default_noise(dcov::shape_from_name(shape)); },
      py::arg("shape"), "Default noise level of a simulated shape.");

  m.def(
      "simulate_shape",
      [](const std::string& shape, int n, std::optional<double> noise, std::uint64_t seed) {
        dcov::ShapeSpec spec;
        spec.shape = dcov::shape_from_name(shape);
        spec.n = n;
        spec.noise = noise.value_or(dcov::default_noise(spec.shape));
        spec.seed = seed;
        const auto [x, y] = dcov::simulate_shape(spec);
        return py::make_tuple(vector_to_array({x.vector().begin(), x.vector().end()}),
                              vector_to_array({y.vector().begin(), y.vector().end()}));
      },
      py::arg("shape"), py::arg("n") = 500, py::arg("noise") = py::none(), py::arg("seed") = 0,
      "Seeded sample from one of the six demonstration joint distributions.");

  m.def(
      "simulate_backcross",
      [](int individuals, int markers, std::optional<int> causal, double effect,
         double missing_rate, std::uint64_t seed) {
        dcov::BackcrossSpec spec;
        spec.n_individuals = individuals;
        spec.n_markers = markers;
        spec.causal_marker = causal;
        spec.effect_size = effect;
        spec.missing_rate = missing_rate;
        spec.seed = seed;
        const dcov::BackcrossData data = dcov::simulate_backcross(spec);
        const auto n = data.genotypes.individuals();
        const auto m_ = data.genotypes.markers();
        py::array_t<std::int8_t> geno({n, m_});
        std::copy(data.genotypes.genotypes().begin(), data.genotypes.genotypes().end(),
                  geno.mutable_data());
        return py::make_tuple(geno, vector_to_array(data.phenotype),
                              data.genotypes.marker_ids());
      },
      py::arg("individuals") = 154, py::arg("markers") = 119, py::arg("causal") = py::none(),
      py::arg("effect") = 0.0, py::arg("missing_rate") = 0.0, py::arg("seed") = 0,
      "Seeded synthetic backcross genotypes (missing = -1), phenotype and marker ids.");

  m.def(
      "scan_markers",
      [](const npint8& genotypes, const npdouble& phenotype,
         const std::optional<std::vector<std::string>>& marker_ids, int replicates,
         std::uint64_t seed, int max_levels, int threads) {
        return dcov::scan_markers(as_markers(genotypes, marker_ids, max_levels),
                                  as_sample(phenotype, "phenotype"), replicates, seed, threads);
      },
      py::arg("genotypes"), py::arg("phenotype"), py::arg("marker_ids") = py::none(),
      py::arg("replicates") = 999, py::arg("seed") = 0, py::arg("max_levels") = 2,
      py::arg("threads") = 1,
      "Per-marker independence scan; missing genotypes (-1) are dropped per marker.");
}
