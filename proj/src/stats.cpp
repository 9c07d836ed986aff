#include "dcov/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace dcov {
namespace {

void require_pair(const Sample& x, const Sample& y) {
  if (x.size() != y.size())
    throw SizeError("samples must have the same number of observations");
  if (x.size() < 2) throw SizeError("statistic requires at least two observations");
}

double euclidean_rows(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double diff = a[c] - b[c];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

double indicator_rows(std::span<const double> a, std::span<const double> b) {
  for (std::size_t c = 0; c < a.size(); ++c)
    if (a[c] != b[c]) return 1.0;
  return 0.0;
}

struct MeanProduct {
  double mean;      // (1/n^2) sum of elementwise products, row-major order
  double abs_mean;  // same sum over absolute products; the round-off scale
};

MeanProduct mean_product(const Matrix& a, const Matrix& b) {
  const std::size_t total = a.rows() * a.cols();
  const double* pa = a.data();
  const double* pb = b.data();
  double sum = 0.0;
  double abs_sum = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    const double t = pa[i] * pb[i];
    sum += t;
    abs_sum += std::abs(t);
  }
  const double inv = 1.0 / static_cast<double>(a.rows() * a.rows());
  return {sum * inv, abs_sum * inv};
}

// The squared statistic is nonnegative in exact arithmetic; tiny negative
// round-off is clamped to zero, anything worse is a consistency failure.
double clamp_nonnegative(double value, double scale) {
  if (value >= 0.0) return value;
  if (value >= -1e-12 * std::max(1.0, scale)) return 0.0;
  throw InternalError("squared distance covariance is negative beyond round-off");
}

bool all_equal(std::span<const double> v) {
  for (double x : v)
    if (x != v.front()) return false;
  return true;
}

}  // namespace

Metric metric_from_name(std::string_view name) {
  if (name == "euclidean") return Metric::kEuclidean;
  if (name == "indicator") return Metric::kIndicator;
  throw ParameterError("unknown metric '" + std::string(name) + "'");
}

std::string_view metric_name(Metric metric) {
  return metric == Metric::kEuclidean ? "euclidean" : "indicator";
}

StatKind stat_kind_from_name(std::string_view name) {
  if (name == "dcov_sq") return StatKind::kDcovSq;
  if (name == "dcor") return StatKind::kDcor;
  throw ParameterError("unknown statistic '" + std::string(name) + "'");
}

std::string_view stat_kind_name(StatKind kind) {
  return kind == StatKind::kDcovSq ? "dcov_sq" : "dcor";
}

DistanceMatrix DistanceMatrix::from_matrix(Matrix m, Metric metric) {
  if (m.rows() != m.cols()) throw InvalidInputError("distance matrix must be square");
  for (std::size_t k = 0; k < m.rows(); ++k) {
    if (m(k, k) != 0.0) throw InvalidInputError("distance matrix must have a zero diagonal");
    for (std::size_t l = 0; l < k; ++l) {
      const double v = m(k, l);
      if (!(v >= 0.0) || !std::isfinite(v))
        throw InvalidInputError("distance matrix entries must be finite and nonnegative");
      if (v != m(l, k)) throw InvalidInputError("distance matrix must be symmetric");
    }
  }
  return {std::move(m), metric};
}

DistanceMatrix pairwise_distance_matrix(const Sample& x, Metric metric) {
  const std::size_t n = x.size();
  if (n < 2) throw SizeError("distance matrix requires at least two observations");
  Matrix d(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k + 1; l < n; ++l) {
      const double v = metric == Metric::kEuclidean ? euclidean_rows(x.row(k), x.row(l))
                                                    : indicator_rows(x.row(k), x.row(l));
      d(k, l) = v;
      d(l, k) = v;
    }
  }
  return {std::move(d), metric};
}

CenteredMatrix double_center(const DistanceMatrix& dist) {
  const Matrix& d = dist.d;
  const std::size_t n = d.rows();
  std::vector<double> row_mean(n, 0.0);
  std::vector<double> col_mean(n, 0.0);
  double grand = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t l = 0; l < n; ++l) acc += d(k, l);
    row_mean[k] = acc / static_cast<double>(n);
    grand += acc;
  }
  for (std::size_t l = 0; l < n; ++l) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += d(k, l);
    col_mean[l] = acc / static_cast<double>(n);
  }
  grand /= static_cast<double>(n * n);

  Matrix a(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      a(k, l) = d(k, l) - row_mean[k] - col_mean[l] + grand;
  return {std::move(a)};
}

CenteredMatrix centered_distances(const Sample& x, Metric metric) {
  return double_center(pairwise_distance_matrix(x, metric));
}

double dcov_sq_from_centered(const CenteredMatrix& a, const CenteredMatrix& b) {
  const MeanProduct mp = mean_product(a.a, b.a);
  return clamp_nonnegative(mp.mean, mp.abs_mean);
}

DcovResult dcor_from_centered(const CenteredMatrix& a, const CenteredMatrix& b) {
  DcovResult r;
  r.dcov_sq = dcov_sq_from_centered(a, b);
  r.dvar_x_sq = clamp_nonnegative(mean_product(a.a, a.a).mean, 0.0);
  r.dvar_y_sq = clamp_nonnegative(mean_product(b.a, b.a).mean, 0.0);
  if (r.dvar_x_sq > 0.0 && r.dvar_y_sq > 0.0) {
    const double ratio = r.dcov_sq / std::sqrt(r.dvar_x_sq * r.dvar_y_sq);
    r.dcor = std::sqrt(std::clamp(ratio, 0.0, 1.0));
  }
  return r;
}

double distance_covariance_sq(const Sample& x, const Sample& y, Metric metric_x,
                              Metric metric_y) {
  require_pair(x, y);
  return dcov_sq_from_centered(centered_distances(x, metric_x), centered_distances(y, metric_y));
}

DcovResult distance_correlation(const Sample& x, const Sample& y, Metric metric_x,
                                Metric metric_y) {
  require_pair(x, y);
  return dcor_from_centered(centered_distances(x, metric_x), centered_distances(y, metric_y));
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw SizeError("samples must have the same number of observations");
  const std::size_t n = x.size();
  if (n < 2) throw SizeError("correlation requires at least two observations");
  if (all_equal(x) || all_equal(y))
    throw DegenerateError("correlation undefined for a zero-variance sample");

  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw DegenerateError("correlation undefined for a zero-variance sample");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> midranks(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    // ranks i+1 .. j+1 collapse to their average
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw SizeError("samples must have the same number of observations");
  const std::vector<double> rx = midranks(x);
  const std::vector<double> ry = midranks(y);
  return pearson(rx, ry);
}

double pearson(const Sample& x, const Sample& y) { return pearson(x.vector(), y.vector()); }

double spearman(const Sample& x, const Sample& y) { return spearman(x.vector(), y.vector()); }

bool is_centered(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 0 || m.cols() != n) return false;
  double max_abs = 0.0;
  for (double v : m.values()) max_abs = std::max(max_abs, std::abs(v));
  const double tol = 1e-10 * std::max(1.0, max_abs);
  for (std::size_t k = 0; k < n; ++k) {
    double row = 0.0;
    double col = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      row += m(k, l);
      col += m(l, k);
    }
    if (std::abs(row / static_cast<double>(n)) > tol) return false;
    if (std::abs(col / static_cast<double>(n)) > tol) return false;
  }
  return true;
}

}  // namespace dcov
