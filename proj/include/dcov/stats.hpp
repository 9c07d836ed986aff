#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "dcov/matrix.hpp"

namespace dcov {

enum class Metric { kEuclidean, kIndicator };
enum class StatKind { kDcovSq, kDcor };

Metric metric_from_name(std::string_view name);
std::string_view metric_name(Metric metric);
StatKind stat_kind_from_name(std::string_view name);
std::string_view stat_kind_name(StatKind kind);

// n-by-n symmetric pairwise distances with zero diagonal, tagged with the
// metric that produced them.
struct DistanceMatrix {
  Matrix d;
  Metric metric = Metric::kEuclidean;

  // Validates symmetry, zero diagonal and nonnegativity of an externally
  // supplied matrix.
  static DistanceMatrix from_matrix(Matrix m, Metric metric = Metric::kEuclidean);
};

// Distance matrix after double centering: all row and column means vanish.
struct CenteredMatrix {
  Matrix a;
};

struct DcovResult {
  double dcov_sq = 0.0;    // squared distance covariance
  double dvar_x_sq = 0.0;  // squared distance variance of x
  double dvar_y_sq = 0.0;  // squared distance variance of y
  double dcor = 0.0;       // distance correlation, in [0,1]
};

DistanceMatrix pairwise_distance_matrix(const Sample& x, Metric metric = Metric::kEuclidean);

CenteredMatrix double_center(const DistanceMatrix& d);

// pairwise_distance_matrix followed by double_center.
CenteredMatrix centered_distances(const Sample& x, Metric metric = Metric::kEuclidean);

double distance_covariance_sq(const Sample& x, const Sample& y,
                              Metric metric_x = Metric::kEuclidean,
                              Metric metric_y = Metric::kEuclidean);

DcovResult distance_correlation(const Sample& x, const Sample& y,
                                Metric metric_x = Metric::kEuclidean,
                                Metric metric_y = Metric::kEuclidean);

// The same statistics evaluated on precomputed centered matrices. All sums run
// in fixed row-major order, so results are reproducible bit for bit.
double dcov_sq_from_centered(const CenteredMatrix& a, const CenteredMatrix& b);
DcovResult dcor_from_centered(const CenteredMatrix& a, const CenteredMatrix& b);

// Classical baselines for 1-D samples.
double pearson(std::span<const double> x, std::span<const double> y);
double spearman(std::span<const double> x, std::span<const double> y);
double pearson(const Sample& x, const Sample& y);
double spearman(const Sample& x, const Sample& y);

// Midranks of v, 1-based; ties receive the average of the ranks they span.
std::vector<double> midranks(std::span<const double> v);

// True when every row and column mean of m is below 1e-10 times the largest
// absolute entry (floored at 1).
bool is_centered(const Matrix& m);

}  // namespace dcov
