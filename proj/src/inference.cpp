#include "dcov/inference.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <thread>

#include "dcov/rng.hpp"

namespace dcov {
namespace {

// Statistic of one replicate: the centered matrix of y is read through the
// permutation (centering commutes with relabelling the observations), in
// row-major order over (k, l). neg_floor is the most negative round-off the
// clamp tolerates; it comes from the permutation-invariant distance variances,
// which bound the absolute product sum by Cauchy-Schwarz.
double replicate_statistic(const Matrix& a, const Matrix& b,
                           const std::vector<std::uint32_t>& perm, StatKind kind,
                           double dvar_x_sq, double neg_floor) {
  const std::size_t n = a.rows();
  const double* pa = a.data();
  const double* pb = b.data();
  double sum = 0.0;
  double bsq = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double* arow = pa + k * n;
    const double* brow = pb + static_cast<std::size_t>(perm[k]) * n;
    if (kind == StatKind::kDcovSq) {
      for (std::size_t l = 0; l < n; ++l) sum += arow[l] * brow[perm[l]];
    } else {
      for (std::size_t l = 0; l < n; ++l) {
        const double bv = brow[perm[l]];
        sum += arow[l] * bv;
        bsq += bv * bv;
      }
    }
  }
  const double inv = 1.0 / static_cast<double>(n * n);
  double dcov_sq = sum * inv;
  if (dcov_sq < 0.0) {
    if (dcov_sq < neg_floor)
      throw InternalError("squared distance covariance is negative beyond round-off");
    dcov_sq = 0.0;
  }
  if (kind == StatKind::kDcovSq) return dcov_sq;

  const double dvar_y_sq = bsq * inv;
  if (dvar_x_sq <= 0.0 || dvar_y_sq <= 0.0) return 0.0;
  const double ratio = dcov_sq / std::sqrt(dvar_x_sq * dvar_y_sq);
  return std::sqrt(std::clamp(ratio, 0.0, 1.0));
}

struct NullRun {
  DcovResult observed;
  std::vector<double> stats;  // replicate statistics, stream order
};

NullRun run_replicates(const Sample& x, const Sample& y, int replicates, std::uint64_t seed,
                       StatKind kind, Metric metric_x, Metric metric_y, int threads) {
  if (x.size() != y.size())
    throw SizeError("samples must have the same number of observations");
  if (x.size() < 3) throw SizeError("permutation test requires at least three observations");
  if (replicates < 1) throw ParameterError("replicate count must be at least 1");

  const CenteredMatrix a = centered_distances(x, metric_x);
  const CenteredMatrix b = centered_distances(y, metric_y);

  NullRun run;
  run.observed = dcor_from_centered(a, b);
  run.stats.assign(static_cast<std::size_t>(replicates), 0.0);

  const auto n = static_cast<std::uint32_t>(x.size());
  const double dvar_x_sq = run.observed.dvar_x_sq;
  const double neg_floor =
      -1e-12 * std::max(1.0, std::sqrt(run.observed.dvar_x_sq * run.observed.dvar_y_sq));
  auto evaluate_range = [&](int first, int last) {
    for (int r = first; r <= last; ++r) {
      RngStream stream(seed, static_cast<std::uint64_t>(r));
      const std::vector<std::uint32_t> perm = stream.permutation(n);
      run.stats[static_cast<std::size_t>(r - 1)] =
          replicate_statistic(a.a, b.a, perm, kind, dvar_x_sq, neg_floor);
    }
  };

  const int workers = std::min(resolve_threads(threads), replicates);
  if (workers <= 1) {
    evaluate_range(1, replicates);
    return run;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const int chunk = (replicates + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int first = 1 + w * chunk;
    const int last = std::min(replicates, first + chunk - 1);
    if (first > last) break;
    pool.emplace_back(evaluate_range, first, last);
  }
  for (auto& t : pool) t.join();
  return run;
}

}  // namespace

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

TestResult permutation_test(const Sample& x, const Sample& y, int replicates, std::uint64_t seed,
                            StatKind kind, Metric metric_x, Metric metric_y, int threads) {
  NullRun run = run_replicates(x, y, replicates, seed, kind, metric_x, metric_y, threads);

  TestResult result;
  result.statistic_kind = kind;
  result.statistic = kind == StatKind::kDcovSq ? run.observed.dcov_sq : run.observed.dcor;
  result.replicates = replicates;
  result.seed = seed;
  result.observed = run.observed;
  int exceed = 0;
  for (double s : run.stats)
    if (s >= result.statistic) ++exceed;
  result.exceed_count = exceed;
  result.p_value = (1.0 + exceed) / (1.0 + replicates);
  return result;
}

std::vector<double> permutation_distribution(const Sample& x, const Sample& y, int replicates,
                                             std::uint64_t seed, StatKind kind, Metric metric_x,
                                             Metric metric_y, int threads) {
  return run_replicates(x, y, replicates, seed, kind, metric_x, metric_y, threads).stats;
}

}  // namespace dcov
