#pragma once

#include <cstdint>
#include <vector>

#include "dcov/stats.hpp"

namespace dcov {

// Outcome of the Monte Carlo permutation test of independence.
struct TestResult {
  double statistic = 0.0;  // observed value of the chosen statistic
  StatKind statistic_kind = StatKind::kDcovSq;
  int replicates = 0;     // R
  int exceed_count = 0;   // #{ replicate statistic >= observed }
  double p_value = 1.0;   // (1 + exceed_count) / (1 + R)
  std::uint64_t seed = 0;
  DcovResult observed;    // full observed decomposition, reported alongside
};

// Tests independence of x and y by permuting the rows of y. Replicate r draws
// its permutation from stream (seed, r), so the result does not depend on
// evaluation order or thread count. threads <= 0 selects the hardware count.
TestResult permutation_test(const Sample& x, const Sample& y, int replicates,
                            std::uint64_t seed, StatKind kind = StatKind::kDcovSq,
                            Metric metric_x = Metric::kEuclidean,
                            Metric metric_y = Metric::kEuclidean, int threads = 1);

// The R replicate statistics in stream order; permutation_test is a pure fold
// over this sequence.
std::vector<double> permutation_distribution(const Sample& x, const Sample& y, int replicates,
                                             std::uint64_t seed,
                                             StatKind kind = StatKind::kDcovSq,
                                             Metric metric_x = Metric::kEuclidean,
                                             Metric metric_y = Metric::kEuclidean,
                                             int threads = 1);

int resolve_threads(int threads);

}  // namespace dcov
