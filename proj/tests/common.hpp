#pragma once

// Shared helpers for the test suites.

#include <cstdint>
#include <vector>

#include "dcov/matrix.hpp"
#include "dcov/rng.hpp"

namespace testutil {

inline dcov::Sample gaussian_sample(std::uint64_t seed, std::size_t n, std::size_t p,
                                    double scale = 1.0) {
  dcov::RngStream rng(seed, 0);
  std::vector<double> v(n * p);
  for (double& e : v) e = scale * rng.next_gaussian();
  return dcov::Sample(dcov::Matrix(n, p, std::move(v)));
}

inline std::vector<double> gaussian_vector(std::uint64_t seed, std::size_t n,
                                           double scale = 1.0) {
  dcov::RngStream rng(seed, 1);
  std::vector<double> v(n);
  for (double& e : v) e = scale * rng.next_gaussian();
  return v;
}

// Random valid distance matrix: symmetric, zero diagonal, nonnegative.
inline dcov::Matrix random_distances(std::uint64_t seed, std::size_t n) {
  dcov::RngStream rng(seed, 2);
  dcov::Matrix d(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) {
      const double v = rng.next_unit() * 10.0;
      d(k, l) = v;
      d(l, k) = v;
    }
  return d;
}

}  // namespace testutil
