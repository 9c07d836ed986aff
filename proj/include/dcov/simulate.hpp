#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "dcov/scan.hpp"

namespace dcov {

// The six demonstration joint distributions. All except kIndependent are
// dependent with zero population Pearson correlation by symmetry.
enum class Shape {
  kParabola,      // x ~ U(-1,1), y = x^2 + noise*eps
  kCircle,        // theta ~ U(0,2pi), (x,y) = (cos,sin)(theta) + noise*(eps,eps)
  kCross,         // x ~ U(-1,1), y = s*x with s = +-1 equiprobable
  kFourClusters,  // center drawn from (+-1,0),(0,+-1), plus isotropic noise
  kSinusoid,      // x ~ U(-1,1), y = cos(2pi x) + noise*eps
  kIndependent,   // x, y ~ U(-1,1) independently
};

struct ShapeSpec {
  Shape shape = Shape::kIndependent;
  int n = 500;
  double noise = 0.0;  // standard deviation where the shape uses it
  std::uint64_t seed = 0;
};

struct BackcrossSpec {
  int n_individuals = 154;
  int n_markers = 119;
  std::optional<int> causal_marker;  // none = null model
  double effect_size = 0.0;
  double missing_rate = 0.0;
  std::uint64_t seed = 0;
};

struct BackcrossData {
  MarkerMatrix genotypes;
  std::vector<double> phenotype;
};

Shape shape_from_name(std::string_view name);
std::string_view shape_name(Shape shape);

// Noise level used by the CLI when none is given: 0.05 for parabola and
// sinusoid, 0.1 for circle and four_clusters, 0 otherwise.
double default_noise(Shape shape);

// Deterministic paired sample of spec.n points. Variates are drawn from
// stream (seed, 0) in a fixed per-point order, documented in the generator.
std::pair<Sample, Sample> simulate_shape(const ShapeSpec& spec);

// Deterministic backcross dataset. Genotypes follow a Markov chain along the
// genome (adjacent markers agree with probability 0.9); the phenotype is
// effect_size * genotype at the causal marker plus standard Gaussian noise.
// Streams: (seed,0) genotypes, (seed,1) phenotype noise, (seed,2) missingness.
BackcrossData simulate_backcross(const BackcrossSpec& spec);

}  // namespace dcov
