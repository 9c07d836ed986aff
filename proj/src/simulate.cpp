#include "dcov/simulate.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "dcov/rng.hpp"

namespace dcov {
namespace {

constexpr double kLinkageKeepProb = 0.9;  // P(adjacent markers share a genotype)

void validate(const ShapeSpec& spec) {
  if (spec.n < 4) throw ParameterError("shape simulation requires n >= 4");
  if (!(spec.noise >= 0.0) || !std::isfinite(spec.noise))
    throw ParameterError("noise must be finite and nonnegative");
}

void validate(const BackcrossSpec& spec) {
  if (spec.n_individuals < 4) throw ParameterError("backcross requires at least 4 individuals");
  if (spec.n_markers < 1) throw ParameterError("backcross requires at least 1 marker");
  if (spec.causal_marker &&
      (*spec.causal_marker < 0 || *spec.causal_marker >= spec.n_markers))
    throw ParameterError("causal marker index out of range");
  if (!(spec.missing_rate >= 0.0) || spec.missing_rate >= 1.0)
    throw ParameterError("missing rate must lie in [0, 1)");
  if (!std::isfinite(spec.effect_size)) throw ParameterError("effect size must be finite");
}

}  // namespace

Shape shape_from_name(std::string_view name) {
  if (name == "parabola") return Shape::kParabola;
  if (name == "circle") return Shape::kCircle;
  if (name == "cross") return Shape::kCross;
  if (name == "four_clusters") return Shape::kFourClusters;
  if (name == "sinusoid") return Shape::kSinusoid;
  if (name == "independent") return Shape::kIndependent;
  throw ParameterError("unknown shape '" + std::string(name) + "'");
}

std::string_view shape_name(Shape shape) {
  switch (shape) {
    case Shape::kParabola: return "parabola";
    case Shape::kCircle: return "circle";
    case Shape::kCross: return "cross";
    case Shape::kFourClusters: return "four_clusters";
    case Shape::kSinusoid: return "sinusoid";
    case Shape::kIndependent: return "independent";
  }
  throw ParameterError("unknown shape tag");
}

double default_noise(Shape shape) {
  switch (shape) {
    case Shape::kParabola:
    case Shape::kSinusoid: return 0.05;
    case Shape::kCircle:
    case Shape::kFourClusters: return 0.1;
    case Shape::kCross:
    case Shape::kIndependent: return 0.0;
  }
  return 0.0;
}

std::pair<Sample, Sample> simulate_shape(const ShapeSpec& spec) {
  validate(spec);
  const auto n = static_cast<std::size_t>(spec.n);
  std::vector<double> x(n);
  std::vector<double> y(n);
  RngStream rng(spec.seed, 0);

  // Four cluster centers on a diamond: dependent (the x cluster pins the y
  // cluster) yet uncorrelated by the quarter-turn symmetry.
  static constexpr std::array<std::array<double, 2>, 4> kCenters = {
      {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}}};

  switch (spec.shape) {
    case Shape::kParabola:
      // per point: uniform for x, gaussian for y-noise
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = 2.0 * rng.next_unit() - 1.0;
        y[i] = x[i] * x[i] + spec.noise * rng.next_gaussian();
      }
      break;
    case Shape::kCircle:
      // per point: uniform for the angle, then x-noise and y-noise gaussians
      for (std::size_t i = 0; i < n; ++i) {
        const double theta = 2.0 * std::numbers::pi * rng.next_unit();
        x[i] = std::cos(theta) + spec.noise * rng.next_gaussian();
        y[i] = std::sin(theta) + spec.noise * rng.next_gaussian();
      }
      break;
    case Shape::kCross:
      // per point: uniform for x, one bit for the branch sign; noise unused
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = 2.0 * rng.next_unit() - 1.0;
        y[i] = (rng.next_u64() & 1u) ? x[i] : -x[i];
      }
      break;
    case Shape::kFourClusters:
      // per point: center index, then x-noise and y-noise gaussians
      for (std::size_t i = 0; i < n; ++i) {
        const auto& c = kCenters[rng.next_below(4)];
        x[i] = c[0] + spec.noise * rng.next_gaussian();
        y[i] = c[1] + spec.noise * rng.next_gaussian();
      }
      break;
    case Shape::kSinusoid:
      // per point: uniform for x, gaussian for y-noise
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = 2.0 * rng.next_unit() - 1.0;
        y[i] = std::cos(2.0 * std::numbers::pi * x[i]) + spec.noise * rng.next_gaussian();
      }
      break;
    case Shape::kIndependent:
      // per point: uniform for x, uniform for y; noise unused
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = 2.0 * rng.next_unit() - 1.0;
        y[i] = 2.0 * rng.next_unit() - 1.0;
      }
      break;
  }
  return {Sample::column(std::move(x)), Sample::column(std::move(y))};
}

BackcrossData simulate_backcross(const BackcrossSpec& spec) {
  validate(spec);
  const auto n = static_cast<std::size_t>(spec.n_individuals);
  const auto m = static_cast<std::size_t>(spec.n_markers);

  // Genotypes first, individual by individual along the marker chain.
  std::vector<std::int8_t> geno(n * m);
  {
    RngStream rng(spec.seed, 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::int8_t level = rng.next_unit() < 0.5 ? 0 : 1;
      geno[i * m] = level;
      for (std::size_t j = 1; j < m; ++j) {
        if (rng.next_unit() >= kLinkageKeepProb) level = static_cast<std::int8_t>(1 - level);
        geno[i * m + j] = level;
      }
    }
  }

  // Phenotype from the complete genotypes, one gaussian per individual.
  std::vector<double> phenotype(n);
  {
    RngStream rng(spec.seed, 1);
    for (std::size_t i = 0; i < n; ++i) {
      double value = rng.next_gaussian();
      if (spec.causal_marker)
        value += spec.effect_size *
                 static_cast<double>(geno[i * m + static_cast<std::size_t>(*spec.causal_marker)]);
      phenotype[i] = value;
    }
  }

  // Missingness mask last, row-major over individuals and markers.
  {
    RngStream rng(spec.seed, 2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (rng.next_unit() < spec.missing_rate) geno[i * m + j] = MarkerMatrix::kMissing;
  }

  return {MarkerMatrix(n, m, std::move(geno), make_marker_ids(m)), std::move(phenotype)};
}

}  // namespace dcov
