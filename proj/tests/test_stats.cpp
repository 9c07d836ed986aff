#include <cmath>
#include <vector>

#include "common.hpp"
#include "dcov/stats.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace dcov;

namespace {

Sample sample2d(std::vector<std::vector<double>> rows) {
  const std::size_t n = rows.size();
  const std::size_t p = rows[0].size();
  Matrix m(n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) m(i, j) = rows[i][j];
  return Sample(std::move(m));
}

}  // namespace

TEST_CASE("pairwise distances: coincident points") {
  const auto d = pairwise_distance_matrix(Sample::column({5.0, 5.0}));
  CHECK(d.d(0, 0) == 0.0);
  CHECK(d.d(0, 1) == 0.0);
  CHECK(d.d(1, 0) == 0.0);
  CHECK(d.d(1, 1) == 0.0);
}

TEST_CASE("pairwise distances: 3-4-5 triangle") {
  const auto d = pairwise_distance_matrix(sample2d({{0.0, 0.0}, {3.0, 4.0}}));
  CHECK(d.d(0, 1) == 5.0);
  CHECK(d.d(1, 0) == 5.0);
}

TEST_CASE("pairwise distances match a double-loop oracle") {
  const Sample x = testutil::gaussian_sample(11, 5, 2);
  const auto d = pairwise_distance_matrix(x);
  const std::vector<double>& raw = x.data().values();
  for (std::size_t k = 0; k < 5; ++k)
    for (std::size_t l = 0; l < 5; ++l)
      CHECK(std::abs(d.d(k, l) - oracle::dist(raw, 2, k, l)) <= 1e-14);
}

TEST_CASE("pairwise distances: indicator metric") {
  const auto d = pairwise_distance_matrix(sample2d({{0, 1}, {0, 1}, {0, 2}}),
                                          Metric::kIndicator);
  CHECK(d.d(0, 1) == 0.0);
  CHECK(d.d(0, 2) == 1.0);
  CHECK(d.d(1, 2) == 1.0);
}

TEST_CASE("pairwise distances: error paths") {
  CHECK_THROWS_AS(pairwise_distance_matrix(Sample::column({1.0})), SizeError);
  CHECK_THROWS_AS(Sample::column({1.0, std::nan("")}), InvalidInputError);
  CHECK_THROWS_AS(Sample::column({1.0, std::numeric_limits<double>::infinity()}),
                  InvalidInputError);
}

TEST_CASE("double centering: zero matrix is a fixed point") {
  const auto c = double_center(DistanceMatrix::from_matrix(Matrix(4, 4)));
  for (double v : c.a.values()) CHECK(v == 0.0);
}

TEST_CASE("double centering: hand-checked 3x3 entry") {
  const auto d = pairwise_distance_matrix(Sample::column({0.0, 1.0, 3.0}));
  CHECK(d.d(0, 1) == 1.0);
  CHECK(d.d(0, 2) == 3.0);
  CHECK(d.d(1, 2) == 2.0);
  const auto c = double_center(d);
  CHECK(c.a(0, 0) == doctest::Approx(-4.0 / 3.0).epsilon(1e-15));
  CHECK(is_centered(c.a));
}

TEST_CASE("double centering annihilates constant matrices") {
  const DistanceMatrix constant{Matrix(4, 4, 7.5), Metric::kEuclidean};
  const auto c = double_center(constant);
  for (double v : c.a.values()) CHECK(v == 0.0);
}

TEST_CASE("double centering: row and column means vanish on random inputs") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 2 + seed % 9;
    const auto c = double_center(
        DistanceMatrix::from_matrix(testutil::random_distances(seed, n)));
    CHECK(is_centered(c.a));
  }
}

TEST_CASE("distance matrix validation") {
  Matrix bad(2, 2);
  bad(0, 1) = 1.0;
  bad(1, 0) = 2.0;
  CHECK_THROWS_AS(DistanceMatrix::from_matrix(bad), InvalidInputError);
  Matrix diag(2, 2);
  diag(0, 0) = 0.5;
  CHECK_THROWS_AS(DistanceMatrix::from_matrix(diag), InvalidInputError);
  Matrix neg(2, 2);
  neg(0, 1) = -1.0;
  neg(1, 0) = -1.0;
  CHECK_THROWS_AS(DistanceMatrix::from_matrix(neg), InvalidInputError);
}

TEST_CASE("dcov: constant x gives zero") {
  const Sample x = Sample::column({2.0, 2.0, 2.0, 2.0});
  const Sample y = Sample::column({1.0, 2.0, 3.0, 4.0});
  CHECK(distance_covariance_sq(x, y) == 0.0);
}

TEST_CASE("dcov: n=2 closed form") {
  const Sample x = Sample::column({0.0, 1.0});
  const Sample y = Sample::column({0.0, 2.0});
  CHECK(distance_covariance_sq(x, y) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("dcov: matches the definition oracle on random 4-point samples") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const Sample x = testutil::gaussian_sample(seed, 4, 2);
    const Sample y = testutil::gaussian_sample(seed + 1000, 4, 3);
    const double impl = distance_covariance_sq(x, y);
    const double ref =
        oracle::dcov_sq_centered(x.data().values(), 2, y.data().values(), 3, 4);
    const double scale =
        oracle::dcov_scale(x.data().values(), 2, y.data().values(), 3, 4);
    CHECK(std::abs(impl - ref) <= 1e-12 * std::max(std::abs(ref), scale));
  }
}

TEST_CASE("dcov: both oracle routes agree with the implementation up to n=8") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    dcov::RngStream pick(seed, 9);
    const std::size_t n = 3 + pick.next_below(6);
    const std::size_t p = 1 + pick.next_below(3);
    const std::size_t q = 1 + pick.next_below(3);
    const Sample x = testutil::gaussian_sample(seed * 31, n, p);
    const Sample y = testutil::gaussian_sample(seed * 31 + 7, n, q);
    const double impl = distance_covariance_sq(x, y);
    const double ref1 =
        oracle::dcov_sq_centered(x.data().values(), p, y.data().values(), q, n);
    const double ref2 =
        oracle::dcov_sq_expanded(x.data().values(), p, y.data().values(), q, n);
    const double scale = oracle::dcov_scale(x.data().values(), p, y.data().values(), q, n);
    CHECK(std::abs(impl - ref1) <= 1e-12 * std::max(std::abs(ref1), scale));
    CHECK(std::abs(impl - ref2) <= 1e-12 * std::max(std::abs(ref2), scale));
  }
}

TEST_CASE("dcov: symmetry is exact") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Sample x = testutil::gaussian_sample(seed, 6, 2);
    const Sample y = testutil::gaussian_sample(seed + 77, 6, 1);
    CHECK(distance_covariance_sq(x, y) == distance_covariance_sq(y, x));
  }
}

TEST_CASE("dcov: mismatched sample sizes") {
  CHECK_THROWS_AS(
      distance_covariance_sq(Sample::column({1, 2, 3}), Sample::column({1, 2})),
      SizeError);
}

TEST_CASE("dcor: y equal to x gives 1") {
  const Sample x = Sample::column({0.0, 1.0, 4.0, 9.5});
  const DcovResult r = distance_correlation(x, x);
  CHECK(r.dcor == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dcor: affine image of x gives 1") {
  const Sample x = Sample::column({-1.0, 0.5, 2.0, 7.0, 11.0});
  std::vector<double> y(5);
  for (std::size_t i = 0; i < 5; ++i) y[i] = 2.0 * x.vector()[i] + 3.0;
  const DcovResult r = distance_correlation(x, Sample::column(std::move(y)));
  CHECK(r.dcor == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dcor: constant sample gives 0 by convention") {
  const Sample x = Sample::column({3.0, 3.0, 3.0});
  const Sample y = Sample::column({1.0, 2.0, 5.0});
  const DcovResult r = distance_correlation(x, y);
  CHECK(r.dcor == 0.0);
  CHECK(r.dvar_x_sq == 0.0);
  CHECK(r.dcov_sq == 0.0);
}

TEST_CASE("dcor: stays in [0,1] and all fields are nonnegative") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    dcov::RngStream pick(seed, 4);
    const std::size_t n = 2 + pick.next_below(11);
    const Sample x = testutil::gaussian_sample(seed * 13, n, 1 + pick.next_below(3));
    const Sample y = testutil::gaussian_sample(seed * 13 + 5, n, 1 + pick.next_below(3));
    const DcovResult r = distance_correlation(x, y);
    CHECK(r.dcov_sq >= 0.0);
    CHECK(r.dvar_x_sq >= 0.0);
    CHECK(r.dvar_y_sq >= 0.0);
    CHECK(r.dcor >= 0.0);
    CHECK(r.dcor <= 1.0);
  }
}

TEST_CASE("dcov invariances: translation, positive scaling, rotation") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::size_t n = 8;
    const Sample x = testutil::gaussian_sample(seed, n, 2);
    const Sample y = testutil::gaussian_sample(seed + 3, n, 1);
    const DcovResult base = distance_correlation(x, y);

    // translate every row of x by a fixed vector
    Matrix shifted = x.data();
    for (std::size_t i = 0; i < n; ++i) {
      shifted(i, 0) += 17.5;
      shifted(i, 1) -= 4.25;
    }
    const DcovResult t = distance_correlation(Sample(shifted), y);
    CHECK(t.dcov_sq == doctest::Approx(base.dcov_sq).epsilon(1e-10));
    CHECK(t.dvar_x_sq == doctest::Approx(base.dvar_x_sq).epsilon(1e-10));
    CHECK(t.dvar_y_sq == doctest::Approx(base.dvar_y_sq).epsilon(1e-10));
    CHECK(t.dcor == doctest::Approx(base.dcor).epsilon(1e-10));

    // positive scaling multiplies dcov_sq by c and leaves dcor alone
    const double c = 3.75;
    Matrix scaled = x.data();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < 2; ++j) scaled(i, j) *= c;
    const DcovResult s = distance_correlation(Sample(scaled), y);
    CHECK(s.dcov_sq == doctest::Approx(c * base.dcov_sq).epsilon(1e-10));
    CHECK(s.dcor == doctest::Approx(base.dcor).epsilon(1e-10));

    // rotating the rows of x changes nothing
    const double phi = 0.731;
    Matrix rotated(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
      rotated(i, 0) = std::cos(phi) * x.data()(i, 0) - std::sin(phi) * x.data()(i, 1);
      rotated(i, 1) = std::sin(phi) * x.data()(i, 0) + std::cos(phi) * x.data()(i, 1);
    }
    const DcovResult rr = distance_correlation(Sample(rotated), y);
    CHECK(rr.dcov_sq == doctest::Approx(base.dcov_sq).epsilon(1e-10));
    CHECK(rr.dcor == doctest::Approx(base.dcor).epsilon(1e-10));
  }
}

TEST_CASE("pearson: anchors and errors") {
  const std::vector<double> x{1.0, 2.0, 3.0};
  CHECK(pearson(x, x) == doctest::Approx(1.0).epsilon(1e-14));
  const std::vector<double> neg{-1.0, -2.0, -3.0};
  CHECK(pearson(x, neg) == doctest::Approx(-1.0).epsilon(1e-14));
  const std::vector<double> y{1.0, 3.0, 2.0};
  CHECK(pearson(x, y) == doctest::Approx(0.5).epsilon(1e-15));
  const std::vector<double> flat{2.0, 2.0, 2.0};
  CHECK_THROWS_AS(pearson(x, flat), DegenerateError);
  CHECK_THROWS_AS(pearson(x, std::vector<double>{1.0, 2.0}), SizeError);
}

TEST_CASE("spearman: anchors") {
  const std::vector<double> x{1.0, 2.0, 3.0};
  const std::vector<double> y{1.0, 3.0, 2.0};
  CHECK(spearman(x, y) == doctest::Approx(0.5).epsilon(1e-15));

  // any strictly increasing transform has rank correlation 1
  const std::vector<double> xs{-2.0, -1.0, 0.0, 1.5, 3.0};
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = std::exp(xs[i]);
  CHECK(spearman(xs, ys) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(pearson(xs, ys) < 1.0);

  const std::vector<double> flat{1.0, 1.0, 1.0};
  CHECK_THROWS_AS(spearman(xs, std::vector<double>{1, 1, 1, 1, 1}), DegenerateError);
  (void)flat;
}

TEST_CASE("spearman: midranks on ties, frozen value") {
  // ranks of x: 1, 2.5, 2.5, 4; ranks of y: 1..4
  const std::vector<double> x{1.0, 2.0, 2.0, 3.0};
  const std::vector<double> y{1.0, 2.0, 3.0, 4.0};
  CHECK(spearman(x, y) == doctest::Approx(0.94868329805051381).epsilon(1e-14));
  const std::vector<double> r = midranks(x);
  CHECK(r[0] == 1.0);
  CHECK(r[1] == 2.5);
  CHECK(r[2] == 2.5);
  CHECK(r[3] == 4.0);
}
