#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "dcov/scan.hpp"
#include "dcov/simulate.hpp"
#include "doctest.h"

using namespace dcov;

namespace {

MarkerMatrix tiny_markers(std::vector<std::int8_t> geno, std::size_t n, std::size_t m) {
  return {n, m, std::move(geno), make_marker_ids(m)};
}

}  // namespace

TEST_CASE("constant marker yields statistic 0 and p = 1") {
  // marker 1 constant, marker 2 informative
  const MarkerMatrix markers = tiny_markers({1, 0, 1, 1, 1, 0, 1, 1}, 4, 2);
  const Sample pheno = Sample::column({0.1, 2.0, -1.0, 0.4});
  const ScanResult res = scan_markers(markers, pheno, 99, 5);
  REQUIRE(res.records.size() == 2);
  CHECK(res.records[0].statistic == 0.0);
  CHECK(res.records[0].p_value == 1.0);
  CHECK(res.records[0].neglog10_p == 0.0);
  CHECK(res.records[0].degenerate);
  CHECK_FALSE(res.records[1].degenerate);
  CHECK(res.records[1].n_used == 4);
}

TEST_CASE("missing genotypes are dropped per marker") {
  const auto na = MarkerMatrix::kMissing;
  const MarkerMatrix markers =
      tiny_markers({0, na, 1, na, 0, na, 1, 0, na, 0, na, na}, 6, 2);
  const Sample pheno = Sample::column({1.0, 2.0, 3.0, 4.0, 5.0, 6.0});
  const ScanResult res = scan_markers(markers, pheno, 49, 9);
  CHECK(res.records[0].n_used == 4);
  CHECK_FALSE(res.records[0].degenerate);
  CHECK(res.records[1].n_used == 2);  // below the minimum of 3
  CHECK(res.records[1].degenerate);
  CHECK(res.records[1].p_value == 1.0);
  CHECK(res.records[1].statistic == 0.0);
}

TEST_CASE("an all-missing marker degrades gracefully") {
  const auto na = MarkerMatrix::kMissing;
  const MarkerMatrix markers = tiny_markers({0, na, 1, na, 0, na, 1, na}, 4, 2);
  const Sample pheno = Sample::column({1.0, -2.0, 0.5, 3.0});
  const ScanResult res = scan_markers(markers, pheno, 49, 1);
  CHECK(res.records[1].n_used == 0);
  CHECK(res.records[1].degenerate);
  CHECK(res.records[1].p_value == 1.0);
}

TEST_CASE("scan of a 154x119 dataset emits one record per marker") {
  BackcrossSpec spec;
  spec.seed = 21;
  spec.missing_rate = 0.02;
  const BackcrossData data = simulate_backcross(spec);
  const ScanResult res =
      scan_markers(data.genotypes, Sample::column(data.phenotype), 19, 21);
  REQUIRE(res.records.size() == 119);
  for (std::size_t j = 0; j < 119; ++j) {
    const ScanRecord& rec = res.records[j];
    CHECK(rec.marker_id == data.genotypes.marker_ids()[j]);
    CHECK(rec.p_value >= 1.0 / 20.0);
    CHECK(rec.p_value <= 1.0);
    CHECK(rec.neglog10_p == doctest::Approx(-std::log10(rec.p_value)).epsilon(1e-12));
    CHECK(rec.neglog10_p <= std::log10(20.0) + 1e-12);
    CHECK(rec.n_used <= 154);
  }
}

TEST_CASE("records are invariant to marker column order") {
  BackcrossSpec spec;
  spec.n_individuals = 60;
  spec.n_markers = 8;
  spec.causal_marker = 3;
  spec.effect_size = 1.0;
  spec.seed = 31;
  const BackcrossData data = simulate_backcross(spec);
  const Sample pheno = Sample::column(data.phenotype);
  const ScanResult base = scan_markers(data.genotypes, pheno, 199, 77);

  // reverse the marker columns
  const std::size_t n = data.genotypes.individuals();
  const std::size_t m = data.genotypes.markers();
  std::vector<std::int8_t> rev(n * m);
  std::vector<std::string> rev_ids(m);
  for (std::size_t j = 0; j < m; ++j) {
    rev_ids[j] = data.genotypes.marker_ids()[m - 1 - j];
    for (std::size_t i = 0; i < n; ++i) rev[i * m + j] = data.genotypes.at(i, m - 1 - j);
  }
  const ScanResult flipped =
      scan_markers(MarkerMatrix(n, m, std::move(rev), std::move(rev_ids)), pheno, 199, 77);

  for (std::size_t j = 0; j < m; ++j) {
    const ScanRecord& a = base.records[j];
    const ScanRecord& b = flipped.records[m - 1 - j];
    CHECK(a.marker_id == b.marker_id);
    CHECK(a.statistic == b.statistic);
    CHECK(a.p_value == b.p_value);
    CHECK(a.n_used == b.n_used);
  }
}

TEST_CASE("causal marker surfaces at or next to its true position") {
  BackcrossSpec spec;
  spec.n_individuals = 200;
  spec.n_markers = 20;
  spec.causal_marker = 7;
  spec.effect_size = 1.5;
  spec.seed = 41;
  const BackcrossData data = simulate_backcross(spec);
  const ScanResult res =
      scan_markers(data.genotypes, Sample::column(data.phenotype), 199, 41);
  std::size_t peak = 0;
  for (std::size_t j = 1; j < res.records.size(); ++j) {
    const ScanRecord& a = res.records[peak];
    const ScanRecord& b = res.records[j];
    if (b.neglog10_p > a.neglog10_p ||
        (b.neglog10_p == a.neglog10_p && b.statistic > a.statistic))
      peak = j;
  }
  CHECK(peak >= 6);
  CHECK(peak <= 8);
}

TEST_CASE("null scans stay near the nominal level") {
  int low_p = 0;
  int total = 0;
  for (const std::uint64_t seed : {5, 6, 7}) {
    BackcrossSpec spec;
    spec.n_individuals = 100;
    spec.n_markers = 100;
    spec.seed = seed;
    const BackcrossData data = simulate_backcross(spec);
    const ScanResult res =
        scan_markers(data.genotypes, Sample::column(data.phenotype), 199, seed, 0);
    for (const ScanRecord& rec : res.records) {
      if (rec.p_value <= 0.05) ++low_p;
      ++total;
    }
  }
  const double fraction = static_cast<double>(low_p) / static_cast<double>(total);
  CHECK(total == 300);
  CHECK(fraction >= 0.01);
  CHECK(fraction <= 0.12);
}

TEST_CASE("marker matrix validation") {
  CHECK_THROWS_AS(tiny_markers({0, 1, 2}, 3, 1), InvalidInputError);  // 3 levels with cap 2
  CHECK_THROWS_AS(MarkerMatrix(2, 2, {0, 1, 0, 1}, {"a", "a"}), InvalidInputError);
  CHECK_THROWS_AS(MarkerMatrix(2, 2, {0, 1, 0}, make_marker_ids(2)), SizeError);
  CHECK_THROWS_AS(MarkerMatrix(2, 2, {0, -2, 0, 1}, make_marker_ids(2)), InvalidInputError);
  const MarkerMatrix ok(2, 2, {0, 1, 2, 1}, make_marker_ids(2), 3);
  CHECK(ok.max_levels() == 3);
}

TEST_CASE("scan argument validation") {
  const MarkerMatrix markers = tiny_markers({0, 1, 0, 1}, 2, 2);
  CHECK_THROWS_AS(scan_markers(markers, Sample::column({1.0, 2.0, 3.0}), 9, 0), SizeError);
  CHECK_THROWS_AS(
      scan_markers(tiny_markers({0, 1, 1, 0, 0, 1}, 3, 2), Sample::column({1, 2, 3}), 0, 0),
      ParameterError);
}

TEST_CASE("marker id labels are zero-padded and unique") {
  const auto ids = make_marker_ids(119);
  CHECK(ids.front() == "m001");
  CHECK(ids[9] == "m010");
  CHECK(ids.back() == "m119");
  const auto small = make_marker_ids(9);
  CHECK(small.front() == "m1");
  CHECK(small.back() == "m9");
}
