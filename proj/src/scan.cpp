#include "dcov/scan.hpp"

#include <cmath>
#include <set>
#include <unordered_set>
#include <utility>

#include "dcov/rng.hpp"

namespace dcov {

MarkerMatrix::MarkerMatrix(std::size_t n_individuals, std::size_t n_markers,
                           std::vector<std::int8_t> genotypes,
                           std::vector<std::string> marker_ids, int max_levels)
    : n_(n_individuals),
      m_(n_markers),
      genotypes_(std::move(genotypes)),
      marker_ids_(std::move(marker_ids)),
      max_levels_(max_levels) {
  if (m_ == 0) throw SizeError("marker matrix needs at least one marker");
  if (genotypes_.size() != n_ * m_)
    throw SizeError("genotype storage size does not match its dimensions");
  if (marker_ids_.size() != m_) throw SizeError("marker id count does not match marker count");
  if (max_levels_ < 1) throw ParameterError("max_levels must be at least 1");

  std::unordered_set<std::string> seen;
  for (const auto& id : marker_ids_)
    if (!seen.insert(id).second) throw InvalidInputError("duplicate marker id '" + id + "'");

  for (std::size_t j = 0; j < m_; ++j) {
    std::set<std::int8_t> levels;
    for (std::size_t i = 0; i < n_; ++i) {
      const std::int8_t g = at(i, j);
      if (g == kMissing) continue;
      if (g < 0)
        throw InvalidInputError("genotype levels must be nonnegative (marker '" +
                                marker_ids_[j] + "')");
      levels.insert(g);
    }
    if (static_cast<int>(levels.size()) > max_levels_)
      throw InvalidInputError("marker '" + marker_ids_[j] + "' has more than " +
                              std::to_string(max_levels_) + " distinct levels");
  }
}

ScanResult scan_markers(const MarkerMatrix& markers, const Sample& phenotype, int replicates,
                        std::uint64_t seed, int threads) {
  if (phenotype.size() != markers.individuals())
    throw SizeError("phenotype rows must match the number of individuals");
  if (replicates < 1) throw ParameterError("replicate count must be at least 1");

  const std::size_t n = markers.individuals();
  const std::size_t p = phenotype.dim();

  ScanResult result;
  result.replicates = replicates;
  result.seed = seed;
  result.records.reserve(markers.markers());

  for (std::size_t j = 0; j < markers.markers(); ++j) {
    ScanRecord rec;
    rec.marker_id = markers.marker_ids()[j];

    std::vector<std::size_t> used;
    used.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      if (markers.at(i, j) != MarkerMatrix::kMissing) used.push_back(i);
    rec.n_used = static_cast<int>(used.size());

    bool constant = true;
    for (std::size_t i = 1; i < used.size(); ++i)
      if (markers.at(used[i], j) != markers.at(used[0], j)) {
        constant = false;
        break;
      }

    if (used.size() < 3 || constant) {
      rec.statistic = 0.0;
      rec.p_value = 1.0;
      rec.neglog10_p = 0.0;
      rec.degenerate = true;
      result.records.push_back(std::move(rec));
      continue;
    }

    std::vector<double> levels(used.size());
    Matrix pheno(used.size(), p);
    for (std::size_t i = 0; i < used.size(); ++i) {
      levels[i] = static_cast<double>(markers.at(used[i], j));
      for (std::size_t c = 0; c < p; ++c) pheno(i, c) = phenotype.data()(used[i], c);
    }

    const std::uint64_t marker_seed = derive_seed(seed, hash64(rec.marker_id));
    const TestResult test =
        permutation_test(Sample::column(std::move(levels)), Sample(std::move(pheno)), replicates,
                         marker_seed, StatKind::kDcovSq, Metric::kIndicator, Metric::kEuclidean,
                         threads);
    rec.statistic = test.statistic;
    rec.p_value = test.p_value;
    rec.neglog10_p = 0.0 - std::log10(test.p_value);  // 0.0 - keeps p = 1 at +0
    result.records.push_back(std::move(rec));
  }
  return result;
}

std::vector<std::string> make_marker_ids(std::size_t n_markers) {
  std::size_t width = 1;
  for (std::size_t v = n_markers; v >= 10; v /= 10) ++width;
  std::vector<std::string> ids;
  ids.reserve(n_markers);
  for (std::size_t j = 1; j <= n_markers; ++j) {
    std::string digits = std::to_string(j);
    ids.push_back("m" + std::string(width - digits.size(), '0') + digits);
  }
  return ids;
}

}  // namespace dcov
