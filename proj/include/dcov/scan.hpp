#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcov/inference.hpp"

namespace dcov {

// Genotype matrix: n individuals by m markers of small nonnegative integer
// levels, with kMissing marking untyped entries. Column levels are capped at
// max_levels distinct values (2 for a backcross).
class MarkerMatrix {
 public:
  static constexpr std::int8_t kMissing = -1;

  MarkerMatrix(std::size_t n_individuals, std::size_t n_markers,
               std::vector<std::int8_t> genotypes, std::vector<std::string> marker_ids,
               int max_levels = 2);

  std::size_t individuals() const { return n_; }
  std::size_t markers() const { return m_; }
  std::int8_t at(std::size_t i, std::size_t j) const { return genotypes_[i * m_ + j]; }
  const std::vector<std::string>& marker_ids() const { return marker_ids_; }
  const std::vector<std::int8_t>& genotypes() const { return genotypes_; }
  int max_levels() const { return max_levels_; }

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::int8_t> genotypes_;  // row-major n x m
  std::vector<std::string> marker_ids_;
  int max_levels_ = 2;
};

struct ScanRecord {
  std::string marker_id;
  int n_used = 0;
  double statistic = 0.0;
  double p_value = 1.0;
  double neglog10_p = 0.0;
  bool degenerate = false;  // no informative test at this marker
};

struct ScanResult {
  std::vector<ScanRecord> records;  // one per marker, input order
  int replicates = 0;
  std::uint64_t seed = 0;
};

// Per-marker independence scan of phenotype against genotype. Individuals
// missing at a marker are dropped for that marker only; the replicate stream
// of each marker is seeded from the scan seed and a hash of its id, so records
// are invariant to column reordering. Markers with fewer than three usable
// individuals or a constant genotype yield a degenerate record instead of a
// hard error.
ScanResult scan_markers(const MarkerMatrix& markers, const Sample& phenotype, int replicates,
                        std::uint64_t seed, int threads = 1);

// Marker labels used by the simulator and the CLI: m01, m02, ... zero-padded
// to the width of the marker count.
std::vector<std::string> make_marker_ids(std::size_t n_markers);

}  // namespace dcov
