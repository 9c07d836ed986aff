#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "dcov/errors.hpp"

namespace dcov {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
      : rows_(rows), cols_(cols), data_(std::move(values)) {
    if (data_.size() != rows_ * cols_)
      throw SizeError("matrix storage size does not match its dimensions");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  const double* data() const { return data_.data(); }
  double* data() { return data_.data(); }
  const std::vector<double>& values() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// n observations of a p-dimensional variable, one observation per row.
// Entries are validated finite at construction; statistics impose their own
// minimum sample sizes.
class Sample {
 public:
  explicit Sample(Matrix m) : data_(std::move(m)) {
    if (data_.rows() == 0 || data_.cols() == 0)
      throw SizeError("sample needs at least one row and one column");
    for (double v : data_.values())
      if (!std::isfinite(v)) throw InvalidInputError("sample contains a non-finite entry");
  }

  static Sample column(std::vector<double> v) {
    const std::size_t n = v.size();
    return Sample(Matrix(n, 1, std::move(v)));
  }

  std::size_t size() const { return data_.rows(); }  // n
  std::size_t dim() const { return data_.cols(); }   // p

  const Matrix& data() const { return data_; }
  std::span<const double> row(std::size_t i) const { return data_.row(i); }

  // Flat view of a 1-D sample; SizeError when p != 1.
  std::span<const double> vector() const {
    if (data_.cols() != 1) throw SizeError("operation requires a 1-D sample");
    return {data_.data(), data_.rows()};
  }

 private:
  Matrix data_;
};

}  // namespace dcov
