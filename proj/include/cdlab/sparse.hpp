#pragma once
// Row-stencil sparse matrices (CSR) sized for desk-scale certification work.

#include <cstdint>
#include <utility>

#include "cdlab/common.hpp"

namespace cdlab {

class StencilMatrix;

// Incremental row-wise builder; duplicate (row, col) entries accumulate.
class StencilBuilder {
 public:
  explicit StencilBuilder(int rows, int cols = -1)
      : rows_(rows), cols_(cols < 0 ? rows : cols), entries_(rows) {}

  void add(int row, int col, double value);
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  StencilMatrix build() const;

 private:
  int rows_, cols_;
  std::vector<std::vector<std::pair<int, double>>> entries_;
};

class StencilMatrix {
 public:
  StencilMatrix() = default;

  static StencilMatrix identity(int n);
  static StencilMatrix from_diagonal(const Vector& d);

  int rows() const { return nrows_; }
  int cols() const { return ncols_; }

  void apply(const Vector& x, Vector& y) const;
  Vector apply(const Vector& x) const;
  StencilMatrix transpose() const;

  double entry(int row, int col) const;  // 0 when absent
  double diagonal_entry(int row) const { return entry(row, row); }
  Vector diagonal() const;

  // row span accessors
  int row_size(int r) const { return rowptr_[r + 1] - rowptr_[r]; }
  const std::int32_t* row_cols(int r) const { return cols_.data() + rowptr_[r]; }
  const double* row_vals(int r) const { return vals_.data() + rowptr_[r]; }

  // this + alpha * other (matching sparsity union)
  StencilMatrix add_scaled(const StencilMatrix& other, double alpha) const;
  StencilMatrix scaled(double alpha) const;
  // rows scaled by w[i]: diag(w) * A
  StencilMatrix row_scaled(const Vector& w) const;

  bool is_symmetric(double tol) const;
  double max_abs_entry() const;
  // max entrywise |this^T + other|, without forming the transpose densely
  double adjointness_residual(const StencilMatrix& other) const;

  std::vector<std::vector<double>> to_dense() const;

 private:
  friend class StencilBuilder;
  int nrows_ = 0, ncols_ = 0;
  std::vector<std::int32_t> rowptr_;
  std::vector<std::int32_t> cols_;
  std::vector<double> vals_;
};

}  // namespace cdlab
