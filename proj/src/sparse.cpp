#include "cdlab/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "cdlab/kernels.hpp"

namespace cdlab {

void StencilBuilder::add(int row, int col, double value) {
  if (row < 0 || row >= rows_ || col < 0 || col >= cols_) {
    throw DimensionError("StencilBuilder::add: index out of range");
  }
  entries_[row].emplace_back(col, value);
}

StencilMatrix StencilBuilder::build() const {
  StencilMatrix m;
  m.nrows_ = rows_;
  m.ncols_ = cols_;
  m.rowptr_.assign(rows_ + 1, 0);
  std::vector<std::pair<int, double>> row;
  for (int r = 0; r < rows_; ++r) {
    row.assign(entries_[r].begin(), entries_[r].end());
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // merge duplicates
    std::size_t out = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (out > 0 && row[out - 1].first == row[i].first) {
        row[out - 1].second += row[i].second;
      } else {
        row[out++] = row[i];
      }
    }
    for (std::size_t i = 0; i < out; ++i) {
      m.cols_.push_back(row[i].first);
      m.vals_.push_back(row[i].second);
    }
    m.rowptr_[r + 1] = static_cast<std::int32_t>(m.cols_.size());
  }
  return m;
}

StencilMatrix StencilMatrix::identity(int n) {
  StencilBuilder b(n);
  for (int i = 0; i < n; ++i) b.add(i, i, 1.0);
  return b.build();
}

StencilMatrix StencilMatrix::from_diagonal(const Vector& d) {
  StencilBuilder b(static_cast<int>(d.size()));
  for (int i = 0; i < static_cast<int>(d.size()); ++i) b.add(i, i, d[i]);
  return b.build();
}

void StencilMatrix::apply(const Vector& x, Vector& y) const {
  if (static_cast<int>(x.size()) != ncols_) {
    throw DimensionError("StencilMatrix::apply: size mismatch");
  }
  y.resize(nrows_);
  kern::spmv(rowptr_.data(), cols_.data(), vals_.data(), nrows_, x.data(), y.data());
}

Vector StencilMatrix::apply(const Vector& x) const {
  Vector y;
  apply(x, y);
  return y;
}

StencilMatrix StencilMatrix::transpose() const {
  StencilBuilder b(ncols_, nrows_);
  for (int r = 0; r < nrows_; ++r) {
    for (std::int32_t p = rowptr_[r]; p < rowptr_[r + 1]; ++p) {
      b.add(cols_[p], r, vals_[p]);
    }
  }
  return b.build();
}

double StencilMatrix::entry(int row, int col) const {
  for (std::int32_t p = rowptr_[row]; p < rowptr_[row + 1]; ++p) {
    if (cols_[p] == col) return vals_[p];
  }
  return 0.0;
}

Vector StencilMatrix::diagonal() const {
  Vector d(nrows_);
  for (int r = 0; r < nrows_; ++r) d[r] = entry(r, r);
  return d;
}

StencilMatrix StencilMatrix::add_scaled(const StencilMatrix& other, double alpha) const {
  if (other.nrows_ != nrows_ || other.ncols_ != ncols_) {
    throw DimensionError("StencilMatrix::add_scaled: shape mismatch");
  }
  StencilBuilder b(nrows_, ncols_);
  for (int r = 0; r < nrows_; ++r) {
    for (std::int32_t p = rowptr_[r]; p < rowptr_[r + 1]; ++p) b.add(r, cols_[p], vals_[p]);
    for (std::int32_t p = other.rowptr_[r]; p < other.rowptr_[r + 1]; ++p) {
      b.add(r, other.cols_[p], alpha * other.vals_[p]);
    }
  }
  return b.build();
}

StencilMatrix StencilMatrix::scaled(double alpha) const {
  StencilMatrix m = *this;
  kern::scale(alpha, m.vals_.data(), m.vals_.size());
  return m;
}

StencilMatrix StencilMatrix::row_scaled(const Vector& w) const {
  if (static_cast<int>(w.size()) != nrows_) {
    throw DimensionError("StencilMatrix::row_scaled: weight size mismatch");
  }
  StencilMatrix m = *this;
  for (int r = 0; r < nrows_; ++r) {
    for (std::int32_t p = m.rowptr_[r]; p < m.rowptr_[r + 1]; ++p) m.vals_[p] *= w[r];
  }
  return m;
}

bool StencilMatrix::is_symmetric(double tol) const {
  if (nrows_ != ncols_) return false;
  for (int r = 0; r < nrows_; ++r) {
    for (std::int32_t p = rowptr_[r]; p < rowptr_[r + 1]; ++p) {
      if (std::fabs(vals_[p] - entry(cols_[p], r)) > tol) return false;
    }
  }
  return true;
}

double StencilMatrix::max_abs_entry() const {
  return kern::amax(vals_.data(), vals_.size());
}

double StencilMatrix::adjointness_residual(const StencilMatrix& other) const {
  // max_{i,j} |this_{ji} + other_{ij}| over the union pattern
  double m = 0.0;
  for (int r = 0; r < nrows_; ++r) {
    for (std::int32_t p = rowptr_[r]; p < rowptr_[r + 1]; ++p) {
      m = std::max(m, std::fabs(vals_[p] + other.entry(cols_[p], r)));
    }
  }
  for (int r = 0; r < other.nrows_; ++r) {
    for (std::int32_t p = other.rowptr_[r]; p < other.rowptr_[r + 1]; ++p) {
      m = std::max(m, std::fabs(other.vals_[p] + entry(other.cols_[p], r)));
    }
  }
  return m;
}

std::vector<std::vector<double>> StencilMatrix::to_dense() const {
  std::vector<std::vector<double>> d(nrows_, std::vector<double>(ncols_, 0.0));
  for (int r = 0; r < nrows_; ++r) {
    for (std::int32_t p = rowptr_[r]; p < rowptr_[r + 1]; ++p) d[r][cols_[p]] = vals_[p];
  }
  return d;
}

}  // namespace cdlab
