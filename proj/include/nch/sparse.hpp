#pragma once

#include <memory>
#include <span>
#include <vector>

namespace nch {

/// Compressed sparse row matrix. Column indices are strictly increasing
/// within each row; the pattern is fixed at construction and values are
/// accumulated in place.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols, std::vector<int> row_offsets, std::vector<int> col_indices);
  SparseMatrix(int rows, int cols, std::vector<int> row_offsets, std::vector<int> col_indices,
               std::vector<double> values);

  static SparseMatrix identity(int n);
  /// Builds from (row, col, value) triplets; duplicates are summed.
  static SparseMatrix from_triplets(int rows, int cols, std::span<const int> row_idx,
                                    std::span<const int> col_idx, std::span<const double> vals);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return col_indices_.size(); }

  const std::vector<int>& row_offsets() const noexcept { return row_offsets_; }
  const std::vector<int>& col_indices() const noexcept { return col_indices_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::vector<double>& values() noexcept { return values_; }

  /// Position of (row, col) in the value array, or -1 if structurally zero.
  int find(int row, int col) const noexcept;
  /// Entry value (0 for structural zeros).
  double at(int row, int col) const noexcept;
  void add(int row, int col, double value);

  std::vector<double> multiply(std::span<const double> x) const;
  std::vector<double> row_sums() const;
  double norm_inf() const noexcept;
  double max_abs() const noexcept;
  /// max |A_ij - A_ji| over the stored pattern (square matrices only).
  double asymmetry() const;

  /// Extracts the dense block rows [r0, r0+nr) x cols [c0, c0+nc) as a
  /// sparse matrix of size nr x nc.
  SparseMatrix block(int r0, int c0, int nr, int nc) const;

  std::vector<std::vector<double>> to_dense() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> row_offsets_{0};
  std::vector<int> col_indices_;
  std::vector<double> values_;
};

/// Sparse LU factorization of a square matrix (fill-reducing column
/// ordering, partial pivoting). Immutable once constructed; concurrent
/// solve() calls are safe.
class LuFactorization {
 public:
  explicit LuFactorization(const SparseMatrix& a);
  ~LuFactorization();
  LuFactorization(LuFactorization&&) noexcept;
  LuFactorization& operator=(LuFactorization&&) noexcept;

  int size() const noexcept { return n_; }
  std::vector<double> solve(std::span<const double> b) const;

 private:
  struct Impl;
  int n_ = 0;
  std::unique_ptr<Impl> impl_;
};

LuFactorization lu_factorize(const SparseMatrix& a);
std::vector<double> lu_solve(const LuFactorization& f, std::span<const double> b);

}  // namespace nch
