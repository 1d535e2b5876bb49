#include "nch/sparse.hpp"


#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "nch/errors.hpp"

extern "C" {
#include <klu.h>
}

namespace nch {

SparseMatrix::SparseMatrix(int rows, int cols, std::vector<int> row_offsets,
                           std::vector<int> col_indices)
    : SparseMatrix(rows, cols, std::move(row_offsets), col_indices,
                   std::vector<double>(col_indices.size(), 0.0)) {}

SparseMatrix::SparseMatrix(int rows, int cols, std::vector<int> row_offsets,
                           std::vector<int> col_indices, std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
  if (row_offsets_.size() != static_cast<std::size_t>(rows_) + 1 ||
      static_cast<std::size_t>(row_offsets_.back()) != col_indices_.size() ||
      values_.size() != col_indices_.size())
    throw std::invalid_argument("inconsistent CSR arrays");
  for (int r = 0; r < rows_; ++r) {
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      if (col_indices_[k] < 0 || col_indices_[k] >= cols_)
        throw std::invalid_argument("CSR column index out of range");
      if (k > row_offsets_[r] && col_indices_[k] <= col_indices_[k - 1])
        throw std::invalid_argument("CSR column indices must be strictly increasing");
    }
  }
}

SparseMatrix SparseMatrix::identity(int n) {
  std::vector<int> offsets(n + 1), cols(n);
  std::iota(offsets.begin(), offsets.end(), 0);
  std::iota(cols.begin(), cols.end(), 0);
  return SparseMatrix(n, n, std::move(offsets), std::move(cols), std::vector<double>(n, 1.0));
}

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::span<const int> row_idx,
                                         std::span<const int> col_idx,
                                         std::span<const double> vals) {
  if (row_idx.size() != col_idx.size() || row_idx.size() != vals.size())
    throw std::invalid_argument("triplet arrays differ in length");
  std::vector<std::size_t> order(row_idx.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return row_idx[a] != row_idx[b] ? row_idx[a] < row_idx[b] : col_idx[a] < col_idx[b];
  });
  std::vector<int> offsets(rows + 1, 0), out_cols;
  std::vector<double> out_vals;
  int last_r = -1, last_c = -1;
  for (std::size_t k : order) {
    const int r = row_idx[k], c = col_idx[k];
    if (r < 0 || r >= rows || c < 0 || c >= cols)
      throw std::invalid_argument("triplet index out of range");
    if (r == last_r && c == last_c) {
      out_vals.back() += vals[k];
      continue;
    }
    out_cols.push_back(c);
    out_vals.push_back(vals[k]);
    ++offsets[r + 1];
    last_r = r;
    last_c = c;
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  return SparseMatrix(rows, cols, std::move(offsets), std::move(out_cols), std::move(out_vals));
}

int SparseMatrix::find(int row, int col) const noexcept {
  if (row < 0 || row >= rows_) return -1;
  const auto first = col_indices_.begin() + row_offsets_[row];
  const auto last = col_indices_.begin() + row_offsets_[row + 1];
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return -1;
  return static_cast<int>(it - col_indices_.begin());
}

double SparseMatrix::at(int row, int col) const noexcept {
  const int k = find(row, col);
  return k < 0 ? 0.0 : values_[k];
}

void SparseMatrix::add(int row, int col, double value) {
  const int k = find(row, col);
  if (k < 0)
    throw std::out_of_range("entry (" + std::to_string(row) + ", " + std::to_string(col) +
                            ") not in sparsity pattern");
  values_[k] += value;
}

std::vector<double> SparseMatrix::multiply(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(cols_))
    throw std::invalid_argument("matrix-vector size mismatch");
  std::vector<double> y(rows_, 0.0);
  for (int r = 0; r < rows_; ++r) {
    double acc = 0.0;
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) acc += values_[k] * x[col_indices_[k]];
    y[r] = acc;
  }
  return y;
}

std::vector<double> SparseMatrix::row_sums() const {
  std::vector<double> s(rows_, 0.0);
  for (int r = 0; r < rows_; ++r)
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) s[r] += values_[k];
  return s;
}

double SparseMatrix::norm_inf() const noexcept {
  double best = 0.0;
  for (int r = 0; r < rows_; ++r) {
    double acc = 0.0;
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) acc += std::abs(values_[k]);
    best = std::max(best, acc);
  }
  return best;
}

double SparseMatrix::max_abs() const noexcept {
  double best = 0.0;
  for (double v : values_) best = std::max(best, std::abs(v));
  return best;
}

double SparseMatrix::asymmetry() const {
  if (rows_ != cols_) throw std::invalid_argument("asymmetry of a non-square matrix");
  double worst = 0.0;
  for (int r = 0; r < rows_; ++r)
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k)
      worst = std::max(worst, std::abs(values_[k] - at(col_indices_[k], r)));
  return worst;
}

SparseMatrix SparseMatrix::block(int r0, int c0, int nr, int nc) const {
  std::vector<int> offsets(nr + 1, 0), cols;
  std::vector<double> vals;
  for (int r = 0; r < nr; ++r) {
    const int src = r0 + r;
    for (int k = row_offsets_[src]; k < row_offsets_[src + 1]; ++k) {
      const int c = col_indices_[k];
      if (c >= c0 && c < c0 + nc) {
        cols.push_back(c - c0);
        vals.push_back(values_[k]);
      }
    }
    offsets[r + 1] = static_cast<int>(cols.size());
  }
  return SparseMatrix(nr, nc, std::move(offsets), std::move(cols), std::move(vals));
}

std::vector<std::vector<double>> SparseMatrix::to_dense() const {
  std::vector<std::vector<double>> d(rows_, std::vector<double>(cols_, 0.0));
  for (int r = 0; r < rows_; ++r)
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) d[r][col_indices_[k]] = values_[k];
  return d;
}

struct LuFactorization::Impl {
  klu_common common{};
  klu_symbolic* symbolic = nullptr;
  klu_numeric* numeric = nullptr;
  std::vector<int> offsets;
  std::vector<int> indices;

  ~Impl() {
    if (numeric) klu_free_numeric(&numeric, &common);
    if (symbolic) klu_free_symbolic(&symbolic, &common);
  }
};

// The CSR arrays of A are the CSC arrays of A^T, so KLU factors A^T and solves use klu_tsolve.
LuFactorization::LuFactorization(const SparseMatrix& a) : n_(a.rows()), impl_(std::make_unique<Impl>()) {
  if (a.rows() != a.cols()) throw std::invalid_argument("LU needs a square matrix");
  Impl& f = *impl_;
  klu_defaults(&f.common);
  f.common.btf = 0;
  if (n_ == 0) return;
  f.offsets = a.row_offsets();
  f.indices = a.col_indices();
  f.symbolic = klu_analyze(n_, f.offsets.data(), f.indices.data(), &f.common);
  if (!f.symbolic) throw SingularMatrix(-1, "symbolic analysis failed");
  f.numeric = klu_factor(f.offsets.data(), f.indices.data(), const_cast<double*>(a.values().data()),
                         f.symbolic, &f.common);
  if (!f.numeric || f.common.status == KLU_SINGULAR) {
    const int row = f.common.singular_col < n_ ? static_cast<int>(f.common.singular_col) : -1;
    throw SingularMatrix(row, "zero pivot in LU factorization");
  }
  if (f.common.status != KLU_OK) throw SingularMatrix(-1, "LU factorization failed");
}

LuFactorization::~LuFactorization() = default;
LuFactorization::LuFactorization(LuFactorization&&) noexcept = default;
LuFactorization& LuFactorization::operator=(LuFactorization&&) noexcept = default;

std::vector<double> LuFactorization::solve(std::span<const double> b) const {
  if (b.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("rhs size mismatch");
  std::vector<double> x(b.begin(), b.end());
  if (n_ == 0) return x;
  if (!klu_tsolve(impl_->symbolic, impl_->numeric, n_, 1, x.data(), &impl_->common))
    throw SingularMatrix(-1, "triangular solve failed");
  for (double v : x)
    if (!std::isfinite(v)) throw SingularMatrix(-1, "non-finite solution");
  return x;
}

LuFactorization lu_factorize(const SparseMatrix& a) { return LuFactorization(a); }

std::vector<double> lu_solve(const LuFactorization& f, std::span<const double> b) { return f.solve(b); }

}  // namespace nch
