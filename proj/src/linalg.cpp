#include "wpmix/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wpmix/errors.hpp"

namespace wpmix {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> Matrix::matvec(const std::vector<double>& x) const {
  std::vector<double> y(rows_);
  matvec(x, y);
  return y;
}

void Matrix::matvec(const std::vector<double>& x, std::vector<double>& out) const {
  if (x.size() != cols_) throw ConfigError("matvec: size mismatch");
  out.resize(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += a_[i * cols_ + j] * x[j];
    out[i] = s;
  }
}

Matrix Matrix::submatrix(const std::vector<std::size_t>& rows,
                         const std::vector<std::size_t>& cols) const {
  Matrix m(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      m(i, j) = (*this)(rows[i], cols[j]);
  return m;
}

LuSolver::LuSolver(const Matrix& a) {
  if (a.rows() != a.cols()) throw ConfigError("LuSolver: matrix not square");
  n_ = a.rows();
  lu_.resize(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) lu_[i * n_ + j] = a(i, j);
  piv_.resize(n_);

  double norm_a = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n_; ++j) row += std::fabs(a(i, j));
    norm_a = std::fmax(norm_a, row);
  }

  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n_; ++i)
      if (std::fabs(lu_[i * n_ + k]) > std::fabs(lu_[p * n_ + k])) p = i;
    piv_[k] = p;
    if (p != k)
      for (std::size_t j = 0; j < n_; ++j)
        std::swap(lu_[k * n_ + j], lu_[p * n_ + j]);
    const double d = lu_[k * n_ + k];
    if (d == 0.0) {
      singular_ = true;
      cond_ = std::numeric_limits<double>::infinity();
      return;
    }
    for (std::size_t i = k + 1; i < n_; ++i) {
      lu_[i * n_ + k] /= d;
      const double m = lu_[i * n_ + k];
      for (std::size_t j = k + 1; j < n_; ++j) lu_[i * n_ + j] -= m * lu_[k * n_ + j];
    }
  }

  // cond_inf(A) = |A|_inf * |A^-1|_inf via n solves against unit vectors.
  double norm_inv = 0.0;
  std::vector<double> col(n_);
  std::vector<std::vector<double>> inv_cols(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    std::fill(col.begin(), col.end(), 0.0);
    col[j] = 1.0;
    inv_cols[j] = solve(col);
  }
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n_; ++j) row += std::fabs(inv_cols[j][i]);
    norm_inv = std::fmax(norm_inv, row);
  }
  cond_ = norm_a * norm_inv;
}

std::vector<double> LuSolver::solve(const std::vector<double>& b) const {
  if (singular_) throw NumericError("LuSolver: matrix is singular");
  if (b.size() != n_) throw ConfigError("LuSolver: size mismatch");
  std::vector<double> x = b;
  for (std::size_t k = 0; k < n_; ++k) {
    if (piv_[k] != k) std::swap(x[k], x[piv_[k]]);
    for (std::size_t i = k + 1; i < n_; ++i) x[i] -= lu_[i * n_ + k] * x[k];
  }
  for (std::size_t k = n_; k-- > 0;) {
    x[k] /= lu_[k * n_ + k];
    for (std::size_t i = 0; i < k; ++i) x[i] -= lu_[i * n_ + k] * x[k];
  }
  return x;
}

}  // namespace wpmix
