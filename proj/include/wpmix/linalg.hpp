#pragma once

#include <vector>

namespace wpmix {

// Row-major dense matrix sized for model dimensions (d is small here;
// no attempt at blocking or views beyond what the samplers need).
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<double> matvec(const std::vector<double>& x) const;
  void matvec(const std::vector<double>& x, std::vector<double>& out) const;
  Matrix submatrix(const std::vector<std::size_t>& rows,
                   const std::vector<std::size_t>& cols) const;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

// LU with partial pivoting plus an infinity-norm condition estimate
// (computed from the explicit inverse; fine at these dimensions).
class LuSolver {
public:
  explicit LuSolver(const Matrix& a);

  std::vector<double> solve(const std::vector<double>& b) const;
  double condition() const { return cond_; }
  bool singular() const { return singular_; }

private:
  std::size_t n_ = 0;
  std::vector<double> lu_;
  std::vector<std::size_t> piv_;
  double cond_ = 0.0;
  bool singular_ = false;
};

}  // namespace wpmix
