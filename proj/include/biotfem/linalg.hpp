#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace biotfem {

/// Sparse matrix in compressed row storage. Construction goes through a
/// triplet list; finalization sums duplicates and sorts column indices.
class SparseMatrix {
 public:
  using Triplet = Eigen::Triplet<double>;

  SparseMatrix() = default;
  SparseMatrix(int rows, int cols, const std::vector<Triplet>& triplets);

  int rows() const { return static_cast<int>(m_.rows()); }
  int cols() const { return static_cast<int>(m_.cols()); }
  long nonzeros() const { return m_.nonZeros(); }

  const int* row_offsets() const { return m_.outerIndexPtr(); }
  const int* col_indices() const { return m_.innerIndexPtr(); }
  const double* values() const { return m_.valuePtr(); }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return m_ * x; }
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& x) const { return m_.transpose() * x; }
  double quadratic_form(const Eigen::VectorXd& x) const { return x.dot(m_ * x); }

  double coeff(int i, int j) const { return m_.coeff(i, j); }
  double max_abs() const;
  /// max |A - A^T| entry, for symmetry checks.
  double asymmetry() const;

  SparseMatrix scaled(double s) const;
  SparseMatrix plus(const SparseMatrix& other, double scale = 1.0) const;
  /// Copy with constrained rows/columns zeroed and a unit diagonal placed
  /// on constrained indices.
  SparseMatrix with_unit_constraints(const std::vector<std::uint8_t>& constrained) const;

  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(m_); }

  const Eigen::SparseMatrix<double, Eigen::RowMajor>& eigen() const { return m_; }

  /// Matrix Market coordinate format (1-based indices).
  void write_matrix_market(const std::string& path) const;

 private:
  Eigen::SparseMatrix<double, Eigen::RowMajor> m_;
};

struct SingularSystemError : std::runtime_error {
  explicit SingularSystemError(const std::string& what) : std::runtime_error(what) {}
};

struct SolveToleranceError : std::runtime_error {
  explicit SolveToleranceError(const std::string& what) : std::runtime_error(what) {}
};

/// Direct sparse LU with partial pivoting. Contract: the relative residual
/// ||Ax-b|| / ||b|| of every solve is at most 1e-11; a violation throws.
class DirectSolver {
 public:
  DirectSolver();
  ~DirectSolver();
  DirectSolver(DirectSolver&&) noexcept;
  DirectSolver& operator=(DirectSolver&&) noexcept;

  /// Throws SingularSystemError naming the pivot on a singular matrix.
  void factorize(const SparseMatrix& A);
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  double last_residual() const { return last_residual_; }

  static constexpr double residual_contract = 1e-11;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  mutable double last_residual_ = 0.0;
};

}  // namespace biotfem
