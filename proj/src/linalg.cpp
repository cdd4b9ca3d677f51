#include "biotfem/linalg.hpp"

#include <Eigen/SparseLU>
#include <cstdio>
#include <fstream>

namespace biotfem {

SparseMatrix::SparseMatrix(int rows, int cols, const std::vector<Triplet>& triplets)
    : m_(rows, cols) {
  m_.setFromTriplets(triplets.begin(), triplets.end());
  m_.makeCompressed();
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (long i = 0; i < m_.nonZeros(); ++i) m = std::max(m, std::abs(m_.valuePtr()[i]));
  return m;
}

double SparseMatrix::asymmetry() const {
  Eigen::SparseMatrix<double, Eigen::RowMajor> d = m_ - Eigen::SparseMatrix<double, Eigen::RowMajor>(m_.transpose());
  double m = 0.0;
  for (long i = 0; i < d.nonZeros(); ++i) m = std::max(m, std::abs(d.valuePtr()[i]));
  return m;
}

SparseMatrix SparseMatrix::scaled(double s) const {
  SparseMatrix out;
  out.m_ = m_ * s;
  out.m_.makeCompressed();
  return out;
}

SparseMatrix SparseMatrix::plus(const SparseMatrix& other, double scale) const {
  SparseMatrix out;
  out.m_ = m_ + scale * other.m_;
  out.m_.makeCompressed();
  return out;
}

SparseMatrix SparseMatrix::with_unit_constraints(const std::vector<std::uint8_t>& constrained) const {
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(m_.nonZeros()) + constrained.size());
  for (int r = 0; r < m_.outerSize(); ++r)
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(m_, r); it; ++it) {
      if (constrained[it.row()] || constrained[it.col()]) continue;
      trips.emplace_back(it.row(), it.col(), it.value());
    }
  for (int i = 0; i < rows(); ++i)
    if (constrained[i]) trips.emplace_back(i, i, 1.0);
  return SparseMatrix(rows(), cols(), trips);
}

void SparseMatrix::write_matrix_market(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_matrix_market: cannot open " + path);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << rows() << " " << cols() << " " << nonzeros() << "\n";
  char buf[64];
  for (int r = 0; r < m_.outerSize(); ++r)
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(m_, r); it; ++it) {
      std::snprintf(buf, sizeof buf, "%d %d %.16e\n", static_cast<int>(it.row()) + 1,
                    static_cast<int>(it.col()) + 1, it.value());
      out << buf;
    }
}

struct DirectSolver::Impl {
  Eigen::SparseMatrix<double> A;  // column-major copy for the factorization
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  bool ready = false;
};

DirectSolver::DirectSolver() : impl_(std::make_unique<Impl>()) {}
DirectSolver::~DirectSolver() = default;
DirectSolver::DirectSolver(DirectSolver&&) noexcept = default;
DirectSolver& DirectSolver::operator=(DirectSolver&&) noexcept = default;

void DirectSolver::factorize(const SparseMatrix& A) {
  impl_->A = A.eigen();
  impl_->A.makeCompressed();
  impl_->lu.compute(impl_->A);
  if (impl_->lu.info() != Eigen::Success)
    throw SingularSystemError("DirectSolver: factorization failed (" +
                              impl_->lu.lastErrorMessage() +
                              "); check the boundary configuration");
  impl_->ready = true;
}

Eigen::VectorXd DirectSolver::solve(const Eigen::VectorXd& rhs) const {
  if (!impl_->ready) throw std::logic_error("DirectSolver: solve before factorize");
  Eigen::VectorXd x = impl_->lu.solve(rhs);
  const double rhs_norm = rhs.norm();
  const double res = (impl_->A * x - rhs).norm();
  last_residual_ = rhs_norm > 0.0 ? res / rhs_norm : res;
  if (last_residual_ > residual_contract)
    throw SolveToleranceError("DirectSolver: relative residual " + std::to_string(last_residual_) +
                              " exceeds contract");
  return x;
}

}  // namespace biotfem
