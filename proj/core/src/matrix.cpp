#include "nhrm/matrix.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "nhrm/errors.hpp"

namespace nhrm {
namespace {

using EigenMat =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::vector<Complex> schur_eigenvalues(const EigenMat& m) {
  Eigen::ComplexSchur<EigenMat> schur;
  schur.compute(m, /*computeU=*/false);
  if (schur.info() != Eigen::Success) {
    throw ConvergenceError("eig_complex: Schur iteration did not converge");
  }
  const auto& t = schur.matrixT();
  std::vector<Complex> out(static_cast<std::size_t>(t.rows()));
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    out[static_cast<std::size_t>(i)] = t(i, i);
  }
  return out;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw ShapeError("ComplexMatrix: dim must be >= 1");
  data_.assign(dim * dim, Complex(0.0, 0.0));
}

Complex& ComplexMatrix::at(std::size_t row, std::size_t col) {
  if (row >= dim_ || col >= dim_) {
    throw ShapeError("ComplexMatrix::at: index out of range");
  }
  return data_[row * dim_ + col];
}

const Complex& ComplexMatrix::at(std::size_t row, std::size_t col) const {
  if (row >= dim_ || col >= dim_) {
    throw ShapeError("ComplexMatrix::at: index out of range");
  }
  return data_[row * dim_ + col];
}

std::vector<Complex> eig_complex(const ComplexMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  EigenMat em(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      em(i, j) = m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  return schur_eigenvalues(em);
}

std::vector<Complex> eig_tridiag(const std::vector<Complex>& diag,
                                 const std::vector<Complex>& off) {
  if (diag.empty()) throw ShapeError("eig_tridiag: empty diagonal");
  if (off.size() + 1 != diag.size()) {
    throw ShapeError("eig_tridiag: off-diagonal must have dim-1 entries");
  }
  const auto n = static_cast<Eigen::Index>(diag.size());
  EigenMat h = EigenMat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    h(i, i) = diag[static_cast<std::size_t>(i)];
    if (i + 1 < n) {
      h(i, i + 1) = off[static_cast<std::size_t>(i)];
      h(i + 1, i) = off[static_cast<std::size_t>(i)];
    }
  }
  // A tridiagonal matrix is already upper Hessenberg, so feed it straight to
  // the QR iteration.
  Eigen::ComplexSchur<EigenMat> schur;
  schur.computeFromHessenberg(h, h, /*computeU=*/false);
  if (schur.info() != Eigen::Success) {
    throw ConvergenceError("eig_tridiag: Schur iteration did not converge");
  }
  const auto& t = schur.matrixT();
  std::vector<Complex> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = t(i, i);
  }
  return out;
}

}  // namespace nhrm
