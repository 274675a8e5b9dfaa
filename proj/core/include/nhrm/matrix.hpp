#pragma once

#include <complex>
#include <vector>

namespace nhrm {

using Complex = std::complex<double>;

// Dense square complex matrix stored row-major.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t dim);

  std::size_t dim() const { return dim_; }

  Complex& at(std::size_t row, std::size_t col);
  const Complex& at(std::size_t row, std::size_t col) const;

  const std::vector<Complex>& data() const { return data_; }
  std::vector<Complex>& data() { return data_; }

 private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

// Eigenvalues of a general complex matrix (unordered). Throws
// ConvergenceError if the underlying Schur iteration fails.
std::vector<Complex> eig_complex(const ComplexMatrix& m);

// Eigenvalues of a symmetric tridiagonal complex matrix given its diagonal
// and (constant-structure) off-diagonal; off must have diag.size()-1
// entries. The matrix is already Hessenberg, which skips the reduction
// step of the dense path.
std::vector<Complex> eig_tridiag(const std::vector<Complex>& diag,
                                 const std::vector<Complex>& off);

}  // namespace nhrm
