#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "nhrm/errors.hpp"
#include "nhrm/matrix.hpp"

using nhrm::Complex;
using nhrm::ComplexMatrix;
using nhrm::eig_complex;
using nhrm::eig_tridiag;
using nhrm::testing::multiset_distance;

namespace {

ComplexMatrix seeded_matrix(std::size_t dim, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ComplexMatrix m(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      m.at(r, c) = Complex(dist(gen), dist(gen));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("eig_complex reproduces diagonal and 2x2 closed forms") {
  ComplexMatrix d(3);
  d.at(0, 0) = Complex(1.0, 0.0);
  d.at(1, 1) = Complex(-2.0, 0.5);
  d.at(2, 2) = Complex(0.25, -1.0);
  CHECK(multiset_distance(eig_complex(d),
                          {d.at(0, 0), d.at(1, 1), d.at(2, 2)}) < 1e-12);

  // [[0, i], [i, 0]] has eigenvalues +-i.
  ComplexMatrix s(2);
  s.at(0, 1) = Complex(0.0, 1.0);
  s.at(1, 0) = Complex(0.0, 1.0);
  CHECK(multiset_distance(eig_complex(s),
                          {Complex(0.0, 1.0), Complex(0.0, -1.0)}) < 1e-12);
}

TEST_CASE("eig_complex matches the quadratic formula on 2x2 blocks") {
  // [[d/2, i a/4], [i a/4, -d/2]] -> +-sqrt(d^2/4 - a^2/16), both signs of
  // the discriminant.
  const auto check_block = [](double d, double a) {
    ComplexMatrix m(2);
    m.at(0, 0) = Complex(0.5 * d, 0.0);
    m.at(1, 1) = Complex(-0.5 * d, 0.0);
    m.at(0, 1) = Complex(0.0, 0.25 * a);
    m.at(1, 0) = Complex(0.0, 0.25 * a);
    const Complex root =
        std::sqrt(Complex(0.25 * d * d - a * a / 16.0, 0.0));
    CHECK(multiset_distance(eig_complex(m), {root, -root}) < 1e-12);
  };
  check_block(1.5505461962342559, 1.4326612601831613);  // real gap
  check_block(0.5, 4.0);                                // imaginary gap
}

TEST_CASE("eig_complex of a Hermitian matrix is real") {
  ComplexMatrix base = seeded_matrix(5, 42u);
  ComplexMatrix h(5);
  for (std::size_t r = 0; r < 5; ++r) {
    for (std::size_t c = 0; c < 5; ++c) {
      h.at(r, c) = 0.5 * (base.at(r, c) + std::conj(base.at(c, r)));
    }
  }
  for (const Complex& l : eig_complex(h)) {
    CHECK(std::abs(l.imag()) < 1e-10);
  }
}

TEST_CASE("eig_complex is invariant under permutation similarity") {
  const std::size_t dim = 6;
  const ComplexMatrix m = seeded_matrix(dim, 7u);
  const std::vector<std::size_t> perm{3, 0, 5, 1, 4, 2};
  ComplexMatrix pm(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      pm.at(perm[r], perm[c]) = m.at(r, c);
    }
  }
  CHECK(multiset_distance(eig_complex(m), eig_complex(pm)) < 1e-9);
}

TEST_CASE("eig_tridiag agrees with the dense path") {
  const std::size_t dim = 17;
  std::vector<Complex> diag(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const double m = static_cast<double>(k) - 8.0;
    diag[k] = Complex((static_cast<int>(k) % 2 == 0 ? 1.25 : -1.25) + m, 0.0);
  }
  const std::vector<Complex> off(dim - 1, Complex(0.0, 0.25));

  ComplexMatrix dense(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    dense.at(k, k) = diag[k];
    if (k + 1 < dim) {
      dense.at(k, k + 1) = off[k];
      dense.at(k + 1, k) = off[k];
    }
  }
  CHECK(multiset_distance(eig_tridiag(diag, off), eig_complex(dense)) < 1e-10);
}

TEST_CASE("matrix shape violations are rejected") {
  CHECK_THROWS_AS(ComplexMatrix(0), nhrm::ShapeError);
  ComplexMatrix m(2);
  CHECK_THROWS_AS(m.at(2, 0), nhrm::ShapeError);
  CHECK_THROWS_AS(m.at(0, 2), nhrm::ShapeError);
  CHECK_THROWS_AS(eig_tridiag({}, {}), nhrm::ShapeError);
  CHECK_THROWS_AS(
      eig_tridiag({Complex(1.0, 0.0), Complex(2.0, 0.0)}, {}),
      nhrm::ShapeError);
}
