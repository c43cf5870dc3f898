#pragma once

#include <Eigen/Dense>
#include <complex>

#include "weightint/errors.hpp"

namespace weightint {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative Hermiticity tolerance (against the Frobenius norm) used by
/// eigendecompose and the evolution front ends.
inline constexpr double kHermitianRelTol = 1e-10;

/// max_ij |m(i,j) - conj(m(j,i))|
double hermiticity_deviation(const ComplexMatrix& m);

/// Hermiticity predicate with an absolute tolerance on the max deviation.
bool is_hermitian(const ComplexMatrix& m, double tol);

/// Spectral data of a Hermitian matrix: ascending eigenvalues and a unitary
/// matrix whose columns are the matching eigenvectors. hbar is carried along
/// because every phase downstream is exp(-i*lambda*t/hbar).
struct EigenDecomposition {
  RealVector eigenvalues;
  ComplexMatrix vectors;
  double hbar = 1.0;

  Eigen::Index size() const { return eigenvalues.size(); }
};

/// Diagonalize a Hermitian matrix.
///
/// The input must be Hermitian within kHermitianRelTol relative to its
/// Frobenius norm, otherwise NonHermitianInput is thrown. Eigenvalues come
/// out sorted non-decreasing; ties keep the solver's deterministic order, so
/// a fixed input always yields the same decomposition.
EigenDecomposition eigendecompose(const ComplexMatrix& h, double hbar = 1.0);

/// V^dagger * m * V: express an operator in the eigenbasis of eig.
ComplexMatrix to_eigenbasis(const ComplexMatrix& m, const EigenDecomposition& eig);

/// V * m * V^dagger: inverse of to_eigenbasis.
ComplexMatrix from_eigenbasis(const ComplexMatrix& m, const EigenDecomposition& eig);

} // namespace weightint
