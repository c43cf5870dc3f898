#include "weightint/matcore.hpp"

#include <sstream>

namespace weightint {

double hermiticity_deviation(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch("hermiticity check requires a square matrix, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return hermiticity_deviation(m) <= tol;
}

EigenDecomposition eigendecompose(const ComplexMatrix& h, double hbar) {
  if (h.rows() == 0) {
    throw InvalidArgument("eigendecompose: matrix must have size >= 1");
  }
  if (hbar <= 0.0) {
    throw InvalidArgument("eigendecompose: hbar must be positive, got " + std::to_string(hbar));
  }
  const double dev = hermiticity_deviation(h);
  const double scale = h.norm(); // Frobenius
  if (dev > kHermitianRelTol * scale) {
    std::ostringstream msg;
    msg << "eigendecompose: input is not Hermitian: max|h_ij - conj(h_ji)| = " << dev
        << " exceeds " << kHermitianRelTol << " * ||h||_F = " << kHermitianRelTol * scale;
    throw NonHermitianInput(msg.str());
  }

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("eigendecompose: eigensolver exceeded its iteration cap");
  }

  EigenDecomposition eig;
  eig.eigenvalues = solver.eigenvalues(); // ascending
  eig.vectors = solver.eigenvectors();
  eig.hbar = hbar;
  return eig;
}

namespace {

void check_size(const ComplexMatrix& m, const EigenDecomposition& eig, const char* op) {
  if (m.rows() != m.cols() || m.rows() != eig.size()) {
    throw DimensionMismatch(std::string(op) + ": matrix is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + " but the decomposition has size " +
                            std::to_string(eig.size()));
  }
}

} // namespace

ComplexMatrix to_eigenbasis(const ComplexMatrix& m, const EigenDecomposition& eig) {
  check_size(m, eig, "to_eigenbasis");
  return eig.vectors.adjoint() * m * eig.vectors;
}

ComplexMatrix from_eigenbasis(const ComplexMatrix& m, const EigenDecomposition& eig) {
  check_size(m, eig, "from_eigenbasis");
  return eig.vectors * m * eig.vectors.adjoint();
}

} // namespace weightint
