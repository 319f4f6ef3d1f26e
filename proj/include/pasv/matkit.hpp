#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <vector>

namespace pasv {

using RealMatrix    = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Complex       = std::complex<double>;

/// Real Schur form M = Q T Q^T with Q orthogonal and T quasi-upper-triangular
/// (1x1 and 2x2 diagonal blocks, each 2x2 block carrying a conjugate pair).
struct SchurForm {
    RealMatrix           Q;
    RealMatrix           T;
    std::vector<Complex> eigenvalues; ///< in diagonal-block order
    Eigen::Index         selected_size = 0; ///< states in the leading selected blocks
};

/// Eigenvalues of a square real matrix; conjugate pairs stay adjacent.
/// The matrix is balanced by a radix-2 diagonal similarity first.
std::vector<Complex> eigenvalues(const RealMatrix& m);

/// Osborne balancing: diagonal d of radix-2 scale factors equalizing the
/// off-diagonal row/column 1-norms of diag(d)^{-1} M diag(d). Only the first
/// scale_count diagonal entries are adjusted; the rest stay 1.
Eigen::VectorXd balancing_scales(const RealMatrix& m, Eigen::Index scale_count);

/// Ordered real Schur form: all eigenvalues with select(lambda) == true are
/// moved to the leading diagonal blocks by adjacent block swaps.
/// select must be constant on conjugate pairs.
SchurForm real_schur(const RealMatrix& m,
                     const std::function<bool(Complex)>& select = nullptr);

/// Solves A X - X B = C for X. A and B must have disjoint spectra.
RealMatrix solve_sylvester(const RealMatrix& a, const RealMatrix& b,
                           const RealMatrix& c);

double spectral_norm(const RealMatrix& m);
double spectral_norm(const ComplexMatrix& m);
double frobenius_norm(const RealMatrix& m);
double frobenius_norm(const ComplexMatrix& m);

/// True iff every eigenvalue of m has real part < -tol.
bool is_stable_spectrum(const RealMatrix& m, double tol);

} // namespace pasv
