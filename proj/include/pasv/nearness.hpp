#pragma once

#include "pasv/state_space.hpp"

namespace pasv {

/// Nearest positive-semidefinite projection of a Hermitian matrix, optimal in
/// both the Frobenius and spectral norms.
struct PsdProjection {
    ComplexMatrix input;
    ComplexMatrix projected;
    double        frobenius_distance = 0.0;
    double        spectral_distance = 0.0;
};

/// Eigenvalue clamping U max(Lambda, 0) U^H. The input is symmetrized when
/// its deviation from Hermitian is below 1e-8 * ||M||_2, else this throws.
PsdProjection nearest_psd(const ComplexMatrix& m);

/// Pointwise projection of R(w) = H(iw) + H(iw)^H.
PsdProjection r_plus(const Realization& h, double omega);

} // namespace pasv
