#pragma once

#include "pasv/state_space.hpp"

namespace pasv {

/// Additive decomposition V(s) = stable(s) + anti(s) with D allocated half
/// to each part.
struct SplitResult {
    Realization stable;              ///< all A-eigenvalues in the open left half-plane
    Realization anti;                ///< all A-eigenvalues in the open right half-plane
    RealMatrix  d_split;             ///< the D/2 block assigned to each half
    double      residual = 0.0;      ///< grid reconstruction error, relative
    double      spectrum_asymmetry = 0.0; ///< deviation of eig(A) from axis symmetry
    bool        spectrum_warning = false;
};

double default_split_tol(const Realization& v);

/// Splits V into its stable and anti-stable parts via an ordered real Schur
/// form and a Sylvester block-decoupling. Eigenvalues within tol of the
/// imaginary axis are an error.
SplitResult stable_antistable_split(const Realization& v, double tol);

/// Hurwitz-stable half X(s) of a para-Hermitian V with
/// X(iw) + X(iw)^H = V(iw); skew is added to X(infinity).
Realization stable_half_persym(const ParaHermitianRealization& v,
                               const RealMatrix& skew, double tol);

} // namespace pasv
