#pragma once

#include "pasv/state_space.hpp"

#include <string>
#include <vector>

namespace pasv {

enum class Classification { passive, non_passive, anti_passive, passifiable };

std::string to_string(Classification c);

/// Dissipation analysis of R(w) = H(iw) + H(iw)^H.
struct DissipationReport {
    double         delta_minus = 0.0;
    double         delta_plus = 0.0;
    double         bracket_low = 0.0;  ///< final bisection bracket for delta_minus
    double         bracket_high = 0.0;
    int            bisection_iterations = 0;
    double         tolerance = 0.0;
    Classification classification = Classification::passive;
};

/// Detailed bisection outcome for one extremum.
struct DissipationExtremum {
    double              value = 0.0;       ///< midpoint of the final bracket
    double              bracket_low = 0.0; ///< certified outer bound
    double              bracket_high = 0.0;
    int                 iterations = 0;
    std::vector<double> critical_omegas;   ///< frequencies where the extremum is approached
};

/// One-parameter Hamiltonian matrix whose purely imaginary eigenvalues flag
/// level crossings of eig(R(w)) through delta:
/// N = blkdiag(A, -A^T) + [B; -C^T] (delta I - D - D^T)^{-1} [C, B^T].
RealMatrix hamiltonian(const Realization& r, double delta);

/// Default bisection tolerance, 1e-8 * (1 + ||H||_inf).
double default_dissipation_tol(const Realization& r);

double min_dissipation(const Realization& r, double tol);
double max_dissipation(const Realization& r, double tol);

DissipationExtremum min_dissipation_detailed(const Realization& r, double tol);

/// ||H||_inf within relative tolerance tol, by gamma-bisection on a
/// Hamiltonian imaginary-eigenvalue test.
double hinf_norm(const Realization& r, double tol);

DissipationReport classify(const Realization& r, double tol);

} // namespace pasv
