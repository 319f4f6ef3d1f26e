#pragma once

#include "pasv/matkit.hpp"

#include <vector>

namespace pasv {

/// Real state-space realization of the p x p transfer function
/// H(s) = C (sI - A)^{-1} B + D.
struct Realization {
    RealMatrix A; ///< n x n state map
    RealMatrix B; ///< n x p
    RealMatrix C; ///< p x n
    RealMatrix D; ///< p x p port map

    Realization() = default;
    Realization(RealMatrix a, RealMatrix b, RealMatrix c, RealMatrix d);

    Eigen::Index states() const { return A.rows(); }
    Eigen::Index ports() const { return D.rows(); }

    /// p x p identity gain with no states.
    static Realization constant(const RealMatrix& d);
};

/// H(iw) evaluation point set shared by sweeps, verification and CSV export.
struct FrequencyGrid {
    std::vector<double> omega;
    bool                log_spaced = true;

    static FrequencyGrid log_spaced_grid(double wmin, double wmax, int points);
    static FrequencyGrid lin_spaced_grid(double wmin, double wmax, int points);

    void insert(double w); ///< keeps the grid sorted and unique
};

ComplexMatrix eval(const Realization& r, Complex s);

/// SISO transfer function from descending-power coefficient lists, realized
/// in controllable companion form.
Realization from_tf(const std::vector<double>& num, const std::vector<double>& den);

struct RationalEntry {
    std::vector<double> num;
    std::vector<double> den;
};

/// p x p transfer-function matrix built entry-wise; no cross-entry pole sharing.
Realization from_rational_matrix(const std::vector<std::vector<RationalEntry>>& entries);

Realization add(const Realization& r1, const Realization& r2);
Realization scale(const Realization& r, double c);
Realization add_const(const Realization& r, const RealMatrix& k);
Realization multiply(const Realization& r1, const Realization& r2);
Realization inverse(const Realization& r);

/// State-coordinate change x -> T^{-1} x; transfer function is unchanged.
Realization similarity(const Realization& r, const RealMatrix& t);

/// Diagonal radix-2 state rescaling that balances [[A, B], [C, 0]]; the
/// transfer function is unchanged while eigenvalue and solve conditioning
/// improve for badly scaled (e.g. companion-form) realizations.
Realization prescale(const Realization& r);

bool is_hurwitz(const Realization& r, double tol);
double default_hurwitz_tol(const Realization& r);

/// Z(s) = H(s) + H(-s)^T with 2n states; Z(iw) = H(iw) + H(iw)^H.
struct ParaHermitianRealization {
    Realization z;
    RealMatrix  source_d; ///< D of the source H, kept for skew restoration

    /// Tags a composed realization as para-Hermitian after checking
    /// Z(iw) = Z(iw)^H on a few sample frequencies.
    static ParaHermitianRealization wrap(Realization z, RealMatrix source_d);
};

ParaHermitianRealization para_hermitian(const Realization& h);

/// Real 2n-state realization of the real-rational transfer function
/// (eta (H(s) - xi I)^{-1} + conj(eta) (H(s) - conj(xi) I)^{-1}) / 2,
/// i.e. the term Re{eta / (x - xi)} evaluated on H. Built by stacking the
/// real and imaginary parts of the complex-coefficient state equations.
Realization real_part_shifted_inverse(const Realization& h, Complex xi, Complex eta);

} // namespace pasv
