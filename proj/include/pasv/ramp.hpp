#pragma once

#include "pasv/matkit.hpp"

#include <array>
#include <vector>

namespace pasv {

/// Real-rational over-approximant of the ramp max(x, 0) in partial-fraction
/// form. Complex terms are stored once per conjugate pair and mean
/// Re{residue / (x - pole)}; real poles carry plain residues.
struct RampApproximant {
    struct ComplexTerm {
        Complex pole;
        Complex residue;
    };
    struct RealTerm {
        double pole;
        double residue;
    };

    double                   linear_slope = 0.0;
    double                   linear_offset = 0.0;
    std::vector<ComplexTerm> complex_terms;
    std::vector<RealTerm>    real_terms;
    double                   alpha = 0.0;      ///< guaranteed gap bound
    double                   interval_a = 0.0; ///< valid on [-a, b]
    double                   interval_b = 0.0; ///< +inf for the unbounded family

    double eval(double x) const;

    /// Denominator degree of the underlying rational function.
    int denominator_degree() const {
        return static_cast<int>(real_terms.size() + 2 * complex_terms.size());
    }

    /// nu * f(x / nu): transports a unit-scale approximant to scale nu.
    RampApproximant scaled(double nu) const;
};

/// Coefficients of the degree-n minimax approximant of sqrt(t) on [0, 1],
/// rho(t) = a0 - sum_k a_k / (t + b_k), with equioscillation error E_n.
struct MinimaxTable {
    int                 n = 0;
    std::vector<double> a; ///< a[0..n]
    std::vector<double> b; ///< b[1..n], stored from index 0
    double              e_n = 0.0;

    static const MinimaxTable& n4(); ///< built-in table for n = 4
};

/// zeta_n(x) = x (1+x)^n / ((1+x)^n - 1) for x >= -1, with the removable
/// singularity at x = 0 evaluated as 1/n. Over-approximates the ramp with
/// uniform gap at most 1/n.
double zeta(int n, double x);

/// phi_n(x) = nu * zeta_n(x / nu).
double phi(int n, double nu, double x);

/// Doubling step phi_{2n}(x) = phi_n(x)^2 / (2 phi_n(x) - x).
double phi_double(double phi_prev, double x);

/// Partial-fraction form of zeta_{2m} at unit scale; gap bound 1/(2m).
RampApproximant zeta_partial_fractions(int m);

double minimax_rho(double t, const MinimaxTable& table);

/// f(x) = (rho(x^2) + x + E_n) / 2, the minimax ramp approximant on [-1, 1].
double minimax_f(double x, const MinimaxTable& table);

struct BilinearParams {
    double tau = 0.0;
    double kappa = 0.0;
};

/// x -> x / (tau x + kappa) maps [-a, b] onto [-1, 1] with endpoints to
/// endpoints; tau x + kappa stays positive on [-a, b].
BilinearParams bilinear_params(double a, double b);

/// Partial-fraction form of (tau x + kappa) f(x / (tau x + kappa)) for the
/// minimax f; gap bound E_n * max(a, b).
RampApproximant minimax_transformed(double a, double b, const MinimaxTable& table);

/// f(x) - max(x, 0); x must lie in the approximant's valid interval.
double gap(const RampApproximant& f, double x);

} // namespace pasv
