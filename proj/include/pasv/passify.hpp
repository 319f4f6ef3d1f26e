#pragma once

#include "pasv/dissipation.hpp"
#include "pasv/ramp.hpp"
#include "pasv/split.hpp"
#include "pasv/state_space.hpp"

namespace pasv {

enum class PassifyMethod { shift, iterate, partfrac, minimax };

std::string to_string(PassifyMethod m);

/// Outcome of one passivation run, including the verification sweep.
struct PassivationResult {
    Realization   G;
    PassifyMethod method = PassifyMethod::shift;
    int           param = 0;   ///< k (iterate), m (partfrac) or n (minimax)
    double        nu = 0.0;    ///< |delta_minus(H)| plus safety slack
    double        alpha = 0.0; ///< guaranteed spectral gap bound
    double        achieved_delta_minus = 0.0;
    int           states = 0;             ///< pre-reduction state count of G
    int           denominator_degree = 0; ///< M of the rational approximant
    int           pole_estimate = 0;      ///< N (M + 1) upper estimate
    double        sweep_error = 0.0;      ///< max ||G + G^H - R_plus||_2 over the grid
    double        relative_error_max = 0.0;
    double        relative_error_mean = 0.0;
    bool          delta_certificate_ok = true;
    bool          sweep_certificate_ok = true;
};

inline constexpr int kDefaultVerifyPoints = 2000;

/// Log grid over [1e-4, 1e6] rad/s with extra frequencies merged in.
FrequencyGrid make_verification_grid(int points = kDefaultVerifyPoints,
                                     const std::vector<double>& extra = {});

/// G = H + (nu/2) I, the zero-iteration baseline with alpha = nu.
/// tol is the dissipation bisection tolerance; 0 selects the default
/// 1e-9 * (1 + ||H||_inf). Same for the drivers below.
PassivationResult shift_passify(const Realization& h, double tol = 0.0);

/// Iterated rational recurrence Z_k = Z_{k-1} (2 Z_{k-1} - Z)^{-1} Z_{k-1}
/// starting from Z_0 = Z + nu I; alpha = nu / 2^k. The stable half is
/// extracted once, from the final iterate.
PassivationResult passify_iterative(const Realization& h, int k, double tol = 0.0);

/// Partial-fraction assembly of the scaled zeta_{2m} approximant applied to
/// Z(s); alpha = nu / (2m).
PassivationResult passify_partfrac(const Realization& h, int m, double tol = 0.0);

/// Minimax assembly on the dissipation interval [-a, b]; alpha =
/// E_n * max(a, b).
PassivationResult passify_minimax(const Realization& h,
                                  const MinimaxTable& table = MinimaxTable::n4(),
                                  double tol = 0.0);

/// Fills achieved_delta_minus, sweep_error and the relative-error statistics;
/// certificate violations are flagged, never thrown.
void verify(const Realization& h, PassivationResult& result, const FrequencyGrid& grid);

/// N (M + 1), the pre-cancellation pole-count estimate for f(Z(s)) after the
/// stable/anti-stable projection.
int pole_estimate(int n_states, int denominator_degree);

struct ReduceReport {
    int    kept = 0;
    double discarded_sum = 0.0; ///< sum of the dropped Hankel singular values
    double grid_error = 0.0;
    bool   rolled_back = false;
};

/// Balanced truncation discarding Hankel singular values <= tol * largest.
/// If the truncation destroys passivity the original model is returned and
/// the rollback is reported.
Realization reduce(const Realization& g, double tol);
Realization reduce(const Realization& g, double tol, ReduceReport& report);

} // namespace pasv
