#include "pasv/dissipation.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pasv {

namespace {

constexpr int kMaxBisectionSteps = 200;

void require_hurwitz(const Realization& r, const char* who) {
    if (!is_hurwitz(r, default_hurwitz_tol(r))) {
        std::ostringstream os;
        os << who << ": A must be Hurwitz stable";
        throw std::invalid_argument(os.str());
    }
}

Eigen::VectorXd symmetric_part_eigs(const RealMatrix& d) {
    RealMatrix s = d + d.transpose();
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(s);
    return es.eigenvalues();
}

// Axis test: |Re lambda| against a band relative to the eigenvalue
// magnitude. A band proportional to ||N|| misfires when the bisection
// endpoint makes (delta I - D - D^T) nearly singular and ||N|| diverges;
// eigenvalues() balances internally, which keeps absolute eigenvalue errors
// small even then.
bool has_imaginary_eigenvalue(const RealMatrix& n, double band_scale) {
    for (const auto& lam : eigenvalues(n))
        if (std::abs(lam.real()) <= band_scale * (1.0 + std::abs(lam))) return true;
    return false;
}

// H(-s)^T realization, used to assemble the singular-value test system.
Realization neg_transpose(const Realization& r) {
    return Realization(-r.A.transpose(), r.C.transpose(), -r.B.transpose(),
                       r.D.transpose());
}

// A-matrix whose imaginary eigenvalues mark sigma_max(H(iw)) = gamma.
RealMatrix gain_test_matrix(const Realization& r, double gamma) {
    Realization phi = add_const(scale(multiply(neg_transpose(r), r), -1.0),
                                gamma * gamma *
                                    RealMatrix::Identity(r.ports(), r.ports()));
    return inverse(phi).A;
}

bool gain_exceeded(const Realization& r, double gamma) {
    for (int attempt = 0;; ++attempt) {
        try {
            return has_imaginary_eigenvalue(gain_test_matrix(r, gamma), 1e-8);
        } catch (const std::runtime_error&) {
            if (attempt >= 3) throw;
            gamma *= 1.0 + 1e-9;
            gamma += 1e-300;
        }
    }
}

} // namespace

std::string to_string(Classification c) {
    switch (c) {
        case Classification::passive: return "passive";
        case Classification::non_passive: return "non-passive";
        case Classification::anti_passive: return "anti-passive";
        case Classification::passifiable: return "non-passive, passifiable";
    }
    return "unknown";
}

RealMatrix hamiltonian(const Realization& r, double delta) {
    const Eigen::Index n = r.states(), p = r.ports();
    RealMatrix s = delta * RealMatrix::Identity(p, p) - r.D - r.D.transpose();
    Eigen::VectorXd ev = symmetric_part_eigs(r.D);
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (std::abs(delta - ev(i)) <= 1e-12 * (1.0 + std::abs(ev(i))))
            throw std::invalid_argument(
                "hamiltonian: delta coincides with an eigenvalue of D + D^T");

    RealMatrix m = RealMatrix::Zero(2 * n, 2 * n);
    m.topLeftCorner(n, n)     = r.A;
    m.bottomRightCorner(n, n) = -r.A.transpose();
    RealMatrix left(2 * n, p);
    left.topRows(n)    = r.B;
    left.bottomRows(n) = -r.C.transpose();
    RealMatrix right(p, 2 * n);
    right.leftCols(n)  = r.C;
    right.rightCols(n) = r.B.transpose();
    m += left * s.inverse() * right;
    return m;
}

double default_dissipation_tol(const Realization& r) {
    return 1e-8 * (1.0 + hinf_norm(r, 1e-6));
}

double hinf_norm(const Realization& r_in, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("hinf_norm: tol must be positive");
    require_hurwitz(r_in, "hinf_norm");
    const double sigma_d = spectral_norm(r_in.D);
    if (r_in.states() == 0) return sigma_d;
    const Realization r = prescale(r_in);

    double lo = sigma_d;
    for (int i = -24; i <= 32; ++i) {
        const double w = std::pow(10.0, 0.25 * i);
        lo = std::max(lo, spectral_norm(eval(r, Complex(0.0, w))));
    }
    lo = std::max(lo, spectral_norm(eval(r, Complex(0.0, 0.0))));
    if (lo == 0.0) return 0.0;
    lo = std::max(lo, sigma_d * (1.0 + 1e-9));

    double hi = 2.0 * lo;
    int    grow = 0;
    while (gain_exceeded(r, hi)) {
        hi *= 2.0;
        if (++grow > 60) throw std::runtime_error("hinf_norm: upper bound search diverged");
    }

    int steps = 0;
    while (hi - lo > tol * lo && steps++ < kMaxBisectionSteps) {
        const double mid = 0.5 * (lo + hi);
        if (gain_exceeded(r, mid))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

DissipationExtremum min_dissipation_detailed(const Realization& r_in, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("min_dissipation: tol must be positive");
    require_hurwitz(r_in, "min_dissipation");
    const Realization r = prescale(r_in);

    const Eigen::VectorXd dd_eigs = symmetric_part_eigs(r.D);
    const double          dd_min  = dd_eigs.minCoeff();

    DissipationExtremum out;
    if (r.states() == 0) {
        out.value = out.bracket_low = out.bracket_high = dd_min;
        return out;
    }

    const double hinf = hinf_norm(r, 1e-6);
    double       lo   = -2.0 * hinf * (1.0 + 1e-4) - 10.0 * tol - 1e-9;
    double       hi   = dd_min;

    // Test whether delta is above the minimum dissipation; midpoints hitting
    // the D + D^T spectrum are nudged by tol, three attempts.
    auto above_minimum = [&](double delta) {
        for (int attempt = 0;; ++attempt) {
            try {
                return has_imaginary_eigenvalue(hamiltonian(r, delta), 1e-8);
            } catch (const std::invalid_argument&) {
                if (attempt >= 3)
                    throw std::runtime_error(
                        "min_dissipation: bisection point pinned to the D + D^T spectrum");
                delta -= tol;
            }
        }
    };

    int steps = 0;
    while (hi - lo > tol && steps < kMaxBisectionSteps) {
        const double mid = 0.5 * (lo + hi);
        if (above_minimum(mid))
            hi = mid;
        else
            lo = mid;
        ++steps;
    }

    out.value        = 0.5 * (lo + hi);
    out.bracket_low  = lo;
    out.bracket_high = hi;
    out.iterations   = steps;

    // Frequencies where eig(R(w)) crosses a level just above the minimum.
    const double probe = hi + 10.0 * tol;
    if (probe < dd_min - 10.0 * tol) {
        try {
            RealMatrix   n    = hamiltonian(r, probe);
            const double band = 1e-6 * (1.0 + spectral_norm(n));
            for (const auto& lam : eigenvalues(n))
                if (std::abs(lam.real()) <= band && lam.imag() >= 0.0)
                    out.critical_omegas.push_back(lam.imag());
            std::sort(out.critical_omegas.begin(), out.critical_omegas.end());
        } catch (const std::invalid_argument&) {
            // probe hit the D + D^T spectrum; no critical frequency reported
        }
    }
    return out;
}

double min_dissipation(const Realization& r, double tol) {
    return min_dissipation_detailed(r, tol).value;
}

double max_dissipation(const Realization& r, double tol) {
    return -min_dissipation(scale(r, -1.0), tol);
}

DissipationReport classify(const Realization& r, double tol) {
    require_hurwitz(r, "classify");
    DissipationExtremum lo = min_dissipation_detailed(r, tol);

    DissipationReport rep;
    rep.delta_minus          = lo.value;
    rep.delta_plus           = max_dissipation(r, tol);
    rep.bracket_low          = lo.bracket_low;
    rep.bracket_high         = lo.bracket_high;
    rep.bisection_iterations = lo.iterations;
    rep.tolerance            = tol;

    if (rep.delta_minus >= -tol)
        rep.classification = Classification::passive;
    else if (rep.delta_plus <= tol)
        rep.classification = Classification::anti_passive;
    else
        rep.classification = Classification::passifiable;
    return rep;
}

} // namespace pasv
