#include "pasv/split.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace pasv {

namespace {

RealMatrix random_orthogonal(Eigen::Index n, unsigned seed) {
    std::mt19937               rng(seed);
    std::normal_distribution<> gauss(0.0, 1.0);
    RealMatrix                 g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) g(i, j) = gauss(rng);
    Eigen::HouseholderQR<RealMatrix> qr(g);
    return qr.householderQ();
}

SplitResult split_once(const Realization& v_in, double tol) {
    const Realization  v = prescale(v_in);
    const Eigen::Index n = v.states();
    const auto         eigs = eigenvalues(v.A);
    for (const auto& lam : eigs) {
        if (std::abs(lam.real()) <= tol) {
            std::ostringstream os;
            os << "stable_antistable_split: eigenvalue (" << lam.real() << ", "
               << lam.imag() << ") lies within " << tol << " of the imaginary axis";
            throw std::invalid_argument(os.str());
        }
    }

    // per-symmetric inputs have an axis-symmetric spectrum; measure the drift
    double asym = 0.0;
    for (const auto& lam : eigs) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& mu : eigs) best = std::min(best, std::abs(lam + std::conj(mu)));
        asym = std::max(asym, best);
    }

    SchurForm schur = real_schur(v.A, [](Complex lam) { return lam.real() < 0.0; });
    const Eigen::Index ns = schur.selected_size;
    const Eigen::Index na = n - ns;

    RealMatrix bt = schur.Q.transpose() * v.B;
    RealMatrix ct = v.C * schur.Q;

    RealMatrix b1 = bt.topRows(ns), b2 = bt.bottomRows(na);
    RealMatrix c1 = ct.leftCols(ns), c2 = ct.rightCols(na);

    if (ns > 0 && na > 0) {
        RealMatrix x = solve_sylvester(schur.T.topLeftCorner(ns, ns),
                                       schur.T.bottomRightCorner(na, na),
                                       -schur.T.topRightCorner(ns, na));
        b1 -= x * b2;
        c2 += c1 * x;
    }

    SplitResult out;
    out.d_split = 0.5 * v.D;
    out.stable  = Realization(schur.T.topLeftCorner(ns, ns), b1, c1, out.d_split);
    out.anti    = Realization(schur.T.bottomRightCorner(na, na), b2, c2, out.d_split);
    out.spectrum_asymmetry = asym;
    out.spectrum_warning   = asym > 1e-7 * (1.0 + spectral_norm(v.A));

    FrequencyGrid grid = FrequencyGrid::log_spaced_grid(1e-4, 1e6, 24);
    double        rel = 0.0;
    for (double w : grid.omega) {
        const Complex s(0.0, w);
        ComplexMatrix ref = eval(v, s);
        ComplexMatrix rec = eval(out.stable, s) + eval(out.anti, s);
        rel = std::max(rel, (rec - ref).norm() / (1.0 + ref.norm()));
    }
    out.residual = rel;
    return out;
}

} // namespace

double default_split_tol(const Realization& v) {
    return 1e-7 * (1.0 + spectral_norm(v.A));
}

SplitResult stable_antistable_split(const Realization& v, double tol) {
    try {
        return split_once(v, tol);
    } catch (const std::runtime_error&) {
        // Schur reordering can stall on tight clusters; retry once in a
        // randomly rotated state basis.
        Realization rotated = similarity(v, random_orthogonal(v.states(), 0x5eed));
        return split_once(rotated, tol);
    }
}

Realization stable_half_persym(const ParaHermitianRealization& v,
                               const RealMatrix& skew, double tol) {
    const Eigen::Index p = v.z.ports();
    if (skew.rows() != p || skew.cols() != p)
        throw std::invalid_argument("stable_half_persym: skew must be p x p");
    if ((skew + skew.transpose()).norm() > 1e-12 * (1.0 + skew.norm()))
        throw std::invalid_argument("stable_half_persym: E must be skew-symmetric");

    SplitResult split = stable_antistable_split(v.z, tol);
    Realization x     = split.stable;
    x.D               = 0.5 * v.z.D + skew;
    return x;
}

} // namespace pasv
