#include "pasv/passify.hpp"

#include "pasv/nearness.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pasv {

namespace {

/// Certified dissipation interval of a passifiable H.
struct Interval {
    double              nu = 0.0; ///< >= |delta_minus|
    double              b = 0.0;  ///< >= delta_plus
    double              hinf = 0.0;
    std::vector<double> critical_omegas;
};

Interval compute_interval(const Realization& h, double tol_in) {
    Interval out;
    out.hinf = hinf_norm(h, 1e-6);
    // default is tighter than the reporting tolerance so nu overshoots
    // |delta_minus| by well under the shift baseline gate
    const double tol = tol_in > 0.0 ? tol_in : 1e-9 * (1.0 + out.hinf);

    DissipationExtremum lo = min_dissipation_detailed(h, tol);
    if (lo.value >= -tol)
        throw std::invalid_argument("passify: model is already passive");
    DissipationExtremum hi_neg = min_dissipation_detailed(scale(h, -1.0), tol);
    const double delta_plus = -hi_neg.value;
    if (delta_plus <= tol)
        throw std::invalid_argument("passify: model is anti-passive, negate it first");

    // outer bracket endpoints keep the gap condition valid under round-off
    out.nu = -lo.bracket_low;
    out.nu += 1e-10 * (1.0 + out.nu);
    out.b = -hi_neg.bracket_low;
    out.b += 1e-10 * (1.0 + out.b);

    out.critical_omegas = lo.critical_omegas;
    out.critical_omegas.insert(out.critical_omegas.end(), hi_neg.critical_omegas.begin(),
                               hi_neg.critical_omegas.end());
    return out;
}

RealMatrix skew_part(const RealMatrix& d) { return 0.5 * (d - d.transpose()); }

/// f(Z(s)) assembled term by term as parallel state-space additions.
Realization assemble_ramp_of(const Realization& z, const RampApproximant& f) {
    const Eigen::Index p = z.ports();
    Realization        acc = scale(z, f.linear_slope);
    if (f.linear_offset != 0.0)
        acc = add_const(acc, f.linear_offset * RealMatrix::Identity(p, p));
    for (const auto& t : f.real_terms) {
        Realization shifted = add_const(z, -t.pole * RealMatrix::Identity(p, p));
        acc = add(acc, scale(inverse(shifted), t.residue));
    }
    for (const auto& t : f.complex_terms)
        acc = add(acc, real_part_shifted_inverse(z, t.pole, t.residue));
    return acc;
}

void verify_with_scale(const Realization& h_in, PassivationResult& res,
                       const FrequencyGrid& grid, double hinf_h) {
    const Realization h = prescale(h_in);
    res.achieved_delta_minus =
        min_dissipation(res.G, 1e-9 * (1.0 + hinf_h));

    double sweep = 0.0, rel_max = 0.0, rel_sum = 0.0;
    std::size_t rel_count = 0;
    for (double w : grid.omega) {
        const Complex s(0.0, w);
        ComplexMatrix gv = eval(res.G, s);
        ComplexMatrix hv = eval(h, s);
        PsdProjection proj = nearest_psd(hv + hv.adjoint().eval());
        sweep = std::max(sweep,
                         spectral_norm(ComplexMatrix(gv + gv.adjoint().eval() - proj.projected)));
        const double hn = spectral_norm(hv);
        if (hn > 1e-300) {
            const double rel = spectral_norm(ComplexMatrix(gv - hv)) / hn;
            rel_max = std::max(rel_max, rel);
            rel_sum += rel;
            ++rel_count;
        }
    }
    res.sweep_error         = sweep;
    res.relative_error_max  = rel_max;
    res.relative_error_mean = rel_count ? rel_sum / static_cast<double>(rel_count) : 0.0;

    res.delta_certificate_ok = res.achieved_delta_minus >= -1e-8 * (1.0 + res.alpha);
    res.sweep_certificate_ok = res.sweep_error <= res.alpha + 1e-6 * (1.0 + res.alpha);
}

FrequencyGrid default_grid(const Interval& interval) {
    return make_verification_grid(kDefaultVerifyPoints, interval.critical_omegas);
}

} // namespace

std::string to_string(PassifyMethod m) {
    switch (m) {
        case PassifyMethod::shift: return "shift";
        case PassifyMethod::iterate: return "iterate";
        case PassifyMethod::partfrac: return "partfrac";
        case PassifyMethod::minimax: return "minimax";
    }
    return "unknown";
}

FrequencyGrid make_verification_grid(int points, const std::vector<double>& extra) {
    FrequencyGrid grid = FrequencyGrid::log_spaced_grid(1e-4, 1e6, points);
    for (double w : extra)
        if (std::isfinite(w) && w >= 0.0) grid.insert(w);
    return grid;
}

PassivationResult shift_passify(const Realization& h, double tol) {
    Interval interval = compute_interval(h, tol);

    PassivationResult res;
    res.method = PassifyMethod::shift;
    res.nu     = interval.nu;
    res.alpha  = interval.nu;
    res.G      = add_const(h, 0.5 * interval.nu *
                                  RealMatrix::Identity(h.ports(), h.ports()));
    res.states             = static_cast<int>(res.G.states());
    res.denominator_degree = 0;
    res.pole_estimate      = static_cast<int>(h.states());
    verify_with_scale(h, res, default_grid(interval), interval.hinf);
    return res;
}

PassivationResult passify_iterative(const Realization& h, int k, double tol) {
    if (k < 0) throw std::invalid_argument("passify_iterative: k must be >= 0");
    Interval interval = compute_interval(h, tol);
    const double nu = interval.nu;

    const Realization z = prescale(para_hermitian(h).z);
    Realization       zk =
        add_const(z, nu * RealMatrix::Identity(h.ports(), h.ports()));
    for (int j = 1; j <= k; ++j) {
        Realization denom = add(scale(zk, 2.0), scale(z, -1.0));
        zk = multiply(multiply(zk, inverse(denom)), zk);
    }

    ParaHermitianRealization fz = ParaHermitianRealization::wrap(std::move(zk), h.D);
    PassivationResult res;
    res.method = PassifyMethod::iterate;
    res.param  = k;
    res.nu     = nu;
    res.alpha  = nu / std::pow(2.0, k);
    res.G      = stable_half_persym(fz, skew_part(h.D), default_split_tol(fz.z));
    res.states             = static_cast<int>(res.G.states());
    res.denominator_degree = (1 << k) - 1;
    res.pole_estimate =
        res.denominator_degree >= 1
            ? pole_estimate(static_cast<int>(h.states()), res.denominator_degree)
            : static_cast<int>(h.states());
    verify_with_scale(h, res, default_grid(interval), interval.hinf);
    return res;
}

PassivationResult passify_partfrac(const Realization& h, int m, double tol) {
    if (m < 1) throw std::invalid_argument("passify_partfrac: m must be >= 1");
    Interval interval = compute_interval(h, tol);

    RampApproximant f = zeta_partial_fractions(m).scaled(interval.nu);
    Realization fz = assemble_ramp_of(prescale(para_hermitian(h).z), f);

    ParaHermitianRealization wrapped = ParaHermitianRealization::wrap(std::move(fz), h.D);
    PassivationResult res;
    res.method = PassifyMethod::partfrac;
    res.param  = m;
    res.nu     = interval.nu;
    res.alpha  = f.alpha;
    res.G      = stable_half_persym(wrapped, skew_part(h.D), default_split_tol(wrapped.z));
    res.states             = static_cast<int>(res.G.states());
    res.denominator_degree = f.denominator_degree();
    res.pole_estimate = pole_estimate(static_cast<int>(h.states()), res.denominator_degree);
    verify_with_scale(h, res, default_grid(interval), interval.hinf);
    return res;
}

PassivationResult passify_minimax(const Realization& h, const MinimaxTable& table,
                                  double tol) {
    Interval interval = compute_interval(h, tol);

    RampApproximant f = minimax_transformed(interval.nu, interval.b, table);
    Realization fz = assemble_ramp_of(prescale(para_hermitian(h).z), f);

    ParaHermitianRealization wrapped = ParaHermitianRealization::wrap(std::move(fz), h.D);
    PassivationResult res;
    res.method = PassifyMethod::minimax;
    res.param  = table.n;
    res.nu     = interval.nu;
    res.alpha  = f.alpha;
    res.G      = stable_half_persym(wrapped, skew_part(h.D), default_split_tol(wrapped.z));
    res.states             = static_cast<int>(res.G.states());
    res.denominator_degree = f.denominator_degree();
    res.pole_estimate = pole_estimate(static_cast<int>(h.states()), res.denominator_degree);
    verify_with_scale(h, res, default_grid(interval), interval.hinf);
    return res;
}

void verify(const Realization& h, PassivationResult& result, const FrequencyGrid& grid) {
    verify_with_scale(h, result, grid, hinf_norm(h, 1e-6));
}

int pole_estimate(int n_states, int denominator_degree) {
    if (n_states < 1 || denominator_degree < 1)
        throw std::invalid_argument("pole_estimate: N and M must be >= 1");
    return n_states * (denominator_degree + 1);
}

Realization reduce(const Realization& g, double tol) {
    ReduceReport report;
    return reduce(g, tol, report);
}

Realization reduce(const Realization& g, double tol, ReduceReport& report) {
    if (!is_hurwitz(g, default_hurwitz_tol(g)))
        throw std::invalid_argument("reduce: model must be Hurwitz stable");
    report = ReduceReport{};
    report.kept = static_cast<int>(g.states());
    if (g.states() == 0) return g;

    RealMatrix p = solve_sylvester(g.A, -g.A.transpose(), -g.B * g.B.transpose());
    p = 0.5 * (p + p.transpose()).eval();
    RealMatrix q = solve_sylvester(g.A.transpose(), -g.A, -g.C.transpose() * g.C);
    q = 0.5 * (q + q.transpose()).eval();

    auto psd_factor = [](const RealMatrix& m) {
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(m);
        Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        return RealMatrix(es.eigenvectors() * lam.asDiagonal());
    };
    RealMatrix lp = psd_factor(p);
    RealMatrix lq = psd_factor(q);

    Eigen::JacobiSVD<RealMatrix> svd(lq.transpose() * lp,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd sigma = svd.singularValues();
    if (sigma(0) <= 0.0) return Realization::constant(g.D);

    Eigen::Index r = 0;
    while (r < sigma.size() && sigma(r) > tol * sigma(0)) ++r;
    r = std::max<Eigen::Index>(r, 1);
    for (Eigen::Index i = r; i < sigma.size(); ++i) report.discarded_sum += sigma(i);
    if (r == g.states()) return g;

    Eigen::VectorXd si = sigma.head(r).cwiseSqrt().cwiseInverse();
    RealMatrix t  = lp * svd.matrixV().leftCols(r) * si.asDiagonal();
    RealMatrix ti = si.asDiagonal() * svd.matrixU().leftCols(r).transpose() * lq.transpose();

    Realization reduced(ti * g.A * t, ti * g.B, g.C * t, g.D);

    FrequencyGrid grid = FrequencyGrid::log_spaced_grid(1e-4, 1e6, 48);
    double        err = 0.0, gain = 0.0;
    for (double w : grid.omega) {
        const Complex s(0.0, w);
        ComplexMatrix ref = eval(g, s);
        err  = std::max(err, spectral_norm(ComplexMatrix(eval(reduced, s) - ref)));
        gain = std::max(gain, spectral_norm(ref));
    }
    report.grid_error = err;
    report.kept       = static_cast<int>(r);

    const double band = 1e-7 * (1.0 + gain);
    const double tol_d = 1e-9 * (1.0 + gain);
    if (err > 2.0 * report.discarded_sum + band) {
        report.rolled_back = true;
        report.kept        = static_cast<int>(g.states());
        return g;
    }
    const double d_orig = min_dissipation(g, tol_d);
    if (d_orig >= -band &&
        min_dissipation(reduced, tol_d) < -(band + 4.0 * report.discarded_sum)) {
        report.rolled_back = true;
        report.kept        = static_cast<int>(g.states());
        return g;
    }
    return reduced;
}

} // namespace pasv
