#include "oracles.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace oracles {

Complex poly_eval(const std::vector<double>& coeffs, Complex s) {
    Complex v = 0.0;
    for (double c : coeffs) v = v * s + c;
    return v;
}

std::vector<Complex> poly_roots(const std::vector<double>& coeffs) {
    if (coeffs.size() < 2 || coeffs.front() == 0.0)
        throw std::invalid_argument("poly_roots: degree must be >= 1 with nonzero lead");
    const std::size_t    deg = coeffs.size() - 1;
    std::vector<Complex> z(deg);
    const Complex        seed(0.4, 0.9);
    Complex              zk = 1.0;
    for (std::size_t k = 0; k < deg; ++k) {
        zk *= seed;
        z[k] = zk;
    }
    std::vector<double> monic(coeffs);
    for (double& c : monic) c /= coeffs.front();

    for (int iter = 0; iter < 500; ++iter) {
        double shift = 0.0;
        for (std::size_t k = 0; k < deg; ++k) {
            Complex denom = 1.0;
            for (std::size_t j = 0; j < deg; ++j)
                if (j != k) denom *= z[k] - z[j];
            Complex step = poly_eval(monic, z[k]) / denom;
            z[k] -= step;
            shift = std::max(shift, std::abs(step));
        }
        if (shift < 1e-14) break;
    }
    return z;
}

namespace {

double lambda_min_at(const Realization& r, double w) {
    ComplexMatrix v = pasv::eval(r, Complex(0.0, w));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(v + v.adjoint().eval());
    return es.eigenvalues().minCoeff();
}

double sigma_max_at(const Realization& r, double w) {
    return pasv::spectral_norm(pasv::eval(r, Complex(0.0, w)));
}

// Golden-section minimization of f over [lo, hi].
template <typename F>
double golden_min(F f, double lo, double hi, double& arg) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double       a = lo, b = hi;
    double       x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double       f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < 200 && (b - a) > 1e-13 * (1.0 + std::abs(a)); ++i) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    arg = 0.5 * (a + b);
    return f(arg);
}

template <typename F>
SweepExtremum sweep_minimum(F f, int points) {
    const double l0 = -4.0, l1 = 6.0;
    double       best = std::numeric_limits<double>::infinity();
    int          best_i = 0;
    for (int i = 0; i < points; ++i) {
        const double w = std::pow(10.0, l0 + (l1 - l0) * i / (points - 1));
        const double v = f(w);
        if (v < best) {
            best = v;
            best_i = i;
        }
    }
    const double wlo = std::pow(10.0, l0 + (l1 - l0) * std::max(0, best_i - 1) / (points - 1));
    const double whi =
        std::pow(10.0, l0 + (l1 - l0) * std::min(points - 1, best_i + 1) / (points - 1));
    SweepExtremum out;
    const double refined = golden_min(f, wlo, whi, out.omega);
    out.value = std::min(best, refined);
    return out;
}

} // namespace

SweepExtremum sweep_min_dissipation(const Realization& r_in, int points) {
    const Realization r = pasv::prescale(r_in); // conditioning only
    return sweep_minimum([&](double w) { return lambda_min_at(r, w); }, points);
}

SweepExtremum sweep_max_dissipation(const Realization& r_in, int points) {
    Realization neg = pasv::scale(pasv::prescale(r_in), -1.0);
    SweepExtremum ext = sweep_minimum([&](double w) { return lambda_min_at(neg, w); }, points);
    ext.value = -ext.value;
    return ext;
}

double sweep_hinf(const Realization& r_in, int points) {
    const Realization r = pasv::prescale(r_in);
    SweepExtremum ext =
        sweep_minimum([&](double w) { return -sigma_max_at(r, w); }, points);
    return -ext.value;
}

RealMatrix kron_sylvester(const RealMatrix& a, const RealMatrix& b, const RealMatrix& c) {
    const Eigen::Index m = a.rows(), k = b.rows();
    RealMatrix op = RealMatrix::Zero(m * k, m * k);
    for (Eigen::Index j = 0; j < k; ++j) op.block(j * m, j * m, m, m) = a;
    for (Eigen::Index j = 0; j < k; ++j)
        for (Eigen::Index l = 0; l < k; ++l)
            op.block(j * m, l * m, m, m).diagonal().array() -= b(l, j);
    Eigen::VectorXd vc(m * k);
    for (Eigen::Index j = 0; j < k; ++j) vc.segment(j * m, m) = c.col(j);
    Eigen::VectorXd vx = op.fullPivLu().solve(vc);
    RealMatrix x(m, k);
    for (Eigen::Index j = 0; j < k; ++j) x.col(j) = vx.segment(j * m, m);
    return x;
}

double max_rel_err(const Realization& r1, const Realization& r2,
                   const pasv::FrequencyGrid& grid) {
    double worst = 0.0;
    for (double w : grid.omega) {
        const Complex       s(0.0, w);
        const ComplexMatrix v2 = pasv::eval(r2, s);
        worst = std::max(worst, (pasv::eval(r1, s) - v2).norm() / (1.0 + v2.norm()));
    }
    return worst;
}

RealMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937& rng) {
    std::normal_distribution<> gauss(0.0, 1.0);
    RealMatrix                 m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = gauss(rng);
    return m;
}

RealMatrix random_orthogonal(Eigen::Index n, std::mt19937& rng) {
    Eigen::HouseholderQR<RealMatrix> qr(random_matrix(n, n, rng));
    return qr.householderQ();
}

RealMatrix random_stable(Eigen::Index n, std::mt19937& rng, double margin) {
    RealMatrix m = random_matrix(n, n, rng);
    double     max_re = 0.0;
    for (const auto& lam : pasv::eigenvalues(m)) max_re = std::max(max_re, lam.real());
    m.diagonal().array() -= max_re + margin;
    return m;
}

ComplexMatrix random_hermitian(Eigen::Index n, std::mt19937& rng) {
    std::normal_distribution<> gauss(0.0, 1.0);
    ComplexMatrix              m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    return 0.5 * (m + m.adjoint().eval());
}

} // namespace oracles
