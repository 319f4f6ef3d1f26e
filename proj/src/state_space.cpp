#include "pasv/state_space.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pasv {

namespace {

void require_ports_match(const Realization& r1, const Realization& r2, const char* who) {
    if (r1.ports() != r2.ports()) {
        std::ostringstream os;
        os << who << ": port dimensions differ (" << r1.ports() << " vs " << r2.ports() << ")";
        throw std::invalid_argument(os.str());
    }
}

// Strips leading zero coefficients (descending-power convention).
std::vector<double> trim_leading_zeros(std::vector<double> c) {
    std::size_t k = 0;
    while (k + 1 < c.size() && c[k] == 0.0) ++k;
    return {c.begin() + static_cast<std::ptrdiff_t>(k), c.end()};
}

} // namespace

Realization::Realization(RealMatrix a, RealMatrix b, RealMatrix c, RealMatrix d)
    : A(std::move(a)), B(std::move(b)), C(std::move(c)), D(std::move(d)) {
    const Eigen::Index n = A.rows(), p = D.rows();
    if (A.cols() != n) throw std::invalid_argument("Realization: A must be square");
    if (D.cols() != p || p < 1) throw std::invalid_argument("Realization: D must be square, p >= 1");
    if (B.rows() != n || B.cols() != p) throw std::invalid_argument("Realization: B must be n x p");
    if (C.rows() != p || C.cols() != n) throw std::invalid_argument("Realization: C must be p x n");
}

Realization Realization::constant(const RealMatrix& d) {
    return Realization(RealMatrix::Zero(0, 0), RealMatrix::Zero(0, d.rows()),
                       RealMatrix::Zero(d.rows(), 0), d);
}

FrequencyGrid FrequencyGrid::log_spaced_grid(double wmin, double wmax, int points) {
    if (!(wmin > 0.0) || !(wmax > wmin) || points < 2)
        throw std::invalid_argument("FrequencyGrid: need 0 < wmin < wmax and points >= 2");
    FrequencyGrid g;
    g.log_spaced = true;
    g.omega.resize(static_cast<std::size_t>(points));
    const double l0 = std::log10(wmin), l1 = std::log10(wmax);
    for (int i = 0; i < points; ++i)
        g.omega[static_cast<std::size_t>(i)] =
            std::pow(10.0, l0 + (l1 - l0) * i / (points - 1));
    return g;
}

FrequencyGrid FrequencyGrid::lin_spaced_grid(double wmin, double wmax, int points) {
    if (!(wmax > wmin) || points < 2)
        throw std::invalid_argument("FrequencyGrid: need wmin < wmax and points >= 2");
    FrequencyGrid g;
    g.log_spaced = false;
    g.omega.resize(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        g.omega[static_cast<std::size_t>(i)] = wmin + (wmax - wmin) * i / (points - 1);
    return g;
}

void FrequencyGrid::insert(double w) {
    auto it = std::lower_bound(omega.begin(), omega.end(), w);
    if (it != omega.end() && *it == w) return;
    omega.insert(it, w);
}

ComplexMatrix eval(const Realization& r, Complex s) {
    const Eigen::Index n = r.states();
    if (n == 0) return r.D.cast<Complex>();
    ComplexMatrix m = -r.A.cast<Complex>();
    m.diagonal().array() += s;
    Eigen::PartialPivLU<ComplexMatrix> lu(m);
    if (!(lu.rcond() >= 1e-15)) {
        std::ostringstream os;
        os << "eval: sI - A singular at s = (" << s.real() << ", " << s.imag() << ")";
        throw std::runtime_error(os.str());
    }
    return r.D.cast<Complex>() + r.C.cast<Complex>() * lu.solve(r.B.cast<Complex>());
}

Realization from_tf(const std::vector<double>& num_in, const std::vector<double>& den_in) {
    if (den_in.empty() || den_in.front() == 0.0)
        throw std::invalid_argument("from_tf: denominator leading coefficient must be nonzero");
    std::vector<double> num = trim_leading_zeros(num_in);
    if (num.empty()) num = {0.0};
    const std::vector<double>& den = den_in;
    if (num.size() > den.size())
        throw std::invalid_argument("from_tf: improper transfer function (deg num > deg den)");

    const std::size_t n = den.size() - 1;
    // monic denominator: den[0] s^n + ... + den[n]
    std::vector<double> a(n); // a[k] multiplies s^k, ascending
    for (std::size_t k = 0; k < n; ++k) a[k] = den[n - k] / den[0];

    std::vector<double> b(n + 1, 0.0); // ascending numerator coefficients
    for (std::size_t k = 0; k < num.size(); ++k) b[num.size() - 1 - k] = num[k] / den[0];

    const double d = b[n];
    std::vector<double> c(n);
    for (std::size_t k = 0; k < n; ++k) c[k] = b[k] - d * a[k];

    RealMatrix A = RealMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k + 1 < n; ++k) A(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k + 1)) = 1.0;
    for (std::size_t k = 0; k < n; ++k)
        A(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(k)) = -a[k];
    RealMatrix B = RealMatrix::Zero(static_cast<Eigen::Index>(n), 1);
    if (n > 0) B(static_cast<Eigen::Index>(n - 1), 0) = 1.0;
    RealMatrix C(1, static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) C(0, static_cast<Eigen::Index>(k)) = c[k];
    RealMatrix D(1, 1);
    D(0, 0) = d;
    return Realization(std::move(A), std::move(B), std::move(C), std::move(D));
}

Realization from_rational_matrix(const std::vector<std::vector<RationalEntry>>& entries) {
    const std::size_t p = entries.size();
    if (p == 0) throw std::invalid_argument("from_rational_matrix: empty entry grid");
    for (const auto& row : entries)
        if (row.size() != p)
            throw std::invalid_argument("from_rational_matrix: entry grid must be square");

    std::vector<std::vector<Realization>> cell(p);
    Eigen::Index n = 0;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            cell[i].push_back(from_tf(entries[i][j].num, entries[i][j].den));
            n += cell[i].back().states();
        }

    const Eigen::Index pp = static_cast<Eigen::Index>(p);
    RealMatrix A = RealMatrix::Zero(n, n), B = RealMatrix::Zero(n, pp);
    RealMatrix C = RealMatrix::Zero(pp, n), D = RealMatrix::Zero(pp, pp);
    Eigen::Index at = 0;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            const Realization& e = cell[i][j];
            const Eigen::Index k = e.states();
            A.block(at, at, k, k) = e.A;
            B.block(at, static_cast<Eigen::Index>(j), k, 1) = e.B;
            C.block(static_cast<Eigen::Index>(i), at, 1, k) = e.C;
            D(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = e.D(0, 0);
            at += k;
        }
    return Realization(std::move(A), std::move(B), std::move(C), std::move(D));
}

Realization add(const Realization& r1, const Realization& r2) {
    require_ports_match(r1, r2, "add");
    const Eigen::Index n1 = r1.states(), n2 = r2.states(), p = r1.ports();
    RealMatrix A = RealMatrix::Zero(n1 + n2, n1 + n2);
    A.topLeftCorner(n1, n1)     = r1.A;
    A.bottomRightCorner(n2, n2) = r2.A;
    RealMatrix B(n1 + n2, p);
    B.topRows(n1)    = r1.B;
    B.bottomRows(n2) = r2.B;
    RealMatrix C(p, n1 + n2);
    C.leftCols(n1)  = r1.C;
    C.rightCols(n2) = r2.C;
    return Realization(std::move(A), std::move(B), std::move(C), r1.D + r2.D);
}

Realization scale(const Realization& r, double c) {
    return Realization(r.A, r.B, c * r.C, c * r.D);
}

Realization add_const(const Realization& r, const RealMatrix& k) {
    if (k.rows() != r.ports() || k.cols() != r.ports())
        throw std::invalid_argument("add_const: constant must be p x p");
    return Realization(r.A, r.B, r.C, r.D + k);
}

Realization multiply(const Realization& r1, const Realization& r2) {
    require_ports_match(r1, r2, "multiply");
    const Eigen::Index n1 = r1.states(), n2 = r2.states(), p = r1.ports();
    RealMatrix A = RealMatrix::Zero(n1 + n2, n1 + n2);
    A.topLeftCorner(n1, n1)     = r1.A;
    A.topRightCorner(n1, n2)    = r1.B * r2.C;
    A.bottomRightCorner(n2, n2) = r2.A;
    RealMatrix B(n1 + n2, p);
    B.topRows(n1)    = r1.B * r2.D;
    B.bottomRows(n2) = r2.B;
    RealMatrix C(p, n1 + n2);
    C.leftCols(n1)  = r1.C;
    C.rightCols(n2) = r1.D * r2.C;
    return Realization(std::move(A), std::move(B), std::move(C), r1.D * r2.D);
}

Realization inverse(const Realization& r) {
    Eigen::JacobiSVD<RealMatrix> svd(r.D, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(r.ports() - 1);
    if (smin <= 0.0 || smax / smin > 1e12) {
        std::ostringstream os;
        os << "inverse: D is singular or ill-conditioned (cond = "
           << (smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity()) << ")";
        throw std::runtime_error(os.str());
    }
    RealMatrix di = r.D.inverse();
    return Realization(r.A - r.B * di * r.C, r.B * di, -di * r.C, di);
}

Realization prescale(const Realization& r) {
    const Eigen::Index n = r.states(), p = r.ports();
    if (n == 0) return r;
    RealMatrix combined = RealMatrix::Zero(n + p, n + p);
    combined.topLeftCorner(n, n)     = r.A;
    combined.topRightCorner(n, p)    = r.B;
    combined.bottomLeftCorner(p, n)  = r.C;
    const Eigen::VectorXd d = balancing_scales(combined, n).head(n);
    return Realization(d.cwiseInverse().asDiagonal() * r.A * d.asDiagonal(),
                       d.cwiseInverse().asDiagonal() * r.B, r.C * d.asDiagonal(), r.D);
}

Realization similarity(const Realization& r, const RealMatrix& t) {
    if (t.rows() != r.states() || t.cols() != r.states())
        throw std::invalid_argument("similarity: transform must be n x n");
    Eigen::PartialPivLU<RealMatrix> lu(t);
    if (r.states() > 0 && lu.rcond() < 1e-14)
        throw std::invalid_argument("similarity: transform is singular");
    return Realization(lu.solve(r.A * t), lu.solve(r.B), r.C * t, r.D);
}

bool is_hurwitz(const Realization& r, double tol) {
    return is_stable_spectrum(r.A, tol);
}

double default_hurwitz_tol(const Realization& r) {
    return 1e-8 * spectral_norm(r.A);
}

ParaHermitianRealization ParaHermitianRealization::wrap(Realization z, RealMatrix source_d) {
    for (double w : {0.17, 3.4, 260.0}) {
        ComplexMatrix v = eval(z, Complex(0.0, w));
        const double  dev = (v - v.adjoint().eval()).norm();
        if (dev > 1e-8 * (v.norm() + 1.0))
            throw std::invalid_argument(
                "ParaHermitianRealization: Z(iw) is not Hermitian on the sample grid");
    }
    ParaHermitianRealization out;
    out.z        = std::move(z);
    out.source_d = std::move(source_d);
    return out;
}

ParaHermitianRealization para_hermitian(const Realization& h) {
    const Eigen::Index n = h.states(), p = h.ports();
    RealMatrix A = RealMatrix::Zero(2 * n, 2 * n);
    A.topLeftCorner(n, n)     = h.A;
    A.bottomRightCorner(n, n) = -h.A.transpose();
    RealMatrix B(2 * n, p);
    B.topRows(n)    = h.B;
    B.bottomRows(n) = h.C.transpose();
    RealMatrix C(p, 2 * n);
    C.leftCols(n)  = h.C;
    C.rightCols(n) = -h.B.transpose();
    return ParaHermitianRealization::wrap(
        Realization(std::move(A), std::move(B), std::move(C), h.D + h.D.transpose()), h.D);
}

Realization real_part_shifted_inverse(const Realization& h, Complex xi, Complex eta) {
    const Eigen::Index n = h.states(), p = h.ports();
    ComplexMatrix dxi = h.D.cast<Complex>();
    dxi.diagonal().array() -= xi;
    Eigen::FullPivLU<ComplexMatrix> lu(dxi);
    if (!lu.isInvertible())
        throw std::runtime_error("real_part_shifted_inverse: D - xi I is singular");
    ComplexMatrix dxi_inv = lu.inverse();

    ComplexMatrix At = h.A.cast<Complex>() - h.B.cast<Complex>() * dxi_inv * h.C.cast<Complex>();
    ComplexMatrix Bt = eta * h.B.cast<Complex>() * dxi_inv;
    ComplexMatrix Ct = -dxi_inv * h.C.cast<Complex>();
    ComplexMatrix Dt = eta * dxi_inv;

    // stacked real/imaginary state equations
    RealMatrix A = RealMatrix::Zero(2 * n, 2 * n);
    A.topLeftCorner(n, n)     = At.real();
    A.topRightCorner(n, n)    = -At.imag();
    A.bottomLeftCorner(n, n)  = At.imag();
    A.bottomRightCorner(n, n) = At.real();
    RealMatrix B(2 * n, p);
    B.topRows(n)    = Bt.real();
    B.bottomRows(n) = Bt.imag();
    RealMatrix C(p, 2 * n);
    C.leftCols(n)  = Ct.real();
    C.rightCols(n) = -Ct.imag();
    return Realization(std::move(A), std::move(B), std::move(C), Dt.real());
}

} // namespace pasv
