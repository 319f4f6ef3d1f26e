#include "pasv/nearness.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace pasv {

PsdProjection nearest_psd(const ComplexMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("nearest_psd: matrix must be square");

    const double scale     = spectral_norm(m);
    const double asymmetry = (m - m.adjoint().eval()).norm();
    if (asymmetry > 1e-8 * (scale > 0.0 ? scale : 1.0))
        throw std::invalid_argument("nearest_psd: input is not Hermitian");
    ComplexMatrix h = 0.5 * (m + m.adjoint().eval());

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("nearest_psd: eigendecomposition failed");

    Eigen::VectorXd lam = es.eigenvalues();
    PsdProjection   out;
    out.input = m;

    double fro2 = 0.0;
    double lam_min = 0.0;
    Eigen::VectorXd clamped = lam;
    const double zero_band = 1e-12 * scale;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        lam_min = std::min(lam_min, lam(i));
        if (lam(i) < 0.0) fro2 += lam(i) * lam(i);
        clamped(i) = (lam(i) <= zero_band) ? 0.0 : lam(i);
    }
    out.projected = es.eigenvectors() * clamped.asDiagonal() *
                    es.eigenvectors().adjoint();
    out.frobenius_distance = std::sqrt(fro2);
    out.spectral_distance  = std::max(0.0, -lam_min);
    return out;
}

PsdProjection r_plus(const Realization& h, double omega) {
    ComplexMatrix v = eval(h, Complex(0.0, omega));
    return nearest_psd(v + v.adjoint().eval());
}

} // namespace pasv
