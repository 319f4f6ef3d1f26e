#include "pasv/matkit.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <cstdlib>
#include <random>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pasv {

namespace {

void require_square(const RealMatrix& m, const char* who) {
    if (m.rows() != m.cols()) {
        std::ostringstream os;
        os << who << ": matrix must be square, got " << m.rows() << "x" << m.cols();
        throw std::invalid_argument(os.str());
    }
}

struct DiagBlock {
    Eigen::Index start = 0;
    Eigen::Index size  = 1;
    Complex      eig; ///< representative eigenvalue (Im >= 0 for 2x2 blocks)
};

// Both eigenvalues of the diagonal block starting at i (one for 1x1 blocks).
std::pair<Complex, Complex> block_eig_pair(const RealMatrix& t, Eigen::Index i,
                                           Eigen::Index size) {
    if (size == 1) return {{t(i, i), 0.0}, {t(i, i), 0.0}};
    const double a = t(i, i), b = t(i, i + 1);
    const double c = t(i + 1, i), d = t(i + 1, i + 1);
    const double mean = 0.5 * (a + d);
    const double disc = 0.25 * (a - d) * (a - d) + b * c;
    if (disc < 0.0) {
        const Complex lam(mean, std::sqrt(-disc));
        return {lam, std::conj(lam)};
    }
    // degenerate 2x2 with real eigenvalues
    return {{mean + std::sqrt(disc), 0.0}, {mean - std::sqrt(disc), 0.0}};
}

Complex block_eig(const RealMatrix& t, Eigen::Index i, Eigen::Index size) {
    return block_eig_pair(t, i, size).first;
}

std::vector<DiagBlock> scan_blocks(const RealMatrix& t) {
    std::vector<DiagBlock> blocks;
    const Eigen::Index n = t.rows();
    Eigen::Index       i = 0;
    while (i < n) {
        DiagBlock blk;
        blk.start = i;
        blk.size  = (i + 1 < n && t(i + 1, i) != 0.0) ? 2 : 1;
        blk.eig   = block_eig(t, i, blk.size);
        blocks.push_back(blk);
        i += blk.size;
    }
    return blocks;
}

// Solves the small Sylvester equation A X - X B = C (sizes <= 2x2) by
// Kronecker vectorization. Returns false when the operator is singular.
bool solve_small_sylvester(const RealMatrix& a, const RealMatrix& b,
                           const RealMatrix& c, RealMatrix& x, double scale) {
    const Eigen::Index p = a.rows(), q = b.rows();
    RealMatrix k = RealMatrix::Zero(p * q, p * q);
    for (Eigen::Index j = 0; j < q; ++j)
        k.block(j * p, j * p, p, p) = a;
    for (Eigen::Index j = 0; j < q; ++j)
        for (Eigen::Index l = 0; l < q; ++l)
            k.block(j * p, l * p, p, p).diagonal().array() -= b(l, j);
    Eigen::FullPivLU<RealMatrix> lu(k);
    lu.setThreshold(1e-13);
    if (!lu.isInvertible() ||
        std::abs(lu.matrixLU()(p * q - 1, p * q - 1)) < 1e-13 * (scale + 1.0))
        return false;
    Eigen::VectorXd vc(p * q);
    for (Eigen::Index j = 0; j < q; ++j) vc.segment(j * p, p) = c.col(j);
    Eigen::VectorXd vx = lu.solve(vc);
    x.resize(p, q);
    for (Eigen::Index j = 0; j < q; ++j) x.col(j) = vx.segment(j * p, p);
    return true;
}

// Swaps the adjacent diagonal blocks blocks[k] and blocks[k+1] of T by an
// orthogonal similarity, accumulating it into Q.
void swap_adjacent_blocks(RealMatrix& t, RealMatrix& q,
                          std::vector<DiagBlock>& blocks, std::size_t k,
                          double t_norm) {
    DiagBlock&         b1 = blocks[k];
    DiagBlock&         b2 = blocks[k + 1];
    const Eigen::Index i  = b1.start;
    const Eigen::Index p  = b1.size;
    const Eigen::Index qs = b2.size;
    const Eigen::Index w  = p + qs;

    RealMatrix t11 = t.block(i, i, p, p);
    RealMatrix t22 = t.block(i + p, i + p, qs, qs);
    RealMatrix t12 = t.block(i, i + p, p, qs);

    RealMatrix x;
    if (!solve_small_sylvester(t11, t22, t12, x, t_norm))
        throw std::runtime_error(
            "real_schur: block swap failed (eigenvalues too close across blocks)");

    // [X; -I] spans the invariant subspace of the trailing block.
    RealMatrix span(w, qs);
    span.topRows(p)     = x;
    span.bottomRows(qs) = -RealMatrix::Identity(qs, qs);
    Eigen::HouseholderQR<RealMatrix> qr(span);
    RealMatrix g = qr.householderQ();

    t.middleRows(i, w) = g.transpose() * t.middleRows(i, w);
    t.middleCols(i, w) = t.middleCols(i, w) * g;
    q.middleCols(i, w) = q.middleCols(i, w) * g;

    const double residual = t.block(i + qs, i, p, qs).norm();
    if (residual > 1e-9 * (t_norm + 1.0))
        throw std::runtime_error("real_schur: block swap lost triangularity");
    t.block(i + qs, i, p, qs).setZero();

    std::swap(b1.size, b2.size);
    std::swap(b1.eig, b2.eig);
    b2.start = b1.start + b1.size;
    b1.eig   = block_eig(t, b1.start, b1.size);
    b2.eig   = block_eig(t, b2.start, b2.size);
}

} // namespace

Eigen::VectorXd balancing_scales(const RealMatrix& m, Eigen::Index scale_count) {
    require_square(m, "balancing_scales");
    Eigen::VectorXd d = Eigen::VectorXd::Ones(m.rows());
    RealMatrix      a = m;
    for (int sweep = 0; sweep < 32; ++sweep) {
        bool converged = true;
        for (Eigen::Index i = 0; i < scale_count; ++i) {
            double c = a.col(i).lpNorm<1>() - std::abs(a(i, i));
            double r = a.row(i).lpNorm<1>() - std::abs(a(i, i));
            if (c <= 0.0 || r <= 0.0) continue;
            const double s = c + r;
            double       f = 1.0;
            while (c < 0.5 * r) {
                f *= 2.0;
                c *= 2.0;
                r *= 0.5;
            }
            while (c >= 2.0 * r) {
                f *= 0.5;
                c *= 0.5;
                r *= 2.0;
            }
            if (f != 1.0 && c + r < 0.95 * s) {
                converged = false;
                d(i) *= f;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
        if (converged) break;
    }
    return d;
}

namespace {

RealMatrix deterministic_orthogonal(Eigen::Index n, unsigned seed) {
    std::mt19937               rng(seed);
    std::normal_distribution<> gauss(0.0, 1.0);
    RealMatrix                 g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) g(i, j) = gauss(rng);
    return Eigen::HouseholderQR<RealMatrix>(g).householderQ();
}

// Schur pass with a raised iteration cap; retries in a rotated basis when
// the Francis iteration stalls (exact plus/minus eigenvalue pairs can defeat
// the shift heuristic). On success *pre_rotation holds the basis change.
Eigen::RealSchur<RealMatrix> schur_with_retries(const RealMatrix& m, bool compute_u,
                                                RealMatrix* pre_rotation) {
    Eigen::RealSchur<RealMatrix> schur(m.rows());
    schur.setMaxIterations(200 * m.rows());
    schur.compute(m, compute_u);
    if (schur.info() == Eigen::Success) {
        if (pre_rotation) *pre_rotation = RealMatrix::Identity(m.rows(), m.rows());
        return schur;
    }
    for (unsigned seed : {0xa11ceu, 0xb0b5eedu}) {
        RealMatrix q0 = deterministic_orthogonal(m.rows(), seed);
        schur.compute(q0.transpose() * m * q0, compute_u);
        if (schur.info() == Eigen::Success) {
            if (pre_rotation) *pre_rotation = q0;
            return schur;
        }
    }
    throw std::runtime_error("schur: QR iteration failed to converge");
}

} // namespace

std::vector<Complex> eigenvalues(const RealMatrix& m) {
    require_square(m, "eigenvalues");
    if (m.rows() == 0) return {};
    const Eigen::VectorXd d = balancing_scales(m, m.rows());
    const RealMatrix balanced =
        d.cwiseInverse().asDiagonal() * m * d.asDiagonal();
    Eigen::RealSchur<RealMatrix> schur =
        schur_with_retries(balanced, /*compute_u=*/false, nullptr);
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(m.rows()));
    for (const auto& blk : scan_blocks(schur.matrixT())) {
        const auto pair = block_eig_pair(schur.matrixT(), blk.start, blk.size);
        out.push_back(pair.first);
        if (blk.size == 2) out.push_back(pair.second);
    }
    return out;
}

SchurForm real_schur(const RealMatrix& m, const std::function<bool(Complex)>& select) {
    require_square(m, "real_schur");
    SchurForm out;
    if (m.rows() == 0) {
        out.Q = out.T = m;
        return out;
    }
    RealMatrix                   pre_rotation;
    Eigen::RealSchur<RealMatrix> schur =
        schur_with_retries(m, /*compute_u=*/true, &pre_rotation);
    out.Q = pre_rotation * schur.matrixU();
    out.T = schur.matrixT();

    auto         blocks = scan_blocks(out.T);
    const double t_norm = out.T.norm();

    if (select) {
        std::vector<bool> wanted(blocks.size());
        for (std::size_t j = 0; j < blocks.size(); ++j) {
            const Complex lam = blocks[j].eig;
            const bool    sel = select(lam);
            if (blocks[j].size == 2 && sel != select(std::conj(lam)))
                throw std::invalid_argument(
                    "real_schur: selection predicate splits a conjugate pair");
            wanted[j] = sel;
        }
        std::size_t insert = 0;
        for (std::size_t j = 0; j < blocks.size(); ++j) {
            if (!wanted[j]) continue;
            for (std::size_t k = j; k > insert; --k) {
                swap_adjacent_blocks(out.T, out.Q, blocks, k - 1, t_norm);
                std::swap(wanted[k - 1], wanted[k]);
            }
            ++insert;
        }
        for (std::size_t j = 0; j < insert; ++j) out.selected_size += blocks[j].size;
    }

    out.eigenvalues.clear();
    for (const auto& blk : blocks) {
        const auto pair = block_eig_pair(out.T, blk.start, blk.size);
        out.eigenvalues.push_back(pair.first);
        if (blk.size == 2) out.eigenvalues.push_back(pair.second);
    }
    return out;
}

RealMatrix solve_sylvester(const RealMatrix& a, const RealMatrix& b,
                           const RealMatrix& c) {
    require_square(a, "solve_sylvester");
    require_square(b, "solve_sylvester");
    if (c.rows() != a.rows() || c.cols() != b.rows())
        throw std::invalid_argument("solve_sylvester: right-hand side has wrong shape");
    if (a.rows() == 0 || b.rows() == 0) return RealMatrix::Zero(a.rows(), b.rows());

    const double scale = spectral_norm(a) + spectral_norm(b);
    {
        const auto ea = eigenvalues(a);
        const auto eb = eigenvalues(b);
        double     gap = std::numeric_limits<double>::infinity();
        for (const auto& la : ea)
            for (const auto& lb : eb) gap = std::min(gap, std::abs(la - lb));
        if (gap <= 1e-12 * (scale + 1.0))
            throw std::invalid_argument(
                "solve_sylvester: spectra of A and B overlap within tolerance");
    }

    SchurForm  sa = real_schur(a);
    SchurForm  sb = real_schur(b);
    RealMatrix f  = sa.Q.transpose() * c * sb.Q;
    RealMatrix y  = RealMatrix::Zero(a.rows(), b.rows());

    const auto ba = scan_blocks(sa.T);
    const auto bb = scan_blocks(sb.T);
    for (std::size_t j = 0; j < bb.size(); ++j) {
        const auto& cb = bb[j];
        for (std::size_t ii = ba.size(); ii-- > 0;) {
            const auto& rb  = ba[ii];
            RealMatrix  rhs = f.block(rb.start, cb.start, rb.size, cb.size);
            if (rb.start + rb.size < a.rows())
                rhs -= sa.T.block(rb.start, rb.start + rb.size, rb.size,
                                  a.rows() - rb.start - rb.size) *
                       y.block(rb.start + rb.size, cb.start,
                               a.rows() - rb.start - rb.size, cb.size);
            if (cb.start > 0)
                rhs += y.block(rb.start, 0, rb.size, cb.start) *
                       sb.T.block(0, cb.start, cb.start, cb.size);
            RealMatrix w;
            if (!solve_small_sylvester(sa.T.block(rb.start, rb.start, rb.size, rb.size),
                                       sb.T.block(cb.start, cb.start, cb.size, cb.size),
                                       rhs, w, scale))
                throw std::runtime_error(
                    "solve_sylvester: near-singular block (eigenvalue clusters overlap)");
            y.block(rb.start, cb.start, rb.size, cb.size) = w;
        }
    }

    RealMatrix x = sa.Q * y * sb.Q.transpose();

    const double residual = (a * x - x * b - c).norm();
    const double bound = 1e-10 * (frobenius_norm(a) + frobenius_norm(b)) * x.norm() +
                         1e-10 * c.norm();
    if (residual > bound)
        throw std::runtime_error("solve_sylvester: residual exceeds tolerance (ill-conditioned)");
    return x;
}

double spectral_norm(const RealMatrix& m) {
    if (m.size() == 0) return 0.0;
    return Eigen::JacobiSVD<RealMatrix>(m).singularValues()(0);
}

double spectral_norm(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues()(0);
}

double frobenius_norm(const RealMatrix& m) { return m.norm(); }
double frobenius_norm(const ComplexMatrix& m) { return m.norm(); }

bool is_stable_spectrum(const RealMatrix& m, double tol) {
    for (const auto& lam : eigenvalues(m))
        if (lam.real() >= -tol) return false;
    return true;
}

} // namespace pasv
