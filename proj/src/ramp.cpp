#include "pasv/ramp.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pasv {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double RampApproximant::eval(double x) const {
    double v = linear_slope * x + linear_offset;
    for (const auto& t : real_terms) v += t.residue / (x - t.pole);
    for (const auto& t : complex_terms) v += (t.residue / (x - t.pole)).real();
    return v;
}

RampApproximant RampApproximant::scaled(double nu) const {
    if (!(nu > 0.0)) throw std::invalid_argument("RampApproximant::scaled: nu must be positive");
    RampApproximant out = *this;
    out.linear_offset *= nu;
    for (auto& t : out.real_terms) {
        t.pole *= nu;
        t.residue *= nu * nu;
    }
    for (auto& t : out.complex_terms) {
        t.pole *= nu;
        t.residue *= nu * nu;
    }
    out.alpha *= nu;
    out.interval_a *= nu;
    out.interval_b *= nu;
    return out;
}

const MinimaxTable& MinimaxTable::n4() {
    static const MinimaxTable table = [] {
        MinimaxTable t;
        t.n   = 4;
        t.a   = {2.6397296257, 1.4034219887e-6, 0.0003730797, 0.0290141901, 5.6266532592};
        t.b   = {0.0000917473, 0.0049831021, 0.1014048457, 2.4866930733};
        t.e_n = 0.0007365636;
        return t;
    }();
    return table;
}

double zeta(int n, double x) {
    if (n < 1) throw std::invalid_argument("zeta: n must be positive");
    if (x < -1.0) {
        std::ostringstream os;
        os << "zeta: x = " << x << " is outside the domain [-1, inf)";
        throw std::invalid_argument(os.str());
    }
    if (std::abs(x) < 1e-9) // removable singularity, two-term series
        return 1.0 / n + 0.5 * (n + 1.0) / n * x;
    const double t = std::pow(1.0 + x, n);
    if (std::isinf(t)) return x;
    return x * t / (t - 1.0);
}

double phi(int n, double nu, double x) {
    if (!(nu > 0.0)) throw std::invalid_argument("phi: nu must be positive");
    return nu * zeta(n, x / nu);
}

double phi_double(double phi_prev, double x) {
    const double den = 2.0 * phi_prev - x;
    if (std::abs(den) < 1e-300 * std::abs(phi_prev * phi_prev))
        throw std::runtime_error("phi_double: division blow-up (2 phi - x vanishes)");
    return phi_prev * phi_prev / den;
}

RampApproximant zeta_partial_fractions(int m) {
    if (m < 1) throw std::invalid_argument("zeta_partial_fractions: m must be positive");
    RampApproximant f;
    f.linear_slope  = 1.0;
    f.linear_offset = 0.0;
    f.real_terms.push_back({-2.0, 1.0 / m});
    for (int k = 1; k < m; ++k) {
        const Complex u = std::polar(1.0, std::numbers::pi * k / m);
        f.complex_terms.push_back({u - 1.0, (u * u - u) / static_cast<double>(m)});
    }
    f.alpha      = 1.0 / (2.0 * m);
    f.interval_a = 1.0;
    f.interval_b = kInf;
    return f;
}

double minimax_rho(double t, const MinimaxTable& table) {
    double v = table.a[0];
    for (int k = 1; k <= table.n; ++k)
        v -= table.a[static_cast<std::size_t>(k)] /
             (t + table.b[static_cast<std::size_t>(k - 1)]);
    return v;
}

double minimax_f(double x, const MinimaxTable& table) {
    return 0.5 * (minimax_rho(x * x, table) + x + table.e_n);
}

BilinearParams bilinear_params(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("bilinear_params: a and b must be positive");
    return {(b - a) / (b + a), 2.0 * a * b / (a + b)};
}

RampApproximant minimax_transformed(double a, double b, const MinimaxTable& table) {
    const auto [tau, kappa] = bilinear_params(a, b);

    RampApproximant f;
    double slope  = 1.0 + (table.e_n + table.a[0]) * tau;
    double offset = (table.e_n + table.a[0]) * kappa;
    for (int k = 1; k <= table.n; ++k) {
        const double ak = table.a[static_cast<std::size_t>(k)];
        const double bk = table.b[static_cast<std::size_t>(k - 1)];
        const double q  = 1.0 + tau * tau * bk;
        slope -= ak * tau * tau * tau / q;
        offset -= ak * kappa * tau * tau * (3.0 + tau * tau * bk) / (q * q);

        const Complex xi  = kappa * std::sqrt(bk) / (Complex(0.0, 1.0) - tau * std::sqrt(bk));
        const Complex eta = xi * xi * xi / (kappa * bk * bk);
        f.complex_terms.push_back({xi, -0.5 * ak * eta});
    }
    f.linear_slope  = 0.5 * slope;
    f.linear_offset = 0.5 * offset;
    f.alpha         = table.e_n * std::max(a, b);
    f.interval_a    = a;
    f.interval_b    = b;
    return f;
}

double gap(const RampApproximant& f, double x) {
    if (x < -f.interval_a || x > f.interval_b) {
        std::ostringstream os;
        os << "gap: x = " << x << " is outside the valid interval [" << -f.interval_a
           << ", " << f.interval_b << "]";
        throw std::invalid_argument(os.str());
    }
    return f.eval(x) - std::max(x, 0.0);
}

} // namespace pasv
