#include "pasv/ramp.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

using namespace pasv;

namespace {

double ramp(double x) { return std::max(x, 0.0); }

std::vector<double> lin_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return g;
}

// dense scan grid for [0, 1] that resolves the boundary layer near 0
std::vector<double> sqrt_scan_grid() {
    std::vector<double> g{0.0};
    for (int i = 0; i <= 50000; ++i) g.push_back(std::pow(10.0, -9.0 + 9.0 * i / 50000.0));
    for (double t : lin_grid(0.0, 1.0, 50000)) g.push_back(t);
    g.push_back(1.0);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    while (g.back() > 1.0) g.pop_back();
    return g;
}

} // namespace

TEST_CASE("zeta: n = 1 is x + 1") {
    CHECK(zeta(1, 0.5) == doctest::Approx(1.5));
    for (double x : {-1.0, -0.3, 0.0, 2.0, 9.9})
        CHECK(zeta(1, x) == doctest::Approx(1.0 + x).epsilon(1e-12));
}

TEST_CASE("zeta: boundary and limit values") {
    for (int n : {1, 2, 5, 16}) {
        CHECK(zeta(n, -1.0) == doctest::Approx(0.0));
        CHECK(zeta(n, 0.0) == doctest::Approx(1.0 / n));
    }
}

TEST_CASE("zeta: zeta_2(2) = 9/4") {
    CHECK(zeta(2, 2.0) == doctest::Approx(2.25));
}

TEST_CASE("zeta: domain error below -1") {
    CHECK_THROWS_AS(zeta(3, -1.0001), std::invalid_argument);
    CHECK_THROWS_AS(zeta(0, 0.5), std::invalid_argument);
}

TEST_CASE("zeta: monotone increasing on [-1, inf)") {
    for (int n : {1, 3, 8}) {
        double prev = zeta(n, -1.0);
        for (double x : lin_grid(-0.999, 12.0, 2000)) {
            const double v = zeta(n, x);
            CHECK(v >= prev - 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("zeta: sandwich 0 <= zeta_n - ramp <= 1/n") {
    for (int n : {1, 2, 4, 8, 16}) {
        for (double x : lin_grid(-1.0, 10.0, 10000)) {
            const double g = zeta(n, x) - ramp(x);
            CHECK(g >= -1e-12);
            CHECK(g <= 1.0 / n + 1e-12);
        }
    }
}

TEST_CASE("phi: phi_1(x) = x + nu and phi_n(0) = nu / n") {
    for (double nu : {0.5, 1.0, 2.0}) {
        for (double x : {-nu, 0.0, 1.0, 7.0})
            CHECK(phi(1, nu, x) == doctest::Approx(x + nu).epsilon(1e-12));
        for (int n : {1, 2, 4, 8})
            CHECK(phi(n, nu, 0.0) == doctest::Approx(nu / n));
    }
}

TEST_CASE("phi: closed form of phi_2") {
    const double nu = 1.5;
    for (double x : lin_grid(-nu + 1e-6, 8.0, 200)) {
        const double want = (x + nu) * (x + nu) / (x + 2.0 * nu);
        CHECK(phi(2, nu, x) == doctest::Approx(want).epsilon(1e-12));
        CHECK(phi_double(phi(1, nu, x), x) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("phi_double: doubling recurrence holds for n in {1,2,4}, nu in {0.5,1,2}") {
    for (double nu : {0.5, 1.0, 2.0}) {
        for (int n : {1, 2, 4}) {
            for (double x : lin_grid(-nu * (1.0 - 1e-9), 10.0, 3000)) {
                const double lhs = phi(2 * n, nu, x);
                const double rhs = phi_double(phi(n, nu, x), x);
                CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs)));
            }
        }
    }
}

TEST_CASE("zeta_partial_fractions: m = 1 is x + 1/(x+2)") {
    RampApproximant f = zeta_partial_fractions(1);
    CHECK(f.complex_terms.empty());
    REQUIRE(f.real_terms.size() == 1);
    CHECK(f.real_terms[0].pole == doctest::Approx(-2.0));
    CHECK(f.real_terms[0].residue == doctest::Approx(1.0));
    CHECK(f.alpha == doctest::Approx(0.5));
    for (double x : lin_grid(-1.0, 10.0, 500))
        CHECK(f.eval(x) == doctest::Approx(zeta(2, x)).epsilon(1e-12));
}

TEST_CASE("zeta_partial_fractions: m = 2 matches zeta_4 on a grid") {
    RampApproximant f = zeta_partial_fractions(2);
    REQUIRE(f.complex_terms.size() == 1);
    CHECK(std::abs(f.complex_terms[0].pole - Complex(-1.0, 1.0)) <= 1e-14);
    CHECK(std::abs(f.complex_terms[0].residue - Complex(-0.5, -0.5)) <= 1e-14);
    for (double x : lin_grid(-0.999, 10.0, 4000)) {
        const double want = zeta(4, x);
        CHECK(std::abs(f.eval(x) - want) <= 1e-10 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("zeta_partial_fractions: m = 5 matches zeta_10 and has 1 + 4 pairs of poles") {
    RampApproximant f = zeta_partial_fractions(5);
    CHECK(f.real_terms.size() == 1);
    CHECK(f.complex_terms.size() == 4);
    CHECK(f.denominator_degree() == 9);
    for (const auto& t : f.complex_terms) CHECK(std::abs(t.pole.imag()) > 1e-12);
    for (double x : lin_grid(-0.999, 10.0, 4000)) {
        const double want = zeta(10, x);
        CHECK(std::abs(f.eval(x) - want) <= 1e-10 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("zeta_partial_fractions: scaled family reproduces nu * zeta_2m(x / nu)") {
    const double    nu = 1.7;
    RampApproximant f = zeta_partial_fractions(3).scaled(nu);
    CHECK(f.alpha == doctest::Approx(nu / 6.0));
    CHECK(f.interval_a == doctest::Approx(nu));
    for (double x : lin_grid(-nu + 1e-9, 10.0, 2000)) {
        const double want = nu * zeta(6, x / nu);
        CHECK(std::abs(f.eval(x) - want) <= 1e-10 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("minimax_rho: endpoint equioscillation values") {
    const MinimaxTable& t = MinimaxTable::n4();
    CHECK(std::abs(minimax_rho(0.0, t) - t.e_n) <= 2e-5);
    CHECK(std::abs(minimax_rho(1.0, t) - 1.0 + t.e_n) <= 2e-5);
}

TEST_CASE("minimax_rho: sup error over [0, 1] sits in the published window") {
    const MinimaxTable& t = MinimaxTable::n4();
    double              worst = 0.0;
    for (double x : sqrt_scan_grid())
        worst = std::max(worst, std::abs(minimax_rho(x, t) - std::sqrt(x)));
    CHECK(worst >= 0.00072);
    CHECK(worst <= 0.00076);
}

TEST_CASE("minimax_rho: equioscillation with at least 9 sign changes") {
    const MinimaxTable& t = MinimaxTable::n4();
    const auto          grid = sqrt_scan_grid();
    int                 changes = 0;
    double              prev = minimax_rho(grid[0], t) - std::sqrt(grid[0]);
    double              extremum = std::abs(prev);
    std::vector<double> extrema;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double e = minimax_rho(grid[i], t) - std::sqrt(grid[i]);
        if ((e > 0) != (prev > 0)) {
            ++changes;
            extrema.push_back(extremum);
            extremum = 0.0;
        }
        extremum = std::max(extremum, std::abs(e));
        prev = e;
    }
    extrema.push_back(extremum);
    CHECK(changes >= 9);
    for (double mag : extrema) CHECK(std::abs(mag - t.e_n) <= 0.05 * t.e_n);
}

TEST_CASE("minimax table: asymptotic order of magnitude") {
    const MinimaxTable& t = MinimaxTable::n4();
    const double asym = 8.0 * std::exp(-std::numbers::pi * std::sqrt(8.0));
    CHECK(t.e_n <= 2.0 * asym);
    CHECK(t.e_n >= 0.5 * asym);
}

TEST_CASE("minimax table: poles intertwine on the negative axis") {
    const MinimaxTable& t = MinimaxTable::n4();
    for (std::size_t k = 0; k + 1 < t.b.size(); ++k) CHECK(t.b[k] < t.b[k + 1]);
    for (double b : t.b) CHECK(b > 0.0);
    for (std::size_t k = 1; k < t.a.size(); ++k) CHECK(t.a[k] > 0.0);
}

TEST_CASE("minimax_f: gap stays within [0, E_n] on [-1, 1]") {
    const MinimaxTable& t = MinimaxTable::n4();
    // the 10-digit table coefficients hold the lower bound only to ~5e-11
    const double table_rounding = 1e-10;
    CHECK(std::abs(minimax_f(0.0, t) - t.e_n) <= 2e-5);
    CHECK(minimax_f(1.0, t) - 1.0 >= -table_rounding);
    CHECK(minimax_f(1.0, t) - 1.0 <= t.e_n + table_rounding);
    CHECK(minimax_f(-1.0, t) >= -table_rounding);
    CHECK(minimax_f(-1.0, t) <= t.e_n + table_rounding);
    for (double x : lin_grid(-1.0, 1.0, 1000)) {
        const double g = minimax_f(x, t) - ramp(x);
        CHECK(g >= -table_rounding);
        CHECK(g <= t.e_n + table_rounding);
    }
}

TEST_CASE("bilinear_params: symmetric interval is the identity scale") {
    auto [tau, kappa] = bilinear_params(1.0, 1.0);
    CHECK(tau == doctest::Approx(0.0));
    CHECK(kappa == doctest::Approx(1.0));
}

TEST_CASE("bilinear_params: endpoints map to endpoints") {
    auto [tau, kappa] = bilinear_params(2.0, 1.0);
    CHECK(tau == doctest::Approx(-1.0 / 3.0));
    CHECK(kappa == doctest::Approx(4.0 / 3.0));
    auto map = [&](double x) { return x / (tau * x + kappa); };
    CHECK(map(-2.0) == doctest::Approx(-1.0));
    CHECK(map(1.0) == doctest::Approx(1.0));
}

TEST_CASE("bilinear_params: tau x + kappa stays positive on [-a, b]") {
    std::vector<std::pair<double, double>> cases = {
        {0.3, 4.0}, {2.0, 2.0}, {17.0, 0.1}, {1e-3, 5.0}};
    for (auto [a, b] : cases) {
        auto [tau, kappa] = bilinear_params(a, b);
        for (double x : lin_grid(-a, b, 500)) CHECK(tau * x + kappa > 0.0);
    }
}

TEST_CASE("minimax_transformed: grid equality with the composed definition") {
    const MinimaxTable& t = MinimaxTable::n4();
    for (auto [a, b] : std::vector<std::pair<double, double>>{
             {1.0, 1.0}, {2.0, 1.0}, {0.4, 3.7}, {2.7, 2.7}}) {
        RampApproximant f = minimax_transformed(a, b, t);
        auto [tau, kappa] = bilinear_params(a, b);
        CHECK(f.complex_terms.size() == 4);
        CHECK(f.real_terms.empty());
        CHECK(f.denominator_degree() == 8);
        CHECK(f.alpha == doctest::Approx(t.e_n * std::max(a, b)));
        for (double x : lin_grid(-a, b, 3000)) {
            const double u = tau * x + kappa;
            const double want = u * minimax_f(x / u, t);
            CHECK(std::abs(f.eval(x) - want) <= 1e-9 * (1.0 + std::abs(want)));
        }
    }
}

TEST_CASE("minimax_transformed: symmetric case reduces to kappa f(x / kappa)") {
    const MinimaxTable& t = MinimaxTable::n4();
    const double a = 2.0;
    RampApproximant f = minimax_transformed(a, a, t);
    CHECK(f.linear_slope == doctest::Approx(0.5));
    for (const auto& term : f.complex_terms) {
        // poles are purely imaginary when tau = 0
        CHECK(std::abs(term.pole.real()) <= 1e-12 * std::abs(term.pole));
    }
    for (double x : lin_grid(-a, a, 1000)) {
        const double want = a * minimax_f(x / a, t);
        CHECK(std::abs(f.eval(x) - want) <= 1e-10 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("minimax_transformed: endpoint gaps obey the scaled bound") {
    const MinimaxTable& t = MinimaxTable::n4();
    for (auto [a, b] : std::vector<std::pair<double, double>>{{1.5, 0.5}, {0.5, 4.0}}) {
        RampApproximant f = minimax_transformed(a, b, t);
        for (double x : {-a, b}) {
            const double g = gap(f, x);
            CHECK(g >= -1e-10);
            CHECK(g <= t.e_n * std::max(a, b) + 1e-10);
        }
    }
}

TEST_CASE("gap: shift approximant has gap nu on the positive axis") {
    RampApproximant f;
    f.linear_slope  = 1.0;
    f.linear_offset = 0.75; // f(x) = x + nu
    f.alpha         = 0.75;
    f.interval_a    = 0.75;
    f.interval_b    = 10.0;
    for (double x : {0.0, 0.3, 7.0}) CHECK(gap(f, x) == doctest::Approx(0.75));
    CHECK(gap(f, -0.5) == doctest::Approx(0.25));
    CHECK_THROWS_AS(gap(f, -1.0), std::invalid_argument);
}

TEST_CASE("gap: minimax approximant stays within [0, alpha] at interior points") {
    RampApproximant f = minimax_transformed(1.2, 2.3, MinimaxTable::n4());
    for (double x : lin_grid(-1.2, 2.3, 400)) {
        const double g = gap(f, x);
        CHECK(g >= -1e-10);
        CHECK(g <= f.alpha + 1e-10);
    }
}

TEST_CASE("gap: zeta family is nonnegative at the left endpoint") {
    RampApproximant f = zeta_partial_fractions(3).scaled(2.0);
    CHECK(gap(f, -f.interval_a) >= -1e-12);
}

TEST_CASE("scaled: nu must be positive") {
    CHECK_THROWS_AS(zeta_partial_fractions(2).scaled(0.0), std::invalid_argument);
    CHECK_THROWS_AS(zeta_partial_fractions(0), std::invalid_argument);
    CHECK_THROWS_AS(phi(2, -1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(bilinear_params(0.0, 1.0), std::invalid_argument);
}
