#include "ulam/elliptic3.hpp"
#include "ulam/genfun.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

using namespace ulam;

namespace {

// plain adaptive Simpson, local to the tests
double simpson(const std::function<double(double)>& f, double a, double b, double tol,
               int depth = 40) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    std::function<double(double, double, double, double, double, double, double, int)> rec =
        [&](double x0, double x1, double f0, double f1, double fmid, double acc, double eps,
            int d) -> double {
        const double mid = 0.5 * (x0 + x1);
        const double lm = 0.5 * (x0 + mid), rm = 0.5 * (mid + x1);
        const double flm = f(lm), frm = f(rm);
        const double left = (mid - x0) / 6.0 * (f0 + 4.0 * flm + fmid);
        const double right = (x1 - mid) / 6.0 * (fmid + 4.0 * frm + f1);
        if (d <= 0 || std::fabs(left + right - acc) <= 15.0 * eps)
            return left + right + (left + right - acc) / 15.0;
        return rec(x0, mid, f0, fmid, flm, left, 0.5 * eps, d - 1) +
               rec(mid, x1, fmid, f1, frm, right, 0.5 * eps, d - 1);
    };
    return rec(a, b, fa, fb, fm, whole, tol, depth);
}

// K(k) straight from its defining integral, trig substitution
double elliptic_k_by_quadrature(double k) {
    return simpson([k](double phi) {
        const double s = std::sin(phi);
        return 1.0 / std::sqrt(1.0 - k * k * s * s);
    }, 0.0, M_PI / 2.0, 1e-13);
}

} // namespace

TEST_CASE("omega roots at equal small arguments") {
    const OmegaRoots w = omega_roots(0.1, 0.1, 0.1);
    CHECK(w.pp == doctest::Approx(10.0).epsilon(1e-13));
    CHECK(w.pm == doctest::Approx(0.1).epsilon(1e-13));
    CHECK(w.pp * w.pm == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(w.mp * w.mm == doctest::Approx(1.0).epsilon(1e-13));
    CHECK((0.0 < w.pm && w.pm < w.mm && w.mm < 1.0 && 1.0 < w.mp && w.mp < w.pp));
}

TEST_CASE("omega roots kill their quadratics") {
    const double x1 = 0.12, x2 = 0.07, x3 = 0.09;
    const OmegaRoots w = omega_roots(x1, x2, x3);
    CHECK(std::abs(quadratic_q_sigma(x1, x2, x3, +1, w.pp)) < 1e-10);
    CHECK(std::abs(quadratic_q_sigma(x1, x2, x3, +1, w.pm)) < 1e-10);
    CHECK(std::abs(quadratic_q_sigma(x1, x2, x3, -1, w.mp)) < 1e-10);
    CHECK(std::abs(quadratic_q_sigma(x1, x2, x3, -1, w.mm)) < 1e-10);
}

TEST_CASE("omega domain errors") {
    CHECK_THROWS_AS(omega_roots(0.1, 0.1, 0.0), std::domain_error);
    CHECK_THROWS_AS(omega_roots(0.995, 0.0, 0.01), std::domain_error);
}

TEST_CASE("complete elliptic integral") {
    CHECK(elliptic_k(0.0) == doctest::Approx(M_PI / 2.0).epsilon(1e-15));
    CHECK(elliptic_k(0.5) == doctest::Approx(elliptic_k_by_quadrature(0.5)).epsilon(1e-10));
    CHECK(elliptic_k(0.9) == doctest::Approx(elliptic_k_by_quadrature(0.9)).epsilon(1e-10));
    double prev = elliptic_k(0.0);
    for (int i = 1; i <= 99; ++i) {
        const double cur = elliptic_k(0.01 * i);
        REQUIRE(cur > prev);
        prev = cur;
    }
    CHECK_THROWS_AS(elliptic_k(1.0), std::domain_error);
}

TEST_CASE("quartic equals the product of its quadratics") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double w = uni(rng);
        const auto lhs = quartic_q(0.1, 0.07, 0.12, w);
        const auto rhs = quadratic_q_sigma(0.1, 0.07, 0.12, +1, w) *
                         quadratic_q_sigma(0.1, 0.07, 0.12, -1, w);
        REQUIRE(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("closed form against the defining series") {
    CHECK(m3_elliptic(0.0, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    const double closed = m3_elliptic(0.1, 0.1, 0.1);
    const double series = m3_series(0.01, 0.01, 0.01, 40);
    CHECK(std::fabs(closed - series) < 1e-8);
    const double closed2 = m3_elliptic(0.05, 0.12, 0.09);
    const double series2 = m3_series(0.0025, 0.0144, 0.0081, 40);
    CHECK(std::fabs(closed2 - series2) < 1e-8);
}

TEST_CASE("third variable to zero recovers the pair closed form") {
    CHECK(std::fabs(m3_elliptic(0.15, 0.05, 1e-9) - m2_closed_form(0.0225, 0.0025)) < 1e-10);
    CHECK(std::fabs(m3_elliptic(0.2, 0.1, 0.0) - m2_closed_form(0.04, 0.01)) < 1e-15);
    // removable singularity: approaching along x3 stays continuous
    CHECK(std::fabs(m3_elliptic(0.1, 0.1, 1e-4) - m2_closed_form(0.01, 0.01)) < 1e-6);
}

TEST_CASE("modulus vanishes in the two-variable specialization") {
    CHECK(modulus_specialization(0.2, 0.3) == 0.0);
    CHECK(modulus_specialization(0.05, 0.41) == 0.0);
    CHECK(kappa_tau(0.1, 0.2, 0.0, +1) == kappa_tau(0.1, 0.2, 0.0, -1));
    // product-of-roots form vs difference-of-squares form
    const double z1 = 0.01, z2 = 0.04;
    const double diff = std::sqrt(1.0 - 2.0 * (z1 + z2) + (z1 - z2) * (z1 - z2));
    CHECK(std::fabs(kappa_tau(0.1, 0.2, 0.0, +1) - diff) < 1e-14);
}

TEST_CASE("full permutation symmetry") {
    const double base = m3_elliptic(0.05, 0.1, 0.15);
    const double perms[5][3] = {{0.05, 0.15, 0.1},
                                {0.1, 0.05, 0.15},
                                {0.1, 0.15, 0.05},
                                {0.15, 0.05, 0.1},
                                {0.15, 0.1, 0.05}};
    for (const auto& p : perms)
        REQUIRE(std::fabs(m3_elliptic(p[0], p[1], p[2]) - base) < 1e-12);
}

TEST_CASE("contour integral over the quartic matches the K-form") {
    for (const double x : {0.05, 0.1, 0.15}) {
        const auto q = sqrt_reciprocal_contour(
            [x](std::complex<double> w) { return quartic_q(x, x, x, w); }, 1e-12);
        REQUIRE(q.converged);
        REQUIRE(std::fabs(q.value.real() - m3_elliptic(x, x, x)) < 1e-8);
        REQUIRE(std::fabs(q.value.imag()) < 1e-10);
    }
    const auto mixed = sqrt_reciprocal_contour(
        [](std::complex<double> w) { return quartic_q(0.13, 0.06, 0.1, w); }, 1e-12);
    CHECK(std::fabs(mixed.value.real() - m3_elliptic(0.13, 0.06, 0.1)) < 1e-8);
}

TEST_CASE("factorization record") {
    const EllipticFactorization f = factorization(0.1, 0.1, 0.1);
    CHECK(f.modulus >= 0.0);
    CHECK(f.modulus < 1.0);
    CHECK(f.prefactor * elliptic_k(f.modulus) ==
          doctest::Approx(m3_elliptic(0.1, 0.1, 0.1)).epsilon(1e-14));
    CHECK(f.omegas.pp == doctest::Approx(10.0).epsilon(1e-13));
    CHECK(kappa_tau(0.1, 0.1, 0.1, +1) == doctest::Approx(f.kappa_plus).epsilon(1e-15));
}
