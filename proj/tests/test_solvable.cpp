#include "ulam/solvable.hpp"
#include "ulam/ulam_exact.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>

using namespace ulam;

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, double tol,
               int depth = 40) {
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
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    return rec(a, b, fa, fb, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

} // namespace

TEST_CASE("expected count closed forms") {
    for (const double t : {0.3, 1.0, 2.7}) {
        CHECK(expect_n(5, 1, t) == doctest::Approx(5.0 * (1.0 - std::exp(-t))).epsilon(1e-12));
        CHECK(expect_n(2, 2, t) ==
              doctest::Approx(1.0 - std::exp(-t) * (1.0 + t)).epsilon(1e-12));
    }
    CHECK(expect_n(5, 2, 0.0) == 0.0);
    CHECK_THROWS_AS(expect_n(3, 4, 1.0), std::domain_error);
    CHECK_THROWS_AS(expect_n(3, 2, -1.0), std::domain_error);
}

TEST_CASE("Monte Carlo counting") {
    const McResult zero = mc_n(5, 2, 0.0, 500, 1);
    CHECK(zero.mean == 0.0);
    CHECK(zero.stderr_mean == 0.0);

    // huge budget admits every subset, variance collapses
    const McResult all = mc_n(5, 2, 1e9, 500, 1);
    CHECK(all.mean == 10.0);
    CHECK(all.stderr_mean == 0.0);

    const McResult mc = mc_n(5, 2, 1.0, 100000, 42);
    const double exact = expect_n(5, 2, 1.0);
    CHECK(std::fabs(mc.mean - exact) <= 3.0 * mc.stderr_mean);

    // deterministic for a fixed seed
    const McResult again = mc_n(5, 2, 1.0, 100000, 42);
    CHECK(mc.mean == again.mean);
    CHECK(mc.stderr_mean == again.stderr_mean);
    const McResult other = mc_n(5, 2, 1.0, 100000, 43);
    CHECK(mc.mean != other.mean);

    CHECK_THROWS_AS(mc_n(50, 2, 1.0, 10, 1), std::domain_error);
    CHECK_THROWS_AS(mc_n(20, 9, 1.0, 10, 1), std::domain_error);
}

TEST_CASE("Monte Carlo within four standard errors across 200 seeds") {
    const double exact = expect_n(10, 3, 1.0);
    int within = 0;
    for (int seed = 0; seed < 200; ++seed) {
        const McResult mc = mc_n(10, 3, 1.0, 2000, static_cast<unsigned long long>(seed));
        if (std::fabs(mc.mean - exact) <= 4.0 * mc.stderr_mean) ++within;
    }
    CHECK(within >= 198); // >= 99%
}

TEST_CASE("overlap weight function") {
    CHECK(f_m_sum(1, 0.8) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(f_m_sum(2, 1.0) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(f_m_integral(3.0, 0.7) == doctest::Approx(f_m_sum(3, 0.7)).epsilon(1e-11));
    CHECK(f_m_integral(2.0, 1.3) == doctest::Approx(f_m_sum(2, 1.3)).epsilon(1e-11));
    // real order interpolates between the neighbouring integer orders
    const double mid = f_m_integral(2.5, 0.9);
    CHECK(mid > f_m_sum(2, 0.9));
    CHECK(mid < f_m_sum(3, 0.9));
}

TEST_CASE("replica critical point") {
    const ReplicaSolution unit = solve_z(1, 1.0, 1.0);
    CHECK(unit.z == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(unit.kappa_l[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(unit.tau_l[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(unit.ld_value == doctest::Approx(2.0).epsilon(1e-12));

    for (const double kap : {0.5, 1.0, 1.7})
        for (const double t : {0.6, 1.0, 2.5}) {
            const ReplicaSolution s = solve_z(1, kap, t);
            REQUIRE(s.z == doctest::Approx(kap * kap / t).epsilon(1e-11));
            REQUIRE(s.ld_value ==
                    doctest::Approx(kap * (2.0 - 2.0 * std::log(kap) + std::log(t)))
                        .epsilon(1e-11));
        }

    for (int m = 1; m <= 4; ++m) {
        const ReplicaSolution s = solve_z(m, 1.0, 1.0);
        REQUIRE(s.kappa_constraint_residual() < 1e-10);
        REQUIRE(s.t_constraint_residual() < 1e-10);
        // implicit equation residual
        const double lhs = (std::pow(1.0 + s.z, m) - 1.0) / std::sqrt(f_m_sum(m, s.z));
        REQUIRE(std::fabs(lhs - std::sqrt(static_cast<double>(m))) < 1e-12);
        for (double v : s.kappa_l) REQUIRE(v > 0.0);
        for (double v : s.tau_l) REQUIRE(v > 0.0);
    }

    // Cauchy-Schwarz at rate level
    CHECK(solve_z(2, 1.0, 1.0).ld_value >= 2.0 * solve_z(1, 1.0, 1.0).ld_value - 1e-12);
    CHECK_THROWS_AS(solve_z(0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("ansatz value equals the constrained-sum form") {
    for (int m = 1; m <= 4; ++m) {
        const ReplicaSolution s = solve_z(m, 0.8, 1.4);
        REQUIRE(std::fabs(replica_moment_ld(s) - replica_constrained_sum(s)) <
                1e-10 * std::max(1.0, std::fabs(s.ld_value)));
    }
}

TEST_CASE("dilogarithm") {
    CHECK(dilog(1.0) == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-15));
    CHECK(dilog(-1.0) == doctest::Approx(-M_PI * M_PI / 12.0).epsilon(1e-15));
    CHECK(dilog(0.5) ==
          doctest::Approx(M_PI * M_PI / 12.0 - 0.5 * std::log(2.0) * std::log(2.0))
              .epsilon(1e-14));
    // integral oracle at a negative argument outside the series range
    const double quad = -simpson([](double u) {
        return u < 1e-14 ? 1.0 : std::log1p(u) / u;
    }, 0.0, 3.0, 1e-13);
    CHECK(dilog(-3.0) == doctest::Approx(quad).epsilon(1e-11));
    CHECK_THROWS_AS(dilog(1.5), std::domain_error);
}

TEST_CASE("replica-to-zero continuation") {
    // left side of the defining equation: increasing, capped at sqrt(2)
    double prev = 0.0;
    for (int i = 0; i <= 90; ++i) {
        const double z = std::pow(10.0, -3.0 + i * 0.1);
        const double v = std::log1p(z) / std::sqrt(-dilog(-z));
        REQUIRE(v > prev);
        REQUIRE(v < std::sqrt(2.0));
        prev = v;
    }

    const ReplicaZeroResult tiny = replica_to_zero(0.001, 1.0);
    CHECK(tiny.z < 1e-5);

    const ReplicaZeroResult unit = replica_to_zero(1.0, 1.0);
    CHECK(unit.z == doctest::Approx(3.0757).epsilon(1e-3));
    CHECK(unit.value == doctest::Approx(1.68656).epsilon(1e-4));
    // solution satisfies its implicit equation
    CHECK(std::log1p(unit.z) / std::sqrt(-dilog(-unit.z)) ==
          doctest::Approx(1.0).epsilon(1e-10));

    // z grows monotonically toward the feasibility boundary and the
    // value stays finite there
    double zprev = 0.0;
    for (const double kap : {0.5, 0.9, 1.2, 1.35, 1.41}) {
        const ReplicaZeroResult r = replica_to_zero(kap, 1.0);
        REQUIRE(r.z > zprev);
        REQUIRE(std::isfinite(r.value));
        REQUIRE(r.value > 0.0);
        zprev = r.z;
    }
    CHECK_THROWS_AS(replica_to_zero(std::sqrt(2.0), 1.0), std::domain_error);
    CHECK_THROWS_AS(replica_to_zero(2.0, 1.0), std::domain_error);
}

TEST_CASE("distinct-part counts trend toward the replica-to-zero value") {
    // the continuation predicts the growth rate of the number of ways
    // to build a unit sum from the near-minimal order statistics; the
    // distinct-part partition count approaches it slowly from below
    const PartitionTables tabs = partition_counts(200, 15);
    const double target = replica_to_zero(1.0, 1.0).value;
    double prev_err = 1e9;
    for (const int root : {5, 8, 10, 12, 14}) {
        const double v =
            log_bigint(tabs.rho[static_cast<std::size_t>(root * root)]
                               [static_cast<std::size_t>(root)]) /
            static_cast<double>(root);
        const double err = std::fabs(v - target);
        REQUIRE(err < prev_err);
        prev_err = err;
    }
}

TEST_CASE("partition tables") {
    const PartitionTables tabs = partition_counts(60, 8);
    CHECK(tabs.rho[9][3] == 3);  // {6,2,1}, {5,3,1}, {4,3,2}
    CHECK(tabs.p[6][3] == 3);    // {4,1,1}, {3,2,1}, {2,2,2}
    CHECK(tabs.rho[10][4] == 1); // only {4,3,2,1}
    for (int k = 1; k <= 8; ++k)
        for (int n = 0; n < k * (k + 1) / 2 && n <= 60; ++n)
            REQUIRE(tabs.rho[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] == 0);

    const auto gf = partition_gf_table(60, 8);
    for (int n = 0; n <= 60; ++n)
        for (int k = 0; k <= 8; ++k)
            REQUIRE(gf[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] ==
                    tabs.rho[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)]);

    CHECK_THROWS_AS(partition_counts(100000, 100000), ResourceError);
}

TEST_CASE("poisson-scale rate maximizes to zero at t = kappa") {
    for (const double kap : {1.0, 2.0, 0.3}) {
        const PoissonCheck pc = poisson_ld_check(kap);
        REQUIRE(pc.t_star == doctest::Approx(kap).epsilon(1e-6));
        REQUIRE(std::fabs(pc.max_value) < 1e-10);
        const double off = kap * std::log(2.0) - 2.0 * kap + kap;
        REQUIRE(off < 0.0); // strictly below the peak at t = 2 kappa
    }
}
