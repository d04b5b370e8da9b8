#include "ulam/solvable.hpp"
#include "ulam/config.hpp"
#include "ulam/ulam_exact.hpp" // ResourceError

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace ulam {

double expect_n(int n, int k, double t) {
    if (k < 1 || k > n) throw std::domain_error("expect_n: need 1 <= k <= n");
    if (t < 0.0) throw std::domain_error("expect_n: t >= 0");
    const double count = binomial(n, k).convert_to<double>();
    return count * boost::math::gamma_p(static_cast<double>(k), t);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// xorshift-style generator with a fixed layout so streams do not depend
// on the standard library's distribution internals.
struct SampleRng {
    std::uint64_t state;
    explicit SampleRng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next_u64() {
        state = splitmix64(state);
        return state;
    }
    double next_uniform() { // in (0, 1)
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }
    double next_exponential() { return -std::log(next_uniform()); }
};

// Count k-subsets of the ascending array xs with sum <= t.
// prefix[i] = xs[0] + ... + xs[i-1].
long long count_subsets(const std::vector<double>& xs, const std::vector<double>& prefix,
                        int k, double t, long long& nodes, long long node_cap) {
    const int n = static_cast<int>(xs.size());
    long long count = 0;
    std::function<void(int, int, double)> dfs = [&](int lo, int need, double sum) {
        if (need == 0) {
            ++count;
            return;
        }
        if (lo + need > n) return;
        // if even the `need` largest remaining values fit, every
        // size-`need` subset of the suffix does
        if (sum + (prefix[static_cast<std::size_t>(n)] -
                   prefix[static_cast<std::size_t>(n - need)]) <= t) {
            count += binomial(n - lo, need).convert_to<long long>();
            return;
        }
        for (int i = lo; i + need <= n; ++i) {
            if (++nodes > node_cap)
                throw ResourceError("mc_n: backtracking node cap exceeded");
            // cheapest completion starting at i; later i only costs more
            const double cheapest = sum + (prefix[static_cast<std::size_t>(i + need)] -
                                           prefix[static_cast<std::size_t>(i)]);
            if (cheapest > t) break;
            dfs(i + 1, need - 1, sum + xs[static_cast<std::size_t>(i)]);
        }
    };
    dfs(0, k, 0.0);
    return count;
}

} // namespace

McResult mc_n(int n, int k, double t, long long samples, unsigned long long seed) {
    if (n < 1 || n > config().mc_max_n || k < 1 || k > std::min(n, config().mc_max_k))
        throw std::domain_error("mc_n: n or k outside the configured caps");
    if (samples < 1) throw std::domain_error("mc_n: need at least one sample");
    if (t < 0.0) throw std::domain_error("mc_n: t >= 0");

    double sum = 0.0, sumsq = 0.0;
    std::vector<double> xs(static_cast<std::size_t>(n));
    std::vector<double> prefix(static_cast<std::size_t>(n) + 1);
    for (long long s = 0; s < samples; ++s) {
        SampleRng rng(splitmix64(seed ^ (0xA0761D6478BD642FULL * static_cast<std::uint64_t>(s + 1))));
        for (double& x : xs) x = rng.next_exponential();
        std::sort(xs.begin(), xs.end());
        prefix[0] = 0.0;
        for (int i = 0; i < n; ++i) prefix[static_cast<std::size_t>(i + 1)] =
            prefix[static_cast<std::size_t>(i)] + xs[static_cast<std::size_t>(i)];
        long long nodes = 0; // budget is per sample
        const long long c = count_subsets(xs, prefix, k, t, nodes, config().mc_node_cap);
        sum += static_cast<double>(c);
        sumsq += static_cast<double>(c) * static_cast<double>(c);
    }
    McResult r;
    r.samples = samples;
    r.mean = sum / static_cast<double>(samples);
    if (samples > 1) {
        const double var = (sumsq - sum * sum / static_cast<double>(samples)) /
                           static_cast<double>(samples - 1);
        r.stderr_mean = std::sqrt(std::max(var, 0.0) / static_cast<double>(samples));
    }
    return r;
}

double f_m_sum(int m, double z) {
    if (m < 1) throw std::domain_error("f_m_sum: m >= 1");
    if (z <= 0.0) throw std::domain_error("f_m_sum: z > 0");
    double acc = 0.0;
    for (int l = 1; l <= m; ++l)
        acc += binomial(m, l).convert_to<double>() * std::pow(z, l) / static_cast<double>(l);
    return acc;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

} // namespace

double f_m_integral(double m, double z) {
    if (z <= 0.0) throw std::domain_error("f_m_integral: z > 0");
    auto integrand = [m](double y) {
        if (y < 1e-12) return m; // limit of ((1+y)^m - 1)/y at 0
        return (std::pow(1.0 + y, m) - 1.0) / y;
    };
    return integrate(integrand, 0.0, z, 1e-13);
}

double ReplicaSolution::kappa_constraint_residual() const {
    double acc = 0.0;
    for (int l = 1; l <= m; ++l)
        acc += binomial(m - 1, l - 1).convert_to<double>() * kappa_l[static_cast<std::size_t>(l - 1)];
    return std::fabs(acc - kappa);
}

double ReplicaSolution::t_constraint_residual() const {
    double acc = 0.0;
    for (int l = 1; l <= m; ++l)
        acc += binomial(m - 1, l - 1).convert_to<double>() * tau_l[static_cast<std::size_t>(l - 1)];
    return std::fabs(acc - t);
}

ReplicaSolution solve_z(int m, double kappa, double t) {
    if (m < 1) throw std::domain_error("solve_z: m >= 1");
    if (kappa <= 0.0 || t <= 0.0) throw std::domain_error("solve_z: kappa, t > 0");
    const double target = kappa * std::sqrt(static_cast<double>(m)) / std::sqrt(t);
    auto lhs = [&](double z) {
        return (std::pow(1.0 + z, m) - 1.0) / std::sqrt(f_m_sum(m, z));
    };
    // lhs increases from 0 (z -> 0) without bound, so the target is
    // always attainable for integer m; bracket by doubling.
    double lo = 1e-300, hi = 1.0;
    int guard = 0;
    while (lhs(hi) < target) {
        hi *= 2.0;
        if (++guard > 4000)
            throw std::runtime_error("solve_z: could not bracket the root; attainable "
                                     "supremum appears below the target");
    }
    for (int i = 0; i < config().bisect_max_iter; ++i) {
        const double mid = std::sqrt(lo * hi); // geometric: z spans many scales
        if (lhs(mid) < target) lo = mid;
        else hi = mid;
        if (hi - lo <= 1e-15 * hi) break;
    }
    ReplicaSolution sol;
    sol.m = m;
    sol.kappa = kappa;
    sol.t = t;
    sol.z = 0.5 * (lo + hi);
    const double f = f_m_sum(m, sol.z);
    const double kfac = std::sqrt(static_cast<double>(m) * t / f);
    sol.kappa_l.resize(static_cast<std::size_t>(m));
    sol.tau_l.resize(static_cast<std::size_t>(m));
    for (int l = 1; l <= m; ++l) {
        const double zl = std::pow(sol.z, l);
        sol.kappa_l[static_cast<std::size_t>(l - 1)] = kfac * zl / static_cast<double>(l);
        sol.tau_l[static_cast<std::size_t>(l - 1)] =
            static_cast<double>(m) * t / f * zl / (static_cast<double>(l) * static_cast<double>(l));
    }
    sol.ld_value = replica_moment_ld(sol);
    return sol;
}

double replica_constrained_sum(const ReplicaSolution& sol) {
    double acc = 0.0;
    for (int l = 1; l <= sol.m; ++l) {
        const double kl = sol.kappa_l[static_cast<std::size_t>(l - 1)];
        const double tl = sol.tau_l[static_cast<std::size_t>(l - 1)];
        acc += binomial(sol.m, l).convert_to<double>() *
               kl * (2.0 - 2.0 * std::log(kl) + std::log(tl));
    }
    return acc;
}

double replica_moment_ld(const ReplicaSolution& sol) {
    const double f = f_m_sum(sol.m, sol.z);
    const double v = std::sqrt(static_cast<double>(sol.m) * sol.t / f) *
                     (2.0 * f - std::log(sol.z) * (std::pow(1.0 + sol.z, sol.m) - 1.0));
    const double v2 = replica_constrained_sum(sol);
    if (std::fabs(v - v2) > 1e-10 * std::max(1.0, std::fabs(v)))
        throw std::logic_error("replica_moment_ld: ansatz forms disagree");
    return v;
}

double dilog(double x) {
    if (x > 1.0) throw std::domain_error("dilog: x <= 1");
    constexpr double pi2_6 = M_PI * M_PI / 6.0;
    if (x == 1.0) return pi2_6;
    if (x == -1.0) return -pi2_6 / 2.0;
    if (x == 0.0) return 0.0;
    if (x < -1.0) {
        // Li2(x) + Li2(1/x) = -pi^2/6 - ln^2(-x)/2
        const double lx = std::log(-x);
        return -pi2_6 - 0.5 * lx * lx - dilog(1.0 / x);
    }
    if (x > 0.5) {
        // Li2(x) + Li2(1-x) = pi^2/6 - ln(x) ln(1-x)
        return pi2_6 - std::log(x) * std::log1p(-x) - dilog(1.0 - x);
    }
    if (x < -0.5) {
        // Landen: Li2(x) = -Li2(x/(x-1)) - ln^2(1-x)/2
        const double l1x = std::log1p(-x);
        return -dilog(x / (x - 1.0)) - 0.5 * l1x * l1x;
    }
    // series sum x^l / l^2 on |x| <= 1/2
    double term = x, acc = x;
    for (int l = 2; l < 200; ++l) {
        term *= x;
        const double add = term / (static_cast<double>(l) * static_cast<double>(l));
        acc += add;
        if (std::fabs(add) < 1e-17 * std::fabs(acc)) break;
    }
    return acc;
}

namespace {

// -Li2(-z) for z = exp(u), stable for any u.
double neg_dilog_neg_exp(double u) {
    if (u > 36.0) {
        // inversion formula; Li2(-exp(-u)) is below double noise for huge u
        return M_PI * M_PI / 6.0 + 0.5 * u * u + dilog(-std::exp(-u));
    }
    return -dilog(-std::exp(u));
}

double log1p_exp(double u) { // ln(1 + exp(u))
    if (u > 36.0) return u + std::exp(-u);
    return std::log1p(std::exp(u));
}

} // namespace

ReplicaZeroResult replica_to_zero(double kappa, double t) {
    if (kappa <= 0.0 || t <= 0.0) throw std::domain_error("replica_to_zero: kappa, t > 0");
    const double target = kappa / std::sqrt(t);
    const double sqrt2 = std::sqrt(2.0);
    if (target >= sqrt2)
        throw std::domain_error(
            "replica_to_zero: kappa/sqrt(t) >= sqrt(2) is infeasible; there are no "
            "partitions into that many distinct parts with that budget");
    auto lhs = [&](double u) { return log1p_exp(u) / std::sqrt(neg_dilog_neg_exp(u)); };
    double lo = -745.0; // exp(lo) underflows; lhs ~ exp(u/2) -> 0
    double hi = 1.0;
    int guard = 0;
    while (lhs(hi) < target) {
        hi *= 2.0;
        if (++guard > 64)
            throw std::runtime_error("replica_to_zero: bracket expansion failed");
    }
    for (int i = 0; i < 2 * config().bisect_max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (lhs(mid) < target) lo = mid;
        else hi = mid;
        if (hi - lo <= 1e-13 * std::max(1.0, std::fabs(hi))) break;
    }
    const double u = 0.5 * (lo + hi);
    const double d = neg_dilog_neg_exp(u);
    ReplicaZeroResult r;
    r.z = std::exp(u);
    r.value = std::sqrt(t / d) * (2.0 * d - u * log1p_exp(u));
    return r;
}

PartitionTables partition_counts(int max_n, int max_k) {
    if (max_n < 0 || max_k < 0) throw std::domain_error("partition_counts: nonnegative bounds");
    const long long cells = 2LL * (max_n + 1) * (max_k + 1);
    if (cells > config().partition_cell_cap)
        throw ResourceError("partition_counts: table beyond cell cap");

    PartitionTables tabs;
    tabs.max_n = max_n;
    tabs.max_k = max_k;
    tabs.rho.assign(static_cast<std::size_t>(max_n) + 1,
                    std::vector<BigInt>(static_cast<std::size_t>(max_k) + 1, BigInt(0)));
    tabs.p = tabs.rho;
    tabs.rho[0][0] = 1;
    tabs.p[0][0] = 1;
    for (int n = 1; n <= max_n; ++n)
        for (int k = 1; k <= max_k; ++k) {
            // distinct parts: strip one from each part
            if (n >= k)
                tabs.rho[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] =
                    tabs.rho[static_cast<std::size_t>(n - k)][static_cast<std::size_t>(k)] +
                    tabs.rho[static_cast<std::size_t>(n - k)][static_cast<std::size_t>(k - 1)];
            // unrestricted: smallest part 1, or strip one from each
            BigInt v = tabs.p[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k - 1)];
            if (n >= k) v += tabs.p[static_cast<std::size_t>(n - k)][static_cast<std::size_t>(k)];
            tabs.p[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] = std::move(v);
        }
    // shift identity between the two tables, across every cell
    for (int k = 0; k <= max_k; ++k) {
        const long long shift = static_cast<long long>(k) * (k - 1) / 2;
        for (int n = 0; n <= max_n; ++n) {
            const BigInt expected = (n - shift >= 0)
                ? tabs.p[static_cast<std::size_t>(n - shift)][static_cast<std::size_t>(k)]
                : BigInt(0);
            if (tabs.rho[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] != expected)
                throw std::logic_error("partition_counts: shift identity violated");
        }
    }
    return tabs;
}

std::vector<std::vector<BigInt>> partition_gf_table(int max_n, int max_k) {
    std::vector<std::vector<BigInt>> coeff(
        static_cast<std::size_t>(max_n) + 1,
        std::vector<BigInt>(static_cast<std::size_t>(max_k) + 1, BigInt(0)));
    coeff[0][0] = 1;
    for (int i = 1; i <= max_n; ++i) {
        // multiply by (1 + q^i z), truncating above (max_n, max_k)
        for (int n = max_n; n >= i; --n)
            for (int k = max_k; k >= 1; --k)
                coeff[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] +=
                    coeff[static_cast<std::size_t>(n - i)][static_cast<std::size_t>(k - 1)];
    }
    return coeff;
}

PoissonCheck poisson_ld_check(double kappa) {
    if (kappa <= 0.0) throw std::domain_error("poisson_ld_check: kappa > 0");
    auto value = [&](double t) { return kappa * std::log(t / kappa) - t + kappa; };
    // coarse grid, then golden refinement around the best point
    const int grid = 400;
    double best_t = kappa, best_v = value(kappa);
    for (int i = 1; i <= grid; ++i) {
        const double t = kappa * (4.0 * i / grid);
        const double v = value(t);
        if (v > best_v) {
            best_v = v;
            best_t = t;
        }
    }
    constexpr double invphi = 0.6180339887498949;
    double a = best_t * 0.5, b = best_t * 1.5;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = value(c), fd = value(d);
    while (b - a > 1e-12 * kappa) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - invphi * (b - a);
            fc = value(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + invphi * (b - a);
            fd = value(d);
        }
    }
    PoissonCheck out;
    out.t_star = 0.5 * (a + b);
    out.max_value = value(out.t_star);
    if (std::fabs(out.t_star - kappa) > 1e-6 * kappa || std::fabs(out.max_value) > 1e-10)
        throw std::logic_error("poisson_ld_check: maximum is not at t = kappa with value 0");
    return out;
}

} // namespace ulam
