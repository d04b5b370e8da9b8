#include "ulam/ratefun.hpp"
#include "ulam/config.hpp"
#include "ulam/numkernel.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace ulam {

namespace {

constexpr double kGoldenTol = 1e-10;

double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        std::ostringstream msg;
        msg.precision(16);
        msg << "root not bracketed: f(" << lo << ") = " << flo << ", f(" << hi
            << ") = " << fhi;
        throw std::runtime_error(msg.str());
    }
    for (int i = 0; i < config().bisect_max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (fhi > 0.0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
        }
        if (hi - lo <= config().bisect_tol * std::max(1.0, std::fabs(lo))) break;
    }
    return 0.5 * (lo + hi);
}

// Golden-section maximization on [lo, hi] for a unimodal bracket.
double golden_max(const std::function<double(double)>& f, double lo, double hi) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > kGoldenTol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

double psi_entropy(double x) {
    if (x < 0.0) throw std::domain_error("psi_entropy: negative argument");
    return x == 0.0 ? 0.0 : -x * std::log(x);
}

double h_entropy(double theta) {
    if (theta < 0.0 || theta > 1.0) throw std::domain_error("h_entropy: theta in [0,1]");
    return psi_entropy(theta) + psi_entropy(1.0 - theta);
}

double first_moment_rate(double kappa) {
    if (kappa <= 0.0) throw std::domain_error("first_moment_rate: kappa > 0");
    return 2.0 * kappa * (1.0 - std::log(kappa));
}

double SaddleTriple::variety_residual() const {
    return std::fabs(z * z - (1.0 - 2.0 * (x + y) + (x - y) * (x - y)));
}

SaddleTriple saddle_xyz(const RateQuery& q) {
    if (q.kappa <= 0.0 || q.lambda <= 0.0 || q.gamma <= 0.0)
        throw std::domain_error("saddle_xyz: kappa, lambda, gamma > 0");
    const double k = q.kappa, l = q.lambda, g = q.gamma;
    const double s1 = k + l + g;
    const double s2 = 2.0 * k + 2.0 * l + g;
    SaddleTriple t;
    t.x = k * (2.0 * k + g) / (s1 * s2);
    t.y = l * (2.0 * l + g) / (s1 * s2);
    t.z = std::sqrt(g * (2.0 * k + g) * (2.0 * l + g) / s2) / s1;
    return t;
}

double rate_a(const RateQuery& q, RateForm form) {
    const double k = q.kappa, l = q.lambda, g = q.gamma;
    if (k <= 0.0 || l <= 0.0 || g < 0.0)
        throw std::domain_error("rate_a: kappa, lambda > 0 and gamma >= 0");
    switch (form) {
    case RateForm::xyz: {
        if (g == 0.0) {
            // saddle degenerates to Z = 0; the gamma ln Z term vanishes
            return 2.0 * ((k + l) * std::log(k + l) - k * std::log(k) - l * std::log(l));
        }
        const SaddleTriple t = saddle_xyz(q);
        return -k * std::log(t.x) - l * std::log(t.y) - g * std::log(t.z);
    }
    case RateForm::hform: {
        const double sum = k + l;
        const double rho = g / (2.0 * sum);
        const double c = k / sum;
        const double mix = ((1.0 + rho) * c + rho * (1.0 - c)) / (1.0 + 2.0 * rho);
        const double half = h_entropy(0.5); // ln 2
        const double per_sum = 2.0 * std::log(2.0) - psi_entropy(1.0 + rho) + psi_entropy(rho) +
                               h_entropy(c) - half +
                               (1.0 + 2.0 * rho) * (h_entropy(mix) - half);
        return sum * per_sum;
    }
    case RateForm::symmetric: {
        if (k != l)
            throw std::invalid_argument("rate_a: symmetric form requires kappa == lambda");
        const double rho = g / (4.0 * k);
        const double per_2k = 2.0 * std::log(2.0) +
                              (rho == 0.0 ? 0.0
                                          : (1.0 + rho) * std::log(1.0 + rho) - rho * std::log(rho));
        return 2.0 * k * per_2k;
    }
    }
    throw std::logic_error("rate_a: unknown form");
}

double solve_p_symmetric(double kappa) {
    if (kappa <= 0.0) throw std::domain_error("solve_p_symmetric: kappa > 0");
    // left side increases from 0 to +inf on (0, 1/4)
    auto f = [&](double p) { return 8.0 * p / ((1.0 - 2.0 * p) * (1.0 - 4.0 * p)) - kappa; };
    return bisect(f, 1e-15, 0.25 - 1e-15);
}

double solve_p_asymmetric(double kappa, double lambda) {
    if (kappa <= 0.0 || lambda <= 0.0)
        throw std::domain_error("solve_p_asymmetric: kappa, lambda > 0");
    if (lambda > kappa) std::swap(kappa, lambda); // canonical lambda <= kappa
    const double sum = kappa + lambda;
    const double sin2 = lambda / sum;
    const double cos2 = kappa / sum;
    const double cos2theta = cos2 - sin2;
    const double target = std::pow(sum / 4.0, 4);
    auto f = [&](double p) {
        const double a = 1.0 - 2.0 * p;
        const double b = 1.0 - 3.0 * p;
        const double c = 1.0 - 4.0 * p;
        const double d1 = a * a - cos2theta * cos2theta;
        const double d2 = c * c - cos2theta * cos2theta;
        return p * b * b * b / (a * a * d1 * d2 * d2) - target;
    };
    return bisect(f, 1e-15, sin2 / 2.0 - 1e-15);
}

double varadhan_foc_residual(double kappa, double g) {
    if (kappa <= 0.0 || g <= 0.0 || g >= kappa)
        throw std::domain_error("varadhan_foc_residual: need 0 < g < kappa");
    return 4.0 * std::log(2.0 * kappa - g) + 4.0 * std::log(kappa - g) - std::log(g) -
           3.0 * std::log(4.0 * kappa - 3.0 * g);
}

VaradhanResult varadhan_second_moment(double kappa, double lambda) {
    if (kappa <= 0.0 || lambda <= 0.0)
        throw std::domain_error("varadhan_second_moment: kappa, lambda > 0");
    const double gmax = std::min(kappa, lambda);
    auto objective = [&](double g) {
        return first_moment_rate(kappa + lambda - g) +
               rate_a({kappa - g, lambda - g, g}, RateForm::xyz);
    };
    // overlap 0 sector: independent subsequences
    const double endpoint = first_moment_rate(kappa) + first_moment_rate(lambda);

    const int scan = 512;
    int best = -1;
    double best_val = endpoint;
    for (int i = 0; i < scan; ++i) {
        const double g = gmax * (i + 0.5) / scan;
        const double v = objective(g);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    VaradhanResult out;
    if (best < 0) {
        out.value = endpoint;
        out.gamma_star = 0.0;
        return out;
    }
    const double eps = gmax * 1e-12;
    const double lo = std::max(eps, gmax * (best - 0.5) / scan);
    const double hi = std::min(gmax - eps, gmax * (best + 1.5) / scan);
    out.gamma_star = golden_max(objective, lo, hi);
    out.value = objective(out.gamma_star);
    if (out.value < endpoint) {
        out.value = endpoint;
        out.gamma_star = 0.0;
    }
    return out;
}

RateResult ld_second_moment_stated(double kappa) {
    RateResult r;
    const double p = solve_p_symmetric(kappa);
    r.p = p;
    r.stated_value = 2.0 * kappa *
                     (2.0 - 4.0 * p - 6.0 * std::log(2.0) + std::log(1.0 - 4.0 * p) -
                      2.0 * std::log(p));
    r.stated_value_alt = 2.0 * kappa *
                         (2.0 * (1.0 - std::log(kappa)) - 4.0 * p -
                          2.0 * std::log(1.0 - 2.0 * p) - std::log(1.0 - 4.0 * p));
    r.has_alt = true;
    const VaradhanResult v = varadhan_second_moment(kappa, kappa);
    r.oracle_value = v.value;
    r.optimizer_gamma = v.gamma_star;
    r.discrepancy = std::fabs(r.stated_value - r.oracle_value);
    return r;
}

RateResult ld_mixed_stated(double kappa, double lambda) {
    if (lambda > kappa) std::swap(kappa, lambda);
    const double sum = kappa + lambda;
    const double sin2 = lambda / sum;
    const double cos2 = kappa / sum;
    const double cos2theta = cos2 - sin2;

    RateResult r;
    const double p = solve_p_asymmetric(kappa, lambda);
    r.p = p;
    const double per_sum =
        2.0 * (1.0 - 2.0 * p) - 2.0 * std::log(2.0) - 0.5 * std::log(p) -
        0.5 * std::log(1.0 - 3.0 * p) - 2.0 * p * std::log(1.0 - 4.0 * p) +
        0.5 * cos2theta * std::log((2.0 * sin2 - 2.0 * p) / (2.0 * cos2 - 2.0 * p)) +
        sin2 * std::log(2.0 * cos2 - 4.0 * p) + cos2 * std::log(2.0 * sin2 - 4.0 * p);
    r.stated_value = sum * per_sum;
    const VaradhanResult v = varadhan_second_moment(kappa, lambda);
    r.oracle_value = v.value;
    r.optimizer_gamma = v.gamma_star;
    r.discrepancy = std::fabs(r.stated_value - r.oracle_value);
    return r;
}

SaddleSequence saddle_sequence(double kappa, double gamma, long long n) {
    if (kappa <= 0.0 || gamma <= 0.0 || n < 1)
        throw std::domain_error("saddle_sequence: kappa, gamma > 0 and N >= 1");
    const double denom4 = 4.0 * kappa + gamma;
    SaddleSequence s;
    s.t_star = kappa / denom4;
    s.s_star = std::sqrt(gamma / denom4);
    const double invn = 1.0 / static_cast<double>(n);
    s.t_n = s.t_star - kappa / (denom4 * denom4) * invn;
    s.s_n = s.s_star - (2.0 * kappa + gamma) / (std::sqrt(gamma) * std::pow(denom4, 1.5)) * invn;
    const double root = std::sqrt(1.0 - 4.0 * s.t_n);
    s.denom = root - s.s_n;
    s.numer = root + s.s_n;
    s.rationalized = 1.0 - 4.0 * s.t_n - s.s_n * s.s_n;
    s.n_times_rationalized = static_cast<double>(n) * s.rationalized;
    s.denom_scaling = s.denom * std::sqrt(gamma * denom4) * static_cast<double>(n);
    s.limit_identity_lhs = -2.0 * kappa * std::log(s.t_star) - gamma * std::log(s.s_star);
    s.limit_identity_rhs = rate_a({kappa, kappa, gamma}, RateForm::xyz);
    return s;
}

double multinomial_stirling_ratio(std::span<const long long> parts) {
    if (parts.empty()) throw std::invalid_argument("multinomial_stirling_ratio: empty parts");
    long long total = 0;
    for (long long p : parts) {
        if (p < 1) throw std::invalid_argument("multinomial_stirling_ratio: parts >= 1");
        total += p;
    }
    const double exact_log = log_multinomial(parts);
    double asym_log = -0.5 * (static_cast<double>(parts.size()) - 1.0) * std::log(2.0 * M_PI) +
                      (static_cast<double>(total) + 0.5) * std::log(static_cast<double>(total));
    for (long long p : parts)
        asym_log -= (static_cast<double>(p) + 0.5) * std::log(static_cast<double>(p));
    return std::exp(exact_log - asym_log);
}

double multinomial_stirling_ratio(std::initializer_list<long long> parts) {
    return multinomial_stirling_ratio(std::span<const long long>(parts.begin(), parts.size()));
}

} // namespace ulam
