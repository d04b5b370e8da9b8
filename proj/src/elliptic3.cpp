#include "ulam/elliptic3.hpp"
#include "ulam/numkernel.hpp"

#include <cmath>
#include <stdexcept>

namespace ulam {

std::complex<double> quadratic_q_sigma(double x1, double x2, double x3, int sigma,
                                       std::complex<double> w) {
    if (sigma != 1 && sigma != -1) throw std::invalid_argument("quadratic_q_sigma: sigma is +-1");
    const double d = x1 - sigma * x2;
    return (1.0 - x3 * w) * (w - x3) - d * d * w;
}

std::complex<double> quartic_q(double x1, double x2, double x3, std::complex<double> w) {
    return quadratic_q_sigma(x1, x2, x3, +1, w) * quadratic_q_sigma(x1, x2, x3, -1, w);
}

namespace {

double omega_root(double x1, double x2, double x3, int sigma, int tau) {
    const double d = x1 - sigma * x2;
    const double r_plus = (1.0 + x3) * (1.0 + x3) - d * d;
    const double r_minus = (1.0 - x3) * (1.0 - x3) - d * d;
    if (r_plus < 0.0 || r_minus < 0.0)
        throw std::domain_error("omega_roots: negative radicand");
    const double s = std::sqrt(r_plus) + tau * std::sqrt(r_minus);
    return s * s / (4.0 * x3);
}

} // namespace

OmegaRoots omega_roots(double x1, double x2, double x3) {
    if (x3 <= 0.0)
        throw std::domain_error("omega_roots: x3 must be positive (use the x3=0 specialization)");
    OmegaRoots r;
    r.pp = omega_root(x1, x2, x3, +1, +1);
    r.pm = omega_root(x1, x2, x3, +1, -1);
    r.mp = omega_root(x1, x2, x3, -1, +1);
    r.mm = omega_root(x1, x2, x3, -1, -1);
    return r;
}

double elliptic_k(double k) {
    if (k < 0.0 || k >= 1.0) throw std::domain_error("elliptic_k: need 0 <= k < 1");
    double a = 1.0;
    double b = std::sqrt(1.0 - k * k);
    // target gap 1e-16*a sits below one ulp, so also stop once the
    // iteration reaches its floating-point fixed point
    for (int i = 0; i < 64 && std::fabs(a - b) >= 1e-16 * a; ++i) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        if (an == a && bn == b) break;
        a = an;
        b = bn;
    }
    return M_PI / (2.0 * a);
}

double kappa_tau(double x1, double x2, double x3, int tau) {
    if (tau != 1 && tau != -1) throw std::invalid_argument("kappa_tau: tau is +-1");
    double prod = 1.0;
    for (int s1 = -1; s1 <= 1; s1 += 2)
        for (int s2 = -1; s2 <= 1; s2 += 2)
            for (int s3 = -1; s3 <= 1; s3 += 2) {
                if (s1 * s2 * s3 != tau) continue;
                const double arg = 1.0 + s1 * x1 + s2 * x2 + s3 * x3;
                if (arg <= 0.0) throw std::domain_error("kappa_tau: argument outside domain");
                prod *= std::sqrt(arg);
            }
    return prod;
}

double modulus(double x1, double x2, double x3) {
    const double sp = std::sqrt(kappa_tau(x1, x2, x3, +1));
    const double sm = std::sqrt(kappa_tau(x1, x2, x3, -1));
    const double ratio = (sp - sm) / (sp + sm);
    return ratio * ratio;
}

double modulus_specialization(double x1, double x2) {
    return modulus(x1, x2, 0.0);
}

EllipticFactorization factorization(double x1, double x2, double x3) {
    EllipticFactorization f;
    f.x1 = x1;
    f.x2 = x2;
    f.x3 = x3;
    f.kappa_plus = kappa_tau(x1, x2, x3, +1);
    f.kappa_minus = kappa_tau(x1, x2, x3, -1);
    const double sp = std::sqrt(f.kappa_plus);
    const double sm = std::sqrt(f.kappa_minus);
    const double ratio = (sp - sm) / (sp + sm);
    f.modulus = ratio * ratio;
    f.prefactor = 8.0 / (M_PI * (sp + sm) * (sp + sm));
    if (x3 > 0.0) f.omegas = omega_roots(x1, x2, x3);
    return f;
}

double m2_closed_form(double z1, double z2) {
    const double q = (1.0 - (z1 + z2)) * (1.0 - (z1 + z2)) - 4.0 * z1 * z2;
    if (q <= 0.0) throw std::domain_error("m2_closed_form: outside the domain of convergence");
    return 1.0 / std::sqrt(q);
}

double m3_elliptic(double x1, double x2, double x3) {
    // Removable singularity at x3 = 0: the root formula divides by 4 x3,
    // but the diagonal itself degenerates to the two-variable form.
    if (std::fabs(x3) < 1e-8) return m2_closed_form(x1 * x1, x2 * x2);
    const double sp = std::sqrt(kappa_tau(x1, x2, x3, +1));
    const double sm = std::sqrt(kappa_tau(x1, x2, x3, -1));
    const double ratio = (sp - sm) / (sp + sm);
    const double k = ratio * ratio;
    const double pref = 8.0 / (M_PI * (sp + sm) * (sp + sm));
    return pref * elliptic_k(k);
}

double m3_series(double z1, double z2, double z3, int max_degree) {
    double acc = 0.0;
    for (int total = 0; total <= max_degree; ++total) {
        double layer = 0.0;
        for (int a = 0; a <= total; ++a)
            for (int b = 0; b + a <= total; ++b) {
                const int c = total - a - b;
                const BigInt m = multinomial({a, b, c});
                const double md = m.convert_to<double>();
                layer += md * md * std::pow(z1, a) * std::pow(z2, b) * std::pow(z3, c);
            }
        acc += layer;
    }
    return acc;
}

} // namespace ulam
