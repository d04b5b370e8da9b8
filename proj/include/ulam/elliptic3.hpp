#pragma once

#include <complex>

namespace ulam {

// Closed form of the three-variable squared-multinomial generating
// function: a quartic contour integrand whose root structure reduces
// the diagonal to a complete elliptic integral of the first kind.

struct OmegaRoots {
    double pp = 0.0; // sigma=+1, tau=+1
    double pm = 0.0; // sigma=+1, tau=-1
    double mp = 0.0; // sigma=-1, tau=+1
    double mm = 0.0; // sigma=-1, tau=-1
};

struct EllipticFactorization {
    double x1 = 0.0, x2 = 0.0, x3 = 0.0;
    double kappa_plus = 0.0;  // product of sqrt(1 + s1 x1 + s2 x2 + s3 x3), s1 s2 s3 = +1
    double kappa_minus = 0.0; // same with s1 s2 s3 = -1
    double modulus = 0.0;     // elliptic modulus k
    double prefactor = 0.0;   // 8 / (pi (sqrt(kp) + sqrt(km))^2)
    OmegaRoots omegas;
};

// The quartic under the square root of the diagonal contour integrand,
// and its two quadratic factors (sigma = +-1).
std::complex<double> quartic_q(double x1, double x2, double x3, std::complex<double> w);
std::complex<double> quadratic_q_sigma(double x1, double x2, double x3, int sigma,
                                       std::complex<double> w);

// Roots of the two quadratics; requires x3 > 0 (the formula divides by
// 4 x3) and nonnegative radicands. Products obey pp*pm = mp*mm = 1.
OmegaRoots omega_roots(double x1, double x2, double x3);

// Complete elliptic integral of the first kind K(k), 0 <= k < 1, by
// arithmetic-geometric mean iteration; relative error ~1e-15.
double elliptic_k(double k);

double kappa_tau(double x1, double x2, double x3, int tau);
double modulus(double x1, double x2, double x3);

// k(x1, x2, 0): the two kappa products coincide by symmetry, so this
// is exactly zero.
double modulus_specialization(double x1, double x2);

EllipticFactorization factorization(double x1, double x2, double x3);

// Value of sum multinomial(a+b+c;a,b,c)^2 z1^a z2^b z3^c at z_i = x_i^2,
// i.e. the prefactor times K(modulus). x3 below 1e-8 routes to the
// two-variable closed form (the root formula divides by 4 x3 there).
double m3_elliptic(double x1, double x2, double x3);

// Two-variable closed form 1/sqrt((1-(z1+z2))^2 - 4 z1 z2).
double m2_closed_form(double z1, double z2);

// Independent oracle: direct truncated summation of the defining
// series at (z1, z2, z3), exact multinomials rounded to double.
double m3_series(double z1, double z2, double z3, int max_degree);

} // namespace ulam
