#pragma once

#include <span>

namespace ulam {

// Large-deviation rate functions for the pair-overlap array and the
// second moment, together with the optimization oracle they are
// audited against. Normalization convention: rate_a is per N for
// A(kappa N, lambda N, gamma N); moment rates are per n^(1/2) with
// k ~ kappa n^(1/2). Every report row states its normalization.

struct RateQuery {
    double kappa = 0.0;
    double lambda = 0.0;
    double gamma = 0.0;
};

// Saddle location on the (sign-corrected) singular variety
// z^2 = 1 - 2(x+y) + (x-y)^2.
struct SaddleTriple {
    double x = 0.0, y = 0.0, z = 0.0;
    double variety_residual() const;
};

enum class RateForm { xyz, hform, symmetric };

double psi_entropy(double x);   // -x ln x, continuous 0 at x = 0
double h_entropy(double theta); // psi(theta) + psi(1 - theta)

// lim n^(-1/2) ln E[Z_{n,k}] = 2 kappa (1 - ln kappa) for k ~ kappa sqrt(n).
double first_moment_rate(double kappa);

SaddleTriple saddle_xyz(const RateQuery& q); // requires kappa, lambda, gamma > 0

// lim N^(-1) ln A(kappa N, lambda N, gamma N) in three equivalent
// forms: the saddle logarithms, the entropy rewrite (rho = gamma /
// (2(kappa+lambda))), and the symmetric special case (requires
// kappa == lambda, rho = gamma/(4 kappa)). gamma = 0 is handled as the
// continuous limit.
double rate_a(const RateQuery& q, RateForm form);

// Unique P in (0, 1/4) with 8P / ((1-2P)(1-4P)) = kappa.
double solve_p_symmetric(double kappa);

// Unique P in (0, sin^2(theta)/2) for the mixed-moment implicit
// equation, after canonicalizing lambda <= kappa.
double solve_p_asymmetric(double kappa, double lambda);

struct VaradhanResult {
    double value = 0.0;      // maximized rate of the overlap decomposition
    double gamma_star = 0.0; // optimal overlap density (0 when boundary)
};

// Ground truth for the second-moment rate: maximize over the overlap
// gamma in (0, min(kappa, lambda)) the rate of
// E[Z_{n,k+l-j}] * A(k-j, l-j, j), i.e.
// first_moment_rate(kappa+lambda-gamma) + rate_a(kappa-g, lambda-g, g).
// Golden-section refinement to |d gamma| < 1e-10 after a coarse scan.
VaradhanResult varadhan_second_moment(double kappa, double lambda);

// Residual of the stationarity condition of the Varadhan objective at
// overlap g for kappa = lambda; zero iff
// (2k-g)^4 (k-g)^4 = g (4k-3g)^3.
double varadhan_foc_residual(double kappa, double g);

// A stated closed form audited against the optimization oracle. The
// stated value is evaluated verbatim and never adjusted; disagreement
// is surfaced as a discrepancy, not an error.
struct RateResult {
    double stated_value = 0.0;
    double stated_value_alt = 0.0; // second algebraic form, when stated
    double p = 0.0;                // implicit-equation solution used
    double oracle_value = 0.0;
    double optimizer_gamma = 0.0;
    double discrepancy = 0.0;      // |stated - oracle|
    bool has_alt = false;
};

RateResult ld_second_moment_stated(double kappa);              // symmetric closed form
RateResult ld_mixed_stated(double kappa, double lambda);       // asymmetric closed form

// Finite-N saddle sequence diagnostics for the symmetric diagonal
// extraction: the pinned radii t_N, s_N, the denominator scalings, and
// the limit identity -2k ln t* - g ln s* = rate_a(k, k, g).
struct SaddleSequence {
    double t_n = 0.0, s_n = 0.0;
    double t_star = 0.0, s_star = 0.0;
    double denom = 0.0;            // sqrt(1 - 4 t_N) - s_N
    double numer = 0.0;            // sqrt(1 - 4 t_N) + s_N
    double rationalized = 0.0;     // 1 - 4 t_N - s_N^2
    double n_times_rationalized = 0.0; // -> 2/(4 kappa + gamma)
    double denom_scaling = 0.0;        // denom * sqrt(gamma (4k+g)) * N -> 1
    double limit_identity_lhs = 0.0;   // -2 kappa ln t* - gamma ln s*
    double limit_identity_rhs = 0.0;   // rate_a(kappa, kappa, gamma)
};
SaddleSequence saddle_sequence(double kappa, double gamma, long long n);

// exact multinomial over its Stirling-type asymptotic form,
// (2pi)^(-(r-1)/2) (sum)^(sum+1/2) / prod part^(part+1/2); parts >= 1.
double multinomial_stirling_ratio(std::span<const long long> parts);
double multinomial_stirling_ratio(std::initializer_list<long long> parts);

} // namespace ulam
