#pragma once

#include "ulam/numkernel.hpp"

#include <complex>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

namespace ulam {

// Truncated multivariate formal power series with exact rational
// coefficients. Terms above max_total_degree are dropped on every
// operation; an absent exponent tuple means coefficient zero.
class SeriesMV {
  public:
    using Key = std::vector<int>;

    SeriesMV(int nvars, int max_total_degree);

    static SeriesMV constant(int nvars, int max_total_degree, const Rational& c);
    static SeriesMV variable(int nvars, int max_total_degree, int var);

    int nvars() const { return nvars_; }
    int max_total_degree() const { return degree_; }
    std::size_t term_count() const { return coeffs_.size(); }
    const std::map<Key, Rational>& terms() const { return coeffs_; }

    Rational coefficient(std::span<const int> exps) const;
    Rational coefficient(std::initializer_list<int> exps) const;
    void set_coefficient(Key exps, Rational c);

    SeriesMV operator+(const SeriesMV& o) const;
    SeriesMV operator-(const SeriesMV& o) const;
    SeriesMV operator*(const SeriesMV& o) const;
    SeriesMV scaled(const Rational& c) const;
    // multiply by the monomial prod x_i^{shift[i]}
    SeriesMV shifted(std::span<const int> shift) const;
    SeriesMV pow(int e) const;

    bool operator==(const SeriesMV& o) const;

    double eval(std::span<const double> point) const;

  private:
    void add_term(const Key& exps, const Rational& c);

    int nvars_;
    int degree_;
    std::map<Key, Rational> coeffs_;
};

// base^(-1/2) to total degree D via the fractional binomial series;
// base must have constant term 1. The result is re-squared and
// multiplied back against base as a self-check.
SeriesMV series_sqrt_reciprocal(const SeriesMV& base, int D);

// Two-variable series of squared binomials sum C(a+b,a)^2 x^a y^b,
// obtained as (1 - 2(x+y) + (x-y)^2)^(-1/2).
SeriesMV squared_binomial_gf(int D);

// Three-variable series (x, y, z) whose coefficient of x^k y^l z^j is
// the pair-overlap array A(k,l,j): geometric series over the overlap
// count, sum_j M(x,y)^(j+1) z^j with M the squared-binomial series.
SeriesMV gf_a(int D);

// (r+1)-variable generalization (x_1..x_r, w): squared multinomials
// convolved over w-powers; r = 2 matches gf_a up to variable naming.
SeriesMV gf_a_tilde(int r, int D);

// Squared-multinomial series in r variables (coefficient of x^alpha is
// multinomial(alpha)^2), built termwise.
SeriesMV squared_multinomial_gf(int r, int D);

// CSV rows "e1,...,en,numerator,denominator" in lexicographic order.
void write_series_csv(std::ostream& os, const SeriesMV& s,
                      std::span<const std::string> var_names);

// --- contour quadrature -------------------------------------------------

struct QuadratureResult {
    std::complex<double> value{};
    bool converged = false;
    int nodes = 0;
    std::complex<double> previous{}; // estimate at half the node count
};

// Mean of F over the unit circle (trapezoid = uniform node average),
// doubling the node count from Config::quad_start_nodes until two
// successive estimates differ by less than tol in relative terms.
// Throws std::runtime_error on non-convergence, reporting both of the
// last estimates, unless allow_unconverged is set.
QuadratureResult contour_mean(const std::function<std::complex<double>(std::complex<double>)>& F,
                              double tol, int max_nodes_per_dim = 0,
                              bool allow_unconverged = false);

// Two-circle version for double coefficient extraction.
QuadratureResult contour_mean_2d(
    const std::function<std::complex<double>(std::complex<double>, std::complex<double>)>& F,
    double tol, int max_nodes_per_dim = 0, bool allow_unconverged = false);

// Mean over the unit circle of omega / sqrt(Q(omega)) with the branch
// of the square root tracked continuously along the contour (Q must
// not vanish on the circle). This is the circle form of the residue
// integral (1/2 pi i) * closed integral of dω / sqrt(Q).
QuadratureResult sqrt_reciprocal_contour(
    const std::function<std::complex<double>(std::complex<double>)>& Q,
    double tol, int max_nodes = 0);

// Diagonal extraction: two-circle integral of
// M1(x1 w1, x2 w2) * M1(y1/w1, y2/w2) over both unit circles, where
// M1(a,b) = 1/(1-a-b). Equals the squared-binomial series at
// (x1 y1, x2 y2).
QuadratureResult diagonal_pair_gf(double x1, double x2, double y1, double y2,
                                  double tol = 0.0);

// Coefficient [x^k y^l] of 1/(1-x-y) by saddle-radius double contour
// quadrature (radii k/(k+l+1) and l/(k+l+1)); equals C(k+l, k).
// Requires k, l >= 1 so both radii are positive.
QuadratureResult binomial_contour(int k, int l, double tol = 0.0);

// Positive root of sqrt(1-4r) = r (the diagonal singularity of the
// pair GF denominator), with closed-form cross-check sqrt(5) - 2 and
// the sign of the denominator just inside and outside.
struct RadiusCheck {
    double radius = 0.0;
    double err_vs_closed_form = 0.0;
    double denom_just_inside = 0.0;  // z = r - 1e-6
    double denom_just_outside = 0.0; // z = r + 1e-3
};
RadiusCheck singularity_radius_check();

} // namespace ulam
