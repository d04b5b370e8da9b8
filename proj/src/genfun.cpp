#include "ulam/genfun.hpp"
#include "ulam/config.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ulam {

namespace {

int total_degree(const SeriesMV::Key& exps) {
    return std::accumulate(exps.begin(), exps.end(), 0);
}

} // namespace

SeriesMV::SeriesMV(int nvars, int max_total_degree)
    : nvars_(nvars), degree_(max_total_degree) {
    if (nvars < 1) throw std::invalid_argument("SeriesMV: need at least one variable");
    if (max_total_degree < 0) throw std::invalid_argument("SeriesMV: negative degree bound");
}

SeriesMV SeriesMV::constant(int nvars, int max_total_degree, const Rational& c) {
    SeriesMV s(nvars, max_total_degree);
    if (c != 0) s.coeffs_.emplace(Key(static_cast<std::size_t>(nvars), 0), c);
    return s;
}

SeriesMV SeriesMV::variable(int nvars, int max_total_degree, int var) {
    if (var < 0 || var >= nvars) throw std::invalid_argument("SeriesMV: variable index");
    SeriesMV s(nvars, max_total_degree);
    if (max_total_degree >= 1) {
        Key k(static_cast<std::size_t>(nvars), 0);
        k[static_cast<std::size_t>(var)] = 1;
        s.coeffs_.emplace(std::move(k), Rational(1));
    }
    return s;
}

Rational SeriesMV::coefficient(std::span<const int> exps) const {
    if (static_cast<int>(exps.size()) != nvars_)
        throw std::invalid_argument("SeriesMV: exponent arity mismatch");
    Key k(exps.begin(), exps.end());
    const auto it = coeffs_.find(k);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

Rational SeriesMV::coefficient(std::initializer_list<int> exps) const {
    return coefficient(std::span<const int>(exps.begin(), exps.size()));
}

void SeriesMV::set_coefficient(Key exps, Rational c) {
    if (static_cast<int>(exps.size()) != nvars_)
        throw std::invalid_argument("SeriesMV: exponent arity mismatch");
    if (total_degree(exps) > degree_) return;
    if (c == 0) coeffs_.erase(exps);
    else coeffs_[std::move(exps)] = std::move(c);
}

void SeriesMV::add_term(const Key& exps, const Rational& c) {
    if (total_degree(exps) > degree_ || c == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(exps, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
}

SeriesMV SeriesMV::operator+(const SeriesMV& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("SeriesMV: arity mismatch");
    SeriesMV r(nvars_, std::min(degree_, o.degree_));
    for (const auto& [k, c] : coeffs_) r.add_term(k, c);
    for (const auto& [k, c] : o.coeffs_) r.add_term(k, c);
    return r;
}

SeriesMV SeriesMV::operator-(const SeriesMV& o) const {
    return *this + o.scaled(Rational(-1));
}

SeriesMV SeriesMV::operator*(const SeriesMV& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("SeriesMV: arity mismatch");
    SeriesMV r(nvars_, std::min(degree_, o.degree_));
    Key sum(static_cast<std::size_t>(nvars_));
    for (const auto& [ka, ca] : coeffs_) {
        const int da = total_degree(ka);
        for (const auto& [kb, cb] : o.coeffs_) {
            if (da + total_degree(kb) > r.degree_) continue;
            for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = ka[i] + kb[i];
            r.add_term(sum, ca * cb);
        }
    }
    return r;
}

SeriesMV SeriesMV::scaled(const Rational& c) const {
    SeriesMV r(nvars_, degree_);
    if (c == 0) return r;
    for (const auto& [k, v] : coeffs_) r.coeffs_.emplace(k, v * c);
    return r;
}

SeriesMV SeriesMV::shifted(std::span<const int> shift) const {
    if (static_cast<int>(shift.size()) != nvars_)
        throw std::invalid_argument("SeriesMV: shift arity mismatch");
    SeriesMV r(nvars_, degree_);
    Key k2(static_cast<std::size_t>(nvars_));
    for (const auto& [k, v] : coeffs_) {
        for (std::size_t i = 0; i < k2.size(); ++i) k2[i] = k[i] + shift[i];
        r.add_term(k2, v);
    }
    return r;
}

SeriesMV SeriesMV::pow(int e) const {
    if (e < 0) throw std::invalid_argument("SeriesMV: negative power");
    SeriesMV r = constant(nvars_, degree_, Rational(1));
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

bool SeriesMV::operator==(const SeriesMV& o) const {
    return nvars_ == o.nvars_ && coeffs_ == o.coeffs_;
}

double SeriesMV::eval(std::span<const double> point) const {
    if (static_cast<int>(point.size()) != nvars_)
        throw std::invalid_argument("SeriesMV: eval arity mismatch");
    double acc = 0.0;
    for (const auto& [k, c] : coeffs_) {
        double term = c.convert_to<double>();
        for (std::size_t i = 0; i < k.size(); ++i)
            term *= std::pow(point[i], k[i]);
        acc += term;
    }
    return acc;
}

SeriesMV series_sqrt_reciprocal(const SeriesMV& base, int D) {
    const SeriesMV::Key zero(static_cast<std::size_t>(base.nvars()), 0);
    if (base.coefficient(std::span<const int>(zero.data(), zero.size())) != 1)
        throw std::invalid_argument("series_sqrt_reciprocal: constant term must be 1");

    const SeriesMV one = SeriesMV::constant(base.nvars(), D, Rational(1));
    SeriesMV u = base;           // u = base - 1, min degree >= 1
    u = u - one;
    SeriesMV result = one;
    SeriesMV upow = one;
    Rational coeff(1);
    for (int m = 1; m <= D; ++m) {
        upow = upow * u;
        if (upow.term_count() == 0) break;
        // binom(-1/2, m) = (-1)^m C(2m,m) / 4^m
        coeff = Rational(binomial(2 * m, m), BigInt(1) << (2 * m));
        if (m % 2 != 0) coeff = -coeff;
        result = result + upow.scaled(coeff);
    }
    // (result^2) * base must be 1 within the truncation degree
    const SeriesMV check = result * result * base;
    if (!(check == one))
        throw std::logic_error("series_sqrt_reciprocal: self-check failed");
    return result;
}

SeriesMV squared_binomial_gf(int D) {
    // 1 - 2(x+y) + (x-y)^2
    SeriesMV q = SeriesMV::constant(2, D, Rational(1));
    q.set_coefficient({1, 0}, Rational(-2));
    q.set_coefficient({0, 1}, Rational(-2));
    q.set_coefficient({2, 0}, Rational(1));
    q.set_coefficient({1, 1}, Rational(-2));
    q.set_coefficient({0, 2}, Rational(1));
    return series_sqrt_reciprocal(q, D);
}

SeriesMV gf_a(int D) {
    // Embed the squared-binomial series into (x, y, z) and sum the
    // geometric powers: 1/(1/M - z) = sum_j M^(j+1) z^j.
    SeriesMV m2(3, D);
    {
        const SeriesMV planar = squared_binomial_gf(D);
        for (const auto& [k, c] : planar.terms())
            m2.set_coefficient({k[0], k[1], 0}, c);
    }
    SeriesMV acc(3, D);
    SeriesMV mpow = m2;
    for (int j = 0; j <= D; ++j) {
        if (j > 0) mpow = mpow * m2;
        if (mpow.term_count() == 0) break;
        const int shift[3] = {0, 0, j};
        acc = acc + mpow.shifted(shift);
    }
    return acc;
}

SeriesMV squared_multinomial_gf(int r, int D) {
    if (r < 1) throw std::invalid_argument("squared_multinomial_gf: r >= 1");
    SeriesMV s(r, D);
    SeriesMV::Key exps(static_cast<std::size_t>(r), 0);
    std::vector<long long> parts(static_cast<std::size_t>(r));
    // enumerate all exponent tuples with total degree <= D
    for (;;) {
        for (std::size_t i = 0; i < exps.size(); ++i) parts[i] = exps[i];
        const BigInt m = multinomial(std::span<const long long>(parts.data(), parts.size()));
        s.set_coefficient(exps, Rational(m * m));
        int pos = r - 1;
        while (pos >= 0) {
            ++exps[static_cast<std::size_t>(pos)];
            if (total_degree(exps) <= D) break;
            exps[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return s;
}

SeriesMV gf_a_tilde(int r, int D) {
    if (r < 1) throw std::invalid_argument("gf_a_tilde: r >= 1");
    const SeriesMV planar = squared_multinomial_gf(r, D);
    SeriesMV m2(r + 1, D);
    SeriesMV::Key lifted(static_cast<std::size_t>(r) + 1, 0);
    for (const auto& [k, c] : planar.terms()) {
        for (std::size_t i = 0; i < k.size(); ++i) lifted[i] = k[i];
        lifted.back() = 0;
        m2.set_coefficient(lifted, c);
    }
    SeriesMV acc(r + 1, D);
    SeriesMV mpow = m2;
    std::vector<int> shift(static_cast<std::size_t>(r) + 1, 0);
    for (int j = 0; j <= D; ++j) {
        if (j > 0) mpow = mpow * m2;
        if (mpow.term_count() == 0) break;
        shift.back() = j;
        acc = acc + mpow.shifted(shift);
    }
    return acc;
}

void write_series_csv(std::ostream& os, const SeriesMV& s,
                      std::span<const std::string> var_names) {
    if (static_cast<int>(var_names.size()) != s.nvars())
        throw std::invalid_argument("write_series_csv: name arity mismatch");
    for (const auto& name : var_names) os << name << ',';
    os << "numerator,denominator\n";
    for (const auto& [k, c] : s.terms()) {
        for (int e : k) os << e << ',';
        os << numerator(c).str() << ',' << denominator(c).str() << '\n';
    }
}

// --- contour quadrature -------------------------------------------------

namespace {

std::complex<double> unit_node(int m, int n) {
    const double theta = 2.0 * M_PI * static_cast<double>(m) / static_cast<double>(n);
    return {std::cos(theta), std::sin(theta)};
}

bool close_enough(std::complex<double> a, std::complex<double> b, double tol) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) <= tol * std::max(scale, 1.0);
}

[[noreturn]] void report_nonconvergence(std::complex<double> last, std::complex<double> prev) {
    std::ostringstream msg;
    msg.precision(16);
    msg << "contour quadrature did not converge; last two estimates "
        << last << " and " << prev;
    throw std::runtime_error(msg.str());
}

} // namespace

QuadratureResult contour_mean(const std::function<std::complex<double>(std::complex<double>)>& F,
                              double tol, int max_nodes_per_dim, bool allow_unconverged) {
    if (tol <= 0.0) tol = config().quad_tol;
    if (max_nodes_per_dim <= 0) max_nodes_per_dim = config().quad_max_nodes_1d;
    QuadratureResult res;
    std::complex<double> prev{};
    bool have_prev = false;
    for (int n = config().quad_start_nodes; n <= max_nodes_per_dim; n *= 2) {
        std::complex<double> acc{};
        for (int m = 0; m < n; ++m) acc += F(unit_node(m, n));
        acc /= static_cast<double>(n);
        if (have_prev && close_enough(acc, prev, tol)) {
            res.value = acc;
            res.previous = prev;
            res.converged = true;
            res.nodes = n;
            return res;
        }
        res.previous = prev;
        prev = acc;
        have_prev = true;
        res.nodes = n;
    }
    res.value = prev;
    if (!allow_unconverged) report_nonconvergence(prev, res.previous);
    return res;
}

QuadratureResult contour_mean_2d(
    const std::function<std::complex<double>(std::complex<double>, std::complex<double>)>& F,
    double tol, int max_nodes_per_dim, bool allow_unconverged) {
    if (tol <= 0.0) tol = config().quad_tol;
    if (max_nodes_per_dim <= 0) max_nodes_per_dim = config().quad_max_nodes_2d;
    QuadratureResult res;
    std::complex<double> prev{};
    bool have_prev = false;
    for (int n = config().quad_start_nodes; n <= max_nodes_per_dim; n *= 2) {
        std::complex<double> acc{};
        for (int m1 = 0; m1 < n; ++m1) {
            const auto w1 = unit_node(m1, n);
            for (int m2 = 0; m2 < n; ++m2) acc += F(w1, unit_node(m2, n));
        }
        acc /= static_cast<double>(n) * static_cast<double>(n);
        if (have_prev && close_enough(acc, prev, tol)) {
            res.value = acc;
            res.previous = prev;
            res.converged = true;
            res.nodes = n;
            return res;
        }
        res.previous = prev;
        prev = acc;
        have_prev = true;
        res.nodes = n;
    }
    res.value = prev;
    if (!allow_unconverged) report_nonconvergence(prev, res.previous);
    return res;
}

QuadratureResult sqrt_reciprocal_contour(
    const std::function<std::complex<double>(std::complex<double>)>& Q,
    double tol, int max_nodes) {
    if (tol <= 0.0) tol = config().quad_tol;
    if (max_nodes <= 0) max_nodes = config().quad_max_nodes_1d;
    QuadratureResult res;
    std::complex<double> prev{};
    bool have_prev = false;
    for (int n = config().quad_start_nodes; n <= max_nodes; n *= 2) {
        std::complex<double> acc{};
        std::complex<double> branch = std::sqrt(Q(std::complex<double>(1.0, 0.0)));
        for (int m = 0; m < n; ++m) {
            const auto w = unit_node(m, n);
            std::complex<double> s = std::sqrt(Q(w));
            // stay on the branch that varies continuously along the circle
            if (std::abs(s - branch) > std::abs(s + branch)) s = -s;
            branch = s;
            acc += w / s;
        }
        acc /= static_cast<double>(n);
        if (have_prev && close_enough(acc, prev, tol)) {
            res.value = acc;
            res.previous = prev;
            res.converged = true;
            res.nodes = n;
            return res;
        }
        res.previous = prev;
        prev = acc;
        have_prev = true;
        res.nodes = n;
    }
    res.value = prev;
    report_nonconvergence(prev, res.previous);
}

QuadratureResult diagonal_pair_gf(double x1, double x2, double y1, double y2, double tol) {
    if (std::abs(x1) + std::abs(x2) >= 1.0 || std::abs(y1) + std::abs(y2) >= 1.0)
        throw std::invalid_argument("diagonal_pair_gf: arguments outside the domain of the factors");
    auto F = [&](std::complex<double> w1, std::complex<double> w2) {
        const std::complex<double> f = 1.0 / (1.0 - x1 * w1 - x2 * w2);
        const std::complex<double> g = 1.0 / (1.0 - y1 / w1 - y2 / w2);
        return f * g;
    };
    return contour_mean_2d(F, tol);
}

QuadratureResult binomial_contour(int k, int l, double tol) {
    if (k < 1 || l < 1) throw std::invalid_argument("binomial_contour: need k, l >= 1");
    const double r = static_cast<double>(k) / static_cast<double>(k + l + 1);
    const double s = static_cast<double>(l) / static_cast<double>(k + l + 1);
    const double log_pref = -static_cast<double>(k) * std::log(r) -
                            static_cast<double>(l) * std::log(s);
    auto F = [&](std::complex<double> w1, std::complex<double> w2) {
        const std::complex<double> denom = 1.0 - r * w1 - s * w2;
        return std::exp(log_pref) / (denom * std::pow(w1, k) * std::pow(w2, l));
    };
    return contour_mean_2d(F, tol);
}

RadiusCheck singularity_radius_check() {
    // sqrt(1-4r) = r on the positive diagonal, i.e. r^2 + 4r - 1 = 0.
    double lo = 0.0, hi = 0.25;
    for (int i = 0; i < config().bisect_max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (std::sqrt(1.0 - 4.0 * mid) - mid > 0.0) lo = mid;
        else hi = mid;
    }
    RadiusCheck out;
    out.radius = 0.5 * (lo + hi);
    out.err_vs_closed_form = std::fabs(out.radius - (std::sqrt(5.0) - 2.0));
    const auto denom = [&](double z) { return std::sqrt(1.0 - 4.0 * out.radius) - z; };
    out.denom_just_inside = denom(out.radius - 1e-6);
    out.denom_just_outside = denom(out.radius + 1e-3);
    return out;
}

} // namespace ulam
