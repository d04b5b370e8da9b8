#include "ulam/numkernel.hpp"
#include "ulam/config.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace ulam {

namespace mp = boost::multiprecision;

BigInt numerator(const Rational& q) { return mp::numerator(q); }
BigInt denominator(const Rational& q) { return mp::denominator(q); }

std::string to_fraction_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

double log_bigint(const BigInt& n) {
    if (n == 0) throw std::domain_error("log_bigint: zero argument");
    BigInt a = n < 0 ? BigInt(-n) : n;
    const unsigned bits = mp::msb(a) + 1;
    // Keep the mantissa comfortably inside double range, carry the rest
    // of the magnitude as an exact power of two.
    unsigned shift = 0;
    if (bits > 512) {
        shift = bits - 512;
        a >>= shift;
    }
    return std::log(a.convert_to<double>()) + static_cast<double>(shift) * M_LN2;
}

LogReal LogReal::from_double(double x) {
    if (x == 0.0) return zero();
    return LogReal(x > 0 ? 1 : -1, std::log(std::fabs(x)));
}

LogReal LogReal::from_bigint(const BigInt& n) {
    if (n == 0) return zero();
    return LogReal(n > 0 ? 1 : -1, log_bigint(n));
}

LogReal LogReal::from_rational(const Rational& q) {
    if (q == 0) return zero();
    const BigInt num = numerator(q);
    return LogReal(num > 0 ? 1 : -1, log_bigint(num) - log_bigint(denominator(q)));
}

double LogReal::to_double() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(logmag);
}

LogReal LogReal::operator*(const LogReal& o) const {
    if (sign == 0 || o.sign == 0) return zero();
    return LogReal(sign * o.sign, logmag + o.logmag);
}

LogReal LogReal::operator/(const LogReal& o) const {
    if (o.sign == 0) throw std::domain_error("LogReal: division by zero");
    if (sign == 0) return zero();
    return LogReal(sign * o.sign, logmag - o.logmag);
}

LogReal LogReal::operator+(const LogReal& o) const {
    const LogReal pair[2] = {*this, o};
    return log_sum_exp(pair);
}

LogReal LogReal::pow_int(long long e) const {
    if (sign == 0) {
        if (e <= 0) throw std::domain_error("LogReal: 0^nonpositive");
        return zero();
    }
    const int s = (sign < 0 && (e % 2 != 0)) ? -1 : 1;
    return LogReal(s, logmag * static_cast<double>(e));
}

LogReal log_sum_exp(std::span<const LogReal> values) {
    double maxmag = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (const LogReal& v : values) {
        if (v.sign == 0) continue;
        any = true;
        if (v.logmag > maxmag) maxmag = v.logmag;
    }
    if (!any) return LogReal::zero();
    double acc = 0.0;
    for (const LogReal& v : values) {
        if (v.sign == 0) continue;
        acc += v.sign * std::exp(v.logmag - maxmag);
    }
    if (acc == 0.0) return LogReal::zero();
    return LogReal(acc > 0 ? 1 : -1, maxmag + std::log(std::fabs(acc)));
}

namespace {

std::vector<BigInt>& factorial_memo() {
    static std::vector<BigInt> table = [] {
        std::vector<BigInt> t;
        t.reserve(config().factorial_memo_cap + 1);
        t.emplace_back(1);
        for (std::size_t n = 1; n <= config().factorial_memo_cap; ++n)
            t.emplace_back(t.back() * n);
        return t;
    }();
    return table;
}

std::once_flag factorial_once;

} // namespace

BigInt factorial(unsigned n) {
    std::call_once(factorial_once, [] { factorial_memo(); });
    const auto& memo = factorial_memo();
    if (n < memo.size()) return memo[n];
    BigInt r = memo.back();
    for (unsigned m = static_cast<unsigned>(memo.size()); m <= n; ++m) r *= m;
    return r;
}

BigInt binomial(long long n, long long k) {
    if (n < 0) throw std::domain_error("binomial: n must be nonnegative");
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    // Multiplicative form keeps intermediate values small for k << n.
    BigInt r = 1;
    for (long long i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

BigInt multinomial(std::span<const long long> parts) {
    long long total = 0;
    for (long long p : parts) {
        if (p < 0) throw std::domain_error("multinomial: negative part");
        total += p;
    }
    BigInt r = factorial(static_cast<unsigned>(total));
    for (long long p : parts) r /= factorial(static_cast<unsigned>(p));
    return r;
}

BigInt multinomial(std::initializer_list<long long> parts) {
    return multinomial(std::span<const long long>(parts.begin(), parts.size()));
}

double log_factorial(long long n) {
    if (n < 0) throw std::domain_error("log_factorial: negative argument");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(long long n, long long k) {
    if (n < 0) throw std::domain_error("log_binomial: n must be nonnegative");
    if (k < 0 || k > n)
        return -std::numeric_limits<double>::infinity();
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double log_multinomial(std::span<const long long> parts) {
    long long total = 0;
    double denom = 0.0;
    for (long long p : parts) {
        if (p < 0) throw std::domain_error("log_multinomial: negative part");
        total += p;
        denom += log_factorial(p);
    }
    return log_factorial(total) - denom;
}

} // namespace ulam
