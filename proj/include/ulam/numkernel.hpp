#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <span>
#include <string>
#include <vector>

namespace ulam {

// Exact arithmetic lives on boost::multiprecision integers/rationals.
// Rationals are kept canonical (reduced, positive denominator) by the
// backend, so every value printed as num/den is in lowest terms.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt numerator(const Rational& q);
BigInt denominator(const Rational& q);
std::string to_fraction_string(const Rational& q); // "num/den", "n" if den==1

// Signed log-magnitude real: sign in {-1,0,+1}, logmag = ln|x|.
// Addition goes through log-sum-exp, so values like exp(5000) combine
// without overflow. logmag is meaningless when sign == 0.
struct LogReal {
    int sign = 0;
    double logmag = 0.0;

    LogReal() = default;
    LogReal(int s, double lm) : sign(s), logmag(lm) {}

    static LogReal zero() { return LogReal(); }
    static LogReal one() { return LogReal(1, 0.0); }
    static LogReal from_double(double x);
    static LogReal from_log(double lm) { return LogReal(1, lm); }
    static LogReal from_bigint(const BigInt& n);
    static LogReal from_rational(const Rational& q);

    double to_double() const; // may overflow to +-inf for huge logmag
    bool is_zero() const { return sign == 0; }

    LogReal operator*(const LogReal& o) const;
    LogReal operator/(const LogReal& o) const;
    LogReal operator+(const LogReal& o) const;
    LogReal operator-() const { return LogReal(-sign, logmag); }
    LogReal pow_int(long long e) const;
};

// Signed log-sum-exp of a sequence. Positive and negative parts are
// reduced left to right against the global maximum magnitude, which
// keeps the relative error near machine precision even when the
// summands span hundreds of orders of magnitude. Exact cancellation
// of equal and opposite values yields sign 0.
LogReal log_sum_exp(std::span<const LogReal> values);

// ln of a nonzero big integer, accurate to double precision for any size.
double log_bigint(const BigInt& n);

// n! with memoization up to Config::factorial_memo_cap; larger arguments
// are computed on demand without being cached. Memo initialization is
// thread-safe; afterwards the table is read-only.
BigInt factorial(unsigned n);

// C(n,k); 0 when k < 0 or k > n, so moment sums over out-of-range
// indices vanish term by term instead of needing edge guards.
BigInt binomial(long long n, long long k);

// (sum parts)! / prod(part!) for nonnegative parts.
BigInt multinomial(std::span<const long long> parts);
BigInt multinomial(std::initializer_list<long long> parts);

// ln C(n,k) / ln multinomial via lgamma; usable far beyond big-integer
// comfort (n ~ 1e6). Returns -inf for the vanishing binomial cases.
double log_binomial(long long n, long long k);
double log_multinomial(std::span<const long long> parts);
double log_factorial(long long n);

} // namespace ulam
