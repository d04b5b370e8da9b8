#include "ulam/numkernel.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ulam;

namespace {

// independent factorial-ratio route, no shared code with binomial()
BigInt binomial_by_factorials(int n, int k) {
    BigInt num = 1, den = 1;
    for (int i = 1; i <= n; ++i) num *= i;
    for (int i = 1; i <= k; ++i) den *= i;
    for (int i = 1; i <= n - k; ++i) den *= i;
    return num / den;
}

} // namespace

TEST_CASE("binomial small values and conventions") {
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(3, 4) == 0);
    CHECK(binomial(3, -1) == 0);
    CHECK(binomial(0, 0) == 1);
    CHECK_THROWS_AS(binomial(-1, 0), std::domain_error);
}

TEST_CASE("binomial matches the factorial-ratio oracle") {
    CHECK(binomial(100, 50) == binomial_by_factorials(100, 50));
    CHECK(binomial(61, 17) == binomial_by_factorials(61, 17));
}

TEST_CASE("Pascal recurrence and symmetry up to 200") {
    std::vector<BigInt> prev{1};
    for (int n = 1; n <= 200; ++n) {
        std::vector<BigInt> row(static_cast<std::size_t>(n) + 1);
        row[0] = row[static_cast<std::size_t>(n)] = 1;
        for (int k = 1; k < n; ++k)
            row[static_cast<std::size_t>(k)] =
                prev[static_cast<std::size_t>(k - 1)] + prev[static_cast<std::size_t>(k)];
        for (int k = 0; k <= n; ++k) {
            REQUIRE(binomial(n, k) == row[static_cast<std::size_t>(k)]);
            REQUIRE(binomial(n, k) == binomial(n, n - k));
        }
        prev = std::move(row);
    }
}

TEST_CASE("multinomial values and permutation invariance") {
    CHECK(multinomial({1, 1}) == 2);
    CHECK(multinomial({0, 0, 1, 1}) == 2);
    CHECK(multinomial({1, 1, 1}) == 6);
    CHECK(multinomial({2, 2, 2}) == 90);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<long long> parts(4);
        for (auto& p : parts) p = rng() % 9;
        const BigInt base = multinomial(parts);
        std::shuffle(parts.begin(), parts.end(), rng);
        CHECK(multinomial(parts) == base);
        long long total = 0;
        for (long long p : parts) total += p;
        // two-part reduction: multinomial(a, total-a) == C(total, a)
        CHECK(multinomial({parts[0], total - parts[0]}) == binomial(total, parts[0]));
    }
}

TEST_CASE("factorial memo boundary") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(5) == 120);
    CHECK(factorial(10001) == factorial(10000) * 10001);
}

TEST_CASE("log_sum_exp basic identities") {
    const LogReal two = LogReal::from_double(2.0);
    const LogReal three = LogReal::from_double(3.0);
    const LogReal five = two + three;
    CHECK(five.sign == 1);
    CHECK(five.logmag == doctest::Approx(std::log(5.0)).epsilon(1e-14));

    const LogReal x = LogReal::from_double(17.25);
    const LogReal cancel = x + (-x);
    CHECK(cancel.sign == 0);
}

TEST_CASE("log_sum_exp across extreme magnitude spreads") {
    // exp(2000) + exp(-2000) + exp(1999): far outside double range
    const LogReal terms[3] = {LogReal::from_log(2000.0), LogReal::from_log(-2000.0),
                              LogReal::from_log(1999.0)};
    const LogReal sum = log_sum_exp(terms);
    CHECK(sum.sign == 1);
    CHECK(sum.logmag ==
          doctest::Approx(2000.0 + std::log1p(std::exp(-1.0))).epsilon(1e-15));

    const LogReal mixed[2] = {LogReal(1, 500.0), LogReal(-1, -500.0)};
    CHECK(log_sum_exp(mixed).logmag == doctest::Approx(500.0).epsilon(1e-15));
}

TEST_CASE("log_sum_exp of random positives matches the exact rational sum") {
    std::mt19937_64 rng(12345);
    std::vector<LogReal> terms;
    Rational exact = 0;
    for (int i = 0; i < 100; ++i) {
        const Rational q(static_cast<long long>(rng() % 999983 + 1),
                         static_cast<long long>(rng() % 9973 + 1));
        exact += q;
        terms.push_back(LogReal::from_rational(q));
    }
    const LogReal sum = log_sum_exp(terms);
    const LogReal goal = LogReal::from_rational(exact);
    CHECK(sum.sign == 1);
    CHECK(std::fabs(sum.logmag - goal.logmag) < 1e-12);
}

TEST_CASE("LogReal roundtrip over 600 e-folds of magnitude") {
    std::mt19937_64 rng(99);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        BigInt num = BigInt(rng() % 1000000007ULL + 1);
        BigInt den = BigInt(rng() % 1000000007ULL + 1);
        const int scale = static_cast<int>(rng() % 860) - 430; // 2^+-430 ~ e^+-298
        if (scale >= 0) num <<= scale;
        else den <<= -scale;
        const Rational q = (rng() & 1) ? Rational(num, den) : -Rational(num, den);
        const LogReal lr = LogReal::from_rational(q);
        // compare in log space; q itself may be far outside double range
        const double expected =
            log_bigint(numerator(q) < 0 ? BigInt(-numerator(q)) : numerator(q)) -
            log_bigint(denominator(q));
        worst = std::max(worst, std::fabs(lr.logmag - expected) /
                                    std::max(1.0, std::fabs(expected)));
        CHECK(lr.sign == (q < 0 ? -1 : 1));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("LogReal multiplication, division, powers") {
    const LogReal a = LogReal::from_double(-3.5);
    const LogReal b = LogReal::from_double(2.0);
    CHECK((a * b).to_double() == doctest::Approx(-7.0).epsilon(1e-14));
    CHECK((a / b).to_double() == doctest::Approx(-1.75).epsilon(1e-14));
    CHECK(a.pow_int(2).to_double() == doctest::Approx(12.25).epsilon(1e-14));
    CHECK(a.pow_int(3).sign == -1);
    CHECK_THROWS_AS(a / LogReal::zero(), std::domain_error);
}

TEST_CASE("log_binomial agrees with the exact path") {
    CHECK(log_binomial(100, 50) ==
          doctest::Approx(log_bigint(binomial(100, 50))).epsilon(1e-13));
    CHECK(std::isinf(log_binomial(5, 9)));
    const long long parts[3] = {40, 30, 30};
    CHECK(log_multinomial(parts) ==
          doctest::Approx(log_bigint(multinomial({40, 30, 30}))).epsilon(1e-13));
}

TEST_CASE("fraction rendering") {
    CHECK(to_fraction_string(Rational(19, 6)) == "19/6");
    CHECK(to_fraction_string(Rational(4, 2)) == "2");
    CHECK(to_fraction_string(Rational(-3, 9)) == "-1/3");
}
