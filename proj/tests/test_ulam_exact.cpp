#include "ulam/ulam_exact.hpp"
#include "ulam/perm_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

using namespace ulam;

namespace {

// Reference implementation straight from the defining sum: enumerate
// the compositions of k and l into j+1 parts and multiply squared
// binomials. Exponential cost, used only on tiny arguments.
BigInt comb_a_reference(int k, int l, int j) {
    std::vector<int> alpha(static_cast<std::size_t>(j) + 1, 0);
    std::vector<int> beta(static_cast<std::size_t>(j) + 1, 0);
    BigInt total = 0;
    // odometer over compositions of k
    alpha[0] = k;
    for (;;) {
        beta.assign(static_cast<std::size_t>(j) + 1, 0);
        beta[0] = l;
        for (;;) {
            BigInt prod = 1;
            for (int r = 0; r <= j; ++r) {
                const BigInt c = binomial(alpha[static_cast<std::size_t>(r)] +
                                              beta[static_cast<std::size_t>(r)],
                                          alpha[static_cast<std::size_t>(r)]);
                prod *= c * c;
            }
            total += prod;
            // next composition of l
            int i = 0;
            while (i < j && beta[static_cast<std::size_t>(i)] == 0) ++i;
            if (i == j) break;
            const int v = beta[static_cast<std::size_t>(i)];
            beta[static_cast<std::size_t>(i)] = 0;
            beta[0] = v - 1;
            ++beta[static_cast<std::size_t>(i + 1)];
        }
        int i = 0;
        while (i < j && alpha[static_cast<std::size_t>(i)] == 0) ++i;
        if (i == j) break;
        const int v = alpha[static_cast<std::size_t>(i)];
        alpha[static_cast<std::size_t>(i)] = 0;
        alpha[0] = v - 1;
        ++alpha[static_cast<std::size_t>(i + 1)];
    }
    return total;
}

} // namespace

TEST_CASE("mean of Z") {
    CHECK(mean_z(4, 2) == 3);
    CHECK(mean_z(7, 1) == 7);
    CHECK(mean_z(3, 2) == Rational(3, 2));
    CHECK(mean_z(3, 2) == brute_moments(3, {2}));
    CHECK(mean_z(3, 5) == 0); // k > n vanishes
    CHECK_THROWS_AS(mean_z(0, 1), std::invalid_argument);
}

TEST_CASE("overlap array values") {
    CHECK(comb_a_exact(2, 1, 0) == 9);
    CHECK(comb_a_exact(0, 0, 5) == 1);
    CHECK(comb_a_exact(1, 1, 1) == 10);
    CHECK(comb_a_exact(1, 1, 1) == comb_a_reference(1, 1, 1));
}

TEST_CASE("convolution table equals the composition-sum definition") {
    for (int k = 0; k <= 8; ++k)
        for (int l = 0; k + l <= 8; ++l)
            for (int j = 0; k + l + j <= 8; ++j)
                REQUIRE(comb_a_exact(k, l, j) == comb_a_reference(k, l, j));
}

TEST_CASE("overlap array symmetry up to 12") {
    const auto slices = build_comb_a_slices_exact(12, 12, 12);
    for (const auto& s : slices)
        for (int a = 0; a <= 12; ++a)
            for (int b = a; b <= 12; ++b) REQUIRE(s.at(a, b) == s.at(b, a));
}

TEST_CASE("second moment identities") {
    const auto r = second_moment(3, 2, 2);
    CHECK(r.value == Rational(19, 6));
    Rational sum = 0;
    for (const auto& term : r.per_j_terms) sum += term;
    CHECK(sum == r.value);

    for (int n = 2; n <= 8; ++n)
        CHECK(second_moment(n, 1, 1).value == n * n); // Z_{n,1} is constant n

    CHECK(second_moment(4, 2, 3).value == brute_moments(4, {2, 3}));
    CHECK(second_moment(7, 3, 5).value == second_moment(7, 5, 3).value);
    CHECK_THROWS_AS(second_moment(3, 0, 2), std::invalid_argument);
}

TEST_CASE("log-space second moment tracks the exact one") {
    const auto exact = second_moment(9, 4, 3);
    const auto logged = log_second_moment(9, 4, 3);
    const LogReal target = LogReal::from_rational(exact.value);
    CHECK(logged.value.sign == 1);
    CHECK(std::fabs(logged.value.logmag - target.logmag) < 1e-10);
    REQUIRE(logged.per_j_terms.size() == exact.per_j_terms.size());
    for (std::size_t j = 0; j < logged.per_j_terms.size(); ++j) {
        const LogReal t = LogReal::from_rational(exact.per_j_terms[j]);
        CHECK(std::fabs(logged.per_j_terms[j].logmag - t.logmag) < 1e-10);
    }
}

TEST_CASE("log-space overlap tables match exact ones to 1e-8 up to 20") {
    const auto exact = build_comb_a_slices_exact(20, 20, 20);
    const auto logged = build_comb_a_slices_log(20, 20, 20);
    double worst = 0.0;
    for (int j = 0; j <= 20; ++j)
        for (int a = 0; a <= 20; ++a)
            for (int b = 0; b <= 20; ++b) {
                const double lhs = logged[static_cast<std::size_t>(j)].log_at(a, b);
                const double rhs = log_bigint(exact[static_cast<std::size_t>(j)].at(a, b));
                // |delta ln| bounds the relative error of the value
                worst = std::max(worst, std::fabs(lhs - rhs));
            }
    CHECK(worst < 1e-8);
}

TEST_CASE("log build is independent of the thread budget") {
    char env1[] = "ULAMLAB_THREADS=1";
    putenv(env1);
    const auto one = build_comb_a_slices_log(10, 10, 6);
    char env4[] = "ULAMLAB_THREADS=4";
    putenv(env4);
    const auto four = build_comb_a_slices_log(10, 10, 6);
    unsetenv("ULAMLAB_THREADS");
    for (std::size_t j = 0; j < one.size(); ++j)
        REQUIRE(one[j].logval == four[j].logval); // bitwise
}

TEST_CASE("exact mode refuses oversized tables") {
    CHECK_THROWS_AS(comb_a_exact(30, 30, 30), ResourceError);
    CHECK_THROWS_AS((void)build_comb_a_slices_exact(48, 48, 48), ResourceError);
    CHECK(comb_a_log(30, 30, 30).sign == 1); // log path has no cap
}

TEST_CASE("r-fold generalization") {
    for (int k = 0; k <= 4; ++k)
        for (int l = 0; l <= 4; ++l)
            for (int j = 0; j <= 4; ++j) {
                const int ks[2] = {k, l};
                REQUIRE(comb_a_tilde_exact(2, ks, j) == comb_a_exact(k, l, j));
            }
    const int one_k[1] = {5};
    CHECK(comb_a_tilde_exact(1, one_k, 0) == 1);
    CHECK(comb_a_tilde_exact(3, {1, 1, 1}, 0) == 36);
    CHECK(comb_a_tilde_exact(3, {1, 1, 1}, 1) == 96);
    CHECK(comb_a_tilde_exact(3, {0, 0, 0}, 3) == 1);
}

TEST_CASE("r-fold log path agrees with exact") {
    const int ks[3] = {2, 2, 2};
    const LogReal lv = comb_a_tilde_log(3, ks, 2);
    const BigInt ev = comb_a_tilde_exact(3, ks, 2);
    CHECK(std::fabs(lv.logmag - log_bigint(ev)) < 1e-9);
}

TEST_CASE("all-or-nothing lower bound") {
    CHECK(all_or_nothing_bound(6, 2, 2) == second_moment(6, 2, 2).value);
    CHECK(all_or_nothing_bound(5, 3, 2) == second_moment(5, 3, 3).value);
    CHECK(all_or_nothing_bound(4, 1, 3) == 28);
    CHECK(all_or_nothing_bound(4, 1, 3) <= brute_moments(4, {1, 1, 1}));
    CHECK(all_or_nothing_bound(6, 2, 3) == Rational(315, 4));
    CHECK(all_or_nothing_bound(6, 2, 3) <= brute_moments(6, {2, 2, 2}));
    CHECK_THROWS_AS(all_or_nothing_bound(6, 2, 1), std::invalid_argument);
}

TEST_CASE("slice CSV layout") {
    const auto slices = build_comb_a_slices_exact(2, 1, 1);
    std::ostringstream os;
    write_slice_csv(os, slices[1]);
    const std::string text = os.str();
    CHECK(text.rfind("k,l,j,value\n", 0) == 0);
    CHECK(text.find("1,1,1,10\n") != std::string::npos);

    const auto logs = build_comb_a_slices_log(1, 1, 1);
    std::ostringstream os2;
    write_slice_csv(os2, logs[1]);
    CHECK(os2.str().rfind("k,l,j,log_value\n", 0) == 0);
}
