#include "ulam/perm_oracle.hpp"
#include "ulam/ulam_exact.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace ulam;

TEST_CASE("increasing subsequence counts on small permutations") {
    const int ident[3] = {1, 2, 3};
    const int rev[3] = {3, 2, 1};
    const int mid[3] = {2, 1, 3};
    CHECK(count_increasing_subsequences(ident, 2) == 3);
    CHECK(count_increasing_subsequences(rev, 2) == 0);
    CHECK(count_increasing_subsequences(mid, 2) == 2);
    CHECK(count_increasing_subsequences(ident, 3) == 1);

    const int bad[3] = {1, 1, 3};
    CHECK_THROWS_AS(count_increasing_subsequences(bad, 2), std::invalid_argument);
    CHECK_THROWS_AS(count_increasing_subsequences(ident, 0), std::invalid_argument);
}

TEST_CASE("brute moments on S_3 and S_4") {
    CHECK(brute_moments(3, {2, 2}) == Rational(19, 6));
    CHECK(brute_moments(3, {2}) == Rational(3, 2));
    CHECK(brute_moments(4, {1, 1, 1}) == 64);
    CHECK_THROWS_AS(brute_moments(10, {2}), std::invalid_argument);
    CHECK_THROWS_AS(brute_moments(3, std::initializer_list<int>{}), std::invalid_argument);
}

TEST_CASE("bulk moment table equals individual brute calls") {
    const auto t = brute_moment_table(5);
    CHECK(t.mean[1] == brute_moments(5, {2}));
    CHECK(t.second[1][2] == brute_moments(5, {2, 3}));
    CHECK(t.second[2][1] == t.second[1][2]);
    CHECK(t.third_diag[1] == brute_moments(5, {2, 2, 2}));
}

TEST_CASE("walk counts reproduce the pair-overlap array") {
    CHECK(walk_count_a(0, 0, 0) == 1);
    CHECK(walk_count_a(1, 0, 0) == 1);
    CHECK(walk_count_a(1, 1, 1) == 10);
    for (int k = 0; k <= 6; ++k)
        for (int l = 0; k + l <= 6; ++l)
            for (int j = 0; j <= std::min(k, l) + 2; ++j)
                REQUIRE(walk_count_a(k, l, j) == comb_a_exact(k, l, j));
    CHECK_THROWS_AS(walk_count_a(6, 6, 0), std::invalid_argument); // over the cap
}

TEST_CASE("walk spec carries the pinned endpoint") {
    const WalkSpec spec = WalkSpec::for_pair_counts(3, 1, 2);
    CHECK(spec.length == 4);
    CHECK(spec.endpoint.first == 2);
    CHECK(spec.endpoint.second == 0);
}

TEST_CASE("squared-binomial identity via the four-part multinomial sum") {
    CHECK(check_gamma2_identity(1, 1));
    CHECK(check_gamma2_identity(5, 0));
    CHECK(check_gamma2_identity(0, 7));
    for (int l = 0; l <= 30; ++l)
        for (int m = 0; l + m <= 30; ++m) REQUIRE(check_gamma2_identity(l, m));
}

TEST_CASE("largest nonzero count length equals the patience-sorting LIS") {
    std::vector<int> perm(7);
    std::iota(perm.begin(), perm.end(), 1);
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto counts = count_increasing_all_lengths(perm);
        int kmax = 0;
        for (int k = 1; k <= 7; ++k)
            if (counts[static_cast<std::size_t>(k - 1)] > 0) kmax = k;
        REQUIRE(kmax == longest_increasing_subsequence(perm));
    }
}
