#pragma once

#include "ulam/numkernel.hpp"

#include <span>
#include <utility>
#include <vector>

namespace ulam {

// Ground-truth side of the artifact: everything here is exhaustive
// enumeration in exact integer arithmetic, deliberately independent of
// the closed-form implementations it is used to check.

// A walk-counting query: 2d walks of `length` steps from the origin,
// constrained to end at `endpoint` and to sit on the x-axis at j+1
// chosen times.
struct WalkSpec {
    int length;                    // k + l
    std::pair<int, int> endpoint;  // (k - l, 0)
    int j;

    static WalkSpec for_pair_counts(int k, int l, int j);
};

// Number of strictly increasing length-k subsequences of perm
// (a permutation of 1..n), by DP over (position, subsequence length).
// Throws std::invalid_argument for malformed permutations.
BigInt count_increasing_subsequences(std::span<const int> perm, int k);

// Counts for every length 1..n in one DP pass.
std::vector<BigInt> count_increasing_all_lengths(std::span<const int> perm);

// Longest increasing subsequence length by patience sorting;
// independent of the DP above.
int longest_increasing_subsequence(std::span<const int> perm);

// Exact E[prod_i Z_{n,ks[i]}] over uniform S_n by full enumeration.
// ks must have 1 to 3 entries (moment order); n is capped by
// Config::perm_enum_max_n.
Rational brute_moments(int n, std::span<const int> ks);
Rational brute_moments(int n, std::initializer_list<int> ks);

// Every mean, pair moment and diagonal third moment from a single
// enumeration sweep of S_n; indexes are k-1.
struct BruteMomentTable {
    int n = 0;
    std::vector<Rational> mean;                 // E[Z_{n,k}]
    std::vector<std::vector<Rational>> second;  // E[Z_{n,k} Z_{n,l}]
    std::vector<Rational> third_diag;           // E[Z_{n,k}^3]
};
BruteMomentTable brute_moment_table(int n);

// Exhaustive count over all 4^(k+l) step sequences: walks ending at
// (k-l, 0), weighted by the number of non-decreasing time tuples
// 0 <= t_0 <= ... <= t_j with t_j = k+l and every t_i an axis time of
// the walk. The t_j = k+l constraint comes from the underlying
// bijection; without it the count overshoots (already for k=1, l=0,
// j=0: 2 instead of 1).
BigInt walk_count_a(int k, int l, int j);

// sum_n (l+m)! / (n! n! (l-n)! (m-n)!) == C(l+m, l)^2, exactly.
bool check_gamma2_identity(int l, int m);

} // namespace ulam
