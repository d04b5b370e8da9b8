#include "ulam/perm_oracle.hpp"
#include "ulam/config.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ulam {

namespace {

void validate_permutation(std::span<const int> perm) {
    const int n = static_cast<int>(perm.size());
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (int v : perm) {
        if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("not a permutation of 1..n");
        seen[static_cast<std::size_t>(v)] = 1;
    }
}

} // namespace

WalkSpec WalkSpec::for_pair_counts(int k, int l, int j) {
    return WalkSpec{k + l, {k - l, 0}, j};
}

std::vector<BigInt> count_increasing_all_lengths(std::span<const int> perm) {
    validate_permutation(perm);
    const int n = static_cast<int>(perm.size());
    // ending[m][i] = # increasing subsequences of length m+1 ending at i
    std::vector<std::vector<BigInt>> ending(
        static_cast<std::size_t>(n), std::vector<BigInt>(static_cast<std::size_t>(n)));
    std::vector<BigInt> totals(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ending[0][static_cast<std::size_t>(i)] = 1;
    for (int m = 1; m < n; ++m) {
        for (int i = 0; i < n; ++i) {
            BigInt acc = 0;
            for (int h = 0; h < i; ++h)
                if (perm[static_cast<std::size_t>(h)] < perm[static_cast<std::size_t>(i)])
                    acc += ending[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(h)];
            ending[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)] = std::move(acc);
        }
    }
    for (int m = 0; m < n; ++m) {
        BigInt acc = 0;
        for (int i = 0; i < n; ++i) acc += ending[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)];
        totals[static_cast<std::size_t>(m)] = std::move(acc);
    }
    return totals;
}

BigInt count_increasing_subsequences(std::span<const int> perm, int k) {
    if (k < 1 || k > static_cast<int>(perm.size()))
        throw std::invalid_argument("k out of range");
    return count_increasing_all_lengths(perm)[static_cast<std::size_t>(k - 1)];
}

int longest_increasing_subsequence(std::span<const int> perm) {
    validate_permutation(perm);
    std::vector<int> piles;
    for (int v : perm) {
        auto it = std::lower_bound(piles.begin(), piles.end(), v);
        if (it == piles.end()) piles.push_back(v);
        else *it = v;
    }
    return static_cast<int>(piles.size());
}

Rational brute_moments(int n, std::span<const int> ks) {
    if (n < 1 || n > config().perm_enum_max_n)
        throw std::invalid_argument("brute_moments: n exceeds enumeration cap");
    if (ks.empty() || ks.size() > 3)
        throw std::invalid_argument("brute_moments: order must be 1, 2 or 3");
    for (int k : ks)
        if (k < 1 || k > n) throw std::invalid_argument("brute_moments: k out of range");

    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    BigInt sum = 0;
    do {
        const auto counts = count_increasing_all_lengths(perm);
        BigInt prod = 1;
        for (int k : ks) prod *= counts[static_cast<std::size_t>(k - 1)];
        sum += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return Rational(sum, factorial(static_cast<unsigned>(n)));
}

Rational brute_moments(int n, std::initializer_list<int> ks) {
    return brute_moments(n, std::span<const int>(ks.begin(), ks.size()));
}

BruteMomentTable brute_moment_table(int n) {
    if (n < 1 || n > config().perm_enum_max_n)
        throw std::invalid_argument("brute_moment_table: n exceeds enumeration cap");
    const std::size_t un = static_cast<std::size_t>(n);
    std::vector<BigInt> sum1(un), sum3(un);
    std::vector<std::vector<BigInt>> sum2(un, std::vector<BigInt>(un));

    std::vector<int> perm(un);
    std::iota(perm.begin(), perm.end(), 1);
    do {
        const auto counts = count_increasing_all_lengths(perm);
        for (std::size_t a = 0; a < un; ++a) {
            sum1[a] += counts[a];
            sum3[a] += counts[a] * counts[a] * counts[a];
            for (std::size_t b = a; b < un; ++b) sum2[a][b] += counts[a] * counts[b];
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    const BigInt nfact = factorial(static_cast<unsigned>(n));
    BruteMomentTable t;
    t.n = n;
    t.mean.resize(un);
    t.third_diag.resize(un);
    t.second.assign(un, std::vector<Rational>(un));
    for (std::size_t a = 0; a < un; ++a) {
        t.mean[a] = Rational(sum1[a], nfact);
        t.third_diag[a] = Rational(sum3[a], nfact);
        for (std::size_t b = 0; b < un; ++b) {
            const BigInt& s = b >= a ? sum2[a][b] : sum2[b][a];
            t.second[a][b] = Rational(s, nfact);
        }
    }
    return t;
}

BigInt walk_count_a(int k, int l, int j) {
    if (k < 0 || l < 0 || j < 0) throw std::invalid_argument("walk_count_a: negative argument");
    const int len = k + l;
    if (len > config().walk_enum_max_len)
        throw std::invalid_argument("walk_count_a: k+l exceeds enumeration cap");

    const WalkSpec spec = WalkSpec::for_pair_counts(k, l, j);
    if (len == 0) return 1; // empty walk, t_0 = ... = t_j = 0

    // steps: +x, -x, +y, -y
    static constexpr int dx[4] = {1, -1, 0, 0};
    static constexpr int dy[4] = {0, 0, 1, -1};

    BigInt total = 0;
    std::vector<int> step(static_cast<std::size_t>(len), 0);
    while (true) {
        int x = 0, y = 0;
        int axis_times = 1; // t = 0 is always on the axis
        for (int t = 0; t < len; ++t) {
            x += dx[step[static_cast<std::size_t>(t)]];
            y += dy[step[static_cast<std::size_t>(t)]];
            if (y == 0) ++axis_times;
        }
        if (x == spec.endpoint.first && y == spec.endpoint.second) {
            // t_j is pinned to k+l (on the axis since the endpoint is);
            // the remaining t_0 <= ... <= t_{j-1} form a multiset of
            // size j from the axis-time set.
            total += binomial(axis_times + j - 1, j);
        }
        // next base-4 word
        int pos = 0;
        while (pos < len && step[static_cast<std::size_t>(pos)] == 3) {
            step[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == len) break;
        ++step[static_cast<std::size_t>(pos)];
    }
    return total;
}

bool check_gamma2_identity(int l, int m) {
    if (l < 0 || m < 0) throw std::invalid_argument("check_gamma2_identity: negative argument");
    BigInt lhs = 0;
    for (int n = 0; n <= std::min(l, m); ++n)
        lhs += multinomial({n, n, static_cast<long long>(l - n), static_cast<long long>(m - n)});
    const BigInt b = binomial(l + m, l);
    return lhs == b * b;
}

} // namespace ulam
