#pragma once

#include "ulam/numkernel.hpp"

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

namespace ulam {

// Thrown when an exact big-integer table is requested beyond the
// configured size cap; the log-space path has no such limit.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class TableMode { exact, logspace };

// One fixed-j slice of the pair-overlap array A(a,b,j): the table of
// weights for a pair of increasing subsequences with j shared indices,
// equal to the (j+1)-fold 2-d convolution power of B(a,b) = C(a+b,a)^2.
// Entries are exact integers or natural logs depending on mode.
struct CombSlice {
    int j = 0;
    int max_k = 0;
    int max_l = 0;
    TableMode mode = TableMode::exact;
    std::vector<BigInt> exact;  // (max_k+1)*(max_l+1), row-major, mode==exact
    std::vector<double> logval; // ln A(a,b,j), mode==logspace

    const BigInt& at(int a, int b) const;
    double log_at(int a, int b) const;
    LogReal logreal_at(int a, int b) const { return LogReal::from_log(log_at(a, b)); }
};

// E[Z_{n,k} Z_{n,l}] with its per-j decomposition; value == sum of terms.
struct MomentResult {
    int n = 0, k = 0, l = 0, order = 2;
    Rational value;
    std::vector<Rational> per_j_terms;
};

struct MomentResultLog {
    int n = 0, k = 0, l = 0, order = 2;
    LogReal value;
    std::vector<LogReal> per_j_terms;
};

// E[Z_{n,k}] = C(n,k) / k!; zero when k > n.
Rational mean_z(int n, int k);
LogReal log_mean_z(int n, int k);

// A(k,l,j) as a single value. Exact mode enforces the configured cap;
// log-space mode is the route for large arguments.
BigInt comb_a_exact(int k, int l, int j);
LogReal comb_a_log(int k, int l, int j);

// All slices j = 0..max_j over the (max_k, max_l) corner in one build.
// Cells are independent; the log build fans rows out over the thread
// budget, with a fixed two-pass reduction order inside each cell so
// results do not depend on the thread count.
std::vector<CombSlice> build_comb_a_slices_exact(int max_k, int max_l, int max_j);
std::vector<CombSlice> build_comb_a_slices_log(int max_k, int max_l, int max_j);

// Second moment via the overlap decomposition
//   E[Z_{n,k} Z_{n,l}] = sum_j E[Z_{n,k+l-j}] A(k-j, l-j, j).
// The per-j terms are kept so the maximizing overlap can be read off.
MomentResult second_moment(int n, int k, int l);
MomentResultLog log_second_moment(int n, int k, int l);

// r-subsequence generalization: (j+1)-fold r-dimensional convolution
// power of squared multinomials, evaluated at ks. r=2 reduces to
// comb_a.
BigInt comb_a_tilde_exact(int r, std::span<const int> ks, int j);
LogReal comb_a_tilde_log(int r, std::span<const int> ks, int j);
BigInt comb_a_tilde_exact(int r, std::initializer_list<int> ks, int j);

// Certified lower bound for E[Z_{n,k}^r] (r >= 2): the all-shared-point
// sector sum_j E[Z_{n,rk-(r-1)j}] * Atilde_r(k-j,...,k-j,j). Exact
// identity for r = 2.
Rational all_or_nothing_bound(int n, int k, int r);

// CSV with columns k,l,j,value (exact) or k,l,j,log_value (logspace);
// the header can be suppressed when concatenating slices.
void write_slice_csv(std::ostream& os, const CombSlice& slice, bool header = true);

} // namespace ulam
