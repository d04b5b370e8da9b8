#pragma once

#include "ulam/numkernel.hpp"

#include <vector>

namespace ulam {

// Exponential-sums model: N_{n,k}(t) counts the k-subsets of n iid
// exponential(1) variables whose sum stays below t. First moments are
// exact, higher moments carry a replica-symmetric ansatz value, and
// the m -> 0 continuation is bounded by a partition-count constraint.

// E[N_{n,k}(t)] = C(n,k) * P(k,t) with P the regularized lower
// incomplete gamma function.
double expect_n(int n, int k, double t);

struct McResult {
    double mean = 0.0;
    double stderr_mean = 0.0;
    long long samples = 0;
};

// Monte Carlo estimate of E[N_{n,k}(t)]: per sample, draw and sort the
// n variables and count qualifying subsets by backtracking over the
// sorted array with smallest-completion pruning and an all-fit
// shortcut. Deterministic for a fixed seed; per-sample RNG streams are
// derived by a fixed splitmix step, so the result does not depend on
// evaluation order.
McResult mc_n(int n, int k, double t, long long samples, unsigned long long seed);

// f_m(z) = sum_{l=1..m} C(m,l) z^l / l for integer m; the integral
// form int_0^z ((1+y)^m - 1)/y dy accepts real m.
double f_m_sum(int m, double z);
double f_m_integral(double m, double z);

// Replica-symmetric critical point for the m-th moment: overlap
// weights kappa_l and budgets tau_l driven by the solution z of
// ((1+z)^m - 1) / sqrt(f_m(z)) = kappa sqrt(m) / sqrt(t).
struct ReplicaSolution {
    int m = 0;
    double kappa = 0.0;
    double t = 0.0;
    double z = 0.0;
    std::vector<double> kappa_l; // index l-1 holds kappa_l, l = 1..m
    std::vector<double> tau_l;
    double ld_value = 0.0; // ansatz rate for n^(-1/2) ln E[N^m]

    // residuals of sum C(m-1,l-1) kappa_l = kappa and the same for tau/t
    double kappa_constraint_residual() const;
    double t_constraint_residual() const;
};

ReplicaSolution solve_z(int m, double kappa, double t);

// Ansatz value sqrt(mt/f) (2f - ln(z)((1+z)^m - 1)); cross-checked
// internally against the constrained-sum form
// sum C(m,l) kappa_l (2 - 2 ln kappa_l + ln tau_l).
double replica_moment_ld(const ReplicaSolution& sol);
double replica_constrained_sum(const ReplicaSolution& sol);

// Dilogarithm for x <= 1: power series on |x| <= 1/2, functional
// equations elsewhere; relative error ~1e-15.
double dilog(double x);

struct ReplicaZeroResult {
    double z = 0.0;
    double value = 0.0;
};

// m -> 0 continuation: solve ln(1+z)/sqrt(-Li2(-z)) = kappa/sqrt(t)
// (left side increases to sqrt(2), so kappa/sqrt(t) >= sqrt(2) is
// infeasible) and evaluate
// sqrt(t/(-Li2(-z))) (-2 Li2(-z) - ln(z) ln(1+z)).
ReplicaZeroResult replica_to_zero(double kappa, double t);

// Partition tables: rho(n,k) = partitions of n into k distinct parts,
// p(n,k) = partitions into k parts. Both filled by their standard
// recurrences; the shift identity rho(n,k) = p(n - k(k-1)/2, k) is
// verified across the whole table on construction.
struct PartitionTables {
    int max_n = 0;
    int max_k = 0;
    std::vector<std::vector<BigInt>> rho; // [n][k]
    std::vector<std::vector<BigInt>> p;
};

PartitionTables partition_counts(int max_n, int max_k);

// Independent route to rho: coefficients of prod_{i<=max_n} (1 + q^i z)
// truncated at q^max_n z^max_k, built by iterated polynomial products.
std::vector<std::vector<BigInt>> partition_gf_table(int max_n, int max_k);

struct PoissonCheck {
    double t_star = 0.0;
    double max_value = 0.0;
};

// max_t [kappa ln(t/kappa) - t + kappa]: grid plus golden refinement;
// verifies the maximum sits at t = kappa with value 0.
PoissonCheck poisson_ld_check(double kappa);

} // namespace ulam
