#pragma once

#include <cstddef>
#include <string>

namespace ulam {

// Runtime caps and tolerances. Defaults are chosen so that every
// supported desk-scale computation finishes in seconds; callers may
// override them from a key=value config file before starting work.
struct Config {
    // numkernel
    std::size_t factorial_memo_cap = 10000;

    // ulam_exact: exact big-integer tables are refused beyond this
    // product max(k,1)*max(l,1)*max(j,1); use the log-space path instead.
    long long exact_cell_cap = 20LL * 20LL * 20LL;

    // perm_oracle enumeration caps
    int perm_enum_max_n = 9;   // full S_n enumeration
    int walk_enum_max_len = 10; // 4^(k+l) walk enumeration

    // genfun
    int series_default_degree = 14;
    int quad_start_nodes = 64;
    int quad_max_nodes_1d = 1 << 16;
    int quad_max_nodes_2d = 1 << 12; // per dimension
    double quad_tol = 1e-12;

    // solvable / Monte Carlo
    int mc_max_n = 40;
    int mc_max_k = 8;
    long long mc_node_cap = 10000000; // backtracking nodes per batch
    long long partition_cell_cap = 200000;

    // root finding
    int bisect_max_iter = 200;
    double bisect_tol = 1e-14;
};

Config& config();

// Parse "key=value" lines ('#' starts a comment) into the global config.
// Unknown keys are an error; returns the number of keys applied.
int load_config_file(const std::string& path);

// Thread budget: ULAMLAB_THREADS if set (clamped to >=1), otherwise
// hardware concurrency.
unsigned thread_budget();

} // namespace ulam
