#include "ulam/ulam_exact.hpp"
#include "ulam/config.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

namespace ulam {

namespace {

std::size_t cell_index(const int b_stride, const int a, const int b) {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(b_stride) +
           static_cast<std::size_t>(b);
}

void check_exact_cap(long long k, long long l, long long j) {
    const long long load = std::max(k, 1LL) * std::max(l, 1LL) * std::max(j, 1LL);
    if (load > config().exact_cell_cap)
        throw ResourceError("exact A-table beyond size cap; use the log-space mode");
}

void check_nonneg(int k, int l, int j) {
    if (k < 0 || l < 0 || j < 0)
        throw std::invalid_argument("A(k,l,j): negative argument");
}

// ln of B(a,b) = C(a+b,a)^2, the one-block pair weight.
std::vector<double> log_b_table(int max_k, int max_l) {
    std::vector<double> t(static_cast<std::size_t>(max_k + 1) * static_cast<std::size_t>(max_l + 1));
    for (int a = 0; a <= max_k; ++a)
        for (int b = 0; b <= max_l; ++b)
            t[cell_index(max_l + 1, a, b)] = 2.0 * log_binomial(a + b, a);
    return t;
}

// Convolve one log slice with ln B. Each output cell is a two-pass
// log-sum-exp over its own terms in row-major order, so the value is
// identical no matter how the cells are distributed over threads.
std::vector<double> convolve_log(const std::vector<double>& prev,
                                 const std::vector<double>& logb,
                                 int max_k, int max_l) {
    const int stride = max_l + 1;
    std::vector<double> out(prev.size());
    std::atomic<int> next_row{0};
    const unsigned nthreads = std::min<unsigned>(thread_budget(), static_cast<unsigned>(max_k + 1));
    auto worker = [&] {
        for (;;) {
            const int a = next_row.fetch_add(1);
            if (a > max_k) return;
            for (int b = 0; b <= max_l; ++b) {
                double m = -std::numeric_limits<double>::infinity();
                for (int u = 0; u <= a; ++u)
                    for (int v = 0; v <= b; ++v) {
                        const double term = prev[cell_index(stride, u, v)] +
                                            logb[cell_index(stride, a - u, b - v)];
                        if (term > m) m = term;
                    }
                double acc = 0.0;
                for (int u = 0; u <= a; ++u)
                    for (int v = 0; v <= b; ++v)
                        acc += std::exp(prev[cell_index(stride, u, v)] +
                                        logb[cell_index(stride, a - u, b - v)] - m);
                out[cell_index(stride, a, b)] = m + std::log(acc);
            }
        }
    };
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return out;
}

std::vector<BigInt> convolve_exact(const std::vector<BigInt>& prev,
                                   const std::vector<BigInt>& b_table,
                                   int max_k, int max_l) {
    const int stride = max_l + 1;
    std::vector<BigInt> out(prev.size());
    for (int a = 0; a <= max_k; ++a)
        for (int b = 0; b <= max_l; ++b) {
            BigInt acc = 0;
            for (int u = 0; u <= a; ++u)
                for (int v = 0; v <= b; ++v)
                    acc += prev[cell_index(stride, u, v)] * b_table[cell_index(stride, a - u, b - v)];
            out[cell_index(stride, a, b)] = std::move(acc);
        }
    return out;
}

} // namespace

const BigInt& CombSlice::at(int a, int b) const {
    if (mode != TableMode::exact) throw std::logic_error("CombSlice: not an exact slice");
    return exact[cell_index(max_l + 1, a, b)];
}

double CombSlice::log_at(int a, int b) const {
    if (mode != TableMode::logspace) throw std::logic_error("CombSlice: not a log slice");
    return logval[cell_index(max_l + 1, a, b)];
}

Rational mean_z(int n, int k) {
    if (n < 1 || k < 1) throw std::invalid_argument("mean_z: need n >= 1, k >= 1");
    return Rational(binomial(n, k), factorial(static_cast<unsigned>(k)));
}

LogReal log_mean_z(int n, int k) {
    if (n < 1 || k < 1) throw std::invalid_argument("log_mean_z: need n >= 1, k >= 1");
    if (k > n) return LogReal::zero();
    return LogReal::from_log(log_binomial(n, k) - log_factorial(k));
}

std::vector<CombSlice> build_comb_a_slices_exact(int max_k, int max_l, int max_j) {
    check_nonneg(max_k, max_l, max_j);
    check_exact_cap(max_k, max_l, max_j);
    const int stride = max_l + 1;
    std::vector<BigInt> b_table(static_cast<std::size_t>(max_k + 1) * static_cast<std::size_t>(stride));
    for (int a = 0; a <= max_k; ++a)
        for (int b = 0; b <= max_l; ++b) {
            const BigInt c = binomial(a + b, a);
            b_table[cell_index(stride, a, b)] = c * c;
        }
    std::vector<CombSlice> slices;
    slices.reserve(static_cast<std::size_t>(max_j) + 1);
    std::vector<BigInt> cur = b_table;
    for (int j = 0; j <= max_j; ++j) {
        if (j > 0) cur = convolve_exact(cur, b_table, max_k, max_l);
        CombSlice s;
        s.j = j;
        s.max_k = max_k;
        s.max_l = max_l;
        s.mode = TableMode::exact;
        s.exact = cur;
        slices.push_back(std::move(s));
    }
    return slices;
}

std::vector<CombSlice> build_comb_a_slices_log(int max_k, int max_l, int max_j) {
    check_nonneg(max_k, max_l, max_j);
    const auto logb = log_b_table(max_k, max_l);
    std::vector<CombSlice> slices;
    slices.reserve(static_cast<std::size_t>(max_j) + 1);
    std::vector<double> cur = logb;
    for (int j = 0; j <= max_j; ++j) {
        if (j > 0) cur = convolve_log(cur, logb, max_k, max_l);
        CombSlice s;
        s.j = j;
        s.max_k = max_k;
        s.max_l = max_l;
        s.mode = TableMode::logspace;
        s.logval = cur;
        slices.push_back(std::move(s));
    }
    return slices;
}

BigInt comb_a_exact(int k, int l, int j) {
    check_nonneg(k, l, j);
    const auto slices = build_comb_a_slices_exact(k, l, j);
    return slices.back().at(k, l);
}

LogReal comb_a_log(int k, int l, int j) {
    check_nonneg(k, l, j);
    const auto slices = build_comb_a_slices_log(k, l, j);
    return slices.back().logreal_at(k, l);
}

MomentResult second_moment(int n, int k, int l) {
    if (k < 1 || l < 1 || k > n || l > n)
        throw std::invalid_argument("second_moment: need 1 <= k,l <= n");
    const int jmax = std::min(k, l);
    const auto slices = build_comb_a_slices_exact(k, l, jmax);
    MomentResult r;
    r.n = n;
    r.k = k;
    r.l = l;
    r.per_j_terms.reserve(static_cast<std::size_t>(jmax) + 1);
    for (int j = 0; j <= jmax; ++j) {
        // mean term vanishes when k+l-j > n, which keeps the sum total
        Rational mean = (k + l - j > n) ? Rational(0)
                                        : mean_z(n, k + l - j);
        Rational term = mean * Rational(slices[static_cast<std::size_t>(j)].at(k - j, l - j));
        r.value += term;
        r.per_j_terms.push_back(std::move(term));
    }
    return r;
}

MomentResultLog log_second_moment(int n, int k, int l) {
    if (k < 1 || l < 1 || k > n || l > n)
        throw std::invalid_argument("log_second_moment: need 1 <= k,l <= n");
    const int jmax = std::min(k, l);
    const auto slices = build_comb_a_slices_log(k, l, jmax);
    MomentResultLog r;
    r.n = n;
    r.k = k;
    r.l = l;
    r.per_j_terms.reserve(static_cast<std::size_t>(jmax) + 1);
    for (int j = 0; j <= jmax; ++j) {
        const LogReal mean = (k + l - j > n) ? LogReal::zero() : log_mean_z(n, k + l - j);
        r.per_j_terms.push_back(mean * slices[static_cast<std::size_t>(j)].logreal_at(k - j, l - j));
    }
    r.value = log_sum_exp(r.per_j_terms);
    return r;
}

namespace {

// Dense r-dimensional tables, row-major over dims[i] = ks[i]+1.
struct MultiTableShape {
    std::vector<int> dims;
    std::vector<std::size_t> strides;
    std::size_t total = 1;

    explicit MultiTableShape(std::span<const int> ks) {
        dims.reserve(ks.size());
        for (int k : ks) dims.push_back(k + 1);
        strides.assign(dims.size(), 1);
        for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
            strides[static_cast<std::size_t>(i)] =
                strides[static_cast<std::size_t>(i + 1)] * static_cast<std::size_t>(dims[static_cast<std::size_t>(i + 1)]);
        for (int d : dims) total *= static_cast<std::size_t>(d);
    }

    void decode(std::size_t flat, std::vector<int>& idx) const {
        for (std::size_t i = 0; i < dims.size(); ++i) {
            idx[i] = static_cast<int>(flat / strides[i]);
            flat %= strides[i];
        }
    }
};

template <typename Cell, typename Combine>
std::vector<Cell> convolve_multi(const MultiTableShape& shape,
                                 const std::vector<Cell>& prev,
                                 const std::vector<Cell>& base,
                                 Combine&& combine) {
    const std::size_t r = shape.dims.size();
    std::vector<Cell> out(shape.total);
    std::vector<int> target(r), u(r);
    for (std::size_t flat = 0; flat < shape.total; ++flat) {
        shape.decode(flat, target);
        // odometer over u with u[i] <= target[i]
        std::fill(u.begin(), u.end(), 0);
        std::vector<std::pair<std::size_t, std::size_t>> terms; // (prev idx, base idx)
        for (;;) {
            std::size_t pi = 0, bi = 0;
            for (std::size_t i = 0; i < r; ++i) {
                pi += static_cast<std::size_t>(u[i]) * shape.strides[i];
                bi += static_cast<std::size_t>(target[i] - u[i]) * shape.strides[i];
            }
            terms.emplace_back(pi, bi);
            std::size_t pos = r;
            while (pos > 0) {
                --pos;
                if (u[pos] < target[pos]) {
                    ++u[pos];
                    std::fill(u.begin() + static_cast<std::ptrdiff_t>(pos) + 1, u.end(), 0);
                    break;
                }
                if (pos == 0) { pos = r + 1; break; }
            }
            if (pos == r + 1 || r == 0) break;
        }
        out[flat] = combine(prev, base, terms);
    }
    return out;
}

} // namespace

BigInt comb_a_tilde_exact(int r, std::span<const int> ks, int j) {
    if (r < 1 || static_cast<int>(ks.size()) != r)
        throw std::invalid_argument("comb_a_tilde: need r >= 1 and r lengths");
    if (j < 0) throw std::invalid_argument("comb_a_tilde: j >= 0");
    long long load = std::max(j, 1);
    for (int k : ks) {
        if (k < 0) throw std::invalid_argument("comb_a_tilde: negative length");
        load *= std::max(k, 1);
    }
    if (load > config().exact_cell_cap)
        throw ResourceError("exact Atilde-table beyond size cap; use the log-space mode");

    const MultiTableShape shape(ks);
    std::vector<BigInt> base(shape.total);
    std::vector<int> idx(static_cast<std::size_t>(r));
    std::vector<long long> parts(static_cast<std::size_t>(r));
    for (std::size_t flat = 0; flat < shape.total; ++flat) {
        shape.decode(flat, idx);
        for (std::size_t i = 0; i < idx.size(); ++i) parts[i] = idx[i];
        const BigInt m = multinomial(std::span<const long long>(parts.data(), parts.size()));
        base[flat] = m * m;
    }
    auto combine = [](const std::vector<BigInt>& prev, const std::vector<BigInt>& b,
                      const std::vector<std::pair<std::size_t, std::size_t>>& terms) {
        BigInt acc = 0;
        for (const auto& [pi, bi] : terms) acc += prev[pi] * b[bi];
        return acc;
    };
    std::vector<BigInt> cur = base;
    for (int step = 0; step < j; ++step) cur = convolve_multi(shape, cur, base, combine);
    return cur.back(); // flat index of (ks[0],...,ks[r-1]) is the last cell
}

LogReal comb_a_tilde_log(int r, std::span<const int> ks, int j) {
    if (r < 1 || static_cast<int>(ks.size()) != r)
        throw std::invalid_argument("comb_a_tilde: need r >= 1 and r lengths");
    if (j < 0) throw std::invalid_argument("comb_a_tilde: j >= 0");
    const MultiTableShape shape(ks);
    std::vector<double> base(shape.total);
    std::vector<int> idx(static_cast<std::size_t>(r));
    std::vector<long long> parts(static_cast<std::size_t>(r));
    for (std::size_t flat = 0; flat < shape.total; ++flat) {
        shape.decode(flat, idx);
        for (std::size_t i = 0; i < idx.size(); ++i) parts[i] = idx[i];
        base[flat] = 2.0 * log_multinomial(std::span<const long long>(parts.data(), parts.size()));
    }
    auto combine = [](const std::vector<double>& prev, const std::vector<double>& b,
                      const std::vector<std::pair<std::size_t, std::size_t>>& terms) {
        double m = -std::numeric_limits<double>::infinity();
        for (const auto& [pi, bi] : terms) m = std::max(m, prev[pi] + b[bi]);
        double acc = 0.0;
        for (const auto& [pi, bi] : terms) acc += std::exp(prev[pi] + b[bi] - m);
        return m + std::log(acc);
    };
    std::vector<double> cur = base;
    for (int step = 0; step < j; ++step) cur = convolve_multi(shape, cur, base, combine);
    return LogReal::from_log(cur.back());
}

BigInt comb_a_tilde_exact(int r, std::initializer_list<int> ks, int j) {
    return comb_a_tilde_exact(r, std::span<const int>(ks.begin(), ks.size()), j);
}

Rational all_or_nothing_bound(int n, int k, int r) {
    if (r < 2) throw std::invalid_argument("all_or_nothing_bound: need r >= 2");
    if (k < 1 || k > n) throw std::invalid_argument("all_or_nothing_bound: need 1 <= k <= n");
    Rational acc = 0;
    for (int j = 0; j <= k; ++j) {
        const int order = r * k - (r - 1) * j;
        if (order > n) continue; // vanishing mean
        std::vector<int> ks(static_cast<std::size_t>(r), k - j);
        const BigInt w = comb_a_tilde_exact(r, ks, j);
        acc += (order == 0 ? Rational(1) : mean_z(n, order)) * Rational(w);
    }
    return acc;
}

void write_slice_csv(std::ostream& os, const CombSlice& slice, bool header) {
    const bool exact = slice.mode == TableMode::exact;
    if (header) os << (exact ? "k,l,j,value\n" : "k,l,j,log_value\n");
    for (int a = 0; a <= slice.max_k; ++a)
        for (int b = 0; b <= slice.max_l; ++b) {
            os << a << ',' << b << ',' << slice.j << ',';
            if (exact) {
                os << slice.at(a, b).str();
            } else {
                std::ostringstream tmp;
                tmp.precision(15);
                tmp << slice.log_at(a, b);
                os << tmp.str();
            }
            os << '\n';
        }
}

} // namespace ulam
