// ulamlab: exact moments, generating functions, rate functions and the
// solvable exponential-sums model, with a machine-readable verification
// report. See README.md for examples.

#include "ulam/config.hpp"
#include "ulam/elliptic3.hpp"
#include "ulam/genfun.hpp"
#include "ulam/numkernel.hpp"
#include "ulam/perm_oracle.hpp"
#include "ulam/ratefun.hpp"
#include "ulam/report.hpp"
#include "ulam/solvable.hpp"
#include "ulam/ulam_exact.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

void print_real(const char* label, double v) {
    std::printf("%s%.15g\n", label, v);
}

void print_logreal(const char* label, const ulam::LogReal& v) {
    if (v.is_zero()) std::printf("%ssign=0\n", label);
    else std::printf("%ssign=%+d ln=%.15g\n", label, v.sign, v.logmag);
}

int cmd_moments(int n, int k, int l, int order, bool logspace, bool per_j,
                const std::string& slice_csv) {
    if (order == 1) {
        if (logspace) print_logreal("", ulam::log_mean_z(n, k));
        else std::printf("%s\n", ulam::to_fraction_string(ulam::mean_z(n, k)).c_str());
        return 0;
    }
    if (logspace) {
        const auto r = ulam::log_second_moment(n, k, l);
        print_logreal("", r.value);
        if (per_j)
            for (std::size_t j = 0; j < r.per_j_terms.size(); ++j) {
                std::printf("j=%zu ", j);
                print_logreal("", r.per_j_terms[j]);
            }
    } else {
        const auto r = ulam::second_moment(n, k, l);
        std::printf("%s\n", ulam::to_fraction_string(r.value).c_str());
        if (per_j)
            for (std::size_t j = 0; j < r.per_j_terms.size(); ++j)
                std::printf("j=%zu %s\n", j,
                            ulam::to_fraction_string(r.per_j_terms[j]).c_str());
    }
    if (!slice_csv.empty()) {
        std::ofstream out(slice_csv);
        if (!out) throw std::runtime_error("cannot open " + slice_csv);
        const int jmax = std::min(k, l);
        if (logspace) {
            const auto slices = ulam::build_comb_a_slices_log(k, l, jmax);
            for (const auto& s : slices) ulam::write_slice_csv(out, s, s.j == 0);
        } else {
            const auto slices = ulam::build_comb_a_slices_exact(k, l, jmax);
            for (const auto& s : slices) ulam::write_slice_csv(out, s, s.j == 0);
        }
    }
    return 0;
}

int cmd_rate(double kappa, double lambda, double gamma, bool has_gamma,
             const std::string& form) {
    if (has_gamma) {
        ulam::RateForm f = ulam::RateForm::xyz;
        if (form == "hform") f = ulam::RateForm::hform;
        else if (form == "symmetric") f = ulam::RateForm::symmetric;
        else if (form != "xyz") throw CLI::ValidationError("--form must be xyz|hform|symmetric");
        print_real("", ulam::rate_a({kappa, lambda, gamma}, f));
        return 0;
    }
    // no gamma: full second-moment rate report at (kappa, lambda)
    const auto oracle = ulam::varadhan_second_moment(kappa, lambda);
    print_real("oracle_value=", oracle.value);
    print_real("gamma_star=", oracle.gamma_star);
    if (kappa == lambda) {
        const auto lemma = ulam::ld_second_moment_stated(kappa);
        print_real("symmetric_stated=", lemma.stated_value);
        print_real("symmetric_discrepancy=", lemma.discrepancy);
    }
    const auto asym = ulam::ld_mixed_stated(kappa, lambda);
    print_real("mixed_stated=", asym.stated_value);
    print_real("mixed_discrepancy=", asym.discrepancy);
    std::printf("normalization=per sqrt(n)\n");
    return 0;
}

int cmd_series(int max_degree, const std::string& out_path, int tilde_r) {
    const ulam::SeriesMV s = tilde_r > 0 ? ulam::gf_a_tilde(tilde_r, max_degree)
                                         : ulam::gf_a(max_degree);
    std::vector<std::string> names;
    if (tilde_r > 0) {
        for (int i = 1; i <= tilde_r; ++i) names.push_back("k" + std::to_string(i));
        names.emplace_back("j");
    } else {
        names = {"k", "l", "j"};
    }
    if (out_path.empty()) {
        ulam::write_series_csv(std::cout, s, names);
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open " + out_path);
        ulam::write_series_csv(out, s, names);
    }
    return 0;
}

int cmd_elliptic(const std::vector<double>& x) {
    const auto f = ulam::factorization(x[0], x[1], x[2]);
    print_real("kappa_plus=", f.kappa_plus);
    print_real("kappa_minus=", f.kappa_minus);
    print_real("modulus=", f.modulus);
    print_real("K=", ulam::elliptic_k(f.modulus));
    if (x[2] > 0.0) {
        print_real("omega_pp=", f.omegas.pp);
        print_real("omega_pm=", f.omegas.pm);
        print_real("omega_mp=", f.omegas.mp);
        print_real("omega_mm=", f.omegas.mm);
    }
    const double m3 = ulam::m3_elliptic(x[0], x[1], x[2]);
    print_real("m3=", m3);
    const double series = ulam::m3_series(x[0] * x[0], x[1] * x[1], x[2] * x[2], 40);
    print_real("series_check_delta=", m3 - series);
    return 0;
}

int cmd_solvable(int m, double kappa, double t, bool to_zero) {
    if (to_zero) {
        const auto r = ulam::replica_to_zero(kappa, t);
        print_real("z=", r.z);
        print_real("value=", r.value);
        std::printf("normalization=per sqrt(n), ansatz\n");
        return 0;
    }
    const auto sol = ulam::solve_z(m, kappa, t);
    std::printf("m,kappa,t,z,ld_value\n");
    std::printf("%d,%.15g,%.15g,%.15g,%.15g\n", sol.m, sol.kappa, sol.t, sol.z, sol.ld_value);
    std::printf("l,kappa_l,tau_l\n");
    for (int l = 1; l <= m; ++l)
        std::printf("%d,%.15g,%.15g\n", l, sol.kappa_l[static_cast<std::size_t>(l - 1)],
                    sol.tau_l[static_cast<std::size_t>(l - 1)]);
    return 0;
}

int cmd_mc(int n, int k, double t, long long samples, unsigned long long seed) {
    const auto mc = ulam::mc_n(n, k, t, samples, seed);
    print_real("mean=", mc.mean);
    print_real("stderr=", mc.stderr_mean);
    const double exact = ulam::expect_n(n, k, t);
    print_real("exact=", exact);
    if (mc.stderr_mean > 0.0) print_real("sigma_distance=", (mc.mean - exact) / mc.stderr_mean);
    return 0;
}

int cmd_oracle(int n, int k, int l, bool has_l, int order) {
    std::vector<int> ks{k};
    if (has_l) ks.push_back(l);
    while (static_cast<int>(ks.size()) < order) ks.push_back(ks.back());
    if (static_cast<int>(ks.size()) > order) ks.resize(static_cast<std::size_t>(order));
    std::printf("%s\n", ulam::to_fraction_string(ulam::brute_moments(n, ks)).c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and asymptotic analysis of increasing-subsequence counts"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key=value file overriding caps and tolerances");

    // moments
    auto* moments = app.add_subcommand("moments", "exact or log-space moments of Z_{n,k}");
    int m_n = 0, m_k = 0, m_l = -1, m_order = 0;
    bool m_log = false, m_perj = false;
    std::string m_slice;
    moments->add_option("--n", m_n, "permutation size")->required();
    moments->add_option("--k", m_k, "first subsequence length")->required();
    moments->add_option("--l", m_l, "second subsequence length (defaults to k)");
    moments->add_option("--order", m_order, "1 = mean, 2 = pair moment (default: 2 if --l, else 1)");
    moments->add_flag("--log", m_log, "log-space path for large n");
    moments->add_flag("--per-j", m_perj, "print the per-overlap decomposition");
    moments->add_option("--slice-csv", m_slice, "write the overlap tables used to CSV");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "brute-force moments by full S_n enumeration");
    int o_n = 0, o_k = 0, o_l = 0, o_order = 0;
    oracle->add_option("--n", o_n, "permutation size (<= enumeration cap)")->required();
    oracle->add_option("--k", o_k, "subsequence length")->required();
    auto* o_lopt = oracle->add_option("--l", o_l, "second length");
    oracle->add_option("--order", o_order, "moment order 1..3 (default: number of lengths)");

    // rate
    auto* rate = app.add_subcommand("rate", "large-deviation rate functions");
    double r_kappa = 0.0, r_lambda = -1.0, r_gamma = 0.0;
    std::string r_form = "xyz";
    rate->add_option("--kappa", r_kappa, "k / sqrt(n) density")->required();
    rate->add_option("--lambda", r_lambda, "l / sqrt(n) density (defaults to kappa)");
    auto* r_gopt = rate->add_option("--gamma", r_gamma, "overlap density (A-array rate)");
    rate->add_option("--form", r_form, "xyz | hform | symmetric");

    // series
    auto* series = app.add_subcommand("series", "exact GF coefficients as CSV");
    int s_degree = ulam::config().series_default_degree, s_tilde = 0;
    std::string s_out;
    series->add_option("--max-degree", s_degree, "total-degree truncation");
    series->add_option("--out", s_out, "output file (default: stdout)");
    series->add_option("--tilde-r", s_tilde, "emit the r-subsequence GF instead");

    // elliptic
    auto* elliptic = app.add_subcommand("elliptic", "three-variable diagonal closed form");
    std::vector<double> e_x;
    elliptic->add_option("--x", e_x, "x1 x2 x3")->expected(3)->required();

    // solvable
    auto* solvable = app.add_subcommand("solvable", "replica-symmetric solution of the model");
    int v_m = 1;
    double v_kappa = 1.0, v_t = 1.0;
    bool v_zero = false;
    solvable->add_option("--m", v_m, "moment order");
    solvable->add_option("--kappa", v_kappa, "k / sqrt(n) density")->required();
    solvable->add_option("--t", v_t, "sum budget")->required();
    solvable->add_flag("--to-zero", v_zero, "replica-to-zero continuation instead");

    // mc
    auto* mc = app.add_subcommand("mc", "Monte Carlo check of the model mean");
    int c_n = 0, c_k = 0;
    double c_t = 0.0;
    long long c_samples = 100000;
    unsigned long long c_seed = 42;
    mc->add_option("--n", c_n)->required();
    mc->add_option("--k", c_k)->required();
    mc->add_option("--t", c_t)->required();
    mc->add_option("--samples", c_samples);
    mc->add_option("--seed", c_seed);

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite, write JSON report");
    std::string y_suite = "all", y_json;
    verify->add_option("--suite", y_suite, "all | exact | gf | elliptic | rates | solvable");
    verify->add_option("--json", y_json, "report path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) ulam::load_config_file(config_path);
        if (*moments) {
            const bool has_l = m_l >= 0;
            if (m_order == 0) m_order = has_l ? 2 : 1;
            if (m_order != 1 && m_order != 2)
                throw CLI::ValidationError("--order must be 1 or 2");
            return cmd_moments(m_n, m_k, has_l ? m_l : m_k, m_order, m_log, m_perj, m_slice);
        }
        if (*oracle) {
            if (o_order == 0) o_order = o_lopt->count() ? 2 : 1;
            if (o_order < 1 || o_order > 3)
                throw CLI::ValidationError("--order must be 1, 2 or 3");
            return cmd_oracle(o_n, o_k, o_l, o_lopt->count() > 0, o_order);
        }
        if (*rate) {
            if (r_lambda < 0.0) r_lambda = r_kappa;
            return cmd_rate(r_kappa, r_lambda, r_gamma, r_gopt->count() > 0, r_form);
        }
        if (*series) return cmd_series(s_degree, s_out, s_tilde);
        if (*elliptic) return cmd_elliptic(e_x);
        if (*solvable) return cmd_solvable(v_m, v_kappa, v_t, v_zero);
        if (*mc) return cmd_mc(c_n, c_k, c_t, c_samples, c_seed);
        if (*verify) {
            if (!ulam::is_known_suite(y_suite))
                throw CLI::ValidationError("unknown suite: " + y_suite);
            return ulam::run_verify(y_suite, y_json, std::cout);
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
