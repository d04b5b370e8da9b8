#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ulam {

// One row of the machine-readable verification report. status is
// "pass", "fail" or "discrepancy"; discrepancy is reserved for the
// documented closed-form-vs-oracle divergences and does not fail a
// run. Every row states the normalization its numbers are in.
struct VerificationRecord {
    std::string check_id;
    std::string status;
    std::string lhs;
    std::string rhs;
    double abs_err = 0.0;
    double rel_err = 0.0;
    double tolerance = 0.0;
    std::string normalization;
    std::string notes;
};

// Numeric comparison: pass iff |lhs-rhs| <= tolerance.
VerificationRecord check_close(std::string check_id, double lhs, double rhs,
                               double tolerance, std::string normalization,
                               std::string notes = {});

// Exact comparison of already-rendered values (fractions, integers).
VerificationRecord check_exact(std::string check_id, std::string lhs, std::string rhs,
                               bool equal, std::string normalization,
                               std::string notes = {});

// Boolean predicate with a descriptive value string.
VerificationRecord check_that(std::string check_id, bool ok, std::string value,
                              std::string normalization, std::string notes = {});

// A documented divergence: always status "discrepancy".
VerificationRecord record_discrepancy(std::string check_id, double stated, double oracle,
                                      std::string normalization, std::string notes);

// Suite names: exact, gf, elliptic, rates, solvable, all.
bool is_known_suite(const std::string& suite);
std::vector<VerificationRecord> verify_suite(const std::string& suite);

void write_report_json(std::ostream& os, const std::string& suite,
                       const std::vector<VerificationRecord>& records);

// Runs the suite, writes the JSON report to out_path, prints one line
// per record to `log`. Returns 0 iff no record failed (discrepancies
// do not fail the run). I/O problems surface as exceptions.
int run_verify(const std::string& suite, const std::string& out_path, std::ostream& log);

} // namespace ulam
