#ifndef VLP_EXPERIMENTS_HPP
#define VLP_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include "vlp/gridfn.hpp"
#include "vlp/lpspace.hpp"
#include "vlp/report.hpp"
#include "vlp/rng.hpp"
#include "vlp/stochastic.hpp"

namespace vlp {

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckLine> lines;
    bool all_pass() const;
    std::string text() const; // one PASS/FAIL line per check
};

/// Runs one verification suite ("inequalities", "lp", "convergence",
/// "stochastic" or "all").  The tamper switch corrupts a certificate inside
/// the lp suite, the negative control used to prove the checkers bite.
VerifyReport verify_suite(const RunConfig& cfg, const std::string& suite,
                          bool inject_tamper = false);

/// figure1: the squared bridge trajectories; figure2: the Phi surface of the
/// first path over the x list; section: the largest-x slice with its
/// sup-distance from f^2.  The override replaces the squared bridge (used by
/// schema tests).
void write_figures(const RunConfig& cfg, const GridProcess* override_f = nullptr);

struct RecoverySummaryRow {
    double eps;
    double sup_error;
};

/// recovery + recovery_summary artifacts for the built-in bump signal.
std::vector<RecoverySummaryRow> write_recovery(const RunConfig& cfg);

/// The non-completeness table as an artifact (columns n, m, mu_symm_diff,
/// cauchy_value).
void write_noncompleteness(const RunConfig& cfg, const NoncompletenessReport& rep);

/// Artifact path for a given base name under the config output directory.
std::string artifact_path(const RunConfig& cfg, const std::string& base);

// Reproducible corpora (shared between the suites and the test binaries).

/// Midpoint-convex polynomial of degree <= 4 per coordinate.
GridFunction random_convex_gridfn(Rng& rng, double lo, double hi, std::size_t n_nodes,
                                  std::size_t dim);

/// Random simple function over a random partition of the ground set.
SimpleFunction random_simple_function(Rng& rng, const SiteSpace& space, std::size_t dim,
                                      int max_parts, double lo, double hi);

} // namespace vlp

#endif
