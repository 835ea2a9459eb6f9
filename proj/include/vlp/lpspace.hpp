#ifndef VLP_LPSPACE_HPP
#define VLP_LPSPACE_HPP

#include <string>
#include <vector>

#include "vlp/convergence.hpp"
#include "vlp/lattice.hpp"
#include "vlp/measure.hpp"
#include "vlp/sites.hpp"

namespace vlp {

/// A simple function on a ground set: finitely many lattice values, each on
/// a set of the algebra, zero elsewhere.  Parts must be pairwise disjoint.
/// On a finite ground set the support automatically has finite measure, so
/// every simple function here lies in L*.
class SimpleFunction {
public:
    struct Part {
        SiteSet sites;
        LatticeElement value;
    };

    SimpleFunction(std::vector<Part> parts, std::size_t dim, std::size_t n_sites);

    /// One part per distinct value of the sampled function.
    static SimpleFunction from_sites(const SiteFunction& values, std::size_t n_sites);
    static SimpleFunction indicator(const SiteSet& a, const LatticeElement& value,
                                    std::size_t n_sites);
    static SimpleFunction zero(std::size_t dim, std::size_t n_sites);

    const std::vector<Part>& parts() const { return parts_; }
    std::size_t dim() const { return dim_; }
    std::size_t n_sites() const { return n_sites_; }

    LatticeElement value_at(std::size_t site) const;
    SiteFunction to_site_function() const;

    SimpleFunction scale(double c) const;
    friend SimpleFunction operator+(const SimpleFunction& a, const SimpleFunction& b);
    friend SimpleFunction operator-(const SimpleFunction& a, const SimpleFunction& b);
    friend SimpleFunction mul(const SimpleFunction& a, const SimpleFunction& b);
    friend SimpleFunction abs(const SimpleFunction& a);
    friend SimpleFunction power(const SimpleFunction& a, int p);

    /// Rewrites both functions on one shared partition.
    static std::pair<SimpleFunction, SimpleFunction> common_refinement(const SimpleFunction& a,
                                                                       const SimpleFunction& b);

private:
    std::vector<Part> parts_;
    std::size_t dim_ = 1;
    std::size_t n_sites_ = 0;
};

/// int_A f dmu = sum over parts of value * mu(part n A).
LatticeElement integral_simple(const SimpleFunction& f, const SiteSet& a, const SiteSpace& space);
LatticeElement integral_simple(const SimpleFunction& f, const SiteSpace& space);

/// The integral modular iota(f) = int_G |f| dmu on simple functions.
LatticeElement iota(const SimpleFunction& f, const SiteSpace& space);

/// A defining-sequence certificate for integrability at finite horizon: the
/// sequence, its target, the exponent it is meant to certify, and the
/// absolute-continuity constant.  The checkers below validate what Def-style
/// existence claims assert: mu-convergence, equi-absolute continuity, and
/// uniform convergence of the set-indexed integrals.
struct DefiningSequence {
    std::vector<SimpleFunction> seq;
    SiteFunction target;
    int p = 1;
    double alpha = 1.0;

    long horizon() const { return static_cast<long>(seq.size()); }
};

struct CertParams {
    int mu_depth = 6;          // eps_p = sigma_p = 2^-p
    int ac_depth = 20;
    double ac_tol = 1e-6;
    double zvezda_tol = 1e-6;
    std::size_t max_sets = 128; // cap on the generated algebra family
};

/// Certificate for the target function itself (exponent 1).
Verdict defining_sequence_check(const DefiningSequence& cert, const SiteSpace& space,
                                const CertParams& params = {});

/// L^p membership: one basic sequence must define both f and f^p.
Verdict lp_membership(const SiteFunction& f, int p, const DefiningSequence& cert,
                      const SiteSpace& space, const CertParams& params = {});

/// Certificate for f + g built from certificates for f and g, with the
/// summed witnesses; also verifies the pointwise power bound
/// |f_n + g_n|^p <= 2^p (|f_n|^p + |g_n|^p) on the sampled sites.
DefiningSequence combine_certificates(const DefiningSequence& cert_f,
                                      const DefiningSequence& cert_g, int p,
                                      const SiteSpace& space);

/// sigma-finiteness triples: mu(H_k) <= beta_k and
/// {t : |f(t)| not<= N_k e} inside H_k, with (N_k) increasing.
struct CoverTriple {
    int level_n;
    SiteSet exceedance;
    double beta;
};
std::vector<CoverTriple> sigma_finite_cover(const DefiningSequence& cert, const SiteSpace& space,
                                            int k_max);

/// ||f||_p = || int_G |f|^p dmu ||_e^(1/p).
double lp_norm(const SiteFunction& f, int p, const SiteSpace& space, const OrderUnit& e);
double lp_norm(const SimpleFunction& f, int p, const SiteSpace& space, const OrderUnit& e);

/// Minkowski inequality plus the pointwise support bound
/// (|f|+|g|)^p <= alpha^(1-p) |f|^p + (1-alpha)^(1-p) |g|^p for sampled
/// alpha in (0,1).
Verdict minkowski_check(const SimpleFunction& f, const SimpleFunction& g, int p,
                        const SiteSpace& space, const OrderUnit& e, double tol = 1e-9);

/// Essentially mu-null: for every eps in the dyadic grid, the set where
/// |f(t)| >= eps e (as a lattice inequality) has measure zero.
Verdict essentially_null_check(const SiteFunction& f, const SiteSpace& space, int eps_depth = 30);

/// Canonical representative of the norm equivalence class: values are
/// zeroed on detected null sets (sites of zero weight).
SiteFunction canonical_representative(const SiteFunction& f, const SiteSpace& space);

/// The non-completeness tabulation for the dyadic finite/cofinite measure:
/// the Cauchy table of the indicator prefixes, the prefix measures, and the
/// certified non-attainment of 1 by the outer measure.
struct NoncompletenessRow {
    int n;
    int m;
    double mu_symm_diff;
    double cauchy_value; // M-norm of int |1_An - 1_Am|^p dmu
};

struct CandidateGap {
    std::string name;
    double mu_star;
    double gap;
    bool finite_side;
    // Certified bound: finite candidates have gap >= 2^-max(A); infinite
    // ones have gap equal to sum_{i in A} 2^-i exactly.
    double certified_bound;
    bool bound_is_exact;
};

struct NoncompletenessReport {
    int p = 1;
    int n_max = 2;
    std::vector<NoncompletenessRow> rows;
    std::vector<double> mu_prefix; // mu(A_n), n = 1..n_max
    std::vector<CandidateGap> candidates;
    bool cauchy_exact = false;
    bool prefix_exact = false;
    bool no_attainment = false;
    std::string summary() const;
};

NoncompletenessReport noncompleteness_demo(int p, int n_max);

} // namespace vlp

#endif
