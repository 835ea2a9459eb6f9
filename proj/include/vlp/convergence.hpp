#ifndef VLP_CONVERGENCE_HPP
#define VLP_CONVERGENCE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vlp/lattice.hpp"
#include "vlp/sites.hpp"

namespace vlp {

// Every infinite-index notion is evaluated on a finite window [1, horizon]
// plus a declared tail, and each verdict says what it saw: a false verdict
// always carries a concrete witness.

struct Verdict {
    bool holds = false;
    long horizon = 0;
    std::string witness;

    static Verdict pass(long horizon, std::string note = "") {
        return Verdict{true, horizon, std::move(note)};
    }
    static Verdict fail(long horizon, std::string witness) {
        return Verdict{false, horizon, std::move(witness)};
    }
};

/// Declared membership behaviour beyond the evaluation window.
enum class Tail { in, out };

/// A subset of the index set {1, 2, ...}: decidable membership up to the
/// horizon, declared constant beyond it.
struct SubsetWindow {
    std::function<bool(long)> member;
    Tail tail = Tail::out;
};

/// A filter on a countable index set.  The density-one kind certifies
/// membership either by the complement density already sitting below `tol`
/// at the horizon, or by a declared-monotone complement density that decays
/// geometrically across the dyadic checkpoints (which is how slowly thinning
/// complements such as the perfect squares are resolved at desk scale).
class FilterSpec {
public:
    enum class Kind { cofinite, density_one, generated };

    static FilterSpec cofinite();
    static FilterSpec density_one(double tol = 1e-3);
    static FilterSpec generated(std::vector<SubsetWindow> generators);

    Kind kind() const { return kind_; }
    double density_tol() const { return density_tol_; }
    const std::vector<SubsetWindow>& generators() const { return generators_; }

private:
    Kind kind_ = Kind::cofinite;
    double density_tol_ = 1e-3;
    std::vector<SubsetWindow> generators_;
};

Verdict filter_contains(const FilterSpec& filter, const SubsetWindow& s, long horizon);

/// Membership of C <= Z x Z in the product filter F (x) F: searches for a
/// tail rectangle [m, horizon]^2 inside C.  Only the cofinite base filter is
/// supported.
Verdict product_filter_contains(const FilterSpec& filter,
                                const std::function<bool(long, long)>& c, Tail tail,
                                long horizon);

/// Lattice-valued (o)-sequence evaluated to finite depth: decreasing, with
/// entrywise minimum at the last level at most `tol`.
struct OSequence {
    std::function<LatticeElement(int)> at;
    int depth = 0;
    double tol = 0.0;
};

struct RealOSequence {
    std::function<double(int)> at;
    int depth = 0;
    double tol = 0.0;

    /// p -> 2^-p, the default workhorse.
    static RealOSequence dyadic(int depth, double tol = 0.0);
};

Verdict o_sequence_validate(const OSequence& s);
Verdict o_sequence_validate(const RealOSequence& s);

/// A sequence of lattice elements indexed by z in [1, horizon].  When
/// band_tail is unset, membership of index sets derived from the family is
/// declared constant beyond the horizon (it mirrors the value at z =
/// horizon).
struct IndexedFamily {
    std::function<LatticeElement(long)> value;
    std::optional<Tail> band_tail;
};

/// (o_F)-convergence: an (o)-sequence (sigma_p) with
/// {z : |x_z - x| <= sigma_p} in F for every p.
Verdict of_convergence_check(const IndexedFamily& family, const LatticeElement& limit,
                             const OSequence& sigma, const FilterSpec& filter, long horizon);

/// (r_F)-convergence with the regulator u supplied by the caller.
Verdict rf_convergence_check(const IndexedFamily& family, const LatticeElement& limit,
                             const LatticeElement& u, const RealOSequence& eps,
                             const FilterSpec& filter, long horizon);

/// A sequence of sampled functions indexed by z in [1, horizon].
struct SiteFamily {
    std::function<SiteFunction(long)> at;
    std::optional<Tail> band_tail;
};

/// (r_F)-uniform convergence: sup_t |f_z(t) - f(t)| <= eps_p e happens
/// F-often for every p.
Verdict uniform_convergence_check(const SiteFamily& family, const SiteFunction& limit,
                                  const RealOSequence& eps, const FilterSpec& filter,
                                  long horizon);

/// mu-convergence: the exact exceptional sets
/// A_z^p = {t : |f_z(t) - f(t)| not<= eps_p e} satisfy
/// {z : mu(A_z^p) <= sigma_p} in F for every p.
Verdict mu_convergence_check(const SiteFamily& family, const SiteFunction& limit,
                             const SiteSpace& space, const RealOSequence& eps,
                             const RealOSequence& sigma, const FilterSpec& filter,
                             long horizon);

/// A modular: a functional on sampled functions with values in the lattice.
struct ModularSpec {
    std::function<LatticeElement(const SiteFunction&)> rho;
    std::size_t value_dim = 1;
};

/// The integral modular iota(f) = int_G |f| dmu on a ground set.
ModularSpec integral_modular(const SiteSpace& space, std::size_t dim);

/// f restricted to B (zero outside).
SiteFunction restrict_to(const SiteFunction& f, const SiteSet& b, std::size_t n_sites);
SiteFunction scale_function(const SiteFunction& f, double c);

struct ModularAxiomsReport {
    Verdict rho0;
    Verdict rho1;
    Verdict rho2;
    Verdict monotone;
    Verdict convex;
    Verdict finite;
    bool all_hold() const {
        return rho0.holds && rho1.holds && rho2.holds && monotone.holds && convex.holds &&
               finite.holds;
    }
};

/// Checks the modular axioms on the given samples, and finiteness via
/// rho(eps_p e 1_A) decreasing below tol over sampled algebra sets.
ModularAxiomsReport modular_axioms_check(const ModularSpec& rho, const SiteSpace& space,
                                         const std::vector<SiteFunction>& samples,
                                         const std::vector<std::pair<double, double>>& weights,
                                         double tol = 1e-12, double finite_tol = 1e-6);

struct EquiAcParams {
    int depth = 20;            // measure thresholds 2^-1 .. 2^-depth
    double tol = 1e-6;         // infimum tolerance for the witness sequences
    long tail_search = 0;      // 0: up to horizon/2
};

/// rho-F-equi-absolute continuity of a family at a given alpha, along
/// cofinite tails.  Searches for the witness sequences (w_p) over sampled
/// small-measure sets (greedy value-ordered prefixes within each measure
/// budget, plus singletons) and (r_m) over a canonical exhausting family
/// B_m; the verdict reports the witnesses it found or the (z, p, B) that
/// defeats every tail.
Verdict equi_ac_check(const SiteFamily& family, const ModularSpec& rho, double alpha,
                      const SiteSpace& space, const RealOSequence& sigma, long horizon,
                      const EquiAcParams& params = {});

/// Single-function absolute continuity (a_rho): the family constantly f.
Verdict absolutely_continuous_check(const SiteFunction& f, const ModularSpec& rho, double alpha,
                                    const SiteSpace& space, const RealOSequence& sigma,
                                    const EquiAcParams& params = {});

struct VitaliResult {
    bool hypotheses_met = false;
    Verdict mu_convergence;
    Verdict equi_ac;
    Verdict conclusion;
    double alpha = 0.0;
};

struct VitaliParams {
    int depth = 6;             // eps_p = sigma_p = 2^-p
    double conclusion_tol = 1e-6;
    double min_alpha = 1.0 / 256.0;
};

/// Instance checker for the Vitali theorem: when the family mu-converges to
/// 0 and is equi-absolutely continuous (for some sampled alpha), certifies
/// an (o)-sequence with rho(alpha f_z) -> 0 along the filter and returns the
/// alpha it found.  When a hypothesis fails the result says so instead of
/// judging the conclusion.
VitaliResult vitali_conclusion_check(const SiteFamily& family, const ModularSpec& rho,
                                     const SiteSpace& space, const FilterSpec& filter,
                                     long horizon, const VitaliParams& params = {});

/// The product-filter variant: the double family (h, q) -> f_h - f_q
/// mu-converges to 0 along F (x) F and rho(alpha (f_h - f_q)) -> 0 there.
VitaliResult cauchy_modular_check(const SiteFamily& family, const ModularSpec& rho,
                                  const SiteSpace& space, const FilterSpec& filter, long horizon,
                                  const VitaliParams& params = {});

/// The dominated variant: |f_z| <= g on a tail with g absolutely continuous
/// implies the same conclusion.
VitaliResult dominated_conclusion_check(const SiteFamily& family, const SiteFunction& dominating,
                                        const ModularSpec& rho, const SiteSpace& space,
                                        const FilterSpec& filter, long horizon,
                                        const VitaliParams& params = {});

} // namespace vlp

#endif
