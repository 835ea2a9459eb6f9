#ifndef VLP_INEQUALITIES_HPP
#define VLP_INEQUALITIES_HPP

#include <functional>

#include "vlp/convergence.hpp"
#include "vlp/gridfn.hpp"
#include "vlp/lattice.hpp"
#include "vlp/lpspace.hpp"

namespace vlp {

/// A uniform-continuity certificate: |f(t1) - f(t2)| <= sigma_p * u whenever
/// |t1 - t2| <= delta_p, with regulator u and both sequences decreasing.
struct Modulus {
    std::vector<double> delta;
    std::vector<LatticeElement> sigma;
    LatticeElement regulator = LatticeElement::ones(1);
};

/// Builds the canonical modulus delta_p = (b-a)/2^p with sigma_p the largest
/// gap over node pairs within delta_p and u = e.
Modulus uniform_continuity_modulus(const GridFunction& f, int depth = 0);

/// Re-verifies the defining inequality of a modulus on all grid pairs and
/// that it vanishes at grid scale.
Verdict modulus_validate(const Modulus& m, const GridFunction& f);

/// Central differences inside, second-order one-sided at the ends; exact on
/// quadratics.
GridFunction finite_diff_derivative(const GridFunction& f);

/// Midpoint convexity over all node pairs whose midpoint is a node.
Verdict midpoint_convexity_check(const GridFunction& f, double tol = 1e-12);

struct ConvexityWitness {
    std::size_t v_index = 0;
    LatticeElement slope = LatticeElement::zero(1); // beta_v
    GridFunction support_line_fn;  // r(t) = f(v) + beta_v (t - v)
    GridFunction chord_fn;         // r*(t) = f(a) + (f(b)-f(a))/(b-a) (t - a)
};

/// Support line at a node of a convex function; throws when f dips below the
/// line by more than tol.
ConvexityWitness support_line(const GridFunction& f, std::size_t v_index, double tol = 1e-9);

/// The chord r* from (a, f(a)) to (b, f(b)).
GridFunction chord_line(const GridFunction& f);

/// A convex lattice map applied entrywise through a one-dimensional convex
/// real function.
struct ConvexMap {
    std::function<double(double)> fn;
    LatticeElement apply(const LatticeElement& x) const;
};

/// Jensen: phi(int f dmu) <= int phi(f) dmu for a probability measure; also
/// verifies phi o f keeps a valid uniform-continuity modulus.
Verdict jensen_check(const GridFunction& f, const ConvexMap& phi, const GridMeasure& mu,
                     double tol = 1e-9);

/// Hermite-Hadamard: f((a+b)/2) <= mean of f <= (f(a)+f(b))/2.
Verdict hermite_hadamard_check(const GridFunction& f, const GridMeasure& mu, double tol = 1e-9);

/// Fejer: the Hermite-Hadamard pair against a symmetric weight, plus the
/// moment identity ((a+b)/2) int w = int t w(t).
Verdict fejer_check(const GridFunction& f, const GridFunction& w, const GridMeasure& mu,
                    double tol = 1e-9, double sym_tol = 1e-12);

struct SchwartzResult {
    Verdict verdict;
    LatticeElement gap;           // (int f^2)(int g^2) - (int |fg|)^2
    LatticeElement discriminant;  // sum_{i<j} (|c_i||d_j| - |c_j||d_i|)^2 mu_i mu_j
};

/// Schwartz inequality for simple functions over a common partition: both
/// displayed inequalities, the polarization identity for the product
/// sequence, and the brute-force discriminant.
SchwartzResult schwartz_check(const SimpleFunction& f, const SimpleFunction& g,
                              const SiteSpace& space, const OrderUnit& e, double tol = 1e-9);

} // namespace vlp

#endif
