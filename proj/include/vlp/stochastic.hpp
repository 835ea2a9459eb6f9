#ifndef VLP_STOCHASTIC_HPP
#define VLP_STOCHASTIC_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "vlp/lattice.hpp"

namespace vlp {

/// Uniform time grid on [0, t_end] with nodes t_i = i t_end / n_steps.
struct TimeGrid {
    double t_end = 1.0;
    int n_steps = 1;

    TimeGrid() = default;
    TimeGrid(double t_end_, int n_steps_);

    double dt() const { return t_end / n_steps; }
    int n_nodes() const { return n_steps + 1; }
    double node(int i) const { return t_end * static_cast<double>(i) / n_steps; }
    int nearest_node(double t) const;
};

/// A lattice-valued process sampled on the grid nodes; the lattice dimension
/// indexes the ensemble paths, so the stochastic lattice is exactly C(Omega)
/// with Omega the path set.
struct GridProcess {
    TimeGrid grid;
    std::vector<LatticeElement> values; // one per node

    std::size_t dim() const { return values.front().dim(); }
    LatticeElement at(double t) const; // linear interpolation
};

/// Standard Brownian motion ensemble: B_0 = 0 and independent Gaussian
/// increments of variance dt per path, generated by seeded per-path
/// substreams so serial and parallel runs agree.
struct PathEnsemble {
    TimeGrid grid;
    int n_paths = 1;
    std::uint64_t seed = 0;
    std::vector<LatticeElement> values;

    GridProcess process() const { return GridProcess{grid, values}; }
};

PathEnsemble sample_bm(const TimeGrid& grid, int n_paths, std::uint64_t seed);

/// Every factor-th node of the same paths: the identical Brownian motion at
/// coarser resolution, for refinement scans.
PathEnsemble coarsen(const PathEnsemble& ens, int factor);

/// Entrywise bounds on the ensemble: Zbound_j = max_t |B_t(j)|, W_j the
/// Holder-1/4 constant over dyadic lags, and the order unit W + Z (floored
/// so it stays strictly positive even for a degenerate ensemble).
struct ProcessBounds {
    LatticeElement zbound = LatticeElement::zero(1);
    LatticeElement w = LatticeElement::zero(1);
    LatticeElement unit = LatticeElement::ones(1);
};

ProcessBounds path_bounds(const PathEnsemble& ens);

/// The bridge f(t) = (t - T)(B_t - B_a) on [a, T], zero elsewhere.
struct BridgeProcess {
    GridProcess f;
    double a = 0.0;
    double t_upper = 0.0;
    int ia = 0;
    int i_upper = 0;
    bool snapped = false; // a or T were moved to the nearest node
};

BridgeProcess bridge(const PathEnsemble& ens, double a, double t_upper);

/// Moment operator Phi(x, s) = (x / s^x) int_0^s f(t) t^(x-1) dt, computed
/// cell by cell in closed form on the piecewise-linear interpolant.  Only
/// ratios (t/s)^x are ever formed, so the evaluation is stable for large x
/// and exact (up to round-off) whenever f is piecewise linear on the grid.
LatticeElement phi(const GridProcess& f, double x, double s);

/// Phi at every grid node in one sweep (node 0 carries f(0), the continuous
/// extension of the operator at s = 0).
std::vector<LatticeElement> phi_profile(const GridProcess& f, double x);

/// Residual of s dPhi/ds + x Phi - x f(s), with dPhi/ds by central
/// differences of step ds, at each requested s.
std::vector<LatticeElement> ode_residual(const GridProcess& f, double x,
                                         const std::vector<double>& s_values, double ds);

/// Residual of s d2Phi/dxds + x dPhi/dx + Phi - f(s) with central
/// differences of steps dx and ds.
LatticeElement pde_residual(const GridProcess& f, double x, double s, double dx = 0.5,
                            double ds = 1e-3);

/// Left-point Ito sum int_0^s g(t) df(t): full-cell increments weighted at
/// the left node, plus the partial increment up to s; telescopes exactly for
/// g = 1.
LatticeElement ito_integral(const std::function<double(double)>& g, const GridProcess& f,
                            double s);

/// Psi(x, s) = (x / s^x) int_0^s t^(x-1) df(t), evaluated as
/// (x/s) sum (t_i/s)^(x-1) df_i; needs x >= 1.
LatticeElement psi(const GridProcess& f, double x, double s);

/// Psi at every grid node in one sweep (index 0 holds zero).
std::vector<LatticeElement> psi_profile(const GridProcess& f, double x);

/// Psi(x,s) - (x/s)(f(s) - Phi(x-1, s)), the integration-by-parts identity.
LatticeElement phipsi_residual(const GridProcess& f, double x, double s);

/// Discrete residual of dPsi = -(x/s) Psi ds + (x/s) df on node steps
/// [i_lo, i_hi); returns one residual per step.
std::vector<LatticeElement> sde_residual(const GridProcess& f, double x, int i_lo, int i_hi);

/// Largest M-norm (against the all-ones unit) in a residual list.
double max_m_norm(const std::vector<LatticeElement>& residuals);

struct ScanRow {
    double x;
    double sup_distance;
};

/// sup_s ||Phi(x, s) - f(s)||_e over the node range [i_lo, i_hi], per x.
std::vector<ScanRow> uniform_convergence_scan(const GridProcess& f, const std::vector<double>& xs,
                                              int i_lo, int i_hi, int stride = 1);

/// A C^1 signal with its derivative, vanishing on [0, a] and beyond T.
struct Signal {
    std::function<double(double)> h;
    std::function<double(double)> dh;
    double a = 1.5;
    double t_upper = 3.0;
};

/// The built-in polynomial bump ((t-a)(T-t))^2 on [a, T].
Signal bump_signal(double a, double t_upper);

/// Throws unless h and h' vanish at a, at T and on [0, a].
void validate_signal(const Signal& h);

struct RecoveryResult {
    std::vector<double> s;
    std::vector<double> estimate; // ensemble mean of Psi_G(1/eps, s)
    std::vector<double> h_prime;
    std::vector<double> abs_error;
    double sup_error = 0.0;
};

/// Recovers h' from G = h + eps f by the direct stochastic integral
/// Psi_G(1/eps, s); eps^-1 beyond the stability cap is a structured error.
RecoveryResult signal_recover(const Signal& h, double eps, const PathEnsemble& ens,
                              double x_cap = 200.0);

} // namespace vlp

#endif
