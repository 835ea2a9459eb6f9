#ifndef VLP_GRIDFN_HPP
#define VLP_GRIDFN_HPP

#include <functional>
#include <vector>

#include "vlp/lattice.hpp"
#include "vlp/measure.hpp"

namespace vlp {

/// A lattice-valued function sampled on a uniform node grid over [lo, hi].
struct GridFunction {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<LatticeElement> values; // one per node

    std::size_t n_nodes() const { return values.size(); }
    std::size_t dim() const { return values.front().dim(); }
    double spacing() const { return (hi - lo) / static_cast<double>(n_nodes() - 1); }
    double node(std::size_t i) const { return lo + spacing() * static_cast<double>(i); }

    /// Linear interpolation between nodes; clamps to the interval ends.
    LatticeElement at(double t) const;

    static GridFunction sample(double lo, double hi, std::size_t n_nodes,
                               const std::function<double(double)>& f);
    static GridFunction sample_lattice(double lo, double hi, std::size_t n_nodes,
                                       const std::function<LatticeElement(double)>& f);
};

/// Composite Newton-Cotes integral over the nodes: Boole on 4k+1 nodes
/// (exact through degree 5), Simpson on odd node counts, trapezoid
/// otherwise.
LatticeElement integrate(const GridFunction& f);

/// Integral against a grid measure on the same interval (its density scale
/// multiplies the Lebesgue integral).
LatticeElement integrate(const GridFunction& f, const GridMeasure& mu);

/// Nodewise product with a real-valued (dimension 1) weight function.
GridFunction weighted(const GridFunction& f, const GridFunction& w);

/// Nodewise product with the coordinate t (for moment identities).
GridFunction times_coordinate(const GridFunction& f);

} // namespace vlp

#endif
