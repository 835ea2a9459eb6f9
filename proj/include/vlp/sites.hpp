#ifndef VLP_SITES_HPP
#define VLP_SITES_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vlp/lattice.hpp"
#include "vlp/measure.hpp"

namespace vlp {

/// A finite measured ground set G on which functions are sampled: either
/// the cells of a grid measure on an interval, or the integers 1..bound of
/// the dyadic algebra with weights 2^-i.  Functions handled through a
/// SiteSpace are understood to vanish beyond the listed sites, so the
/// truncation is exact rather than approximate.
class SiteSpace {
public:
    enum class Kind { grid, dyadic };

    static SiteSpace grid(GridMeasure m);
    static SiteSpace dyadic(std::uint32_t bound);

    Kind kind() const { return kind_; }
    std::size_t n_sites() const { return n_; }
    const GridMeasure& grid_measure() const { return gm_; }
    std::uint32_t dyadic_bound() const { return bound_; }

    /// Weight of one site: cell weight, or 2^-i.
    double site_weight(std::size_t idx) const;
    /// Coordinate of a site: cell midpoint, or the integer i.
    double coord(std::size_t idx) const;
    /// For dyadic spaces, the integer labelled by a site index (1-based).
    std::uint32_t dyadic_label(std::size_t idx) const { return static_cast<std::uint32_t>(idx) + 1; }

    /// Exact measure of a set of sites (sorted, duplicate-free indices).
    double measure_of(const std::vector<std::size_t>& sites) const;
    double total_mass() const;

private:
    SiteSpace() = default;
    Kind kind_ = Kind::grid;
    GridMeasure gm_;
    std::uint32_t bound_ = 0;
    std::size_t n_ = 0;
};

/// A set in the algebra restricted to the ground set: sorted site indices.
using SiteSet = std::vector<std::size_t>;

/// A lattice-valued function sampled on the ground set, one element per site.
using SiteFunction = std::vector<LatticeElement>;

SiteSet site_set_complement(const SiteSet& a, std::size_t n_sites);
SiteSet site_set_union(const SiteSet& a, const SiteSet& b);
SiteSet site_set_intersection(const SiteSet& a, const SiteSet& b);
SiteSet all_sites(std::size_t n_sites);

/// Constant function c at every site.
SiteFunction constant_site_function(const SiteSpace& space, const LatticeElement& c);

} // namespace vlp

#endif
