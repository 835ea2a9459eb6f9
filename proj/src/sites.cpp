#include "vlp/sites.hpp"

#include <algorithm>
#include <cmath>

namespace vlp {

SiteSpace SiteSpace::grid(GridMeasure m) {
    SiteSpace s;
    s.kind_ = Kind::grid;
    s.gm_ = m;
    s.n_ = static_cast<std::size_t>(m.n_cells);
    return s;
}

SiteSpace SiteSpace::dyadic(std::uint32_t bound) {
    if (bound < 1) throw domain_error("SiteSpace::dyadic: bound must be >= 1");
    SiteSpace s;
    s.kind_ = Kind::dyadic;
    s.bound_ = bound;
    s.n_ = bound;
    return s;
}

double SiteSpace::site_weight(std::size_t idx) const {
    if (idx >= n_) throw domain_error("SiteSpace: site index out of range");
    if (kind_ == Kind::grid) return gm_.cell_weight();
    return std::ldexp(1.0, -static_cast<int>(idx) - 1);
}

double SiteSpace::coord(std::size_t idx) const {
    if (idx >= n_) throw domain_error("SiteSpace: site index out of range");
    if (kind_ == Kind::grid) {
        double h = (gm_.hi - gm_.lo) / gm_.n_cells;
        return gm_.lo + (static_cast<double>(idx) + 0.5) * h;
    }
    return static_cast<double>(idx + 1);
}

double SiteSpace::measure_of(const std::vector<std::size_t>& sites) const {
    if (kind_ == Kind::grid) {
        return static_cast<double>(sites.size()) * gm_.cell_weight();
    }
    // Smallest dyadic terms first.
    double s = 0.0;
    for (auto it = sites.rbegin(); it != sites.rend(); ++it) {
        if (*it >= n_) throw domain_error("SiteSpace: site index out of range");
        s += std::ldexp(1.0, -static_cast<int>(*it) - 1);
    }
    return s;
}

double SiteSpace::total_mass() const {
    if (kind_ == Kind::grid) return gm_.total_mass();
    return 1.0 - std::ldexp(1.0, -static_cast<int>(bound_));
}

SiteSet site_set_complement(const SiteSet& a, std::size_t n_sites) {
    SiteSet out;
    std::size_t j = 0;
    for (std::size_t i = 0; i < n_sites; ++i) {
        if (j < a.size() && a[j] == i) {
            ++j;
        } else {
            out.push_back(i);
        }
    }
    return out;
}

SiteSet site_set_union(const SiteSet& a, const SiteSet& b) {
    SiteSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

SiteSet site_set_intersection(const SiteSet& a, const SiteSet& b) {
    SiteSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

SiteSet all_sites(std::size_t n_sites) {
    SiteSet out(n_sites);
    for (std::size_t i = 0; i < n_sites; ++i) out[i] = i;
    return out;
}

SiteFunction constant_site_function(const SiteSpace& space, const LatticeElement& c) {
    return SiteFunction(space.n_sites(), c);
}

} // namespace vlp
