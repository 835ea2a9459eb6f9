#include "vlp/gridfn.hpp"

#include <cmath>

namespace vlp {

LatticeElement GridFunction::at(double t) const {
    if (n_nodes() < 2) return values.front();
    double h = spacing();
    double pos = (t - lo) / h;
    if (pos <= 0.0) return values.front();
    if (pos >= static_cast<double>(n_nodes() - 1)) return values.back();
    auto i = static_cast<std::size_t>(pos);
    double frac = pos - static_cast<double>(i);
    return (1.0 - frac) * values[i] + frac * values[i + 1];
}

GridFunction GridFunction::sample(double lo, double hi, std::size_t n_nodes,
                                  const std::function<double(double)>& f) {
    return sample_lattice(lo, hi, n_nodes, [&f](double t) {
        return LatticeElement::constant(1, f(t));
    });
}

GridFunction GridFunction::sample_lattice(double lo, double hi, std::size_t n_nodes,
                                          const std::function<LatticeElement(double)>& f) {
    if (n_nodes < 2) throw domain_error("GridFunction: needs at least two nodes");
    if (!(hi > lo)) throw domain_error("GridFunction: needs hi > lo");
    GridFunction g;
    g.lo = lo;
    g.hi = hi;
    double h = (hi - lo) / static_cast<double>(n_nodes - 1);
    g.values.reserve(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        g.values.push_back(f(lo + h * static_cast<double>(i)));
    }
    return g;
}

LatticeElement integrate(const GridFunction& f) {
    const std::size_t n = f.n_nodes();
    if (n < 2) throw domain_error("integrate: needs at least two nodes");
    const double h = f.spacing();
    LatticeElement acc = LatticeElement::zero(f.dim());
    if ((n - 1) % 4 == 0 && n >= 5) {
        // Composite Boole: (2h/45)(7 f0 + 32 f1 + 12 f2 + 32 f3 + 7 f4).
        for (std::size_t i = 0; i + 4 < n; i += 4) {
            acc += (2.0 * h / 45.0) *
                   (7.0 * f.values[i] + 32.0 * f.values[i + 1] + 12.0 * f.values[i + 2] +
                    32.0 * f.values[i + 3] + 7.0 * f.values[i + 4]);
        }
        return acc;
    }
    if ((n - 1) % 2 == 0) {
        for (std::size_t i = 0; i + 2 < n; i += 2) {
            acc += (h / 3.0) * (f.values[i] + 4.0 * f.values[i + 1] + f.values[i + 2]);
        }
        return acc;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        acc += (h / 2.0) * (f.values[i] + f.values[i + 1]);
    }
    return acc;
}

LatticeElement integrate(const GridFunction& f, const GridMeasure& mu) {
    if (std::fabs(mu.lo - f.lo) > 1e-12 || std::fabs(mu.hi - f.hi) > 1e-12) {
        throw domain_error("integrate: measure and function intervals differ");
    }
    return mu.scale * integrate(f);
}

GridFunction weighted(const GridFunction& f, const GridFunction& w) {
    if (f.n_nodes() != w.n_nodes() || w.dim() != 1) {
        throw dimension_error("weighted: weight must be scalar on the same grid");
    }
    GridFunction out = f;
    for (std::size_t i = 0; i < f.n_nodes(); ++i) {
        out.values[i] = w.values[i][0] * f.values[i];
    }
    return out;
}

GridFunction times_coordinate(const GridFunction& f) {
    GridFunction out = f;
    for (std::size_t i = 0; i < f.n_nodes(); ++i) {
        out.values[i] = f.node(i) * f.values[i];
    }
    return out;
}

} // namespace vlp
