#include "vlp/measure.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace vlp {

namespace {

std::vector<std::uint32_t> normalize_basis(std::vector<std::uint32_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    for (std::uint32_t i : v) {
        if (i == 0) throw domain_error("FinCofinSet: elements are positive integers");
    }
    return v;
}

std::vector<std::uint32_t> merge_union(const std::vector<std::uint32_t>& a,
                                       const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<std::uint32_t> merge_intersection(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<std::uint32_t> merge_difference(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Sum of 2^-i over a sorted index list, smallest terms first so that no
// dyadic bit is absorbed.
double dyadic_sum(const std::vector<std::uint32_t>& sorted) {
    double s = 0.0;
    for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
        s += std::ldexp(1.0, -static_cast<int>(*it));
    }
    return s;
}

} // namespace

FinCofinSet::FinCofinSet(Kind kind, std::vector<std::uint32_t> basis)
    : kind_(kind), basis_(std::move(basis)) {}

FinCofinSet FinCofinSet::finite(std::vector<std::uint32_t> elements) {
    return FinCofinSet(Kind::finite, normalize_basis(std::move(elements)));
}

FinCofinSet FinCofinSet::cofinite(std::vector<std::uint32_t> complement) {
    return FinCofinSet(Kind::cofinite, normalize_basis(std::move(complement)));
}

bool FinCofinSet::contains(std::uint32_t i) const {
    bool in_basis = std::binary_search(basis_.begin(), basis_.end(), i);
    return is_finite() ? in_basis : !in_basis;
}

FinCofinSet FinCofinSet::complement() const {
    return FinCofinSet(is_finite() ? Kind::cofinite : Kind::finite, basis_);
}

FinCofinSet set_union(const FinCofinSet& a, const FinCofinSet& b) {
    using K = FinCofinSet::Kind;
    if (a.is_finite() && b.is_finite()) {
        return FinCofinSet(K::finite, merge_union(a.basis_, b.basis_));
    }
    if (!a.is_finite() && !b.is_finite()) {
        return FinCofinSet(K::cofinite, merge_intersection(a.basis_, b.basis_));
    }
    const FinCofinSet& fin = a.is_finite() ? a : b;
    const FinCofinSet& cof = a.is_finite() ? b : a;
    // F u (N \ K) = N \ (K \ F)
    return FinCofinSet(K::cofinite, merge_difference(cof.basis_, fin.basis_));
}

FinCofinSet set_intersection(const FinCofinSet& a, const FinCofinSet& b) {
    return set_union(a.complement(), b.complement()).complement();
}

FinCofinSet set_difference(const FinCofinSet& a, const FinCofinSet& b) {
    return set_intersection(a, b.complement());
}

FinCofinSet symmetric_difference(const FinCofinSet& a, const FinCofinSet& b) {
    return set_union(set_difference(a, b), set_difference(b, a));
}

FinCofinSet prefix_set(std::uint32_t n) {
    std::vector<std::uint32_t> v;
    v.reserve(n);
    for (std::uint32_t i = 1; i <= n; ++i) v.push_back(i);
    return FinCofinSet::finite(std::move(v));
}

double dyadic_measure(const FinCofinSet& a) {
    if (a.is_finite()) return dyadic_sum(a.basis());
    return 2.0 - dyadic_sum(a.basis());
}

double symmetric_difference_measure(const FinCofinSet& a, const FinCofinSet& b) {
    return dyadic_measure(symmetric_difference(a, b));
}

bool SubsetSpec::contains(std::uint32_t i) const {
    if (i == 0) return false;
    if (i <= bound) return member ? member(i) : false;
    switch (tail) {
        case TailKind::all_out: return false;
        case TailKind::all_in: return true;
        case TailKind::periodic:
            return std::find(residues.begin(), residues.end(), i % period) != residues.end();
    }
    return false;
}

bool SubsetSpec::is_finite() const {
    if (tail == TailKind::all_out) return true;
    if (tail == TailKind::periodic) return residues.empty();
    return false;
}

bool SubsetSpec::is_cofinite() const {
    if (tail == TailKind::all_in) return true;
    if (tail == TailKind::periodic) return residues.size() == period;
    return false;
}

SubsetSpec SubsetSpec::finite(std::vector<std::uint32_t> elements) {
    auto sorted = normalize_basis(std::move(elements));
    SubsetSpec s;
    s.bound = sorted.empty() ? 0 : sorted.back();
    s.tail = TailKind::all_out;
    s.member = [sorted](std::uint32_t i) {
        return std::binary_search(sorted.begin(), sorted.end(), i);
    };
    return s;
}

SubsetSpec SubsetSpec::cofinite_complement(std::vector<std::uint32_t> complement) {
    auto sorted = normalize_basis(std::move(complement));
    SubsetSpec s;
    s.bound = sorted.empty() ? 0 : sorted.back();
    s.tail = TailKind::all_in;
    s.member = [sorted](std::uint32_t i) {
        return !std::binary_search(sorted.begin(), sorted.end(), i);
    };
    return s;
}

SubsetSpec SubsetSpec::periodic_tail(std::vector<std::uint32_t> head, std::uint32_t bound,
                                     std::uint32_t period, std::vector<std::uint32_t> residues) {
    if (period == 0) throw domain_error("SubsetSpec: periodic tail needs period >= 1");
    for (std::uint32_t r : residues) {
        if (r >= period) throw domain_error("SubsetSpec: residue outside [0, period)");
    }
    auto sorted = normalize_basis(std::move(head));
    SubsetSpec s;
    s.bound = bound;
    s.tail = TailKind::periodic;
    s.period = period;
    s.residues = std::move(residues);
    s.member = [sorted](std::uint32_t i) {
        return std::binary_search(sorted.begin(), sorted.end(), i);
    };
    return s;
}

double dyadic_content(const SubsetSpec& b) {
    std::vector<std::uint32_t> head;
    for (std::uint32_t i = 1; i <= b.bound; ++i) {
        if (b.contains(i)) head.push_back(i);
    }
    double tail_sum = 0.0;
    switch (b.tail) {
        case SubsetSpec::TailKind::all_out:
            break;
        case SubsetSpec::TailKind::all_in:
            // sum_{i > bound} 2^-i = 2^-bound
            tail_sum = std::ldexp(1.0, -static_cast<int>(b.bound));
            break;
        case SubsetSpec::TailKind::periodic: {
            if (b.period == 0) throw domain_error("dyadic_content: ill-described periodic tail");
            // For each residue r, the members beyond the bound form a
            // geometric progression with ratio 2^-period.
            double denom = 1.0 - std::ldexp(1.0, -static_cast<int>(b.period));
            std::vector<double> firsts;
            for (std::uint32_t r : b.residues) {
                std::uint32_t i0 = b.bound + 1;
                while (i0 % b.period != r) ++i0;
                firsts.push_back(std::ldexp(1.0, -static_cast<int>(i0)));
            }
            std::sort(firsts.begin(), firsts.end());
            for (double f : firsts) tail_sum += f / denom;
            break;
        }
    }
    return dyadic_sum(head) + tail_sum;
}

double outer_measure(const SubsetSpec& b) {
    if (b.is_finite()) {
        return dyadic_content(b);
    }
    if (b.is_cofinite()) {
        // B itself is in the algebra.
        std::vector<std::uint32_t> comp;
        for (std::uint32_t i = 1; i <= b.bound; ++i) {
            if (!b.contains(i)) comp.push_back(i);
        }
        return 2.0 - dyadic_sum(comp);
    }
    // B and its complement are both infinite: only cofinite supersets exist,
    // and inf over them gives 2 - sum_{B^c} 2^-i = 1 + sum_B 2^-i.
    return 1.0 + dyadic_content(b);
}

OuterMeasureGap outer_measure_gap(const SubsetSpec& b) {
    double mu_star = outer_measure(b);
    if (b.is_finite()) {
        return OuterMeasureGap{mu_star, 1.0 - mu_star, true};
    }
    return OuterMeasureGap{mu_star, mu_star - 1.0, false};
}

GridMeasure::GridMeasure(double lo_, double hi_, int n_cells_, double scale_)
    : lo(lo_), hi(hi_), n_cells(n_cells_), scale(scale_) {
    if (!(hi > lo)) throw domain_error("GridMeasure: needs hi > lo");
    if (n_cells < 1) throw domain_error("GridMeasure: needs n_cells >= 1");
    if (!(scale > 0.0)) throw domain_error("GridMeasure: needs scale > 0");
}

double grid_measure(const std::vector<int>& cells, const GridMeasure& m) {
    std::set<int> seen;
    for (int c : cells) {
        if (c < 0 || c >= m.n_cells) throw domain_error("grid_measure: cell index out of range");
        if (!seen.insert(c).second) throw domain_error("grid_measure: duplicate cell");
    }
    return static_cast<double>(cells.size()) * m.cell_weight();
}

std::vector<int> cells_of_interval(double x, double y, const GridMeasure& m, double align_tol) {
    if (y < x) std::swap(x, y);
    double h = (m.hi - m.lo) / m.n_cells;
    double fx = (x - m.lo) / h;
    double fy = (y - m.lo) / h;
    long ix = std::lround(fx);
    long iy = std::lround(fy);
    if (std::fabs(fx - ix) > align_tol || std::fabs(fy - iy) > align_tol) {
        throw domain_error("cells_of_interval: endpoints not aligned to cell boundaries");
    }
    if (ix < 0 || iy > m.n_cells) throw domain_error("cells_of_interval: outside the interval");
    std::vector<int> out;
    for (long c = ix; c < iy; ++c) out.push_back(static_cast<int>(c));
    return out;
}

} // namespace vlp
