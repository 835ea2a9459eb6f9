#ifndef VLP_MEASURE_HPP
#define VLP_MEASURE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "vlp/lattice.hpp"

namespace vlp {

/// A finite or cofinite subset of N = {1, 2, ...}.  `basis` holds the set
/// itself when finite and its complement when cofinite; it is kept sorted
/// and duplicate-free.  The family of these sets is the algebra of
/// the dyadic example: closed under complement, finite union and
/// intersection.
class FinCofinSet {
public:
    enum class Kind { finite, cofinite };

    static FinCofinSet finite(std::vector<std::uint32_t> elements);
    static FinCofinSet cofinite(std::vector<std::uint32_t> complement);
    static FinCofinSet empty() { return finite({}); }
    static FinCofinSet naturals() { return cofinite({}); }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::finite; }
    const std::vector<std::uint32_t>& basis() const { return basis_; }

    bool contains(std::uint32_t i) const;
    FinCofinSet complement() const;

    friend FinCofinSet set_union(const FinCofinSet& a, const FinCofinSet& b);
    friend FinCofinSet set_intersection(const FinCofinSet& a, const FinCofinSet& b);
    friend FinCofinSet set_difference(const FinCofinSet& a, const FinCofinSet& b);
    friend FinCofinSet symmetric_difference(const FinCofinSet& a, const FinCofinSet& b);

private:
    FinCofinSet(Kind kind, std::vector<std::uint32_t> basis);

    Kind kind_;
    std::vector<std::uint32_t> basis_;
};

/// The prefix {1, ..., n}; A_0 is the empty set.
FinCofinSet prefix_set(std::uint32_t n);

/// mu(A) = sum_{i in A} 2^-i for finite A, 2 - sum_{i in A^c} 2^-i for
/// cofinite A.  Dyadic terms are accumulated from the smallest upward, so
/// values such as 1 - 2^-n are exact for n <= 52.
double dyadic_measure(const FinCofinSet& a);

/// mu(A triangle B); for prefixes A_n, A_m this is |2^-n - 2^-m| exactly.
double symmetric_difference_measure(const FinCofinSet& a, const FinCofinSet& b);

/// An arbitrary subset of N described exactly: explicit membership up to
/// `bound`, and beyond it either constant membership or a periodic pattern
/// (residues mod `period` that belong to the set).  Periodic tails are what
/// make sets like the even numbers describable with an exactly summable
/// geometric tail.
struct SubsetSpec {
    enum class TailKind { all_out, all_in, periodic };

    std::function<bool(std::uint32_t)> member;
    std::uint32_t bound = 0;
    TailKind tail = TailKind::all_out;
    std::uint32_t period = 0;                 // for periodic tails
    std::vector<std::uint32_t> residues;      // members mod period, values in [0, period)

    static SubsetSpec finite(std::vector<std::uint32_t> elements);
    static SubsetSpec cofinite_complement(std::vector<std::uint32_t> complement);
    static SubsetSpec periodic_tail(std::vector<std::uint32_t> head, std::uint32_t bound,
                                    std::uint32_t period, std::vector<std::uint32_t> residues);

    bool contains(std::uint32_t i) const;
    bool is_finite() const;        // only finitely many members
    bool is_cofinite() const;      // only finitely many non-members
};

/// sum_{i in B} 2^-i, exact head plus closed-form geometric tail.
double dyadic_content(const SubsetSpec& b);

/// Outer measure mu*(B) = inf{mu(A) : A in the algebra, A >= B}.
/// Finite B: mu(B).  Cofinite B: mu(B).  Otherwise (B and B^c both
/// infinite): 1 + sum_{i in B} 2^-i, not attained by any algebra set.
double outer_measure(const SubsetSpec& b);

/// mu*(B) together with the certified gap |mu*(B) - 1| > 0; the engine of
/// the non-completeness example.
struct OuterMeasureGap {
    double mu_star;
    double gap;         // 1 - mu* for finite B, mu* - 1 otherwise
    bool finite_side;   // true when mu* < 1
};
OuterMeasureGap outer_measure_gap(const SubsetSpec& b);

/// Uniform grid measure on [lo, hi] with n_cells cells of weight
/// scale * (hi - lo) / n_cells; scale = 1 is Lebesgue, scale = 1/(hi - lo)
/// the probability normalization.
struct GridMeasure {
    double lo = 0.0;
    double hi = 1.0;
    int n_cells = 1;
    double scale = 1.0;

    GridMeasure() = default;
    GridMeasure(double lo_, double hi_, int n_cells_, double scale_ = 1.0);

    double cell_weight() const { return scale * (hi - lo) / n_cells; }
    double total_mass() const { return scale * (hi - lo); }
    GridMeasure normalized() const { return GridMeasure(lo, hi, n_cells, 1.0 / (hi - lo)); }
};

/// Measure of a union of whole cells, given by sorted duplicate-free cell
/// indices in [0, n_cells).
double grid_measure(const std::vector<int>& cells, const GridMeasure& m);

/// Cells covered by [x, y]; throws unless x and y sit on cell boundaries
/// (within align_tol of one).
std::vector<int> cells_of_interval(double x, double y, const GridMeasure& m,
                                   double align_tol = 1e-9);

} // namespace vlp

#endif
