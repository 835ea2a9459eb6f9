#ifndef VLP_LATTICE_HPP
#define VLP_LATTICE_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace vlp {

// Base class for all structured errors thrown by this library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two elements of different dimension were combined.
class dimension_error : public error {
public:
    using error::error;
};

// An argument is outside the admissible domain (non-finite entry,
// non-positive scale, set outside the algebra, ...).
class domain_error : public error {
public:
    using error::error;
};

/// An element of C(Omega) for a finite index set Omega: one real value per
/// point, with the pointwise lattice order and the pointwise (f-algebra)
/// product.  Entries are validated to be finite at construction; NaN and
/// +-inf are rejected rather than propagated.
class LatticeElement {
public:
    explicit LatticeElement(std::vector<double> values);

    static LatticeElement constant(std::size_t dim, double c);
    static LatticeElement ones(std::size_t dim) { return constant(dim, 1.0); }
    static LatticeElement zero(std::size_t dim) { return constant(dim, 0.0); }

    std::size_t dim() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }

    LatticeElement& operator+=(const LatticeElement& other);
    LatticeElement& operator-=(const LatticeElement& other);
    LatticeElement& operator*=(double c);

    friend LatticeElement operator+(LatticeElement a, const LatticeElement& b) { return a += b; }
    friend LatticeElement operator-(LatticeElement a, const LatticeElement& b) { return a -= b; }
    friend LatticeElement operator*(double c, LatticeElement a) { return a *= c; }
    friend LatticeElement operator*(LatticeElement a, double c) { return a *= c; }
    LatticeElement operator-() const;

    double max_entry() const;
    double min_entry() const;
    double max_abs() const;

private:
    std::vector<double> values_;
};

/// Entrywise supremum x v y.
LatticeElement join(const LatticeElement& x, const LatticeElement& y);
/// Entrywise infimum x ^ y.
LatticeElement meet(const LatticeElement& x, const LatticeElement& y);
/// |x| = x v (-x).
LatticeElement abs(const LatticeElement& x);
/// f-algebra (entrywise) product.
LatticeElement mul(const LatticeElement& x, const LatticeElement& y);
/// Entrywise p-th power, p >= 1.
LatticeElement power(const LatticeElement& x, int p);

/// Entrywise x <= y, optionally with a slack added to y.
bool leq(const LatticeElement& x, const LatticeElement& y, double slack = 0.0);

struct JoinMeetAbs {
    LatticeElement sup;
    LatticeElement inf;
    LatticeElement abs_x;
};
JoinMeetAbs join_meet_abs(const LatticeElement& x, const LatticeElement& y);

/// A strictly positive element e with |x| <= c e for every x of matching
/// dimension; induces the M-norm below.
class OrderUnit {
public:
    explicit OrderUnit(LatticeElement e);
    static OrderUnit ones(std::size_t dim) { return OrderUnit(LatticeElement::ones(dim)); }
    const LatticeElement& element() const { return e_; }
    std::size_t dim() const { return e_.dim(); }

private:
    LatticeElement e_;
};

/// M-norm ||x||_e = inf{eps > 0 : |x| <= eps e} = max_i |x_i| / e_i.
double m_norm(const LatticeElement& x, const OrderUnit& e);

namespace detail {
void require_same_dim(const LatticeElement& x, const LatticeElement& y, const char* op);
}

} // namespace vlp

#endif
