#include "vlp/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace vlp {

namespace detail {

void require_same_dim(const LatticeElement& x, const LatticeElement& y, const char* op) {
    if (x.dim() != y.dim()) {
        throw dimension_error(std::string(op) + ": dimension mismatch (" +
                              std::to_string(x.dim()) + " vs " + std::to_string(y.dim()) + ")");
    }
}

} // namespace detail

LatticeElement::LatticeElement(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw domain_error("LatticeElement: dimension must be >= 1");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw domain_error("LatticeElement: entries must be finite reals");
        }
    }
}

LatticeElement LatticeElement::constant(std::size_t dim, double c) {
    return LatticeElement(std::vector<double>(dim, c));
}

LatticeElement& LatticeElement::operator+=(const LatticeElement& other) {
    detail::require_same_dim(*this, other, "operator+");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

LatticeElement& LatticeElement::operator-=(const LatticeElement& other) {
    detail::require_same_dim(*this, other, "operator-");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

LatticeElement& LatticeElement::operator*=(double c) {
    for (double& v : values_) v *= c;
    return *this;
}

LatticeElement LatticeElement::operator-() const {
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = -values_[i];
    return LatticeElement(std::move(out));
}

double LatticeElement::max_entry() const {
    return *std::max_element(values_.begin(), values_.end());
}

double LatticeElement::min_entry() const {
    return *std::min_element(values_.begin(), values_.end());
}

double LatticeElement::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::fabs(v));
    return m;
}

LatticeElement join(const LatticeElement& x, const LatticeElement& y) {
    detail::require_same_dim(x, y, "join");
    std::vector<double> out(x.dim());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(x[i], y[i]);
    return LatticeElement(std::move(out));
}

LatticeElement meet(const LatticeElement& x, const LatticeElement& y) {
    detail::require_same_dim(x, y, "meet");
    std::vector<double> out(x.dim());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::min(x[i], y[i]);
    return LatticeElement(std::move(out));
}

LatticeElement abs(const LatticeElement& x) {
    std::vector<double> out(x.dim());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::fabs(x[i]);
    return LatticeElement(std::move(out));
}

LatticeElement mul(const LatticeElement& x, const LatticeElement& y) {
    detail::require_same_dim(x, y, "mul");
    std::vector<double> out(x.dim());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] * y[i];
    return LatticeElement(std::move(out));
}

LatticeElement power(const LatticeElement& x, int p) {
    if (p < 1) throw domain_error("power: exponent must be >= 1");
    std::vector<double> out(x.dim());
    for (std::size_t i = 0; i < out.size(); ++i) {
        double acc = x[i];
        for (int k = 1; k < p; ++k) acc *= x[i];
        out[i] = acc;
    }
    return LatticeElement(std::move(out));
}

bool leq(const LatticeElement& x, const LatticeElement& y, double slack) {
    detail::require_same_dim(x, y, "leq");
    for (std::size_t i = 0; i < x.dim(); ++i) {
        if (x[i] > y[i] + slack) return false;
    }
    return true;
}

JoinMeetAbs join_meet_abs(const LatticeElement& x, const LatticeElement& y) {
    return JoinMeetAbs{join(x, y), meet(x, y), abs(x)};
}

OrderUnit::OrderUnit(LatticeElement e) : e_(std::move(e)) {
    for (std::size_t i = 0; i < e_.dim(); ++i) {
        if (e_[i] <= 0.0) throw domain_error("OrderUnit: entries must be strictly positive");
    }
}

double m_norm(const LatticeElement& x, const OrderUnit& e) {
    detail::require_same_dim(x, e.element(), "m_norm");
    double m = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) {
        m = std::max(m, std::fabs(x[i]) / e.element()[i]);
    }
    return m;
}

} // namespace vlp
