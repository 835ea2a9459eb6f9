#include "vlp/inequalities.hpp"

#include <algorithm>
#include <cmath>

namespace vlp {

Modulus uniform_continuity_modulus(const GridFunction& f, int depth) {
    if (f.n_nodes() < 2) throw domain_error("uniform_continuity_modulus: needs >= 2 nodes");
    const double span = f.hi - f.lo;
    const double h = f.spacing();
    if (depth <= 0) {
        depth = 2 + static_cast<int>(std::ceil(std::log2(span / h)));
    }
    Modulus m;
    m.regulator = LatticeElement::ones(f.dim());
    for (int p = 1; p <= depth; ++p) {
        double delta = span * std::ldexp(1.0, -p);
        auto window = static_cast<std::size_t>(std::floor(delta / h + 1e-12));
        LatticeElement sup = LatticeElement::zero(f.dim());
        for (std::size_t i = 0; i < f.n_nodes(); ++i) {
            for (std::size_t j = i + 1; j < std::min(f.n_nodes(), i + window + 1); ++j) {
                sup = join(sup, abs(f.values[j] - f.values[i]));
            }
        }
        m.delta.push_back(delta);
        m.sigma.push_back(sup);
    }
    return m;
}

Verdict modulus_validate(const Modulus& m, const GridFunction& f) {
    const std::size_t depth = m.delta.size();
    if (depth == 0) return Verdict::fail(0, "empty modulus");
    for (std::size_t p = 1; p < depth; ++p) {
        if (m.delta[p] > m.delta[p - 1] || !leq(m.sigma[p], m.sigma[p - 1], 1e-15)) {
            return Verdict::fail(static_cast<long>(depth),
                                 "modulus not decreasing at p=" + std::to_string(p + 1));
        }
    }
    // At grid scale the last level must collapse.
    if (m.delta.back() >= f.spacing() && m.sigma.back().max_entry() > 1e-12) {
        if (m.sigma.back().max_entry() > 0.75 * m.sigma[depth / 2].max_entry()) {
            return Verdict::fail(static_cast<long>(depth), "modulus does not vanish at grid scale");
        }
    }
    // Defining inequality on every pair.
    LatticeElement u = m.regulator;
    for (std::size_t p = 0; p < depth; ++p) {
        LatticeElement band = mul(m.sigma[p], u);
        for (std::size_t i = 0; i < f.n_nodes(); ++i) {
            for (std::size_t j = i + 1; j < f.n_nodes(); ++j) {
                if (f.node(j) - f.node(i) > m.delta[p]) break;
                if (!leq(abs(f.values[j] - f.values[i]), band, 1e-12)) {
                    return Verdict::fail(static_cast<long>(depth),
                                         "defining inequality fails at p=" + std::to_string(p + 1) +
                                             ", nodes (" + std::to_string(i) + "," +
                                             std::to_string(j) + ")");
                }
            }
        }
    }
    return Verdict::pass(static_cast<long>(depth));
}

GridFunction finite_diff_derivative(const GridFunction& f) {
    if (f.n_nodes() < 3) throw domain_error("finite_diff_derivative: needs >= 3 nodes");
    const double h = f.spacing();
    GridFunction out = f;
    const std::size_t n = f.n_nodes();
    out.values[0] = (1.0 / (2.0 * h)) *
                    (-3.0 * f.values[0] + 4.0 * f.values[1] - 1.0 * f.values[2]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        out.values[i] = (1.0 / (2.0 * h)) * (f.values[i + 1] - f.values[i - 1]);
    }
    out.values[n - 1] = (1.0 / (2.0 * h)) *
                        (3.0 * f.values[n - 1] - 4.0 * f.values[n - 2] + 1.0 * f.values[n - 3]);
    return out;
}

Verdict midpoint_convexity_check(const GridFunction& f, double tol) {
    const std::size_t n = f.n_nodes();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; j += 2) {
            std::size_t mid = (i + j) / 2;
            LatticeElement rhs = 0.5 * (f.values[i] + f.values[j]);
            if (!leq(f.values[mid], rhs, tol)) {
                return Verdict::fail(static_cast<long>(n),
                                     "midpoint inequality fails on nodes (" + std::to_string(i) +
                                         "," + std::to_string(mid) + "," + std::to_string(j) + ")");
            }
        }
    }
    return Verdict::pass(static_cast<long>(n));
}

namespace {

LatticeElement node_slope(const GridFunction& f, std::size_t v) {
    const double h = f.spacing();
    const std::size_t n = f.n_nodes();
    if (v == 0) return (1.0 / h) * (f.values[1] - f.values[0]);
    if (v == n - 1) return (1.0 / h) * (f.values[n - 1] - f.values[n - 2]);
    return (1.0 / (2.0 * h)) * (f.values[v + 1] - f.values[v - 1]);
}

} // namespace

ConvexityWitness support_line(const GridFunction& f, std::size_t v_index, double tol) {
    if (v_index >= f.n_nodes()) throw domain_error("support_line: node out of range");
    ConvexityWitness w;
    w.v_index = v_index;
    w.slope = node_slope(f, v_index);
    double tv = f.node(v_index);
    GridFunction r = f;
    for (std::size_t i = 0; i < f.n_nodes(); ++i) {
        r.values[i] = f.values[v_index] + (f.node(i) - tv) * w.slope;
    }
    for (std::size_t i = 0; i < f.n_nodes(); ++i) {
        if (!leq(r.values[i], f.values[i], tol)) {
            throw domain_error("support_line: function dips below the support line at node " +
                               std::to_string(i) + " (non-convex input)");
        }
    }
    w.support_line_fn = std::move(r);
    w.chord_fn = chord_line(f);
    return w;
}

GridFunction chord_line(const GridFunction& f) {
    GridFunction r = f;
    const double span = f.hi - f.lo;
    for (std::size_t i = 0; i < f.n_nodes(); ++i) {
        double lambda = (f.node(i) - f.lo) / span;
        r.values[i] = (1.0 - lambda) * f.values.front() + lambda * f.values.back();
    }
    return r;
}

LatticeElement ConvexMap::apply(const LatticeElement& x) const {
    std::vector<double> out(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) out[i] = fn(x[i]);
    return LatticeElement(std::move(out));
}

namespace {

// Midpoint convexity of a scalar map sampled over an interval.
bool scalar_midpoint_convex(const std::function<double(double)>& fn, double lo, double hi,
                            double tol) {
    if (hi <= lo) hi = lo + 1.0;
    const int n = 65;
    double h = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 2; j < n; j += 2) {
            double a = lo + i * h;
            double b = lo + j * h;
            if (fn(0.5 * (a + b)) > 0.5 * (fn(a) + fn(b)) + tol) return false;
        }
    }
    return true;
}

GridFunction apply_map(const ConvexMap& phi, const GridFunction& f) {
    GridFunction out = f;
    for (auto& v : out.values) v = phi.apply(v);
    return out;
}

} // namespace

Verdict jensen_check(const GridFunction& f, const ConvexMap& phi, const GridMeasure& mu,
                     double tol) {
    if (std::fabs(mu.total_mass() - 1.0) > 1e-12) {
        throw domain_error("jensen_check: needs a probability measure");
    }
    double range_lo = f.values.front().min_entry();
    double range_hi = range_lo;
    for (const auto& v : f.values) {
        range_lo = std::min(range_lo, v.min_entry());
        range_hi = std::max(range_hi, v.max_entry());
    }
    if (!scalar_midpoint_convex(phi.fn, range_lo, range_hi, 1e-12)) {
        return Verdict::fail(static_cast<long>(f.n_nodes()),
                             "phi fails the midpoint check on the range of f");
    }

    LatticeElement tau = integrate(f, mu);
    LatticeElement lhs = phi.apply(tau);
    LatticeElement rhs = integrate(apply_map(phi, f), mu);
    if (!leq(lhs, rhs, tol)) {
        return Verdict::fail(static_cast<long>(f.n_nodes()),
                             "phi(int f) exceeds int phi(f) beyond tolerance");
    }
    // Composition keeps uniform continuity (the ucc precondition).
    Verdict comp = modulus_validate(uniform_continuity_modulus(apply_map(phi, f)),
                                    apply_map(phi, f));
    if (!comp.holds) {
        return Verdict::fail(static_cast<long>(f.n_nodes()),
                             "phi o f lost its modulus: " + comp.witness);
    }
    return Verdict::pass(static_cast<long>(f.n_nodes()));
}

Verdict hermite_hadamard_check(const GridFunction& f, const GridMeasure& mu, double tol) {
    Verdict convex = midpoint_convexity_check(f, 1e-12);
    if (!convex.holds) {
        return Verdict::fail(convex.horizon, "precondition: " + convex.witness);
    }
    Verdict smooth = modulus_validate(uniform_continuity_modulus(finite_diff_derivative(f)),
                                      finite_diff_derivative(f));
    if (!smooth.holds) {
        return Verdict::fail(smooth.horizon, "precondition: derivative modulus: " + smooth.witness);
    }
    if (f.n_nodes() % 2 == 0) {
        throw domain_error("hermite_hadamard_check: the midpoint must be a node");
    }
    LatticeElement mid = f.values[(f.n_nodes() - 1) / 2];
    LatticeElement mean = (1.0 / mu.total_mass()) * integrate(f, mu);
    LatticeElement ends = 0.5 * (f.values.front() + f.values.back());
    if (!leq(mid, mean, tol)) {
        return Verdict::fail(static_cast<long>(f.n_nodes()), "f(midpoint) exceeds the mean");
    }
    if (!leq(mean, ends, tol)) {
        return Verdict::fail(static_cast<long>(f.n_nodes()), "mean exceeds the endpoint average");
    }
    return Verdict::pass(static_cast<long>(f.n_nodes()));
}

Verdict fejer_check(const GridFunction& f, const GridFunction& w, const GridMeasure& mu,
                    double tol, double sym_tol) {
    if (w.dim() != 1 || w.n_nodes() != f.n_nodes()) {
        throw dimension_error("fejer_check: weight must be scalar on the same grid");
    }
    const std::size_t n = f.n_nodes();
    for (std::size_t i = 0; i < n; ++i) {
        if (w.values[i][0] < -sym_tol) throw domain_error("fejer_check: weight must be >= 0");
        if (std::fabs(w.values[i][0] - w.values[n - 1 - i][0]) > sym_tol) {
            throw domain_error("fejer_check: weight not symmetric about the midpoint (node " +
                               std::to_string(i) + ")");
        }
    }
    Verdict convex = midpoint_convexity_check(f, 1e-12);
    if (!convex.holds) return Verdict::fail(convex.horizon, "precondition: " + convex.witness);

    double total_w = integrate(w, mu).max_entry();
    LatticeElement mid = f.values[(n - 1) / 2];
    LatticeElement lhs = total_w * mid;
    LatticeElement middle = integrate(weighted(f, w), mu);
    LatticeElement rhs = total_w * (0.5 * (f.values.front() + f.values.back()));
    if (!leq(lhs, middle, tol)) {
        return Verdict::fail(static_cast<long>(n), "f(midpoint) int w exceeds int f w");
    }
    if (!leq(middle, rhs, tol)) {
        return Verdict::fail(static_cast<long>(n), "int f w exceeds the endpoint bound");
    }
    // The proof's moment identity for symmetric weights.
    double moment = integrate(times_coordinate(w), mu).max_entry();
    double center = 0.5 * (f.lo + f.hi) * total_w;
    if (std::fabs(moment - center) > tol) {
        return Verdict::fail(static_cast<long>(n),
                             "moment identity fails: " + std::to_string(moment) + " vs " +
                                 std::to_string(center));
    }
    return Verdict::pass(static_cast<long>(n));
}

SchwartzResult schwartz_check(const SimpleFunction& f, const SimpleFunction& g,
                              const SiteSpace& space, const OrderUnit& e, double tol) {
    auto [fr, gr] = SimpleFunction::common_refinement(f, g);
    const std::size_t dim = fr.dim();

    LatticeElement i_fg = LatticeElement::zero(dim);
    LatticeElement i_f2 = LatticeElement::zero(dim);
    LatticeElement i_g2 = LatticeElement::zero(dim);
    std::vector<double> mu_parts;
    std::vector<LatticeElement> cs, ds;
    for (std::size_t i = 0; i < fr.parts().size(); ++i) {
        double mu_i = space.measure_of(fr.parts()[i].sites);
        const LatticeElement& c = fr.parts()[i].value;
        const LatticeElement& d = gr.parts()[i].value;
        i_fg += mu_i * abs(mul(c, d));
        i_f2 += mu_i * mul(c, c);
        i_g2 += mu_i * mul(d, d);
        mu_parts.push_back(mu_i);
        cs.push_back(abs(c));
        ds.push_back(abs(d));
    }

    SchwartzResult out{Verdict::pass(1), LatticeElement::zero(dim), LatticeElement::zero(dim)};
    out.gap = mul(i_f2, i_g2) - mul(i_fg, i_fg);

    // Brute-force Lagrange discriminant over part pairs.
    for (std::size_t i = 0; i < cs.size(); ++i) {
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            LatticeElement cross = mul(cs[i], ds[j]) - mul(cs[j], ds[i]);
            out.discriminant += (mu_parts[i] * mu_parts[j]) * mul(cross, cross);
        }
    }

    if (!leq(mul(i_fg, i_fg), mul(i_f2, i_g2), tol)) {
        out.verdict = Verdict::fail(1, "(int |fg|)^2 exceeds (int f^2)(int g^2)");
        return out;
    }
    double lhs_norm = std::sqrt(m_norm(mul(i_fg, i_fg), e));
    double rhs_norm = lp_norm(f, 2, space, e) * lp_norm(g, 2, space, e);
    if (lhs_norm > rhs_norm + tol) {
        out.verdict = Verdict::fail(1, "norm inequality fails: " + std::to_string(lhs_norm) +
                                           " > " + std::to_string(rhs_norm));
        return out;
    }
    // Polarization: fg = ((f+g)^2 - f^2 - g^2)/2 must match the direct
    // product part by part.
    SimpleFunction sum = fr + gr;
    SimpleFunction polarized = (power(sum, 2) - power(fr, 2) - power(gr, 2)).scale(0.5);
    SimpleFunction direct = mul(fr, gr);
    SiteFunction pv = polarized.to_site_function();
    SiteFunction dv = direct.to_site_function();
    for (std::size_t t = 0; t < pv.size(); ++t) {
        if ((pv[t] - dv[t]).max_abs() > 1e-12 * (1.0 + dv[t].max_abs())) {
            out.verdict = Verdict::fail(1, "polarization identity fails at site " +
                                               std::to_string(t));
            return out;
        }
    }
    // The discriminant must reproduce the gap.
    if ((out.gap - out.discriminant).max_abs() > tol * (1.0 + out.gap.max_abs())) {
        out.verdict = Verdict::fail(1, "discriminant does not match the norm-product gap");
        return out;
    }
    if (out.discriminant.min_entry() < -tol) {
        out.verdict = Verdict::fail(1, "negative discriminant");
        return out;
    }
    return out;
}

} // namespace vlp
