#include "vlp/stochastic.hpp"

#include <algorithm>
#include <cmath>

#include "vlp/rng.hpp"

namespace vlp {

TimeGrid::TimeGrid(double t_end_, int n_steps_) : t_end(t_end_), n_steps(n_steps_) {
    if (!(t_end > 0.0)) throw domain_error("TimeGrid: t_end must be positive");
    if (n_steps < 1) throw domain_error("TimeGrid: n_steps must be >= 1");
}

int TimeGrid::nearest_node(double t) const {
    auto i = static_cast<int>(std::lround(t / t_end * n_steps));
    return std::clamp(i, 0, n_steps);
}

LatticeElement GridProcess::at(double t) const {
    double pos = t / grid.t_end * grid.n_steps;
    if (pos <= 0.0) return values.front();
    if (pos >= static_cast<double>(grid.n_steps)) return values.back();
    auto i = static_cast<std::size_t>(pos);
    double frac = pos - static_cast<double>(i);
    return (1.0 - frac) * values[i] + frac * values[i + 1];
}

PathEnsemble sample_bm(const TimeGrid& grid, int n_paths, std::uint64_t seed) {
    if (n_paths < 1) throw domain_error("sample_bm: n_paths must be >= 1");
    const int n = grid.n_nodes();
    const double root_dt = std::sqrt(grid.dt());
    std::vector<std::vector<double>> nodes(static_cast<std::size_t>(n),
                                           std::vector<double>(static_cast<std::size_t>(n_paths)));
    for (int j = 0; j < n_paths; ++j) {
        Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(j));
        double b = 0.0;
        nodes[0][static_cast<std::size_t>(j)] = 0.0;
        for (int i = 1; i < n; ++i) {
            b += root_dt * rng.normal();
            nodes[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = b;
        }
    }
    PathEnsemble ens;
    ens.grid = grid;
    ens.n_paths = n_paths;
    ens.seed = seed;
    ens.values.reserve(static_cast<std::size_t>(n));
    for (auto& row : nodes) ens.values.push_back(LatticeElement(std::move(row)));
    return ens;
}

PathEnsemble coarsen(const PathEnsemble& ens, int factor) {
    if (factor < 1 || ens.grid.n_steps % factor != 0) {
        throw domain_error("coarsen: factor must divide n_steps");
    }
    PathEnsemble out;
    out.grid = TimeGrid(ens.grid.t_end, ens.grid.n_steps / factor);
    out.n_paths = ens.n_paths;
    out.seed = ens.seed;
    for (int i = 0; i <= out.grid.n_steps; ++i) {
        out.values.push_back(ens.values[static_cast<std::size_t>(i) * factor]);
    }
    return out;
}

ProcessBounds path_bounds(const PathEnsemble& ens) {
    const auto dim = static_cast<std::size_t>(ens.n_paths);
    std::vector<double> z(dim, 0.0), w(dim, 0.0);
    const int n = ens.grid.n_nodes();
    for (const auto& node : ens.values) {
        for (std::size_t j = 0; j < dim; ++j) z[j] = std::max(z[j], std::fabs(node[j]));
    }
    // Dyadic lags h = 2^k dt.
    for (int lag = 1; lag < n; lag *= 2) {
        double h = lag * ens.grid.dt();
        double scale = 1.0 / std::pow(h, 0.25);
        for (int i = 0; i + lag < n; ++i) {
            const auto& lo = ens.values[static_cast<std::size_t>(i)];
            const auto& hi = ens.values[static_cast<std::size_t>(i + lag)];
            for (std::size_t j = 0; j < dim; ++j) {
                w[j] = std::max(w[j], std::fabs(hi[j] - lo[j]) * scale);
            }
        }
    }
    ProcessBounds out;
    out.zbound = LatticeElement(z);
    out.w = LatticeElement(w);
    std::vector<double> unit(dim);
    for (std::size_t j = 0; j < dim; ++j) unit[j] = w[j] + z[j] + 1e-12;
    out.unit = LatticeElement(std::move(unit));
    return out;
}

BridgeProcess bridge(const PathEnsemble& ens, double a, double t_upper) {
    if (!(t_upper > a && a > 1.0)) throw domain_error("bridge: needs T > a > 1");
    if (t_upper > ens.grid.t_end + 1e-12) throw domain_error("bridge: grid must cover [0, T]");
    BridgeProcess out;
    out.ia = ens.grid.nearest_node(a);
    out.i_upper = ens.grid.nearest_node(t_upper);
    double a_snap = ens.grid.node(out.ia);
    double t_snap = ens.grid.node(out.i_upper);
    out.snapped = std::fabs(a_snap - a) > 1e-12 || std::fabs(t_snap - t_upper) > 1e-12;
    out.a = a_snap;
    out.t_upper = t_snap;

    out.f.grid = ens.grid;
    const auto& b_at_a = ens.values[static_cast<std::size_t>(out.ia)];
    for (int i = 0; i < ens.grid.n_nodes(); ++i) {
        double t = ens.grid.node(i);
        if (i <= out.ia || i >= out.i_upper) {
            out.f.values.push_back(LatticeElement::zero(static_cast<std::size_t>(ens.n_paths)));
        } else {
            out.f.values.push_back((t - out.t_upper) *
                                   (ens.values[static_cast<std::size_t>(i)] - b_at_a));
        }
    }
    return out;
}

namespace {

void require_s_in_range(const GridProcess& f, double s, const char* op) {
    if (!(s > 0.0)) throw domain_error(std::string(op) + ": s must be positive");
    if (s > f.grid.t_end * (1.0 + 1e-12)) {
        throw domain_error(std::string(op) + ": s beyond the grid");
    }
}

} // namespace

LatticeElement phi(const GridProcess& f, double x, double s) {
    if (!(x > 0.0)) throw domain_error("phi: x must be positive");
    require_s_in_range(f, s, "phi");
    const double dt = f.grid.dt();
    const auto n_full = static_cast<std::size_t>(std::min<double>(
        std::floor(s / dt * (1.0 + 1e-15)), static_cast<double>(f.grid.n_steps)));

    LatticeElement acc = LatticeElement::zero(f.dim());
    double r_lo = 0.0;                       // t_i / s
    double pow_lo_x = 0.0;                   // (t_i / s)^x, with 0^x = 0 for x > 0
    double pow_lo_x1 = 0.0;                  // (t_i / s)^(x+1)
    auto cell = [&](double u, double v, const LatticeElement& fu, const LatticeElement& fv) {
        double r_hi = std::min(v / s, 1.0);
        double pow_hi_x = std::pow(r_hi, x);
        double pow_hi_x1 = std::pow(r_hi, x + 1.0);
        LatticeElement slope = (1.0 / (v - u)) * (fv - fu);
        LatticeElement a0 = fu - u * slope;
        acc += (pow_hi_x - pow_lo_x) * a0;
        acc += (s * x / (x + 1.0) * (pow_hi_x1 - pow_lo_x1)) * slope;
        r_lo = r_hi;
        pow_lo_x = pow_hi_x;
        pow_lo_x1 = pow_hi_x1;
    };

    for (std::size_t i = 0; i < n_full; ++i) {
        cell(f.grid.node(static_cast<int>(i)), f.grid.node(static_cast<int>(i) + 1), f.values[i],
             f.values[i + 1]);
    }
    double t_last = f.grid.node(static_cast<int>(n_full));
    if (s > t_last * (1.0 + 1e-15) && n_full < static_cast<std::size_t>(f.grid.n_steps)) {
        cell(t_last, s, f.values[n_full], f.at(s));
    }
    return acc;
}

std::vector<LatticeElement> phi_profile(const GridProcess& f, double x) {
    if (!(x > 0.0)) throw domain_error("phi_profile: x must be positive");
    std::vector<LatticeElement> out;
    out.reserve(f.values.size());
    out.push_back(f.values.front());
    LatticeElement acc = LatticeElement::zero(f.dim());
    for (int j = 1; j < f.grid.n_nodes(); ++j) {
        double u = f.grid.node(j - 1);
        double s = f.grid.node(j);
        double r = u / s;
        double pow_x = std::pow(r, x);
        double pow_x1 = std::pow(r, x + 1.0);
        const auto& fu = f.values[static_cast<std::size_t>(j - 1)];
        const auto& fv = f.values[static_cast<std::size_t>(j)];
        LatticeElement slope = (1.0 / (s - u)) * (fv - fu);
        acc = pow_x * acc;
        acc += (1.0 - pow_x) * (fu - u * slope);
        acc += (s * x / (x + 1.0) * (1.0 - pow_x1)) * slope;
        out.push_back(acc);
    }
    return out;
}

std::vector<LatticeElement> ode_residual(const GridProcess& f, double x,
                                         const std::vector<double>& s_values, double ds) {
    if (!(ds > 0.0)) throw domain_error("ode_residual: ds must be positive");
    std::vector<LatticeElement> out;
    out.reserve(s_values.size());
    for (double s : s_values) {
        require_s_in_range(f, s - ds, "ode_residual");
        require_s_in_range(f, s + ds, "ode_residual");
        LatticeElement dphi = (1.0 / (2.0 * ds)) * (phi(f, x, s + ds) - phi(f, x, s - ds));
        out.push_back(s * dphi + x * phi(f, x, s) - x * f.at(s));
    }
    return out;
}

LatticeElement pde_residual(const GridProcess& f, double x, double s, double dx, double ds) {
    if (!(x >= 1.0 + dx)) throw domain_error("pde_residual: needs x >= 1 + dx");
    require_s_in_range(f, s - ds, "pde_residual");
    require_s_in_range(f, s + ds, "pde_residual");
    LatticeElement mixed =
        (1.0 / (4.0 * dx * ds)) *
        (phi(f, x + dx, s + ds) - phi(f, x + dx, s - ds) - phi(f, x - dx, s + ds) +
         phi(f, x - dx, s - ds));
    LatticeElement dphidx = (1.0 / (2.0 * dx)) * (phi(f, x + dx, s) - phi(f, x - dx, s));
    return s * mixed + x * dphidx + phi(f, x, s) - f.at(s);
}

LatticeElement ito_integral(const std::function<double(double)>& g, const GridProcess& f,
                            double s) {
    require_s_in_range(f, s, "ito_integral");
    const double dt = f.grid.dt();
    const auto n_full = static_cast<std::size_t>(std::min<double>(
        std::floor(s / dt * (1.0 + 1e-15)), static_cast<double>(f.grid.n_steps)));
    LatticeElement acc = LatticeElement::zero(f.dim());
    for (std::size_t i = 0; i < n_full; ++i) {
        acc += g(f.grid.node(static_cast<int>(i))) * (f.values[i + 1] - f.values[i]);
    }
    double t_last = f.grid.node(static_cast<int>(n_full));
    if (s > t_last * (1.0 + 1e-15) && n_full < static_cast<std::size_t>(f.grid.n_steps)) {
        acc += g(t_last) * (f.at(s) - f.values[n_full]);
    }
    return acc;
}

namespace {

double psi_weight(double t, double s, double x) {
    if (t <= 0.0) return x == 1.0 ? 1.0 : 0.0;
    return std::pow(t / s, x - 1.0);
}

} // namespace

LatticeElement psi(const GridProcess& f, double x, double s) {
    if (!(x >= 1.0)) throw domain_error("psi: needs x >= 1");
    require_s_in_range(f, s, "psi");
    LatticeElement acc =
        ito_integral([s, x](double t) { return psi_weight(t, s, x); }, f, s);
    return (x / s) * acc;
}

std::vector<LatticeElement> psi_profile(const GridProcess& f, double x) {
    if (!(x >= 1.0)) throw domain_error("psi_profile: needs x >= 1");
    std::vector<LatticeElement> out;
    out.reserve(f.values.size());
    out.push_back(LatticeElement::zero(f.dim()));
    // S_j = sum_{i<j} (t_i / t_j)^(x-1) df_i, rescaled cell by cell.
    LatticeElement running = LatticeElement::zero(f.dim());
    for (int j = 1; j < f.grid.n_nodes(); ++j) {
        double t_prev = f.grid.node(j - 1);
        double t_cur = f.grid.node(j);
        double rescale = psi_weight(t_prev, t_cur, x);
        running = rescale * (running + (f.values[static_cast<std::size_t>(j)] -
                                        f.values[static_cast<std::size_t>(j - 1)]));
        out.push_back((x / t_cur) * running);
    }
    return out;
}

LatticeElement phipsi_residual(const GridProcess& f, double x, double s) {
    if (!(x >= 2.0)) throw domain_error("phipsi_residual: needs x >= 2");
    LatticeElement rhs = (x / s) * (f.at(s) - phi(f, x - 1.0, s));
    return psi(f, x, s) - rhs;
}

std::vector<LatticeElement> sde_residual(const GridProcess& f, double x, int i_lo, int i_hi) {
    if (i_lo < 1 || i_hi <= i_lo || i_hi >= f.grid.n_nodes()) {
        throw domain_error("sde_residual: node range must sit inside (0, n_steps)");
    }
    auto prof = psi_profile(f, x);
    const double dt = f.grid.dt();
    std::vector<LatticeElement> out;
    out.reserve(static_cast<std::size_t>(i_hi - i_lo));
    for (int i = i_lo; i < i_hi; ++i) {
        double s = f.grid.node(i);
        LatticeElement dpsi = prof[static_cast<std::size_t>(i + 1)] -
                              prof[static_cast<std::size_t>(i)];
        LatticeElement df = f.values[static_cast<std::size_t>(i + 1)] -
                            f.values[static_cast<std::size_t>(i)];
        out.push_back(dpsi + (x / s) * dt * prof[static_cast<std::size_t>(i)] - (x / s) * df);
    }
    return out;
}

double max_m_norm(const std::vector<LatticeElement>& residuals) {
    double worst = 0.0;
    for (const auto& r : residuals) worst = std::max(worst, r.max_abs());
    return worst;
}

std::vector<ScanRow> uniform_convergence_scan(const GridProcess& f, const std::vector<double>& xs,
                                              int i_lo, int i_hi, int stride) {
    if (i_lo < 1 || i_hi >= f.grid.n_nodes() || stride < 1) {
        throw domain_error("uniform_convergence_scan: bad node range");
    }
    std::vector<ScanRow> out;
    out.reserve(xs.size());
    for (double x : xs) {
        double sup = 0.0;
        auto visit = [&](int i) {
            double s = f.grid.node(i);
            sup = std::max(sup, (phi(f, x, s) - f.values[static_cast<std::size_t>(i)]).max_abs());
        };
        for (int i = i_lo; i <= i_hi; i += stride) visit(i);
        if ((i_hi - i_lo) % stride != 0) visit(i_hi); // the right end always counts
        out.push_back(ScanRow{x, sup});
    }
    return out;
}

Signal bump_signal(double a, double t_upper) {
    if (!(t_upper > a && a > 1.0)) throw domain_error("bump_signal: needs T > a > 1");
    Signal s;
    s.a = a;
    s.t_upper = t_upper;
    s.h = [a, t_upper](double t) {
        if (t <= a || t >= t_upper) return 0.0;
        double u = (t - a) * (t_upper - t);
        return u * u;
    };
    s.dh = [a, t_upper](double t) {
        if (t <= a || t >= t_upper) return 0.0;
        return 2.0 * (t - a) * (t_upper - t) * (t_upper + a - 2.0 * t);
    };
    return s;
}

void validate_signal(const Signal& s) {
    auto near_zero = [](double v) { return std::fabs(v) <= 1e-12; };
    if (!near_zero(s.h(s.a)) || !near_zero(s.dh(s.a)) || !near_zero(s.h(s.t_upper)) ||
        !near_zero(s.dh(s.t_upper))) {
        throw domain_error("signal: h and h' must vanish at a and at T");
    }
    for (double t = 0.0; t <= s.a; t += s.a / 16.0) {
        if (!near_zero(s.h(t)) || !near_zero(s.dh(t))) {
            throw domain_error("signal: h must vanish on [0, a]");
        }
    }
}

RecoveryResult signal_recover(const Signal& h, double eps, const PathEnsemble& ens, double x_cap) {
    if (!(eps > 0.0)) throw domain_error("signal_recover: eps must be positive");
    double x = 1.0 / eps;
    if (x > x_cap) {
        throw domain_error("signal_recover: eps^-1 = " + std::to_string(x) +
                           " exceeds the stability cap " + std::to_string(x_cap) +
                           "; use a larger eps or raise the cap");
    }
    validate_signal(h);

    BridgeProcess br = bridge(ens, h.a, h.t_upper);
    GridProcess g;
    g.grid = ens.grid;
    g.values.reserve(br.f.values.size());
    const auto dim = static_cast<std::size_t>(ens.n_paths);
    for (int i = 0; i < ens.grid.n_nodes(); ++i) {
        double ht = h.h(ens.grid.node(i));
        g.values.push_back(LatticeElement::constant(dim, ht) +
                           eps * br.f.values[static_cast<std::size_t>(i)]);
    }

    auto prof = psi_profile(g, x);
    RecoveryResult out;
    for (int i = 1; i < ens.grid.n_nodes(); ++i) {
        double s = ens.grid.node(i);
        double mean = 0.0;
        const auto& v = prof[static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j < dim; ++j) mean += v[j];
        mean /= static_cast<double>(dim);
        double truth = h.dh(s);
        out.s.push_back(s);
        out.estimate.push_back(mean);
        out.h_prime.push_back(truth);
        out.abs_error.push_back(std::fabs(mean - truth));
        out.sup_error = std::max(out.sup_error, out.abs_error.back());
    }
    return out;
}

} // namespace vlp
