#include "vlp/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vlp {

namespace {

std::string index_str(long z) { return std::to_string(z); }

} // namespace

FilterSpec FilterSpec::cofinite() {
    FilterSpec f;
    f.kind_ = Kind::cofinite;
    return f;
}

FilterSpec FilterSpec::density_one(double tol) {
    FilterSpec f;
    f.kind_ = Kind::density_one;
    f.density_tol_ = tol;
    return f;
}

FilterSpec FilterSpec::generated(std::vector<SubsetWindow> generators) {
    if (generators.empty()) throw domain_error("FilterSpec::generated: needs generators");
    FilterSpec f;
    f.kind_ = Kind::generated;
    f.generators_ = std::move(generators);
    return f;
}

Verdict filter_contains(const FilterSpec& filter, const SubsetWindow& s, long horizon) {
    if (horizon < 1) throw domain_error("filter_contains: horizon must be >= 1");
    switch (filter.kind()) {
        case FilterSpec::Kind::cofinite: {
            if (s.tail == Tail::in) {
                long last_out = 0;
                for (long z = 1; z <= horizon; ++z) {
                    if (!s.member(z)) last_out = z;
                }
                return Verdict::pass(horizon,
                                     "complement contained in [1," + index_str(last_out) + "]");
            }
            long last_in = 0;
            for (long z = 1; z <= horizon; ++z) {
                if (s.member(z)) last_in = z;
            }
            return Verdict::fail(horizon, "complement is cofinal from " + index_str(last_in + 1));
        }
        case FilterSpec::Kind::density_one: {
            if (s.tail == Tail::out) {
                return Verdict::fail(horizon, "declared tail leaves the set of density < 1");
            }
            auto out_count = [&](long n) {
                long c = 0;
                for (long z = 1; z <= n; ++z) {
                    if (!s.member(z)) ++c;
                }
                return c;
            };
            double d_full = static_cast<double>(out_count(horizon)) / horizon;
            if (d_full <= filter.density_tol()) {
                return Verdict::pass(horizon, "complement density " + std::to_string(d_full));
            }
            // Below tolerance is out of reach at this horizon; accept when the
            // complement density is certified to decay geometrically across
            // the dyadic checkpoints, which forces density one in the limit.
            double d_half = static_cast<double>(out_count(horizon / 2)) / (horizon / 2);
            if (d_full <= 0.75 * d_half) {
                return Verdict::pass(horizon, "complement density decaying: " +
                                                  std::to_string(d_half) + " -> " +
                                                  std::to_string(d_full));
            }
            return Verdict::fail(horizon, "complement density " + std::to_string(d_full) +
                                              " above tolerance and not decaying");
        }
        case FilterSpec::Kind::generated: {
            // S is in the generated filter iff it contains the intersection
            // of all generators.
            for (long z = 1; z <= horizon; ++z) {
                bool in_core = true;
                for (const auto& g : filter.generators()) {
                    if (!g.member(z)) {
                        in_core = false;
                        break;
                    }
                }
                if (in_core && !s.member(z)) {
                    return Verdict::fail(horizon, "core index " + index_str(z) + " missing");
                }
            }
            bool core_tail_in = true;
            for (const auto& g : filter.generators()) {
                if (g.tail == Tail::out) core_tail_in = false;
            }
            if (core_tail_in && s.tail == Tail::out) {
                return Verdict::fail(horizon, "core tail not covered beyond horizon");
            }
            return Verdict::pass(horizon, "contains the generator intersection");
        }
    }
    return Verdict::fail(horizon, "unknown filter kind");
}

Verdict product_filter_contains(const FilterSpec& filter,
                                const std::function<bool(long, long)>& c, Tail tail,
                                long horizon) {
    if (filter.kind() != FilterSpec::Kind::cofinite) {
        throw domain_error("product_filter_contains: only the cofinite base filter is supported");
    }
    if (tail == Tail::out) {
        return Verdict::fail(horizon, "declared tail excludes every unbounded rectangle");
    }
    // [m, horizon]^2 must lie inside C for some m <= horizon/2, so that the
    // window exhibits a rectangle of side at least horizon/2; a degenerate
    // corner square (such as the one the diagonal contains) does not certify.
    long m_found = 0;
    bool ok = true;
    for (long m = horizon; m >= 1; --m) {
        for (long j = m; j <= horizon && ok; ++j) {
            if (!c(m, j) || !c(j, m)) {
                ok = false;
            }
        }
        if (!ok) break;
        if (m <= horizon / 2) m_found = m;
    }
    if (m_found == 0) {
        // Report a missing pair on the smallest failing layer.
        for (long j = horizon; j >= 1; --j) {
            if (!c(horizon, j)) {
                return Verdict::fail(horizon, "no tail rectangle: (" + index_str(horizon) + "," +
                                                  index_str(j) + ") missing");
            }
            if (!c(j, horizon)) {
                return Verdict::fail(horizon, "no tail rectangle: (" + index_str(j) + "," +
                                                  index_str(horizon) + ") missing");
            }
        }
        return Verdict::fail(horizon, "no tail rectangle found");
    }
    return Verdict::pass(horizon, "contains [" + index_str(m_found) + ",h]^2");
}

RealOSequence RealOSequence::dyadic(int depth, double tol) {
    RealOSequence s;
    s.at = [](int p) { return std::ldexp(1.0, -p); };
    s.depth = depth;
    s.tol = tol > 0.0 ? tol : std::ldexp(1.0, -depth);
    return s;
}

Verdict o_sequence_validate(const OSequence& s) {
    if (s.depth < 2) throw domain_error("o_sequence_validate: depth must be >= 2");
    LatticeElement prev = s.at(1);
    if (prev.min_entry() <= 0.0) {
        throw domain_error("o_sequence_validate: entries must be positive");
    }
    for (int p = 2; p <= s.depth; ++p) {
        LatticeElement cur = s.at(p);
        if (cur.min_entry() <= 0.0) {
            throw domain_error("o_sequence_validate: entries must be positive");
        }
        if (!leq(cur, prev, 1e-15)) {
            return Verdict::fail(s.depth, "not decreasing at p=" + std::to_string(p));
        }
        prev = cur;
    }
    if (prev.min_entry() > s.tol) {
        return Verdict::fail(s.depth, "infimum " + std::to_string(prev.min_entry()) +
                                          " above tolerance " + std::to_string(s.tol));
    }
    return Verdict::pass(s.depth);
}

Verdict o_sequence_validate(const RealOSequence& s) {
    if (s.depth < 2) throw domain_error("o_sequence_validate: depth must be >= 2");
    double prev = s.at(1);
    if (prev <= 0.0) throw domain_error("o_sequence_validate: entries must be positive");
    for (int p = 2; p <= s.depth; ++p) {
        double cur = s.at(p);
        if (cur <= 0.0) throw domain_error("o_sequence_validate: entries must be positive");
        if (cur > prev + 1e-15) {
            return Verdict::fail(s.depth, "not decreasing at p=" + std::to_string(p));
        }
        prev = cur;
    }
    if (prev > s.tol) {
        return Verdict::fail(s.depth, "infimum " + std::to_string(prev) + " above tolerance " +
                                          std::to_string(s.tol));
    }
    return Verdict::pass(s.depth);
}

namespace {

// Builds the window {z : member_value(z)} with the family's declared tail,
// or the value at z = horizon when none was declared.
SubsetWindow band_window(const std::function<bool(long)>& member, std::optional<Tail> declared,
                         long horizon) {
    SubsetWindow w;
    w.member = member;
    w.tail = declared ? *declared : (member(horizon) ? Tail::in : Tail::out);
    return w;
}

} // namespace

Verdict of_convergence_check(const IndexedFamily& family, const LatticeElement& limit,
                             const OSequence& sigma, const FilterSpec& filter, long horizon) {
    for (int p = 1; p <= sigma.depth; ++p) {
        LatticeElement band = sigma.at(p);
        auto member = [&family, &limit, band](long z) {
            return leq(abs(family.value(z) - limit), band);
        };
        Verdict v = filter_contains(filter, band_window(member, family.band_tail, horizon), horizon);
        if (!v.holds) {
            return Verdict::fail(horizon, "level p=" + std::to_string(p) + ": " + v.witness);
        }
    }
    return Verdict::pass(horizon, "all " + std::to_string(sigma.depth) + " levels in the filter");
}

Verdict rf_convergence_check(const IndexedFamily& family, const LatticeElement& limit,
                             const LatticeElement& u, const RealOSequence& eps,
                             const FilterSpec& filter, long horizon) {
    if (u.min_entry() < 0.0) throw domain_error("rf_convergence_check: regulator must be positive");
    for (int p = 1; p <= eps.depth; ++p) {
        LatticeElement band = eps.at(p) * u;
        auto member = [&family, &limit, band](long z) {
            return leq(abs(family.value(z) - limit), band);
        };
        Verdict v = filter_contains(filter, band_window(member, family.band_tail, horizon), horizon);
        if (!v.holds) {
            return Verdict::fail(horizon, "level p=" + std::to_string(p) + ": " + v.witness);
        }
    }
    return Verdict::pass(horizon);
}

Verdict uniform_convergence_check(const SiteFamily& family, const SiteFunction& limit,
                                  const RealOSequence& eps, const FilterSpec& filter,
                                  long horizon) {
    for (int p = 1; p <= eps.depth; ++p) {
        double band = eps.at(p);
        auto member = [&family, &limit, band](long z) {
            SiteFunction f = family.at(z);
            for (std::size_t t = 0; t < limit.size(); ++t) {
                if (abs(f[t] - limit[t]).max_entry() > band) return false;
            }
            return true;
        };
        Verdict v = filter_contains(filter, band_window(member, family.band_tail, horizon), horizon);
        if (!v.holds) {
            return Verdict::fail(horizon, "level p=" + std::to_string(p) + ": " + v.witness);
        }
    }
    return Verdict::pass(horizon);
}

namespace {

SiteSet exceptional_set(const SiteFunction& f, const SiteFunction& limit, double eps) {
    SiteSet out;
    for (std::size_t t = 0; t < limit.size(); ++t) {
        if (abs(f[t] - limit[t]).max_entry() > eps) out.push_back(t);
    }
    return out;
}

} // namespace

Verdict mu_convergence_check(const SiteFamily& family, const SiteFunction& limit,
                             const SiteSpace& space, const RealOSequence& eps,
                             const RealOSequence& sigma, const FilterSpec& filter, long horizon) {
    if (eps.depth != sigma.depth) {
        throw domain_error("mu_convergence_check: eps and sigma must share the depth");
    }
    for (int p = 1; p <= eps.depth; ++p) {
        double band = eps.at(p);
        double budget = sigma.at(p);
        auto member = [&](long z) {
            SiteFunction f = family.at(z);
            return space.measure_of(exceptional_set(f, limit, band)) <= budget;
        };
        Verdict v = filter_contains(filter, band_window(member, family.band_tail, horizon), horizon);
        if (!v.holds) {
            return Verdict::fail(horizon, "level p=" + std::to_string(p) + ": " + v.witness);
        }
    }
    return Verdict::pass(horizon);
}

ModularSpec integral_modular(const SiteSpace& space, std::size_t dim) {
    std::vector<double> weights(space.n_sites());
    for (std::size_t t = 0; t < weights.size(); ++t) weights[t] = space.site_weight(t);
    ModularSpec m;
    m.value_dim = dim;
    m.rho = [weights, dim](const SiteFunction& f) {
        LatticeElement acc = LatticeElement::zero(dim);
        for (std::size_t t = 0; t < f.size(); ++t) {
            acc += weights[t] * abs(f[t]);
        }
        return acc;
    };
    return m;
}

SiteFunction restrict_to(const SiteFunction& f, const SiteSet& b, std::size_t n_sites) {
    if (f.empty()) return f;
    SiteFunction out(f.size(), LatticeElement::zero(f.front().dim()));
    for (std::size_t idx : b) {
        if (idx >= n_sites || idx >= f.size()) {
            throw domain_error("restrict_to: site index out of range");
        }
        out[idx] = f[idx];
    }
    return out;
}

SiteFunction scale_function(const SiteFunction& f, double c) {
    SiteFunction out;
    out.reserve(f.size());
    for (const auto& v : f) out.push_back(c * v);
    return out;
}

ModularAxiomsReport modular_axioms_check(const ModularSpec& rho, const SiteSpace& space,
                                         const std::vector<SiteFunction>& samples,
                                         const std::vector<std::pair<double, double>>& weights,
                                         double tol, double finite_tol) {
    if (samples.empty()) throw domain_error("modular_axioms_check: samples must be nonempty");
    const std::size_t n = space.n_sites();
    const std::size_t fdim = samples.front().front().dim();
    ModularAxiomsReport rep;
    long h = static_cast<long>(samples.size());

    SiteFunction zero(n, LatticeElement::zero(fdim));
    rep.rho0 = rho.rho(zero).max_abs() <= tol
                   ? Verdict::pass(h)
                   : Verdict::fail(h, "rho(0) = " + std::to_string(rho.rho(zero).max_abs()));

    rep.rho1 = Verdict::pass(h);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        LatticeElement d = rho.rho(samples[i]) - rho.rho(scale_function(samples[i], -1.0));
        if (d.max_abs() > tol) {
            rep.rho1 = Verdict::fail(h, "rho(-f) != rho(f) at sample " + std::to_string(i));
            break;
        }
    }

    rep.rho2 = Verdict::pass(h);
    rep.convex = Verdict::pass(h);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (std::size_t j = 0; j < samples.size(); ++j) {
            for (auto [a1, a2] : weights) {
                SiteFunction comb(n, LatticeElement::zero(fdim));
                for (std::size_t t = 0; t < n; ++t) {
                    comb[t] = a1 * samples[i][t] + a2 * samples[j][t];
                }
                LatticeElement lhs = rho.rho(comb);
                if (rep.rho2.holds &&
                    !leq(lhs, rho.rho(samples[i]) + rho.rho(samples[j]), tol)) {
                    rep.rho2 = Verdict::fail(h, "rho2 fails at pair (" + std::to_string(i) + "," +
                                                    std::to_string(j) + "), weights " +
                                                    std::to_string(a1) + "," + std::to_string(a2));
                }
                if (rep.convex.holds &&
                    !leq(lhs, a1 * rho.rho(samples[i]) + a2 * rho.rho(samples[j]), tol)) {
                    rep.convex =
                        Verdict::fail(h, "convexity fails at pair (" + std::to_string(i) + "," +
                                             std::to_string(j) + ")");
                }
            }
            if (!rep.rho2.holds && !rep.convex.holds) break;
        }
        if (!rep.rho2.holds && !rep.convex.holds) break;
    }

    // Monotone: |f| <= |h| pairs generated by scaling and clamping.
    rep.monotone = Verdict::pass(h);
    for (std::size_t i = 0; i < samples.size() && rep.monotone.holds; ++i) {
        LatticeElement big = rho.rho(samples[i]);
        for (double beta : {0.0, 0.25, 0.5, 1.0}) {
            if (!leq(rho.rho(scale_function(samples[i], beta)), big, tol)) {
                rep.monotone = Verdict::fail(h, "monotonicity fails at sample " +
                                                    std::to_string(i) + ", beta " +
                                                    std::to_string(beta));
                break;
            }
        }
        // Clamp entries to half the peak.
        double c = 0.0;
        for (const auto& v : samples[i]) c = std::max(c, v.max_abs());
        c *= 0.5;
        SiteFunction clamped;
        clamped.reserve(n);
        for (const auto& v : samples[i]) {
            std::vector<double> w(v.dim());
            for (std::size_t k = 0; k < v.dim(); ++k) w[k] = std::clamp(v[k], -c, c);
            clamped.push_back(LatticeElement(std::move(w)));
        }
        if (!leq(rho.rho(clamped), big, tol)) {
            rep.monotone = Verdict::fail(h, "monotonicity fails on clamp of sample " +
                                                std::to_string(i));
        }
    }

    // Finiteness: rho(eps_p e 1_A) must fall below finite_tol for sampled A.
    rep.finite = Verdict::pass(h);
    std::vector<SiteSet> sets = {all_sites(n)};
    if (n >= 2) {
        SiteSet half;
        for (std::size_t t = 0; t < n / 2; ++t) half.push_back(t);
        sets.push_back(half);
        sets.push_back(SiteSet{0});
    }
    for (const auto& a : sets) {
        SiteFunction ind(n, LatticeElement::zero(fdim));
        for (std::size_t idx : a) ind[idx] = LatticeElement::ones(fdim);
        double prev = std::numeric_limits<double>::infinity();
        double last = 0.0;
        bool decreasing = true;
        for (int p = 1; p <= 20; ++p) {
            double val = rho.rho(scale_function(ind, std::ldexp(1.0, -p))).max_abs();
            if (val > prev + tol) decreasing = false;
            prev = val;
            last = val;
        }
        if (!decreasing || last > finite_tol) {
            rep.finite = Verdict::fail(h, "finiteness fails on a sampled set (last value " +
                                              std::to_string(last) + ")");
            break;
        }
    }
    return rep;
}

namespace {

// Desk-scale test that a positive decreasing sequence has infimum zero:
// either its last value is already below the tolerance, or it is certified
// to decay geometrically between the middle and the end.
bool vanishing_tail(double last, double mid, double tol) {
    return last <= tol || last <= 0.75 * mid;
}

// Candidate small-measure sets for the equi-absolute-continuity witness
// search: prefixes of the value-ordered site list that fit the measure
// budget, the budget-fitting singletons, and the empty set.
std::vector<SiteSet> candidate_sets(const SiteFunction& f, const SiteSpace& space, double budget) {
    const std::size_t n = space.n_sites();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> value(n);
    for (std::size_t t = 0; t < n; ++t) value[t] = f[t].max_abs();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (value[a] != value[b]) return value[a] > value[b];
        return space.site_weight(a) < space.site_weight(b);
    });

    std::vector<SiteSet> out;
    out.push_back({});
    SiteSet greedy;
    double mass = 0.0;
    for (std::size_t t : order) {
        double w = space.site_weight(t);
        if (mass + w > budget * (1.0 + 1e-12)) continue;
        mass += w;
        greedy.push_back(t);
        SiteSet sorted = greedy;
        std::sort(sorted.begin(), sorted.end());
        out.push_back(std::move(sorted));
    }
    for (std::size_t t = 0; t < n; ++t) {
        if (space.site_weight(t) <= budget * (1.0 + 1e-12)) {
            out.push_back(SiteSet{t});
        }
    }
    return out;
}

} // namespace

Verdict equi_ac_check(const SiteFamily& family, const ModularSpec& rho, double alpha,
                      const SiteSpace& space, const RealOSequence& sigma, long horizon,
                      const EquiAcParams& params) {
    if (alpha <= 0.0) throw domain_error("equi_ac_check: alpha must be positive");
    if (horizon < 1) return Verdict::pass(0, "empty family");
    const std::size_t n = space.n_sites();
    const long tail_max = params.tail_search > 0 ? params.tail_search : std::max<long>(1, horizon / 2);

    std::vector<SiteFunction> scaled;
    scaled.reserve(static_cast<std::size_t>(horizon));
    for (long z = 1; z <= horizon; ++z) {
        scaled.push_back(scale_function(family.at(z), alpha));
    }

    // (ac_rho(1)): per-(z,p) supremum over the sampled sets, then the best
    // cofinite tail.
    std::string ac1_witness;
    bool ac1 = false;
    {
        std::vector<std::vector<LatticeElement>> m; // [p-1][z-1]
        for (int p = 1; p <= sigma.depth; ++p) {
            double budget = sigma.at(p);
            std::vector<LatticeElement> row;
            row.reserve(scaled.size());
            for (const auto& f : scaled) {
                LatticeElement sup = LatticeElement::zero(rho.value_dim);
                for (const auto& b : candidate_sets(f, space, budget)) {
                    sup = join(sup, rho.rho(restrict_to(f, b, n)));
                }
                row.push_back(sup);
            }
            m.push_back(std::move(row));
        }
        const auto mid_level = static_cast<std::size_t>(std::max(1, sigma.depth / 2) - 1);
        for (long k = 1; k <= tail_max && !ac1; ++k) {
            double worst_last = 0.0;
            double worst_mid = 0.0;
            for (long z = k; z <= horizon; ++z) {
                worst_last = std::max(worst_last,
                                      m.back()[static_cast<std::size_t>(z - 1)].max_entry());
                worst_mid = std::max(worst_mid,
                                     m[mid_level][static_cast<std::size_t>(z - 1)].max_entry());
            }
            if (vanishing_tail(worst_last, worst_mid, params.tol)) {
                ac1 = true;
                ac1_witness = "(w_p) certified on tail z >= " + std::to_string(k) +
                              " (w_mid " + std::to_string(worst_mid) + ", w_last " +
                              std::to_string(worst_last) + ")";
            }
        }
        if (!ac1) {
            // Report the defeating index at the deepest level.
            long zbad = horizon;
            double worst = -1.0;
            for (long z = tail_max; z <= horizon; ++z) {
                double v = m.back()[static_cast<std::size_t>(z - 1)].max_entry();
                if (v > worst) {
                    worst = v;
                    zbad = z;
                }
            }
            ac1_witness = "ac1 fails: rho(alpha f_z 1_B) = " + std::to_string(worst) +
                          " at z = " + std::to_string(zbad) + ", p = " +
                          std::to_string(sigma.depth);
        }
    }

    // (ac_rho(2)): exhaust with the canonical weight-ordered prefixes.
    std::string ac2_witness;
    bool ac2 = false;
    {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return space.site_weight(a) > space.site_weight(b);
        });
        int m_depth = params.depth;
        double r_last = 0.0;
        double r_mid = 0.0;
        for (int m = 1; m <= m_depth; ++m) {
            double frac = 1.0 - std::ldexp(1.0, -m);
            auto keep = static_cast<std::size_t>(std::ceil(frac * static_cast<double>(n)));
            keep = std::min(keep, n);
            SiteSet b(order.begin(), order.begin() + static_cast<long>(keep));
            std::sort(b.begin(), b.end());
            SiteSet rest = site_set_complement(b, n);
            double worst = 0.0;
            for (const auto& f : scaled) {
                worst = std::max(worst, rho.rho(restrict_to(f, rest, n)).max_entry());
            }
            if (m == std::max(1, m_depth / 2)) r_mid = worst;
            r_last = worst;
        }
        if (vanishing_tail(r_last, r_mid, params.tol)) {
            ac2 = true;
            ac2_witness = "(r_m) certified with the weight-ordered exhaustion";
        } else {
            ac2_witness = "ac2 fails: residual mass " + std::to_string(r_last);
        }
    }

    if (ac1 && ac2) return Verdict::pass(horizon, ac1_witness + "; " + ac2_witness);
    return Verdict::fail(horizon, (ac1 ? ac2_witness : ac1_witness));
}

Verdict absolutely_continuous_check(const SiteFunction& f, const ModularSpec& rho, double alpha,
                                    const SiteSpace& space, const RealOSequence& sigma,
                                    const EquiAcParams& params) {
    SiteFamily constant{[f](long) { return f; }, Tail::in};
    return equi_ac_check(constant, rho, alpha, space, sigma, 2, params);
}

namespace {

Verdict conclusion_via_tail_sups(const std::vector<LatticeElement>& values, long horizon,
                                 const FilterSpec& filter, double tol) {
    // Tail suprema give the certifying (o)-sequence: sigma_p = sup_{z >= k_p}
    // rho(alpha f_z); the band sets contain tails, hence lie in any free
    // filter and in particular in `filter`.
    const int depth = 6;
    std::vector<LatticeElement> sig;
    for (int p = 1; p <= depth; ++p) {
        long k = std::max<long>(1, static_cast<long>(
                                       std::ceil(static_cast<double>(horizon) *
                                                 (1.0 - std::ldexp(1.0, -p)))));
        LatticeElement sup = LatticeElement::zero(values.front().dim());
        for (long z = k; z <= horizon; ++z) sup = join(sup, values[static_cast<std::size_t>(z - 1)]);
        sig.push_back(sup);
    }
    double inf = sig.back().max_entry();
    if (inf > tol) {
        return Verdict::fail(horizon, "tail supremum " + std::to_string(inf) +
                                          " above tolerance " + std::to_string(tol));
    }
    // Exercise the generic checker with the certificate just built.
    OSequence sigma{[sig, tol](int p) {
                        LatticeElement s = sig[static_cast<std::size_t>(p - 1)];
                        return s + LatticeElement::constant(s.dim(), tol);
                    },
                    depth, 2.0 * tol};
    IndexedFamily fam{[&values](long z) { return values[static_cast<std::size_t>(z - 1)]; },
                      Tail::in};
    LatticeElement zero = LatticeElement::zero(values.front().dim());
    Verdict of = of_convergence_check(fam, zero, sigma, filter, horizon);
    if (!of.holds) return of;
    return Verdict::pass(horizon, "certified, tail supremum " + std::to_string(inf));
}

} // namespace

VitaliResult vitali_conclusion_check(const SiteFamily& family, const ModularSpec& rho,
                                     const SiteSpace& space, const FilterSpec& filter,
                                     long horizon, const VitaliParams& params) {
    VitaliResult res;
    const std::size_t fdim = family.at(1).front().dim();
    SiteFunction zero(space.n_sites(), LatticeElement::zero(fdim));
    RealOSequence eps = RealOSequence::dyadic(params.depth);
    RealOSequence sig = RealOSequence::dyadic(params.depth);

    res.mu_convergence = mu_convergence_check(family, zero, space, eps, sig, filter, horizon);

    res.equi_ac = Verdict::fail(horizon, "no sampled alpha works");
    double alpha_found = 0.0;
    for (double alpha = 1.0; alpha >= params.min_alpha; alpha *= 0.5) {
        Verdict v = equi_ac_check(family, rho, alpha, space,
                                  RealOSequence::dyadic(20), horizon);
        if (v.holds) {
            res.equi_ac = v;
            alpha_found = alpha;
            break;
        }
        if (alpha == 1.0) res.equi_ac = v;
    }

    res.hypotheses_met = res.mu_convergence.holds && res.equi_ac.holds;
    if (!res.hypotheses_met) {
        res.conclusion = Verdict::fail(horizon, "hypotheses not met");
        return res;
    }

    for (double alpha = alpha_found; alpha >= params.min_alpha; alpha *= 0.5) {
        std::vector<LatticeElement> values;
        values.reserve(static_cast<std::size_t>(horizon));
        for (long z = 1; z <= horizon; ++z) {
            values.push_back(rho.rho(scale_function(family.at(z), alpha)));
        }
        Verdict c = conclusion_via_tail_sups(values, horizon, filter, params.conclusion_tol);
        if (c.holds) {
            res.conclusion = c;
            res.alpha = alpha;
            return res;
        }
        res.conclusion = c;
    }
    return res;
}

VitaliResult cauchy_modular_check(const SiteFamily& family, const ModularSpec& rho,
                                  const SiteSpace& space, const FilterSpec& filter, long horizon,
                                  const VitaliParams& params) {
    VitaliResult res;
    const std::size_t fdim = family.at(1).front().dim();
    RealOSequence eps = RealOSequence::dyadic(params.depth);
    RealOSequence sig = RealOSequence::dyadic(params.depth);

    // mu-convergence of (f_h - f_q) to 0 along the product filter: for each
    // level, the pair set must contain a tail rectangle.
    res.mu_convergence = Verdict::pass(horizon);
    for (int p = 1; p <= params.depth && res.mu_convergence.holds; ++p) {
        double band = eps.at(p);
        double budget = sig.at(p);
        auto pair_ok = [&](long h, long q) {
            SiteFunction fh = family.at(h);
            SiteFunction fq = family.at(q);
            SiteFunction d(fh.size(), LatticeElement::zero(fdim));
            for (std::size_t t = 0; t < fh.size(); ++t) d[t] = fh[t] - fq[t];
            return space.measure_of(exceptional_set(d, SiteFunction(fh.size(),
                                                                    LatticeElement::zero(fdim)),
                                                    band)) <= budget;
        };
        Verdict v = product_filter_contains(filter, pair_ok, Tail::in, horizon);
        if (!v.holds) {
            res.mu_convergence =
                Verdict::fail(horizon, "pair level p=" + std::to_string(p) + ": " + v.witness);
        }
    }

    res.equi_ac = Verdict::fail(horizon, "no sampled alpha works");
    double alpha_found = 0.0;
    for (double alpha = 1.0; alpha >= params.min_alpha; alpha *= 0.5) {
        Verdict v = equi_ac_check(family, rho, alpha, space, RealOSequence::dyadic(20), horizon);
        if (v.holds) {
            res.equi_ac = v;
            alpha_found = alpha;
            break;
        }
        if (alpha == 1.0) res.equi_ac = v;
    }

    res.hypotheses_met = res.mu_convergence.holds && res.equi_ac.holds;
    if (!res.hypotheses_met) {
        res.conclusion = Verdict::fail(horizon, "hypotheses not met");
        return res;
    }

    // Conclusion: rho(alpha (f_h - f_q)) small on a tail rectangle.
    for (double alpha = alpha_found; alpha >= params.min_alpha; alpha *= 0.5) {
        double worst = 0.0;
        long k = std::max<long>(1, (horizon * 3) / 4);
        for (long hh = k; hh <= horizon; ++hh) {
            SiteFunction fh = family.at(hh);
            for (long q = k; q <= horizon; ++q) {
                SiteFunction fq = family.at(q);
                SiteFunction d(fh.size(), LatticeElement::zero(fdim));
                for (std::size_t t = 0; t < fh.size(); ++t) d[t] = alpha * (fh[t] - fq[t]);
                worst = std::max(worst, rho.rho(d).max_entry());
            }
        }
        if (worst <= params.conclusion_tol) {
            res.conclusion = Verdict::pass(horizon, "rectangle [" + std::to_string(k) +
                                                        ",h]^2, sup " + std::to_string(worst));
            res.alpha = alpha;
            return res;
        }
        res.conclusion = Verdict::fail(horizon, "pair tail supremum " + std::to_string(worst));
    }
    return res;
}

VitaliResult dominated_conclusion_check(const SiteFamily& family, const SiteFunction& dominating,
                                        const ModularSpec& rho, const SiteSpace& space,
                                        const FilterSpec& filter, long horizon,
                                        const VitaliParams& params) {
    VitaliResult res;
    const std::size_t fdim = family.at(1).front().dim();
    SiteFunction zero(space.n_sites(), LatticeElement::zero(fdim));
    res.mu_convergence = mu_convergence_check(family, zero, space,
                                              RealOSequence::dyadic(params.depth),
                                              RealOSequence::dyadic(params.depth), filter, horizon);

    // Domination |f_z| <= g on a tail, plus absolute continuity of g.
    res.equi_ac = Verdict::fail(horizon, "domination fails");
    long dominated_from = 0;
    for (long k = 1; k <= std::max<long>(1, horizon / 2) && dominated_from == 0; ++k) {
        bool ok = true;
        for (long z = k; z <= horizon && ok; ++z) {
            SiteFunction f = family.at(z);
            for (std::size_t t = 0; t < f.size() && ok; ++t) {
                if (!leq(abs(f[t]), abs(dominating[t]), 1e-12)) ok = false;
            }
        }
        if (ok) dominated_from = k;
    }
    double alpha_found = 0.0;
    if (dominated_from > 0) {
        for (double alpha = 1.0; alpha >= params.min_alpha; alpha *= 0.5) {
            Verdict v = absolutely_continuous_check(dominating, rho, alpha, space,
                                                    RealOSequence::dyadic(20));
            if (v.holds) {
                res.equi_ac = Verdict::pass(horizon, "dominated from z >= " +
                                                         std::to_string(dominated_from) +
                                                         "; g absolutely continuous");
                alpha_found = alpha;
                break;
            }
            if (alpha == 1.0) res.equi_ac = v;
        }
    }

    res.hypotheses_met = res.mu_convergence.holds && res.equi_ac.holds;
    if (!res.hypotheses_met) {
        res.conclusion = Verdict::fail(horizon, "hypotheses not met");
        return res;
    }

    for (double alpha = alpha_found; alpha >= params.min_alpha; alpha *= 0.5) {
        std::vector<LatticeElement> values;
        for (long z = 1; z <= horizon; ++z) {
            values.push_back(rho.rho(scale_function(family.at(z), alpha)));
        }
        Verdict c = conclusion_via_tail_sups(values, horizon, filter, params.conclusion_tol);
        if (c.holds) {
            res.conclusion = c;
            res.alpha = alpha;
            return res;
        }
        res.conclusion = c;
    }
    return res;
}

} // namespace vlp
