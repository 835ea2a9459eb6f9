#include "vlp/lpspace.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "vlp/rng.hpp"

namespace vlp {

SimpleFunction::SimpleFunction(std::vector<Part> parts, std::size_t dim, std::size_t n_sites)
    : parts_(std::move(parts)), dim_(dim), n_sites_(n_sites) {
    std::vector<bool> seen(n_sites_, false);
    for (const auto& part : parts_) {
        if (part.value.dim() != dim_) {
            throw dimension_error("SimpleFunction: part value dimension mismatch");
        }
        for (std::size_t s : part.sites) {
            if (s >= n_sites_) throw domain_error("SimpleFunction: part outside the ground set");
            if (seen[s]) throw domain_error("SimpleFunction: parts are not pairwise disjoint");
            seen[s] = true;
        }
    }
}

SimpleFunction SimpleFunction::from_sites(const SiteFunction& values, std::size_t n_sites) {
    if (values.size() != n_sites) {
        throw dimension_error("SimpleFunction::from_sites: one value per site required");
    }
    std::size_t dim = values.front().dim();
    std::map<std::vector<double>, SiteSet> groups;
    for (std::size_t t = 0; t < values.size(); ++t) {
        groups[values[t].values()].push_back(t);
    }
    std::vector<Part> parts;
    for (auto& [vals, sites] : groups) {
        bool all_zero = true;
        for (double v : vals) {
            if (v != 0.0) all_zero = false;
        }
        if (all_zero) continue;
        parts.push_back(Part{std::move(sites), LatticeElement(vals)});
    }
    return SimpleFunction(std::move(parts), dim, n_sites);
}

SimpleFunction SimpleFunction::indicator(const SiteSet& a, const LatticeElement& value,
                                         std::size_t n_sites) {
    return SimpleFunction({Part{a, value}}, value.dim(), n_sites);
}

SimpleFunction SimpleFunction::zero(std::size_t dim, std::size_t n_sites) {
    return SimpleFunction({}, dim, n_sites);
}

LatticeElement SimpleFunction::value_at(std::size_t site) const {
    for (const auto& part : parts_) {
        if (std::binary_search(part.sites.begin(), part.sites.end(), site)) return part.value;
    }
    return LatticeElement::zero(dim_);
}

SiteFunction SimpleFunction::to_site_function() const {
    SiteFunction out(n_sites_, LatticeElement::zero(dim_));
    for (const auto& part : parts_) {
        for (std::size_t s : part.sites) out[s] = part.value;
    }
    return out;
}

SimpleFunction SimpleFunction::scale(double c) const {
    std::vector<Part> parts;
    parts.reserve(parts_.size());
    for (const auto& part : parts_) parts.push_back(Part{part.sites, c * part.value});
    return SimpleFunction(std::move(parts), dim_, n_sites_);
}

namespace {

SimpleFunction zip_sites(const SimpleFunction& a, const SimpleFunction& b,
                         LatticeElement (*op)(const LatticeElement&, const LatticeElement&)) {
    if (a.n_sites() != b.n_sites() || a.dim() != b.dim()) {
        throw dimension_error("SimpleFunction: operand shapes differ");
    }
    SiteFunction av = a.to_site_function();
    SiteFunction bv = b.to_site_function();
    SiteFunction out;
    out.reserve(av.size());
    for (std::size_t t = 0; t < av.size(); ++t) out.push_back(op(av[t], bv[t]));
    return SimpleFunction::from_sites(out, a.n_sites());
}

} // namespace

SimpleFunction operator+(const SimpleFunction& a, const SimpleFunction& b) {
    return zip_sites(a, b, +[](const LatticeElement& x, const LatticeElement& y) { return x + y; });
}

SimpleFunction operator-(const SimpleFunction& a, const SimpleFunction& b) {
    return zip_sites(a, b, +[](const LatticeElement& x, const LatticeElement& y) { return x - y; });
}

SimpleFunction mul(const SimpleFunction& a, const SimpleFunction& b) {
    return zip_sites(a, b, +[](const LatticeElement& x, const LatticeElement& y) { return mul(x, y); });
}

SimpleFunction abs(const SimpleFunction& a) {
    std::vector<SimpleFunction::Part> parts;
    for (const auto& part : a.parts()) {
        parts.push_back(SimpleFunction::Part{part.sites, abs(part.value)});
    }
    return SimpleFunction(std::move(parts), a.dim(), a.n_sites());
}

SimpleFunction power(const SimpleFunction& a, int p) {
    std::vector<SimpleFunction::Part> parts;
    for (const auto& part : a.parts()) {
        parts.push_back(SimpleFunction::Part{part.sites, power(part.value, p)});
    }
    return SimpleFunction(std::move(parts), a.dim(), a.n_sites());
}

std::pair<SimpleFunction, SimpleFunction> SimpleFunction::common_refinement(
    const SimpleFunction& a, const SimpleFunction& b) {
    if (a.n_sites() != b.n_sites()) {
        throw dimension_error("common_refinement: ground sets differ");
    }
    // Partition sites by the pair of values.
    SiteFunction av = a.to_site_function();
    SiteFunction bv = b.to_site_function();
    std::map<std::pair<std::vector<double>, std::vector<double>>, SiteSet> groups;
    for (std::size_t t = 0; t < av.size(); ++t) {
        groups[{av[t].values(), bv[t].values()}].push_back(t);
    }
    std::vector<Part> pa, pb;
    for (auto& [key, sites] : groups) {
        pa.push_back(Part{sites, LatticeElement(key.first)});
        pb.push_back(Part{std::move(sites), LatticeElement(key.second)});
    }
    return {SimpleFunction(std::move(pa), a.dim(), a.n_sites()),
            SimpleFunction(std::move(pb), b.dim(), b.n_sites())};
}

LatticeElement integral_simple(const SimpleFunction& f, const SiteSet& a, const SiteSpace& space) {
    if (f.n_sites() != space.n_sites()) {
        throw dimension_error("integral_simple: ground set mismatch");
    }
    LatticeElement acc = LatticeElement::zero(f.dim());
    for (const auto& part : f.parts()) {
        acc += space.measure_of(site_set_intersection(part.sites, a)) * part.value;
    }
    return acc;
}

LatticeElement integral_simple(const SimpleFunction& f, const SiteSpace& space) {
    LatticeElement acc = LatticeElement::zero(f.dim());
    for (const auto& part : f.parts()) {
        acc += space.measure_of(part.sites) * part.value;
    }
    return acc;
}

LatticeElement iota(const SimpleFunction& f, const SiteSpace& space) {
    return integral_simple(abs(f), space);
}

namespace {

// The algebra family the zvezda supremum runs over: parts of the involved
// simple functions, their complements and pairwise unions, the whole set and
// the empty set.
std::vector<SiteSet> generated_sets(const std::vector<SimpleFunction>& seq, std::size_t n_sites,
                                    std::size_t max_sets) {
    std::vector<SiteSet> base;
    base.push_back(SiteSet{});
    base.push_back(all_sites(n_sites));
    for (const auto& f : seq) {
        for (const auto& part : f.parts()) {
            base.push_back(part.sites);
            if (base.size() >= max_sets) break;
        }
        if (base.size() >= max_sets) break;
    }
    std::vector<SiteSet> out = base;
    for (const auto& s : base) {
        if (out.size() >= max_sets) break;
        out.push_back(site_set_complement(s, n_sites));
    }
    for (std::size_t i = 2; i < base.size() && out.size() < max_sets; ++i) {
        for (std::size_t j = i + 1; j < base.size() && out.size() < max_sets; ++j) {
            out.push_back(site_set_union(base[i], base[j]));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Uniform-in-A Cauchy distance of the set-indexed integrals over the window
// [from, horizon].
double zvezda_tail_distance(const std::vector<std::vector<LatticeElement>>& integrals, long from) {
    // integrals[set][n]
    double worst = 0.0;
    for (const auto& per_set : integrals) {
        std::size_t dim = per_set.front().dim();
        for (std::size_t c = 0; c < dim; ++c) {
            double lo = std::numeric_limits<double>::infinity();
            double hi = -lo;
            for (std::size_t nidx = static_cast<std::size_t>(from - 1); nidx < per_set.size();
                 ++nidx) {
                lo = std::min(lo, per_set[nidx][c]);
                hi = std::max(hi, per_set[nidx][c]);
            }
            worst = std::max(worst, hi - lo);
        }
    }
    return worst;
}

} // namespace

Verdict defining_sequence_check(const DefiningSequence& cert, const SiteSpace& space,
                                const CertParams& params) {
    if (cert.horizon() < 2) throw domain_error("defining_sequence_check: horizon must be >= 2");
    const long horizon = cert.horizon();

    SiteFamily family{[&cert](long z) {
                          return cert.seq[static_cast<std::size_t>(z - 1)].to_site_function();
                      },
                      std::nullopt};

    Verdict mu = mu_convergence_check(family, cert.target, space,
                                      RealOSequence::dyadic(params.mu_depth),
                                      RealOSequence::dyadic(params.mu_depth),
                                      FilterSpec::cofinite(), horizon);
    if (!mu.holds) return Verdict::fail(horizon, "mu-convergence: " + mu.witness);

    ModularSpec rho = integral_modular(space, cert.seq.front().dim());
    EquiAcParams ac;
    ac.depth = params.ac_depth;
    ac.tol = params.ac_tol;
    Verdict eq = equi_ac_check(family, rho, cert.alpha, space,
                               RealOSequence::dyadic(params.ac_depth), horizon, ac);
    if (!eq.holds) return Verdict::fail(horizon, "equi-absolute continuity: " + eq.witness);

    // Set-indexed integrals must converge uniformly over the algebra.
    auto sets = generated_sets(cert.seq, space.n_sites(), params.max_sets);
    std::vector<std::vector<LatticeElement>> integrals;
    integrals.reserve(sets.size());
    for (const auto& a : sets) {
        std::vector<LatticeElement> per_n;
        per_n.reserve(static_cast<std::size_t>(horizon));
        for (const auto& fn : cert.seq) per_n.push_back(integral_simple(fn, a, space));
        integrals.push_back(std::move(per_n));
    }
    long tail_from = std::max<long>(1, horizon - std::max<long>(1, horizon / 4));
    long mid_from = std::max<long>(1, horizon / 2);
    double d_last = zvezda_tail_distance(integrals, tail_from);
    double d_mid = zvezda_tail_distance(integrals, mid_from);
    // Uniformly Cauchy at desk scale: either the tail gap is below the
    // tolerance outright, or it decays geometrically from the half-window.
    if (!(d_last <= params.zvezda_tol || d_last <= 0.75 * d_mid)) {
        return Verdict::fail(horizon, "set-indexed integrals not uniformly Cauchy: tail gap " +
                                          std::to_string(d_last) + " over " +
                                          std::to_string(sets.size()) + " sets");
    }
    return Verdict::pass(horizon, "defining sequence certified (uniform tail gap " +
                                      std::to_string(d_last) + ")");
}

Verdict lp_membership(const SiteFunction& f, int p, const DefiningSequence& cert,
                      const SiteSpace& space, const CertParams& params) {
    if (p < 1) throw domain_error("lp_membership: p must be >= 1");
    for (std::size_t t = 0; t < f.size(); ++t) {
        if ((f[t] - cert.target[t]).max_abs() > 0.0) {
            return Verdict::fail(cert.horizon(), "certificate target differs from f at site " +
                                                     std::to_string(t));
        }
    }
    Verdict base = defining_sequence_check(cert, space, params);
    if (!base.holds) return Verdict::fail(cert.horizon(), "f: " + base.witness);

    DefiningSequence powered;
    powered.p = 1;
    powered.alpha = cert.alpha;
    powered.seq.reserve(cert.seq.size());
    for (const auto& fn : cert.seq) powered.seq.push_back(power(fn, p));
    powered.target.reserve(f.size());
    for (const auto& v : f) powered.target.push_back(power(v, p));
    Verdict pow = defining_sequence_check(powered, space, params);
    if (!pow.holds) {
        return Verdict::fail(cert.horizon(), "f^" + std::to_string(p) + ": " + pow.witness);
    }
    return Verdict::pass(cert.horizon(), "common basic sequence defines f and f^" +
                                             std::to_string(p));
}

DefiningSequence combine_certificates(const DefiningSequence& cert_f,
                                      const DefiningSequence& cert_g, int p,
                                      const SiteSpace& space) {
    if (cert_f.horizon() != cert_g.horizon()) {
        throw domain_error("combine_certificates: horizon mismatch");
    }
    DefiningSequence out;
    out.p = p;
    out.alpha = std::min(cert_f.alpha, cert_g.alpha);
    out.seq.reserve(cert_f.seq.size());
    for (std::size_t n = 0; n < cert_f.seq.size(); ++n) {
        out.seq.push_back(cert_f.seq[n] + cert_g.seq[n]);
    }
    out.target.reserve(cert_f.target.size());
    for (std::size_t t = 0; t < cert_f.target.size(); ++t) {
        out.target.push_back(cert_f.target[t] + cert_g.target[t]);
    }

    // The power bound used by the sum proof, verified on the sampled sites.
    double twop = std::ldexp(1.0, p);
    for (std::size_t n = 0; n < out.seq.size(); n += std::max<std::size_t>(1, out.seq.size() / 8)) {
        SiteFunction fs = cert_f.seq[n].to_site_function();
        SiteFunction gs = cert_g.seq[n].to_site_function();
        for (std::size_t t = 0; t < fs.size(); ++t) {
            LatticeElement lhs = power(abs(fs[t] + gs[t]), p);
            LatticeElement rhs = twop * (power(abs(fs[t]), p) + power(abs(gs[t]), p));
            if (!leq(lhs, rhs, 1e-9 * (1.0 + rhs.max_abs()))) {
                throw domain_error("combine_certificates: power bound violated at site " +
                                   std::to_string(t));
            }
        }
        (void)space;
    }
    return out;
}

std::vector<CoverTriple> sigma_finite_cover(const DefiningSequence& cert, const SiteSpace& space,
                                            int k_max) {
    std::vector<CoverTriple> out;
    int level = 0;
    for (int k = 1; k <= k_max; ++k) {
        level = level * 2 + 1; // strictly increasing 1, 3, 7, ...
        SiteSet h;
        for (std::size_t t = 0; t < cert.target.size(); ++t) {
            if (cert.target[t].max_abs() > static_cast<double>(level)) h.push_back(t);
        }
        double beta = space.measure_of(h);
        out.push_back(CoverTriple{level, std::move(h), beta});
    }
    return out;
}

double lp_norm(const SiteFunction& f, int p, const SiteSpace& space, const OrderUnit& e) {
    LatticeElement acc = LatticeElement::zero(f.front().dim());
    for (std::size_t t = 0; t < f.size(); ++t) {
        acc += space.site_weight(t) * power(abs(f[t]), p);
    }
    return std::pow(m_norm(acc, e), 1.0 / p);
}

double lp_norm(const SimpleFunction& f, int p, const SiteSpace& space, const OrderUnit& e) {
    return std::pow(m_norm(integral_simple(power(abs(f), p), space), e), 1.0 / p);
}

Verdict minkowski_check(const SimpleFunction& f, const SimpleFunction& g, int p,
                        const SiteSpace& space, const OrderUnit& e, double tol) {
    double nf = lp_norm(f, p, space, e);
    double ng = lp_norm(g, p, space, e);
    double nfg = lp_norm(f + g, p, space, e);
    if (nfg > nf + ng + tol) {
        return Verdict::fail(1, "||f+g||_p = " + std::to_string(nfg) + " > " +
                                    std::to_string(nf + ng));
    }
    // Pointwise support bound behind the proof, on sampled alpha.
    auto [fr, gr] = SimpleFunction::common_refinement(f, g);
    for (double a : {0.25, 0.5, 0.75}) {
        double ca = std::pow(a, 1.0 - p);
        double cb = std::pow(1.0 - a, 1.0 - p);
        for (std::size_t i = 0; i < fr.parts().size(); ++i) {
            LatticeElement lhs = power(abs(fr.parts()[i].value) + abs(gr.parts()[i].value), p);
            LatticeElement rhs = ca * power(abs(fr.parts()[i].value), p) +
                                 cb * power(abs(gr.parts()[i].value), p);
            if (!leq(lhs, rhs, tol * (1.0 + rhs.max_abs()))) {
                return Verdict::fail(1, "pointwise bound fails at alpha = " + std::to_string(a));
            }
        }
    }
    return Verdict::pass(1, "Minkowski holds: " + std::to_string(nfg) + " <= " +
                                std::to_string(nf + ng));
}

Verdict essentially_null_check(const SiteFunction& f, const SiteSpace& space, int eps_depth) {
    for (int k = 1; k <= eps_depth; ++k) {
        double eps = std::ldexp(1.0, -k);
        SiteSet exceed;
        for (std::size_t t = 0; t < f.size(); ++t) {
            if (abs(f[t]).min_entry() >= eps) exceed.push_back(t);
        }
        if (space.measure_of(exceed) > 0.0) {
            return Verdict::fail(eps_depth, "set where |f| >= " + std::to_string(eps) +
                                                " e has measure " +
                                                std::to_string(space.measure_of(exceed)) +
                                                " (first site " + std::to_string(exceed.front()) +
                                                ")");
        }
    }
    return Verdict::pass(eps_depth, "essentially mu-null");
}

SiteFunction canonical_representative(const SiteFunction& f, const SiteSpace& space) {
    SiteFunction out = f;
    for (std::size_t t = 0; t < f.size(); ++t) {
        if (space.site_weight(t) == 0.0) out[t] = LatticeElement::zero(f[t].dim());
    }
    return out;
}

std::string NoncompletenessReport::summary() const {
    std::ostringstream os;
    os << "L^" << p << " Cauchy table over prefixes up to n=" << n_max
       << ": cauchy_exact=" << (cauchy_exact ? "yes" : "no")
       << " prefix_exact=" << (prefix_exact ? "yes" : "no")
       << " outer measure never attains 1: " << (no_attainment ? "yes" : "no") << " ("
       << candidates.size() << " candidates)";
    return os.str();
}

NoncompletenessReport noncompleteness_demo(int p, int n_max) {
    if (p < 1) throw domain_error("noncompleteness_demo: p must be >= 1");
    if (n_max < 2) throw domain_error("noncompleteness_demo: n_max must be >= 2");
    NoncompletenessReport rep;
    rep.p = p;
    rep.n_max = n_max;

    auto bound = static_cast<std::uint32_t>(n_max);
    auto space = SiteSpace::dyadic(bound);
    auto e1 = OrderUnit::ones(1);

    auto prefix_indicator = [&](int n) {
        SiteSet sites;
        for (int i = 0; i < n; ++i) sites.push_back(static_cast<std::size_t>(i));
        return SimpleFunction::indicator(sites, LatticeElement::ones(1), space.n_sites());
    };

    rep.cauchy_exact = true;
    for (int n = 1; n <= n_max; ++n) {
        for (int m = n + 1; m <= n_max; ++m) {
            double mu_sd = symmetric_difference_measure(prefix_set(static_cast<std::uint32_t>(n)),
                                                        prefix_set(static_cast<std::uint32_t>(m)));
            // The integral route: int |1_An - 1_Am|^p dmu, then the M-norm.
            SimpleFunction diff = prefix_indicator(n) - prefix_indicator(m);
            double cauchy = m_norm(integral_simple(power(abs(diff), p), space), e1);
            double expected = std::ldexp(1.0, -n) - std::ldexp(1.0, -m);
            if (cauchy != expected || mu_sd != expected) rep.cauchy_exact = false;
            rep.rows.push_back(NoncompletenessRow{n, m, mu_sd, cauchy});
        }
    }

    rep.prefix_exact = true;
    for (int n = 1; n <= n_max; ++n) {
        double mu_n = dyadic_measure(prefix_set(static_cast<std::uint32_t>(n)));
        if (mu_n != 1.0 - std::ldexp(1.0, -n)) rep.prefix_exact = false;
        rep.mu_prefix.push_back(mu_n);
    }

    // Candidate limit sets: prefixes, arithmetic progressions, cofinite sets
    // and seeded random finite or periodic sets.
    auto add_candidate = [&rep](const std::string& name, const SubsetSpec& s) {
        auto g = outer_measure_gap(s);
        double bound;
        bool exact;
        if (g.finite_side) {
            std::uint32_t max_elem = 0;
            for (std::uint32_t i = 1; i <= s.bound; ++i) {
                if (s.contains(i)) max_elem = i;
            }
            bound = max_elem == 0 ? 1.0 : std::ldexp(1.0, -static_cast<int>(max_elem));
            exact = false; // gap >= bound
        } else {
            bound = dyadic_content(s);
            exact = true; // gap == bound
        }
        rep.candidates.push_back(CandidateGap{name, g.mu_star, g.gap, g.finite_side, bound, exact});
    };
    for (int n : {1, 2, 5, 10, std::min(n_max, 40)}) {
        std::vector<std::uint32_t> elems;
        for (int i = 1; i <= n; ++i) elems.push_back(static_cast<std::uint32_t>(i));
        add_candidate("prefix A_" + std::to_string(n), SubsetSpec::finite(elems));
    }
    add_candidate("evens", SubsetSpec::periodic_tail({}, 0, 2, {0}));
    add_candidate("odds", SubsetSpec::periodic_tail({}, 0, 2, {1}));
    add_candidate("multiples of 3", SubsetSpec::periodic_tail({}, 0, 3, {0}));
    add_candidate("cofinite N\\{1,7}", SubsetSpec::cofinite_complement({1, 7}));
    Rng rng(20160316);
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<std::uint32_t> elems;
        for (std::uint32_t i = 1; i <= 40; ++i) {
            if (rng.uniform() < 0.3) elems.push_back(i);
        }
        if (elems.empty()) elems.push_back(1);
        add_candidate("random finite #" + std::to_string(trial), SubsetSpec::finite(elems));
        auto period = static_cast<std::uint32_t>(2 + rng.below(4));
        std::vector<std::uint32_t> residues{static_cast<std::uint32_t>(rng.below(period))};
        add_candidate("random periodic #" + std::to_string(trial),
                      SubsetSpec::periodic_tail({}, 0, period, residues));
    }
    rep.no_attainment = true;
    for (const auto& c : rep.candidates) {
        if (!(c.gap > 0.0)) rep.no_attainment = false;
    }
    return rep;
}

} // namespace vlp
