#include "vlp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "vlp/convergence.hpp"
#include "vlp/inequalities.hpp"

namespace vlp {

bool VerifyReport::all_pass() const {
    for (const auto& line : lines) {
        if (!line.pass) return false;
    }
    return true;
}

std::string VerifyReport::text() const {
    std::string out;
    for (const auto& line : lines) {
        out += line.pass ? "PASS " : "FAIL ";
        out += line.name;
        if (!line.detail.empty()) {
            out += ": ";
            out += line.detail;
        }
        out += '\n';
    }
    return out;
}

GridFunction random_convex_gridfn(Rng& rng, double lo, double hi, std::size_t n_nodes,
                                  std::size_t dim) {
    while (true) {
        std::vector<double> c4(dim), c2(dim), c1(dim), c0(dim);
        for (std::size_t k = 0; k < dim; ++k) {
            c4[k] = rng.uniform(0.0, 1.0);
            c2[k] = rng.uniform(-1.0, 1.0);
            c1[k] = rng.uniform(-1.0, 1.0);
            c0[k] = rng.uniform(-1.0, 1.0);
        }
        auto f = GridFunction::sample_lattice(lo, hi, n_nodes, [&](double t) {
            std::vector<double> v(dim);
            for (std::size_t k = 0; k < dim; ++k) {
                v[k] = c4[k] * t * t * t * t + c2[k] * t * t + c1[k] * t + c0[k];
            }
            return LatticeElement(std::move(v));
        });
        if (midpoint_convexity_check(f).holds) return f;
    }
}

SimpleFunction random_simple_function(Rng& rng, const SiteSpace& space, std::size_t dim,
                                      int max_parts, double lo, double hi) {
    int n_parts = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_parts)));
    std::vector<LatticeElement> pool;
    for (int k = 0; k < n_parts; ++k) {
        std::vector<double> v(dim);
        for (auto& x : v) x = rng.uniform(lo, hi);
        pool.push_back(LatticeElement(std::move(v)));
    }
    SiteFunction values;
    values.reserve(space.n_sites());
    for (std::size_t t = 0; t < space.n_sites(); ++t) {
        values.push_back(pool[rng.below(pool.size())]);
    }
    return SimpleFunction::from_sites(values, space.n_sites());
}

std::string artifact_path(const RunConfig& cfg, const std::string& base) {
    std::filesystem::create_directories(cfg.out_dir);
    return cfg.out_dir + "/" + base + (cfg.format == "json" ? ".json" : ".csv");
}

namespace {

void check(VerifyReport& rep, const std::string& name, bool pass, const std::string& detail) {
    rep.lines.push_back(CheckLine{name, pass, detail});
}

GridProcess single_path(const GridProcess& f, std::size_t j) {
    GridProcess out;
    out.grid = f.grid;
    out.values.reserve(f.values.size());
    for (const auto& v : f.values) {
        out.values.push_back(LatticeElement::constant(1, v[j]));
    }
    return out;
}

GridProcess squared(const GridProcess& f) {
    GridProcess out;
    out.grid = f.grid;
    out.values.reserve(f.values.size());
    for (const auto& v : f.values) out.values.push_back(mul(v, v));
    return out;
}

GridProcess deterministic_process(double t_end, int n, double (*fn)(double)) {
    GridProcess g;
    g.grid = TimeGrid(t_end, n);
    g.values.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        g.values.push_back(LatticeElement::constant(1, fn(g.grid.node(i))));
    }
    return g;
}

double det_const(double) { return 2.5; }
double det_lin(double t) { return t; }
double det_quad(double t) { return t * t; }
double det_c1_ramp(double t) { return t <= 1.5 ? 0.0 : (t - 1.5) * (t - 1.5); }

// ---------------------------------------------------------------- suites

void run_inequalities(VerifyReport& rep, const RunConfig& cfg) {
    Rng rng(cfg.seed);
    const std::size_t nodes = 257;
    GridMeasure leb(0.0, 1.0, 256, 1.0);

    auto space = SiteSpace::grid(GridMeasure(0.0, 1.0, 64));

    int mink_fail = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto e2 = OrderUnit::ones(2);
        auto f = random_simple_function(rng, space, 2, 4, -2.0, 2.0);
        auto g = random_simple_function(rng, space, 2, 4, -2.0, 2.0);
        for (int p : cfg.p_list) {
            if (!minkowski_check(f, g, p, space, e2, 1e-9).holds) ++mink_fail;
        }
    }
    check(rep, "minkowski inequality on 100 random simple pairs", mink_fail == 0,
          mink_fail == 0 ? "p in {1,2,3,4}, tolerance 1e-9"
                         : std::to_string(mink_fail) + " failures");

    int jensen_fail = 0;
    ConvexMap maps[2] = {ConvexMap{[](double x) { return x * x; }},
                         ConvexMap{[](double x) { return std::fabs(x); }}};
    for (int trial = 0; trial < 100; ++trial) {
        auto f = random_convex_gridfn(rng, 0.0, 1.0, nodes, 2);
        if (!jensen_check(f, maps[trial % 2], leb, 1e-9).holds) ++jensen_fail;
    }
    check(rep, "jensen inequality on 100 corpus functions", jensen_fail == 0,
          jensen_fail == 0 ? "tolerance 1e-9" : std::to_string(jensen_fail) + " failures");

    int hh_fail = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto f = random_convex_gridfn(rng, 0.0, 1.0, nodes, 3);
        if (!hermite_hadamard_check(f, leb, 1e-9).holds) ++hh_fail;
    }
    check(rep, "hermite-hadamard inequality on 100 corpus functions", hh_fail == 0,
          hh_fail == 0 ? "tolerance 1e-9" : std::to_string(hh_fail) + " failures");

    int fejer_fail = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto f = random_convex_gridfn(rng, 0.0, 1.0, nodes, 2);
        double peak = rng.uniform(0.5, 2.0);
        auto w = GridFunction::sample(0.0, 1.0, nodes, [peak](double t) {
            double s = 1.0 - std::fabs(2.0 * t - 1.0);
            return peak * s * s;
        });
        if (!fejer_check(f, w, leb, 1e-9).holds) ++fejer_fail;
    }
    check(rep, "fejer inequality on 100 corpus functions", fejer_fail == 0,
          fejer_fail == 0 ? "tolerance 1e-9" : std::to_string(fejer_fail) + " failures");

    int schwartz_fail = 0;
    double worst_gap_diff = 0.0;
    std::size_t dims[3] = {1, 4, 16};
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t dim = dims[trial % 3];
        auto e = OrderUnit::ones(dim);
        auto f = random_simple_function(rng, space, dim, 5, 0.0, 2.0);
        auto g = random_simple_function(rng, space, dim, 5, 0.0, 2.0);
        auto res = schwartz_check(f, g, space, e, 1e-9);
        if (!res.verdict.holds || res.discriminant.min_entry() < -1e-12) ++schwartz_fail;
        worst_gap_diff = std::max(worst_gap_diff, (res.gap - res.discriminant).max_abs());
    }
    check(rep, "schwartz inequality and discriminant on 100 random pairs", schwartz_fail == 0,
          "largest |gap - discriminant| = " + format_double(worst_gap_diff));
}

void run_lp(VerifyReport& rep, const RunConfig& cfg, bool inject_tamper) {
    // The non-completeness tabulation, also emitted as an artifact.
    auto nc = noncompleteness_demo(cfg.p_list.front(), 40);
    write_noncompleteness(cfg, nc);
    check(rep, "noncompleteness: Cauchy table exact", nc.cauchy_exact,
          std::to_string(nc.rows.size()) + " pairs up to n=40");
    check(rep, "noncompleteness: mu(A_n) = 1 - 2^-n exact", nc.prefix_exact, "n <= 40");
    check(rep, "noncompleteness: outer measure never attains 1", nc.no_attainment,
          std::to_string(nc.candidates.size()) + " candidate limit sets, " + nc.summary());

    // Certificate checks on a bounded function; the tamper switch corrupts
    // the target to prove the checker rejects.
    auto space = SiteSpace::grid(GridMeasure(0.0, 1.0, 32));
    SiteFunction f;
    for (std::size_t t = 0; t < space.n_sites(); ++t) {
        f.push_back(LatticeElement(std::vector<double>{
            1.0 + 0.5 * std::cos(0.3 * static_cast<double>(t)), 0.5}));
    }
    DefiningSequence cert;
    cert.target = f;
    for (long n = 1; n <= 10; ++n) {
        SiteFunction clamped;
        for (const auto& v : f) {
            std::vector<double> w(v.dim());
            for (std::size_t c = 0; c < v.dim(); ++c) {
                w[c] = std::clamp(v[c], -static_cast<double>(n), static_cast<double>(n));
            }
            clamped.push_back(LatticeElement(std::move(w)));
        }
        cert.seq.push_back(SimpleFunction::from_sites(clamped, space.n_sites()));
    }
    if (inject_tamper) {
        cert.target[3] = cert.target[3] + LatticeElement::constant(2, 50.0);
    }
    bool member_ok = true;
    for (int p : cfg.p_list) {
        if (!lp_membership(cert.target, p, cert, space).holds) member_ok = false;
    }
    check(rep, "lp membership of a bounded function", member_ok,
          inject_tamper ? "tampered certificate injected" : "p in {1,2,3,4}");

    // Certificates combine and still pass.
    auto combined = combine_certificates(cert, cert, 2, space);
    check(rep, "combined certificate passes the defining-sequence check",
          defining_sequence_check(combined, space).holds, "");

    // The sigma-finite cover triples satisfy both inclusions.
    bool cover_ok = true;
    for (const auto& triple : sigma_finite_cover(cert, space, 5)) {
        if (space.measure_of(triple.exceedance) > triple.beta) cover_ok = false;
        for (std::size_t t = 0; t < cert.target.size(); ++t) {
            bool exceeds = cert.target[t].max_abs() > triple.level_n;
            bool inside = std::binary_search(triple.exceedance.begin(), triple.exceedance.end(), t);
            if (exceeds && !inside) cover_ok = false;
        }
    }
    check(rep, "sigma-finite cover inclusions", cover_ok, "5 levels");
}

void run_convergence(VerifyReport& rep, const RunConfig& cfg) {
    Rng rng(cfg.seed);
    const long horizon = 256;
    OSequence sigma{[](int p) { return LatticeElement::constant(1, std::ldexp(1.0, -p)); }, 8,
                    std::ldexp(1.0, -8)};
    auto filter = FilterSpec::cofinite();

    int disagreements = 0;
    for (int trial = 0; trial < 50; ++trial) {
        int kind = static_cast<int>(rng.below(4));
        double c = rng.uniform(0.25, 2.0);
        double rate = rng.uniform(0.5, 0.9);
        std::function<double(long)> value;
        Tail tail;
        switch (kind) {
            case 0:
                value = [c, rate](long z) { return c * std::pow(rate, static_cast<double>(z)); };
                tail = Tail::in;
                break;
            case 1:
                value = [c](long z) { return z % 2 == 0 ? c : -c; };
                tail = Tail::out;
                break;
            case 2:
                value = [c](long) { return c; };
                tail = Tail::out;
                break;
            default:
                value = [c, rate](long z) {
                    return z % 16 == 0 ? c : c * std::pow(rate, static_cast<double>(z));
                };
                tail = Tail::out;
                break;
        }
        IndexedFamily fam{[value](long z) { return LatticeElement::constant(1, value(z)); }, tail};
        bool verdict =
            of_convergence_check(fam, LatticeElement::zero(1), sigma, filter, horizon).holds;
        bool enumerated = true;
        for (int p = 1; p <= sigma.depth && enumerated; ++p) {
            double band = sigma.at(p)[0];
            long last_out = 0;
            for (long z = 1; z <= 16 * horizon; ++z) {
                if (std::fabs(value(z)) > band) last_out = z;
            }
            enumerated = last_out < 8 * horizon;
        }
        if (verdict != enumerated) ++disagreements;
    }
    check(rep, "of-convergence agrees with direct enumeration on 50 random families",
          disagreements == 0,
          disagreements == 0 ? "cofinite filter" : std::to_string(disagreements) + " disagree");

    // Vitali corpus: hypothesis-passing instances confirm the conclusion.
    auto dyadic = SiteSpace::dyadic(24);
    auto iota_d = integral_modular(dyadic, 1);
    std::vector<std::pair<std::string, SiteFamily>> corpus;
    corpus.emplace_back("unit spikes on shrinking dyadic sets",
                        SiteFamily{[&dyadic](long z) {
                                       SiteFunction f(dyadic.n_sites(), LatticeElement::zero(1));
                                       f[static_cast<std::size_t>(z - 1)] = LatticeElement::ones(1);
                                       return f;
                                   },
                                   Tail::in});
    corpus.emplace_back("geometrically vanishing plateaus",
                        SiteFamily{[&dyadic](long z) {
                                       return SiteFunction(
                                           dyadic.n_sites(),
                                           LatticeElement::constant(
                                               1, std::ldexp(1.0, -static_cast<int>(z))));
                                   },
                                   Tail::in});
    corpus.emplace_back("constant zero",
                        SiteFamily{[&dyadic](long) {
                                       return SiteFunction(dyadic.n_sites(),
                                                           LatticeElement::zero(1));
                                   },
                                   Tail::in});
    bool vitali_ok = true;
    std::string vitali_detail;
    for (auto& [name, fam] : corpus) {
        auto res = vitali_conclusion_check(fam, iota_d, dyadic, filter, 20);
        if (!res.hypotheses_met || !res.conclusion.holds) {
            vitali_ok = false;
            vitali_detail = name + ": " + res.conclusion.witness;
        }
    }
    check(rep, "vitali conclusion on the hypothesis-passing corpus", vitali_ok, vitali_detail);

    SiteFamily blowup{[&dyadic](long z) {
                          SiteFunction f(dyadic.n_sites(), LatticeElement::zero(1));
                          f[static_cast<std::size_t>(z - 1)] =
                              LatticeElement::constant(1, std::ldexp(1.0, static_cast<int>(z)));
                          return f;
                      },
                      Tail::out};
    auto counterexample = vitali_conclusion_check(blowup, iota_d, dyadic, filter, 20);
    check(rep, "vitali flags the non-equi-absolutely-continuous counterexample",
          !counterexample.hypotheses_met &&
              counterexample.conclusion.witness == "hypotheses not met",
          counterexample.equi_ac.witness);

    // Filter laws on sampled members.
    SubsetWindow s1{[](long z) { return z >= 5; }, Tail::in};
    SubsetWindow s2{[](long z) { return z % 2 == 0 || z >= 100; }, Tail::in};
    SubsetWindow sup_set{[](long z) { return z >= 3; }, Tail::in};
    SubsetWindow inter{[](long z) { return (z >= 5) && (z % 2 == 0 || z >= 100); }, Tail::in};
    bool laws = filter_contains(filter, s1, 512).holds && filter_contains(filter, s2, 512).holds &&
                filter_contains(filter, sup_set, 512).holds &&
                filter_contains(filter, inter, 512).holds;
    check(rep, "filter closure under supersets and intersections", laws, "sampled members");
}

void run_stochastic(VerifyReport& rep, const RunConfig& cfg) {
    // Closed-form oracles for the moment operator.
    auto fc = deterministic_process(1.0, 4096, det_const);
    auto fl = deterministic_process(1.0, 4096, det_lin);
    auto fq = deterministic_process(1.0, 4096, det_quad);
    double worst_const = 0.0, worst_rel = 0.0;
    for (double x : {1.0, 2.0, 5.0, 10.0, 50.0, 200.0}) {
        for (double s : {0.3, 0.7, 1.0}) {
            worst_const = std::max(worst_const, std::fabs(phi(fc, x, s)[0] - 2.5));
            double el = std::fabs(phi(fl, x, s)[0] - x * s / (x + 1.0)) / (x * s / (x + 1.0));
            double eq = std::fabs(phi(fq, x, s)[0] - x * s * s / (x + 2.0)) /
                        (x * s * s / (x + 2.0));
            worst_rel = std::max(worst_rel, std::max(el, eq));
        }
    }
    check(rep, "moment operator closed forms", worst_const <= 1e-12 && worst_rel <= 1e-6,
          "const err " + format_double(worst_const) + ", poly rel err " + format_double(worst_rel));

    // Uniform convergence: exact table for f = t and strict decrease on the
    // fixed-seed squared bridge.
    auto table = uniform_convergence_scan(fl, {5.0, 10.0, 20.0, 50.0}, 1, 4096, 8);
    double expect[4] = {1.0 / 6, 1.0 / 11, 1.0 / 21, 1.0 / 51};
    double table_err = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        table_err = std::max(table_err, std::fabs(table[i].sup_distance - expect[i]));
    }
    auto ens1 = sample_bm(TimeGrid(cfg.t_upper, 4096), 1, cfg.seed);
    auto fsq = squared(bridge(ens1, cfg.a, cfg.t_upper).f);
    auto scan = uniform_convergence_scan(fsq, {5.0, 10.0, 20.0, 50.0}, 1, 4096, 4);
    bool strict = true;
    for (std::size_t i = 1; i < scan.size(); ++i) {
        if (!(scan[i].sup_distance < scan[i - 1].sup_distance)) strict = false;
    }
    check(rep, "uniform convergence of Phi(x, .) in x", table_err <= 1e-9 && strict,
          "f=t table err " + format_double(table_err) + "; bridge^2 scan " +
              (strict ? "strictly decreasing" : "NOT decreasing"));

    // ODE residuals.
    std::vector<double> ss = {0.3, 0.5, 0.8};
    double ode_closed = std::max(max_m_norm(ode_residual(fc, 10.0, ss, 1e-3)),
                                 max_m_norm(ode_residual(fl, 10.0, ss, 1e-3)));
    std::vector<double> nodes;
    for (int i = 2600; i <= 3800; i += 100) nodes.push_back(fsq.grid.node(i));
    double dt = fsq.grid.dt();
    bool ratios_ok = true;
    double prev = -1.0;
    std::string ratio_detail = "ratios";
    for (int k = 0; k < 4; ++k) {
        double r = max_m_norm(ode_residual(fsq, 10.0, nodes, dt / (1 << k)));
        if (prev > 0.0) {
            double ratio = prev / r;
            ratio_detail += " " + format_double(ratio);
            if (ratio < 1.5 || ratio > 2.5) ratios_ok = false;
        }
        prev = r;
    }
    check(rep, "ODE residual: zero for closed forms, first-order for the bridge",
          ode_closed <= 1e-8 && ratios_ok,
          "closed-form residual " + format_double(ode_closed) + "; " + ratio_detail);

    // Integration-by-parts identity.
    auto det = deterministic_process(cfg.t_upper, 1 << 14, det_c1_ramp);
    double s_eval = 2.5;
    double det_scale = std::fabs((4.0 / s_eval) *
                                 (det.at(s_eval)[0] - phi(det, 3.0, s_eval)[0]));
    double det_rel = phipsi_residual(det, 4.0, s_eval).max_abs() / det_scale;
    auto master = sample_bm(TimeGrid(cfg.t_upper, 1 << 14), 1, cfg.seed);
    bool mono = true;
    double prev_r = std::numeric_limits<double>::infinity();
    for (int k = 10; k <= 14; ++k) {
        auto ens = coarsen(master, 1 << (14 - k));
        double r = phipsi_residual(bridge(ens, cfg.a, cfg.t_upper).f, 4.0, s_eval).max_abs();
        if (r >= prev_r) mono = false;
        prev_r = r;
    }
    check(rep, "Phi-Psi identity residual", det_rel < 1e-3 && mono,
          "deterministic rel " + format_double(det_rel) + " at n=2^14; bridge residual " +
              (mono ? "decreasing over 2^10..2^14" : "NOT decreasing"));

    // Stochastic equation residual under refinement.
    bool det_dec = true, bridge_dec = true;
    prev_r = std::numeric_limits<double>::infinity();
    for (int k = 10; k <= 14; ++k) {
        auto f = deterministic_process(cfg.t_upper, 1 << k, det_c1_ramp);
        int n = 1 << k;
        double r = max_m_norm(sde_residual(f, 4.0, n * 2 / 3, n * 19 / 20));
        if (r >= prev_r) det_dec = false;
        prev_r = r;
    }
    prev_r = std::numeric_limits<double>::infinity();
    for (int k = 10; k <= 14; ++k) {
        auto ens = coarsen(master, 1 << (14 - k));
        auto br = bridge(ens, cfg.a, cfg.t_upper);
        int n = 1 << k;
        double r = max_m_norm(sde_residual(br.f, 4.0, n * 2 / 3, n * 19 / 20));
        if (r >= prev_r) bridge_dec = false;
        prev_r = r;
    }
    check(rep, "SDE residual decreases under refinement", det_dec && bridge_dec,
          std::string("deterministic ") + (det_dec ? "ok" : "fails") + ", bridge " +
              (bridge_dec ? "ok" : "fails"));

    // Signal recovery.
    auto ens64 = sample_bm(TimeGrid(cfg.t_upper, cfg.n_steps), 64, cfg.seed);
    auto sig = bump_signal(cfg.a, cfg.t_upper);
    bool rec_mono = true;
    std::string rec_detail = "sup errors";
    prev_r = std::numeric_limits<double>::infinity();
    for (double eps : cfg.eps_list) {
        auto rec = signal_recover(sig, eps, ens64);
        rec_detail += " " + format_double(rec.sup_error);
        if (rec.sup_error > prev_r) rec_mono = false;
        prev_r = rec.sup_error;
    }
    check(rep, "signal recovery error is non-increasing in eps", rec_mono, rec_detail);
}

} // namespace

VerifyReport verify_suite(const RunConfig& cfg, const std::string& suite, bool inject_tamper) {
    cfg.validate();
    VerifyReport rep;
    bool all = suite == "all";
    if (!all && suite != "inequalities" && suite != "lp" && suite != "convergence" &&
        suite != "stochastic") {
        throw domain_error("verify_suite: unknown suite '" + suite + "'");
    }
    if (all || suite == "inequalities") run_inequalities(rep, cfg);
    if (all || suite == "lp") run_lp(rep, cfg, inject_tamper);
    if (all || suite == "convergence") run_convergence(rep, cfg);
    if (all || suite == "stochastic") run_stochastic(rep, cfg);
    return rep;
}

void write_figures(const RunConfig& cfg, const GridProcess* override_f) {
    cfg.validate();
    TimeGrid grid(cfg.t_upper, cfg.n_steps);
    auto ens = sample_bm(grid, cfg.n_paths, cfg.seed);
    GridProcess fsq = override_f ? *override_f : squared(bridge(ens, cfg.a, cfg.t_upper).f);

    {
        ReportWriter w(artifact_path(cfg, "figure1"), cfg, {"t", "path_id", "f_squared"});
        for (int i = 0; i < grid.n_nodes(); ++i) {
            for (std::size_t j = 0; j < fsq.dim(); ++j) {
                w.row({grid.node(i), static_cast<double>(j),
                       fsq.values[static_cast<std::size_t>(i)][j]});
            }
        }
        w.close();
    }

    auto first = single_path(fsq, 0);
    auto xs = cfg.figure_x_list();
    {
        ReportWriter w(artifact_path(cfg, "figure2"), cfg, {"x", "s", "phi"});
        for (double x : xs) {
            auto prof = phi_profile(first, x);
            for (int i = 0; i < grid.n_nodes(); ++i) {
                w.row({x, grid.node(i), prof[static_cast<std::size_t>(i)][0]});
            }
        }
        w.close();
    }

    double x_section = xs.back();
    auto prof = phi_profile(first, x_section);
    double sup = 0.0;
    for (int i = 0; i < grid.n_nodes(); ++i) {
        sup = std::max(sup, std::fabs(prof[static_cast<std::size_t>(i)][0] -
                                      first.values[static_cast<std::size_t>(i)][0]));
    }
    {
        ReportWriter w(artifact_path(cfg, "section"), cfg, {"s", "phi", "f_squared", "abs_diff"},
                       {{"x", x_section}, {"sup_distance", sup}});
        for (int i = 0; i < grid.n_nodes(); ++i) {
            double p = prof[static_cast<std::size_t>(i)][0];
            double fv = first.values[static_cast<std::size_t>(i)][0];
            w.row({grid.node(i), p, fv, std::fabs(p - fv)});
        }
        w.close();
    }
}

std::vector<RecoverySummaryRow> write_recovery(const RunConfig& cfg) {
    cfg.validate();
    TimeGrid grid(cfg.t_upper, cfg.n_steps);
    auto ens = sample_bm(grid, cfg.n_paths, cfg.seed);
    auto sig = bump_signal(cfg.a, cfg.t_upper);

    std::vector<RecoverySummaryRow> summary;
    ReportWriter rows(artifact_path(cfg, "recovery"), cfg,
                      {"epsilon", "s", "psi_G", "h_prime", "abs_error"});
    for (double eps : cfg.eps_list) {
        auto rec = signal_recover(sig, eps, ens);
        for (std::size_t i = 0; i < rec.s.size(); i += 8) {
            rows.row({eps, rec.s[i], rec.estimate[i], rec.h_prime[i], rec.abs_error[i]});
        }
        summary.push_back(RecoverySummaryRow{eps, rec.sup_error});
    }
    rows.close();

    ReportWriter sw(artifact_path(cfg, "recovery_summary"), cfg, {"epsilon", "sup_error"});
    for (const auto& row : summary) sw.row({row.eps, row.sup_error});
    sw.close();
    return summary;
}

void write_noncompleteness(const RunConfig& cfg, const NoncompletenessReport& rep) {
    ReportWriter w(artifact_path(cfg, "noncompleteness"), cfg,
                   {"n", "m", "mu_symm_diff", "cauchy_value"});
    for (const auto& row : rep.rows) {
        w.row({static_cast<double>(row.n), static_cast<double>(row.m), row.mu_symm_diff,
               row.cauchy_value});
    }
    w.close();
}

} // namespace vlp
