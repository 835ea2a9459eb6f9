#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vlp/convergence.hpp"
#include "vlp/rng.hpp"

using namespace vlp;

namespace {

bool is_square(long n) {
    long r = std::lround(std::sqrt(static_cast<double>(n)));
    return r * r == n;
}

OSequence lattice_dyadic(std::size_t dim, int depth, double tol) {
    return OSequence{[dim](int p) { return LatticeElement::constant(dim, std::ldexp(1.0, -p)); },
                     depth, tol};
}

} // namespace

TEST_CASE("cofinite filter membership") {
    auto f = FilterSpec::cofinite();
    SubsetWindow tail5{[](long z) { return z >= 5; }, Tail::in};
    CHECK(filter_contains(f, tail5, 100).holds);

    SubsetWindow first10{[](long z) { return z <= 10; }, Tail::out};
    auto v = filter_contains(f, first10, 100);
    CHECK_FALSE(v.holds);
    CHECK(v.witness.find("11") != std::string::npos);
}

TEST_CASE("density-one filter membership") {
    auto f = FilterSpec::density_one();
    // Complement of the perfect squares: sparse complement, decaying density.
    SubsetWindow nonsquares{[](long z) { return !is_square(z); }, Tail::in};
    CHECK(filter_contains(f, nonsquares, 10000).holds);

    // The evens have density 1/2, not 1.
    SubsetWindow evens{[](long z) { return z % 2 == 0; }, Tail::in};
    CHECK_FALSE(filter_contains(f, evens, 10000).holds);

    // A thin constant-rate complement (every 100th index) never certifies.
    SubsetWindow thin{[](long z) { return z % 100 != 0; }, Tail::in};
    CHECK_FALSE(filter_contains(f, thin, 10000).holds);
}

TEST_CASE("generated filter membership") {
    std::vector<SubsetWindow> gens;
    gens.push_back(SubsetWindow{[](long z) { return z % 2 == 0; }, Tail::in});
    gens.push_back(SubsetWindow{[](long z) { return z >= 6; }, Tail::in});
    auto f = FilterSpec::generated(gens);
    CHECK(filter_contains(f, SubsetWindow{[](long z) { return z % 2 == 0 && z >= 4; }, Tail::in},
                          200)
              .holds);
    CHECK_FALSE(
        filter_contains(f, SubsetWindow{[](long z) { return z % 4 == 0; }, Tail::in}, 200).holds);
}

TEST_CASE("product filter membership") {
    auto f = FilterSpec::cofinite();
    CHECK(product_filter_contains(
              f, [](long m, long n) { return m >= 3 && n >= 3; }, Tail::in, 64)
              .holds);
    auto diag = product_filter_contains(
        f, [](long m, long n) { return m == n; }, Tail::in, 64);
    CHECK_FALSE(diag.holds);
    CHECK(product_filter_contains(f, [](long, long) { return true; }, Tail::in, 64).holds);
}

TEST_CASE("(o)-sequence validation") {
    auto good = OSequence{[](int p) { return LatticeElement::constant(3, 1.0 / p); }, 100, 0.02};
    CHECK(o_sequence_validate(good).holds);

    auto constant = OSequence{[](int) { return LatticeElement::ones(3); }, 100, 0.5};
    auto v = o_sequence_validate(constant);
    CHECK_FALSE(v.holds);
    CHECK(v.witness.find("infimum") != std::string::npos);

    auto alternating = OSequence{
        [](int p) { return LatticeElement::constant(2, p % 2 == 0 ? 2.0 : 1.0); }, 10, 0.1};
    auto va = o_sequence_validate(alternating);
    CHECK_FALSE(va.holds);
    CHECK(va.witness.find("not decreasing") != std::string::npos);

    auto nonpositive = OSequence{[](int p) { return LatticeElement::constant(2, 1.0 - p); }, 5, 0.1};
    CHECK_THROWS_AS(o_sequence_validate(nonpositive), domain_error);

    CHECK(o_sequence_validate(RealOSequence::dyadic(20)).holds);
}

TEST_CASE("(o_F)-convergence along the cofinite filter") {
    auto sigma = OSequence{[](int p) { return LatticeElement::constant(2, 1.0 / p); }, 16, 1.0 / 16};
    auto filter = FilterSpec::cofinite();

    IndexedFamily decaying{[](long z) { return LatticeElement::constant(2, 1.0 / z); }, Tail::in};
    CHECK(of_convergence_check(decaying, LatticeElement::zero(2), sigma, filter, 256).holds);

    // No declared tail: band membership mirrors the horizon index, which is
    // the right call for an eventually periodic family.
    IndexedFamily alternating{
        [](long z) { return LatticeElement::constant(2, z % 2 == 0 ? 1.0 : -1.0); }, std::nullopt};
    auto v = of_convergence_check(alternating, LatticeElement::zero(2), sigma, filter, 256);
    CHECK_FALSE(v.holds);
    CHECK(v.witness.find("p=2") != std::string::npos);
}

TEST_CASE("(o_F)-convergence along the density filter matches enumeration") {
    auto sigma = lattice_dyadic(1, 8, std::ldexp(1.0, -8));
    long horizon = 10000;

    // Decays along the evens, stays at e elsewhere: the band sets are the
    // even tails, density 1/2, so the verdict must be negative.
    IndexedFamily evens_only{
        [](long z) {
            return LatticeElement::constant(1, z % 2 == 0 ? 1.0 / z : 1.0);
        },
        Tail::out};
    auto v = of_convergence_check(evens_only, LatticeElement::zero(1), sigma,
                                  FilterSpec::density_one(), horizon);
    long members = 0;
    for (long z = 1; z <= horizon; ++z) {
        if (std::fabs(evens_only.value(z)[0]) <= sigma.at(8)[0]) ++members;
    }
    bool oracle = static_cast<double>(horizon - members) / horizon <= 1e-3;
    CHECK_FALSE(oracle);
    CHECK(v.holds == oracle);

    // Decays except on the squares: density-one band sets, cofinite fails.
    IndexedFamily except_squares{
        [](long z) {
            return LatticeElement::constant(1, is_square(z) ? 1.0 : 1.0 / z);
        },
        Tail::in};
    CHECK(of_convergence_check(except_squares, LatticeElement::zero(1), sigma,
                               FilterSpec::density_one(), horizon)
              .holds);
    IndexedFamily except_squares_cof{except_squares.value, Tail::out};
    CHECK_FALSE(of_convergence_check(except_squares_cof, LatticeElement::zero(1), sigma,
                                     FilterSpec::cofinite(), horizon)
                    .holds);
}

TEST_CASE("(r_F)-convergence with a supplied regulator") {
    auto u = LatticeElement(std::vector<double>{1.0, 3.0});
    IndexedFamily fam{[u](long z) { return (1.0 / z) * u; }, Tail::in};
    CHECK(rf_convergence_check(fam, LatticeElement::zero(2), u, RealOSequence::dyadic(8),
                               FilterSpec::cofinite(), 512)
              .holds);
}

TEST_CASE("of-convergence agrees with classical direct enumeration on 50 random families") {
    Rng rng(424242);
    const long horizon = 256;
    auto sigma = lattice_dyadic(1, 8, std::ldexp(1.0, -8));
    auto filter = FilterSpec::cofinite();
    int disagreements = 0;
    for (int trial = 0; trial < 50; ++trial) {
        int kind = static_cast<int>(rng.below(4));
        double c = rng.uniform(0.25, 2.0);
        double rate = rng.uniform(0.5, 0.9);
        std::function<double(long)> value;
        bool classical; // analytic truth of (o)-convergence to 0
        Tail tail;
        switch (kind) {
            case 0: // geometric decay
                value = [c, rate](long z) { return c * std::pow(rate, static_cast<double>(z)); };
                classical = true;
                tail = Tail::in;
                break;
            case 1: // alternating of fixed size
                value = [c](long z) { return z % 2 == 0 ? c : -c; };
                classical = false;
                tail = Tail::out;
                break;
            case 2: // constant offset
                value = [c](long) { return c; };
                classical = false;
                tail = Tail::out;
                break;
            default: // decay with recurring spikes
                value = [c, rate](long z) {
                    return z % 16 == 0 ? c : c * std::pow(rate, static_cast<double>(z));
                };
                classical = false;
                tail = Tail::out;
                break;
        }
        IndexedFamily fam{[value](long z) { return LatticeElement::constant(1, value(z)); }, tail};
        auto verdict = of_convergence_check(fam, LatticeElement::zero(1), sigma, filter, horizon);

        // Direct enumeration over a window 16x as long: a level holds
        // classically when the band violations die out, i.e. none appears in
        // the second half of the extended window.
        bool enumerated = true;
        for (int p = 1; p <= sigma.depth && enumerated; ++p) {
            double band = sigma.at(p)[0];
            long last_out = 0;
            for (long z = 1; z <= 16 * horizon; ++z) {
                if (std::fabs(value(z)) > band) last_out = z;
            }
            enumerated = last_out < 8 * horizon;
        }
        CHECK(enumerated == classical);
        if (verdict.holds != enumerated) ++disagreements;
    }
    CHECK(disagreements == 0);
}

TEST_CASE("verdict monotonicity in the horizon for constant-tail families") {
    auto sigma = lattice_dyadic(1, 6, std::ldexp(1.0, -6));
    auto filter = FilterSpec::cofinite();
    IndexedFamily fam{[](long z) { return LatticeElement::constant(1, std::ldexp(1.0, -static_cast<int>(z))); },
                      Tail::in};
    auto small = of_convergence_check(fam, LatticeElement::zero(1), sigma, filter, 64);
    auto large = of_convergence_check(fam, LatticeElement::zero(1), sigma, filter, 512);
    CHECK(small.holds);
    CHECK(large.holds);
}

TEST_CASE("uniform convergence of function sequences") {
    auto grid = SiteSpace::grid(GridMeasure(0.0, 1.0, 16));
    auto filter = FilterSpec::cofinite();
    auto eps = RealOSequence::dyadic(6);

    SiteFamily shrinking{[&grid](long z) {
                             return SiteFunction(grid.n_sites(),
                                                 LatticeElement::constant(
                                                     2, std::ldexp(1.0, -static_cast<int>(z))));
                         },
                         Tail::in};
    SiteFunction zero(grid.n_sites(), LatticeElement::zero(2));
    CHECK(uniform_convergence_check(shrinking, zero, eps, filter, 16).holds);

    // A single stubborn site keeps the sup away from zero.
    SiteFamily stuck{[&grid](long z) {
                         SiteFunction f(grid.n_sites(),
                                        LatticeElement::constant(2, std::ldexp(1.0, -static_cast<int>(z))));
                         f[7] = LatticeElement::ones(2);
                         return f;
                     },
                     std::nullopt};
    CHECK_FALSE(uniform_convergence_check(stuck, zero, eps, filter, 16).holds);
}

TEST_CASE("mu-convergence in measure") {
    auto filter = FilterSpec::cofinite();
    auto eps = RealOSequence::dyadic(5);
    auto sig = RealOSequence::dyadic(5);

    // Indicators of shrinking cell blocks on a grid: measure ~ 1/z.
    auto grid = SiteSpace::grid(GridMeasure(0.0, 1.0, 60));
    SiteFamily shrinking{[&grid](long z) {
                             SiteFunction f(grid.n_sites(), LatticeElement::zero(1));
                             auto k = static_cast<std::size_t>((60 + z - 1) / z);
                             for (std::size_t t = 0; t < k; ++t) f[t] = LatticeElement::ones(1);
                             return f;
                         },
                         Tail::in};
    SiteFunction zero_g(grid.n_sites(), LatticeElement::zero(1));
    CHECK(mu_convergence_check(shrinking, zero_g, grid, eps, sig, filter, 128).holds);

    // Constantly e: never mu-converges to 0.
    SiteFamily ones{[&grid](long) {
                        return SiteFunction(grid.n_sites(), LatticeElement::ones(1));
                    },
                    Tail::out};
    CHECK_FALSE(mu_convergence_check(ones, zero_g, grid, eps, sig, filter, 128).holds);

    // Tall spikes on dyadically small sets: f_n = n 1_{B_n}, mu(B_n) = 2^-n.
    auto dyadic = SiteSpace::dyadic(24);
    SiteFamily spikes{[&dyadic](long z) {
                          SiteFunction f(dyadic.n_sites(), LatticeElement::zero(1));
                          f[static_cast<std::size_t>(z - 1)] =
                              LatticeElement::constant(1, static_cast<double>(z));
                          return f;
                      },
                      Tail::in};
    SiteFunction zero_d(dyadic.n_sites(), LatticeElement::zero(1));
    CHECK(mu_convergence_check(spikes, zero_d, dyadic, eps, sig, filter, 20).holds);
}

TEST_CASE("equi-absolute continuity") {
    auto thresholds = RealOSequence::dyadic(20);

    // Uniformly bounded family on a finite-measure ground set.
    auto grid = SiteSpace::grid(GridMeasure(0.0, 1.0, 32));
    SiteFamily bounded{[&grid](long z) {
                           return SiteFunction(grid.n_sites(),
                                               LatticeElement::constant(1, 1.0 + 1.0 / z));
                       },
                       Tail::in};
    auto iota = integral_modular(grid, 1);
    CHECK(equi_ac_check(bounded, iota, 1.0, grid, thresholds, 24).holds);

    // f_n = 2^n 1_{B_n} with mu(B_n) = 2^-n: iota(f_n 1_{B_n}) = e for all n.
    auto dyadic = SiteSpace::dyadic(24);
    SiteFamily blowup{[&dyadic](long z) {
                          SiteFunction f(dyadic.n_sites(), LatticeElement::zero(1));
                          f[static_cast<std::size_t>(z - 1)] =
                              LatticeElement::constant(1, std::ldexp(1.0, static_cast<int>(z)));
                          return f;
                      },
                      Tail::out};
    auto iota_d = integral_modular(dyadic, 1);
    auto v = equi_ac_check(blowup, iota_d, 1.0, dyadic, thresholds, 20);
    CHECK_FALSE(v.holds);
    CHECK(v.witness.find("ac1") != std::string::npos);

    // Empty family: vacuously equi-absolutely continuous.
    SiteFamily empty{[&grid](long) {
                         return SiteFunction(grid.n_sites(), LatticeElement::zero(1));
                     },
                     Tail::in};
    CHECK(equi_ac_check(empty, iota, 1.0, grid, thresholds, 0).holds);
}

TEST_CASE("modular axioms") {
    auto grid = SiteSpace::grid(GridMeasure(0.0, 1.0, 16));
    auto iota = integral_modular(grid, 2);

    Rng rng(8);
    std::vector<SiteFunction> samples;
    for (int k = 0; k < 6; ++k) {
        SiteFunction f;
        for (std::size_t t = 0; t < grid.n_sites(); ++t) {
            f.push_back(LatticeElement(
                std::vector<double>{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)}));
        }
        samples.push_back(std::move(f));
    }
    std::vector<std::pair<double, double>> weights = {{0.5, 0.5}, {0.25, 0.75}, {1.0, 0.0}};

    auto rep = modular_axioms_check(iota, grid, samples, weights);
    CHECK(rep.all_hold());

    // Affine shift: rho(0) != 0.
    ModularSpec shifted{[&iota](const SiteFunction& f) {
                            return iota.rho(f) + LatticeElement::ones(2);
                        },
                        2};
    auto rep2 = modular_axioms_check(shifted, grid, samples, weights);
    CHECK_FALSE(rep2.rho0.holds);

    // Oscillation of |f| over the ground set: even, vanishing at 0, but the
    // pair scan finds a convex-combination witness against rho2.
    ModularSpec oscillation{[](const SiteFunction& f) {
                                double hi = 0.0;
                                double lo = std::numeric_limits<double>::infinity();
                                for (const auto& v : f) {
                                    hi = std::max(hi, v.max_abs());
                                    lo = std::min(lo, abs(v).min_entry());
                                }
                                return LatticeElement::constant(2, hi - lo);
                            },
                            2};
    std::vector<SiteFunction> osc_samples = samples;
    osc_samples.push_back(SiteFunction(grid.n_sites(), LatticeElement::ones(2)));
    SiteFunction alt;
    for (std::size_t t = 0; t < grid.n_sites(); ++t) {
        alt.push_back(LatticeElement::constant(2, t % 2 == 0 ? 1.0 : -1.0));
    }
    osc_samples.push_back(alt);
    auto rep3 = modular_axioms_check(oscillation, grid, osc_samples, weights);
    CHECK_FALSE(rep3.rho2.holds);
}

TEST_CASE("Vitali instance checker") {
    auto filter = FilterSpec::cofinite();

    // Shrinking dyadic spikes of unit height: hypotheses and conclusion hold.
    auto dyadic = SiteSpace::dyadic(24);
    auto iota = integral_modular(dyadic, 1);
    SiteFamily shrinking{[&dyadic](long z) {
                             SiteFunction f(dyadic.n_sites(), LatticeElement::zero(1));
                             f[static_cast<std::size_t>(z - 1)] = LatticeElement::ones(1);
                             return f;
                         },
                         Tail::in};
    auto res = vitali_conclusion_check(shrinking, iota, dyadic, filter, 20);
    CHECK(res.hypotheses_met);
    CHECK(res.conclusion.holds);
    CHECK(res.alpha == 1.0);

    // The equi-ac failure family: hypotheses not met, and a direct scan
    // confirms rho(alpha f_n) stays at alpha e for every sampled alpha.
    SiteFamily blowup{[&dyadic](long z) {
                          SiteFunction f(dyadic.n_sites(), LatticeElement::zero(1));
                          f[static_cast<std::size_t>(z - 1)] =
                              LatticeElement::constant(1, std::ldexp(1.0, static_cast<int>(z)));
                          return f;
                      },
                      Tail::out};
    auto res2 = vitali_conclusion_check(blowup, iota, dyadic, filter, 20);
    CHECK_FALSE(res2.hypotheses_met);
    CHECK(res2.conclusion.witness == "hypotheses not met");
    for (double alpha : {1.0, 0.5, 0.25, 1.0 / 64}) {
        for (long z = 15; z <= 20; ++z) {
            auto val = iota.rho(scale_function(blowup.at(z), alpha));
            CHECK(val.max_entry() == doctest::Approx(alpha).epsilon(1e-12));
        }
    }

    // Constant-zero family: holds trivially.
    SiteFamily zeros{[&dyadic](long) {
                         return SiteFunction(dyadic.n_sites(), LatticeElement::zero(1));
                     },
                     Tail::in};
    auto res3 = vitali_conclusion_check(zeros, iota, dyadic, filter, 16);
    CHECK(res3.hypotheses_met);
    CHECK(res3.conclusion.holds);
}

TEST_CASE("product-filter and dominated variants") {
    auto dyadic = SiteSpace::dyadic(24);
    auto iota = integral_modular(dyadic, 1);
    auto filter = FilterSpec::cofinite();

    // Levelling family: f_n = (1 + 2^-n) 1_{first site}; pair differences
    // shrink dyadically.
    SiteFamily levelling{[&dyadic](long z) {
                             SiteFunction f(dyadic.n_sites(), LatticeElement::zero(1));
                             f[0] = LatticeElement::constant(
                                 1, 1.0 + std::ldexp(1.0, -static_cast<int>(z)));
                             return f;
                         },
                         Tail::in};
    auto res = cauchy_modular_check(levelling, iota, dyadic, filter, 20);
    CHECK(res.hypotheses_met);
    CHECK(res.conclusion.holds);

    // Dominated variant: spikes under a fixed integrable envelope.
    SiteFamily spikes{[&dyadic](long z) {
                          SiteFunction f(dyadic.n_sites(), LatticeElement::zero(1));
                          f[static_cast<std::size_t>(z - 1)] = LatticeElement::ones(1);
                          return f;
                      },
                      Tail::in};
    SiteFunction envelope(dyadic.n_sites(), LatticeElement::ones(1));
    auto res2 = dominated_conclusion_check(spikes, envelope, iota, dyadic, filter, 20);
    CHECK(res2.hypotheses_met);
    CHECK(res2.conclusion.holds);
}
