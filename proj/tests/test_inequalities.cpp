#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vlp/inequalities.hpp"
#include "vlp/rng.hpp"

using namespace vlp;

namespace {

constexpr std::size_t kNodes = 257; // 4k+1: Boole integration, midpoint node

// Even-degree polynomial with nonnegative leading coefficient plus an affine
// part, per lattice coordinate; rejection keeps only midpoint-convex draws.
GridFunction random_convex_polynomial(Rng& rng, double lo, double hi, std::size_t dim) {
    while (true) {
        std::vector<double> c4(dim), c2(dim), c1(dim), c0(dim);
        for (std::size_t k = 0; k < dim; ++k) {
            c4[k] = rng.uniform(0.0, 1.0);
            c2[k] = rng.uniform(-1.0, 1.0);
            c1[k] = rng.uniform(-1.0, 1.0);
            c0[k] = rng.uniform(-1.0, 1.0);
        }
        auto f = GridFunction::sample_lattice(lo, hi, kNodes, [&](double t) {
            std::vector<double> v(dim);
            for (std::size_t k = 0; k < dim; ++k) {
                v[k] = c4[k] * t * t * t * t + c2[k] * t * t + c1[k] * t + c0[k];
            }
            return LatticeElement(std::move(v));
        });
        if (midpoint_convexity_check(f).holds) return f;
    }
}

} // namespace

TEST_CASE("uniform continuity modulus") {
    auto constant = GridFunction::sample(0.0, 1.0, kNodes, [](double) { return 3.0; });
    auto mc = uniform_continuity_modulus(constant);
    for (const auto& s : mc.sigma) CHECK(s.max_abs() == 0.0);
    CHECK(modulus_validate(mc, constant).holds);

    auto linear = GridFunction::sample(0.0, 1.0, kNodes, [](double t) { return t; });
    auto ml = uniform_continuity_modulus(linear);
    for (std::size_t p = 0; p < 8; ++p) {
        CHECK(ml.sigma[p].max_abs() == doctest::Approx(ml.delta[p]).epsilon(1e-12));
    }
    CHECK(modulus_validate(ml, linear).holds);
}

TEST_CASE("finite difference derivative") {
    auto sq = GridFunction::sample(0.0, 1.0, kNodes, [](double t) { return t * t; });
    auto dsq = finite_diff_derivative(sq);
    for (std::size_t i = 0; i < dsq.n_nodes(); ++i) {
        CHECK(dsq.values[i][0] == doctest::Approx(2.0 * dsq.node(i)).epsilon(1e-12));
    }

    auto c = GridFunction::sample(0.0, 1.0, 33, [](double) { return 7.0; });
    CHECK(integrate(finite_diff_derivative(c)).max_abs() <= 1e-14);

    auto cube = GridFunction::sample(0.0, 1.0, 1001, [](double t) { return t * t * t; });
    auto dcube = finite_diff_derivative(cube);
    double worst = 0.0;
    for (std::size_t i = 0; i < dcube.n_nodes(); ++i) {
        worst = std::max(worst, std::fabs(dcube.values[i][0] - 3.0 * dcube.node(i) * dcube.node(i)));
    }
    CHECK(worst < 1e-5);
}

TEST_CASE("midpoint convexity") {
    auto sq = GridFunction::sample(-1.0, 1.0, kNodes, [](double t) { return t * t; });
    CHECK(midpoint_convexity_check(sq).holds);

    auto cave = GridFunction::sample(-1.0, 1.0, kNodes, [](double t) { return -t * t; });
    auto v = midpoint_convexity_check(cave);
    CHECK_FALSE(v.holds);
    CHECK(v.witness.find("nodes") != std::string::npos);

    auto affine = GridFunction::sample(-1.0, 1.0, kNodes, [](double t) { return 2.0 * t - 1.0; });
    CHECK(midpoint_convexity_check(affine, 0.0).holds);
}

TEST_CASE("support line and chord") {
    auto sq = GridFunction::sample(-1.0, 1.0, kNodes, [](double t) { return t * t; });
    auto w = support_line(sq, (kNodes - 1) / 2);
    CHECK(w.slope.max_abs() <= 1e-12);
    for (const auto& val : w.support_line_fn.values) CHECK(val.max_abs() <= 1e-12);

    auto affine = GridFunction::sample(0.0, 2.0, kNodes, [](double t) { return 3.0 * t + 1.0; });
    auto wa = support_line(affine, 10);
    for (std::size_t i = 0; i < affine.n_nodes(); ++i) {
        CHECK((wa.support_line_fn.values[i] - affine.values[i]).max_abs() <= 1e-10);
    }

    auto cave = GridFunction::sample(-1.0, 1.0, kNodes, [](double t) { return -t * t; });
    CHECK_THROWS_AS(support_line(cave, (kNodes - 1) / 2), domain_error);

    // Random convex corpus: support from below at random nodes, chord above.
    Rng rng(1001);
    for (int trial = 0; trial < 40; ++trial) {
        auto f = random_convex_polynomial(rng, -1.0, 1.0, 2);
        auto v_index = static_cast<std::size_t>(rng.below(kNodes));
        auto wit = support_line(f, v_index, 1e-9);
        auto chord = chord_line(f);
        for (std::size_t i = 0; i < f.n_nodes(); ++i) {
            CHECK(leq(wit.support_line_fn.values[i], f.values[i], 1e-9));
            CHECK(leq(f.values[i], chord.values[i], 1e-9));
        }
    }
}

TEST_CASE("support lines exist at every node iff midpoint convexity holds") {
    Rng rng(77);
    auto holds_everywhere = [](const GridFunction& f) {
        for (std::size_t v = 0; v < f.n_nodes(); v += 8) {
            try {
                support_line(f, v, 1e-9);
            } catch (const domain_error&) {
                return false;
            }
        }
        return true;
    };
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random_convex_polynomial(rng, -1.0, 1.0, 1);
        CHECK(midpoint_convexity_check(f).holds);
        CHECK(holds_everywhere(f));
    }
    auto wiggle = GridFunction::sample(-1.0, 1.0, kNodes,
                                       [](double t) { return t * t + 0.2 * std::sin(8.0 * t); });
    CHECK_FALSE(midpoint_convexity_check(wiggle).holds);
    CHECK_FALSE(holds_everywhere(wiggle));
}

TEST_CASE("Jensen inequality") {
    GridMeasure prob(0.0, 1.0, 256, 1.0); // mass 1 already
    ConvexMap square{[](double x) { return x * x; }};

    auto id = GridFunction::sample(0.0, 1.0, kNodes, [](double t) { return t; });
    CHECK(jensen_check(id, square, prob).holds);
    CHECK(integrate(id, prob).max_abs() == doctest::Approx(0.5).epsilon(1e-12));
    ConvexMap sq2 = square;
    GridFunction idsq = id;
    for (auto& v : idsq.values) v = sq2.apply(v);
    CHECK(integrate(idsq, prob).max_abs() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    // Affine map: equality.
    ConvexMap affine{[](double x) { return 2.0 * x - 0.3; }};
    auto f = GridFunction::sample(0.0, 1.0, kNodes, [](double t) { return std::sin(t); });
    CHECK(jensen_check(f, affine, prob).holds);
    LatticeElement lhs = affine.apply(integrate(f, prob));
    GridFunction af = f;
    for (auto& v : af.values) v = affine.apply(v);
    CHECK((lhs - integrate(af, prob)).max_abs() <= 1e-9);

    // Constant f: equality.
    auto c = GridFunction::sample(0.0, 1.0, kNodes, [](double) { return 0.7; });
    CHECK(jensen_check(c, square, prob).holds);

    GridMeasure not_prob(0.0, 2.0, 256, 1.0);
    auto g = GridFunction::sample(0.0, 2.0, kNodes, [](double t) { return t; });
    CHECK_THROWS_AS(jensen_check(g, square, not_prob), domain_error);

    ConvexMap concave{[](double x) { return -x * x; }};
    CHECK_FALSE(jensen_check(id, concave, prob).holds);
}

TEST_CASE("Hermite-Hadamard inequality") {
    GridMeasure leb(0.0, 1.0, 256, 1.0);
    auto sq = GridFunction::sample(0.0, 1.0, kNodes, [](double t) { return t * t; });
    CHECK(hermite_hadamard_check(sq, leb).holds);
    CHECK(sq.values[(kNodes - 1) / 2][0] == doctest::Approx(0.25));
    CHECK(integrate(sq, leb).max_abs() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    auto affine = GridFunction::sample(0.0, 1.0, kNodes, [](double t) { return 4.0 * t - 1.0; });
    CHECK(hermite_hadamard_check(affine, leb).holds);
    LatticeElement mid = affine.values[(kNodes - 1) / 2];
    CHECK((integrate(affine, leb) - mid).max_abs() <= 1e-12);

    Rng rng(313);
    for (int trial = 0; trial < 100; ++trial) {
        auto f = random_convex_polynomial(rng, 0.0, 1.0, 3);
        CHECK(hermite_hadamard_check(f, leb, 1e-9).holds);
    }

    // Scale-free: rescaling the measure density leaves the verdict alone.
    GridMeasure scaled(0.0, 1.0, 256, 5.0);
    CHECK(hermite_hadamard_check(sq, scaled).holds);
}

TEST_CASE("Fejer inequality") {
    GridMeasure leb(0.0, 1.0, 256, 1.0);
    auto sq = GridFunction::sample(0.0, 1.0, kNodes, [](double t) { return t * t; });

    // w = 1 reduces to Hermite-Hadamard.
    auto one = GridFunction::sample(0.0, 1.0, kNodes, [](double) { return 1.0; });
    CHECK(fejer_check(sq, one, leb).holds == hermite_hadamard_check(sq, leb).holds);

    // Symmetric triangle weight.
    auto tri = GridFunction::sample(0.0, 1.0, kNodes,
                                    [](double t) { return 1.0 - std::fabs(2.0 * t - 1.0); });
    CHECK(fejer_check(sq, tri, leb).holds);

    // Zero weight: all terms vanish.
    auto zero = GridFunction::sample(0.0, 1.0, kNodes, [](double) { return 0.0; });
    CHECK(fejer_check(sq, zero, leb).holds);

    // Asymmetric weights are a structured error.
    auto skew = GridFunction::sample(0.0, 1.0, kNodes, [](double t) { return t; });
    CHECK_THROWS_AS(fejer_check(sq, skew, leb), domain_error);

    Rng rng(717);
    for (int trial = 0; trial < 100; ++trial) {
        auto f = random_convex_polynomial(rng, 0.0, 1.0, 2);
        double peak = rng.uniform(0.5, 2.0);
        auto w = GridFunction::sample(0.0, 1.0, kNodes, [peak](double t) {
            double s = 1.0 - std::fabs(2.0 * t - 1.0);
            return peak * s * s;
        });
        CHECK(fejer_check(f, w, leb, 1e-9).holds);
    }
}

TEST_CASE("Schwartz inequality") {
    auto space = SiteSpace::grid(GridMeasure(0.0, 1.0, 64));
    auto e1 = OrderUnit::ones(1);

    // g = f: equality, zero gap, zero discriminant.
    SiteSet left;
    for (std::size_t i = 0; i < 32; ++i) left.push_back(i);
    auto f = SimpleFunction::indicator(left, LatticeElement::constant(1, 1.5), space.n_sites());
    auto res = schwartz_check(f, f, space, e1);
    CHECK(res.verdict.holds);
    CHECK(res.gap.max_abs() <= 1e-12);
    CHECK(res.discriminant.max_abs() <= 1e-12);

    // Unit indicators on the whole interval: 1 <= 1.
    auto full = SimpleFunction::indicator(all_sites(space.n_sites()), LatticeElement::ones(1),
                                          space.n_sites());
    auto res2 = schwartz_check(full, full, space, e1);
    CHECK(res2.verdict.holds);

    Rng rng(909);
    for (std::size_t dim : {std::size_t{1}, std::size_t{4}, std::size_t{16}}) {
        auto e = OrderUnit::ones(dim);
        for (int trial = 0; trial < 34; ++trial) {
            // Nonnegative random simple pair over a random partition.
            SiteFunction fv, gv;
            int parts = 2 + static_cast<int>(rng.below(4));
            std::vector<LatticeElement> fpool, gpool;
            for (int k = 0; k < parts; ++k) {
                std::vector<double> a(dim), b(dim);
                for (std::size_t c = 0; c < dim; ++c) {
                    a[c] = rng.uniform(0.0, 2.0);
                    b[c] = rng.uniform(0.0, 2.0);
                }
                fpool.push_back(LatticeElement(std::move(a)));
                gpool.push_back(LatticeElement(std::move(b)));
            }
            for (std::size_t t = 0; t < space.n_sites(); ++t) {
                auto pick = rng.below(static_cast<std::uint64_t>(parts));
                fv.push_back(fpool[pick]);
                gv.push_back(gpool[rng.below(static_cast<std::uint64_t>(parts))]);
            }
            auto fs = SimpleFunction::from_sites(fv, space.n_sites());
            auto gs = SimpleFunction::from_sites(gv, space.n_sites());
            auto r = schwartz_check(fs, gs, space, e);
            CHECK(r.verdict.holds);
            CHECK(r.discriminant.min_entry() >= -1e-12);
            CHECK((r.gap - r.discriminant).max_abs() <= 1e-9 * (1.0 + r.gap.max_abs()));
        }
    }
}
