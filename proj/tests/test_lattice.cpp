#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "vlp/lattice.hpp"
#include "vlp/rng.hpp"

using namespace vlp;

namespace {

LatticeElement elem(std::initializer_list<double> v) { return LatticeElement(std::vector<double>(v)); }

LatticeElement random_element(Rng& rng, std::size_t dim, double lo = -5.0, double hi = 5.0) {
    std::vector<double> v(dim);
    for (auto& x : v) x = rng.uniform(lo, hi);
    return LatticeElement(std::move(v));
}

} // namespace

TEST_CASE("join, meet and abs are entrywise") {
    auto jma = join_meet_abs(elem({1, 2}), elem({2, 1}));
    CHECK(jma.sup.values() == std::vector<double>{2, 2});
    CHECK(jma.inf.values() == std::vector<double>{1, 1});

    CHECK(abs(elem({-1, 3})).values() == std::vector<double>{1, 3});

    auto x = elem({0.5, -2, 7});
    CHECK(meet(x, x).values() == x.values());

    CHECK_THROWS_AS(join(elem({1, 2}), elem({1, 2, 3})), dimension_error);
}

TEST_CASE("f-algebra product") {
    auto e = LatticeElement::ones(3);
    auto x = elem({2, -1, 0.25});
    CHECK(mul(e, x).values() == x.values());
    CHECK(mul(elem({1, 0}), elem({0, 5})).values() == std::vector<double>{0, 0});
    CHECK(mul(elem({2, 3}), elem({2, 3})).values() == std::vector<double>{4, 9});
}

TEST_CASE("pointwise powers") {
    CHECK(power(elem({2, -1}), 2).values() == std::vector<double>{4, 1});
    for (int p : {1, 2, 3, 7}) {
        CHECK(power(LatticeElement::ones(4), p).values() == LatticeElement::ones(4).values());
    }
    CHECK(power(elem({3}), 3).values() == std::vector<double>{27});
    CHECK(power(elem({1.5, 2}), 1).values() == std::vector<double>{1.5, 2});
    CHECK_THROWS_AS(power(elem({1}), 0), domain_error);
}

TEST_CASE("M-norm") {
    auto ones3 = OrderUnit::ones(3);
    CHECK(m_norm(elem({1, -3, 2}), ones3) == 3.0);
    CHECK(m_norm(LatticeElement::zero(3), ones3) == 0.0);
    CHECK(m_norm(elem({2, 2}), OrderUnit(elem({4, 1}))) == 2.0);
}

TEST_CASE("non-finite entries are rejected at construction") {
    CHECK_THROWS_AS(elem({1.0, std::numeric_limits<double>::quiet_NaN()}), domain_error);
    CHECK_THROWS_AS(elem({std::numeric_limits<double>::infinity()}), domain_error);
    CHECK_THROWS_AS(LatticeElement(std::vector<double>{}), domain_error);
    CHECK_THROWS_AS(OrderUnit(elem({1, 0})), domain_error);
}

TEST_CASE("lattice laws on random triples") {
    Rng rng(20240301);
    for (int trial = 0; trial < 200; ++trial) {
        auto x = random_element(rng, 5);
        auto y = random_element(rng, 5);
        auto z = random_element(rng, 5);
        CHECK(join(x, y).values() == join(y, x).values());
        CHECK(meet(x, y).values() == meet(y, x).values());
        CHECK(join(join(x, y), z).values() == join(x, join(y, z)).values());
        CHECK(meet(meet(x, y), z).values() == meet(x, meet(y, z)).values());
        // absorption
        CHECK(join(x, meet(x, y)).values() == x.values());
        CHECK(meet(x, join(x, y)).values() == x.values());
    }
}

TEST_CASE("M-norm triangle inequality and monotonicity") {
    Rng rng(77);
    auto e = OrderUnit::ones(4);
    for (int trial = 0; trial < 200; ++trial) {
        auto x = random_element(rng, 4);
        auto y = random_element(rng, 4);
        CHECK(m_norm(x + y, e) <= m_norm(x, e) + m_norm(y, e) + 1e-12);
        if (leq(abs(x), abs(y))) {
            CHECK(m_norm(x, e) <= m_norm(y, e) + 1e-15);
        }
    }
}

TEST_CASE("disjointness is preserved by positive multiplication") {
    Rng rng(5150);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> xv(6, 0.0), yv(6, 0.0), zv(6);
        for (int i = 0; i < 6; ++i) {
            if (rng.uniform() < 0.5) {
                xv[i] = rng.uniform(0.0, 3.0);
            } else {
                yv[i] = rng.uniform(0.0, 3.0);
            }
            zv[i] = rng.uniform(0.0, 3.0);
        }
        LatticeElement x(xv), y(yv), z(zv);
        REQUIRE(meet(x, y).max_abs() == 0.0);
        CHECK(meet(mul(x, z), y).max_abs() == 0.0);
    }
}

TEST_CASE("power agrees with repeated multiplication") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> iv(3);
        for (auto& v : iv) v = std::floor(rng.uniform(-4.0, 5.0));
        LatticeElement xi(iv);
        auto xr = random_element(rng, 3, -2.0, 2.0);
        for (int p : {2, 3, 4}) {
            LatticeElement mi = xi, mr = xr;
            for (int k = 1; k < p; ++k) {
                mi = mul(mi, xi);
                mr = mul(mr, xr);
            }
            CHECK(power(xi, p).values() == mi.values());
            CHECK((power(xr, p) - mr).max_abs() <= 1e-12);
        }
    }
}
