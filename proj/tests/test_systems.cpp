#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ergolab/catalog.hpp"
#include "ergolab/rng.hpp"
#include "ergolab/system.hpp"

using namespace ergolab;

TEST_CASE("phase space metrics") {
    const auto iv = PhaseSpace::interval(0.0, 1.5);
    CHECK(iv.distance(Point(0.2), Point(1.0)) == doctest::Approx(0.8));
    const auto t1 = PhaseSpace::torus(1);
    CHECK(t1.distance(Point(0.1), Point(0.9)) == doctest::Approx(0.2));
    const auto t2 = PhaseSpace::torus(2);
    CHECK(t2.distance(Point(0.1, 0.95), Point(0.2, 0.05)) == doctest::Approx(0.1));
    CHECK_THROWS_AS(PhaseSpace::interval(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(PhaseSpace::torus(4), std::invalid_argument);
}

TEST_CASE("metric axioms on random triples") {
    Rng rng(42);
    for (const auto& space : {PhaseSpace::torus(1), PhaseSpace::torus(2), PhaseSpace::interval(-1.0, 2.0)}) {
        for (int trial = 0; trial < 200; ++trial) {
            const Point a = space.sample(rng);
            const Point b = space.sample(rng);
            const Point c = space.sample(rng);
            CHECK(space.distance(a, b) >= 0.0);
            CHECK(space.distance(a, b) == doctest::Approx(space.distance(b, a)));
            CHECK(space.distance(a, c) <= space.distance(a, b) + space.distance(b, c) + 1e-12);
            CHECK(space.distance(a, a) == 0.0);
        }
    }
}

TEST_CASE("rotation with theta 0 is the identity") {
    const auto sys = make_rotation(0.0);
    const auto orbit = iterate(sys, Point(0.3), 5);
    REQUIRE(orbit.size() == 6);
    for (const auto& p : orbit) CHECK(p[0] == doctest::Approx(0.3));
}

TEST_CASE("doubling orbit by hand") {
    const auto sys = make_doubling();
    const auto orbit = iterate(sys, Point(0.1), 3);
    REQUIRE(orbit.size() == 4);
    CHECK(orbit[0][0] == doctest::Approx(0.1));
    CHECK(orbit[1][0] == doctest::Approx(0.2));
    CHECK(orbit[2][0] == doctest::Approx(0.4));
    CHECK(orbit[3][0] == doctest::Approx(0.8));
}

TEST_CASE("cat map fixes the origin") {
    const auto sys = make_cat();
    const auto orbit = iterate(sys, Point(0.0, 0.0), 7);
    for (const auto& p : orbit) {
        CHECK(p[0] == 0.0);
        CHECK(p[1] == 0.0);
    }
}

TEST_CASE("iteration is deterministic over tails") {
    const auto sys = make_logistic(3.7);
    const auto a = iterate(sys, Point(0.123), 40);
    const auto b = iterate(sys, Point(0.123), 60);
    for (int k = 0; k <= 40; ++k) CHECK(a[static_cast<std::size_t>(k)][0] == b[static_cast<std::size_t>(k)][0]);
}

TEST_CASE("orbit distance") {
    const auto rot = make_rotation(0.37);
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Point x = rot.space.sample(rng);
        const Point y = rot.space.sample(rng);
        const double d0 = rot.space.distance(x, y);
        for (long long n : {1LL, 5LL, 50LL})
            CHECK(orbit_distance(rot, x, y, n) == doctest::Approx(d0).epsilon(1e-12));
    }

    const auto dbl = make_doubling();
    const double eps = std::ldexp(1.0, -10);
    CHECK(orbit_distance(dbl, Point(0.1), Point(0.1 + eps), 5) == doctest::Approx(std::ldexp(1.0, -6)));
    CHECK(orbit_distance(dbl, Point(0.37), Point(0.37), 12) == 0.0);

    // Bowen distance is monotone in n
    double prev = 0.0;
    for (long long n = 1; n <= 16; ++n) {
        const double d = orbit_distance(dbl, Point(0.11), Point(0.113), n);
        CHECK(d >= prev);
        prev = d;
    }
}

TEST_CASE("catalog jacobians match finite differences") {
    Rng rng(31337);
    for (const auto& name : catalog_names()) {
        const auto sys = make_system({name});
        int checked = 0;
        while (checked < 100) {
            Point x = sys.space.sample(rng);
            if (sys.nonsmooth_at) {  // keep the stencil away from the tent peak
                if (std::abs(x[0] - 0.5) < 1e-5) continue;
            }
            CAPTURE(name);
            CAPTURE(x[0]);
            CHECK(jacobian_fd_error(sys, x) < 1e-6);
            ++checked;
        }
    }
}

TEST_CASE("orbit escape reports the index") {
    SystemSpec bad;
    bad.name = "runaway";
    bad.space = PhaseSpace::interval(0.0, 1.0);
    bad.eval = [](const Point& p) { return Point(p[0] + 0.4); };
    bad.jacobian = [](const Point&) { return Mat::identity(1); };
    CHECK_THROWS_WITH_AS(static_cast<void>(iterate(bad, Point(0.5), 10)),
                         doctest::Contains("escaped phase space at index 2"), std::runtime_error);
}

TEST_CASE("system parser") {
    CHECK(make_system({"logistic", "mu=3.5"}).name == "logistic");
    CHECK(make_system({"rotation", "theta=0.25"}).name == "rotation");
    CHECK_THROWS_AS(make_system({"nosuch"}), std::invalid_argument);
    CHECK_THROWS_AS(make_system({"logistic", "mu=4.0", "nonsense=1"}), std::invalid_argument);
    CHECK_THROWS_AS(make_system({"logistic", "badtoken"}), std::invalid_argument);
}

TEST_CASE("seeded sampling is reproducible") {
    const auto space = PhaseSpace::torus(2);
    Rng a(777), b(777);
    for (int i = 0; i < 32; ++i) {
        const Point pa = space.sample(a);
        const Point pb = space.sample(b);
        CHECK(pa[0] == pb[0]);
        CHECK(pa[1] == pb[1]);
    }
}
