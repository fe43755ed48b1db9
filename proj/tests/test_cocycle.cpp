#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ergolab/catalog.hpp"
#include "ergolab/cocycle.hpp"
#include "ergolab/rng.hpp"

using namespace ergolab;

namespace {
const double kCatTop = std::log((3.0 + std::sqrt(5.0)) / 2.0);  // 0.9624236501192069
}

TEST_CASE("doubling cocycle accumulates n log 2") {
    const auto sys = make_doubling();
    const auto rec = cocycle_along_orbit(sys, Point(0.3141), 100);
    CHECK(rec.log_singvals[0] == doctest::Approx(100.0 * std::log(2.0)).epsilon(1e-13));
    CHECK(rec.jacobians_consumed == 100);
}

TEST_CASE("rotation cocycle is identically zero") {
    const auto sys = make_rotation(0.61803398875);
    const auto rec = cocycle_along_orbit(sys, Point(0.2), 64);
    CHECK(rec.log_singvals[0] == 0.0);
}

TEST_CASE("cat cocycle matches the eigenvalue oracle") {
    const auto sys = make_cat();
    const auto rec = cocycle_along_orbit(sys, Point(0.2, 0.7), 50);
    CHECK(rec.log_singvals[0] / 50.0 == doctest::Approx(kCatTop).epsilon(1e-9));
    // determinant 1: the two log singular values cancel
    CHECK(std::abs(rec.log_singvals[0] + rec.log_singvals[1]) < 1e-9);
}

TEST_CASE("cocycle matches the naive product on short logistic orbits") {
    const auto sys = make_logistic(3.7);
    Rng rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        const Point x0 = sys.space.sample(rng);
        for (long long n : {5LL, 17LL, 30LL}) {
            double naive = 0.0;  // 1d: log |prod f'|
            Point cur = x0;
            bool degenerate = false;
            for (long long k = 0; k < n; ++k) {
                const double d = sys.jacobian(cur)(0, 0);
                if (d == 0.0) degenerate = true;
                naive += std::log(std::abs(d));
                cur = sys.step(cur);
            }
            if (degenerate) continue;
            const auto rec = cocycle_along_orbit(sys, x0, n);
            CHECK(rec.log_singvals[0] == doctest::Approx(naive).epsilon(1e-8));
        }
    }
}

TEST_CASE("cat cocycle matches the naive 2d product for short times") {
    const auto sys = make_cat();
    Mat prod = Mat::identity(2);
    const Mat j = sys.jacobian(Point(0.0, 0.0));
    for (int k = 0; k < 20; ++k) prod = j * prod;
    const auto rec = cocycle_along_orbit(sys, Point(0.11, 0.23), 20);
    CHECK(rec.log_singvals[0] == doctest::Approx(std::log(exterior_norm(prod, 1))).epsilon(1e-8));
}

TEST_CASE("tent map cocycle works away from the peak and errors on it") {
    const auto sys = make_tent();
    const auto rec = cocycle_along_orbit(sys, Point(0.3), 3);  // 0.3 -> 0.6 -> 0.8 -> 0.4
    CHECK(rec.log_singvals[0] == doctest::Approx(3.0 * std::log(2.0)));
    CHECK_THROWS_WITH_AS(static_cast<void>(cocycle_along_orbit(sys, Point(0.25), 3)),
                         doctest::Contains("non-smooth at iterate 1"), std::runtime_error);
}

TEST_CASE("three-dimensional toral map") {
    // diag(2, 3, 5) expansion: exponents log 5 > log 3 > log 2 exactly
    SystemSpec sys;
    sys.name = "diag235";
    sys.space = PhaseSpace::torus(3);
    sys.eval = [](const Point& p) {
        auto frac = [](double v) { return v - std::floor(v); };
        return Point(frac(2.0 * p[0]), frac(3.0 * p[1]), frac(5.0 * p[2]));
    };
    sys.jacobian = [](const Point&) {
        Mat j(3);
        j(0, 0) = 2.0;
        j(1, 1) = 3.0;
        j(2, 2) = 5.0;
        return j;
    };
    const auto rep = lyapunov_report(sys, Point(0.12, 0.34, 0.56), 400);
    CHECK(rep.chi[0] == doctest::Approx(std::log(5.0)).epsilon(1e-12));
    CHECK(rep.chi[1] == doctest::Approx(std::log(15.0)).epsilon(1e-12));
    CHECK(rep.chi[2] == doctest::Approx(std::log(30.0)).epsilon(1e-12));
    CHECK(rep.sigma_chi_plus == doctest::Approx(std::log(30.0)).epsilon(1e-12));

    // rotated so the Jacobian is dense and the 3d sweep has real work
    const double c = std::cos(0.7), s = std::sin(0.7);
    SystemSpec dense = sys;
    dense.jacobian = [c, s](const Point&) {
        Mat r(3);
        r(0, 0) = c; r(0, 1) = -s; r(1, 0) = s; r(1, 1) = c; r(2, 2) = 1.0;
        Mat d(3);
        d(0, 0) = 2.0; d(1, 1) = 3.0; d(2, 2) = 5.0;
        return r * d;
    };
    ScaledFrame frame(3);
    for (int k = 0; k < 300; ++k) frame.push_left(dense.jacobian(Point(0.0, 0.0, 0.0)));
    // the rotation is norm-preserving, so singular values still multiply
    CHECK(frame.log_singular_values()[0] / 300.0 == doctest::Approx(std::log(5.0)).epsilon(1e-10));
    CHECK((frame.log_singular_values()[0] + frame.log_singular_values()[1] +
           frame.log_singular_values()[2]) /
              300.0 ==
          doctest::Approx(std::log(30.0)).epsilon(1e-10));
}

TEST_CASE("lyapunov report") {
    SUBCASE("rotation") {
        const auto rep = lyapunov_report(make_rotation(0.3), Point(0.5), 200);
        CHECK(rep.sigma_chi_plus == 0.0);
    }
    SUBCASE("doubling at n = 1000") {
        const auto rep = lyapunov_report(make_doubling(), Point(0.123456), 1000);
        CHECK(rep.chi[0] == doctest::Approx(std::log(2.0)).epsilon(1e-12));
        CHECK(rep.sigma_chi_plus == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    }
    SUBCASE("cat at n = 1000") {
        const auto rep = lyapunov_report(make_cat(), Point(0.2, 0.7), 1000);
        CHECK(rep.chi[0] == doctest::Approx(kCatTop).epsilon(1e-8));
        CHECK(std::abs(rep.chi[1]) < 1e-8);
        CHECK(rep.sigma_chi_plus == doctest::Approx(kCatTop).epsilon(1e-8));
    }
    SUBCASE("chi is concave in k") {
        const auto rep = lyapunov_report(make_cat(), Point(0.37, 0.11), 100);
        // sorted singular values make increments nonincreasing
        CHECK(rep.chi[1] - rep.chi[0] <= rep.chi[0] + 1e-9);
    }
}

TEST_CASE("strong exponents") {
    SUBCASE("doubling gives p log 2 per block") {
        const auto rep = strong_exponents(make_doubling(), Point(0.77), {1, 2, 4}, 10000);
        for (std::size_t i = 0; i < rep.p_list.size(); ++i)
            CHECK(rep.lambda_p[i] ==
                  doctest::Approx(static_cast<double>(rep.p_list[i]) * std::log(2.0)).epsilon(1e-10));
        CHECK(rep.lambda == doctest::Approx(std::log(2.0)).epsilon(1e-10));
        CHECK(rep.sigma_lambda == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    }
    SUBCASE("rotation gives zero") {
        const auto rep = strong_exponents(make_rotation(0.5), Point(0.1), {1, 3}, 500);
        CHECK(rep.lambda == 0.0);
        CHECK(rep.sigma_lambda == 0.0);
    }
    SUBCASE("cat converges to the top exponent") {
        const auto rep = strong_exponents(make_cat(), Point(0.6, 0.35), {1, 2, 4, 8}, 10000);
        CHECK(rep.lambda == doctest::Approx(kCatTop).epsilon(1e-3));
    }
    SUBCASE("lambda_p / p dominates the finite-time top exponent") {
        for (const char* name : {"doubling", "cat"}) {
            const auto sys = make_system({name});
            Rng rng(17);
            const Point x = sys.space.sample(rng);
            const long long n = 400;
            const auto rep = strong_exponents(sys, x, {1, 2, 4}, n);
            const auto lyap = lyapunov_report(sys, x, n);
            const double chi1p = std::max(0.0, lyap.chi[0]);
            for (std::size_t i = 0; i < rep.p_list.size(); ++i)
                CHECK(rep.lambda_p[i] / static_cast<double>(rep.p_list[i]) >= chi1p - 1e-9);
            CHECK(rep.sigma_lambda >= lyap.sigma_chi_plus - 1e-9);
        }
    }
    SUBCASE("logistic: constant-free inequality at matching n") {
        const auto sys = make_logistic(3.9);
        const Point x(0.4123);
        const long long n = 2000;
        const auto rep = strong_exponents(sys, x, {1, 2, 4, 8}, n);
        const auto lyap = lyapunov_report(sys, x, n);
        CHECK(rep.lambda >= std::max(0.0, lyap.chi[0]) - 1e-3);
        CHECK(rep.sigma_lambda >= lyap.sigma_chi_plus - 1e-3);
    }
    SUBCASE("lambda_p / p is nonincreasing along the doubling chain") {
        const auto cst = strong_exponents(make_cat(), Point(0.21, 0.55), {1, 2, 4, 8}, 4000);
        for (std::size_t i = 1; i < cst.p_list.size(); ++i)
            CHECK(cst.lambda_p[i] / static_cast<double>(cst.p_list[i]) <=
                  cst.lambda_p[i - 1] / static_cast<double>(cst.p_list[i - 1]) + 1e-9);
        const auto log_rep = strong_exponents(make_logistic(3.9), Point(0.317), {1, 2, 4, 8}, 4000);
        for (std::size_t i = 1; i < log_rep.p_list.size(); ++i)
            CHECK(log_rep.lambda_p[i] / static_cast<double>(log_rep.p_list[i]) <=
                  log_rep.lambda_p[i - 1] / static_cast<double>(log_rep.p_list[i - 1]) + 5e-2);
    }
    SUBCASE("limsup surrogate is reported") {
        const auto rep = strong_exponents(make_doubling(), Point(0.3), {2}, 1000);
        CHECK(rep.lambda_p_limsup[0] == doctest::Approx(rep.lambda_p[0]).epsilon(1e-6));
    }
}
