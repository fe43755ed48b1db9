#include "ergolab/system.hpp"

#include <cmath>
#include <stdexcept>

namespace ergolab {

std::vector<Point> iterate(const SystemSpec& sys, const Point& x, long long n) {
    if (n < 0) throw std::invalid_argument("iterate: n must be >= 0");
    if (!sys.space.contains(x, 1e-12)) throw std::invalid_argument("iterate: x outside phase space");
    std::vector<Point> orbit;
    orbit.reserve(static_cast<std::size_t>(n) + 1);
    Point cur = sys.space.reduce(x);
    orbit.push_back(cur);
    for (long long k = 1; k <= n; ++k) {
        cur = sys.space.reduce(sys.eval(cur));
        if (!sys.space.contains(cur, 1e-9)) {
            throw std::runtime_error("iterate: orbit escaped phase space at index " + std::to_string(k) +
                                     ", point " + to_string(cur));
        }
        // clamp rounding spill at interval endpoints
        if (sys.space.kind() == PhaseSpace::Kind::interval) {
            double v = cur[0];
            if (v < sys.space.lo()) v = sys.space.lo();
            if (v > sys.space.hi()) v = sys.space.hi();
            cur[0] = v;
        }
        orbit.push_back(cur);
    }
    return orbit;
}

double orbit_distance(const SystemSpec& sys, const Point& x, const Point& y, long long n) {
    if (n < 1) throw std::invalid_argument("orbit_distance: n must be >= 1");
    Point a = sys.space.reduce(x);
    Point b = sys.space.reduce(y);
    double best = sys.space.distance(a, b);
    for (long long l = 1; l < n; ++l) {
        a = sys.step(a);
        b = sys.step(b);
        best = std::max(best, sys.space.distance(a, b));
    }
    return best;
}

double jacobian_fd_error(const SystemSpec& sys, const Point& x) {
    const int d = sys.space.dim();
    const Mat j = sys.jacobian(x);
    double worst = 0.0;
    for (int c = 0; c < d; ++c) {
        const double h = 1e-7 * std::max(1.0, std::abs(x[c]));
        Point xp = x, xm = x;
        xp[c] += h;
        xm[c] -= h;
        const Point fp = sys.eval(xp);
        const Point fm = sys.eval(xm);
        for (int r = 0; r < d; ++r) {
            double diff = fp[r] - fm[r];
            // derivative through the torus seam
            if (sys.space.kind() == PhaseSpace::Kind::torus) {
                if (diff > 0.5) diff -= 1.0;
                if (diff < -0.5) diff += 1.0;
            }
            const double fd = diff / (2.0 * h);
            const double ref = std::max({std::abs(j(r, c)), std::abs(fd), 1.0});
            worst = std::max(worst, std::abs(fd - j(r, c)) / ref);
        }
    }
    return worst;
}

}  // namespace ergolab
