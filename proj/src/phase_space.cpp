#include "ergolab/phase_space.hpp"

#include <cmath>
#include <stdexcept>

namespace ergolab {

PhaseSpace PhaseSpace::interval(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("interval: require lo < hi");
    PhaseSpace s;
    s.kind_ = Kind::interval;
    s.dim_ = 1;
    s.lo_ = lo;
    s.hi_ = hi;
    return s;
}

PhaseSpace PhaseSpace::torus(int dim) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("torus: dim must be 1..3");
    PhaseSpace s;
    s.kind_ = Kind::torus;
    s.dim_ = dim;
    s.lo_ = 0.0;
    s.hi_ = 1.0;
    return s;
}

double PhaseSpace::distance(const Point& a, const Point& b) const {
    if (a.dim() != dim_ || b.dim() != dim_) throw std::invalid_argument("distance: dimension mismatch");
    if (kind_ == Kind::interval) return std::abs(a[0] - b[0]);
    double d = 0.0;
    for (int i = 0; i < dim_; ++i) {
        double u = std::abs(a[i] - b[i]);
        u = std::min(u, 1.0 - u);
        d = std::max(d, u);
    }
    return d;
}

bool PhaseSpace::contains(const Point& p, double tol) const {
    if (p.dim() != dim_) return false;
    if (kind_ == Kind::interval) return p[0] >= lo_ - tol && p[0] <= hi_ + tol;
    for (int i = 0; i < dim_; ++i)
        if (p[i] < -tol || p[i] >= 1.0 + tol) return false;
    return true;
}

Point PhaseSpace::reduce(const Point& p) const {
    if (kind_ == Kind::interval) return p;
    Point q = p;
    for (int i = 0; i < dim_; ++i) {
        double x = q[i] - std::floor(q[i]);
        if (x >= 1.0) x = 0.0;  // guard against fp rounding of floor
        q[i] = x;
    }
    return q;
}

Point PhaseSpace::sample(Rng& rng) const {
    if (kind_ == Kind::interval) return Point(rng.uniform(lo_, hi_));
    Point p(0.0);
    switch (dim_) {
        case 1: p = Point(rng.uniform01()); break;
        case 2: p = Point(rng.uniform01(), rng.uniform01()); break;
        case 3: p = Point(rng.uniform01(), rng.uniform01(), rng.uniform01()); break;
    }
    return p;
}

}  // namespace ergolab
