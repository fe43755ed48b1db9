#ifndef ERGOLAB_PHASE_SPACE_HPP
#define ERGOLAB_PHASE_SPACE_HPP

#include "ergolab/linalg.hpp"
#include "ergolab/rng.hpp"

namespace ergolab {

/// Compact phase space: a closed interval [lo, hi] or the d-torus with the
/// max of coordinate-wise circle distances, d in {1, 2, 3}.
class PhaseSpace {
public:
    enum class Kind { interval, torus };

    static PhaseSpace interval(double lo, double hi);
    static PhaseSpace torus(int dim);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }

    double distance(const Point& a, const Point& b) const;
    bool contains(const Point& p, double tol = 0.0) const;

    /// Reduces torus coordinates mod 1 into [0,1); identity on intervals.
    Point reduce(const Point& p) const;

    /// Lebesgue-uniform sample.
    Point sample(Rng& rng) const;

private:
    Kind kind_ = Kind::interval;
    int dim_ = 1;
    double lo_ = 0.0;
    double hi_ = 1.0;
};

}  // namespace ergolab

#endif
