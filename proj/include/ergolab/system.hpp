#ifndef ERGOLAB_SYSTEM_HPP
#define ERGOLAB_SYSTEM_HPP

#include <functional>
#include <string>
#include <vector>

#include "ergolab/linalg.hpp"
#include "ergolab/phase_space.hpp"

namespace ergolab {

struct Smoothness {
    enum class Kind { c_infinity, c_r };
    Kind kind = Kind::c_infinity;
    int r = 0;  // meaningful for c_r only

    static Smoothness c_infinity() { return {Kind::c_infinity, 0}; }
    static Smoothness c_r(int r) { return {Kind::c_r, r}; }

    /// True when the system has at least one continuous derivative, which is
    /// what the derivative-based estimators require.
    bool at_least_c1() const { return kind == Kind::c_infinity || r >= 1; }
};

/// A named map of the phase space into itself with an exact Jacobian.
struct SystemSpec {
    std::string name;
    PhaseSpace space = PhaseSpace::interval(0.0, 1.0);
    std::function<Point(const Point&)> eval;
    std::function<Mat(const Point&)> jacobian;
    Smoothness smoothness = Smoothness::c_infinity();
    /// Set for maps with isolated non-smooth points (tent peak); estimators
    /// that hit such a point along an orbit raise an error naming the iterate.
    std::function<bool(const Point&)> nonsmooth_at;

    Point step(const Point& x) const { return space.reduce(eval(x)); }
};

/// Orbit x, f(x), ..., f^n(x): n+1 points. Throws with the escape index if a
/// step leaves the phase space by more than a rounding tolerance.
std::vector<Point> iterate(const SystemSpec& sys, const Point& x, long long n);

/// Bowen distance max_{0 <= l < n} d(f^l x, f^l y).
double orbit_distance(const SystemSpec& sys, const Point& x, const Point& y, long long n);

/// Relative deviation between the analytic Jacobian and a central finite
/// difference at x; used by the catalog self-consistency checks.
double jacobian_fd_error(const SystemSpec& sys, const Point& x);

}  // namespace ergolab

#endif
