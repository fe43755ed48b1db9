#ifndef ERGOLAB_MEASURES_HPP
#define ERGOLAB_MEASURES_HPP

#include <cstdint>
#include <vector>

#include "ergolab/system.hpp"

namespace ergolab {

/// Truncated dense family of test functions: the constant 1 followed by
/// low-frequency Fourier atoms (cos before sin), ordered by max frequency
/// then lexicographically. All sup norms equal 1.
class TestFunctionFamily {
public:
    static TestFunctionFamily make_default(const PhaseSpace& space, int count = 33);

    int count() const { return static_cast<int>(atoms_.size()); }
    double sup_norm(int i) const { (void)i; return 1.0; }
    double eval(int i, const Point& x) const;
    const PhaseSpace& space() const { return space_; }

private:
    struct Atom {
        std::array<int, 3> freq{0, 0, 0};
        bool is_sin = false;   // constant atom when freq == 0
    };
    PhaseSpace space_ = PhaseSpace::interval(0.0, 1.0);
    std::vector<Atom> atoms_;
};

/// Weighted point cloud with weights summing to 1. Duplicate support points
/// (exact floating equality) are merged at construction.
struct EmpiricalMeasure {
    std::vector<Point> support;
    std::vector<double> weights;

    static EmpiricalMeasure dirac(const Point& x);
    static EmpiricalMeasure from_points(std::vector<Point> pts);
    /// Equal-weight mixture (1/m) sum of the given measures.
    static EmpiricalMeasure mix(const std::vector<EmpiricalMeasure>& parts);

    double integrate(const TestFunctionFamily& fam, int i) const;
};

struct MeasureSet {
    std::vector<EmpiricalMeasure> members;
    std::vector<int> multiplicities;  // pooled count per cluster representative
};

/// mu_n^x: uniform weights on the first n orbit points.
EmpiricalMeasure empirical_measure(const SystemSpec& sys, const Point& x, long long n);

/// (1/n) sum_{k<n} f^k mu.
EmpiricalMeasure cesaro_pushforward(const SystemSpec& sys, const EmpiricalMeasure& mu, long long n);

std::vector<double> feature_vector(const EmpiricalMeasure& mu, const TestFunctionFamily& fam);

/// The convex weak-* metric: sum_i |int phi_i dnu - int phi_i dmu| /
/// (2^i (1 + sup|phi_i|)), i = 1..count.
double dmetric(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const TestFunctionFamily& fam);
double dmetric_features(const std::vector<double>& fa, const std::vector<double>& fb);

double hausdorff(const MeasureSet& a, const MeasureSet& b, const TestFunctionFamily& fam);

/// Empirical measures at the given checkpoints, greedily clustered at
/// eps_cluster; within a cluster the measure with the largest n survives.
MeasureSet pw_estimate(const SystemSpec& sys, const Point& x, const std::vector<long long>& checkpoints,
                       const TestFunctionFamily& fam, double eps_cluster = 0.02);

/// Sampled stand-in for the physical-like set: pw estimates from
/// Lebesgue-uniform starts, pooled and re-clustered. Deterministic for a
/// fixed seed; per-sample streams are seed + index.
MeasureSet physical_like_estimate(const SystemSpec& sys, int sample_count, long long n, std::uint64_t seed,
                                  const TestFunctionFamily& fam, double eps_cluster = 0.02);

}  // namespace ergolab

#endif
