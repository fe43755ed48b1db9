#ifndef ERGOLAB_COCYCLE_HPP
#define ERGOLAB_COCYCLE_HPP

#include <vector>

#include "ergolab/system.hpp"

namespace ergolab {

/// Log singular values of d_x f^n, accumulated stably along the orbit.
struct CocycleRecord {
    Point x;
    long long n = 0;
    std::vector<double> log_singvals;  // descending, size = dim
    long long jacobians_consumed = 0;
};

struct LyapunovReport {
    Point x;
    long long n = 0;
    std::vector<double> chi;  // chi_k = (1/n) log ||Lambda^k d_x f^n||, k = 1..d
    double sigma_chi_plus = 0.0;
};

struct StrongExponentReport {
    Point x;
    long long n = 0;
    // per requested block length p: time averages of log+ ||d f^p|| and of
    // log+ max_k ||Lambda^k d f^p||, plus the limsup surrogate (max of the
    // Cesaro averages at n/2, 3n/4, n)
    std::vector<long long> p_list;
    std::vector<double> lambda_p;
    std::vector<double> lambda_p_limsup;
    std::vector<double> sigma_lambda_p;
    std::vector<double> sigma_lambda_p_limsup;
    double lambda = 0.0;        // min over p of lambda_p / p
    double sigma_lambda = 0.0;  // min over p of sigma_lambda_p / p
};

/// Raises if the system lacks a first derivative, or names the iterate when
/// an orbit hits an isolated non-smooth point.
CocycleRecord cocycle_along_orbit(const SystemSpec& sys, const Point& x, long long n);

LyapunovReport lyapunov_report(const SystemSpec& sys, const Point& x, long long n);

StrongExponentReport strong_exponents(const SystemSpec& sys, const Point& x,
                                      const std::vector<long long>& p_list, long long n);

}  // namespace ergolab

#endif
