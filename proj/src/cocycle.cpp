#include "ergolab/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ergolab/linalg.hpp"

namespace ergolab {

namespace {

void require_differentiable(const SystemSpec& sys) {
    if (!sys.smoothness.at_least_c1())
        throw std::invalid_argument("system '" + sys.name +
                                    "' is not C^1; derivative-based estimators refuse it except away from "
                                    "non-smooth points");
}

void check_orbit_point(const SystemSpec& sys, const Point& p, long long iterate_index) {
    if (sys.nonsmooth_at && sys.nonsmooth_at(p))
        throw std::runtime_error("system '" + sys.name + "' is non-smooth at iterate " +
                                 std::to_string(iterate_index) + ", point " + to_string(p));
}

// max over k = 1..d of the log exterior norm, from sorted log singular values
double log_max_exterior(const std::array<double, 3>& logs, int d) {
    double best = -std::numeric_limits<double>::infinity();
    double prefix = 0.0;
    for (int k = 0; k < d; ++k) {
        prefix += logs[static_cast<std::size_t>(k)];
        best = std::max(best, prefix);
    }
    return best;
}

}  // namespace

CocycleRecord cocycle_along_orbit(const SystemSpec& sys, const Point& x, long long n) {
    if (n < 1) throw std::invalid_argument("cocycle_along_orbit: n must be >= 1");
    if (sys.smoothness.kind == Smoothness::Kind::c_r && sys.smoothness.r < 1 && !sys.nonsmooth_at)
        require_differentiable(sys);
    const int d = sys.space.dim();
    ScaledFrame frame(d);
    Point cur = sys.space.reduce(x);
    for (long long k = 0; k < n; ++k) {
        check_orbit_point(sys, cur, k);
        frame.push_left(sys.jacobian(cur));
        cur = sys.step(cur);
    }
    CocycleRecord rec;
    rec.x = x;
    rec.n = n;
    rec.jacobians_consumed = n;
    rec.log_singvals.assign(frame.log_singular_values().begin(),
                            frame.log_singular_values().begin() + d);
    return rec;
}

LyapunovReport lyapunov_report(const SystemSpec& sys, const Point& x, long long n) {
    const CocycleRecord rec = cocycle_along_orbit(sys, x, n);
    LyapunovReport rep;
    rep.x = x;
    rep.n = n;
    double prefix = 0.0;
    double best = 0.0;  // Sigma chi^+ includes the 0 from k = 0
    for (double s : rec.log_singvals) {
        prefix += s;
        rep.chi.push_back(prefix / static_cast<double>(n));
        best = std::max(best, rep.chi.back());
    }
    rep.sigma_chi_plus = best;
    return rep;
}

StrongExponentReport strong_exponents(const SystemSpec& sys, const Point& x,
                                      const std::vector<long long>& p_list, long long n) {
    if (p_list.empty()) throw std::invalid_argument("strong_exponents: p_list must be nonempty");
    if (sys.smoothness.kind == Smoothness::Kind::c_r && sys.smoothness.r < 1 && !sys.nonsmooth_at)
        require_differentiable(sys);
    for (long long p : p_list)
        if (p < 1) throw std::invalid_argument("strong_exponents: every p must be >= 1");
    const long long max_p = *std::max_element(p_list.begin(), p_list.end());
    if (n < max_p) throw std::invalid_argument("strong_exponents: n must be >= max(p_list)");

    const int d = sys.space.dim();
    // sliding window of the last max_p Jacobians; every block product is
    // re-accumulated in a scaled frame (p is small so this stays cheap and
    // the memory footprint is independent of n)
    std::vector<Mat> window(static_cast<std::size_t>(max_p));
    Point cur = sys.space.reduce(x);
    for (long long k = 0; k < max_p; ++k) {
        check_orbit_point(sys, cur, k);
        window[static_cast<std::size_t>(k)] = sys.jacobian(cur);
        cur = sys.step(cur);
    }

    const std::size_t np = p_list.size();
    std::vector<double> sum_top(np, 0.0), sum_ext(np, 0.0);
    std::vector<double> lim_top(np, -std::numeric_limits<double>::infinity());
    std::vector<double> lim_ext(np, -std::numeric_limits<double>::infinity());
    for (long long l = 0; l <= n; ++l) {
        for (std::size_t i = 0; i < np; ++i) {
            ScaledFrame frame(d);
            for (long long j = 0; j < p_list[i]; ++j)
                frame.push_left(window[static_cast<std::size_t>((l + j) % max_p)]);
            const auto& logs = frame.log_singular_values();
            sum_top[i] += std::max(0.0, logs[0]);
            sum_ext[i] += std::max(0.0, log_max_exterior(logs, d));
            // limsup surrogate checkpoints at n/2, 3n/4, n
            if (l == n / 2 || l == (3 * n) / 4 || l == n) {
                lim_top[i] = std::max(lim_top[i], sum_top[i] / static_cast<double>(l + 1));
                lim_ext[i] = std::max(lim_ext[i], sum_ext[i] / static_cast<double>(l + 1));
            }
        }
        if (l < n) {
            check_orbit_point(sys, cur, l + max_p);
            window[static_cast<std::size_t>(l % max_p)] = sys.jacobian(cur);
            cur = sys.step(cur);
        }
    }

    StrongExponentReport rep;
    rep.x = x;
    rep.n = n;
    rep.lambda = std::numeric_limits<double>::infinity();
    rep.sigma_lambda = std::numeric_limits<double>::infinity();
    const double terms = static_cast<double>(n + 1);  // l = 0..n inclusive
    for (std::size_t i = 0; i < np; ++i) {
        rep.p_list.push_back(p_list[i]);
        rep.lambda_p.push_back(sum_top[i] / terms);
        rep.lambda_p_limsup.push_back(lim_top[i]);
        rep.sigma_lambda_p.push_back(sum_ext[i] / terms);
        rep.sigma_lambda_p_limsup.push_back(lim_ext[i]);
        rep.lambda = std::min(rep.lambda, rep.lambda_p[i] / static_cast<double>(p_list[i]));
        rep.sigma_lambda = std::min(rep.sigma_lambda, rep.sigma_lambda_p[i] / static_cast<double>(p_list[i]));
    }
    return rep;
}

}  // namespace ergolab
