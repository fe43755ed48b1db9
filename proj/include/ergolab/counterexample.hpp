#ifndef ERGOLAB_COUNTEREXAMPLE_HPP
#define ERGOLAB_COUNTEREXAMPLE_HPP

#include <cstdint>
#include <vector>

#include "ergolab/logreal.hpp"
#include "ergolab/system.hpp"

namespace ergolab {

/// Parameters of the C^r interval map on [0, 3/2] whose orbits on a fat
/// Cantor set converge to the Dirac mass at 0 while keeping Lyapunov
/// exponent log(lambda)/r. r = 1 is rejected: the transit schedule r^n - 1
/// degenerates to zero steps and the construction loses its meaning.
struct CounterexampleParams {
    int r = 2;
    double lambda = 2.0;
    int n0 = 5;
    int n_max = 12;
};

/// Per-stage geometry. All quantities of size lambda^(-r^n) live in
/// LogReal; N_n is kept as an exact integer while it fits in a double's
/// 53-bit mantissa and as a log otherwise.
struct StageData {
    int n = 0;
    double j_lo = 0.0, j_hi = 0.0;   // J_n = [1-1/n-1/(2n^2), 1-1/n]
    LogReal g_val;                   // (1-1/(n+1)) * lambda^(1-r^n)
    LogReal alpha;                   // tent amplitude
    LogReal offset;                  // additive constant of the J_n formula
    LogReal branch_image_lo;         // h(I_n), identical for every branch
    LogReal branch_image_hi;         //   (the top equals g_val exactly)
    double log_scale = 0.0;          // log(2 n^2 N_n)
    double log_N = 0.0;
    long long N = 0;                 // valid when N_exact
    bool N_exact = false;
    long long transit_steps = 0;     // r^n - 1
    double crnorm_proxy = 0.0;       // n^{2r} alpha (2n^2 N)^r, via logs
    double branch_fraction = 0.0;    // total branch length / |J_n|
};

struct ScheduleEntry {
    int n = 0;
    long long transit_steps = 0;
    bool contained = true;           // h^k(I_n) in [0, 1/lambda], k = 1..r^n-1
    long long first_violation = -1;
    bool landed = true;              // h^{r^n}(I_n) = J_{n+1}
    double landing_err_lo = 0.0;     // |log(final/target)| at both endpoints
    double landing_err_hi = 0.0;
    double landing_lo = 0.0, landing_hi = 0.0;  // J_{n+1} endpoints
    bool ok() const { return contained && landed; }
};

struct CantorReport {
    int up_to = 0;
    double leb_E_n0 = 0.0;           // |J_{n0}| (1 - 4/n0^2)
    double partial_product = 1.0;    // prod_{n0 < n <= up_to} (1 - 4/n^2)
    double partial_measure = 0.0;    // leb_E_n0 * partial_product
    double limit_product = 0.0;      // telescoped value of the infinite product
    double limit_measure = 0.0;
};

struct StageExponent {
    int n = 0;
    double stage_log_deriv = 0.0;    // (r^n - 1) log lambda + log(alpha 2n^2 N)
    double stage_steps = 0.0;        // r^n
    double running_ratio = 0.0;
    double telescoped_ratio = 0.0;   // closed-form partial, equals log(lambda)/r
};

struct ExponentReport {
    int first_stage = 0, last_stage = 0;
    double accumulated = 0.0;        // sum log|h'| / sum steps over the stages
    double telescoped = 0.0;
    double target = 0.0;             // log(lambda) / r
    std::vector<StageExponent> per_stage;
};

struct CertifyReport {
    bool schedule_ok = false;
    std::vector<ScheduleEntry> schedule;
    long long orbit_steps = 0;
    int stages_covered = 0;
    double delta = 0.01;
    double fraction_below_delta = 0.0;
    double fraction_threshold = 0.0;  // 1 - 10/2^{n0}
    bool fraction_ok = false;
    double exponent_running = 0.0;
    double exponent_target = 0.0;
    std::vector<double> orbit_values;  // double projection, underflow -> 0
    bool ok() const { return schedule_ok && fraction_ok; }
};

class CounterexampleMap {
public:
    static CounterexampleMap build(const CounterexampleParams& params);

    const CounterexampleParams& params() const { return params_; }
    const std::vector<StageData>& stages() const { return stages_; }
    const StageData& stage(int n) const;

    /// Endpoints of affine branch i (0-based, left to right) of stage n.
    /// Only meaningful while branch positions are resolvable in doubles.
    std::pair<double, double> branch_interval(int n, long long i) const;

    double eval(double x) const;
    double derivative(double x) const;
    /// Log-space evaluation; exact on the affine piece [0, 1/lambda],
    /// delegates to the double path elsewhere.
    LogReal eval_log(const LogReal& x) const;

    ScheduleEntry verify_schedule(int n) const;
    CantorReport cantor_measure(int up_to) const;
    ExponentReport exponent_on_E(int stages) const;
    CertifyReport certify(long long orbit_steps) const;

    SystemSpec as_system() const;

private:
    CounterexampleParams params_;
    double log_lambda_ = 0.0;
    std::vector<StageData> stages_;

    // background blend geometry
    double inv_lambda_ = 0.5;
    double peak_x_ = 0.0;
    double peak_v_ = 0.0;

    double eval_with_deriv(double x, double* deriv) const;
    double eval_blend(double x, double* deriv) const;
    double eval_stage(const StageData& s, double x, double* deriv) const;
};

// Values of the auxiliary C^r tent family: slope +-1 affine branches on
// [1/p, 1/2-1/p] and [1/2+1/p, 1-1/p] mod 1, with order-r flat vanishing at
// 0, 1/2, 1. Exposed for tests.
double tent_family_value(long long p, int r, double u);
double tent_family_derivative(long long p, int r, double u);

// Smoothstep with r flat derivatives at both ends (degree 2r+1 polynomial).
double smoothstep_r(int r, double t);
double smoothstep_r_derivative(int r, double t);

}  // namespace ergolab

#endif
