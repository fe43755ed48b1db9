#include "ergolab/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

namespace ergolab {

namespace {

double top_j(int n) { return 1.0 - 1.0 / n; }
double bot_j(int n) { return 1.0 - 1.0 / n - 1.0 / (2.0 * n * n); }
double len_j(int n) { return 1.0 / (2.0 * n * n); }

double binom(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

long long ipow_ll(int base, int exp) {
    long long v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v > (1LL << 62) / base)
            throw std::invalid_argument("counterexample: r^n exceeds 2^62, parameters too extreme");
        v *= base;
    }
    return v;
}

constexpr double kResolvableScale = 1e13;  // finer branch structure is below double resolution

}  // namespace

double smoothstep_r(int r, double t) {
    t = std::clamp(t, 0.0, 1.0);
    const int m = 2 * r + 1;
    double s = 0.0;
    for (int k = r + 1; k <= m; ++k)
        s += binom(m, k) * std::pow(t, k) * std::pow(1.0 - t, m - k);
    return s;
}

double smoothstep_r_derivative(int r, double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return (2 * r + 1) * binom(2 * r, r) * std::pow(t, r) * std::pow(1.0 - t, r);
}

// One period of the C^r tent family: slope +-1 branches on
// [1/p, 1/2-1/p] and [1/2+1/p, 1-1/p], order-r flat zeros at 0, 1/2, 1.
// Values stay in [0, 1/2] because both joins are damped copies of u.
double tent_family_value(long long p, int r, double u) {
    if (u < 0.0 || u >= 1.0) u -= std::floor(u);
    if (u > 0.5) u = 1.0 - u;
    const double pd = static_cast<double>(p);
    const double ip = 1.0 / pd;
    if (u <= ip) return u * smoothstep_r(r, u * pd);
    if (u <= 0.5 - ip) return u;
    return u * (1.0 - smoothstep_r(r, (u - (0.5 - ip)) * pd));
}

double tent_family_derivative(long long p, int r, double u) {
    if (u < 0.0 || u >= 1.0) u -= std::floor(u);
    bool mirror = false;
    if (u > 0.5) {
        u = 1.0 - u;
        mirror = true;
    }
    const double pd = static_cast<double>(p);
    const double ip = 1.0 / pd;
    double d;
    if (u <= ip) {
        d = smoothstep_r(r, u * pd) + u * pd * smoothstep_r_derivative(r, u * pd);
    } else if (u <= 0.5 - ip) {
        d = 1.0;
    } else {
        const double t = (u - (0.5 - ip)) * pd;
        d = (1.0 - smoothstep_r(r, t)) - u * pd * smoothstep_r_derivative(r, t);
    }
    return mirror ? -d : d;
}

CounterexampleMap CounterexampleMap::build(const CounterexampleParams& params) {
    if (params.r == 1)
        throw std::invalid_argument("counterexample: r = 1 rejected, the transit schedule r^n - 1 degenerates");
    if (params.r < 2 || params.r > 20) throw std::invalid_argument("counterexample: require 2 <= r <= 20");
    if (!(params.lambda > 1.0)) throw std::invalid_argument("counterexample: require lambda > 1");
    if (params.n0 < 3) throw std::invalid_argument("counterexample: require n0 >= 3 so that 1/2 - 2/n^2 > 0");
    if (params.n_max < params.n0) throw std::invalid_argument("counterexample: require n_max >= n0");
    ipow_ll(params.r, params.n_max);  // overflow guard

    CounterexampleMap map;
    map.params_ = params;
    map.log_lambda_ = std::log(params.lambda);
    map.inv_lambda_ = 1.0 / params.lambda;

    if (!(map.inv_lambda_ < bot_j(params.n0) - 1e-6))
        throw std::invalid_argument("counterexample: [0,1/lambda] overlaps J_{n0}; increase lambda or n0");

    const double L = map.log_lambda_;
    for (int n = params.n0; n <= params.n_max; ++n) {
        StageData s;
        s.n = n;
        s.j_lo = bot_j(n);
        s.j_hi = top_j(n);
        const long long rn = ipow_ll(params.r, n);
        s.transit_steps = rn - 1;

        const double nn = static_cast<double>(n);
        const double half_minus = 0.5 - 2.0 / (nn * nn);
        const double log_alpha =
            -static_cast<double>(rn - 1) * L - std::log(2.0 * (nn + 1.0) * (nn + 1.0)) - std::log(half_minus);
        s.alpha = LogReal::from_log(log_alpha);

        // N_n solves the C^r-norm condition n^{2r} alpha (2 n^2 N)^r = 1/n
        const double log_scale_target =
            (-(2.0 * params.r + 1.0) * std::log(nn) - log_alpha) / static_cast<double>(params.r);
        const double log_n_real = log_scale_target - std::log(2.0 * nn * nn);
        if (log_n_real < std::log(0.5))
            throw std::runtime_error("counterexample: N_n rounds to zero at stage " + std::to_string(n) +
                                     ", parameters too extreme");
        if (log_n_real <= std::log(9.0e15)) {
            s.N = std::llround(std::exp(log_n_real));
            if (s.N < 1) s.N = 1;
            s.N_exact = true;
            s.log_N = std::log(static_cast<double>(s.N));
        } else {
            s.N_exact = false;
            s.log_N = log_n_real;
        }
        s.log_scale = std::log(2.0 * nn * nn) + s.log_N;

        s.g_val = LogReal::from_log(std::log1p(-1.0 / (nn + 1.0)) - static_cast<double>(rn - 1) * L);
        const double p = nn * nn;
        s.offset = s.g_val - s.alpha * LogReal::from_double(0.5 - 1.0 / p);
        s.branch_image_hi = s.g_val;
        s.branch_image_lo = s.g_val - s.alpha * LogReal::from_double(0.5 - 2.0 / p);
        if (!(s.offset.sign() > 0) || !(s.branch_image_lo.sign() > 0))
            throw std::runtime_error("counterexample: degenerate stage geometry at stage " + std::to_string(n));

        s.crnorm_proxy = std::exp(2.0 * params.r * std::log(nn) + log_alpha + params.r * s.log_scale);
        s.branch_fraction = 2.0 * (0.5 - 2.0 / p);
        map.stages_.push_back(s);
    }

    // background blend anchors between the affine piece and the first stage
    const double gap = bot_j(params.n0) - map.inv_lambda_;
    const double rise = std::min({0.05, 0.2 / params.lambda, gap / 3.0});
    map.peak_x_ = map.inv_lambda_ + rise;
    map.peak_v_ = 1.0 + 0.5 * params.lambda * rise;
    return map;
}

const StageData& CounterexampleMap::stage(int n) const {
    if (n < params_.n0 || n > params_.n_max) throw std::invalid_argument("stage index out of range");
    return stages_[static_cast<std::size_t>(n - params_.n0)];
}

std::pair<double, double> CounterexampleMap::branch_interval(int n, long long i) const {
    const StageData& s = stage(n);
    if (!s.N_exact)
        throw std::runtime_error("branch positions below double resolution at stage " + std::to_string(n));
    if (i < 0 || i >= 2 * s.N) throw std::invalid_argument("branch index out of range");
    const double p = static_cast<double>(n) * n;
    const double scale = std::exp(s.log_scale);
    const double base = -static_cast<double>(s.N) + static_cast<double>(i / 2);
    double ulo, uhi;
    if (i % 2 == 0) {
        ulo = base + 1.0 / p;
        uhi = base + 0.5 - 1.0 / p;
    } else {
        ulo = base + 0.5 + 1.0 / p;
        uhi = base + 1.0 - 1.0 / p;
    }
    return {s.j_hi + ulo / scale, s.j_hi + uhi / scale};
}

double CounterexampleMap::eval_stage(const StageData& s, double x, double* deriv) const {
    if (!s.N_exact || s.log_scale > std::log(kResolvableScale)) {
        if (deriv) *deriv = 0.0;
        return (s.offset + s.alpha * LogReal::from_double(0.25)).to_double();
    }
    const double scale = std::exp(s.log_scale);
    const long long p = static_cast<long long>(s.n) * s.n;
    const double u = (x - s.j_hi) * scale;
    double w = u - std::floor(u);
    if (w >= 1.0) w = 0.0;
    const double f = tent_family_value(p, params_.r, w);
    if (deriv) *deriv = s.alpha.to_double() * scale * tent_family_derivative(p, params_.r, w);
    return s.offset.to_double() + s.alpha.to_double() * f;
}

double CounterexampleMap::eval_blend(double x, double* deriv) const {
    const int r = params_.r;
    if (x <= peak_x_) {  // rising blend off the affine piece
        const double len = peak_x_ - inv_lambda_;
        const double t = (x - inv_lambda_) / len;
        const double s = smoothstep_r(r, t);
        const double sp = smoothstep_r_derivative(r, t) / len;
        if (deriv)
            *deriv = params_.lambda * (1.0 - s) - params_.lambda * (x - inv_lambda_) * sp + (peak_v_ - 1.0) * sp;
        return 1.0 + params_.lambda * (x - inv_lambda_) * (1.0 - s) + (peak_v_ - 1.0) * s;
    }
    // descending step between two flat levels
    double x0 = peak_x_, x1 = bot_j(params_.n0);
    double v0 = peak_v_, v1 = stages_.front().offset.to_double();
    if (x > x1) {
        bool found = false;
        for (std::size_t i = 0; i < stages_.size() && !found; ++i) {
            const StageData& s = stages_[i];
            const bool last = i + 1 == stages_.size();
            if (x <= (last ? 1.0 : bot_j(s.n + 1)) && x >= s.j_hi) {
                x0 = s.j_hi;
                x1 = last ? 1.0 : bot_j(s.n + 1);
                v0 = s.offset.to_double();
                v1 = last ? 0.0 : stages_[i + 1].offset.to_double();
                found = true;
            }
        }
        if (!found) {  // x in [1, 3/2]
            if (deriv) *deriv = 0.0;
            return 0.0;
        }
    }
    const double len = x1 - x0;
    const double t = (x - x0) / len;
    if (deriv) *deriv = (v1 - v0) * smoothstep_r_derivative(r, t) / len;
    return v0 + (v1 - v0) * smoothstep_r(r, t);
}

double CounterexampleMap::eval_with_deriv(double x, double* deriv) const {
    if (x < -1e-12 || x > 1.5 + 1e-12) throw std::invalid_argument("eval: x must be in [0, 3/2]");
    x = std::clamp(x, 0.0, 1.5);
    if (x <= inv_lambda_) {
        if (deriv) *deriv = params_.lambda;
        return params_.lambda * x;
    }
    if (x >= 1.0) {
        if (deriv) *deriv = 0.0;
        return 0.0;
    }
    for (const StageData& s : stages_)
        if (x >= s.j_lo && x <= s.j_hi) return eval_stage(s, x, deriv);
    return eval_blend(x, deriv);
}

double CounterexampleMap::eval(double x) const { return eval_with_deriv(x, nullptr); }

double CounterexampleMap::derivative(double x) const {
    double d = 0.0;
    eval_with_deriv(x, &d);
    return d;
}

LogReal CounterexampleMap::eval_log(const LogReal& x) const {
    if (x.is_zero()) return LogReal();
    if (x.sign() < 0) throw std::invalid_argument("eval_log: x must be in [0, 3/2]");
    if (x.log_abs() <= -log_lambda_) return LogReal::from_log(x.log_abs() + log_lambda_, 1);
    return LogReal::from_double(eval(x.to_double()));
}

ScheduleEntry CounterexampleMap::verify_schedule(int n) const {
    if (n < params_.n0 || n >= params_.n_max)
        throw std::invalid_argument("verify_schedule: require n0 <= n < n_max");
    const StageData& s = stage(n);
    const double L = log_lambda_;
    ScheduleEntry e;
    e.n = n;
    e.transit_steps = s.transit_steps;
    e.landing_lo = bot_j(n + 1);
    e.landing_hi = top_j(n + 1);

    // containment: image * lambda^{k-1} <= 1/lambda for k = 1..r^n - 1
    const double max_log = s.branch_image_hi.log_abs() + static_cast<double>(s.transit_steps - 1) * L;
    if (max_log > -L + 1e-12) {
        e.contained = false;
        const double kv = std::floor((-L - s.branch_image_hi.log_abs()) / L) + 2.0;
        e.first_violation = static_cast<long long>(std::max(1.0, kv));
    }
    const double final_lo = s.branch_image_lo.log_abs() + static_cast<double>(s.transit_steps) * L;
    const double final_hi = s.branch_image_hi.log_abs() + static_cast<double>(s.transit_steps) * L;
    e.landing_err_lo = std::abs(final_lo - std::log(e.landing_lo));
    e.landing_err_hi = std::abs(final_hi - std::log(e.landing_hi));
    e.landed = e.landing_err_lo <= 1e-9 && e.landing_err_hi <= 1e-9;
    return e;
}

CantorReport CounterexampleMap::cantor_measure(int up_to) const {
    if (up_to < params_.n0) throw std::invalid_argument("cantor_measure: up_to must be >= n0");
    CantorReport rep;
    rep.up_to = up_to;
    const int n0 = params_.n0;
    rep.leb_E_n0 = len_j(n0) * (1.0 - 4.0 / (static_cast<double>(n0) * n0));
    double prod = 1.0;
    for (int n = n0 + 1; n <= up_to; ++n) prod *= 1.0 - 4.0 / (static_cast<double>(n) * n);
    rep.partial_product = prod;
    rep.partial_measure = rep.leb_E_n0 * prod;
    // telescoping: 1 - 4/n^2 = (n-2)(n+2)/n^2, partial products collapse
    const double a = n0 + 1.0;
    rep.limit_product = (a - 2.0) * (a - 1.0) / (a * (a + 1.0));
    rep.limit_measure = rep.leb_E_n0 * rep.limit_product;
    return rep;
}

ExponentReport CounterexampleMap::exponent_on_E(int stages) const {
    if (stages < 1) throw std::invalid_argument("exponent_on_E: stages must be >= 1");
    const int last = std::min(params_.n0 + stages - 1, params_.n_max);
    ExponentReport rep;
    rep.first_stage = params_.n0;
    rep.last_stage = last;
    rep.target = log_lambda_ / params_.r;
    double num = 0.0, den = 0.0, tnum = 0.0;
    for (int n = params_.n0; n <= last; ++n) {
        const StageData& s = stage(n);
        const double branch_ld = s.alpha.log_abs() + s.log_scale;
        const double steps = static_cast<double>(s.transit_steps) + 1.0;
        const double stage_ld = static_cast<double>(s.transit_steps) * log_lambda_ + branch_ld;
        num += stage_ld;
        den += steps;
        tnum += (steps / params_.r) * log_lambda_;  // r^{n-1} log(lambda) per stage
        StageExponent se;
        se.n = n;
        se.stage_log_deriv = stage_ld;
        se.stage_steps = steps;
        se.running_ratio = num / den;
        se.telescoped_ratio = tnum / den;
        rep.per_stage.push_back(se);
    }
    rep.accumulated = num / den;
    rep.telescoped = tnum / den;
    return rep;
}

CertifyReport CounterexampleMap::certify(long long orbit_steps) const {
    if (params_.n_max < params_.n0 + 2)
        throw std::invalid_argument("certify: need at least 3 built stages");
    long long three = 0;
    for (int n = params_.n0; n <= params_.n0 + 2; ++n) three += ipow_ll(params_.r, n);
    if (orbit_steps < three)
        throw std::invalid_argument("certify: orbit_steps must cover at least 3 full stages (" +
                                    std::to_string(three) + ")");
    if (orbit_steps > 100000000LL) throw std::invalid_argument("certify: orbit_steps too large");

    CertifyReport rep;
    rep.delta = 0.01;
    rep.fraction_threshold = 1.0 - 10.0 / std::pow(2.0, params_.n0);
    rep.exponent_target = log_lambda_ / params_.r;

    rep.schedule_ok = true;
    for (int n = params_.n0; n < params_.n_max; ++n) {
        rep.schedule.push_back(verify_schedule(n));
        if (!rep.schedule.back().ok()) rep.schedule_ok = false;
    }

    // symbolic E-orbit: per stage, the left endpoint of the first affine
    // branch, its image under the branch step, then the lambda-transit
    const double log_delta = std::log(rep.delta);
    long long below = 0, taken = 0;
    double sum_logderiv = 0.0;
    int full_stages = 0;
    rep.orbit_values.reserve(static_cast<std::size_t>(std::min(orbit_steps, 4000000LL)));
    for (int n = params_.n0; n <= params_.n_max && taken < orbit_steps; ++n) {
        const StageData& s = stage(n);
        rep.orbit_values.push_back(s.j_lo);
        if (std::log(s.j_lo) < log_delta) ++below;
        sum_logderiv += s.alpha.log_abs() + s.log_scale;
        ++taken;
        LogReal v = s.branch_image_lo;
        long long k = 0;
        for (; k < s.transit_steps && taken < orbit_steps; ++k) {
            rep.orbit_values.push_back(v.to_double());
            if (v.log_abs() < log_delta) ++below;
            sum_logderiv += log_lambda_;
            ++taken;
            v = LogReal::from_log(v.log_abs() + log_lambda_, 1);
        }
        if (k == s.transit_steps) full_stages = n - params_.n0 + 1;
    }
    rep.orbit_steps = taken;
    rep.stages_covered = full_stages;
    rep.fraction_below_delta = static_cast<double>(below) / static_cast<double>(taken);
    rep.fraction_ok = rep.fraction_below_delta > rep.fraction_threshold;
    rep.exponent_running = sum_logderiv / static_cast<double>(taken);
    return rep;
}

SystemSpec CounterexampleMap::as_system() const {
    auto self = std::make_shared<CounterexampleMap>(*this);
    SystemSpec sys;
    sys.name = "counterexample";
    sys.space = PhaseSpace::interval(0.0, 1.5);
    sys.smoothness = Smoothness::c_r(params_.r);
    sys.eval = [self](const Point& p) { return Point(self->eval(p[0])); };
    sys.jacobian = [self](const Point& p) {
        Mat j(1);
        j(0, 0) = self->derivative(p[0]);
        return j;
    };
    return sys;
}

}  // namespace ergolab
