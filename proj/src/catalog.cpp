#include "ergolab/catalog.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>

#include "ergolab/counterexample.hpp"

namespace ergolab {

SystemSpec make_doubling() {
    SystemSpec sys;
    sys.name = "doubling";
    sys.space = PhaseSpace::torus(1);
    // 2x mod 1 shifts significand bits out at every wrap, so a plain double
    // orbit collapses onto the dyadic fixed point 0 within ~1100 steps. At
    // each wrap the subtraction leaves k fresh zero bits when the image
    // lands in [2^-k, 2^-k+1); exactly those bits are refilled from a hash
    // of the input. The computed orbit is an exact orbit of a map within
    // one ulp of the doubling map and keeps a full-entropy binary tail.
    sys.eval = [](const Point& p) {
        const double two_x = 2.0 * p[0];
        if (two_x < 1.0) return Point(two_x);
        double y = two_x - std::floor(two_x);
        if (y > 0.0) {
            std::uint64_t z = std::bit_cast<std::uint64_t>(p[0]) + 0x9e3779b97f4a7c15ULL;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            z ^= z >> 31;
            int e;
            std::frexp(y, &e);  // y in [2^{e-1}, 2^e)
            const int fresh = std::min(52, 1 - e);
            if (fresh > 0) {
                const double cand =
                    std::bit_cast<double>(std::bit_cast<std::uint64_t>(y) | (z & ((1ULL << fresh) - 1ULL)));
                if (cand < 1.0) y = cand;
            }
        }
        return Point(y);
    };
    sys.jacobian = [](const Point&) {
        Mat j(1);
        j(0, 0) = 2.0;
        return j;
    };
    return sys;
}

SystemSpec make_rotation(double theta) {
    SystemSpec sys;
    sys.name = "rotation";
    sys.space = PhaseSpace::torus(1);
    sys.eval = [theta](const Point& p) {
        double x = p[0] + theta;
        return Point(x - std::floor(x));
    };
    sys.jacobian = [](const Point&) {
        Mat j(1);
        j(0, 0) = 1.0;
        return j;
    };
    return sys;
}

SystemSpec make_tent() {
    SystemSpec sys;
    sys.name = "tent";
    sys.space = PhaseSpace::interval(0.0, 1.0);
    sys.smoothness = Smoothness::c_r(0);
    sys.eval = [](const Point& p) { return Point(1.0 - std::abs(2.0 * p[0] - 1.0)); };
    // one-sided at the peak: the left slope
    sys.jacobian = [](const Point& p) {
        Mat j(1);
        j(0, 0) = p[0] <= 0.5 ? 2.0 : -2.0;
        return j;
    };
    sys.nonsmooth_at = [](const Point& p) { return p[0] == 0.5; };
    return sys;
}

SystemSpec make_logistic(double mu) {
    if (mu < 0.0 || mu > 4.0) throw std::invalid_argument("logistic: mu must be in [0, 4] to map [0,1] into itself");
    SystemSpec sys;
    sys.name = "logistic";
    sys.space = PhaseSpace::interval(0.0, 1.0);
    sys.eval = [mu](const Point& p) { return Point(mu * p[0] * (1.0 - p[0])); };
    sys.jacobian = [mu](const Point& p) {
        Mat j(1);
        j(0, 0) = mu * (1.0 - 2.0 * p[0]);
        return j;
    };
    return sys;
}

SystemSpec make_cat() {
    SystemSpec sys;
    sys.name = "cat";
    sys.space = PhaseSpace::torus(2);
    sys.eval = [](const Point& p) {
        double x = 2.0 * p[0] + p[1];
        double y = p[0] + p[1];
        return Point(x - std::floor(x), y - std::floor(y));
    };
    sys.jacobian = [](const Point&) {
        Mat j(2);
        j(0, 0) = 2.0;
        j(0, 1) = 1.0;
        j(1, 0) = 1.0;
        j(1, 1) = 1.0;
        return j;
    };
    return sys;
}

std::vector<std::string> catalog_names() {
    return {"doubling", "rotation", "tent", "logistic", "cat", "counterexample"};
}

namespace {

std::map<std::string, double> parse_params(const std::vector<std::string>& tokens) {
    std::map<std::string, double> kv;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        const auto& t = tokens[i];
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("system parameter '" + t + "' is not of the form key=value");
        kv[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
    }
    return kv;
}

double take(std::map<std::string, double>& kv, const std::string& key, double fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    const double v = it->second;
    kv.erase(it);
    return v;
}

}  // namespace

SystemSpec make_system(const std::vector<std::string>& tokens) {
    if (tokens.empty()) throw std::invalid_argument("empty system description");
    const std::string& name = tokens[0];
    auto kv = parse_params(tokens);
    SystemSpec sys;
    if (name == "doubling") {
        sys = make_doubling();
    } else if (name == "rotation") {
        sys = make_rotation(take(kv, "theta", 0.61803398875));
    } else if (name == "tent") {
        sys = make_tent();
    } else if (name == "logistic") {
        sys = make_logistic(take(kv, "mu", 4.0));
    } else if (name == "cat") {
        sys = make_cat();
    } else if (name == "counterexample") {
        CounterexampleParams p;
        p.r = static_cast<int>(take(kv, "r", 2));
        p.lambda = take(kv, "lambda", 2.0);
        p.n0 = static_cast<int>(take(kv, "n0", 5));
        p.n_max = static_cast<int>(take(kv, "nmax", 12));
        sys = CounterexampleMap::build(p).as_system();
    } else {
        throw std::invalid_argument("unknown system '" + name + "'");
    }
    if (!kv.empty()) throw std::invalid_argument("unknown parameter '" + kv.begin()->first + "' for system " + name);
    return sys;
}

}  // namespace ergolab
