#include "ergolab/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "ergolab/linalg.hpp"
#include "ergolab/parallel.hpp"
#include "ergolab/rng.hpp"

namespace ergolab {

Partition Partition::uniform(const PhaseSpace& space, int cells_per_axis) {
    std::vector<int> per_axis(static_cast<std::size_t>(space.dim()), cells_per_axis);
    return grid(space, per_axis);
}

Partition Partition::grid(const PhaseSpace& space, const std::vector<int>& cells_per_axis) {
    if (cells_per_axis.empty() || static_cast<int>(cells_per_axis.size()) > space.dim())
        throw std::invalid_argument("partition: need 1.." + std::to_string(space.dim()) + " cell counts");
    Partition p;
    p.space = space;
    p.cells = {1, 1, 1};
    // a single count broadcasts to every axis
    for (int axis = 0; axis < space.dim(); ++axis) {
        const std::size_t i = cells_per_axis.size() == 1 ? 0 : static_cast<std::size_t>(axis);
        if (i >= cells_per_axis.size()) break;
        if (cells_per_axis[i] < 1) throw std::invalid_argument("partition: cell counts must be >= 1");
        p.cells[static_cast<std::size_t>(axis)] = cells_per_axis[i];
    }
    return p;
}

int Partition::atom_count() const {
    int c = 1;
    for (int i = 0; i < space.dim(); ++i) c *= cells[static_cast<std::size_t>(i)];
    return c;
}

int Partition::atom_of(const Point& p) const {
    int idx = 0;
    for (int axis = 0; axis < space.dim(); ++axis) {
        const int c = cells[static_cast<std::size_t>(axis)];
        double u;
        if (space.kind() == PhaseSpace::Kind::interval)
            u = (p[axis] - space.lo()) / (space.hi() - space.lo());
        else
            u = p[axis];
        int cell = static_cast<int>(std::floor(u * c));
        if (cell < 0) cell = 0;
        if (cell >= c) cell = c - 1;
        idx = idx * c + cell;
    }
    return idx;
}

double Partition::diameter() const {
    double d = 0.0;
    for (int axis = 0; axis < space.dim(); ++axis) {
        const int c = cells[static_cast<std::size_t>(axis)];
        double w;
        if (space.kind() == PhaseSpace::Kind::interval)
            w = (space.hi() - space.lo()) / c;
        else
            w = std::min(1.0 / c, 0.5);
        d = std::max(d, w);
    }
    return d;
}

std::vector<int> itinerary(const SystemSpec& sys, const Point& y, const Partition& p, long long n) {
    if (n < 1) throw std::invalid_argument("itinerary: n must be >= 1");
    std::vector<int> code;
    code.reserve(static_cast<std::size_t>(n));
    Point cur = sys.space.reduce(y);
    for (long long l = 0; l < n; ++l) {
        code.push_back(p.atom_of(cur));
        if (l + 1 < n) cur = sys.step(cur);
    }
    return code;
}

double static_entropy(const EmpiricalMeasure& mu, const Partition& p) {
    std::unordered_map<int, double> mass;
    for (std::size_t i = 0; i < mu.support.size(); ++i) mass[p.atom_of(mu.support[i])] += mu.weights[i];
    double h = 0.0;
    for (const auto& [atom, w] : mass)
        if (w > 0.0) h -= w * std::log(w);
    return std::max(0.0, h);
}

namespace {

// Progressive refinement of a weighted partition of items by one symbol per
// level; entropies of the induced grouping can be read off after any level.
class RefinementEntropy {
public:
    explicit RefinementEntropy(std::vector<double> weights)
        : weights_(std::move(weights)), gid_(weights_.size(), 0), group_count_(1) {}

    template <typename SymbolFn>
    void refine(SymbolFn&& symbol_of_item) {
        std::unordered_map<std::uint64_t, std::uint32_t> remap;
        remap.reserve(group_count_ * 2);
        std::uint32_t next = 0;
        for (std::size_t i = 0; i < gid_.size(); ++i) {
            const std::uint64_t key =
                (static_cast<std::uint64_t>(gid_[i]) << 32) | static_cast<std::uint32_t>(symbol_of_item(i));
            auto [it, inserted] = remap.try_emplace(key, next);
            if (inserted) ++next;
            gid_[i] = it->second;
        }
        group_count_ = next;
    }

    double entropy() const {
        std::vector<double> mass(group_count_, 0.0);
        for (std::size_t i = 0; i < gid_.size(); ++i) mass[gid_[i]] += weights_[i];
        double h = 0.0;
        for (double w : mass)
            if (w > 0.0) h -= w * std::log(w);
        return std::max(0.0, h);
    }

private:
    std::vector<double> weights_;
    std::vector<std::uint32_t> gid_;
    std::uint32_t group_count_;
};

}  // namespace

double refined_entropy(const SystemSpec& sys, const EmpiricalMeasure& mu, const Partition& p, long long n) {
    if (n < 1) throw std::invalid_argument("refined_entropy: n must be >= 1");
    RefinementEntropy ref(mu.weights);
    std::vector<Point> pts;
    pts.reserve(mu.support.size());
    for (const auto& q : mu.support) pts.push_back(sys.space.reduce(q));
    for (long long l = 0; l < n; ++l) {
        std::vector<int> sym(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) sym[i] = p.atom_of(pts[i]);
        ref.refine([&sym](std::size_t i) { return sym[i]; });
        if (l + 1 < n)
            for (auto& q : pts) q = sys.step(q);
    }
    return ref.entropy();
}

double misiurewicz_bound(double h_pn_of_mu, long long n, long long m, int card_p) {
    if (n < m || m < 1 || card_p < 1) throw std::invalid_argument("misiurewicz_bound: require n >= m >= 1, #P >= 1");
    return (h_pn_of_mu - 3.0 * static_cast<double>(m) * std::log(static_cast<double>(card_p))) /
           static_cast<double>(n);
}

EntropyEstimate entropy_estimate(const SystemSpec& sys, const Point& x, long long n, const Partition& p,
                                 const std::vector<long long>& m_list) {
    if (n < 1) throw std::invalid_argument("entropy_estimate: n must be >= 1");
    if (m_list.empty()) throw std::invalid_argument("entropy_estimate: m_list must be nonempty");
    std::vector<long long> ms(m_list);
    std::sort(ms.begin(), ms.end());
    if (ms.front() < 1) throw std::invalid_argument("entropy_estimate: every m must be >= 1");
    const long long max_m = ms.back();

    // atom sequence of one long orbit; window i of length m codes the
    // P^m-address of orbit point i
    std::vector<int> atoms;
    atoms.reserve(static_cast<std::size_t>(n + max_m - 1));
    Point cur = sys.space.reduce(x);
    for (long long k = 0; k < n + max_m - 1; ++k) {
        atoms.push_back(p.atom_of(cur));
        if (k + 1 < n + max_m - 1) cur = sys.step(cur);
    }

    EntropyEstimate out;
    out.m_list = ms;
    const double ln_n = std::log(static_cast<double>(n));
    out.undersampled = ln_n < std::log(10.0) + static_cast<double>(max_m) * std::log(static_cast<double>(p.atom_count()));

    RefinementEntropy ref(std::vector<double>(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n)));
    out.estimate = std::numeric_limits<double>::infinity();
    std::size_t next = 0;
    for (long long level = 0; level < max_m && next < ms.size(); ++level) {
        ref.refine([&atoms, level](std::size_t i) { return atoms[i + static_cast<std::size_t>(level)]; });
        while (next < ms.size() && ms[next] == level + 1) {
            const double val = ref.entropy() / static_cast<double>(level + 1);
            out.curve.push_back(val);
            out.estimate = std::min(out.estimate, val);
            ++next;
        }
    }
    return out;
}

bool dynamical_ball_contains(const SystemSpec& sys, const Point& x, const Point& y, long long n, double alpha) {
    if (n < 1 || alpha <= 0.0) throw std::invalid_argument("dynamical_ball_contains: require n >= 1, alpha > 0");
    return orbit_distance(sys, x, y, n) < alpha;
}

namespace {

std::vector<Point> uniform_grid(const PhaseSpace& space, double step) {
    std::vector<Point> grid;
    if (space.kind() == PhaseSpace::Kind::interval) {
        const long long count = static_cast<long long>(std::floor((space.hi() - space.lo()) / step));
        for (long long i = 0; i < count; ++i)
            grid.push_back(Point(space.lo() + (static_cast<double>(i) + 0.5) * step));
        return grid;
    }
    const long long per_axis = static_cast<long long>(std::floor(1.0 / step));
    if (space.dim() == 1) {
        for (long long i = 0; i < per_axis; ++i) grid.push_back(Point((i + 0.5) * step));
    } else if (space.dim() == 2) {
        for (long long i = 0; i < per_axis; ++i)
            for (long long j = 0; j < per_axis; ++j)
                grid.push_back(Point((i + 0.5) * step, (j + 0.5) * step));
    } else {
        for (long long i = 0; i < per_axis; ++i)
            for (long long j = 0; j < per_axis; ++j)
                for (long long k = 0; k < per_axis; ++k)
                    grid.push_back(Point((i + 0.5) * step, (j + 0.5) * step, (k + 0.5) * step));
    }
    return grid;
}

}  // namespace

double separated_entropy(const SystemSpec& sys, long long n, double alpha, double grid_step) {
    if (n < 1 || alpha <= 0.0) throw std::invalid_argument("separated_entropy: require n >= 1, alpha > 0");
    if (!(grid_step < alpha)) throw std::invalid_argument("separated_entropy: grid_step must be < alpha");
    const std::vector<Point> grid = uniform_grid(sys.space, grid_step);
    if (grid.size() > 20000000ULL) throw std::invalid_argument("separated_entropy: grid too fine");

    // kept orbits, bucketed by first coordinate at width alpha so only
    // spatial alpha-neighbours need the full Bowen comparison
    const double span = sys.space.kind() == PhaseSpace::Kind::interval
                            ? sys.space.hi() - sys.space.lo()
                            : 1.0;
    const int buckets = std::max(1, static_cast<int>(std::floor(span / alpha)));
    std::vector<std::vector<std::size_t>> bucket_of(static_cast<std::size_t>(buckets));
    std::vector<std::vector<Point>> kept_orbits;
    const bool wrap = sys.space.kind() == PhaseSpace::Kind::torus;

    auto bucket_index = [&](const Point& p) {
        const double t = sys.space.kind() == PhaseSpace::Kind::interval ? (p[0] - sys.space.lo()) / span : p[0];
        int b = static_cast<int>(std::floor(t * buckets));
        if (b < 0) b = 0;
        if (b >= buckets) b = buckets - 1;
        return b;
    };

    for (const Point& cand : grid) {
        const std::vector<Point> orbit = iterate(sys, cand, n - 1);
        bool separated = true;
        const int b = bucket_index(cand);
        for (int off = -1; off <= 1 && separated; ++off) {
            int bb = b + off;
            if (wrap)
                bb = (bb + buckets) % buckets;
            else if (bb < 0 || bb >= buckets)
                continue;
            for (std::size_t idx : bucket_of[static_cast<std::size_t>(bb)]) {
                const std::vector<Point>& other = kept_orbits[idx];
                double best = 0.0;
                for (long long l = 0; l < n; ++l) {
                    best = std::max(best, sys.space.distance(orbit[static_cast<std::size_t>(l)],
                                                             other[static_cast<std::size_t>(l)]));
                    if (best >= alpha) break;
                }
                if (best < alpha) {
                    separated = false;
                    break;
                }
            }
        }
        if (separated) {
            bucket_of[static_cast<std::size_t>(b)].push_back(kept_orbits.size());
            kept_orbits.push_back(orbit);
        }
    }
    return std::log(static_cast<double>(kept_orbits.size())) / static_cast<double>(n);
}

double kozlovski_estimate(const SystemSpec& sys, long long n, int sample_count, std::uint64_t seed) {
    if (n < 1 || sample_count < 1) throw std::invalid_argument("kozlovski_estimate: require n >= 1, samples >= 1");
    const int d = sys.space.dim();
    std::vector<double> log_terms(static_cast<std::size_t>(sample_count));
    parallel_for(sample_count, [&](int i) {
        Rng rng = Rng::for_sample(seed, static_cast<std::uint64_t>(i));
        const Point x = sys.space.sample(rng);
        ScaledFrame frame(d);
        Point cur = x;
        for (long long k = 0; k < n; ++k) {
            frame.push_left(sys.jacobian(cur));
            cur = sys.step(cur);
        }
        const auto& logs = frame.log_singular_values();
        double best = -std::numeric_limits<double>::infinity();
        double prefix = 0.0;
        for (int k = 0; k < d; ++k) {
            prefix += logs[static_cast<std::size_t>(k)];
            best = std::max(best, prefix);
        }
        log_terms[static_cast<std::size_t>(i)] = best;
    });
    // log-sum-exp, reduced in sample order
    const double mx = *std::max_element(log_terms.begin(), log_terms.end());
    if (!std::isfinite(mx)) return mx;
    double s = 0.0;
    for (double t : log_terms) s += std::exp(t - mx);
    const double lse = mx + std::log(s);
    return (lse - std::log(static_cast<double>(sample_count))) / static_cast<double>(n);
}

double F_function(double t) {
    if (t < 1.0) throw std::domain_error("F_function: t must be >= 1");
    if (t == 1.0) return 0.0;
    return t * std::log(t) - (t - 1.0) * std::log(t - 1.0);
}

AdmissibleCount count_admissible(const std::vector<double>& one_block_logs, double a_threshold,
                                 int floor_guard) {
    if (one_block_logs.empty()) throw std::invalid_argument("count_admissible: need at least one block");
    const int m = static_cast<int>(one_block_logs.size());

    const long long lo = static_cast<long long>(std::ceil(a_threshold)) - floor_guard;
    std::vector<long long> hi(one_block_logs.size());
    for (std::size_t l = 0; l < one_block_logs.size(); ++l)
        hi[l] = static_cast<long long>(std::ceil(one_block_logs[l])) + 1;

    double mean = 0.0;
    for (double v : one_block_logs) mean += v;
    mean /= m;
    AdmissibleCount out;
    out.f_argument = mean + 2.0 - a_threshold;
    out.bound = out.f_argument >= 1.0 ? std::exp(m * F_function(out.f_argument))
                                      : std::numeric_limits<double>::infinity();

    const long long thr = static_cast<long long>(std::ceil(static_cast<double>(m) * a_threshold - 1e-9));
    // b_l = hi_l - a_l >= 0; admissible iff sum b <= S
    long long s_cap = -thr;
    for (long long h : hi) {
        if (h < lo) {  // empty per-block range
            out.count = 0;
            return out;
        }
        s_cap += h;
    }
    if (s_cap < 0) {
        out.count = 0;
        return out;
    }
    long long span_cap = 0;
    for (long long h : hi) span_cap += h - lo;
    const long long s = std::min(s_cap, span_cap);
    if (s > 2000000LL)
        throw std::runtime_error("count_admissible: enumeration cutoff exceeded (m * range too large), "
                                 "use a smaller m or tighter threshold");

    std::vector<unsigned long long> ways(static_cast<std::size_t>(s) + 1, 0);
    ways[0] = 1;
    for (int l = 0; l < m; ++l) {
        const long long r = hi[static_cast<std::size_t>(l)] - lo;  // b_l in [0, r]
        std::vector<unsigned long long> next(ways.size(), 0);
        unsigned long long window = 0;
        for (long long j = 0; j <= s; ++j) {
            if (__builtin_add_overflow(window, ways[static_cast<std::size_t>(j)], &window))
                throw std::runtime_error("count_admissible: count overflow, use a smaller m");
            if (j - r - 1 >= 0) window -= ways[static_cast<std::size_t>(j - r - 1)];
            next[static_cast<std::size_t>(j)] = window;
        }
        ways.swap(next);
    }
    unsigned long long total = 0;
    for (unsigned long long w : ways)
        if (__builtin_add_overflow(total, w, &total))
            throw std::runtime_error("count_admissible: count overflow, use a smaller m");
    out.count = total;
    return out;
}

}  // namespace ergolab
