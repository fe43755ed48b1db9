#include "ergolab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ergolab/parallel.hpp"
#include "ergolab/rng.hpp"

namespace ergolab {

TestFunctionFamily TestFunctionFamily::make_default(const PhaseSpace& space, int count) {
    if (count < 1) throw std::invalid_argument("test family: count must be >= 1");
    TestFunctionFamily fam;
    fam.space_ = space;
    const int d = space.dim();
    fam.atoms_.push_back(Atom{});  // constant 1

    // frequency vectors with positive leading nonzero entry, by max norm
    // then lexicographic order; each yields a cos atom then a sin atom
    for (int radius = 1; static_cast<int>(fam.atoms_.size()) < count; ++radius) {
        std::vector<std::array<int, 3>> freqs;
        const int lo = -radius, hi = radius;
        for (int a = lo; a <= hi; ++a)
            for (int b = (d >= 2 ? lo : 0); b <= (d >= 2 ? hi : 0); ++b)
                for (int c = (d >= 3 ? lo : 0); c <= (d >= 3 ? hi : 0); ++c) {
                    std::array<int, 3> f{a, b, c};
                    int maxn = std::max({std::abs(a), std::abs(b), std::abs(c)});
                    if (maxn != radius) continue;
                    int lead = 0;
                    for (int i = 0; i < 3; ++i)
                        if (f[static_cast<std::size_t>(i)] != 0) { lead = f[static_cast<std::size_t>(i)]; break; }
                    if (lead <= 0) continue;  // dedup k vs -k
                    freqs.push_back(f);
                }
        std::sort(freqs.begin(), freqs.end());
        for (const auto& f : freqs) {
            if (static_cast<int>(fam.atoms_.size()) >= count) break;
            fam.atoms_.push_back(Atom{f, false});
            if (static_cast<int>(fam.atoms_.size()) >= count) break;
            fam.atoms_.push_back(Atom{f, true});
        }
        if (radius > 64) throw std::logic_error("test family: radius runaway");
    }
    return fam;
}

double TestFunctionFamily::eval(int i, const Point& x) const {
    const Atom& a = atoms_[static_cast<std::size_t>(i)];
    if (a.freq[0] == 0 && a.freq[1] == 0 && a.freq[2] == 0) return 1.0;
    double phase = 0.0;
    for (int c = 0; c < space_.dim(); ++c) {
        double t = x[c];
        if (space_.kind() == PhaseSpace::Kind::interval)
            t = (t - space_.lo()) / (space_.hi() - space_.lo());
        phase += a.freq[static_cast<std::size_t>(c)] * t;
    }
    phase *= 2.0 * std::numbers::pi;
    return a.is_sin ? std::sin(phase) : std::cos(phase);
}

EmpiricalMeasure EmpiricalMeasure::dirac(const Point& x) {
    EmpiricalMeasure m;
    m.support.push_back(x);
    m.weights.push_back(1.0);
    return m;
}

namespace {

EmpiricalMeasure merge_weighted(std::vector<std::pair<Point, double>> pts) {
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    EmpiricalMeasure m;
    for (const auto& [p, w] : pts) {
        if (!m.support.empty() && m.support.back() == p)
            m.weights.back() += w;
        else {
            m.support.push_back(p);
            m.weights.push_back(w);
        }
    }
    return m;
}

}  // namespace

EmpiricalMeasure EmpiricalMeasure::from_points(std::vector<Point> pts) {
    if (pts.empty()) throw std::invalid_argument("empirical measure: empty support");
    const double w = 1.0 / static_cast<double>(pts.size());
    std::vector<std::pair<Point, double>> weighted;
    weighted.reserve(pts.size());
    for (auto& p : pts) weighted.emplace_back(p, w);
    return merge_weighted(std::move(weighted));
}

EmpiricalMeasure EmpiricalMeasure::mix(const std::vector<EmpiricalMeasure>& parts) {
    if (parts.empty()) throw std::invalid_argument("mix: empty list");
    std::vector<std::pair<Point, double>> weighted;
    const double scale = 1.0 / static_cast<double>(parts.size());
    for (const auto& m : parts)
        for (std::size_t i = 0; i < m.support.size(); ++i)
            weighted.emplace_back(m.support[i], m.weights[i] * scale);
    return merge_weighted(std::move(weighted));
}

double EmpiricalMeasure::integrate(const TestFunctionFamily& fam, int i) const {
    double s = 0.0;
    for (std::size_t j = 0; j < support.size(); ++j) s += weights[j] * fam.eval(i, support[j]);
    return s;
}

EmpiricalMeasure empirical_measure(const SystemSpec& sys, const Point& x, long long n) {
    if (n < 1) throw std::invalid_argument("empirical_measure: n must be >= 1");
    auto orbit = iterate(sys, x, n - 1);
    return EmpiricalMeasure::from_points(std::move(orbit));
}

EmpiricalMeasure cesaro_pushforward(const SystemSpec& sys, const EmpiricalMeasure& mu, long long n) {
    if (n < 1) throw std::invalid_argument("cesaro_pushforward: n must be >= 1");
    std::vector<std::pair<Point, double>> weighted;
    weighted.reserve(mu.support.size() * static_cast<std::size_t>(n));
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < mu.support.size(); ++i) {
        Point p = sys.space.reduce(mu.support[i]);
        for (long long k = 0; k < n; ++k) {
            weighted.emplace_back(p, mu.weights[i] * scale);
            p = sys.step(p);
        }
    }
    return merge_weighted(std::move(weighted));
}

std::vector<double> feature_vector(const EmpiricalMeasure& mu, const TestFunctionFamily& fam) {
    std::vector<double> f(static_cast<std::size_t>(fam.count()));
    for (int i = 0; i < fam.count(); ++i) f[static_cast<std::size_t>(i)] = mu.integrate(fam, i);
    return f;
}

double dmetric_features(const std::vector<double>& fa, const std::vector<double>& fb) {
    if (fa.size() != fb.size()) throw std::invalid_argument("dmetric: family size mismatch");
    double s = 0.0;
    double w = 0.5;  // 1 / (2^i (1 + sup)) with sup = 1, i starting at 1
    for (std::size_t i = 0; i < fa.size(); ++i) {
        w *= 0.5;
        s += std::abs(fa[i] - fb[i]) * w;
    }
    return s;
}

double dmetric(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu, const TestFunctionFamily& fam) {
    return dmetric_features(feature_vector(mu, fam), feature_vector(nu, fam));
}

namespace {

double directed_hausdorff(const std::vector<std::vector<double>>& fa,
                          const std::vector<std::vector<double>>& fb) {
    double worst = 0.0;
    for (const auto& a : fa) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& b : fb) best = std::min(best, dmetric_features(a, b));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

double hausdorff(const MeasureSet& a, const MeasureSet& b, const TestFunctionFamily& fam) {
    if (a.members.empty() || b.members.empty()) throw std::invalid_argument("hausdorff: empty measure set");
    std::vector<std::vector<double>> fa, fb;
    for (const auto& m : a.members) fa.push_back(feature_vector(m, fam));
    for (const auto& m : b.members) fb.push_back(feature_vector(m, fam));
    return std::max(directed_hausdorff(fa, fb), directed_hausdorff(fb, fa));
}

namespace {

struct Cluster {
    EmpiricalMeasure rep;
    std::vector<double> features;
    long long rep_n = 0;
    int multiplicity = 0;
};

// Greedy clustering: attach to the nearest representative within eps,
// keeping the member with the largest n as representative.
void cluster_insert(std::vector<Cluster>& clusters, EmpiricalMeasure m, std::vector<double> f,
                    long long n, double eps) {
    int best = -1;
    double best_d = eps;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        const double d = dmetric_features(clusters[i].features, f);
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(i);
        }
    }
    if (best < 0) {
        clusters.push_back(Cluster{std::move(m), std::move(f), n, 1});
    } else {
        Cluster& c = clusters[static_cast<std::size_t>(best)];
        ++c.multiplicity;
        if (n >= c.rep_n) {
            c.rep = std::move(m);
            c.features = std::move(f);
            c.rep_n = n;
        }
    }
}

MeasureSet clusters_to_set(std::vector<Cluster>&& clusters) {
    MeasureSet out;
    for (auto& c : clusters) {
        out.members.push_back(std::move(c.rep));
        out.multiplicities.push_back(c.multiplicity);
    }
    return out;
}

}  // namespace

MeasureSet pw_estimate(const SystemSpec& sys, const Point& x, const std::vector<long long>& checkpoints,
                       const TestFunctionFamily& fam, double eps_cluster) {
    if (checkpoints.size() < 2) throw std::invalid_argument("pw_estimate: need at least 2 checkpoints");
    for (std::size_t i = 0; i + 1 < checkpoints.size(); ++i)
        if (checkpoints[i] >= checkpoints[i + 1])
            throw std::invalid_argument("pw_estimate: checkpoints must be strictly increasing");
    if (checkpoints.front() < 1) throw std::invalid_argument("pw_estimate: checkpoints must be >= 1");

    const long long n_max = checkpoints.back();
    // single orbit pass with running feature sums; snapshot at checkpoints
    std::vector<double> feat_sum(static_cast<std::size_t>(fam.count()), 0.0);
    std::vector<Point> orbit;
    orbit.reserve(static_cast<std::size_t>(n_max));
    Point cur = sys.space.reduce(x);
    std::vector<Cluster> clusters;
    std::size_t next_cp = 0;
    for (long long k = 0; k < n_max; ++k) {
        orbit.push_back(cur);
        for (int i = 0; i < fam.count(); ++i) feat_sum[static_cast<std::size_t>(i)] += fam.eval(i, cur);
        if (k + 1 == checkpoints[next_cp]) {
            const long long n = checkpoints[next_cp];
            std::vector<double> f(feat_sum);
            for (auto& v : f) v /= static_cast<double>(n);
            EmpiricalMeasure m = EmpiricalMeasure::from_points(orbit);
            cluster_insert(clusters, std::move(m), std::move(f), n, eps_cluster);
            ++next_cp;
            if (next_cp >= checkpoints.size()) break;
        }
        cur = sys.step(cur);
    }
    return clusters_to_set(std::move(clusters));
}

MeasureSet physical_like_estimate(const SystemSpec& sys, int sample_count, long long n, std::uint64_t seed,
                                  const TestFunctionFamily& fam, double eps_cluster) {
    if (sample_count < 1) throw std::invalid_argument("physical_like_estimate: sample_count must be >= 1");
    if (n < 4) throw std::invalid_argument("physical_like_estimate: n must be >= 4");
    const std::vector<long long> checkpoints{std::max<long long>(1, n / 4), std::max<long long>(2, n / 2),
                                             std::max<long long>(3, (3 * n) / 4), n};
    // per-sample pw estimates in parallel; pooling stays sequential in seed
    // order so the clustering is deterministic
    std::vector<MeasureSet> per_sample(static_cast<std::size_t>(sample_count));
    parallel_for(sample_count, [&](int i) {
        Rng rng = Rng::for_sample(seed, static_cast<std::uint64_t>(i));
        const Point x0 = sys.space.sample(rng);
        per_sample[static_cast<std::size_t>(i)] = pw_estimate(sys, x0, checkpoints, fam, eps_cluster);
    });
    std::vector<Cluster> pool;
    for (auto& per : per_sample) {
        for (std::size_t j = 0; j < per.members.size(); ++j) {
            auto f = feature_vector(per.members[j], fam);
            const auto rep_n = static_cast<long long>(per.members[j].support.size());
            cluster_insert(pool, std::move(per.members[j]), std::move(f), rep_n, eps_cluster);
        }
    }
    return clusters_to_set(std::move(pool));
}

}  // namespace ergolab
