#ifndef ERGOLAB_ENTROPY_HPP
#define ERGOLAB_ENTROPY_HPP

#include <cstdint>
#include <vector>

#include "ergolab/measures.hpp"
#include "ergolab/system.hpp"

namespace ergolab {

/// Uniform axis-aligned grid partition, possibly with different cell counts
/// per axis. Cells are half open; a point on an interior cell edge belongs
/// to the cell it starts, the top boundary of an interval to the last cell.
struct Partition {
    PhaseSpace space = PhaseSpace::interval(0.0, 1.0);
    std::array<int, 3> cells{2, 1, 1};

    static Partition uniform(const PhaseSpace& space, int cells_per_axis);
    static Partition grid(const PhaseSpace& space, const std::vector<int>& cells_per_axis);

    int atom_count() const;
    int atom_of(const Point& p) const;
    double diameter() const;
};

/// P^n-address of a point: atom indices of y, f(y), ..., f^{n-1}(y).
std::vector<int> itinerary(const SystemSpec& sys, const Point& y, const Partition& p, long long n);

/// H_mu(P) = -sum mu(A) log mu(A), with 0 log 0 = 0.
double static_entropy(const EmpiricalMeasure& mu, const Partition& p);

/// H_mu(P^n) through itinerary coding of the support.
double refined_entropy(const SystemSpec& sys, const EmpiricalMeasure& mu, const Partition& p, long long n);

/// Right-hand side of the Misiurewicz inequality:
/// (1/n)(H - 3 m log #P), a lower bound for (1/m) H_{nu_n}(P^m).
double misiurewicz_bound(double h_pn_of_mu, long long n, long long m, int card_p);

struct EntropyEstimate {
    double estimate = 0.0;               // min over m of (1/m) H_{mu_n}(P^m)
    std::vector<long long> m_list;
    std::vector<double> curve;           // (1/m) H per m
    bool undersampled = false;           // n < 10 #P^max(m)
};

EntropyEstimate entropy_estimate(const SystemSpec& sys, const Point& x, long long n, const Partition& p,
                                 const std::vector<long long>& m_list);

bool dynamical_ball_contains(const SystemSpec& sys, const Point& x, const Point& y, long long n, double alpha);

/// (1/n) log of the size of a greedy maximal (n, alpha)-separated subset of
/// a uniform grid with the given step.
double separated_entropy(const SystemSpec& sys, long long n, double alpha, double grid_step);

/// Monte Carlo realization of the integral entropy formula:
/// (1/n) log of the Lebesgue average of max_k ||Lambda^k d_x f^n||,
/// accumulated by log-sum-exp.
double kozlovski_estimate(const SystemSpec& sys, long long n, int sample_count, std::uint64_t seed);

/// Counting function t log t - (t-1) log(t-1) for t >= 1; satisfies
/// F(t) <= t log 2 and F(t)/t -> 0.
double F_function(double t);

struct AdmissibleCount {
    unsigned long long count = 0;
    double f_argument = 0.0;   // mean(one_block_logs) + 2 - A
    double bound = 0.0;        // exp(m F(f_argument)); +inf when f_argument < 1
};

/// Exhaustive count of integer sequences (a_l) with
/// a_l <= ceil(one_block_logs[l]) + 1, a_l >= ceil(A) - floor_guard and
/// sum a_l >= m A. Errors out when the search space is too large.
AdmissibleCount count_admissible(const std::vector<double>& one_block_logs, double a_threshold,
                                 int floor_guard = 50);

}  // namespace ergolab

#endif
