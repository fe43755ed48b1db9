#ifndef ERGOLAB_LINALG_HPP
#define ERGOLAB_LINALG_HPP

#include <array>
#include <cstddef>
#include <string>

namespace ergolab {

/// Point in phase space, at most 3 coordinates.
class Point {
public:
    Point() = default;
    explicit Point(double x) : dim_(1) { c_[0] = x; }
    Point(double x, double y) : dim_(2) { c_[0] = x; c_[1] = y; }
    Point(double x, double y, double z) : dim_(3) { c_[0] = x; c_[1] = y; c_[2] = z; }

    int dim() const { return dim_; }
    double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

    bool operator==(const Point& o) const {
        if (dim_ != o.dim_) return false;
        for (int i = 0; i < dim_; ++i) if (c_[static_cast<std::size_t>(i)] != o.c_[static_cast<std::size_t>(i)]) return false;
        return true;
    }
    bool operator<(const Point& o) const {  // lexicographic, for deterministic sorting
        for (int i = 0; i < dim_; ++i) {
            if (c_[static_cast<std::size_t>(i)] < o.c_[static_cast<std::size_t>(i)]) return true;
            if (c_[static_cast<std::size_t>(i)] > o.c_[static_cast<std::size_t>(i)]) return false;
        }
        return false;
    }

private:
    std::array<double, 3> c_{0.0, 0.0, 0.0};
    int dim_ = 1;
};

std::string to_string(const Point& p);

/// Dense square matrix of dimension 1..3, row major.
class Mat {
public:
    Mat() = default;
    explicit Mat(int n) : n_(n) {}
    static Mat identity(int n);

    int dim() const { return n_; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }
    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }

private:
    std::array<double, 9> a_{};
    int n_ = 1;
};

Mat operator*(const Mat& a, const Mat& b);
Point mat_apply(const Mat& m, const Point& v);
double det(const Mat& m);

/// Singular values, descending. One-sided Jacobi; exact enough for d <= 3.
std::array<double, 3> singular_values(const Mat& m);

/// Operator norm of the k-th exterior power: product of the k largest
/// singular values.
double exterior_norm(const Mat& m, int k);

/// Running product J_{n-1} * ... * J_0 kept as an orthogonal column frame
/// with per-column log scales, so singular values of arbitrarily long
/// products never overflow. push_left() multiplies a new Jacobian on the
/// left; log_singular_values() returns the current spectrum in log space,
/// descending.
class ScaledFrame {
public:
    explicit ScaledFrame(int dim);

    void push_left(const Mat& j);
    const std::array<double, 3>& log_singular_values() const { return logs_; }
    int dim() const { return dim_; }

private:
    void orthogonalize();
    void sort_columns();

    int dim_;
    std::array<std::array<double, 3>, 3> cols_{};  // unit direction vectors
    std::array<double, 3> logs_{};                 // per-column log norms
};

}  // namespace ergolab

#endif
