#include "ergolab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ergolab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
    return s;
}

double norm3(const std::array<double, 3>& a, int n) { return std::sqrt(dot3(a, a, n)); }

}  // namespace

std::string to_string(const Point& p) {
    std::ostringstream os;
    os.precision(17);
    os << "(";
    for (int i = 0; i < p.dim(); ++i) {
        if (i) os << ", ";
        os << p[i];
    }
    os << ")";
    return os.str();
}

Mat Mat::identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimension mismatch");
    const int n = a.dim();
    Mat c(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

Point mat_apply(const Mat& m, const Point& v) {
    if (m.dim() != v.dim()) throw std::invalid_argument("matrix/vector dimension mismatch");
    const int n = m.dim();
    Point out = v;
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += m(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

double det(const Mat& m) {
    switch (m.dim()) {
        case 1: return m(0, 0);
        case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        case 3:
            return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                 - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                 + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        default: throw std::invalid_argument("unsupported dimension");
    }
}

ScaledFrame::ScaledFrame(int dim) : dim_(dim) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("ScaledFrame: dimension must be 1..3");
    for (int j = 0; j < dim_; ++j) {
        cols_[static_cast<std::size_t>(j)] = {0.0, 0.0, 0.0};
        cols_[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = 1.0;
        logs_[static_cast<std::size_t>(j)] = 0.0;
    }
}

void ScaledFrame::push_left(const Mat& j) {
    if (j.dim() != dim_) throw std::invalid_argument("ScaledFrame: Jacobian dimension mismatch");
    for (int c = 0; c < dim_; ++c) {
        auto& u = cols_[static_cast<std::size_t>(c)];
        std::array<double, 3> w{};
        for (int r = 0; r < dim_; ++r) {
            double s = 0.0;
            for (int k = 0; k < dim_; ++k) s += j(r, k) * u[static_cast<std::size_t>(k)];
            w[static_cast<std::size_t>(r)] = s;
        }
        const double nrm = norm3(w, dim_);
        if (nrm == 0.0 || logs_[static_cast<std::size_t>(c)] == kNegInf) {
            logs_[static_cast<std::size_t>(c)] = kNegInf;
            // direction is irrelevant for a collapsed column; keep a unit placeholder
            u = {0.0, 0.0, 0.0};
            u[static_cast<std::size_t>(c % dim_)] = 1.0;
        } else {
            logs_[static_cast<std::size_t>(c)] += std::log(nrm);
            for (int r = 0; r < dim_; ++r) u[static_cast<std::size_t>(r)] = w[static_cast<std::size_t>(r)] / nrm;
        }
    }
    orthogonalize();
}

void ScaledFrame::sort_columns() {
    for (int i = 0; i < dim_; ++i)
        for (int j = i + 1; j < dim_; ++j)
            if (logs_[static_cast<std::size_t>(j)] > logs_[static_cast<std::size_t>(i)]) {
                std::swap(logs_[static_cast<std::size_t>(i)], logs_[static_cast<std::size_t>(j)]);
                std::swap(cols_[static_cast<std::size_t>(i)], cols_[static_cast<std::size_t>(j)]);
            }
}

// One-sided Jacobi on log-scaled columns. A rotation by angle t zeroing the
// Gram off-diagonal is applied to column pairs; the larger column absorbs
// energy (no cancellation), the smaller one is rescaled through the exact
// determinant identity so tiny singular values keep relative accuracy.
void ScaledFrame::orthogonalize() {
    if (dim_ == 1) return;
    sort_columns();
    const int max_sweeps = 30;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double max_cos = 0.0;
        for (int i = 0; i < dim_; ++i) {
            for (int j = i + 1; j < dim_; ++j) {
                auto& ui = cols_[static_cast<std::size_t>(i)];
                auto& uj = cols_[static_cast<std::size_t>(j)];
                double li = logs_[static_cast<std::size_t>(i)];
                double lj = logs_[static_cast<std::size_t>(j)];
                if (lj == kNegInf) continue;
                double c = dot3(ui, uj, dim_);
                c = std::clamp(c, -1.0, 1.0);
                if (std::abs(c) <= 1e-15) continue;
                max_cos = std::max(max_cos, std::abs(c));

                const double t = std::exp(lj - li);  // <= 1 after sorting
                const double one_minus_c2 = (1.0 - c) * (1.0 + c);
                double li_new, lj_new;
                std::array<double, 3> wj{};
                double nj;
                if (t < 1e-8) {
                    // strongly graded pair: the rotation cannot change the big
                    // column at double precision, so deflate the small one by a
                    // plain Gram-Schmidt step (stays finite even when exp(lj-li)
                    // underflows, where the rotation tangent would vanish)
                    li_new = li;
                    lj_new = one_minus_c2 > 0.0 ? lj + 0.5 * std::log(one_minus_c2) : kNegInf;
                    for (int r = 0; r < dim_; ++r)
                        wj[static_cast<std::size_t>(r)] =
                            uj[static_cast<std::size_t>(r)] - c * ui[static_cast<std::size_t>(r)];
                    nj = norm3(wj, dim_);
                } else {
                    const double g12 = c * t;
                    // rotation zeroing the off-diagonal of [[1, g12], [g12, t^2]]
                    const double zeta = (t * t - 1.0) / (2.0 * g12);
                    const double az = std::abs(zeta);
                    double tan;
                    if (std::isinf(zeta)) {
                        tan = 0.0;
                    } else if (az > 1e8) {
                        tan = (zeta >= 0.0 ? 1.0 : -1.0) / (2.0 * az);  // avoids overflow in zeta^2
                    } else {
                        tan = (zeta >= 0.0 ? 1.0 : -1.0) / (az + std::sqrt(1.0 + zeta * zeta));
                    }
                    const double cs = 1.0 / std::sqrt(1.0 + tan * tan);
                    const double sn = cs * tan;

                    // big column grows: ||a_i'||^2 = e^{2li} (1 - tan*g12), tan*g12 <= 0
                    const double grow = 1.0 - tan * g12;
                    li_new = li + 0.5 * std::log(grow);
                    // small column via det identity: prod sigma^2 = e^{2li+2lj}(1-c^2)
                    lj_new = one_minus_c2 > 0.0 ? li + lj + 0.5 * std::log(one_minus_c2) - li_new : kNegInf;

                    std::array<double, 3> wi{};
                    for (int r = 0; r < dim_; ++r) {
                        const double a = ui[static_cast<std::size_t>(r)];
                        const double b = t * uj[static_cast<std::size_t>(r)];
                        wi[static_cast<std::size_t>(r)] = cs * a - sn * b;
                        wj[static_cast<std::size_t>(r)] = sn * a + cs * b;
                    }
                    const double ni = norm3(wi, dim_);
                    for (int r = 0; r < dim_; ++r)
                        ui[static_cast<std::size_t>(r)] = wi[static_cast<std::size_t>(r)] / ni;
                    nj = norm3(wj, dim_);
                }
                if (nj > 0.0 && lj_new != kNegInf) {
                    for (int r = 0; r < dim_; ++r) uj[static_cast<std::size_t>(r)] = wj[static_cast<std::size_t>(r)] / nj;
                } else {
                    // collapsed: replace with any unit vector orthogonal to the rest
                    std::array<double, 3> cand{};
                    for (int axis = 0; axis < dim_; ++axis) {
                        cand = {0.0, 0.0, 0.0};
                        cand[static_cast<std::size_t>(axis)] = 1.0;
                        for (int k = 0; k < dim_; ++k) {
                            if (k == j) continue;
                            const auto& uk = cols_[static_cast<std::size_t>(k)];
                            const double p = dot3(cand, uk, dim_);
                            for (int r = 0; r < dim_; ++r) cand[static_cast<std::size_t>(r)] -= p * uk[static_cast<std::size_t>(r)];
                        }
                        const double cn = norm3(cand, dim_);
                        if (cn > 1e-3) {
                            for (int r = 0; r < dim_; ++r) cand[static_cast<std::size_t>(r)] /= cn;
                            break;
                        }
                    }
                    uj = cand;
                }
                logs_[static_cast<std::size_t>(i)] = li_new;
                logs_[static_cast<std::size_t>(j)] = lj_new;
                if (logs_[static_cast<std::size_t>(j)] > logs_[static_cast<std::size_t>(i)]) {
                    std::swap(logs_[static_cast<std::size_t>(i)], logs_[static_cast<std::size_t>(j)]);
                    std::swap(cols_[static_cast<std::size_t>(i)], cols_[static_cast<std::size_t>(j)]);
                }
            }
        }
        if (max_cos < 1e-14) break;
    }
    sort_columns();
}

std::array<double, 3> singular_values(const Mat& m) {
    ScaledFrame f(m.dim());
    f.push_left(m);
    std::array<double, 3> out{0.0, 0.0, 0.0};
    for (int i = 0; i < m.dim(); ++i) out[static_cast<std::size_t>(i)] = std::exp(f.log_singular_values()[static_cast<std::size_t>(i)]);
    return out;
}

double exterior_norm(const Mat& m, int k) {
    if (k < 1 || k > m.dim()) throw std::invalid_argument("exterior_norm: k out of range 1..dim");
    const auto sv = singular_values(m);
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= sv[static_cast<std::size_t>(i)];
    return p;
}

}  // namespace ergolab
