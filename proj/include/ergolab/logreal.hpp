#ifndef ERGOLAB_LOGREAL_HPP
#define ERGOLAB_LOGREAL_HPP

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ergolab {

/// Signed real stored as (sign, log |x|). The schedule of the finite-
/// smoothness construction multiplies values as small as lambda^(-r^n),
/// far below double underflow; all of its arithmetic runs on this type.
class LogReal {
public:
    LogReal() = default;  // zero

    static LogReal from_double(double v) {
        LogReal r;
        if (v == 0.0) return r;
        r.sign_ = v > 0.0 ? 1 : -1;
        r.log_ = std::log(std::abs(v));
        return r;
    }
    static LogReal from_log(double log_abs, int sign = 1) {
        LogReal r;
        r.sign_ = sign;
        r.log_ = log_abs;
        if (sign == 0) r.log_ = -std::numeric_limits<double>::infinity();
        return r;
    }

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }
    double log_abs() const { return log_; }

    /// Underflows to 0.0 / overflows to inf like ordinary doubles would.
    double to_double() const { return sign_ == 0 ? 0.0 : sign_ * std::exp(log_); }

    LogReal operator*(const LogReal& o) const {
        if (is_zero() || o.is_zero()) return LogReal();
        return from_log(log_ + o.log_, sign_ * o.sign_);
    }
    LogReal operator/(const LogReal& o) const {
        if (o.is_zero()) throw std::domain_error("LogReal: division by zero");
        if (is_zero()) return LogReal();
        return from_log(log_ - o.log_, sign_ * o.sign_);
    }
    LogReal operator-() const { return from_log(log_, -sign_); }

    LogReal operator+(const LogReal& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        const LogReal& big = log_ >= o.log_ ? *this : o;
        const LogReal& small = log_ >= o.log_ ? o : *this;
        if (big.sign_ == small.sign_)
            return from_log(big.log_ + std::log1p(std::exp(small.log_ - big.log_)), big.sign_);
        if (small.log_ == big.log_) return LogReal();
        const double delta = std::exp(small.log_ - big.log_);
        return from_log(big.log_ + std::log1p(-delta), big.sign_);
    }
    LogReal operator-(const LogReal& o) const { return *this + (-o); }

    /// x^k for integer k >= 0 (log-space, exact up to one multiply).
    LogReal pow_int(long long k) const {
        if (k < 0) throw std::domain_error("LogReal: negative power");
        if (k == 0) return from_double(1.0);
        if (is_zero()) return LogReal();
        const int s = (sign_ < 0 && (k % 2 != 0)) ? -1 : 1;
        return from_log(log_ * static_cast<double>(k), s);
    }

    bool operator<(const LogReal& o) const {
        if (sign_ != o.sign_) return sign_ < o.sign_;
        if (sign_ == 0) return false;
        return sign_ > 0 ? log_ < o.log_ : log_ > o.log_;
    }
    bool operator<=(const LogReal& o) const { return !(o < *this); }

private:
    double log_ = -std::numeric_limits<double>::infinity();
    int sign_ = 0;
};

}  // namespace ergolab

#endif
