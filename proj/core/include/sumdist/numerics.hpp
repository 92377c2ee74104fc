#ifndef SUMDIST_NUMERICS_HPP
#define SUMDIST_NUMERICS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <utility>

#include "sumdist/errors.hpp"

namespace sumdist::numerics {

// Neumaier variant of Kahan summation. Order of add() calls fully
// determines the result.
class CompensatedSum {
   public:
    void add(double value) {
        const double t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value)) {
            compensation_ += (sum_ - t) + value;
        } else {
            compensation_ += (value - t) + sum_;
        }
        sum_ = t;
    }

    CompensatedSum& operator+=(double value) {
        add(value);
        return *this;
    }

    [[nodiscard]] double value() const { return sum_ + compensation_; }

   private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct KronrodEstimate {
    double value;
    double error;
};

template <typename F>
KronrodEstimate kronrod15(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (std::size_t k = 0; k < 7; ++k) {
        const double dx = half * kKronrodNodes[k];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[k] * pair;
        if (k % 2 == 1) gauss += kGaussWeights[k / 2] * pair;
    }
    return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

template <typename F>
double adaptive_kronrod(F& f, double a, double b, double tol, KronrodEstimate whole, int depth) {
    if (whole.error <= tol || depth <= 0 || !(std::abs(b - a) > 4.0 * std::abs(a + b) * 1e-16)) {
        return whole.value;
    }
    const double mid = 0.5 * (a + b);
    const KronrodEstimate left = kronrod15(f, a, mid);
    const KronrodEstimate right = kronrod15(f, mid, b);
    return adaptive_kronrod(f, a, mid, 0.5 * tol, left, depth - 1) +
           adaptive_kronrod(f, mid, b, 0.5 * tol, right, depth - 1);
}

}  // namespace detail

// Globally adaptive bisection with a G7/K15 pair on every panel. The
// integrand is never evaluated at a or b, so integrable endpoint
// singularities are tolerated.
template <typename F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-13, int max_depth = 60) {
    if (a == b) return 0.0;
    const detail::KronrodEstimate whole = detail::kronrod15(f, a, b);
    return detail::adaptive_kronrod(f, a, b, abs_tol, whole, max_depth);
}

// Brent's method. Requires f(a) and f(b) of opposite sign (or one zero).
template <typename F>
double brent_root(F&& f, double a, double b, double x_tol = 1e-15, int max_iter = 200) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        throw NumericalError("brent_root: interval does not bracket a root");
    }
    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    for (int iter = 0; iter < max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 2.0 * 1e-16 * std::abs(b) + 0.5 * x_tol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) return b;
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p;
            double q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) {
                q = -q;
            } else {
                p = -p;
            }
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
    }
    throw NumericalError("brent_root: no convergence");
}

}  // namespace sumdist::numerics

#endif  // SUMDIST_NUMERICS_HPP
