#ifndef SUMDIST_TESTS_ORACLES_HPP
#define SUMDIST_TESTS_ORACLES_HPP

// Reference computations for the tests. Nothing here calls into the library:
// each oracle is a direct transcription of a textbook formula or a plain
// quadrature / root-finding loop.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }
inline double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); }

template <typename F>
double bisect(F&& f, double lo, double hi, int iterations = 200) {
    double flo = f(lo);
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

template <typename F>
double simpson(F&& f, double a, double b, int panels) {
    if (panels % 2 != 0) ++panels;
    const double h = (b - a) / panels;
    double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
    return sum * h / 3.0;
}

template <typename F>
double trapezoid(F&& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double sum = 0.5 * (f(a) + f(b));
    for (int i = 1; i < panels; ++i) sum += f(a + i * h);
    return sum * h;
}

namespace detail {
template <typename F>
double adaptive_simpson_step(F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                             int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

template <typename F>
double adaptive_simpson(F f, double a, double b, double tol = 1e-12, int max_depth = 50) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Bivariate standard normal density with correlation rho.
inline double bvn_pdf(double x, double y, double rho) {
    const double q = (x * x - 2.0 * rho * x * y + y * y) / (1.0 - rho * rho);
    return std::exp(-0.5 * q) / (2.0 * kPi * std::sqrt(1.0 - rho * rho));
}

inline double t_pdf(double x, double nu) {
    return std::exp(std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu)) / std::sqrt(kPi * nu) *
           std::pow(1.0 + x * x / nu, -0.5 * (nu + 1.0));
}

inline double bivariate_t_pdf(double x, double y, double rho, double nu) {
    const double q = (x * x - 2.0 * rho * x * y + y * y) / (1.0 - rho * rho);
    return 1.0 / (2.0 * kPi * std::sqrt(1.0 - rho * rho)) * std::pow(1.0 + q / nu, -0.5 * (nu + 2.0));
}

// Copula densities in the plain (non-log) textbook forms.
inline double gauss_copula_density_from_scores(double x1, double x2, double rho) {
    return std::exp(-(rho * rho * (x1 * x1 + x2 * x2) - 2.0 * rho * x1 * x2) / (2.0 * (1.0 - rho * rho))) /
           std::sqrt(1.0 - rho * rho);
}

inline double clayton_density(double theta, double u1, double u2) {
    return (1.0 + theta) * std::pow(std::pow(u1, -theta) + std::pow(u2, -theta) - 1.0, -(1.0 + 2.0 * theta) / theta) *
           std::pow(u1 * u2, -(theta + 1.0));
}

inline double gumbel_density(double theta, double u1, double u2) {
    const double w1 = std::pow(-std::log(u1), theta);
    const double w2 = std::pow(-std::log(u2), theta);
    const double sigma = std::pow(w1 + w2, 1.0 / theta);
    return std::exp(-sigma) * w1 * w2 * sigma * (theta + sigma - 1.0) /
           (u1 * u2 * std::log(u1) * std::log(u2) * (w1 + w2) * (w1 + w2));
}

inline double frank_density(double theta, double u1, double u2) {
    const double e1 = std::exp(-theta * u1);
    const double e2 = std::exp(-theta * u2);
    const double et = std::exp(-theta) - 1.0;
    const double sigma = (e1 - 1.0) * (e2 - 1.0) / et + 1.0;
    return theta * e1 * e2 * (e1 - 1.0) * (e2 - 1.0) / (et * et * sigma * sigma) - theta * e1 * e2 / (et * sigma);
}

inline double clayton_cdf(double theta, double u1, double u2) {
    return std::pow(std::pow(u1, -theta) + std::pow(u2, -theta) - 1.0, -1.0 / theta);
}

inline double gumbel_cdf(double theta, double u1, double u2) {
    return std::exp(-std::pow(std::pow(-std::log(u1), theta) + std::pow(-std::log(u2), theta), 1.0 / theta));
}

inline double frank_cdf(double theta, double u1, double u2) {
    return -std::log(1.0 + (std::exp(-theta * u1) - 1.0) * (std::exp(-theta * u2) - 1.0) / (std::exp(-theta) - 1.0)) /
           theta;
}

// (1/theta) int_0^theta t / (e^t - 1) dt by composite Simpson.
inline double debye1(double theta, int panels = 20000) {
    auto integrand = [](double t) { return t == 0.0 ? 1.0 : t / std::expm1(t); };
    return simpson(integrand, 0.0, theta, panels) / theta;
}

// C(0.5, 0.5) of any elliptical copula with correlation rho.
inline double elliptical_orthant(double rho) { return 0.25 + std::asin(rho) / (2.0 * kPi); }

}  // namespace oracle

#endif  // SUMDIST_TESTS_ORACLES_HPP
