#ifndef SUMDIST_SPECFUN_HPP
#define SUMDIST_SPECFUN_HPP

// Scalar special functions used throughout the library. Everything here is
// built from exp/log/sqrt/pow and friends; no external statistics runtime.
// All functions are pure and thread-safe.

namespace sumdist::specfun {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934381868;
inline constexpr double kLogSqrt2Pi = 0.918938533204672741780329736405617640;

[[nodiscard]] double std_normal_pdf(double x);
[[nodiscard]] double std_normal_log_pdf(double x);

// Phi(x). Relative accuracy is kept in the lower tail, so Phi(-x) is the
// accurate way to get the upper-tail complement.
[[nodiscard]] double std_normal_cdf(double x);

// Phi^{-1}(p) for p in (0, 1); throws DomainError otherwise.
[[nodiscard]] double std_normal_inv_cdf(double p);

[[nodiscard]] double ln_gamma(double a);

// I_x(a, b). The second overload takes y = 1 - x supplied by the caller, which
// preserves precision when x is within rounding of 1.
[[nodiscard]] double reg_incomplete_beta(double x, double a, double b);
[[nodiscard]] double reg_incomplete_beta(double x, double y, double a, double b);

[[nodiscard]] double student_t_pdf(double x, double nu);
[[nodiscard]] double student_t_log_pdf(double x, double nu);
[[nodiscard]] double student_t_cdf(double x, double nu);
[[nodiscard]] double student_t_inv_cdf(double p, double nu);

// Density of the standard bivariate Student-t with correlation rho.
[[nodiscard]] double bivariate_t_pdf(double x, double y, double rho, double nu);
[[nodiscard]] double bivariate_t_log_pdf(double x, double y, double rho, double nu);

// First-order Debye function D1(theta) = (1/theta) int_0^theta t/(e^t - 1) dt.
[[nodiscard]] double debye1(double theta);

}  // namespace sumdist::specfun

#endif  // SUMDIST_SPECFUN_HPP
