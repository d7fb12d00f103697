#pragma once

#include <cstdint>

namespace twoside::specfun {

/// Convergence controls shared by the iterative kernels.
struct Accuracy {
    double rel_tol = 1e-12;
    int max_iter = 200;

    /// Throws std::invalid_argument unless 0 < rel_tol < 1e-6 and max_iter >= 50.
    void validate() const;
};

inline constexpr Accuracy kDefaultAccuracy{};

/// ln Gamma(x) for x > 0 (Lanczos, g = 607/128).
double log_gamma(double x);

/// Regularized lower incomplete gamma P(a, x).
double reg_gamma_lower(double a, double x, const Accuracy& acc = kDefaultAccuracy);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed without cancellation.
double reg_gamma_upper(double a, double x, const Accuracy& acc = kDefaultAccuracy);

/// Regularized incomplete beta I_x(a, b).
double reg_beta(double x, double a, double b, const Accuracy& acc = kDefaultAccuracy);
/// 1 - I_x(a, b) = I_{1-x}(b, a).
double reg_beta_upper(double x, double a, double b, const Accuracy& acc = kDefaultAccuracy);

/// x >= 0 with P(a, x) = p. Throws std::range_error for p = 1.
double inv_reg_gamma_lower(double a, double p, const Accuracy& acc = kDefaultAccuracy);
/// x >= 0 with Q(a, x) = q. Throws std::range_error for q = 0.
double inv_reg_gamma_upper(double a, double q, const Accuracy& acc = kDefaultAccuracy);

/// x in [0, 1] with I_x(a, b) = p.
double inv_reg_beta(double p, double a, double b, const Accuracy& acc = kDefaultAccuracy);

double norm_cdf(double x);
double norm_pdf(double x);
/// Standard normal quantile; throws std::range_error outside (0, 1).
double norm_quantile(double p);

/// ln C(n, k); throws std::domain_error when k > n.
double log_choose(std::int64_t n, std::int64_t k);

}  // namespace twoside::specfun
