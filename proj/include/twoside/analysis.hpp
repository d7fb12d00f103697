#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "twoside/distribution.hpp"
#include "twoside/pvalue.hpp"

namespace twoside {

/// Two-sided critical region {x <= c_left} u {x >= c_right} at level alpha,
/// with F(c_left) = w_left alpha. `anchor` is A(alpha) = F^{-1}(w_left), the
/// anchor whose conditional p-value reproduces the region.
struct CriticalRegion {
    double c_left = 0.0;
    double c_right = 0.0;
    double alpha = 0.05;
    double w_left = 0.5;
    double anchor = 0.0;
};

CriticalRegion critical_region_from_weights(const Distribution& d, double alpha, double w_left);

/// Power of a region for a scale alternative: F(rho c_left) + 1 - F(rho c_right).
/// For the variance test rho = sigma0^2 / sigma^2; for the F-test rho is the
/// inverse variance ratio.
double variance_power(const Distribution& d, const CriticalRegion& region, double rho);

struct PowerCurve {
    std::string method;
    double level = 0.05;
    std::vector<double> rho;
    std::vector<double> power;
};

PowerCurve power_curve(const Distribution& d, const CriticalRegion& region, std::string method,
                       std::span<const double> rho_grid);

/// Region of the min-likelihood test: f(c_left) = f(c_right) and
/// F(c_left) + 1 - F(c_right) = alpha. Unimodal continuous families only.
CriticalRegion minlik_region(const Distribution& d, double alpha);

struct BiasReport {
    std::string method;
    double level = 0.05;
    double min_power = 0.0;
    double bias = 0.0;  // min_power - level
    double argmin_rho = 1.0;
    CriticalRegion region;
    std::vector<std::string> warnings;
};

/// Critical region a p-value method induces at level alpha. Conditional
/// methods anchor at the mean, falling back to the median (with a warning
/// appended to `warnings`) when the mean is not finite.
CriticalRegion region_for_method(const Distribution& d, const PValueMethod& method, double alpha,
                                 std::vector<std::string>* warnings = nullptr);

/// Minimum of power - level over rho in [e^-4, e^4]: 400-point log grid scan,
/// then golden-section refinement to 1e-8 in rho.
BiasReport bias(const Distribution& d, const PValueMethod& method, double alpha);

/// beta'(theta_0) for a region with left weight w_left. Chi-square uses the
/// sufficient statistic X; the F-ratio uses the beta variable
/// V = d1 X / (d1 X + d2), for which the equal-tails test is UMPU when d1 = d2.
double power_derivative_at_null(const Distribution& d, double alpha, double w_left);

struct UmpuResult {
    double w_left = 0.5;
    CriticalRegion region;
};

/// Left weight zeroing power_derivative_at_null, and its region.
UmpuResult umpu_weights(const Distribution& d, double alpha);

struct BinomialWeightRow {
    std::int64_t n = 0;
    double p = 0.0;
    double w_left = 0.0;
    double ratio = 0.0;  // w_left / w_right
    double w_left_modified = 0.0;
};

/// Tail weights about the mean for every (n, p) pair, n-major.
std::vector<BinomialWeightRow> binomial_weight_table(std::span<const std::int64_t> ns,
                                                     std::span<const double> ps);
std::vector<std::int64_t> default_table1_ns();
std::vector<double> default_table1_ps();

struct FisherRow {
    std::int64_t n11 = 0;
    double probability = 0.0;
    double p_one_sided = 0.0;  // min(P(X <= n11), P(X >= n11))
    double p_min_likelihood = 0.0;
    double p_conditional = 0.0;  // mean anchor, unmodified weights
};

std::vector<FisherRow> fisher_pvalue_table(std::int64_t row1, std::int64_t col1, std::int64_t total);

enum class Figure { Fig1, Fig2, Fig3, Fig4 };

/// Long-format series: one `panel` label per row plus numeric columns.
struct FigureData {
    std::vector<std::string> columns;  // numeric column names, after "panel"
    std::vector<std::string> panel;
    std::vector<std::vector<double>> rows;
};

/// fig1: rho, power of the minlik/doubled/conditional/UMPU 5% chi-square(5) tests.
/// fig2: n, bias of doubled and conditional 5% tests; panel chisq (one sample
///       of size n) and f (n1 = 6, n2 = n).
/// fig3: x, P_prob, untruncated P_F^E and P_C^E for chi-square(5) and the
///       normal truncated at -0.5.
/// fig4: x, P_prob, P_C, P_C^m and untruncated P_F for Binom(10, 0.2) and Binom(11, 0.2).
/// Continuous grids have `resolution` points plus the anchor (fig3) or rho = 1 (fig1);
/// fig2 uses n = 4 .. resolution + 3.
FigureData figure_data(Figure which, int resolution = 512);

}  // namespace twoside
