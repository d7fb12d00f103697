#include "twoside/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "twoside/roots.hpp"
#include "twoside/specfun.hpp"

namespace twoside {

namespace {

constexpr double kLogRhoSpan = 4.0;
constexpr int kBiasGrid = 400;
constexpr double kRhoTol = 1e-8;

void require_level(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(std::max(n, 2)));
    const double step = (hi - lo) / static_cast<double>(v.size() - 1);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = lo + step * static_cast<double>(i);
    v.back() = hi;
    return v;
}

std::vector<double> with_point(std::vector<double> grid, double point) {
    grid.push_back(point);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

double conditional_anchor(const Distribution& d, std::vector<std::string>* warnings) {
    const double m = mean(d);
    const Support s = support(d);
    if (std::isfinite(m) && m > s.lo && m < s.hi) return m;
    if (warnings) {
        warnings->push_back(d.describe() + ": mean is not finite; conditional region anchored at the median");
    }
    return median(d);
}

}  // namespace

CriticalRegion critical_region_from_weights(const Distribution& d, double alpha, double w_left) {
    require_level(alpha);
    if (!(w_left > 0.0 && w_left < 1.0)) throw std::invalid_argument("w_left must lie in (0, 1)");
    if (d.is_discrete()) throw std::domain_error("critical regions need a continuous family");
    CriticalRegion r;
    r.alpha = alpha;
    r.w_left = w_left;
    r.c_left = quantile(d, w_left * alpha);
    r.c_right = upper_quantile(d, (1.0 - w_left) * alpha);
    r.anchor = quantile(d, w_left);
    return r;
}

double variance_power(const Distribution& d, const CriticalRegion& region, double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
    return cdf(d, rho * region.c_left) + sf(d, rho * region.c_right);
}

PowerCurve power_curve(const Distribution& d, const CriticalRegion& region, std::string method,
                       std::span<const double> rho_grid) {
    PowerCurve c;
    c.method = std::move(method);
    c.level = region.alpha;
    c.rho.assign(rho_grid.begin(), rho_grid.end());
    c.power.reserve(c.rho.size());
    for (double r : c.rho) c.power.push_back(variance_power(d, region, r));
    return c;
}

CriticalRegion minlik_region(const Distribution& d, double alpha) {
    require_level(alpha);
    if (d.is_discrete()) throw std::domain_error("minlik_region: continuous families only");
    const auto modes = mode_set(d);
    if (modes.size() != 1) throw std::domain_error("minlik_region: density is not unimodal");
    const double mode = modes.front();
    const Support s = support(d);

    CriticalRegion r;
    r.alpha = alpha;
    if (mode <= s.lo) {
        // Decreasing density: the least likely points form the right tail.
        r.c_left = s.lo;
        r.c_right = upper_quantile(d, alpha);
    } else {
        auto partner = [&](double l) {
            const auto c = conjugate_point(d, l);
            return c ? *c : s.hi;
        };
        auto excess = [&](double l) { return cdf(d, l) + sf(d, partner(l)) - alpha; };
        const double span = mode - s.lo;
        const double lo = s.lo + 1e-12 * span;
        const double hi = mode - 1e-12 * span;
        r.c_left = excess(lo) >= 0.0 ? lo : roots::brent(excess, lo, hi, 1e-13 * std::max(1.0, span));
        r.c_right = partner(r.c_left);
    }
    r.w_left = cdf(d, r.c_left) / alpha;
    r.anchor = (r.w_left > 0.0 && r.w_left < 1.0) ? quantile(d, r.w_left) : mode;
    return r;
}

CriticalRegion region_for_method(const Distribution& d, const PValueMethod& method, double alpha,
                                 std::vector<std::string>* warnings) {
    switch (method.kind) {
        case MethodKind::Doubled: return critical_region_from_weights(d, alpha, 0.5);
        case MethodKind::Weighted: return critical_region_from_weights(d, alpha, method.weights.left);
        case MethodKind::Conditional:
        case MethodKind::ConditionalModified:
            return critical_region_from_weights(d, alpha, cdf(d, conditional_anchor(d, warnings)));
        case MethodKind::MinLikelihood: return minlik_region(d, alpha);
    }
    throw std::logic_error("region_for_method: unknown method");
}

BiasReport bias(const Distribution& d, const PValueMethod& method, double alpha) {
    BiasReport rep;
    rep.method = method.name();
    rep.level = alpha;
    rep.region = region_for_method(d, method, alpha, &rep.warnings);

    auto excess = [&](double log_rho) { return variance_power(d, rep.region, std::exp(log_rho)) - alpha; };
    const auto grid = linspace(-kLogRhoSpan, kLogRhoSpan, kBiasGrid);
    std::size_t best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = excess(grid[i]);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    const double a = grid[best == 0 ? 0 : best - 1];
    const double b = grid[std::min(best + 1, grid.size() - 1)];
    auto [log_rho, val] = roots::golden_min(excess, a, b, kRhoTol);
    if (best_val < val) {
        log_rho = grid[best];
        val = best_val;
    }
    rep.argmin_rho = std::exp(log_rho);
    rep.bias = val;
    rep.min_power = val + alpha;
    return rep;
}

double power_derivative_at_null(const Distribution& d, double alpha, double w_left) {
    const CriticalRegion r = critical_region_from_weights(d, alpha, w_left);
    if (const auto* c = std::get_if<ChiSquare>(&d.family())) {
        // x f_k(x) = k f_{k+2}(x): partial means are k times chi-square(k + 2) tails.
        const double a = 0.5 * c->df + 1.0;
        const double k = c->df;
        return k * (specfun::reg_gamma_lower(a, 0.5 * r.c_left) +
                    specfun::reg_gamma_upper(a, 0.5 * r.c_right)) -
               alpha * k;
    }
    if (const auto* f = std::get_if<FRatio>(&d.family())) {
        // V ~ Beta(a, b) and v b(v; a, b) = a/(a+b) b(v; a+1, b).
        const double a = 0.5 * f->d1;
        const double b = 0.5 * f->d2;
        auto to_v = [&](double x) { return f->d1 * x / (f->d1 * x + f->d2); };
        const double ev = a / (a + b);
        return ev * (specfun::reg_beta(to_v(r.c_left), a + 1.0, b) +
                     specfun::reg_beta_upper(to_v(r.c_right), a + 1.0, b)) -
               alpha * ev;
    }
    throw std::domain_error("power_derivative_at_null: chi-square and F-ratio families only");
}

UmpuResult umpu_weights(const Distribution& d, double alpha) {
    require_level(alpha);
    auto deriv = [&](double w) { return power_derivative_at_null(d, alpha, w); };
    const double w = roots::brent(deriv, 1e-9, 1.0 - 1e-9, 1e-15);
    return {w, critical_region_from_weights(d, alpha, w)};
}

std::vector<BinomialWeightRow> binomial_weight_table(std::span<const std::int64_t> ns,
                                                     std::span<const double> ps) {
    std::vector<BinomialWeightRow> rows;
    for (std::int64_t n : ns) {
        for (double p : ps) {
            const auto d = Distribution::binomial(n, p);
            const double A = resolve_anchor(d, TailAnchor::mean());
            const Weights w = conditional_weights(d, A, false);
            const Weights wm = conditional_weights(d, A, true);
            rows.push_back({n, p, w.left, w.left / w.right, wm.left});
        }
    }
    return rows;
}

std::vector<std::int64_t> default_table1_ns() {
    return {10, 11, 20, 21, 50, 51, 100, 101, 200, 201, 500, 501, 1000, 1001};
}

std::vector<double> default_table1_ps() { return {0.1, 0.2}; }

std::vector<FisherRow> fisher_pvalue_table(std::int64_t row1, std::int64_t col1, std::int64_t total) {
    const auto d = Distribution::hypergeometric(row1, col1, total);
    const double A = resolve_anchor(d, TailAnchor::mean());
    std::vector<FisherRow> rows;
    for (std::int64_t u = d.support_lo(); u <= d.support_hi(); ++u) {
        const double x = static_cast<double>(u);
        rows.push_back({u, d.mass(u), std::min(d.lower_tail(u), d.upper_tail(u)),
                        p_min_likelihood(d, x), p_conditional_discrete(d, u, A, false)});
    }
    return rows;
}

FigureData figure_data(Figure which, int resolution) {
    if (resolution < 2) throw std::invalid_argument("figure_data: resolution must be at least 2");
    FigureData fig;
    switch (which) {
        case Figure::Fig1: {
            const auto chi = Distribution::chi_square(5);
            constexpr double alpha = 0.05;
            const std::vector<CriticalRegion> regions{
                minlik_region(chi, alpha),
                critical_region_from_weights(chi, alpha, 0.5),
                region_for_method(chi, PValueMethod::conditional(), alpha),
                umpu_weights(chi, alpha).region,
            };
            fig.columns = {"rho", "power_minlik", "power_doubled", "power_conditional", "power_umpu"};
            for (double rho : with_point(linspace(0.05, 6.0, resolution), 1.0)) {
                std::vector<double> row{rho};
                for (const auto& r : regions) row.push_back(variance_power(chi, r, rho));
                fig.panel.emplace_back("chisq5");
                fig.rows.push_back(std::move(row));
            }
            break;
        }
        case Figure::Fig2: {
            constexpr double alpha = 0.05;
            fig.columns = {"n", "bias_doubled", "bias_conditional"};
            for (int n = 4; n < resolution + 4; ++n) {
                const auto chi = Distribution::chi_square(n - 1);
                fig.panel.emplace_back("chisq");
                fig.rows.push_back({static_cast<double>(n),
                                    bias(chi, PValueMethod::doubled(), alpha).bias,
                                    bias(chi, PValueMethod::conditional(), alpha).bias});
            }
            for (int n = 4; n < resolution + 4; ++n) {
                const auto f = Distribution::f_ratio(5, n - 1);
                fig.panel.emplace_back("f_n1_6");
                fig.rows.push_back({static_cast<double>(n),
                                    bias(f, PValueMethod::doubled(), alpha).bias,
                                    bias(f, PValueMethod::conditional(), alpha).bias});
            }
            break;
        }
        case Figure::Fig3: {
            fig.columns = {"x", "p_prob", "p_doubled", "p_conditional"};
            auto emit = [&](const Distribution& d, const std::string& label, double lo, double hi) {
                const double A = mean(d);
                for (double x : with_point(linspace(lo, hi, resolution), A)) {
                    fig.panel.push_back(label);
                    fig.rows.push_back({x, p_min_likelihood(d, x), p_doubled(d, x, A, false),
                                        p_conditional_continuous(d, x, A)});
                }
            };
            emit(Distribution::chi_square(5), "chisq5", 0.0, 20.0);
            emit(Distribution::truncated_normal(0.5), "tnorm0.5", -0.5, 3.0);
            break;
        }
        case Figure::Fig4: {
            fig.columns = {"x", "p_prob", "p_conditional", "p_conditional_modified", "p_doubled"};
            for (std::int64_t n : {10, 11}) {
                const auto d = Distribution::binomial(n, 0.2);
                const double A = mean(d);
                for (std::int64_t x = 0; x <= n; ++x) {
                    const double xd = static_cast<double>(x);
                    fig.panel.push_back("binom" + std::to_string(n));
                    fig.rows.push_back({xd, p_min_likelihood(d, xd), p_conditional_discrete(d, x, A, false),
                                        p_conditional_discrete(d, x, A, true),
                                        p_doubled(d, xd, A, false)});
                }
            }
            break;
        }
    }
    return fig;
}

}  // namespace twoside
