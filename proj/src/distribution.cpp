#include "twoside/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "format.hpp"
#include "twoside/specfun.hpp"

namespace twoside {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();
// Slack when comparing accumulated discrete tail sums against a probability.
constexpr double kCdfSlack = 1e-12;
// Relative tolerance for pmf ties when locating modes.
constexpr double kModeTie = 1e-9;

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

double chi_square_pdf(int k, double x) {
    if (x < 0.0) return 0.0;
    const double h = 0.5 * k;
    if (x == 0.0) return k == 2 ? 0.5 : (k < 2 ? kInf : 0.0);
    return std::exp((h - 1.0) * std::log(x) - 0.5 * x - h * std::log(2.0) -
                    specfun::log_gamma(h));
}

double f_pdf(int d1, int d2, double x) {
    if (x < 0.0) return 0.0;
    const double a = 0.5 * d1;
    const double b = 0.5 * d2;
    if (x == 0.0) return d1 == 2 ? 1.0 : (d1 < 2 ? kInf : 0.0);
    const double log_beta = specfun::log_gamma(a) + specfun::log_gamma(b) -
                            specfun::log_gamma(a + b);
    return std::exp(a * std::log(static_cast<double>(d1) / d2) + (a - 1.0) * std::log(x) -
                    (a + b) * std::log1p(static_cast<double>(d1) * x / d2) - log_beta);
}

// Beta variable d1 x / (d1 x + d2) and its complement, both computed directly.
std::pair<double, double> f_to_beta(int d1, int d2, double x) {
    const double num = static_cast<double>(d1) * x;
    return {num / (num + d2), d2 / (num + d2)};
}

}  // namespace

std::shared_ptr<const Distribution::Table> Distribution::make_table(std::int64_t lo,
                                                                    std::vector<double> log_w) {
    auto t = std::make_shared<Table>();
    t->lo = lo;
    const double top = *std::max_element(log_w.begin(), log_w.end());
    double total = 0.0;
    t->pmf.resize(log_w.size());
    for (std::size_t i = 0; i < log_w.size(); ++i) {
        t->pmf[i] = std::exp(log_w[i] - top);
        total += t->pmf[i];
    }
    for (double& v : t->pmf) v /= total;

    const std::size_t n = t->pmf.size();
    t->cdf.resize(n);
    t->sf.resize(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += t->pmf[i];
        t->cdf[i] = std::min(acc, 1.0);
    }
    acc = 0.0;
    for (std::size_t i = n; i-- > 0;) {
        acc += t->pmf[i];
        t->sf[i] = std::min(acc, 1.0);
    }
    t->cdf.back() = 1.0;
    t->sf.front() = 1.0;
    return t;
}

Distribution Distribution::chi_square(int df) {
    require(df >= 1, "chi_square: df must be a positive integer");
    return Distribution(ChiSquare{df});
}

Distribution Distribution::f_ratio(int d1, int d2) {
    require(d1 >= 1 && d2 >= 1, "f_ratio: degrees of freedom must be positive integers");
    return Distribution(FRatio{d1, d2});
}

Distribution Distribution::uniform(double a, double b) {
    require(std::isfinite(a) && std::isfinite(b) && a < b, "uniform: need finite a < b");
    return Distribution(Uniform{a, b});
}

Distribution Distribution::triangular(double a, double b) {
    require(std::isfinite(a) && std::isfinite(b) && a > 0.0 && b > 0.0,
            "triangular: a and b must be positive");
    return Distribution(Triangular{a, b});
}

Distribution Distribution::truncated_normal(double L) {
    require(std::isfinite(L) && L > 0.0, "truncated_normal: L must be positive");
    return Distribution(TruncatedNormal{L});
}

Distribution Distribution::binomial(std::int64_t n, double p) {
    require(n >= 0, "binomial: n must be non-negative");
    require(p > 0.0 && p < 1.0, "binomial: p must lie in (0, 1)");
    std::vector<double> lw(static_cast<std::size_t>(n + 1));
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    for (std::int64_t k = 0; k <= n; ++k) {
        lw[static_cast<std::size_t>(k)] =
            specfun::log_choose(n, k) + static_cast<double>(k) * lp + static_cast<double>(n - k) * lq;
    }
    return Distribution(Binomial{n, p}, make_table(0, std::move(lw)));
}

namespace {

void check_margins(std::int64_t row1, std::int64_t col1, std::int64_t total) {
    require(total >= 0 && row1 >= 0 && col1 >= 0, "hypergeometric: margins must be non-negative");
    require(row1 <= total && col1 <= total, "hypergeometric: margins cannot exceed the total");
}

std::vector<double> hyper_log_weights(std::int64_t row1, std::int64_t col1, std::int64_t total,
                                      std::int64_t lo, std::int64_t hi, double log_rho) {
    std::vector<double> lw;
    lw.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t u = lo; u <= hi; ++u) {
        lw.push_back(specfun::log_choose(row1, u) + specfun::log_choose(total - row1, col1 - u) +
                     static_cast<double>(u) * log_rho);
    }
    return lw;
}

}  // namespace

Distribution Distribution::hypergeometric(std::int64_t row1, std::int64_t col1, std::int64_t total) {
    check_margins(row1, col1, total);
    const std::int64_t lo = std::max<std::int64_t>(0, row1 + col1 - total);
    const std::int64_t hi = std::min(row1, col1);
    // Closed form C(r1,u) C(n-r1,c1-u) / C(n,c1).
    auto lw = hyper_log_weights(row1, col1, total, lo, hi, 0.0);
    const double norm = specfun::log_choose(total, col1);
    for (double& v : lw) v -= norm;
    return Distribution(Hypergeometric{row1, col1, total}, make_table(lo, std::move(lw)));
}

Distribution Distribution::nc_hypergeometric(std::int64_t row1, std::int64_t col1,
                                             std::int64_t total, double rho) {
    check_margins(row1, col1, total);
    require(std::isfinite(rho) && rho > 0.0, "nc_hypergeometric: rho must be positive");
    const std::int64_t lo = std::max<std::int64_t>(0, row1 + col1 - total);
    const std::int64_t hi = std::min(row1, col1);
    return Distribution(NcHypergeometric{row1, col1, total, rho},
                        make_table(lo, hyper_log_weights(row1, col1, total, lo, hi, std::log(rho))));
}

std::string Distribution::describe() const {
    return std::visit(
        overloaded{
            [](const ChiSquare& c) { return "chisq:" + std::to_string(c.df); },
            [](const FRatio& f) { return "f:" + std::to_string(f.d1) + "," + std::to_string(f.d2); },
            [](const Uniform& u) { return "unif:" + detail::format_number(u.a) + "," + detail::format_number(u.b); },
            [](const Triangular& t) { return "tri:" + detail::format_number(t.a) + "," + detail::format_number(t.b); },
            [](const TruncatedNormal& t) { return "tnorm:" + detail::format_number(t.L); },
            [](const Binomial& b) { return "binom:" + std::to_string(b.n) + "," + detail::format_number(b.p); },
            [](const Hypergeometric& h) {
                return "hyper:" + std::to_string(h.row1) + "," + std::to_string(h.col1) + "," +
                       std::to_string(h.total);
            },
            [](const NcHypergeometric& h) {
                return "nchyper:" + std::to_string(h.row1) + "," + std::to_string(h.col1) + "," +
                       std::to_string(h.total) + "," + detail::format_number(h.rho);
            },
        },
        family_);
}

const Distribution::Table& Distribution::table() const {
    if (!table_) throw std::logic_error("discrete accessor called on a continuous distribution");
    return *table_;
}

std::int64_t Distribution::support_lo() const { return table().lo; }

std::int64_t Distribution::support_hi() const {
    return table().lo + static_cast<std::int64_t>(table().pmf.size()) - 1;
}

std::span<const double> Distribution::pmf_values() const { return table().pmf; }

double Distribution::lower_tail(std::int64_t x) const {
    const Table& t = table();
    if (x < t.lo) return 0.0;
    if (x >= support_hi()) return 1.0;
    return t.cdf[static_cast<std::size_t>(x - t.lo)];
}

double Distribution::upper_tail(std::int64_t x) const {
    const Table& t = table();
    if (x <= t.lo) return 1.0;
    if (x > support_hi()) return 0.0;
    return t.sf[static_cast<std::size_t>(x - t.lo)];
}

double Distribution::mass(std::int64_t x) const {
    const Table& t = table();
    if (x < t.lo || x > support_hi()) return 0.0;
    return t.pmf[static_cast<std::size_t>(x - t.lo)];
}

namespace {

std::int64_t clamp_floor(double x) {
    if (x >= 9e15) return std::numeric_limits<std::int64_t>::max() / 2;
    if (x <= -9e15) return std::numeric_limits<std::int64_t>::min() / 2;
    return static_cast<std::int64_t>(std::floor(x));
}

std::int64_t clamp_ceil(double x) {
    if (x >= 9e15) return std::numeric_limits<std::int64_t>::max() / 2;
    if (x <= -9e15) return std::numeric_limits<std::int64_t>::min() / 2;
    return static_cast<std::int64_t>(std::ceil(x));
}

double tri_cdf(const Triangular& t, double x) {
    if (x <= -t.a) return 0.0;
    if (x >= t.b) return 1.0;
    if (x <= 0.0) return (x + t.a) * (x + t.a) / (t.a * (t.a + t.b));
    return 1.0 - (t.b - x) * (t.b - x) / (t.b * (t.a + t.b));
}

double tri_sf(const Triangular& t, double x) {
    if (x <= -t.a) return 1.0;
    if (x >= t.b) return 0.0;
    if (x <= 0.0) return 1.0 - (x + t.a) * (x + t.a) / (t.a * (t.a + t.b));
    return (t.b - x) * (t.b - x) / (t.b * (t.a + t.b));
}

}  // namespace

double cdf(const Distribution& d, double x) {
    if (std::isnan(x)) throw std::domain_error("cdf: x is NaN");
    if (d.is_discrete()) return d.lower_tail(clamp_floor(x));
    return std::visit(
        overloaded{
            [&](const ChiSquare& c) {
                return x <= 0.0 ? 0.0 : specfun::reg_gamma_lower(0.5 * c.df, 0.5 * x);
            },
            [&](const FRatio& f) {
                if (x <= 0.0) return 0.0;
                if (std::isinf(x)) return 1.0;
                const auto [y, ybar] = f_to_beta(f.d1, f.d2, x);
                // Evaluate from whichever side keeps the argument away from 1.
                return y <= 0.5 ? specfun::reg_beta(y, 0.5 * f.d1, 0.5 * f.d2)
                                : specfun::reg_beta_upper(ybar, 0.5 * f.d2, 0.5 * f.d1);
            },
            [&](const Uniform& u) { return std::clamp((x - u.a) / (u.b - u.a), 0.0, 1.0); },
            [&](const Triangular& t) { return tri_cdf(t, x); },
            [&](const TruncatedNormal& t) {
                if (x <= -t.L) return 0.0;
                const double lo = specfun::norm_cdf(-t.L);
                return std::clamp((specfun::norm_cdf(x) - lo) / specfun::norm_cdf(t.L), 0.0, 1.0);
            },
            [](const auto&) -> double { throw std::logic_error("unreachable"); },
        },
        d.family());
}

double sf(const Distribution& d, double x) {
    if (std::isnan(x)) throw std::domain_error("sf: x is NaN");
    if (d.is_discrete()) return d.upper_tail(clamp_ceil(x));
    return std::visit(
        overloaded{
            [&](const ChiSquare& c) {
                return x <= 0.0 ? 1.0 : specfun::reg_gamma_upper(0.5 * c.df, 0.5 * x);
            },
            [&](const FRatio& f) {
                if (x <= 0.0) return 1.0;
                if (std::isinf(x)) return 0.0;
                const auto [y, ybar] = f_to_beta(f.d1, f.d2, x);
                return y <= 0.5 ? specfun::reg_beta_upper(y, 0.5 * f.d1, 0.5 * f.d2)
                                : specfun::reg_beta(ybar, 0.5 * f.d2, 0.5 * f.d1);
            },
            [&](const Uniform& u) { return std::clamp((u.b - x) / (u.b - u.a), 0.0, 1.0); },
            [&](const Triangular& t) { return tri_sf(t, x); },
            [&](const TruncatedNormal& t) {
                if (x <= -t.L) return 1.0;
                return std::clamp(specfun::norm_cdf(-x) / specfun::norm_cdf(t.L), 0.0, 1.0);
            },
            [](const auto&) -> double { throw std::logic_error("unreachable"); },
        },
        d.family());
}

double density(const Distribution& d, double x) {
    if (std::isnan(x)) throw std::domain_error("density: x is NaN");
    if (d.is_discrete()) {
        if (x != std::floor(x)) throw std::domain_error("density: discrete family needs integer x");
        return d.mass(clamp_floor(x));
    }
    return std::visit(
        overloaded{
            [&](const ChiSquare& c) { return chi_square_pdf(c.df, x); },
            [&](const FRatio& f) { return f_pdf(f.d1, f.d2, x); },
            [&](const Uniform& u) { return (x < u.a || x > u.b) ? 0.0 : 1.0 / (u.b - u.a); },
            [&](const Triangular& t) {
                if (x < -t.a || x > t.b) return 0.0;
                if (x <= 0.0) return 2.0 * (x + t.a) / (t.a * (t.a + t.b));
                return 2.0 * (t.b - x) / (t.b * (t.a + t.b));
            },
            [&](const TruncatedNormal& t) {
                return x < -t.L ? 0.0 : specfun::norm_pdf(x) / specfun::norm_cdf(t.L);
            },
            [](const auto&) -> double { throw std::logic_error("unreachable"); },
        },
        d.family());
}

double quantile(const Distribution& d, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::range_error("quantile: p must lie in (0, 1)");
    if (d.is_discrete()) {
        for (std::int64_t x = d.support_lo(); x < d.support_hi(); ++x) {
            if (d.lower_tail(x) >= p - kCdfSlack) return static_cast<double>(x);
        }
        return static_cast<double>(d.support_hi());
    }
    return std::visit(
        overloaded{
            [&](const ChiSquare& c) { return 2.0 * specfun::inv_reg_gamma_lower(0.5 * c.df, p); },
            [&](const FRatio& f) {
                if (p > 0.5) return upper_quantile(d, 1.0 - p);
                const double y = specfun::inv_reg_beta(p, 0.5 * f.d1, 0.5 * f.d2);
                return f.d2 * y / (f.d1 * (1.0 - y));
            },
            [&](const Uniform& u) { return u.a + p * (u.b - u.a); },
            [&](const Triangular& t) {
                const double s = t.a + t.b;
                if (p <= t.a / s) return -t.a + std::sqrt(p * t.a * s);
                return t.b - std::sqrt((1.0 - p) * t.b * s);
            },
            [&](const TruncatedNormal& t) {
                return specfun::norm_quantile(specfun::norm_cdf(-t.L) + p * specfun::norm_cdf(t.L));
            },
            [](const auto&) -> double { throw std::logic_error("unreachable"); },
        },
        d.family());
}

double upper_quantile(const Distribution& d, double q) {
    if (!(q > 0.0 && q < 1.0)) throw std::range_error("upper_quantile: q must lie in (0, 1)");
    if (d.is_discrete()) {
        for (std::int64_t x = d.support_hi(); x > d.support_lo(); --x) {
            if (d.upper_tail(x) >= q - kCdfSlack) return static_cast<double>(x);
        }
        return static_cast<double>(d.support_lo());
    }
    return std::visit(
        overloaded{
            [&](const ChiSquare& c) { return 2.0 * specfun::inv_reg_gamma_upper(0.5 * c.df, q); },
            [&](const FRatio& f) {
                // sf(x) = I_{ybar}(d2/2, d1/2) with ybar = d2 / (d1 x + d2).
                const double ybar = specfun::inv_reg_beta(q, 0.5 * f.d2, 0.5 * f.d1);
                return f.d2 * (1.0 - ybar) / (f.d1 * ybar);
            },
            [&](const Uniform& u) { return u.b - q * (u.b - u.a); },
            [&](const Triangular& t) {
                const double s = t.a + t.b;
                if (q <= t.b / s) return t.b - std::sqrt(q * t.b * s);
                return -t.a + std::sqrt((1.0 - q) * t.a * s);
            },
            [&](const TruncatedNormal& t) {
                return -specfun::norm_quantile(q * specfun::norm_cdf(t.L));
            },
            [](const auto&) -> double { throw std::logic_error("unreachable"); },
        },
        d.family());
}

double mean(const Distribution& d) {
    return std::visit(
        overloaded{
            [](const ChiSquare& c) { return static_cast<double>(c.df); },
            [](const FRatio& f) {
                return f.d2 > 2 ? static_cast<double>(f.d2) / (f.d2 - 2) : kInf;
            },
            [](const Uniform& u) { return 0.5 * (u.a + u.b); },
            [](const Triangular& t) { return (t.b - t.a) / 3.0; },
            [](const TruncatedNormal& t) {
                return specfun::norm_pdf(-t.L) / (1.0 - specfun::norm_cdf(-t.L));
            },
            [](const Binomial& b) { return static_cast<double>(b.n) * b.p; },
            [](const Hypergeometric& h) {
                return static_cast<double>(h.row1) * static_cast<double>(h.col1) /
                       static_cast<double>(h.total);
            },
            [&](const NcHypergeometric&) {
                double m = 0.0;
                const auto pmf = d.pmf_values();
                for (std::size_t i = 0; i < pmf.size(); ++i) {
                    m += static_cast<double>(d.support_lo() + static_cast<std::int64_t>(i)) * pmf[i];
                }
                return m;
            },
        },
        d.family());
}

std::vector<double> mode_set(const Distribution& d) {
    if (d.is_discrete()) {
        const auto pmf = d.pmf_values();
        const double top = *std::max_element(pmf.begin(), pmf.end());
        std::vector<double> modes;
        for (std::size_t i = 0; i < pmf.size(); ++i) {
            if (pmf[i] >= top * (1.0 - kModeTie)) {
                modes.push_back(static_cast<double>(d.support_lo() + static_cast<std::int64_t>(i)));
            }
        }
        return modes;
    }
    return std::visit(
        overloaded{
            [](const ChiSquare& c) { return std::vector<double>{std::max(c.df - 2, 0) * 1.0}; },
            [](const FRatio& f) {
                if (f.d1 <= 2) return std::vector<double>{0.0};
                return std::vector<double>{(f.d1 - 2.0) / f.d1 * f.d2 / (f.d2 + 2.0)};
            },
            [](const Uniform&) { return std::vector<double>{}; },
            [](const Triangular&) { return std::vector<double>{0.0}; },
            [](const TruncatedNormal&) { return std::vector<double>{0.0}; },
            [](const auto&) -> std::vector<double> { throw std::logic_error("unreachable"); },
        },
        d.family());
}

double median(const Distribution& d) { return quantile(d, 0.5); }

Support support(const Distribution& d) {
    if (d.is_discrete()) {
        return {true, static_cast<double>(d.support_lo()), static_cast<double>(d.support_hi())};
    }
    return std::visit(
        overloaded{
            [](const ChiSquare&) { return Support{false, 0.0, kInf}; },
            [](const FRatio&) { return Support{false, 0.0, kInf}; },
            [](const Uniform& u) { return Support{false, u.a, u.b}; },
            [](const Triangular& t) { return Support{false, -t.a, t.b}; },
            [](const TruncatedNormal& t) { return Support{false, -t.L, kInf}; },
            [](const auto&) -> Support { throw std::logic_error("unreachable"); },
        },
        d.family());
}

}  // namespace twoside
