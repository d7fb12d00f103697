#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace twoside {

struct ChiSquare {
    int df;
};

struct FRatio {
    int d1;
    int d2;
};

struct Uniform {
    double a;
    double b;
};

/// Density 2(x+a)/[a(a+b)] on [-a, 0] and 2(b-x)/[b(a+b)] on [0, b]; mode at 0.
struct Triangular {
    double a;
    double b;
};

/// Standard normal left-truncated at -L.
struct TruncatedNormal {
    double L;
};

struct Binomial {
    std::int64_t n;
    double p;
};

/// Distribution of n11 in a 2x2 table with fixed margins n1+ = row1, n+1 = col1, n = total.
struct Hypergeometric {
    std::int64_t row1;
    std::int64_t col1;
    std::int64_t total;
};

/// Fisher's noncentral hypergeometric with odds ratio rho.
struct NcHypergeometric {
    std::int64_t row1;
    std::int64_t col1;
    std::int64_t total;
    double rho;
};

using Family = std::variant<ChiSquare, FRatio, Uniform, Triangular, TruncatedNormal, Binomial,
                            Hypergeometric, NcHypergeometric>;

struct Support {
    bool discrete;
    double lo;
    double hi;
};

/// Immutable null distribution. Discrete families carry a precomputed pmf
/// table over their (contiguous, integer) support, shared between copies.
class Distribution {
public:
    static Distribution chi_square(int df);
    static Distribution f_ratio(int d1, int d2);
    static Distribution uniform(double a, double b);
    static Distribution triangular(double a, double b);
    static Distribution truncated_normal(double L);
    static Distribution binomial(std::int64_t n, double p);
    static Distribution hypergeometric(std::int64_t row1, std::int64_t col1, std::int64_t total);
    static Distribution nc_hypergeometric(std::int64_t row1, std::int64_t col1, std::int64_t total,
                                          double rho);

    const Family& family() const { return family_; }
    bool is_discrete() const { return table_ != nullptr; }

    /// "family:p1,p2,..." in the CLI grammar.
    std::string describe() const;

    // Discrete-only accessors; throw std::logic_error on continuous families.
    std::int64_t support_lo() const;
    std::int64_t support_hi() const;
    /// pmf at support_lo() + i.
    std::span<const double> pmf_values() const;
    /// P(X <= x) for integer x, clamped outside the support.
    double lower_tail(std::int64_t x) const;
    /// P(X >= x), inclusive of x.
    double upper_tail(std::int64_t x) const;
    double mass(std::int64_t x) const;

private:
    struct Table {
        std::int64_t lo = 0;
        std::vector<double> pmf;
        std::vector<double> cdf;
        std::vector<double> sf;
    };

    explicit Distribution(Family family, std::shared_ptr<const Table> table = nullptr)
        : family_(family), table_(std::move(table)) {}

    static std::shared_ptr<const Table> make_table(std::int64_t lo, std::vector<double> log_weights);
    const Table& table() const;

    Family family_;
    std::shared_ptr<const Table> table_;
};

/// Right-continuous distribution function; discrete: P(X <= floor(x)).
double cdf(const Distribution& d, double x);
/// Survival function. Continuous: 1 - F(x). Discrete: the inclusive tail P(X >= ceil(x)).
double sf(const Distribution& d, double x);
/// Density, or probability mass for discrete families (x must then be an integer).
double density(const Distribution& d, double x);
/// Continuous: F^{-1}(p). Discrete: smallest support point with cdf >= p.
double quantile(const Distribution& d, double p);
/// Continuous: the x with sf(x) = q, computed from the upper tail.
/// Discrete: largest support point with P(X >= x) >= q.
double upper_quantile(const Distribution& d, double q);
double mean(const Distribution& d);
/// Points maximizing the density/pmf. Discrete families may return two;
/// the uniform distribution returns an empty set (every point is a mode).
std::vector<double> mode_set(const Distribution& d);
/// Continuous: F^{-1}(1/2). Discrete: smallest x with cdf(x) >= 1/2.
double median(const Distribution& d);
Support support(const Distribution& d);

}  // namespace twoside
