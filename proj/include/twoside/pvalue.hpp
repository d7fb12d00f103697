#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "twoside/distribution.hpp"

namespace twoside {

/// Location parameter separating the left tail from the right tail.
struct TailAnchor {
    enum class Kind { Mean, Mode, Median, Explicit };

    Kind kind = Kind::Mean;
    double value = 0.0;  // used by Kind::Explicit only

    static TailAnchor mean() { return {Kind::Mean, 0.0}; }
    static TailAnchor mode() { return {Kind::Mode, 0.0}; }
    static TailAnchor median() { return {Kind::Median, 0.0}; }
    static TailAnchor at(double v) { return {Kind::Explicit, v}; }
};

struct Weights {
    double left = 0.5;
    double right = 0.5;
};

enum class MethodKind { Doubled, Weighted, Conditional, ConditionalModified, MinLikelihood };

struct PValueMethod {
    MethodKind kind = MethodKind::Conditional;
    Weights weights{};  // used by MethodKind::Weighted only

    static PValueMethod doubled() { return {MethodKind::Doubled, {}}; }
    static PValueMethod weighted(Weights w) { return {MethodKind::Weighted, w}; }
    static PValueMethod conditional() { return {MethodKind::Conditional, {}}; }
    static PValueMethod conditional_modified() { return {MethodKind::ConditionalModified, {}}; }
    static PValueMethod min_likelihood() { return {MethodKind::MinLikelihood, {}}; }

    /// Stable identifier: doubled, weighted, conditional, conditional_modified, minlik.
    std::string name() const;
};

/// Numeric anchor for `d`. Throws std::domain_error when the mode is not
/// unique (uniform, or a two-mode discrete distribution) or the resolved
/// value lies outside the convex hull of the support.
double resolve_anchor(const Distribution& d, const TailAnchor& anchor);

/// Whether a discrete distribution puts mass on A (A integer within the support).
bool anchor_attainable(const Distribution& d, double A);

/// Tail weights for the conditional constructions. Continuous: (F(A), 1 - F(A)).
/// Discrete: (P(X <= A), P(X >= A)), each divided by 1 + P(A) when `modified`
/// is set and A is attainable.
Weights conditional_weights(const Distribution& d, double A, bool modified = false);

/// min(F(x)/w_L for x < A, (1 - F(x))/w_R for x > A, 1); 1 at x = A.
/// Discrete families use the inclusive tails P(X <= x) and P(X >= x).
double p_weighted(const Distribution& d, double x, double A, Weights w);

/// Doubled p-value. Continuous: weights 1/2 about A. Discrete:
/// 2 min(P(X <= x), P(X >= x)). With `truncate` unset the raw doubled tail is
/// returned, which may exceed 1 (the x = A point takes the left tail).
double p_doubled(const Distribution& d, double x, double A, bool truncate = true);

/// F(x)/F(A) below A, (1 - F(x))/(1 - F(A)) above. A must lie strictly inside the support.
double p_conditional_continuous(const Distribution& d, double x, double A);

/// Conditional p-value for discrete families, optionally with the weights
/// modified for an attainable anchor. Capped at 1.
double p_conditional_discrete(const Distribution& d, std::int64_t x, double A, bool modified);

/// P(f(X) <= f(x)). Discrete: full-support enumeration with a 1e-9 relative tie
/// tolerance on pmf values. Continuous: unimodal families via the conjugate
/// point; identically 1 for the uniform distribution.
double p_min_likelihood(const Distribution& d, double x);

/// The point on the opposite side of the mode with the same density, or
/// nullopt when the density never drops that low on that side.
/// Throws std::domain_error at the mode or for non-unimodal families.
std::optional<double> conjugate_point(const Distribution& d, double x);

/// The point on the opposite tail (about A) with the same conditional p-value.
std::optional<double> pc_equivalent_point(const Distribution& d, double x, double A);

/// Dispatches `method` to the matching construction. For continuous families
/// conditional_modified is the plain conditional p-value.
double two_sided_pvalue(const Distribution& d, double x, double A, const PValueMethod& method,
                        bool truncate = true);

/// Tail weights a method applies at anchor A; nullopt for min-likelihood.
std::optional<Weights> method_weights(const Distribution& d, double A, const PValueMethod& method);

}  // namespace twoside
