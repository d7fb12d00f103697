#include "twoside/pvalue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "format.hpp"
#include "twoside/roots.hpp"

namespace twoside {

namespace {

constexpr double kTieTol = 1e-9;
constexpr double kRootTol = 1e-12;

// Snaps a discrete anchor to the nearest integer when it is one up to rounding.
double snap(const Distribution& d, double A) {
    if (!d.is_discrete()) return A;
    const double r = std::round(A);
    return std::abs(A - r) <= kTieTol * std::max(1.0, std::abs(A)) ? r : A;
}

std::int64_t as_integer(double x, const char* what) {
    if (x != std::floor(x) || !std::isfinite(x)) {
        throw std::domain_error(std::string(what) + ": discrete families need an integer x");
    }
    return static_cast<std::int64_t>(x);
}

double unimodal_mode(const Distribution& d) {
    const auto modes = mode_set(d);
    if (modes.size() != 1) throw std::domain_error("density is not unimodal");
    return modes.front();
}

}  // namespace

std::string PValueMethod::name() const {
    switch (kind) {
        case MethodKind::Doubled: return "doubled";
        case MethodKind::Weighted: return "weighted";
        case MethodKind::Conditional: return "conditional";
        case MethodKind::ConditionalModified: return "conditional_modified";
        case MethodKind::MinLikelihood: return "minlik";
    }
    return "unknown";
}

double resolve_anchor(const Distribution& d, const TailAnchor& anchor) {
    double A = 0.0;
    switch (anchor.kind) {
        case TailAnchor::Kind::Mean: A = mean(d); break;
        case TailAnchor::Kind::Median: A = median(d); break;
        case TailAnchor::Kind::Explicit: A = anchor.value; break;
        case TailAnchor::Kind::Mode: {
            const auto modes = mode_set(d);
            if (modes.empty()) throw std::domain_error("mode not unique");
            if (modes.size() > 1) {
                std::string msg = "mode not unique: modes at";
                for (double m : modes) msg += " " + detail::format_number(m);
                throw std::domain_error(msg + "; pass an explicit anchor");
            }
            A = modes.front();
            break;
        }
    }
    const Support s = support(d);
    if (!std::isfinite(A) || A < s.lo || A > s.hi) {
        throw std::domain_error("anchor " + detail::format_number(A) + " lies outside the support");
    }
    return snap(d, A);
}

bool anchor_attainable(const Distribution& d, double A) {
    if (!d.is_discrete()) return false;
    const double a = snap(d, A);
    return a == std::floor(a) && a >= static_cast<double>(d.support_lo()) &&
           a <= static_cast<double>(d.support_hi());
}

Weights conditional_weights(const Distribution& d, double A, bool modified) {
    if (!d.is_discrete()) return {cdf(d, A), sf(d, A)};
    A = snap(d, A);
    Weights w{cdf(d, A), sf(d, A)};
    if (modified && anchor_attainable(d, A)) {
        const double scale = 1.0 + d.mass(static_cast<std::int64_t>(A));
        w.left /= scale;
        w.right /= scale;
    }
    return w;
}

double p_weighted(const Distribution& d, double x, double A, Weights w) {
    if (!(w.left > 0.0 && w.right > 0.0)) throw std::domain_error("p_weighted: weights must be positive");
    if (d.is_discrete()) A = snap(d, A);
    double p = 1.0;
    if (x < A) p = cdf(d, x) / w.left;
    if (x > A) p = sf(d, x) / w.right;
    return std::min(p, 1.0);
}

double p_doubled(const Distribution& d, double x, double A, bool truncate) {
    double raw = 0.0;
    if (d.is_discrete()) {
        const std::int64_t k = as_integer(x, "p_doubled");
        raw = 2.0 * std::min(d.lower_tail(k), d.upper_tail(k));
    } else {
        raw = x <= A ? 2.0 * cdf(d, x) : 2.0 * sf(d, x);
        if (truncate && x == A) return 1.0;
    }
    return truncate ? std::min(raw, 1.0) : raw;
}

double p_conditional_continuous(const Distribution& d, double x, double A) {
    if (d.is_discrete()) throw std::domain_error("p_conditional_continuous: discrete family");
    const Support s = support(d);
    if (!(A > s.lo && A < s.hi)) {
        throw std::domain_error("p_conditional_continuous: anchor must lie strictly inside the support");
    }
    if (x == A) return 1.0;
    const double p = x < A ? cdf(d, x) / cdf(d, A) : sf(d, x) / sf(d, A);
    return std::min(p, 1.0);
}

double p_conditional_discrete(const Distribution& d, std::int64_t x, double A, bool modified) {
    if (!d.is_discrete()) throw std::domain_error("p_conditional_discrete: continuous family");
    A = snap(d, A);
    const Weights w = conditional_weights(d, A, modified);
    const double xd = static_cast<double>(x);
    if (xd == A) return 1.0;
    const double p = xd < A ? d.lower_tail(x) / w.left : d.upper_tail(x) / w.right;
    return std::min(p, 1.0);
}

std::optional<double> conjugate_point(const Distribution& d, double x) {
    if (d.is_discrete()) throw std::domain_error("conjugate_point: continuous families only");
    const double mode = unimodal_mode(d);
    if (x == mode) throw std::domain_error("conjugate_point: x is the mode");
    const Support s = support(d);
    if (x < s.lo || x > s.hi) throw std::domain_error("conjugate_point: x outside the support");

    const double fx = density(d, x);
    auto gap = [&](double y) { return density(d, y) - fx; };
    // x so close to the mode that its density rounds to the peak
    if (gap(mode) <= 0.0) return mode;

    if (x < mode) {
        double hi = s.hi;
        if (std::isinf(hi)) {
            double step = std::max(1.0, std::abs(mode));
            hi = mode + step;
            for (int i = 0; i < 200 && gap(hi) > 0.0; ++i) {
                step *= 2.0;
                hi = mode + step;
            }
            if (gap(hi) > 0.0) return std::nullopt;
        } else if (gap(hi) > 0.0) {
            return std::nullopt;
        }
        return roots::brent(gap, mode, hi, kRootTol);
    }
    if (mode <= s.lo) return std::nullopt;
    if (gap(s.lo) > 0.0) return std::nullopt;
    return roots::brent(gap, s.lo, mode, kRootTol);
}

double p_min_likelihood(const Distribution& d, double x) {
    if (d.is_discrete()) {
        const std::int64_t k = as_integer(x, "p_min_likelihood");
        const double level = d.mass(k) * (1.0 + kTieTol);
        double total = 0.0;
        for (double m : d.pmf_values()) {
            if (m <= level) total += m;
        }
        return std::min(total, 1.0);
    }
    if (std::holds_alternative<Uniform>(d.family())) return 1.0;
    const Support s = support(d);
    if (x < s.lo || x > s.hi) return 0.0;
    const double mode = unimodal_mode(d);
    if (x == mode) return 1.0;
    const auto partner = conjugate_point(d, x);
    double p = 0.0;
    if (x < mode) {
        p = cdf(d, x) + (partner ? sf(d, *partner) : 0.0);
    } else {
        p = sf(d, x) + (partner ? cdf(d, *partner) : 0.0);
    }
    return std::min(p, 1.0);
}

std::optional<double> pc_equivalent_point(const Distribution& d, double x, double A) {
    if (d.is_discrete()) throw std::domain_error("pc_equivalent_point: continuous families only");
    if (x == A) throw std::domain_error("pc_equivalent_point: x equals the anchor");
    const double pc = p_conditional_continuous(d, x, A);
    if (x < A) {
        const double target = pc * sf(d, A);
        if (!(target > 0.0)) return std::nullopt;
        return upper_quantile(d, target);
    }
    const double target = pc * cdf(d, A);
    if (!(target > 0.0)) return std::nullopt;
    return quantile(d, target);
}

double two_sided_pvalue(const Distribution& d, double x, double A, const PValueMethod& method,
                        bool truncate) {
    switch (method.kind) {
        case MethodKind::Doubled: return p_doubled(d, x, A, truncate);
        case MethodKind::Weighted: return p_weighted(d, x, A, method.weights);
        case MethodKind::MinLikelihood: return p_min_likelihood(d, x);
        case MethodKind::Conditional:
        case MethodKind::ConditionalModified:
            if (!d.is_discrete()) return p_conditional_continuous(d, x, A);
            return p_conditional_discrete(d, as_integer(x, "two_sided_pvalue"), A,
                                          method.kind == MethodKind::ConditionalModified);
    }
    throw std::logic_error("two_sided_pvalue: unknown method");
}

std::optional<Weights> method_weights(const Distribution& d, double A, const PValueMethod& method) {
    switch (method.kind) {
        case MethodKind::Doubled: return Weights{0.5, 0.5};
        case MethodKind::Weighted: return method.weights;
        case MethodKind::Conditional: return conditional_weights(d, A, false);
        case MethodKind::ConditionalModified: return conditional_weights(d, A, d.is_discrete());
        case MethodKind::MinLikelihood: return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace twoside
