#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "quadrature.hpp"
#include "special.hpp"

namespace appellf2 {

// F2(sigma; alpha1, alpha2; beta1, beta2; x, y)
struct F2Params {
    double sigma;
    double alpha1;
    double alpha2;
    double beta1;
    double beta2;

    bool operator==(const F2Params&) const = default;
};

struct EvalPoint {
    double x;
    double y;

    bool series_convergent() const { return std::abs(x) + std::abs(y) < 1.0; }
    bool operator==(const EvalPoint&) const = default;
};

enum class Method { Series, SingleIntegral, DoubleIntegral, ClosedForm };

inline std::string to_string(Method m) {
    switch (m) {
        case Method::Series: return "series";
        case Method::SingleIntegral: return "single-integral";
        case Method::DoubleIntegral: return "double-integral";
        case Method::ClosedForm: return "closed";
    }
    return "?";
}

struct F2Result {
    double value = 0.0;
    Method method = Method::Series;
    double est_error = 0.0;
    std::size_t terms = 0;   // diagonals summed
    std::size_t panels = 0;  // quadrature panels
    bool converged = true;
};

inline constexpr std::size_t max_f2_diagonals = 5000;
// Below this |y| the 1/y closed forms defer to the double series.
inline constexpr double small_y_threshold = 1e-4;

namespace detail {

inline void check_point(const EvalPoint& pt, const char* who) {
    if (!pt.series_convergent())
        throw DomainError(std::string(who) + ": requires |x| + |y| < 1, got (" +
                          std::to_string(pt.x) + ", " + std::to_string(pt.y) + ")");
}

inline void check_beta(double beta, const char* who) {
    if (is_nonpositive_integer(beta))
        throw PoleError(std::string(who) + ": beta " + std::to_string(beta) +
                        " is a non-positive integer");
}

// Sums sum_N scale_N * sum_{m+n=N} row(m) * col(n) * C(N,m) x^m y^n, where the
// binomial-weighted monomials follow the Pascal recurrence. scale_next(N)
// returns scale_{N+1} / scale_N.
template <class RowStep, class ColStep, class ScaleStep>
F2Result diagonal_sum(RowStep row_step, ColStep col_step, ScaleStep scale_next, double x,
                      double y, double tol, std::size_t max_diagonals) {
    std::vector<double> row{1.0}, col{1.0}, weight{1.0};
    double scale = 1.0;
    double sum = 1.0;
    double last = 0.0;
    int small = 0;
    for (std::size_t n = 0; n + 1 < max_diagonals; ++n) {
        scale *= scale_next(n);
        row.push_back(row.back() * row_step(n));
        col.push_back(col.back() * col_step(n));
        weight.push_back(0.0);
        for (std::size_t m = weight.size() - 1; m > 0; --m)
            weight[m] = x * weight[m - 1] + y * weight[m];
        weight[0] *= y;

        const std::size_t big_n = n + 1;
        double diag = 0.0;
        if (scale != 0.0) {
            for (std::size_t m = 0; m <= big_n; ++m) diag += weight[m] * row[m] * col[big_n - m];
            diag *= scale;
        }
        sum += diag;
        last = std::abs(diag);
        if (last < tol * std::max(1.0, std::abs(sum))) {
            if (++small == 3) return {sum, Method::Series, last, big_n + 1, 0, true};
        } else {
            small = 0;
        }
    }
    return {sum, Method::Series, last, max_diagonals, 0, false};
}

}  // namespace detail

// Double series by anti-diagonals m + n = N.
inline F2Result f2_series(const F2Params& p, const EvalPoint& pt, double tol) {
    if (!(tol > 0.0)) throw DomainError("f2_series: tolerance must be positive");
    detail::check_beta(p.beta1, "f2_series");
    detail::check_beta(p.beta2, "f2_series");
    detail::check_point(pt, "f2_series");
    return detail::diagonal_sum(
        [&](std::size_t m) { return (p.alpha1 + m) / (p.beta1 + m); },
        [&](std::size_t n) { return (p.alpha2 + n) / (p.beta2 + n); },
        [&](std::size_t n) { return (p.sigma + n) / (n + 1.0); }, pt.x, pt.y, tol,
        max_f2_diagonals);
}

inline double f2_series_value(const F2Params& p, const EvalPoint& pt, double tol) {
    const auto r = f2_series(p, pt, tol);
    if (!r.converged) throw DomainError("f2_series: did not converge");
    return r.value;
}

inline F2Result f2_single_integral(const F2Params& p, const EvalPoint& pt, double tol) {
    if (!(p.beta1 > p.alpha1 && p.alpha1 > 0.0))
        throw DomainError("f2_single_integral: requires beta1 > alpha1 > 0");
    detail::check_point(pt, "f2_single_integral");
    detail::check_beta(p.beta2, "f2_single_integral");
    if (!(tol > 0.0)) throw DomainError("f2_single_integral: tolerance must be positive");

    const HypParams2F1 kernel{p.sigma, p.alpha2, p.beta2};
    const double kernel_tol = std::max(tol * 0.01, 1e-17);
    auto g = [&](double u) {
        const double w = 1.0 - pt.x * u;
        return std::pow(w, -p.sigma) * gauss2f1(kernel, pt.y / w, kernel_tol);
    };
    const double norm = inverse_beta(p.alpha1, p.beta1 - p.alpha1);
    const auto r = integrate_beta_weight(g, p.alpha1, p.beta1 - p.alpha1, norm, tol);
    return {norm * r.value, Method::SingleIntegral, std::abs(norm) * r.est_error, 0, r.panels,
            true};
}

inline constexpr double double_integral_target = 1e-6;

inline F2Result f2_double_integral(const F2Params& p, const EvalPoint& pt) {
    if (!(p.beta1 > p.alpha1 && p.alpha1 > 0.0 && p.beta2 > p.alpha2 && p.alpha2 > 0.0))
        throw DomainError("f2_double_integral: requires beta_j > alpha_j > 0");
    detail::check_point(pt, "f2_double_integral");

    const double inner_norm = inverse_beta(p.alpha2, p.beta2 - p.alpha2);
    const double outer_norm = inverse_beta(p.alpha1, p.beta1 - p.alpha1);
    const double inner_tol = double_integral_target * 1e-3;
    const double outer_tol = double_integral_target * 1e-2;
    std::size_t panels = 0;
    auto inner = [&](double u) {
        auto g = [&](double t) { return std::pow(1.0 - pt.x * u - pt.y * t, -p.sigma); };
        const auto r = integrate_beta_weight(g, p.alpha2, p.beta2 - p.alpha2, inner_norm, inner_tol);
        panels += r.panels;
        return inner_norm * r.value;
    };
    const auto r = integrate_beta_weight(inner, p.alpha1, p.beta1 - p.alpha1, outer_norm, outer_tol);
    return {outer_norm * r.value, Method::DoubleIntegral, double_integral_target, 0,
            panels + r.panels, true};
}

// F2(a+1; alpha1, 1; beta1, 2; x, y) as a two-term 2F1 combination.
inline double f2_theorem1_shift(double a, double alpha1, double beta1, const EvalPoint& pt,
                                double tol) {
    if (a == 0.0) throw ParamError("f2_theorem1_shift: a = 0 is excluded");
    detail::check_beta(beta1, "f2_theorem1_shift");
    detail::check_point(pt, "f2_theorem1_shift");
    const double x = pt.x, y = pt.y;
    if (std::abs(y) < small_y_threshold)
        return f2_series_value({a + 1.0, alpha1, 1.0, beta1, 2.0}, pt, tol);

    const HypParams2F1 h{a, alpha1, beta1};
    const double inner_tol = std::max(tol * std::min(1.0, std::abs(a * y)) * 0.1, 1e-17);
    const double near = gauss2f1(h, x, inner_tol);
    const double shifted = gauss2f1(h, x / (1.0 - y), inner_tol);
    return (shifted * std::pow(1.0 - y, -a) - near) / (a * y);
}

// F2(1; alpha1, 1; beta1, 2; x, y) through 3F2 and a logarithm.
inline double f2_theorem1_log(double alpha1, double beta1, const EvalPoint& pt, double tol) {
    detail::check_beta(beta1, "f2_theorem1_log");
    detail::check_point(pt, "f2_theorem1_log");
    const double x = pt.x, y = pt.y;
    if (std::abs(y) < small_y_threshold)
        return f2_series_value({1.0, alpha1, 1.0, beta1, 2.0}, pt, tol);

    const HypParams3F2 h{alpha1 + 1.0, 1.0, 1.0, beta1 + 1.0, 2.0};
    const double inner_tol = std::max(tol * std::min(1.0, std::abs(y)) * 0.1, 1e-17);
    const double xs = x / (1.0 - y);
    const double bracket = xs * clausen3f2(h, xs, inner_tol) - x * clausen3f2(h, x, inner_tol);
    return alpha1 / (beta1 * y) * bracket - std::log1p(-y) / y;
}

struct TransformedF2 {
    double scale;
    F2Params params;
    EvalPoint point;
};

inline TransformedF2 swap_args(const F2Params& p, const EvalPoint& pt) {
    return {1.0, {p.sigma, p.alpha2, p.alpha1, p.beta2, p.beta1}, {pt.y, pt.x}};
}

namespace detail {

inline double real_power(double base, double exponent, const char* who) {
    if (base < 0.0 && exponent != std::round(exponent))
        throw DomainError(std::string(who) + ": negative base with non-integer exponent");
    return std::pow(base, exponent);
}

}  // namespace detail

inline TransformedF2 transform_x(const F2Params& p, const EvalPoint& pt) {
    if (pt.x == 1.0) throw DomainError("transform_x: x = 1");
    const double w = 1.0 - pt.x;
    return {detail::real_power(w, -p.sigma, "transform_x"),
            {p.sigma, p.beta1 - p.alpha1, p.alpha2, p.beta1, p.beta2},
            {pt.x / (pt.x - 1.0), pt.y / w}};
}

inline TransformedF2 transform_xy(const F2Params& p, const EvalPoint& pt) {
    if (pt.x + pt.y == 1.0) throw DomainError("transform_xy: x + y = 1");
    const double w = 1.0 - pt.x - pt.y;
    return {detail::real_power(w, -p.sigma, "transform_xy"),
            {p.sigma, p.beta1 - p.alpha1, p.beta2 - p.alpha2, p.beta1, p.beta2},
            {pt.x / (pt.x + pt.y - 1.0), pt.y / (pt.x + pt.y - 1.0)}};
}

// Appell F1(alpha; beta, beta_prime; gamma; x, y) by anti-diagonals.
inline double f1_series(double alpha, double beta, double beta_prime, double gamma,
                        const EvalPoint& pt, double tol) {
    if (!(std::abs(pt.x) < 1.0 && std::abs(pt.y) < 1.0))
        throw DomainError("f1_series: requires |x| < 1 and |y| < 1");
    if (is_nonpositive_integer(gamma)) throw PoleError("f1_series: gamma is a non-positive integer");
    if (!(tol > 0.0)) throw DomainError("f1_series: tolerance must be positive");

    std::vector<double> u{1.0}, v{1.0};
    double scale = 1.0, sum = 1.0;
    int small = 0;
    for (std::size_t n = 0; n + 1 < max_f2_diagonals; ++n) {
        const double dn = static_cast<double>(n);
        scale *= (alpha + dn) / (gamma + dn);
        u.push_back(u.back() * (beta + dn) * pt.x / (dn + 1.0));
        v.push_back(v.back() * (beta_prime + dn) * pt.y / (dn + 1.0));
        const std::size_t big_n = n + 1;
        double diag = 0.0;
        if (scale != 0.0) {
            for (std::size_t m = 0; m <= big_n; ++m) diag += u[m] * v[big_n - m];
            diag *= scale;
        }
        sum += diag;
        if (std::abs(diag) < tol * std::max(1.0, std::abs(sum))) {
            if (++small == 3) return sum;
        } else {
            small = 0;
        }
    }
    throw DomainError("f1_series: did not converge");
}

// F1 through F2, choosing between the two equivalent forms the one whose F2
// argument pair has the smaller |.| + |.|.
inline double f1_via_f2(double alpha, double beta, double beta_prime, double gamma,
                        const EvalPoint& pt, double tol) {
    const double x = pt.x, y = pt.y;
    if (!(x * y > 0.0)) throw DomainError("f1_via_f2: requires x * y > 0");
    const EvalPoint via_x{x, 1.0 - x / y};
    const EvalPoint via_y{y, 1.0 - y / x};
    const auto norm = [](const EvalPoint& q) { return std::abs(q.x) + std::abs(q.y); };
    const double s = beta + beta_prime;
    if (norm(via_x) <= norm(via_y)) {
        if (!via_x.series_convergent())
            throw DomainError("f1_via_f2: no series-convergent F2 argument pair");
        return std::pow(x / y, beta_prime) *
               f2_series_value({s, alpha, beta_prime, gamma, s}, via_x, tol);
    }
    if (!via_y.series_convergent())
        throw DomainError("f1_via_f2: no series-convergent F2 argument pair");
    return std::pow(y / x, beta) * f2_series_value({s, alpha, beta, gamma, s}, via_y, tol);
}

// Parametric families with elementary closed forms.
enum class Family {
    PowerDifference = 1,  // F2(a+1; alpha, 1; alpha, 2), params {a, alpha}
    MixedPower,           // F2(a+1; alpha, 1; a, 2), params {a, alpha}
    FourTerm,             // F2(a+1; 1, 1; 2, 2), params {a}
    LogRatio,             // F2(1; alpha, 1; alpha, 2), params {alpha}
    LogOneMinusY,         // F2(1; 0, 1; beta, 2), params {beta}
    PowerRatio,           // F2(2; b, 1; 2, 2), params {b}
};

inline constexpr int family_count = 6;

inline std::size_t family_arity(Family f) {
    return (f == Family::PowerDifference || f == Family::MixedPower) ? 2 : 1;
}

inline std::string to_string(Family f) {
    switch (f) {
        case Family::PowerDifference: return "power-difference";
        case Family::MixedPower: return "mixed-power";
        case Family::FourTerm: return "four-term";
        case Family::LogRatio: return "log-ratio";
        case Family::LogOneMinusY: return "log-one-minus-y";
        case Family::PowerRatio: return "power-ratio";
    }
    return "?";
}

namespace detail {

inline void check_family_arity(Family f, std::span<const double> fp) {
    if (fp.size() != family_arity(f))
        throw ParamError("family " + to_string(f) + ": expected " +
                         std::to_string(family_arity(f)) + " parameters");
}

}  // namespace detail

inline F2Params family_params(Family f, std::span<const double> fp) {
    detail::check_family_arity(f, fp);
    switch (f) {
        case Family::PowerDifference: return {fp[0] + 1.0, fp[1], 1.0, fp[1], 2.0};
        case Family::MixedPower: return {fp[0] + 1.0, fp[1], 1.0, fp[0], 2.0};
        case Family::FourTerm: return {fp[0] + 1.0, 1.0, 1.0, 2.0, 2.0};
        case Family::LogRatio: return {1.0, fp[0], 1.0, fp[0], 2.0};
        case Family::LogOneMinusY: return {1.0, 0.0, 1.0, fp[0], 2.0};
        case Family::PowerRatio: return {2.0, fp[0], 1.0, 2.0, 2.0};
    }
    throw ParamError("unknown family");
}

// One admissible parameter choice per family.
inline std::vector<std::pair<Family, std::vector<double>>> family_examples() {
    return {{Family::PowerDifference, {0.5, 1.5}}, {Family::MixedPower, {1.5, 0.5}},
            {Family::FourTerm, {2.5}},             {Family::LogRatio, {2.0 / 3.0}},
            {Family::LogOneMinusY, {2.5}},         {Family::PowerRatio, {0.5}}};
}

inline double f2_family_closed(Family f, std::span<const double> fp, const EvalPoint& pt,
                               double tol = 1e-14) {
    detail::check_family_arity(f, fp);
    switch (f) {
        case Family::PowerDifference:
            if (fp[0] == 0.0) throw ParamError("family power-difference: a = 0 is excluded");
            break;
        case Family::MixedPower:
            if (is_nonpositive_integer(fp[0]))
                throw ParamError("family mixed-power: a must not be a non-positive integer");
            break;
        case Family::FourTerm:
            if (fp[0] == 0.0 || fp[0] == 1.0)
                throw ParamError("family four-term: a = 0 and a = 1 are excluded");
            break;
        case Family::LogRatio: break;
        case Family::LogOneMinusY: detail::check_beta(fp[0], "family log-one-minus-y"); break;
        case Family::PowerRatio:
            if (fp[0] == 1.0) throw ParamError("family power-ratio: b = 1 is excluded");
            break;
    }
    const double x = pt.x, y = pt.y;
    if (!(x > 0.0 && y > 0.0 && x + y < 1.0))
        throw DomainError("family " + to_string(f) + ": requires x > 0, y > 0, x + y < 1");

    const bool over_x = f == Family::FourTerm || f == Family::PowerRatio;
    if (y < small_y_threshold || (over_x && x < small_y_threshold))
        return f2_series_value(family_params(f, fp), pt, tol);

    switch (f) {
        case Family::PowerDifference: {
            const double a = fp[0];
            return (std::pow(1.0 - x - y, -a) - std::pow(1.0 - x, -a)) / (a * y);
        }
        case Family::MixedPower: {
            const double a = fp[0], al = fp[1];
            return (std::pow(1.0 - y, al - a) * std::pow(1.0 - x - y, -al) -
                    std::pow(1.0 - x, -al)) /
                   (a * y);
        }
        case Family::FourTerm: {
            const double a = fp[0], e = 1.0 - a;
            return (std::pow(1.0 - x - y, e) - std::pow(1.0 - y, e) - std::pow(1.0 - x, e) + 1.0) /
                   (a * (a - 1.0) * x * y);
        }
        case Family::LogRatio: return std::log((1.0 - x) / (1.0 - x - y)) / y;
        case Family::LogOneMinusY: return -std::log1p(-y) / y;
        case Family::PowerRatio: {
            const double b = fp[0], e = 1.0 - b;
            return (std::pow((1.0 - x - y) / (1.0 - y), e) - std::pow(1.0 - x, e)) /
                   ((b - 1.0) * x * y);
        }
    }
    throw ParamError("unknown family");
}

}  // namespace appellf2
