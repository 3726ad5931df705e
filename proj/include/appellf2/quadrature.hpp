#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>

#include "errors.hpp"
#include "special.hpp"

namespace appellf2 {

struct QuadratureResult {
    double value = 0.0;
    double est_error = 0.0;
    std::size_t panels = 0;
};

namespace detail {

struct GaussLegendre15 {
    std::array<double, 15> nodes{};
    std::array<double, 15> weights{};

    GaussLegendre15() {
        constexpr int n = 15;
        for (int i = 0; i < n; ++i) {
            double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = t;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (t * p1 - p0) / (t * t - 1.0);
                const double dt = p1 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-16) break;
            }
            nodes[i] = t;
            weights[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
    }
};

inline const GaussLegendre15& gauss_legendre15() {
    static const GaussLegendre15 rule;
    return rule;
}

template <class F>
double gl15_panel(F& f, double lo, double hi) {
    const auto& r = gauss_legendre15();
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
    return s * half;
}

template <class F>
void adapt(F& f, double lo, double hi, double whole, double tol, int depth,
           QuadratureResult& out) {
    const double mid = 0.5 * (lo + hi);
    const double left = gl15_panel(f, lo, mid);
    const double right = gl15_panel(f, mid, hi);
    const double halves = left + right;
    const double diff = std::abs(halves - whole);
    if (diff <= tol || depth <= 0 || diff <= 64.0 * 2.2e-16 * std::abs(halves) ||
        mid <= lo || mid >= hi) {
        out.value += halves;
        out.est_error += diff;
        out.panels += 2;
        return;
    }
    adapt(f, lo, mid, left, 0.5 * tol, depth - 1, out);
    adapt(f, mid, hi, right, 0.5 * tol, depth - 1, out);
}

}  // namespace detail

inline constexpr int max_bisection_depth = 50;

// Adaptive bisection over 15-point Gauss-Legendre panels; a panel is accepted
// when it agrees with the sum of its halves to within its share of abs_tol.
template <class F>
QuadratureResult integrate(F&& f, double lo, double hi, double abs_tol,
                           int max_depth = max_bisection_depth) {
    QuadratureResult out;
    if (lo == hi) return out;
    detail::adapt(f, lo, hi, detail::gl15_panel(f, lo, hi), abs_tol, max_depth, out);
    return out;
}

// Integral of a Beta-type density t^(p-1) (1-t)^(q-1) g(t) over [0, 1], split
// at 1/2. Algebraic endpoint singularities with exponent below 1 are removed by
// t = u^(1/p) on the left half and 1 - t = v^(1/q) on the right half.
// `rel_tol` is relative to max(1, |normalized value|), where the normalized
// value is the integral times `norm`.
template <class G>
QuadratureResult integrate_beta_weight(G&& g, double p, double q, double norm, double rel_tol) {
    auto left = [&](double u) {
        if (p < 1.0) {
            const double t = std::pow(u, 1.0 / p);
            return std::pow(1.0 - t, q - 1.0) * g(t) / p;
        }
        return std::pow(u, p - 1.0) * std::pow(1.0 - u, q - 1.0) * g(u);
    };
    auto right = [&](double v) {
        if (q < 1.0) {
            const double s = std::pow(v, 1.0 / q);
            return std::pow(1.0 - s, p - 1.0) * g(1.0 - s) / q;
        }
        const double t = 1.0 - v;
        return std::pow(t, p - 1.0) * std::pow(v, q - 1.0) * g(t);
    };
    const double left_hi = p < 1.0 ? std::pow(0.5, p) : 0.5;
    const double right_hi = q < 1.0 ? std::pow(0.5, q) : 0.5;

    // Coarse pass sets the absolute target.
    const double coarse = detail::gl15_panel(left, 0.0, left_hi) +
                          detail::gl15_panel(right, 0.0, right_hi);
    const double scale = std::max(1.0, std::abs(norm * coarse));
    const double abs_tol = rel_tol * scale / std::abs(norm) * 0.25;

    const auto a = integrate(left, 0.0, left_hi, abs_tol);
    const auto b = integrate(right, 0.0, right_hi, abs_tol);
    return {a.value + b.value, a.est_error + b.est_error, a.panels + b.panels};
}

inline double gauss2f1_euler(const HypParams2F1& p, double z, double tol) {
    if (!(p.b > 0.0 && p.c > p.b))
        throw DomainError("gauss2f1_euler: requires c > b > 0");
    if (!(z < 1.0)) throw DomainError("gauss2f1_euler: requires z < 1");
    if (!(tol > 0.0)) throw DomainError("gauss2f1_euler: tolerance must be positive");
    const double norm = inverse_beta(p.b, p.c - p.b);
    auto g = [&](double t) { return std::pow(1.0 - z * t, -p.a); };
    const auto r = integrate_beta_weight(g, p.b, p.c - p.b, norm, tol);
    return norm * r.value;
}

}  // namespace appellf2
