#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "errors.hpp"

namespace appellf2 {

inline constexpr double pole_tolerance = 1e-12;
inline constexpr std::size_t max_series_terms = 100000;

struct HypParams2F1 {
    double a;
    double b;
    double c;
};

struct HypParams3F2 {
    double a1;
    double a2;
    double a3;
    double b1;
    double b2;
};

struct SeriesResult {
    double value = 0.0;
    std::size_t terms_used = 0;
    double est_error = 0.0;  // magnitude of the last term added
    bool converged = false;
};

struct SignedLog {
    double log_abs;
    int sign;
};

inline bool is_nonpositive_integer(double v, double tol = pole_tolerance) {
    return v < 0.5 && std::abs(v - std::round(v)) <= tol;
}

// Exact non-positive integer, as used for series termination.
inline bool is_exact_nonpositive_integer(double v) {
    return v <= 0.0 && v == std::round(v);
}

inline double pochhammer(double lambda, unsigned k) {
    double p = 1.0;
    for (unsigned j = 0; j < k; ++j) p *= lambda + j;
    return p;
}

inline SignedLog ln_pochhammer(double lambda, unsigned k) {
    double acc = 0.0;
    int sign = 1;
    for (unsigned j = 0; j < k; ++j) {
        const double f = lambda + j;
        if (f == 0.0)
            throw DomainError("ln_pochhammer: factor lambda+" + std::to_string(j) + " is zero");
        if (f < 0.0) sign = -sign;
        acc += std::log(std::abs(f));
    }
    return {acc, sign};
}

namespace detail {

// Throws PoleError unless every near-pole lower parameter -q is preceded by an
// exact upper parameter -p with p <= q (the series then terminates first).
template <std::size_t P, std::size_t Q>
void check_lower_parameters(const std::array<double, P>& upper, const std::array<double, Q>& lower,
                            const char* who) {
    for (double b : lower) {
        if (!is_nonpositive_integer(b)) continue;
        const double q = -std::round(b);
        const bool terminates = std::any_of(upper.begin(), upper.end(), [q](double a) {
            return is_exact_nonpositive_integer(a) && -a <= q;
        });
        if (!terminates)
            throw PoleError(std::string(who) + ": lower parameter " + std::to_string(b) +
                            " is a non-positive integer");
    }
}

}  // namespace detail

// Generalized hypergeometric series pFq(upper; lower; z) for |z| < 1.
// Stops after three consecutive terms below tol * max(1, |partial sum|), on an
// exactly zero term, or at max_series_terms (converged = false).
template <std::size_t P, std::size_t Q>
SeriesResult hypergeometric_series(const std::array<double, P>& upper,
                                   const std::array<double, Q>& lower, double z, double tol,
                                   const char* who = "hypergeometric_series") {
    if (!(tol > 0.0)) throw DomainError(std::string(who) + ": tolerance must be positive");
    if (!(std::abs(z) < 1.0))
        throw DomainError(std::string(who) + ": |z| must be below 1, got " + std::to_string(z));
    detail::check_lower_parameters(upper, lower, who);

    double term = 1.0;
    double sum = 1.0;
    int small = 0;
    for (std::size_t n = 0; n < max_series_terms; ++n) {
        const double dn = static_cast<double>(n);
        double num = 1.0;
        for (double a : upper) num *= a + dn;
        if (num == 0.0 || z == 0.0) return {sum, n + 1, 0.0, true};
        double den = dn + 1.0;
        for (double b : lower) den *= b + dn;
        term *= num * z / den;
        sum += term;
        if (term == 0.0) return {sum, n + 2, 0.0, true};
        if (std::abs(term) < tol * std::max(1.0, std::abs(sum))) {
            if (++small == 3) return {sum, n + 2, std::abs(term), true};
        } else {
            small = 0;
        }
    }
    return {sum, max_series_terms, std::abs(term), false};
}

inline SeriesResult gauss2f1_series(const HypParams2F1& p, double z, double tol) {
    return hypergeometric_series(std::array{p.a, p.b}, std::array{p.c}, z, tol,
                                 "gauss2f1_series");
}

inline SeriesResult clausen3f2_series(const HypParams3F2& p, double z, double tol) {
    return hypergeometric_series(std::array{p.a1, p.a2, p.a3}, std::array{p.b1, p.b2}, z, tol,
                                 "clausen3f2_series");
}

// Series value or DomainError when the series did not converge.
inline double gauss2f1(const HypParams2F1& p, double z, double tol) {
    const auto r = gauss2f1_series(p, z, tol);
    if (!r.converged) throw DomainError("gauss2f1: series did not converge");
    return r.value;
}

inline double clausen3f2(const HypParams3F2& p, double z, double tol) {
    const auto r = clausen3f2_series(p, z, tol);
    if (!r.converged) throw DomainError("clausen3f2: series did not converge");
    return r.value;
}

// 1 / B(a, b), via log-Gamma.
inline double inverse_beta(double a, double b) {
    return std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b));
}

}  // namespace appellf2
