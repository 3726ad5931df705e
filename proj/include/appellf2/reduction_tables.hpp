#pragma once

#include <cmath>
#include <string>

#include "errors.hpp"
#include "special.hpp"

// Elementary closed forms for a handful of 2F1 and 3F2 parameter sets,
// evaluated exactly as tabulated.

namespace appellf2 {

enum class Table1Row { R1, R2, R3, R4, R5, R6 };

// Extra inputs for the parameterized rows: R5 is 2F1(1, b; b - m; z) and
// R6 is 2F1(-n/2, (1 - n)/2; 1 - n; z).
struct Table1Args {
    double b = 0.0;
    int m = 0;
    int n = 0;
};

// Below this |z| the rows with a removable 0/0 at z = 0 use the series.
inline constexpr double table_small_z = 1e-3;
inline constexpr double table_series_tol = 1e-15;

inline std::string to_string(Table1Row r) {
    switch (r) {
        case Table1Row::R1: return "r1";
        case Table1Row::R2: return "r2";
        case Table1Row::R3: return "r3";
        case Table1Row::R4: return "r4";
        case Table1Row::R5: return "r5";
        case Table1Row::R6: return "r6";
    }
    return "?";
}

namespace detail {

inline void check_row_args(Table1Row row, const Table1Args& args) {
    if (row == Table1Row::R5) {
        if (args.m < 1) throw ParamError("table1 r5: m must be a positive integer");
        const double b = args.b;
        if (b == 1.0) throw ParamError("table1 r5: b = 1 is excluded");
        if (is_nonpositive_integer(b - args.m)) throw ParamError("table1 r5: b - m is a pole");
        if (pochhammer(1.0 - b, static_cast<unsigned>(args.m)) == 0.0 ||
            pochhammer(2.0 - b, static_cast<unsigned>(args.m - 1)) == 0.0)
            throw ParamError("table1 r5: b makes a Pochhammer denominator vanish");
    }
    if (row == Table1Row::R6 && (args.n < 0 || args.n == 1 || args.n == 2))
        throw ParamError("table1 r6: n must be 0 or at least 3");
}

}  // namespace detail

// 2F1 parameters that a row claims to represent.
inline HypParams2F1 table1_params(Table1Row row, const Table1Args& args = {}) {
    detail::check_row_args(row, args);
    switch (row) {
        case Table1Row::R1: return {2.5, 4.0, 1.0};
        case Table1Row::R2: return {0.8, 1.0, 14.0 / 5.0};
        case Table1Row::R3: return {5.0 / 6.0, 1.0, 17.0 / 5.0};
        case Table1Row::R4: return {1.0, 3.5, 4.5};
        case Table1Row::R5: return {1.0, args.b, args.b - args.m};
        case Table1Row::R6: {
            const double n = args.n;
            return {-n / 2.0, (1.0 - n) / 2.0, 1.0 - n};
        }
    }
    throw ParamError("table1: unknown row");
}

inline double table1_closed_form(Table1Row row, double z, const Table1Args& args = {}) {
    detail::check_row_args(row, args);
    const bool removable = row == Table1Row::R2 || row == Table1Row::R3 || row == Table1Row::R4;
    if (removable) {
        if (!(z > 0.0 && z < 1.0))
            throw DomainError("table1 " + to_string(row) + ": requires 0 < z < 1");
        if (z < table_small_z) return gauss2f1(table1_params(row, args), z, table_series_tol);
    } else if (!(z > -1.0 && z < 1.0)) {
        throw DomainError("table1 " + to_string(row) + ": requires |z| < 1");
    }

    switch (row) {
        case Table1Row::R1:
            return (16.0 + 72.0 * z + 18.0 * z * z - z * z * z) / 16.0 * std::pow(1.0 - z, -5.5);
        case Table1Row::R2: {
            const double x = std::pow(z, 0.2);
            const double s5 = std::sqrt(5.0);
            const double kp = std::sqrt(10.0 + 2.0 * s5);
            const double km = std::sqrt(10.0 - 2.0 * s5);
            const double x5 = std::pow(x, 5);
            const double bracket =
                std::log(1.0 - x5) - 5.0 * std::log(1.0 - x) -
                s5 * std::log((1.0 - 0.5 * (s5 - 1.0) * x + x * x) /
                              (1.0 + 0.5 * (s5 + 1.0) * x + x * x)) -
                2.0 * kp * std::atan(kp * x / (4.0 - (s5 - 1.0) * x)) -
                2.0 * km * std::atan(km * x / (4.0 + (s5 + 1.0) * x));
            return 9.0 / (5.0 * x5) - 9.0 / (25.0 * std::pow(x, 9)) * (1.0 - x5) * bracket;
        }
        case Table1Row::R3: {
            // Printed with mismatched brackets; read as one balanced group, x = z^(1/6).
            const double x = std::pow(z, 1.0 / 6.0);
            const double x6 = std::pow(x, 6);
            const double bracket =
                std::log((1.0 - x) / (1.0 + x)) +
                0.5 * std::log((1.0 - x + x * x) / (1.0 + x + x * x)) +
                std::sqrt(3.0) * std::atan(std::sqrt(3.0) * x / (1.0 - x * x));
            return 11.0 / (6.0 * x6) + 55.0 / (36.0 * std::pow(x, 11)) * (1.0 - x6) * bracket;
        }
        case Table1Row::R4: {
            const double r = std::sqrt(z);
            return -7.0 / (15.0 * z * z * z) *
                   (15.0 + 15.0 * z + 3.0 * z * z - 15.0 * std::atanh(r) / r);
        }
        case Table1Row::R5: {
            const double b = args.b;
            const int m = args.m;
            double sum = 0.0;
            for (int k = 0; k < m; ++k)
                sum += pochhammer(-m, k) / pochhammer(2.0 - b, k) * std::pow(1.0 - z, -k - 1);
            return (b - m - 1.0) / (b - 1.0) * sum -
                   std::tgamma(m + 1.0) / pochhammer(1.0 - b, m) * std::pow(z - 1.0, -m - 1);
        }
        case Table1Row::R6:
            return std::pow(2.0, -args.n) * std::pow(1.0 + std::sqrt(1.0 - z), args.n);
    }
    throw ParamError("table1: unknown row");
}

inline HypParams3F2 table2_params() { return {0.25, 1.0, 1.0, 1.25, 2.0}; }

inline double table2_closed_form(double z) {
    if (!(z > 0.0 && z < 1.0)) throw DomainError("table2: requires 0 < z < 1");
    if (z < table_small_z) return clausen3f2(table2_params(), z, table_series_tol);
    const double q = std::pow(z, 0.25);
    return (std::log(1.0 - z) +
            std::pow(z, 0.75) * (std::log((1.0 + q) / (1.0 - q)) + 2.0 * std::atan(q))) /
           (3.0 * z);
}

}  // namespace appellf2
