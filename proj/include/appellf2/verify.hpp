#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <exception>
#include <functional>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "appell.hpp"
#include "corpus.hpp"
#include "errors.hpp"
#include "reduction_tables.hpp"
#include "special.hpp"

namespace appellf2 {

enum class Status { Pass, Fail, SuspectedMisprint, OracleUnavailable, DomainEmpty };

inline constexpr std::array all_statuses{Status::Pass, Status::Fail, Status::SuspectedMisprint,
                                         Status::OracleUnavailable, Status::DomainEmpty};

inline std::string to_string(Status s) {
    switch (s) {
        case Status::Pass: return "Pass";
        case Status::Fail: return "Fail";
        case Status::SuspectedMisprint: return "SuspectedMisprint";
        case Status::OracleUnavailable: return "OracleUnavailable";
        case Status::DomainEmpty: return "DomainEmpty";
    }
    return "?";
}

struct GridSpec {
    int nx = 8;
    int ny = 8;
    double x_min = 0.05;
    double x_max = 0.65;
    double y_min = 0.05;
    double y_max = 0.65;
    double s_max = 0.7;  // points need x + y <= s_max
};

struct Tolerances {
    double pass_tol = 1e-8;
    double oracle_tol = 1e-12;
    double misprint_threshold = 1e-3;
};

inline constexpr double grid_slack = 1e-12;

// Row-major tensor grid (x outer) cut by x + y <= s_max.
inline std::vector<EvalPoint> sample_grid(const GridSpec& g) {
    if (g.nx < 1 || g.ny < 1) throw DomainEmpty("sample_grid: nx and ny must be positive");
    auto coord = [](double lo, double hi, int n, int i) {
        return n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    };
    std::vector<EvalPoint> pts;
    for (int i = 0; i < g.nx; ++i) {
        const double x = coord(g.x_min, g.x_max, g.nx, i);
        for (int j = 0; j < g.ny; ++j) {
            const double y = coord(g.y_min, g.y_max, g.ny, j);
            if (x + y <= g.s_max + grid_slack) pts.push_back({x, y});
        }
    }
    if (pts.empty()) throw DomainEmpty("sample_grid: no point satisfies x + y <= s_max");
    return pts;
}

struct PointError {
    EvalPoint point;
    double closed;
    double oracle;
    double abs_error;
    double rel_error;
};

struct EntryReport {
    std::string locator;
    Status status = Status::Fail;
    std::size_t points_tested = 0;
    double max_rel_error = 0.0;
    double max_abs_error = 0.0;
    std::optional<EvalPoint> worst_point;
    std::size_t eval_errors = 0;
    std::size_t oracle_failures = 0;
    std::vector<std::string> messages;  // first few evaluation/oracle errors
    std::vector<PointError> points;     // filled only when verbose
};

struct VerificationReport {
    std::vector<EntryReport> entries;
    Tolerances tolerances;
    GridSpec grid;
    std::string oracle = "f2_series";
    std::optional<std::string> timestamp;

    std::size_t count(Status s) const {
        return static_cast<std::size_t>(std::count_if(
            entries.begin(), entries.end(), [s](const EntryReport& e) { return e.status == s; }));
    }
};

// 0 all Pass, 2 any SuspectedMisprint, otherwise 1 when anything else failed.
inline int exit_code(const VerificationReport& r) {
    if (r.count(Status::SuspectedMisprint) > 0) return 2;
    return r.count(Status::Pass) == r.entries.size() ? 0 : 1;
}

inline constexpr std::size_t max_messages = 3;

// Compares closed(pt) with oracle(pt) at every point. Exceptions from the
// closed form count as evaluation errors; exceptions from the oracle, or a
// NaN oracle value, count as oracle failures. Both shrink the tested set.
template <class Closed, class Oracle>
EntryReport check_points(std::string locator, std::span<const EvalPoint> pts, Closed&& closed,
                         Oracle&& oracle, const Tolerances& tol, bool verbose = false) {
    EntryReport rep;
    rep.locator = std::move(locator);
    if (pts.empty()) {
        rep.status = Status::DomainEmpty;
        return rep;
    }
    auto note = [&](const std::string& m) {
        if (rep.messages.size() < max_messages) rep.messages.push_back(m);
    };
    for (const auto& pt : pts) {
        double c = 0.0;
        try {
            c = closed(pt);
            if (!std::isfinite(c)) throw EvalError("closed form", "non-finite result");
        } catch (const std::exception& e) {
            ++rep.eval_errors;
            note(e.what());
            continue;
        }
        double o = 0.0;
        try {
            o = oracle(pt);
            if (!std::isfinite(o)) throw DomainError("oracle returned a non-finite value");
        } catch (const std::exception& e) {
            ++rep.oracle_failures;
            note(std::string("oracle: ") + e.what());
            continue;
        }
        const double abs_err = std::abs(c - o);
        const double rel_err = abs_err / std::max(1.0, std::abs(o));
        ++rep.points_tested;
        if (!rep.worst_point || rel_err > rep.max_rel_error) {
            rep.max_rel_error = rel_err;
            rep.worst_point = pt;
        }
        rep.max_abs_error = std::max(rep.max_abs_error, abs_err);
        if (verbose) rep.points.push_back({pt, c, o, abs_err, rel_err});
    }

    if (rep.points_tested == 0)
        rep.status = rep.oracle_failures > 0 ? Status::OracleUnavailable : Status::Fail;
    else if (rep.max_rel_error <= tol.pass_tol)
        rep.status = Status::Pass;
    else if (rep.max_rel_error > tol.misprint_threshold && rep.eval_errors == 0)
        rep.status = Status::SuspectedMisprint;
    else
        rep.status = Status::Fail;
    return rep;
}

inline double f2_oracle(const F2Params& p, const EvalPoint& pt, double oracle_tol) {
    const auto r = f2_series(p, pt, oracle_tol);
    if (!r.converged) throw DomainError("f2_series did not converge");
    return r.value;
}

inline std::vector<EvalPoint> entry_points(const CorpusEntry& e, const GridSpec& g) {
    std::vector<EvalPoint> pts;
    try {
        for (const auto& p : sample_grid(g))
            if (e.domain.contains(p)) pts.push_back(p);
    } catch (const DomainEmpty&) {
    }
    return pts;
}

inline EntryReport verify_entry(const CorpusEntry& e, const GridSpec& g, const Tolerances& tol,
                                bool verbose = false) {
    const auto pts = entry_points(e, g);
    return check_points(
        e.locator(), pts, [&](const EvalPoint& p) { return eval_expr(e.expr, p.x, p.y); },
        [&](const EvalPoint& p) { return f2_oracle(e.params, p, tol.oracle_tol); }, tol, verbose);
}

namespace detail {

// Runs f(0..n-1) on a small worker pool; results are written by index so the
// output order never depends on scheduling.
template <class F>
void run_indexed(std::size_t n, F&& f, bool parallel) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = parallel ? std::min<std::size_t>(hw, n) : 1;
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = next++; i < n; i = next++) f(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace detail

struct VerifyOptions {
    bool parallel = true;
    bool verbose = false;
};

inline VerificationReport verify_corpus(std::span<const CorpusEntry> entries, const GridSpec& g,
                                        const Tolerances& tol, const VerifyOptions& opt = {}) {
    VerificationReport rep;
    rep.tolerances = tol;
    rep.grid = g;
    rep.entries.resize(entries.size());
    detail::run_indexed(
        entries.size(),
        [&](std::size_t i) { rep.entries[i] = verify_entry(entries[i], g, tol, opt.verbose); },
        opt.parallel);
    return rep;
}

// A built-in identity check: closed and oracle are evaluated at every point.
struct BuiltinCheck {
    std::string locator;
    std::vector<EvalPoint> points;
    std::function<double(const EvalPoint&)> closed;
    std::function<double(const EvalPoint&)> oracle;
};

// 20 interior points of (0.05, 0.9), carried in EvalPoint::x.
inline std::vector<EvalPoint> table_z_points(int n = 20, double lo = 0.05, double hi = 0.9) {
    std::vector<EvalPoint> pts;
    for (int i = 1; i <= n; ++i) pts.push_back({lo + (hi - lo) * i / (n + 1), 0.0});
    return pts;
}

namespace detail {

inline std::string fmt_param(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

template <class Pred>
std::vector<EvalPoint> filtered(const std::vector<EvalPoint>& pts, Pred pred) {
    std::vector<EvalPoint> out;
    std::copy_if(pts.begin(), pts.end(), std::back_inserter(out), pred);
    return out;
}

inline double f1_best_norm(const EvalPoint& p) {
    const double a = std::abs(p.x) + std::abs(1.0 - p.x / p.y);
    const double b = std::abs(p.y) + std::abs(1.0 - p.y / p.x);
    return std::min(a, b);
}

}  // namespace detail

inline std::vector<BuiltinCheck> builtin_checks(const GridSpec& g, const Tolerances& tol) {
    using detail::fmt_param;
    const double otol = tol.oracle_tol;
    const auto grid = sample_grid(g);
    std::vector<BuiltinCheck> checks;

    auto f2_vs_series = [otol](F2Params p) {
        return [p, otol](const EvalPoint& pt) { return f2_oracle(p, pt, otol); };
    };

    for (double a : {-0.5, 0.5, 1.0, 1.5, 2.0}) {
        for (auto [al, be] : {std::pair{1.0, 2.0}, {0.5, 1.5}, {2.0, 3.0}}) {
            checks.push_back(
                {"theorem1-shift a=" + fmt_param(a) + " alpha1=" + fmt_param(al) +
                     " beta1=" + fmt_param(be),
                 grid,
                 [=](const EvalPoint& pt) { return f2_theorem1_shift(a, al, be, pt, otol); },
                 f2_vs_series({a + 1.0, al, 1.0, be, 2.0})});
        }
    }
    for (auto [al, be] : {std::pair{1.0, 2.0}, {0.5, 1.5}, {2.0, 3.0}, {0.0, 2.5}}) {
        checks.push_back({"theorem1-log alpha1=" + fmt_param(al) + " beta1=" + fmt_param(be), grid,
                          [=](const EvalPoint& pt) { return f2_theorem1_log(al, be, pt, otol); },
                          f2_vs_series({1.0, al, 1.0, be, 2.0})});
    }

    const auto zs = table_z_points();
    auto table1 = [&](Table1Row row, Table1Args args, std::string label) {
        const auto hp = table1_params(row, args);
        checks.push_back({"table1 " + label, zs,
                          [=](const EvalPoint& pt) { return table1_closed_form(row, pt.x, args); },
                          [=](const EvalPoint& pt) { return gauss2f1(hp, pt.x, otol); }});
    };
    table1(Table1Row::R1, {}, "r1");
    table1(Table1Row::R2, {}, "r2");
    table1(Table1Row::R3, {}, "r3");
    table1(Table1Row::R4, {}, "r4");
    for (double b : {2.5, 1.0 / 3.0})
        for (int m = 1; m <= 3; ++m)
            table1(Table1Row::R5, {b, m, 0}, "r5 b=" + fmt_param(b) + " m=" + std::to_string(m));
    for (int n = 3; n <= 5; ++n) table1(Table1Row::R6, {0.0, 0, n}, "r6 n=" + std::to_string(n));
    checks.push_back({"table2", zs, [](const EvalPoint& pt) { return table2_closed_form(pt.x); },
                      [=](const EvalPoint& pt) { return clausen3f2(table2_params(), pt.x, otol); }});

    const std::vector<F2Params> generic{{2.0, 1.0, 3.0, 2.0, 4.0},
                                        {0.5, -0.5, 1.5, 2.5, 0.75},
                                        {1.5, 2.0, -1.0, 3.0, 1.5}};
    for (std::size_t i = 0; i < generic.size(); ++i) {
        const auto p = generic[i];
        const auto tag = " set " + std::to_string(i + 1);
        checks.push_back({"property1 symmetry" + tag, grid,
                          [=](const EvalPoint& pt) {
                              const auto s = swap_args(p, pt);
                              return f2_oracle(s.params, s.point, otol);
                          },
                          f2_vs_series(p)});
        checks.push_back({"property2 transform-x" + tag,
                          detail::filtered(grid,
                                           [](const EvalPoint& q) { return 2 * q.x + q.y < 0.95; }),
                          [=](const EvalPoint& pt) {
                              const auto t = transform_x(p, pt);
                              return t.scale * f2_oracle(t.params, t.point, otol);
                          },
                          f2_vs_series(p)});
        checks.push_back({"property2 transform-xy" + tag,
                          detail::filtered(grid,
                                           [](const EvalPoint& q) { return q.x + q.y < 0.475; }),
                          [=](const EvalPoint& pt) {
                              const auto t = transform_xy(p, pt);
                              return t.scale * f2_oracle(t.params, t.point, otol);
                          },
                          f2_vs_series(p)});
    }

    struct F1Set {
        double alpha, beta, beta_prime, gamma;
    };
    for (const auto& s : {F1Set{1.0, 1.0, 1.0, 3.0}, F1Set{0.5, 1.0, 2.0, 4.0},
                          F1Set{1.5, 0.5, 0.75, 2.5}}) {
        checks.push_back(
            {"property3 f1 alpha=" + fmt_param(s.alpha) + " beta=" + fmt_param(s.beta) +
                 " beta'=" + fmt_param(s.beta_prime) + " gamma=" + fmt_param(s.gamma),
             detail::filtered(grid, [](const EvalPoint& q) { return detail::f1_best_norm(q) < 0.9; }),
             [=](const EvalPoint& pt) {
                 return f1_via_f2(s.alpha, s.beta, s.beta_prime, s.gamma, pt, otol);
             },
             [=](const EvalPoint& pt) {
                 return f1_series(s.alpha, s.beta, s.beta_prime, s.gamma, pt, otol);
             }});
    }

    std::vector<EvalPoint> axis;
    for (int i = 1; i <= 6; ++i) axis.push_back({0.1 * i, 0.0});
    for (std::size_t i = 0; i < generic.size(); ++i) {
        const auto p = generic[i];
        checks.push_back({"collapse y=0 set " + std::to_string(i + 1), axis, f2_vs_series(p),
                          [=](const EvalPoint& pt) {
                              return gauss2f1({p.sigma, p.alpha1, p.beta1}, pt.x, otol);
                          }});
    }

    for (const auto& [fam, fp] : family_examples()) {
        checks.push_back({"family " + to_string(fam), grid,
                          [fam, fp](const EvalPoint& pt) { return f2_family_closed(fam, fp, pt); },
                          f2_vs_series(family_params(fam, fp))});
    }
    return checks;
}

inline VerificationReport verify_builtins(const GridSpec& g, const Tolerances& tol,
                                          const VerifyOptions& opt = {}) {
    const auto checks = builtin_checks(g, tol);
    VerificationReport rep;
    rep.tolerances = tol;
    rep.grid = g;
    rep.oracle = "series";
    rep.entries.resize(checks.size());
    detail::run_indexed(
        checks.size(),
        [&](std::size_t i) {
            const auto& c = checks[i];
            rep.entries[i] = check_points(c.locator, c.points, c.closed, c.oracle, tol, opt.verbose);
        },
        opt.parallel);
    return rep;
}

}  // namespace appellf2
