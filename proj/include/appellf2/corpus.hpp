#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "appell.hpp"
#include "errors.hpp"
#include "expr.hpp"

namespace appellf2 {

// Rectangle of admissible evaluation points, optionally cut by x + y < 1.
struct Domain {
    double x_min = 0.05;
    double x_max = 0.65;
    double y_min = 0.05;
    double y_max = 0.65;
    bool require_sum_lt_1 = true;

    bool contains(const EvalPoint& p, double slack = 1e-12) const {
        return p.x >= x_min - slack && p.x <= x_max + slack && p.y >= y_min - slack &&
               p.y <= y_max + slack && (!require_sum_lt_1 || p.x + p.y < 1.0);
    }
};

struct CorpusEntry {
    F2Params params{};
    std::string expr_text;
    Expr expr;
    Domain domain;
    std::string source_note;
    std::size_t line = 0;

    std::string locator() const { return "line " + std::to_string(line) + ": " + source_note; }
};

struct CorpusIssue {
    std::size_t line;
    std::string message;
};

struct Corpus {
    std::vector<CorpusEntry> entries;
    std::vector<CorpusIssue> errors;  // per-entry expression parse failures
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline bool parse_plain_number(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace detail

// Integer, decimal or rational "p/q" literal. Throws std::invalid_argument.
inline double parse_real(std::string_view text) {
    const auto s = detail::trim(text);
    const auto slash = s.find('/');
    double num = 0.0, den = 1.0;
    if (slash == std::string_view::npos) {
        if (!detail::parse_plain_number(s, num))
            throw std::invalid_argument("not a number: '" + std::string(s) + "'");
        return num;
    }
    if (!detail::parse_plain_number(s.substr(0, slash), num) ||
        !detail::parse_plain_number(s.substr(slash + 1), den) || den == 0.0)
        throw std::invalid_argument("not a rational: '" + std::string(s) + "'");
    return num / den;
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto p = s.find(sep, start);
        if (p == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, p - start));
        start = p + 1;
    }
}

inline double field_number(std::string_view f, const char* name, std::size_t line) {
    try {
        return parse_real(f);
    } catch (const std::invalid_argument& e) {
        throw CorpusFormatError(line, std::string(name) + ": " + e.what());
    }
}

inline void field_range(std::string_view f, const char* name, std::size_t line, double& lo,
                        double& hi) {
    f = trim(f);
    if (f == "-") return;
    const auto parts = split(f, ',');
    if (parts.size() != 2) throw CorpusFormatError(line, std::string(name) + ": expected lo,hi or -");
    lo = field_number(parts[0], name, line);
    hi = field_number(parts[1], name, line);
    if (!(lo <= hi)) throw CorpusFormatError(line, std::string(name) + ": empty range");
}

}  // namespace detail

inline constexpr std::size_t corpus_field_count = 9;

// Reads records in file order. Structural problems throw CorpusFormatError;
// an expression that fails to parse is recorded in Corpus::errors and the
// record is skipped.
inline Corpus load_corpus(std::istream& in) {
    Corpus corpus;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = detail::trim(raw);
        if (line.empty() || line.front() == '#') continue;

        auto fields = detail::split(line, '|');
        if (fields.size() < corpus_field_count)
            throw CorpusFormatError(line_no, "expected " + std::to_string(corpus_field_count) +
                                                 " '|'-separated fields, found " +
                                                 std::to_string(fields.size()));
        // The source note is free text and may itself contain '|'.
        const std::size_t note_start =
            static_cast<std::size_t>(fields[corpus_field_count - 1].data() - line.data());

        CorpusEntry e;
        e.line = line_no;
        e.params.sigma = detail::field_number(fields[0], "sigma", line_no);
        e.params.alpha1 = detail::field_number(fields[1], "alpha1", line_no);
        e.params.alpha2 = detail::field_number(fields[2], "alpha2", line_no);
        e.params.beta1 = detail::field_number(fields[3], "beta1", line_no);
        e.params.beta2 = detail::field_number(fields[4], "beta2", line_no);
        detail::field_range(fields[5], "x range", line_no, e.domain.x_min, e.domain.x_max);
        detail::field_range(fields[6], "y range", line_no, e.domain.y_min, e.domain.y_max);
        if (std::abs(e.domain.x_min) >= 1.0 || std::abs(e.domain.x_max) >= 1.0 ||
            std::abs(e.domain.y_min) >= 1.0 || std::abs(e.domain.y_max) >= 1.0 ||
            e.domain.x_min + e.domain.y_min >= 1.0)
            throw CorpusFormatError(line_no, "domain lies outside the series-convergence region");
        e.expr_text = std::string(detail::trim(fields[7]));
        e.source_note = std::string(detail::trim(line.substr(note_start)));
        try {
            e.expr = parse_expr(e.expr_text);
        } catch (const ParseError& err) {
            corpus.errors.push_back({line_no, err.what()});
            continue;
        }
        corpus.entries.push_back(std::move(e));
    }
    return corpus;
}

inline Corpus load_corpus_text(const std::string& text) {
    std::istringstream in(text);
    return load_corpus(in);
}

// Throws std::runtime_error when the file cannot be opened.
inline Corpus load_corpus_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus file '" + path + "'");
    return load_corpus(in);
}

}  // namespace appellf2
