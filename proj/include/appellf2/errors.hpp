#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace appellf2 {

// Argument outside the region where a routine is defined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// No admissible evaluation point survives a grid or domain filter.
class DomainEmpty : public DomainError {
public:
    using DomainError::DomainError;
};

// Denominator parameter at (or within tolerance of) a non-positive integer.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Parameter value explicitly excluded by a closed form.
class ParamError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t offset, std::vector<std::string> expected)
        : std::runtime_error(format(msg, offset, expected)),
          offset_(offset),
          expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    static std::string format(const std::string& msg, std::size_t offset,
                              const std::vector<std::string>& expected) {
        std::string s = msg + " at offset " + std::to_string(offset);
        if (!expected.empty()) {
            s += "; expected one of:";
            for (const auto& e : expected) s += " " + e;
        }
        return s;
    }

    std::size_t offset_;
    std::vector<std::string> expected_;
};

class EvalError : public std::runtime_error {
public:
    EvalError(const std::string& node, const std::string& reason)
        : std::runtime_error(reason + " in " + node), node_(node) {}

    // Rendered text of the offending subexpression.
    const std::string& node() const noexcept { return node_; }

private:
    std::string node_;
};

class CorpusFormatError : public std::runtime_error {
public:
    CorpusFormatError(std::size_t line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace appellf2
