#ifndef RELCON_ERRORS_HPP
#define RELCON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace relcon {

/// Base class for all library errors.
class error : public std::runtime_error {
  public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Arity or domain disagreement between values, or an out-of-range element.
class mismatch_error : public error {
  public:
    explicit mismatch_error(const std::string& what) : error(what) {}
};

/// A precondition of an operation does not hold (inclusion violated,
/// class not substitution-closed, non-extensible family, ...).
class precondition_error : public error {
  public:
    explicit precondition_error(const std::string& what) : error(what) {}
};

/// An enumeration would exceed the configured resource budget.
/// Raised eagerly, before any work is done; never silent truncation.
class budget_error : public error {
  public:
    explicit budget_error(const std::string& what) : error(what) {}
};

/// Syntax or semantic error in a workspace file, with position info.
class parse_error : public error {
  public:
    parse_error(const std::string& what, int line)
        : error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const { return line_; }

  private:
    int line_;
};

} // namespace relcon

#endif
