#pragma once

#include <stdexcept>
#include <string>

namespace qcm {

/// Malformed or inconsistent input to a library call (dimension mismatch,
/// zero denominator, duplicate label, non-positive alpha, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A well-formed request that refers to something the instance does not
/// have: unknown labels, a missing embedding, a set that is not a subset.
class SemanticError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Instance or witness file that cannot be decoded. `where` names the field
/// path or line/column of the problem.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string where, const std::string& what)
        : std::runtime_error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}

    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

}  // namespace qcm
