#pragma once

#include <stdexcept>
#include <string>

namespace conekit {

// Thrown when two objects with incompatible ambient dimensions meet.
class DimensionMismatch : public std::invalid_argument {
public:
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when a checker is invoked on inputs that violate its stated
// hypotheses (e.g. a face that does not lie in the relative boundary).
class HypothesisViolated : public std::runtime_error {
public:
    explicit HypothesisViolated(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when the separating-hyperplane search fails. Under valid
// hypotheses existence is guaranteed, so this signals a bug or a
// tolerance failure rather than a legitimate outcome.
class SeparationNotFound : public std::runtime_error {
public:
    explicit SeparationNotFound(const std::string& what) : std::runtime_error(what) {}
};

// Parse failure in the set-description text format.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + message),
          line(line),
          column(column) {}

    int line;
    int column;
};

} // namespace conekit
