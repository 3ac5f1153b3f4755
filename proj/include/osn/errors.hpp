#pragma once

#include <stdexcept>
#include <string>

namespace osn {

/// Malformed input text (JSONL lines, timestamps, stored models).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structurally valid input that violates a data contract
/// (monotonicity, degenerate samples, unknown ids, unreachable targets).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite arithmetic inside an iterative solver.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, int iteration)
        : std::runtime_error(what + " (iteration " + std::to_string(iteration) + ")"),
          iteration_(iteration) {}

    int iteration() const { return iteration_; }

private:
    int iteration_;
};

} // namespace osn
