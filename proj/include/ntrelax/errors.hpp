#pragma once

#include <stdexcept>
#include <string>

namespace ntrelax {

/// Raised when a time step cannot be completed. Preconditions on inputs are reported with
/// std::invalid_argument instead.
class SolverError : public std::runtime_error {
public:
    enum class Kind { NonConvergence, Inadmissible, NonFinite };

    SolverError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// File could not be read or written; the message names the path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ntrelax
