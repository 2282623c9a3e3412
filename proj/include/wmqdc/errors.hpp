#pragma once

#include <stdexcept>
#include <string>

namespace wmqdc {

// Fock-space tail rule violated: the chosen cutoff cannot hold the state.
class TruncationError : public std::runtime_error {
public:
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

// Conditional state has (numerically) zero norm, e.g. alpha = pi/2 at tau = 0.
class DegeneratePostselectionError : public std::runtime_error {
public:
    explicit DegeneratePostselectionError(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace wmqdc
