#pragma once

#include <stdexcept>
#include <string>

namespace khess {

// Failure of a numerical procedure: iteration caps, contraction bounds,
// step-size floors, quadrature depth. Parameter-domain violations use the
// standard <stdexcept> domain/argument types instead.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace khess
