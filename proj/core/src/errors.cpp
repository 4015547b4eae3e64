#include "infdelay/errors.hpp"

namespace infdelay {

DivergenceError::DivergenceError(double time, const std::string& what)
    : std::runtime_error(what + " (t = " + std::to_string(time) + ")"), time_(time) {}

}  // namespace infdelay
