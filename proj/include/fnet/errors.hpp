#ifndef FNET_ERRORS_HPP
#define FNET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fnet {

// Malformed inputs: bad documents, invalid networks, out-of-range arguments.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Refusal to run an exponential search past its size guard.
struct guard_error : std::runtime_error {
    explicit guard_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numeric failure: non-convergence in float mode, singular linear systems.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace fnet

#endif
