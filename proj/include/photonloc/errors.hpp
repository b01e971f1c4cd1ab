#ifndef PHOTONLOC_ERRORS_HPP
#define PHOTONLOC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace photonloc {

// Bad lattice/units/CLI parameters. CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent state/config files. Also exit code 2.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Operator evaluation requested at k = 0 or on the z-axis where the
// spherical frame is undefined.
struct SingularPointError : std::runtime_error {
    explicit SingularPointError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace photonloc

#endif
