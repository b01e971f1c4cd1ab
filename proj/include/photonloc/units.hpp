#ifndef PHOTONLOC_UNITS_HPP
#define PHOTONLOC_UNITS_HPP

#include <cmath>

#include "photonloc/errors.hpp"

namespace photonloc {

// Physical constants. Defaults are natural units hbar = c = eps0 = 1,
// for which the field scale C = sqrt(hbar/(c*eps0)) is 1.
struct UnitSystem {
    double hbar = 1.0;
    double c = 1.0;
    double eps0 = 1.0;

    double field_scale() const { return std::sqrt(hbar / (c * eps0)); }

    void validate() const {
        if (!(hbar > 0.0) || !(c > 0.0) || !(eps0 > 0.0))
            throw ConfigError("unit system requires hbar, c, eps0 > 0");
    }
};

} // namespace photonloc

#endif
