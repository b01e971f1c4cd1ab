#ifndef PHOTONLOC_CONFIG_HPP
#define PHOTONLOC_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>

#include "photonloc/lattice.hpp"
#include "photonloc/units.hpp"

namespace photonloc {

// Run parameters shared by the CLI subcommands and the verification
// suites. Loadable from a JSON file; individual flags override fields.
struct RunConfig {
    UnitSystem units{};
    LatticeSpec lattice{};
    int gauge_m = 0;
    double alpha = 0.0;

    // Finite-difference steps: h in units of 2*pi/L (k-space), dr/dt as
    // fractions of the grid spacing L/N (and its light-travel time).
    double h = 1e-3;
    double dr = 1e-2;
    double dt = 1e-2;

    // When > 0, replaces every check's default bound.
    double tol = 0.0;

    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv"; // csv | json-report

    double h_absolute() const { return h * lattice.k_unit(); }
    double dr_absolute() const { return dr * lattice.r_spacing(); }
    double dt_absolute() const { return dt * lattice.r_spacing() / units.c; }

    void validate() const;
};

RunConfig load_config(const std::filesystem::path& path);

} // namespace photonloc

#endif
