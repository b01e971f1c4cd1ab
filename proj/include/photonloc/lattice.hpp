#ifndef PHOTONLOC_LATTICE_HPP
#define PHOTONLOC_LATTICE_HPP

#include <Eigen/Dense>
#include <vector>

#include "photonloc/errors.hpp"

namespace photonloc {

// Periodic cubic box of edge L with N modes per axis. Wave vectors are
// k = (2*pi/L) n with integer n in [-N/2, N/2) per component; n = 0 is
// always excluded. exclude_z_axis additionally drops n_x = n_y = 0 modes,
// where the spherical frame (theta_hat, phi_hat) is singular.
struct LatticeSpec {
    double L = 2.0 * M_PI;
    int N = 4;
    bool exclude_z_axis = false;

    double volume() const { return L * L * L; }
    double k_unit() const { return 2.0 * M_PI / L; }
    double r_spacing() const { return L / N; }

    void validate() const {
        if (!(L > 0.0)) throw ConfigError("lattice: box edge L must be > 0");
        if (N < 2 || N % 2 != 0) throw ConfigError("lattice: N must be even and >= 2");
    }

    bool contains(const Eigen::Vector3i& n) const;
};

// One discrete wave-vector mode with its spherical angles. At the poles
// (n_x = n_y = 0) phi is fixed to 0 by convention.
struct KMode {
    Eigen::Vector3i n;
    Eigen::Vector3d k_vec;
    double k = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

// Position grid conjugate to the k-lattice: r = (L/N) m, m in [0,N)^3,
// with the Riemann weight V/N^3 attached.
struct RGrid {
    std::vector<Eigen::Vector3d> points;
    double cell_volume = 0.0;
};

KMode make_k_mode(const LatticeSpec& spec, const Eigen::Vector3i& n);

// All lattice modes in lexicographic n order, k = 0 excluded.
std::vector<KMode> build_k_lattice(const LatticeSpec& spec);

RGrid conjugate_r_grid(const LatticeSpec& spec);

// Spherical angles of an arbitrary nonzero wave vector; phi in [0, 2*pi),
// phi := 0 at the poles.
void spherical_angles(const Eigen::Vector3d& k_vec, double& theta, double& phi);

} // namespace photonloc

#endif
