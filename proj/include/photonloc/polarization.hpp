#ifndef PHOTONLOC_POLARIZATION_HPP
#define PHOTONLOC_POLARIZATION_HPP

#include <Eigen/Dense>
#include <complex>

#include "photonloc/lattice.hpp"

namespace photonloc {

using Complex = std::complex<double>;

// Spin-1 generators (S_j)_{ab} = -i eps_{jab}, j = 1..3.
const Eigen::Matrix3cd& spin_matrix(int j);

// S . v for an arbitrary real 3-vector v.
Eigen::Matrix3cd spin_dot(const Eigen::Vector3d& v);

// Rotation gauge chi(theta, phi) = m * phi about k_hat, with its exact
// gradient (m / (k sin theta)) phi_hat.
struct ChiGauge {
    int m = 0;

    double chi(double /*theta*/, double phi) const { return m * phi; }
    Eigen::Vector3d grad_chi(double k, double theta, double phi) const;
};

// Right-handed transverse frame and helicity vectors at one wave vector:
// e_lambda = exp(-i lambda chi) (theta_hat + i lambda phi_hat) / sqrt(2).
struct PolarizationFrame {
    Eigen::Vector3d k_hat, theta_hat, phi_hat;
    Eigen::Vector3cd e_plus, e_minus;

    const Eigen::Vector3cd& e(int lambda) const { return lambda > 0 ? e_plus : e_minus; }
};

PolarizationFrame make_frame(double theta, double phi, const ChiGauge& gauge);
PolarizationFrame make_frame(const KMode& mode, const ChiGauge& gauge);

// D(theta, phi, chi) = exp(-i S.k_hat chi) exp(-i S3 phi) exp(-i S2 theta),
// each factor from the closed-form spin-1 Rodrigues expansion.
Eigen::Matrix3cd rotation_D(double theta, double phi, double chi);

Eigen::Vector3cd polarization_vector(const KMode& mode, int lambda, const ChiGauge& gauge);

// (k_hat . S) v; helicity eigenvectors e_lambda map to lambda e_lambda.
Eigen::Vector3cd helicity_apply(const KMode& mode, const Eigen::Vector3cd& v);

// sum_lambda e_lambda e_lambda^dag = I - k_hat k_hat^T.
Eigen::Matrix3cd transverse_projector(const KMode& mode);

} // namespace photonloc

#endif
