#include "photonloc/polarization.hpp"

#include <cmath>

namespace photonloc {

namespace {

constexpr double kPoleTol = 1e-12;

Eigen::Matrix3cd build_spin(int j) {
    Eigen::Matrix3cd S = Eigen::Matrix3cd::Zero();
    const Complex mi(0.0, -1.0);
    // (S_j)_{ab} = -i eps_{jab}
    auto eps = [](int i, int a, int b) -> double {
        if (i == a || i == b || a == b) return 0.0;
        return ((a - i + 3) % 3 == 1) ? 1.0 : -1.0;
    };
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) S(a, b) = mi * eps(j - 1, a, b);
    return S;
}

} // namespace

const Eigen::Matrix3cd& spin_matrix(int j) {
    static const Eigen::Matrix3cd S[3] = {build_spin(1), build_spin(2), build_spin(3)};
    return S[j - 1];
}

Eigen::Matrix3cd spin_dot(const Eigen::Vector3d& v) {
    return v.x() * spin_matrix(1) + v.y() * spin_matrix(2) + v.z() * spin_matrix(3);
}

Eigen::Vector3d ChiGauge::grad_chi(double k, double theta, double phi) const {
    const double st = std::sin(theta);
    if (std::abs(st) < kPoleTol)
        throw SingularPointError("grad_chi undefined on the z-axis");
    const Eigen::Vector3d phi_hat(-std::sin(phi), std::cos(phi), 0.0);
    return (m / (k * st)) * phi_hat;
}

PolarizationFrame make_frame(double theta, double phi, const ChiGauge& gauge) {
    PolarizationFrame f;
    const double st = std::sin(theta), ct = std::cos(theta);
    const double sp = std::sin(phi), cp = std::cos(phi);
    f.k_hat = Eigen::Vector3d(st * cp, st * sp, ct);
    f.theta_hat = Eigen::Vector3d(ct * cp, ct * sp, -st);
    f.phi_hat = Eigen::Vector3d(-sp, cp, 0.0);
    const Complex i(0.0, 1.0);
    const double chi = gauge.chi(theta, phi);
    for (int lambda : {+1, -1}) {
        Eigen::Vector3cd e =
            std::exp(-i * static_cast<double>(lambda) * chi) *
            (f.theta_hat.cast<Complex>() + i * static_cast<double>(lambda) * f.phi_hat.cast<Complex>()) /
            std::sqrt(2.0);
        (lambda > 0 ? f.e_plus : f.e_minus) = e;
    }
    return f;
}

PolarizationFrame make_frame(const KMode& mode, const ChiGauge& gauge) {
    return make_frame(mode.theta, mode.phi, gauge);
}

// exp(-i (S.n) b) = I - i (S.n) sin b - (S.n)^2 (1 - cos b), exact for spin 1.
static Eigen::Matrix3cd spin_rotation(const Eigen::Vector3d& axis, double beta) {
    const Eigen::Matrix3cd Sn = spin_dot(axis);
    const Complex i(0.0, 1.0);
    return Eigen::Matrix3cd::Identity() - i * std::sin(beta) * Sn - (1.0 - std::cos(beta)) * (Sn * Sn);
}

Eigen::Matrix3cd rotation_D(double theta, double phi, double chi) {
    const double st = std::sin(theta), ct = std::cos(theta);
    const Eigen::Vector3d k_hat(st * std::cos(phi), st * std::sin(phi), ct);
    return spin_rotation(k_hat, chi) * spin_rotation(Eigen::Vector3d::UnitZ(), phi) *
           spin_rotation(Eigen::Vector3d::UnitY(), theta);
}

Eigen::Vector3cd polarization_vector(const KMode& mode, int lambda, const ChiGauge& gauge) {
    return make_frame(mode, gauge).e(lambda);
}

Eigen::Vector3cd helicity_apply(const KMode& mode, const Eigen::Vector3cd& v) {
    return spin_dot(mode.k_vec / mode.k) * v;
}

Eigen::Matrix3cd transverse_projector(const KMode& mode) {
    const PolarizationFrame f = make_frame(mode, ChiGauge{0});
    return f.e_plus * f.e_plus.adjoint() + f.e_minus * f.e_minus.adjoint();
}

} // namespace photonloc
