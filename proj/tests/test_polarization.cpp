#include <doctest.h>

#include "photonloc/polarization.hpp"

using namespace photonloc;

namespace {
Eigen::Vector3cd ccross(const Eigen::Vector3d& a, const Eigen::Vector3cd& b) {
    return {a.y() * b.z() - a.z() * b.y(), a.z() * b.x() - a.x() * b.z(),
            a.x() * b.y() - a.y() * b.x()};
}
} // namespace

TEST_CASE("spin matrices: (S_j)_{ab} = -i eps_{jab}") {
    const Complex i(0.0, 1.0);
    CHECK(spin_matrix(1)(1, 2) == -i * 1.0); // eps_{123} = 1
    CHECK(spin_matrix(1)(2, 1) == -i * -1.0);
    CHECK(spin_matrix(3)(0, 1) == -i * 1.0);
    for (int j = 1; j <= 3; ++j) {
        CHECK((spin_matrix(j) - spin_matrix(j).adjoint()).cwiseAbs().maxCoeff() < 1e-16);
        CHECK(spin_matrix(j).trace() == Complex(0.0));
    }
    const Eigen::Vector3d v(0.3, -1.2, 0.7);
    CHECK((spin_dot(v) - (v.x() * spin_matrix(1) + v.y() * spin_matrix(2) + v.z() * spin_matrix(3)))
              .cwiseAbs()
              .maxCoeff() < 1e-16);
}

TEST_CASE("frame at a generic mode") {
    LatticeSpec spec;
    const KMode mode = make_k_mode(spec, {1, -2, 1});
    const PolarizationFrame f = make_frame(mode, ChiGauge{0});
    // Right-handed orthonormal triad.
    CHECK(std::abs(f.theta_hat.dot(f.phi_hat)) < 1e-15);
    CHECK(std::abs(f.theta_hat.dot(f.k_hat)) < 1e-15);
    CHECK((f.theta_hat.cross(f.phi_hat) - f.k_hat).norm() < 1e-14);
    for (int lambda : {+1, -1}) {
        const Eigen::Vector3cd& e = f.e(lambda);
        CHECK(std::abs(e.norm() - 1.0) < 1e-15);
        CHECK(std::abs(f.k_hat.cast<Complex>().dot(e)) < 1e-15);
        CHECK((ccross(f.k_hat, e) + Complex(0, lambda) * e).norm() < 1e-14);
        CHECK((helicity_apply(mode, e) - double(lambda) * e).norm() < 1e-14);
    }
    // Opposite helicities are orthogonal.
    CHECK(std::abs(f.e_plus.dot(f.e_minus)) < 1e-15);
}

TEST_CASE("gauge factor is a pure phase exp(-i lambda m phi)") {
    LatticeSpec spec;
    const KMode mode = make_k_mode(spec, {1, 1, -1});
    const PolarizationFrame f0 = make_frame(mode, ChiGauge{0});
    for (int m : {-2, 1, 3}) {
        const PolarizationFrame fm = make_frame(mode, ChiGauge{m});
        for (int lambda : {+1, -1}) {
            const Complex expected = std::exp(Complex(0.0, -lambda * m * mode.phi));
            CHECK((fm.e(lambda) - expected * f0.e(lambda)).norm() < 1e-14);
        }
    }
}

TEST_CASE("rotation D: unitary, z -> k_hat, composition of Rodrigues factors") {
    const double theta = 1.1, phi = 2.3, chi = -0.7;
    const Eigen::Matrix3cd d = rotation_D(theta, phi, chi);
    CHECK((d.adjoint() * d - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    const Eigen::Vector3d k_hat(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                                std::cos(theta));
    CHECK((d * Eigen::Vector3cd(0, 0, 1) - k_hat.cast<Complex>()).norm() < 1e-15);
    CHECK((rotation_D(0, 0, 0) - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff() < 1e-16);
    // D applied to the circular basis reproduces e_lambda.
    LatticeSpec spec;
    const KMode mode = make_k_mode(spec, {-1, 1, 1});
    const ChiGauge gauge{2};
    for (int lambda : {+1, -1}) {
        const Eigen::Vector3cd circ =
            Eigen::Vector3cd(1.0, Complex(0, lambda), 0.0) / std::sqrt(2.0);
        const Eigen::Vector3cd via_d =
            rotation_D(mode.theta, mode.phi, gauge.chi(mode.theta, mode.phi)) * circ;
        CHECK((via_d - polarization_vector(mode, lambda, gauge)).norm() < 1e-14);
    }
}

TEST_CASE("transverse projector sums the helicity dyads") {
    LatticeSpec spec;
    const KMode mode = make_k_mode(spec, {1, 0, -2});
    const Eigen::Matrix3cd p = transverse_projector(mode);
    const Eigen::Vector3d k_hat = mode.k_vec / mode.k;
    CHECK((p - (Eigen::Matrix3cd::Identity() - (k_hat * k_hat.transpose()).cast<Complex>()))
              .cwiseAbs()
              .maxCoeff() < 1e-14);
    CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((p * k_hat.cast<Complex>()).norm() < 1e-14);
}

TEST_CASE("grad chi matches FD of m phi and is singular at poles") {
    const ChiGauge gauge{3};
    const double k = 1.7, theta = 0.9, phi = 2.0;
    const Eigen::Vector3d grad = gauge.grad_chi(k, theta, phi);
    // chi depends only on phi: gradient is (m / (k sin theta)) phi_hat.
    const Eigen::Vector3d phi_hat(-std::sin(phi), std::cos(phi), 0.0);
    CHECK((grad - (3.0 / (k * std::sin(theta))) * phi_hat).norm() < 1e-14);
    CHECK_THROWS_AS(gauge.grad_chi(1.0, 0.0, 0.0), SingularPointError);
    CHECK_THROWS_AS(gauge.grad_chi(1.0, M_PI, 0.0), SingularPointError);
    // m = 0 gauge has no singularity to hit in the operator's chi term.
    CHECK(ChiGauge{0}.grad_chi(1.0, 0.5, 0.5).norm() == 0.0);
}

TEST_CASE("pole frame follows the phi := 0 convention") {
    LatticeSpec spec;
    const KMode up = make_k_mode(spec, {0, 0, 1});
    const PolarizationFrame f = make_frame(up, ChiGauge{0});
    CHECK((f.theta_hat - Eigen::Vector3d(1, 0, 0)).norm() < 1e-15);
    CHECK((f.phi_hat - Eigen::Vector3d(0, 1, 0)).norm() < 1e-15);
    CHECK((f.e_plus - Eigen::Vector3cd(1.0, Complex(0, 1), 0.0) / std::sqrt(2.0)).norm() < 1e-15);
}
