#include <doctest.h>

#include "photonloc/position_operator.hpp"

using namespace photonloc;

namespace {
LatticeSpec op_lattice() {
    LatticeSpec spec;
    spec.N = 4;
    spec.exclude_z_axis = true;
    return spec;
}
} // namespace

TEST_CASE("parameter validation") {
    OperatorParams p;
    p.h = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p.h = 1e-3;
    p.alpha = std::nan("");
    CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("sample modes avoid the axis and extreme cot theta") {
    const auto all = build_k_lattice(op_lattice());
    const auto samples = operator_sample_modes(all, 0.9);
    CHECK(!samples.empty());
    for (const KMode& m : samples) {
        CHECK((m.n.x() != 0 || m.n.y() != 0));
        CHECK(std::abs(std::cos(m.theta)) <= 0.9);
    }
}

TEST_CASE("eigenvalue equation at one combo, with h-halving") {
    const LatticeSpec spec = op_lattice();
    const auto samples = operator_sample_modes(build_k_lattice(spec));
    const UnitSystem units;
    OperatorParams p{0.5, ChiGauge{1}, 1e-3 * spec.k_unit()};
    const double r1 = eigen_residual(p, Eigen::Vector3d::Zero(), +1, samples, 0.0, units,
                                     spec.volume())
                          .sup_norm;
    CHECK(r1 < 1e-5);
    p.h /= 2.0;
    const double r2 = eigen_residual(p, Eigen::Vector3d::Zero(), +1, samples, 0.0, units,
                                     spec.volume())
                          .sup_norm;
    CHECK(r1 / r2 > 3.5);
    CHECK(r1 / r2 < 4.5);
}

TEST_CASE("eigenfield at nonzero r1 still satisfies the equation") {
    const LatticeSpec spec = op_lattice();
    const auto samples = operator_sample_modes(build_k_lattice(spec));
    const Eigen::Vector3d r1(0.4, -0.1, 0.25);
    OperatorParams p{-0.5, ChiGauge{-1}, 1e-3 * spec.k_unit()};
    CHECK(eigen_residual(p, r1, -1, samples, 0.0, UnitSystem{}, spec.volume()).sup_norm < 1e-5);
}

TEST_CASE("wrong alpha is not an eigenfield (negative control)") {
    const LatticeSpec spec = op_lattice();
    const auto samples = operator_sample_modes(build_k_lattice(spec));
    const TestField psi = position_eigenfield(0.5, ChiGauge{0}, Eigen::Vector3d::Zero(), +1, 0.0,
                                              1.0, spec.volume());
    OperatorParams wrong{0.0, ChiGauge{0}, 1e-3 * spec.k_unit()};
    double worst = 0.0;
    for (const KMode& m : samples) {
        const auto applied = apply_position_operator(wrong, psi, m.k_vec);
        for (int j = 0; j < 3; ++j)
            worst = std::max(worst, applied[j].norm() / psi(m.k_vec).norm());
    }
    CHECK(worst > 1e-2);
}

TEST_CASE("similarity transform r^(a) = k^a r^(0) k^(-a)") {
    const LatticeSpec spec = op_lattice();
    const auto samples = operator_sample_modes(build_k_lattice(spec));
    const TestField f = [&](const Eigen::Vector3d& k) -> Eigen::Vector3cd {
        double theta, phi;
        spherical_angles(k, theta, phi);
        const PolarizationFrame fr = make_frame(theta, phi, ChiGauge{0});
        return std::exp(-k.squaredNorm() / (4.5 * spec.k_unit() * spec.k_unit())) * fr.e_plus;
    };
    OperatorParams p{0.5, ChiGauge{1}, 1e-3 * spec.k_unit()};
    const double r1 = similarity_residual(p, f, samples).sup_norm;
    CHECK(r1 < 1e-5);
    p.h /= 2.0;
    CHECK(r1 / similarity_residual(p, f, samples).sup_norm == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("lattice inner product matches a hand-written sum") {
    const LatticeSpec spec = op_lattice();
    const auto modes = build_k_lattice(spec);
    const TestField f = [](const Eigen::Vector3d& k) -> Eigen::Vector3cd {
        return {Complex(k.x(), 1.0), Complex(0.0, k.y()), Complex(k.z(), -0.5)};
    };
    const TestField g = [](const Eigen::Vector3d& k) -> Eigen::Vector3cd {
        return {Complex(1.0, k.z()), Complex(k.x(), 0.0), Complex(-k.y(), 0.25)};
    };
    Complex expected = 0.0;
    for (const KMode& m : modes)
        for (int j = 0; j < 3; ++j) expected += std::conj(f(m.k_vec)[j]) * g(m.k_vec)[j];
    CHECK(std::abs(lattice_inner_product(f, g, modes) - expected) < 1e-12 * std::abs(expected));
}

TEST_CASE("J_z probe returns integer eigenvalues within fit residual") {
    const LatticeSpec spec = op_lattice();
    const auto samples = operator_sample_modes(build_k_lattice(spec));
    const double h = 1e-3 * spec.k_unit();
    for (int m : {-1, 0, 2})
        for (int lambda : {+1, -1}) {
            const JzProbe probe =
                jz_eigen_probe(ChiGauge{m}, lambda, 0.0, samples, h, 1.0, spec.volume());
            CHECK(std::abs(probe.eigenvalue - std::round(probe.eigenvalue)) <=
                  probe.fit_residual);
            CHECK(probe.fit_residual < 1e-4);
        }
}
