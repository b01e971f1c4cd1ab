#include <doctest.h>

#include "photonloc/wavefunction.hpp"

using namespace photonloc;

namespace {
LatticeSpec small_lattice() {
    LatticeSpec spec;
    spec.N = 4;
    return spec;
}
} // namespace

TEST_CASE("single-mode wave function is the analytic plane wave") {
    const LatticeSpec spec = small_lattice();
    const ChiGauge gauge{1};
    const Eigen::Vector3i n(1, -1, 0);
    const int lambda = -1;
    const Complex c(0.4, -0.9);
    PhotonState st;
    st.lattice = spec;
    st.one_photon[ModeIndex{n, lambda}] = c;

    const KMode mode = make_k_mode(spec, n);
    const double alpha = 0.5, t = 0.63;
    const OnePhotonProjector psi(st, alpha, gauge);
    const Eigen::Vector3d r(0.2, 1.1, -0.4);
    const Eigen::Vector3cd expected =
        c * std::pow(mode.k, alpha) * polarization_vector(mode, lambda, gauge).conjugate() *
        std::exp(Complex(0.0, mode.k_vec.dot(r) - mode.k * t)) / std::sqrt(spec.volume());
    CHECK((psi(r, t) - expected).norm() < 1e-15);
}

TEST_CASE("field prefactors: E = i c C Psi^(1/2), A = C Psi^(-1/2), B = i lambda E / c") {
    const LatticeSpec spec = small_lattice();
    const ChiGauge gauge{0};
    UnitSystem units;
    units.hbar = 2.0;
    units.eps0 = 0.5; // field scale C = sqrt(hbar / (c eps0)) = 2
    PhotonState st;
    st.lattice = spec;
    st.units = units;
    const int lambda = +1;
    st.one_photon[ModeIndex{{0, 1, 1}, lambda}] = 1.0;

    const double t = 0.3;
    const VectorFieldSample e = field_E_plus(st, gauge, t);
    const VectorFieldSample a = field_A_plus(st, gauge, t);
    const VectorFieldSample b = field_B_plus(st, gauge, t);
    const VectorFieldSample psi_p = one_photon_wavefunction(st, 0.5, gauge, t);
    const VectorFieldSample psi_m = one_photon_wavefunction(st, -0.5, gauge, t);
    const Complex scale = units.field_scale();
    for (std::size_t i = 0; i < e.grid.size(); ++i) {
        CHECK((e.values[i] - Complex(0, 1) * units.c * scale * psi_p.values[i]).norm() < 1e-14);
        CHECK((a.values[i] - scale * psi_m.values[i]).norm() < 1e-14);
        CHECK((b.values[i] - Complex(0, lambda) / units.c * e.values[i]).norm() < 1e-14);
    }
    // Point evaluators agree with the grid samples.
    CHECK((field_E_plus_at(st, gauge, e.grid[5], t) - e.values[5]).norm() < 1e-15);
    CHECK((field_B_plus_at(st, gauge, b.grid[5], t) - b.values[5]).norm() < 1e-15);
}

TEST_CASE("scalar product is Parseval for a small superposition") {
    const LatticeSpec spec = small_lattice();
    PhotonState st;
    st.lattice = spec;
    st.one_photon[ModeIndex{{1, 0, 0}, +1}] = Complex(0.6, 0.3);
    st.one_photon[ModeIndex{{0, -2, 1}, -1}] = Complex(-0.2, 0.7);
    const double expected = norm_components(st).c1_sq;
    for (double alpha : {0.0, 0.5, -0.5}) {
        const ScalarProduct sp = scalar_product_local(st, alpha, ChiGauge{1}, 1.7);
        CHECK(sp.value == doctest::Approx(expected).epsilon(1e-12));
        CHECK(std::abs(sp.imag_residue) < 1e-12);
    }
}

TEST_CASE("densities: single mode uniform, integrals match norms") {
    const LatticeSpec spec = small_lattice();
    const ChiGauge gauge{0};
    PhotonState st;
    st.lattice = spec;
    st.one_photon[ModeIndex{{-1, 0, 1}, +1}] = Complex(0.0, 1.0);
    const DensityProfile lp = density_LP(st, gauge, 0.2);
    const DensityProfile bio = density_biorthonormal(st, gauge, 0.2);
    for (std::size_t i = 0; i < lp.values.size(); ++i) {
        CHECK(lp.values[i] == doctest::Approx(1.0 / spec.volume()).epsilon(1e-13));
        CHECK(bio.values[i] == doctest::Approx(1.0 / spec.volume()).epsilon(1e-13));
    }
    CHECK(lp.integral() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(bio.integral() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("two-mode closed form: values, degenerate case, collinearity gate") {
    const LatticeSpec spec = small_lattice();
    const KMode k1 = make_k_mode(spec, {-1, 0, 0});
    const KMode k2 = make_k_mode(spec, {-2, 0, 0});
    const double v = spec.volume();
    // At r = 0, t = 0 the cosine is 1.
    const double amp = std::sqrt(k1.k / k2.k) + std::sqrt(k2.k / k1.k);
    CHECK(amp == doctest::Approx(3.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(two_mode_closed_form(k1, k2, Eigen::Vector3d::Zero(), 0.0, v, 1.0) ==
          doctest::Approx((2.0 + amp) / (2.0 * v)).epsilon(1e-15));
    // Degenerate pair: uniform 2/V.
    CHECK(two_mode_closed_form(k1, k1, Eigen::Vector3d(0.3, 0.1, -2.0), 0.9, v, 1.0) ==
          doctest::Approx(2.0 / v).epsilon(1e-15));
    // Non-collinear input refused with an explanation.
    const KMode ky = make_k_mode(spec, {0, 1, 0});
    CHECK_THROWS_AS(two_mode_closed_form(k1, ky, Eigen::Vector3d::Zero(), 0.0, v, 1.0),
                    InputError);
    // Anti-parallel is also refused: same line, opposite direction.
    const KMode kp = make_k_mode(spec, {1, 0, 0});
    CHECK_THROWS_AS(two_mode_closed_form(k1, kp, Eigen::Vector3d::Zero(), 0.0, v, 1.0),
                    InputError);
}

TEST_CASE("two-mode state construction") {
    const LatticeSpec spec = small_lattice();
    const PhotonState st = make_two_mode_state(spec, {-1, 0, 0}, {-2, 0, 0}, +1, UnitSystem{});
    CHECK(st.one_photon.size() == 2);
    CHECK(norm_components(st).c1_sq == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("two-photon amplitude swap symmetry and doubly-occupied case") {
    const LatticeSpec spec = small_lattice();
    const ChiGauge gauge{0};
    const ModeIndex p{{1, 0, 0}, +1}, q{{0, 1, 0}, -1};
    PhotonState st;
    st.lattice = spec;
    st.set_c2(p, q, Complex(0.8, -0.1));
    st.set_c2(p, p, Complex(0.2, 0.5));
    const Eigen::Vector3d r(0.4, 0.2, 1.0), rp(1.3, -0.5, 0.2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(two_photon_amplitude(st, 0.5, gauge, r, rp, 0.1, 0.7, i, j) ==
                  two_photon_amplitude(st, 0.5, gauge, rp, r, 0.7, 0.1, j, i));
    // Doubly occupied alone is nonzero somewhere.
    PhotonState dbl;
    dbl.lattice = spec;
    dbl.set_c2(p, p, 1.0);
    double max_amp = 0.0;
    for (int i = 0; i < 3; ++i)
        max_amp = std::max(max_amp,
                           std::abs(two_photon_amplitude(dbl, 0.0, gauge, r, rp, 0.0, 0.0, i, i)));
    CHECK(max_amp > 1e-6);
}

TEST_CASE("biorthonormal pairing closed forms") {
    const LatticeSpec spec = small_lattice();
    const auto modes = build_k_lattice(spec);
    const RGrid grid = conjugate_r_grid(spec);
    const double v = spec.volume();
    const double n3 = 64.0;
    const ChiGauge gauge{1};
    const Eigen::Vector3d r1 = grid.points[3];
    CHECK(std::abs(biorthonormal_pairing(modes, 0.5, gauge, r1, r1, +1, +1, 0.7, UnitSystem{}, v) -
                   Complex((n3 - 1.0) / v)) < 1e-12 * n3 / v);
    CHECK(std::abs(biorthonormal_pairing(modes, 0.5, gauge, r1, grid.points[10], +1, +1, 0.0,
                                         UnitSystem{}, v) -
                   Complex(-1.0 / v)) < 1e-12 * n3 / v);
    CHECK(std::abs(biorthonormal_pairing(modes, -0.5, gauge, r1, grid.points[10], +1, -1, 0.0,
                                         UnitSystem{}, v)) < 1e-13);
}

TEST_CASE("Maxwell residuals shrink at second order") {
    const LatticeSpec spec = small_lattice();
    PhotonState st;
    st.lattice = spec;
    st.one_photon[ModeIndex{{-2, 1, 0}, +1}] = Complex(0.7, 0.1);
    st.one_photon[ModeIndex{{0, -1, 1}, -1}] = Complex(-0.3, 0.6);
    const double dr = spec.r_spacing() * 2e-2, dt = dr;
    const MaxwellResidual r1 = maxwell_residual(st, ChiGauge{0}, 0.4, dr, dt);
    const MaxwellResidual r2 = maxwell_residual(st, ChiGauge{0}, 0.4, dr / 2, dt / 2);
    for (auto field : {&MaxwellResidual::div_E, &MaxwellResidual::div_B,
                       &MaxwellResidual::faraday, &MaxwellResidual::ampere}) {
        const double order = std::log2(r1.*field / (r2.*field));
        CHECK(order > 1.7);
        CHECK(order < 2.3);
    }
}
