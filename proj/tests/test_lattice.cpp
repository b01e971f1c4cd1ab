#include <doctest.h>

#include <set>

#include "photonloc/lattice.hpp"

using namespace photonloc;

TEST_CASE("k lattice enumerates [-N/2, N/2)^3 minus k = 0") {
    LatticeSpec spec;
    spec.N = 4;
    const auto modes = build_k_lattice(spec);
    CHECK(modes.size() == 4 * 4 * 4 - 1);
    std::set<std::array<int, 3>> seen;
    for (const KMode& m : modes) {
        for (int i = 0; i < 3; ++i) {
            CHECK(m.n[i] >= -2);
            CHECK(m.n[i] < 2);
        }
        CHECK(m.n != Eigen::Vector3i::Zero());
        seen.insert({m.n.x(), m.n.y(), m.n.z()});
        CHECK(m.k == doctest::Approx(m.k_vec.norm()).epsilon(1e-15));
        CHECK((m.k_vec - spec.k_unit() * m.n.cast<double>()).norm() < 1e-15);
    }
    CHECK(seen.size() == modes.size()); // no duplicates
}

TEST_CASE("lexicographic order is deterministic") {
    LatticeSpec spec;
    const auto a = build_k_lattice(spec);
    const auto b = build_k_lattice(spec);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        CHECK(a[i].n == b[i].n);
        const auto& p = a[i].n;
        const auto& q = a[i + 1].n;
        CHECK(std::tie(p.x(), p.y(), p.z()) < std::tie(q.x(), q.y(), q.z()));
    }
}

TEST_CASE("z-axis exclusion drops exactly the n_x = n_y = 0 modes") {
    LatticeSpec spec;
    spec.N = 4;
    spec.exclude_z_axis = true;
    const auto modes = build_k_lattice(spec);
    CHECK(modes.size() == 4 * 4 * 4 - 4); // k=0 plus n_z in {-2,-1,1}
    for (const KMode& m : modes) CHECK((m.n.x() != 0 || m.n.y() != 0));
}

TEST_CASE("spherical angles and pole convention") {
    LatticeSpec spec;
    const KMode up = make_k_mode(spec, {0, 0, 1});
    CHECK(up.theta == doctest::Approx(0.0));
    CHECK(up.phi == 0.0);
    const KMode down = make_k_mode(spec, {0, 0, -2});
    CHECK(down.theta == doctest::Approx(M_PI));
    CHECK(down.phi == 0.0);
    const KMode diag = make_k_mode(spec, {1, 1, 0});
    CHECK(diag.theta == doctest::Approx(M_PI / 2));
    CHECK(diag.phi == doctest::Approx(M_PI / 4));
    // Reconstruction from angles.
    const Eigen::Vector3d rebuilt =
        diag.k * Eigen::Vector3d(std::sin(diag.theta) * std::cos(diag.phi),
                                 std::sin(diag.theta) * std::sin(diag.phi), std::cos(diag.theta));
    CHECK((rebuilt - diag.k_vec).norm() < 1e-14);
}

TEST_CASE("conjugate grid has N^3 points of weight V/N^3") {
    LatticeSpec spec;
    spec.L = 3.0;
    spec.N = 4;
    const RGrid grid = conjugate_r_grid(spec);
    CHECK(grid.points.size() == 64);
    CHECK(grid.cell_volume == doctest::Approx(spec.volume() / 64));
    for (const auto& r : grid.points)
        for (int i = 0; i < 3; ++i) {
            CHECK(r[i] >= 0.0);
            CHECK(r[i] < spec.L);
            const double m = r[i] / spec.r_spacing();
            CHECK(std::abs(m - std::round(m)) < 1e-12);
        }
}

TEST_CASE("invalid specs and off-lattice modes are rejected") {
    LatticeSpec bad;
    bad.N = 3;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad.N = 4;
    bad.L = -1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    LatticeSpec spec;
    spec.N = 4;
    CHECK(!spec.contains({2, 0, 0})); // 2 is outside [-2, 2)
    CHECK(spec.contains({-2, 0, 0}));
    CHECK(!spec.contains({0, 0, 0}));
    CHECK_THROWS_AS(make_k_mode(spec, {2, 0, 0}), InputError);
    CHECK_THROWS_AS(make_k_mode(spec, {0, 0, 0}), InputError);
}
