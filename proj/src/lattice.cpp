#include "photonloc/lattice.hpp"

#include <cmath>

namespace photonloc {

bool LatticeSpec::contains(const Eigen::Vector3i& n) const {
    for (int a = 0; a < 3; ++a)
        if (n[a] < -N / 2 || n[a] >= N / 2) return false;
    if (n == Eigen::Vector3i::Zero()) return false;
    if (exclude_z_axis && n.x() == 0 && n.y() == 0) return false;
    return true;
}

void spherical_angles(const Eigen::Vector3d& k_vec, double& theta, double& phi) {
    const double k = k_vec.norm();
    theta = std::acos(std::clamp(k_vec.z() / k, -1.0, 1.0));
    if (k_vec.x() == 0.0 && k_vec.y() == 0.0) {
        phi = 0.0; // pole convention
    } else {
        phi = std::atan2(k_vec.y(), k_vec.x());
        if (phi < 0.0) phi += 2.0 * M_PI;
    }
}

KMode make_k_mode(const LatticeSpec& spec, const Eigen::Vector3i& n) {
    if (!spec.contains(n))
        throw InputError("mode n=(" + std::to_string(n.x()) + "," + std::to_string(n.y()) + "," +
                         std::to_string(n.z()) + ") is not on the lattice (N=" +
                         std::to_string(spec.N) + ", range [-N/2, N/2), k = 0 excluded)");
    KMode m;
    m.n = n;
    m.k_vec = (2.0 * M_PI / spec.L) * n.cast<double>();
    m.k = m.k_vec.norm();
    spherical_angles(m.k_vec, m.theta, m.phi);
    return m;
}

std::vector<KMode> build_k_lattice(const LatticeSpec& spec) {
    spec.validate();
    std::vector<KMode> modes;
    modes.reserve(static_cast<std::size_t>(spec.N) * spec.N * spec.N - 1);
    for (int nx = -spec.N / 2; nx < spec.N / 2; ++nx)
        for (int ny = -spec.N / 2; ny < spec.N / 2; ++ny)
            for (int nz = -spec.N / 2; nz < spec.N / 2; ++nz) {
                const Eigen::Vector3i n(nx, ny, nz);
                if (!spec.contains(n)) continue;
                modes.push_back(make_k_mode(spec, n));
            }
    return modes;
}

RGrid conjugate_r_grid(const LatticeSpec& spec) {
    spec.validate();
    RGrid grid;
    grid.cell_volume = spec.volume() / (static_cast<double>(spec.N) * spec.N * spec.N);
    grid.points.reserve(static_cast<std::size_t>(spec.N) * spec.N * spec.N);
    const double dr = spec.r_spacing();
    for (int mx = 0; mx < spec.N; ++mx)
        for (int my = 0; my < spec.N; ++my)
            for (int mz = 0; mz < spec.N; ++mz)
                grid.points.emplace_back(dr * mx, dr * my, dr * mz);
    return grid;
}

} // namespace photonloc
