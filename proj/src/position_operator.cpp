#include "photonloc/position_operator.hpp"

#include <cmath>
#include <vector>

namespace photonloc {

namespace {

constexpr double kAxisTol = 1e-12;

void require_regular(const Eigen::Vector3d& k) {
    const double rho = std::hypot(k.x(), k.y());
    if (k.norm() < kAxisTol) throw SingularPointError("position operator undefined at k = 0");
    if (rho < kAxisTol * std::max(1.0, std::abs(k.z())))
        throw SingularPointError("position operator undefined on the z-axis");
}

} // namespace

std::array<Eigen::Vector3cd, 3> apply_position_operator(const OperatorParams& params,
                                                        const TestField& f,
                                                        const Eigen::Vector3d& k) {
    params.validate();
    require_regular(k);

    const Complex i(0.0, 1.0);
    const double k2 = k.squaredNorm();
    const double knorm = std::sqrt(k2);
    double theta, phi;
    spherical_angles(k, theta, phi);
    const Eigen::Vector3d phi_hat(-std::sin(phi), std::cos(phi), 0.0);
    const double cot_theta = std::cos(theta) / std::sin(theta);

    const Eigen::Vector3cd fk = f(k);

    // Central differences for i d/dk_j.
    std::array<Eigen::Vector3cd, 3> df;
    for (int j = 0; j < 3; ++j) {
        Eigen::Vector3d kp = k, km = k;
        kp[j] += params.h;
        km[j] -= params.h;
        df[j] = (f(kp) - f(km)) / (2.0 * params.h);
    }

    // (k x S)_j as 3x3 matrices.
    const std::array<Eigen::Matrix3cd, 3> k_cross_S = {
        k.y() * spin_matrix(3) - k.z() * spin_matrix(2),
        k.z() * spin_matrix(1) - k.x() * spin_matrix(3),
        k.x() * spin_matrix(2) - k.y() * spin_matrix(1),
    };

    const Eigen::Matrix3cd kS = spin_dot(k);
    const Eigen::Vector3cd kS_f = kS * fk;
    const Eigen::Vector3d grad_chi = params.gauge.grad_chi(knorm, theta, phi);

    std::array<Eigen::Vector3cd, 3> out;
    for (int j = 0; j < 3; ++j) {
        out[j] = i * df[j] - i * params.alpha * (k[j] / k2) * fk + (k_cross_S[j] * fk) / k2;
        // Vortex term from D i grad D^{-1}: the chi part enters with one
        // power of k, -(k_hat.S) grad_chi, so that psi ~ exp(-i lambda chi)
        // frames solve the eigenvalue equation.
        if (!params.drop_vortex_term)
            out[j] -= (kS_f / k2) * (phi_hat[j] * cot_theta) + (kS_f / knorm) * grad_chi[j];
    }
    return out;
}

TestField position_eigenfield(double alpha, const ChiGauge& gauge, const Eigen::Vector3d& r1,
                              int lambda, double t, double c, double volume) {
    const double inv_sqrt_v = 1.0 / std::sqrt(volume);
    return [=](const Eigen::Vector3d& k) -> Eigen::Vector3cd {
        const double knorm = k.norm();
        double theta, phi;
        spherical_angles(k, theta, phi);
        const PolarizationFrame frame = make_frame(theta, phi, gauge);
        const Complex phase = std::exp(Complex(0.0, -k.dot(r1) + knorm * c * t));
        return std::pow(knorm, alpha) * inv_sqrt_v * phase * frame.e(lambda);
    };
}

Residual eigen_residual(const OperatorParams& params, const Eigen::Vector3d& r1, int lambda,
                        std::span<const KMode> modes, double t, const UnitSystem& units,
                        double volume) {
    if (modes.empty()) throw ConfigError("eigen_residual: empty sample set");
    const TestField psi =
        position_eigenfield(params.alpha, params.gauge, r1, lambda, t, units.c, volume);

    Residual res;
    for (const KMode& mode : modes) {
        const auto applied = apply_position_operator(params, psi, mode.k_vec);
        const Eigen::Vector3cd value = psi(mode.k_vec);
        const double scale = value.norm();
        for (int j = 0; j < 3; ++j) {
            const double err = (applied[j] - r1[j] * value).norm() / scale;
            if (err > res.sup_norm) {
                res.sup_norm = err;
                res.worst_mode = mode;
            }
        }
        ++res.sample_count;
    }
    return res;
}

Residual commutator_residual(const OperatorParams& params, int i, int j, const TestField& f,
                             std::span<const KMode> modes) {
    if (i == j) throw ConfigError("commutator_residual: need distinct components");
    if (modes.empty()) throw ConfigError("commutator_residual: empty sample set");

    const TestField ri_f = [&](const Eigen::Vector3d& k) {
        return apply_position_operator(params, f, k)[i];
    };
    const TestField rj_f = [&](const Eigen::Vector3d& k) {
        return apply_position_operator(params, f, k)[j];
    };

    Residual res;
    for (const KMode& mode : modes) {
        const Eigen::Vector3cd a = apply_position_operator(params, rj_f, mode.k_vec)[i];
        const Eigen::Vector3cd b = apply_position_operator(params, ri_f, mode.k_vec)[j];
        const double scale = f(mode.k_vec).norm();
        const double err = (a - b).norm() / std::max(scale, 1e-300);
        if (err > res.sup_norm) {
            res.sup_norm = err;
            res.worst_mode = mode;
        }
        ++res.sample_count;
    }
    return res;
}

Complex lattice_inner_product(const TestField& f, const TestField& g,
                              std::span<const KMode> modes) {
    Complex acc = 0.0;
    for (const KMode& mode : modes) acc += f(mode.k_vec).dot(g(mode.k_vec));
    return acc;
}

Residual adjoint_residual(const TestField& f, const TestField& g, std::span<const KMode> modes,
                          const ChiGauge& gauge, double h) {
    OperatorParams plus{+0.5, gauge, h};
    OperatorParams minus{-0.5, gauge, h};

    Residual res;
    for (int comp = 0; comp < 3; ++comp) {
        Complex lhs = 0.0, rhs = 0.0;
        for (const KMode& mode : modes) {
            lhs += f(mode.k_vec).dot(apply_position_operator(plus, g, mode.k_vec)[comp]);
            rhs += apply_position_operator(minus, f, mode.k_vec)[comp].dot(g(mode.k_vec));
            // Eigen's dot conjugates its first argument, matching <.,.>.
        }
        res.sup_norm = std::max(res.sup_norm, std::abs(lhs - rhs));
    }
    res.sample_count = static_cast<int>(modes.size());
    return res;
}

Residual similarity_residual(const OperatorParams& params, const TestField& f,
                             std::span<const KMode> modes) {
    if (modes.empty()) throw ConfigError("similarity_residual: empty sample set");
    const double alpha = params.alpha;

    // r^(alpha) = k^alpha r^(0) k^{-alpha}: the similarity transform that
    // maps the Hermitian alpha = 0 operator onto the biorthonormal pair.
    const TestField scaled = [&f, alpha](const Eigen::Vector3d& k) -> Eigen::Vector3cd {
        return std::pow(k.norm(), -alpha) * f(k);
    };
    OperatorParams zero = params;
    zero.alpha = 0.0;

    Residual res;
    for (const KMode& mode : modes) {
        const auto direct = apply_position_operator(params, f, mode.k_vec);
        const auto transported = apply_position_operator(zero, scaled, mode.k_vec);
        const double w = std::pow(mode.k, alpha);
        const double scale = std::max(f(mode.k_vec).norm(), 1e-300);
        for (int j = 0; j < 3; ++j) {
            const double err = (direct[j] - w * transported[j]).norm() / scale;
            if (err > res.sup_norm) {
                res.sup_norm = err;
                res.worst_mode = mode;
            }
        }
        ++res.sample_count;
    }
    return res;
}

Eigen::Vector3cd jz_apply(const TestField& f, const Eigen::Vector3d& k, double h) {
    const Complex i(0.0, 1.0);
    Eigen::Vector3d kxp = k, kxm = k, kyp = k, kym = k;
    kxp.x() += h;
    kxm.x() -= h;
    kyp.y() += h;
    kym.y() -= h;
    const Eigen::Vector3cd dfdx = (f(kxp) - f(kxm)) / (2.0 * h);
    const Eigen::Vector3cd dfdy = (f(kyp) - f(kym)) / (2.0 * h);
    // (k x grad)_z = k_x d/dk_y - k_y d/dk_x
    return -i * (k.x() * dfdy - k.y() * dfdx) + spin_matrix(3) * f(k);
}

JzProbe jz_eigen_probe(const ChiGauge& gauge, int lambda, double alpha,
                       std::span<const KMode> modes, double h, double c, double volume) {
    if (modes.empty()) throw ConfigError("jz_eigen_probe: empty sample set");
    const TestField psi =
        position_eigenfield(alpha, gauge, Eigen::Vector3d::Zero(), lambda, 0.0, c, volume);

    // Least-squares mu over all stacked samples, then sup-norm misfit.
    Complex num = 0.0;
    double den = 0.0;
    std::vector<Eigen::Vector3cd> values, applied;
    values.reserve(modes.size());
    applied.reserve(modes.size());
    for (const KMode& mode : modes) {
        const Eigen::Vector3cd v = psi(mode.k_vec);
        const Eigen::Vector3cd jv = jz_apply(psi, mode.k_vec, h);
        values.push_back(v);
        applied.push_back(jv);
        num += v.dot(jv);
        den += v.squaredNorm();
    }
    JzProbe probe;
    probe.eigenvalue = (num / den).real();
    for (std::size_t s = 0; s < values.size(); ++s) {
        const double err = (applied[s] - probe.eigenvalue * values[s]).norm() / values[s].norm();
        probe.fit_residual = std::max(probe.fit_residual, err);
    }
    return probe;
}

std::vector<KMode> operator_sample_modes(std::span<const KMode> modes, double max_abs_cos_theta) {
    std::vector<KMode> out;
    for (const KMode& mode : modes) {
        if (mode.n.x() == 0 && mode.n.y() == 0) continue;
        if (std::abs(std::cos(mode.theta)) > max_abs_cos_theta) continue;
        out.push_back(mode);
    }
    return out;
}

} // namespace photonloc
