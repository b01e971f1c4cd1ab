#ifndef PHOTONLOC_POSITION_OPERATOR_HPP
#define PHOTONLOC_POSITION_OPERATOR_HPP

#include <array>
#include <functional>
#include <span>

#include "photonloc/polarization.hpp"
#include "photonloc/units.hpp"

namespace photonloc {

// A smooth complex 3-vector function of continuous k, evaluable anywhere
// the finite-difference stencils need it.
using TestField = std::function<Eigen::Vector3cd(const Eigen::Vector3d&)>;

struct OperatorParams {
    double alpha = 0.0;
    ChiGauge gauge{};
    double h = 1e-3;       // FD step in k-units
    bool drop_vortex_term = false; // Pryce variant: omit the (k.S)(phi_hat cot - grad chi) term

    void validate() const {
        if (!(h > 0.0)) throw ConfigError("operator params: FD step h must be > 0");
        if (!std::isfinite(alpha)) throw ConfigError("operator params: alpha must be finite");
    }
};

// Sup-norm diagnostic of an operator-identity sweep.
struct Residual {
    double sup_norm = 0.0;
    int sample_count = 0;
    KMode worst_mode{};
};

// Applies the three Cartesian components of the k-space position operator
//   r_j = i d/dk_j - i alpha k_j/k^2 + (k x S)_j/k^2
//         - (k.S/k^2)(phi_hat_j cot(theta) - (grad chi)_j)
// to f at point k. The derivative term uses central differences of step h;
// everything else is evaluated exactly.
std::array<Eigen::Vector3cd, 3> apply_position_operator(const OperatorParams& params,
                                                        const TestField& f,
                                                        const Eigen::Vector3d& k);

// Position eigenfield psi^(alpha)_{r1,lambda}(k) = k^alpha e_{k,lambda}
// exp(-i k.r1 + i k c t) / sqrt(V), as a continuous-k field.
TestField position_eigenfield(double alpha, const ChiGauge& gauge, const Eigen::Vector3d& r1,
                              int lambda, double t, double c, double volume);

// sup_k |r psi - r1 psi| / |psi| over the sample modes.
Residual eigen_residual(const OperatorParams& params, const Eigen::Vector3d& r1, int lambda,
                        std::span<const KMode> modes, double t, const UnitSystem& units,
                        double volume);

// sup_k |r_i(r_j f) - r_j(r_i f)| / |f| by nested finite differences.
Residual commutator_residual(const OperatorParams& params, int i, int j, const TestField& f,
                             std::span<const KMode> modes);

// Plain lattice-sum inner product over modes and Cartesian components.
Complex lattice_inner_product(const TestField& f, const TestField& g,
                              std::span<const KMode> modes);

// max_i |<f, r_i^(1/2) g> - <r_i^(-1/2) f, g>|.
Residual adjoint_residual(const TestField& f, const TestField& g, std::span<const KMode> modes,
                          const ChiGauge& gauge, double h);

// sup_k |r^(alpha) f - k^alpha r^(0) (k^(-alpha) f)| / |f| for alpha from params.
Residual similarity_residual(const OperatorParams& params, const TestField& f,
                             std::span<const KMode> modes);

// J_z f = -i (k x grad_k)_z f + S_z f (hbar units).
Eigen::Vector3cd jz_apply(const TestField& f, const Eigen::Vector3d& k, double h);

struct JzProbe {
    double eigenvalue = 0.0;   // least-squares mu over samples
    double fit_residual = 0.0; // sup |J_z psi - mu psi| / |psi|
};

// Measures the J_z eigenvalue of psi^(alpha)_{0,lambda} with chi = m phi.
JzProbe jz_eigen_probe(const ChiGauge& gauge, int lambda, double alpha,
                       std::span<const KMode> modes, double h, double c, double volume);

// Convenience: modes filtered for operator sweeps (off-axis, |cos theta|
// capped to keep the cot term well conditioned).
std::vector<KMode> operator_sample_modes(std::span<const KMode> modes,
                                         double max_abs_cos_theta = 0.99);

} // namespace photonloc

#endif
