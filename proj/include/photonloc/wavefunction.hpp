#ifndef PHOTONLOC_WAVEFUNCTION_HPP
#define PHOTONLOC_WAVEFUNCTION_HPP

#include <span>
#include <vector>

#include "photonloc/fock_state.hpp"
#include "photonloc/polarization.hpp"
#include "photonloc/position_operator.hpp"

namespace photonloc {

// Complex 3-vector field sampled on the conjugate position grid.
struct VectorFieldSample {
    std::vector<Eigen::Vector3d> grid;
    std::vector<Eigen::Vector3cd> values;
    double alpha = 0.0;
    double t = 0.0;
    double cell_volume = 0.0;
};

enum class DensityKind { LP, Biorthonormal };

struct DensityProfile {
    std::vector<Eigen::Vector3d> grid;
    std::vector<double> values;
    DensityKind kind = DensityKind::LP;
    double t = 0.0;
    double cell_volume = 0.0;

    // Quadrature-weighted spatial integral (pairwise reduction).
    double integral() const;
};

// Precomputed per-mode projection weights sum_lambda c_{k,lambda}
// conj(e_{k,lambda}) k^alpha; evaluating the wave function at (r, t) is
// then a phase-weighted mode sum. One-photon sector only.
class OnePhotonProjector {
  public:
    OnePhotonProjector(const PhotonState& state, double alpha, const ChiGauge& gauge);

    // Mode-wise i k x (C k^{-1/2} .) weights: an exact curl of A^(+).
    static OnePhotonProjector magnetic_field(const PhotonState& state, const ChiGauge& gauge);

    // Psi^(alpha)(r, t), evaluable at arbitrary r and t.
    Eigen::Vector3cd operator()(const Eigen::Vector3d& r, double t) const;

    // Multiplies every mode weight (for field prefactors like i c C).
    void scale(Complex s);

    double alpha() const { return alpha_; }

  private:
    std::vector<Eigen::Vector3d> k_vecs_;
    std::vector<double> k_norms_;
    std::vector<Eigen::Vector3cd> weights_;
    double inv_sqrt_v_ = 0.0;
    double c_ = 1.0;
    double alpha_ = 0.0;
};

VectorFieldSample one_photon_wavefunction(const PhotonState& state, double alpha,
                                          const ChiGauge& gauge, double t);

// A^(+) = C Psi^(-1/2);  E^(+) = i c C Psi^(1/2);  B^(+) = curl A^(+)
// built mode-wise via i k x (.).
VectorFieldSample field_A_plus(const PhotonState& state, const ChiGauge& gauge, double t);
VectorFieldSample field_E_plus(const PhotonState& state, const ChiGauge& gauge, double t);
VectorFieldSample field_B_plus(const PhotonState& state, const ChiGauge& gauge, double t);

// Point evaluators for the fields (used by the FD Maxwell check).
Eigen::Vector3cd field_E_plus_at(const PhotonState& state, const ChiGauge& gauge,
                                 const Eigen::Vector3d& r, double t);
Eigen::Vector3cd field_B_plus_at(const PhotonState& state, const ChiGauge& gauge,
                                 const Eigen::Vector3d& r, double t);

struct MaxwellResidual {
    double div_E = 0.0;
    double div_B = 0.0;
    double faraday = 0.0; // curl E + dB/dt
    double ampere = 0.0;  // curl B - (1/c^2) dE/dt

    double max() const;
};

// Central-difference residuals of the vacuum Maxwell equations on the
// conjugate grid; expected O(dr^2) + O(dt^2).
MaxwellResidual maxwell_residual(const PhotonState& state, const ChiGauge& gauge, double t,
                                 double dr, double dt);

struct ScalarProduct {
    double value = 0.0;        // real part of the lattice quadrature
    double imag_residue = 0.0; // leftover imaginary part, reported not dropped
};

// sum_j integral Psi_j^(-alpha)* Psi_j^(alpha) d^3r by V/N^3 quadrature;
// equals sum |c_{k,lambda}|^2 for any alpha.
ScalarProduct scalar_product_local(const PhotonState& state, double alpha, const ChiGauge& gauge,
                                   double t);

DensityProfile density_LP(const PhotonState& state, const ChiGauge& gauge, double t);
DensityProfile density_biorthonormal(const PhotonState& state, const ChiGauge& gauge, double t);

// Closed-form density of the equal-weight two-mode superposition:
// n(r,t) = (1/2V) {2 + (sqrt(k1/k2)+sqrt(k2/k1)) cos[(k1-k2).r - (k1-k2)ct]}.
// Only valid for collinear k1, k2 (same k_hat); refuses otherwise.
double two_mode_closed_form(const KMode& k1, const KMode& k2, const Eigen::Vector3d& r, double t,
                            double volume, double c);

// Builds the equal-weight two-mode one-photon state the closed form describes.
PhotonState make_two_mode_state(const LatticeSpec& spec, const Eigen::Vector3i& n1,
                                const Eigen::Vector3i& n2, int lambda,
                                const UnitSystem& units = {});

// Two-photon correlation amplitude Psi_{i,j}^(alpha)(r, r', t, t'), the
// double mode sum with both permutation terms.
Complex two_photon_amplitude(const PhotonState& state, double alpha, const ChiGauge& gauge,
                             const Eigen::Vector3d& r, const Eigen::Vector3d& r_prime, double t,
                             double t_prime, int i, int j);

// Discrete biorthonormality: the mode sum for a (r1,r2,lambda1,lambda2)
// pair against its closed-form lattice value (N^3 delta_{r1,r2} - 1)/V
// for equal helicities, 0 otherwise.
Complex biorthonormal_pairing(std::span<const KMode> modes, double alpha, const ChiGauge& gauge,
                              const Eigen::Vector3d& r1, const Eigen::Vector3d& r2, int lambda1,
                              int lambda2, double t, const UnitSystem& units, double volume);

Residual biorthonormality_check(const LatticeSpec& spec, std::span<const KMode> modes,
                                double alpha, const ChiGauge& gauge);

// Discrete completeness: sum over lambda and the r-grid of
// psi^(alpha)(k) psi^(-alpha)*(k') (V/N^3), compared against
// delta_{k,k'} (I - k_hat k_hat^T).
Eigen::Matrix3cd completeness_matrix(const LatticeSpec& spec, double alpha, const ChiGauge& gauge,
                                     const KMode& k, const KMode& k_prime, double t,
                                     const UnitSystem& units);

Residual completeness_check(const LatticeSpec& spec, double alpha, const ChiGauge& gauge,
                            const KMode& k, const KMode& k_prime);

} // namespace photonloc

#endif
