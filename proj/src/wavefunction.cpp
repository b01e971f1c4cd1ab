#include "photonloc/wavefunction.hpp"

#include <cmath>
#include <map>

#include "photonloc/parallel.hpp"

namespace photonloc {

namespace {

Eigen::Vector3cd sum_terms(std::vector<Eigen::Vector3cd>& terms) {
    if (terms.empty()) return Eigen::Vector3cd::Zero();
    return pairwise_sum(std::span<const Eigen::Vector3cd>(terms));
}

Complex plane_wave(const Eigen::Vector3d& k_vec, double k, const Eigen::Vector3d& r, double ct) {
    return std::exp(Complex(0.0, k_vec.dot(r) - k * ct));
}

} // namespace

double DensityProfile::integral() const {
    return pairwise_sum(std::span<const double>(values)) * cell_volume;
}

double MaxwellResidual::max() const {
    return std::max(std::max(div_E, div_B), std::max(faraday, ampere));
}

OnePhotonProjector::OnePhotonProjector(const PhotonState& state, double alpha,
                                       const ChiGauge& gauge)
    : inv_sqrt_v_(1.0 / std::sqrt(state.lattice.volume())),
      c_(state.units.c),
      alpha_(alpha) {
    // Accumulate sum_lambda c_{k,lambda} conj(e_{k,lambda}) k^alpha per
    // wave vector, in lattice (lexicographic n) order.
    std::map<std::array<int, 3>, Eigen::Vector3cd> weights;
    std::map<std::array<int, 3>, KMode> modes;
    for (const auto& [m, c] : state.one_photon) {
        const KMode mode = make_k_mode(state.lattice, m.n);
        const Eigen::Vector3cd e = polarization_vector(mode, m.lambda, gauge);
        const std::array<int, 3> key{m.n.x(), m.n.y(), m.n.z()};
        auto [it, fresh] = weights.try_emplace(key, Eigen::Vector3cd::Zero());
        it->second += c * std::pow(mode.k, alpha) * e.conjugate();
        modes.emplace(key, mode);
    }
    for (const auto& [key, w] : weights) {
        const KMode& mode = modes.at(key);
        k_vecs_.push_back(mode.k_vec);
        k_norms_.push_back(mode.k);
        weights_.push_back(w);
    }
}

Eigen::Vector3cd OnePhotonProjector::operator()(const Eigen::Vector3d& r, double t) const {
    std::vector<Eigen::Vector3cd> terms(weights_.size());
    const double ct = c_ * t;
    for (std::size_t m = 0; m < weights_.size(); ++m)
        terms[m] = weights_[m] * plane_wave(k_vecs_[m], k_norms_[m], r, ct);
    return inv_sqrt_v_ * sum_terms(terms);
}

void OnePhotonProjector::scale(Complex s) {
    for (auto& w : weights_) w *= s;
}

OnePhotonProjector OnePhotonProjector::magnetic_field(const PhotonState& state,
                                                      const ChiGauge& gauge) {
    OnePhotonProjector proj(state, -0.5, gauge);
    const double field_scale = state.units.field_scale();
    const Complex i(0.0, 1.0);
    // B = curl A done per mode: ik x (C k^{-1/2} w_k). Written out because
    // Eigen's cross() conjugates complex operands.
    for (std::size_t m = 0; m < proj.weights_.size(); ++m) {
        const Eigen::Vector3d& k = proj.k_vecs_[m];
        const Eigen::Vector3cd w = field_scale * proj.weights_[m];
        proj.weights_[m] = i * Eigen::Vector3cd(k.y() * w.z() - k.z() * w.y(),
                                                k.z() * w.x() - k.x() * w.z(),
                                                k.x() * w.y() - k.y() * w.x());
    }
    return proj;
}

static VectorFieldSample sample_on_grid(const PhotonState& state, const OnePhotonProjector& proj,
                                        double alpha, double t) {
    const RGrid grid = conjugate_r_grid(state.lattice);
    VectorFieldSample sample;
    sample.grid = grid.points;
    sample.values.resize(grid.points.size());
    sample.alpha = alpha;
    sample.t = t;
    sample.cell_volume = grid.cell_volume;
    parallel_for(grid.points.size(),
                 [&](std::size_t i) { sample.values[i] = proj(sample.grid[i], t); });
    return sample;
}

VectorFieldSample one_photon_wavefunction(const PhotonState& state, double alpha,
                                          const ChiGauge& gauge, double t) {
    return sample_on_grid(state, OnePhotonProjector(state, alpha, gauge), alpha, t);
}

VectorFieldSample field_A_plus(const PhotonState& state, const ChiGauge& gauge, double t) {
    OnePhotonProjector proj(state, -0.5, gauge);
    proj.scale(state.units.field_scale());
    return sample_on_grid(state, proj, -0.5, t);
}

VectorFieldSample field_E_plus(const PhotonState& state, const ChiGauge& gauge, double t) {
    OnePhotonProjector proj(state, +0.5, gauge);
    proj.scale(Complex(0.0, 1.0) * state.units.c * state.units.field_scale());
    return sample_on_grid(state, proj, +0.5, t);
}

VectorFieldSample field_B_plus(const PhotonState& state, const ChiGauge& gauge, double t) {
    return sample_on_grid(state, OnePhotonProjector::magnetic_field(state, gauge), -0.5, t);
}

Eigen::Vector3cd field_E_plus_at(const PhotonState& state, const ChiGauge& gauge,
                                 const Eigen::Vector3d& r, double t) {
    OnePhotonProjector proj(state, +0.5, gauge);
    proj.scale(Complex(0.0, 1.0) * state.units.c * state.units.field_scale());
    return proj(r, t);
}

Eigen::Vector3cd field_B_plus_at(const PhotonState& state, const ChiGauge& gauge,
                                 const Eigen::Vector3d& r, double t) {
    return OnePhotonProjector::magnetic_field(state, gauge)(r, t);
}

MaxwellResidual maxwell_residual(const PhotonState& state, const ChiGauge& gauge, double t,
                                 double dr, double dt) {
    if (!(dr > 0.0) || !(dt > 0.0)) throw ConfigError("maxwell_residual: dr, dt must be > 0");
    OnePhotonProjector E(state, +0.5, gauge);
    E.scale(Complex(0.0, 1.0) * state.units.c * state.units.field_scale());
    const OnePhotonProjector B = OnePhotonProjector::magnetic_field(state, gauge);

    const RGrid grid = conjugate_r_grid(state.lattice);
    const double c2 = state.units.c * state.units.c;

    auto grad_stencil = [dr](const OnePhotonProjector& f, const Eigen::Vector3d& r, double time,
                             std::array<Eigen::Vector3cd, 3>& d) {
        for (int a = 0; a < 3; ++a) {
            Eigen::Vector3d rp = r, rm = r;
            rp[a] += dr;
            rm[a] -= dr;
            d[a] = (f(rp, time) - f(rm, time)) / (2.0 * dr);
        }
    };
    auto divergence = [](const std::array<Eigen::Vector3cd, 3>& d) {
        return d[0][0] + d[1][1] + d[2][2];
    };
    auto curl = [](const std::array<Eigen::Vector3cd, 3>& d) {
        return Eigen::Vector3cd(d[1][2] - d[2][1], d[2][0] - d[0][2], d[0][1] - d[1][0]);
    };

    std::vector<MaxwellResidual> local(grid.points.size());
    parallel_for(grid.points.size(), [&](std::size_t idx) {
        const Eigen::Vector3d& r = grid.points[idx];
        std::array<Eigen::Vector3cd, 3> dE, dB;
        grad_stencil(E, r, t, dE);
        grad_stencil(B, r, t, dB);
        const Eigen::Vector3cd dEdt = (E(r, t + dt) - E(r, t - dt)) / (2.0 * dt);
        const Eigen::Vector3cd dBdt = (B(r, t + dt) - B(r, t - dt)) / (2.0 * dt);
        MaxwellResidual& m = local[idx];
        m.div_E = std::abs(divergence(dE));
        m.div_B = std::abs(divergence(dB));
        m.faraday = (curl(dE) + dBdt).norm();
        m.ampere = (curl(dB) - dEdt / c2).norm();
    });

    MaxwellResidual out;
    for (const MaxwellResidual& m : local) {
        out.div_E = std::max(out.div_E, m.div_E);
        out.div_B = std::max(out.div_B, m.div_B);
        out.faraday = std::max(out.faraday, m.faraday);
        out.ampere = std::max(out.ampere, m.ampere);
    }
    return out;
}

ScalarProduct scalar_product_local(const PhotonState& state, double alpha, const ChiGauge& gauge,
                                   double t) {
    const VectorFieldSample minus = one_photon_wavefunction(state, -alpha, gauge, t);
    const VectorFieldSample plus = one_photon_wavefunction(state, +alpha, gauge, t);
    std::vector<Complex> terms(minus.values.size());
    for (std::size_t i = 0; i < terms.size(); ++i)
        terms[i] = minus.values[i].dot(plus.values[i]); // conjugates the first factor
    const Complex total = pairwise_sum(std::span<const Complex>(terms)) * minus.cell_volume;
    return ScalarProduct{total.real(), total.imag()};
}

DensityProfile density_LP(const PhotonState& state, const ChiGauge& gauge, double t) {
    const VectorFieldSample psi = one_photon_wavefunction(state, 0.0, gauge, t);
    DensityProfile d;
    d.grid = psi.grid;
    d.kind = DensityKind::LP;
    d.t = t;
    d.cell_volume = psi.cell_volume;
    d.values.resize(psi.values.size());
    for (std::size_t i = 0; i < psi.values.size(); ++i) d.values[i] = psi.values[i].squaredNorm();
    return d;
}

DensityProfile density_biorthonormal(const PhotonState& state, const ChiGauge& gauge, double t) {
    const VectorFieldSample plus = one_photon_wavefunction(state, +0.5, gauge, t);
    const VectorFieldSample minus = one_photon_wavefunction(state, -0.5, gauge, t);
    DensityProfile d;
    d.grid = plus.grid;
    d.kind = DensityKind::Biorthonormal;
    d.t = t;
    d.cell_volume = plus.cell_volume;
    d.values.resize(plus.values.size());
    for (std::size_t i = 0; i < plus.values.size(); ++i)
        d.values[i] = plus.values[i].dot(minus.values[i]).real();
    return d;
}

double two_mode_closed_form(const KMode& k1, const KMode& k2, const Eigen::Vector3d& r, double t,
                            double volume, double c) {
    const Eigen::Vector3d cross = k1.k_vec.cross(k2.k_vec);
    if (cross.norm() > 1e-12 * k1.k * k2.k || k1.k_vec.dot(k2.k_vec) <= 0.0)
        throw InputError(
            "two_mode_closed_form: k1 and k2 must be collinear with the same direction; for "
            "non-collinear modes the polarization overlap changes the cross term and the closed "
            "form does not apply");
    const double amp = std::sqrt(k1.k / k2.k) + std::sqrt(k2.k / k1.k);
    const double phase = (k1.k_vec - k2.k_vec).dot(r) - (k1.k - k2.k) * c * t;
    return (2.0 + amp * std::cos(phase)) / (2.0 * volume);
}

PhotonState make_two_mode_state(const LatticeSpec& spec, const Eigen::Vector3i& n1,
                                const Eigen::Vector3i& n2, int lambda, const UnitSystem& units) {
    PhotonState state;
    state.units = units;
    state.lattice = spec;
    state.c0 = 0.0;
    const double w = 1.0 / std::sqrt(2.0);
    state.one_photon[ModeIndex{n1, lambda}] += w;
    state.one_photon[ModeIndex{n2, lambda}] += w;
    state.validate();
    return state;
}

Complex two_photon_amplitude(const PhotonState& state, double alpha, const ChiGauge& gauge,
                             const Eigen::Vector3d& r, const Eigen::Vector3d& r_prime, double t,
                             double t_prime, int i, int j) {
    if (i < 0 || i > 2 || j < 0 || j > 2)
        throw ConfigError("two_photon_amplitude: Cartesian indices must be 0..2");
    const double volume = state.lattice.volume();
    const double c = state.units.c;

    struct ModeData {
        Eigen::Vector3cd e;
        Eigen::Vector3d k_vec;
        double k;
        double k_alpha;
    };
    std::map<ModeIndex, ModeData> cache;
    auto data = [&](const ModeIndex& m) -> const ModeData& {
        auto it = cache.find(m);
        if (it == cache.end()) {
            const KMode mode = make_k_mode(state.lattice, m.n);
            it = cache
                     .emplace(m, ModeData{polarization_vector(mode, m.lambda, gauge), mode.k_vec,
                                          mode.k, std::pow(mode.k, alpha)})
                     .first;
        }
        return it->second;
    };

    std::vector<Complex> terms;
    for (const auto& [key, coef] : state.two_photon) {
        const ModeIndex& p = key.first;
        const ModeIndex& q = key.second;
        const bool doubly = (p == q);
        const double sqrt_n = doubly ? std::sqrt(2.0) : 1.0;
        const int orders = doubly ? 1 : 2;
        for (int ord = 0; ord < orders; ++ord) {
            const ModeData& u = data(ord == 0 ? p : q);
            const ModeData& v = data(ord == 0 ? q : p);
            const Complex pref = sqrt_n * coef * u.k_alpha * v.k_alpha / (2.0 * volume);
            const Complex term1 = std::conj(u.e[i]) * std::conj(v.e[j]) *
                                  plane_wave(u.k_vec, u.k, r, c * t) *
                                  plane_wave(v.k_vec, v.k, r_prime, c * t_prime);
            const Complex term2 = std::conj(v.e[i]) * std::conj(u.e[j]) *
                                  plane_wave(u.k_vec, u.k, r_prime, c * t_prime) *
                                  plane_wave(v.k_vec, v.k, r, c * t);
            terms.push_back(pref * (term1 + term2));
        }
    }
    if (terms.empty()) return Complex(0.0);
    return pairwise_sum(std::span<const Complex>(terms));
}

Complex biorthonormal_pairing(std::span<const KMode> modes, double alpha, const ChiGauge& gauge,
                              const Eigen::Vector3d& r1, const Eigen::Vector3d& r2, int lambda1,
                              int lambda2, double t, const UnitSystem& units, double volume) {
    std::vector<Complex> terms;
    terms.reserve(modes.size());
    // conj(psi^(-alpha)_{r2,lambda2,j}) psi^(alpha)_{r1,lambda1,j} summed
    // over j: the k^{-alpha} k^{alpha} weights and the HP phases exp(ikct)
    // cancel between bra and ket, independent of alpha and t.
    (void)alpha;
    (void)t;
    (void)units;
    for (const KMode& mode : modes) {
        const PolarizationFrame frame = make_frame(mode, gauge);
        const Complex overlap = frame.e(lambda2).dot(frame.e(lambda1));
        const Complex phase = std::exp(Complex(0.0, mode.k_vec.dot(r2 - r1)));
        terms.push_back(overlap * phase / volume);
    }
    if (terms.empty()) return Complex(0.0);
    return pairwise_sum(std::span<const Complex>(terms));
}

Residual biorthonormality_check(const LatticeSpec& spec, std::span<const KMode> modes,
                                double alpha, const ChiGauge& gauge) {
    const RGrid grid = conjugate_r_grid(spec);
    const double volume = spec.volume();
    const double n3 = static_cast<double>(spec.N) * spec.N * spec.N;
    const UnitSystem units{};

    Residual res;
    const Eigen::Vector3d r1 = grid.points.front();
    for (const Eigen::Vector3d& r2 : grid.points) {
        const bool same = (r2 - r1).norm() == 0.0;
        for (const auto& [l1, l2] : {std::pair{+1, +1}, {+1, -1}, {-1, -1}}) {
            const Complex measured =
                biorthonormal_pairing(modes, alpha, gauge, r1, r2, l1, l2, 0.0, units, volume);
            // k = 0 is excluded from the lattice, hence the -1 offset.
            const Complex expected =
                (l1 == l2) ? Complex((same ? n3 - 1.0 : -1.0) / volume) : Complex(0.0);
            const double err = std::abs(measured - expected) / (n3 / volume);
            res.sup_norm = std::max(res.sup_norm, err);
            ++res.sample_count;
        }
    }
    return res;
}

Eigen::Matrix3cd completeness_matrix(const LatticeSpec& spec, double alpha, const ChiGauge& gauge,
                                     const KMode& k, const KMode& k_prime, double t,
                                     const UnitSystem& units) {
    const RGrid grid = conjugate_r_grid(spec);
    const double volume = spec.volume();
    const PolarizationFrame fk = make_frame(k, gauge);
    const PolarizationFrame fkp = make_frame(k_prime, gauge);
    const double weight = std::pow(k.k, alpha) * std::pow(k_prime.k, -alpha);
    const double ct = units.c * t;

    Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
    // psi^(alpha)_{r,lambda}(k) conj(psi^(-alpha)_{r,lambda}(k')) summed
    // over lambda and the grid with quadrature weight V/N^3.
    Complex grid_sum = 0.0;
    for (const Eigen::Vector3d& r : grid.points)
        grid_sum += std::exp(Complex(0.0, -(k.k_vec - k_prime.k_vec).dot(r)));
    const Complex hp_phase = std::exp(Complex(0.0, (k.k - k_prime.k) * ct));
    for (int lambda : {+1, -1})
        m += fk.e(lambda) * fkp.e(lambda).adjoint();
    m *= weight * hp_phase * grid_sum * grid.cell_volume / volume;
    return m;
}

Residual completeness_check(const LatticeSpec& spec, double alpha, const ChiGauge& gauge,
                            const KMode& k, const KMode& k_prime) {
    const Eigen::Matrix3cd measured =
        completeness_matrix(spec, alpha, gauge, k, k_prime, 0.0, UnitSystem{});
    Eigen::Matrix3cd expected = Eigen::Matrix3cd::Zero();
    if (k.n == k_prime.n) expected = transverse_projector(k);
    Residual res;
    res.sup_norm = (measured - expected).cwiseAbs().maxCoeff();
    res.sample_count = 1;
    res.worst_mode = k;
    return res;
}

} // namespace photonloc
