#ifndef PHOTONLOC_FOCK_STATE_HPP
#define PHOTONLOC_FOCK_STATE_HPP

#include <complex>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "photonloc/lattice.hpp"
#include "photonloc/units.hpp"

namespace photonloc {

using Complex = std::complex<double>;

// One creation-operator slot: a lattice mode plus helicity.
struct ModeIndex {
    Eigen::Vector3i n;
    int lambda = +1;

    friend bool operator==(const ModeIndex& a, const ModeIndex& b) {
        return a.n == b.n && a.lambda == b.lambda;
    }
    friend bool operator<(const ModeIndex& a, const ModeIndex& b) {
        for (int i = 0; i < 3; ++i)
            if (a.n[i] != b.n[i]) return a.n[i] < b.n[i];
        return a.lambda < b.lambda;
    }
};

using PairKey = std::pair<ModeIndex, ModeIndex>; // canonical: first <= second

inline PairKey make_pair_key(const ModeIndex& a, const ModeIndex& b) {
    return b < a ? PairKey{b, a} : PairKey{a, b};
}

// Coefficients of the photon-number expansion truncated at two photons:
// vacuum amplitude c0, one-photon c_{k,lambda}, and the symmetric
// two-photon c_{k,lambda;k',lambda'} stored once per unordered pair.
struct PhotonState {
    UnitSystem units{};
    LatticeSpec lattice{};
    Complex c0 = 0.0;
    std::map<ModeIndex, Complex> one_photon;
    std::map<PairKey, Complex> two_photon;

    Complex c1(const ModeIndex& m) const {
        auto it = one_photon.find(m);
        return it == one_photon.end() ? Complex(0.0) : it->second;
    }
    // Symmetric lookup: c2(p, q) == c2(q, p).
    Complex c2(const ModeIndex& p, const ModeIndex& q) const {
        auto it = two_photon.find(make_pair_key(p, q));
        return it == two_photon.end() ? Complex(0.0) : it->second;
    }
    void set_c2(const ModeIndex& p, const ModeIndex& q, Complex value) {
        two_photon[make_pair_key(p, q)] = value;
    }

    void validate() const; // every referenced mode must exist on the lattice
};

struct NormComponents {
    double c0_sq = 0.0;
    double c1_sq = 0.0;
    double c2_sq = 0.0;

    double total() const { return c0_sq + c1_sq + c2_sq; }
};

// Squared-norm decomposition under the expansion's conventions (the
// 1/2! and sqrt(N) factors make each stored pair contribute |c|^2).
NormComponents norm_components(const PhotonState& state);

// Exact occupation-number-basis state vector for tiny lattices. This is
// the independent oracle for every normalization and projection formula;
// nothing in the production path uses it.
class FockSpace {
  public:
    // Basis vector: amplitude per occupation vector (one count per slot).
    using Vector = std::map<std::vector<int>, Complex>;

    explicit FockSpace(std::vector<ModeIndex> slots);

    static FockSpace for_states(const PhotonState& a, const PhotonState& b);

    const std::vector<ModeIndex>& slots() const { return slots_; }
    int slot_of(const ModeIndex& m) const;

    Vector vacuum() const;
    // v <- v + coef a_slot^dagger u, with the bosonic sqrt(n+1) factor.
    static void add_scaled_creation(Vector& v, const Vector& u, int slot, Complex coef);
    static Complex dot(const Vector& a, const Vector& b);

    // Expands the coefficient model into explicit occupation amplitudes.
    Vector expand(const PhotonState& state) const;

  private:
    std::vector<ModeIndex> slots_;
};

// Exact <a|b> via occupation-basis expansion. Refuses lattices with more
// than three distinct wave vectors; the oracle is deliberately small.
Complex brute_force_inner_product(const PhotonState& a, const PhotonState& b);

// JSON state files; save -> load -> save is byte-identical.
PhotonState load_state(const std::filesystem::path& path);
void save_state(const PhotonState& state, const std::filesystem::path& path);
std::string to_canonical_json(const PhotonState& state);
PhotonState parse_state_json(const std::string& text, const std::string& where = "<string>");

} // namespace photonloc

#endif
