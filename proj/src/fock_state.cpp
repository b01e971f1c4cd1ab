#include "photonloc/fock_state.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace photonloc {

namespace {

using json = nlohmann::ordered_json;

std::string mode_str(const ModeIndex& m) {
    std::ostringstream os;
    os << "n=(" << m.n.x() << "," << m.n.y() << "," << m.n.z() << "),lambda=" << m.lambda;
    return os.str();
}

void check_mode(const LatticeSpec& lattice, const ModeIndex& m, const std::string& where) {
    if (m.lambda != 1 && m.lambda != -1)
        throw InputError(where + ": lambda must be +1 or -1, got " + std::to_string(m.lambda));
    if (!lattice.contains(m.n))
        throw InputError(where + ": mode " + mode_str(m) + " is not on the lattice (N=" +
                         std::to_string(lattice.N) + ")");
}

} // namespace

void PhotonState::validate() const {
    units.validate();
    lattice.validate();
    int idx = 0;
    for (const auto& [m, c] : one_photon)
        check_mode(lattice, m, "one_photon[" + std::to_string(idx++) + "]");
    idx = 0;
    for (const auto& [key, c] : two_photon) {
        const std::string where = "two_photon[" + std::to_string(idx++) + "]";
        check_mode(lattice, key.first, where);
        check_mode(lattice, key.second, where);
        if (key.second < key.first)
            throw InputError(where + ": pair key not in canonical order");
    }
}

NormComponents norm_components(const PhotonState& state) {
    NormComponents n;
    n.c0_sq = std::norm(state.c0);
    for (const auto& [m, c] : state.one_photon) n.c1_sq += std::norm(c);
    // Per stored unordered pair the 1/2! and sqrt(N) conventions combine
    // to a unit-norm basis ket, so each pair contributes |c|^2. The
    // occupation-basis oracle pins this.
    for (const auto& [key, c] : state.two_photon) n.c2_sq += std::norm(c);
    return n;
}

FockSpace::FockSpace(std::vector<ModeIndex> slots) : slots_(std::move(slots)) {}

FockSpace FockSpace::for_states(const PhotonState& a, const PhotonState& b) {
    std::set<ModeIndex> slot_set;
    std::set<std::array<int, 3>> distinct_k;
    auto collect = [&](const PhotonState& s) {
        for (const auto& [m, c] : s.one_photon) slot_set.insert(m);
        for (const auto& [key, c] : s.two_photon) {
            slot_set.insert(key.first);
            slot_set.insert(key.second);
        }
    };
    collect(a);
    collect(b);
    for (const ModeIndex& m : slot_set)
        distinct_k.insert({m.n.x(), m.n.y(), m.n.z()});
    if (distinct_k.size() > 3)
        throw ConfigError("brute-force oracle refuses lattices with more than 3 distinct modes (got " +
                          std::to_string(distinct_k.size()) + ")");
    return FockSpace(std::vector<ModeIndex>(slot_set.begin(), slot_set.end()));
}

int FockSpace::slot_of(const ModeIndex& m) const {
    for (std::size_t i = 0; i < slots_.size(); ++i)
        if (slots_[i] == m) return static_cast<int>(i);
    throw ConfigError("FockSpace: mode " + mode_str(m) + " has no slot");
}

FockSpace::Vector FockSpace::vacuum() const {
    Vector v;
    v[std::vector<int>(slots_.size(), 0)] = Complex(1.0);
    return v;
}

void FockSpace::add_scaled_creation(Vector& v, const Vector& u, int slot, Complex coef) {
    if (coef == Complex(0.0)) return;
    for (const auto& [occ, amp] : u) {
        std::vector<int> raised = occ;
        raised[slot] += 1;
        v[raised] += coef * std::sqrt(static_cast<double>(raised[slot])) * amp;
    }
}

Complex FockSpace::dot(const Vector& a, const Vector& b) {
    Complex acc = 0.0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first) ++ia;
        else if (ib->first < ia->first) ++ib;
        else {
            acc += std::conj(ia->second) * ib->second;
            ++ia;
            ++ib;
        }
    }
    return acc;
}

FockSpace::Vector FockSpace::expand(const PhotonState& state) const {
    Vector out = vacuum();
    for (auto& [occ, amp] : out) amp *= state.c0;

    const Vector vac = vacuum();
    for (const auto& [m, c] : state.one_photon) add_scaled_creation(out, vac, slot_of(m), c);

    for (const auto& [key, c] : state.two_photon) {
        const ModeIndex& p = key.first;
        const ModeIndex& q = key.second;
        const bool doubly = (p == q);
        const double sqrt_n = doubly ? std::sqrt(2.0) : 1.0;
        // 1/2! times the sum over both subscript orders.
        const Complex coef = 0.5 * sqrt_n * c * (doubly ? 1.0 : 2.0);
        Vector first;
        add_scaled_creation(first, vac, slot_of(q), Complex(1.0));
        add_scaled_creation(out, first, slot_of(p), coef);
    }
    return out;
}

Complex brute_force_inner_product(const PhotonState& a, const PhotonState& b) {
    if (a.lattice.L != b.lattice.L || a.lattice.N != b.lattice.N)
        throw ConfigError("brute_force_inner_product: states live on different lattices");
    const FockSpace space = FockSpace::for_states(a, b);
    return FockSpace::dot(space.expand(a), space.expand(b));
}

// ---------------------------------------------------------------------
// State file I/O

namespace {

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InputError(where + ": complex values must be [re, im] number pairs");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw InputError(where + ": unknown field \"" + key + "\"");
    }
}

Eigen::Vector3i n_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3)
        throw InputError(where + ": \"n\" must be an integer triple");
    Eigen::Vector3i n;
    for (int i = 0; i < 3; ++i) {
        if (!j[i].is_number_integer())
            throw InputError(where + ": \"n\" must be an integer triple");
        n[i] = j[i].get<int>();
    }
    return n;
}

ModeIndex mode_from_json(const json& j, const std::string& where, bool strict_keys = true) {
    if (!j.is_object()) throw InputError(where + ": expected a mode object");
    if (strict_keys) reject_unknown_keys(j, {"n", "lambda"}, where);
    if (!j.contains("n") || !j.contains("lambda"))
        throw InputError(where + ": mode needs \"n\" and \"lambda\"");
    ModeIndex m;
    m.n = n_from_json(j.at("n"), where);
    m.lambda = j.at("lambda").get<int>();
    return m;
}

json mode_to_json(const ModeIndex& m) {
    json j;
    j["n"] = json::array({m.n.x(), m.n.y(), m.n.z()});
    j["lambda"] = m.lambda;
    return j;
}

} // namespace

std::string to_canonical_json(const PhotonState& state) {
    json j;
    j["units"] = {{"hbar", state.units.hbar}, {"c", state.units.c}, {"eps0", state.units.eps0}};
    j["lattice"] = {{"L", state.lattice.L},
                    {"N", state.lattice.N},
                    {"exclude_z_axis", state.lattice.exclude_z_axis}};
    j["c0"] = complex_to_json(state.c0);
    json one = json::array();
    for (const auto& [m, c] : state.one_photon) {
        json e = mode_to_json(m);
        e["c"] = complex_to_json(c);
        one.push_back(std::move(e));
    }
    j["one_photon"] = std::move(one);
    json two = json::array();
    for (const auto& [key, c] : state.two_photon) {
        json e;
        e["a"] = mode_to_json(key.first);
        e["b"] = mode_to_json(key.second);
        e["c"] = complex_to_json(c);
        two.push_back(std::move(e));
    }
    j["two_photon"] = std::move(two);
    return j.dump(2) + "\n";
}

PhotonState parse_state_json(const std::string& text, const std::string& where) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(where + ": " + e.what());
    }
    if (!j.is_object()) throw InputError(where + ": top level must be an object");
    reject_unknown_keys(j, {"units", "lattice", "c0", "one_photon", "two_photon"}, where);

    PhotonState state;
    if (j.contains("units")) {
        const json& u = j.at("units");
        reject_unknown_keys(u, {"hbar", "c", "eps0"}, where + ".units");
        state.units.hbar = u.value("hbar", 1.0);
        state.units.c = u.value("c", 1.0);
        state.units.eps0 = u.value("eps0", 1.0);
    }
    if (!j.contains("lattice")) throw InputError(where + ": missing \"lattice\"");
    {
        const json& l = j.at("lattice");
        reject_unknown_keys(l, {"L", "N", "exclude_z_axis"}, where + ".lattice");
        if (!l.contains("L") || !l.contains("N"))
            throw InputError(where + ".lattice: needs \"L\" and \"N\"");
        state.lattice.L = l.at("L").get<double>();
        state.lattice.N = l.at("N").get<int>();
        state.lattice.exclude_z_axis = l.value("exclude_z_axis", false);
    }
    if (j.contains("c0")) state.c0 = complex_from_json(j.at("c0"), where + ".c0");

    if (j.contains("one_photon")) {
        const json& arr = j.at("one_photon");
        if (!arr.is_array()) throw InputError(where + ".one_photon: must be an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string loc = where + ".one_photon[" + std::to_string(i) + "]";
            const json& e = arr[i];
            if (!e.is_object()) throw InputError(loc + ": expected an object");
            reject_unknown_keys(e, {"n", "lambda", "c"}, loc);
            ModeIndex m = mode_from_json(e, loc, /*strict_keys=*/false);
            if (!e.contains("c")) throw InputError(loc + ": missing coefficient \"c\"");
            if (state.one_photon.count(m))
                throw InputError(loc + ": duplicate entry for " + mode_str(m));
            state.one_photon[m] = complex_from_json(e.at("c"), loc + ".c");
        }
    }
    if (j.contains("two_photon")) {
        const json& arr = j.at("two_photon");
        if (!arr.is_array()) throw InputError(where + ".two_photon: must be an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string loc = where + ".two_photon[" + std::to_string(i) + "]";
            const json& e = arr[i];
            if (!e.is_object()) throw InputError(loc + ": expected an object");
            reject_unknown_keys(e, {"a", "b", "c"}, loc);
            if (!e.contains("a") || !e.contains("b") || !e.contains("c"))
                throw InputError(loc + ": needs \"a\", \"b\", \"c\"");
            const ModeIndex p = mode_from_json(e.at("a"), loc + ".a");
            const ModeIndex q = mode_from_json(e.at("b"), loc + ".b");
            const PairKey key = make_pair_key(p, q);
            if (state.two_photon.count(key))
                throw InputError(loc + ": duplicate pair {" + mode_str(p) + "; " + mode_str(q) +
                                 "} (pairs are unordered)");
            state.two_photon[key] = complex_from_json(e.at("c"), loc + ".c");
        }
    }
    state.validate();
    return state;
}

PhotonState load_state(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open state file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_state_json(buf.str(), path.string());
}

void save_state(const PhotonState& state, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write state file: " + path.string());
    out << to_canonical_json(state);
}

} // namespace photonloc
