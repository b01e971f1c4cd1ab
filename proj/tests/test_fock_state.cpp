#include <doctest.h>

#include "photonloc/fock_state.hpp"

using namespace photonloc;

namespace {
const ModeIndex kA{{1, 0, 0}, +1};
const ModeIndex kB{{0, 1, 0}, -1};
const ModeIndex kC{{0, 0, 1}, +1};

PhotonState base_state() {
    PhotonState st;
    st.lattice.N = 4;
    return st;
}
} // namespace

TEST_CASE("pair keys are canonical and c2 lookup is symmetric") {
    CHECK(make_pair_key(kB, kA) == make_pair_key(kA, kB));
    PhotonState st = base_state();
    st.set_c2(kB, kA, Complex(0.5, -0.25));
    CHECK(st.c2(kA, kB) == Complex(0.5, -0.25));
    CHECK(st.c2(kB, kA) == Complex(0.5, -0.25));
    CHECK(st.two_photon.size() == 1);
    CHECK(st.c2(kA, kC) == Complex(0.0));
}

TEST_CASE("norm components: each sector contributes its |c|^2") {
    PhotonState st = base_state();
    st.c0 = Complex(0.0, 0.5);
    st.one_photon[kA] = Complex(0.6, 0.0);
    st.one_photon[kB] = Complex(0.0, -0.8);
    st.set_c2(kA, kB, Complex(0.3, 0.4)); // distinct pair
    st.set_c2(kC, kC, Complex(0.0, 1.0)); // doubly occupied
    const NormComponents n = norm_components(st);
    CHECK(n.c0_sq == doctest::Approx(0.25));
    CHECK(n.c1_sq == doctest::Approx(1.0));
    CHECK(n.c2_sq == doctest::Approx(0.25 + 1.0));
    CHECK(n.total() == doctest::Approx(2.5));
    // The occupation-basis oracle agrees.
    const Complex brute = brute_force_inner_product(st, st);
    CHECK(brute.real() == doctest::Approx(n.total()).epsilon(1e-14));
    CHECK(std::abs(brute.imag()) < 1e-15);
}

TEST_CASE("oracle refuses more than three distinct wave vectors") {
    PhotonState st = base_state();
    st.one_photon[kA] = 1.0;
    st.one_photon[kB] = 1.0;
    st.one_photon[kC] = 1.0;
    st.one_photon[ModeIndex{{-1, 0, 0}, +1}] = 1.0;
    CHECK_THROWS_AS(brute_force_inner_product(st, st), ConfigError);
}

TEST_CASE("oracle inner product is sesquilinear and orthogonal across sectors") {
    PhotonState a = base_state(), b = base_state();
    a.one_photon[kA] = Complex(0.0, 1.0);
    b.one_photon[kA] = Complex(1.0, 0.0);
    // <a|b> = conj(i) * 1 = -i.
    CHECK(std::abs(brute_force_inner_product(a, b) - Complex(0.0, -1.0)) < 1e-15);
    PhotonState vac = base_state();
    vac.c0 = 1.0;
    CHECK(std::abs(brute_force_inner_product(vac, a)) < 1e-15);
    PhotonState two = base_state();
    two.set_c2(kA, kA, 1.0);
    CHECK(std::abs(brute_force_inner_product(a, two)) < 1e-15);
}

TEST_CASE("validate rejects off-lattice modes with a located message") {
    PhotonState st = base_state();
    st.one_photon[ModeIndex{{2, 0, 0}, +1}] = 1.0; // 2 outside [-2, 2)
    CHECK_THROWS_WITH_AS(st.validate(),
                         doctest::Contains("one_photon[0]"), InputError);
    PhotonState st2 = base_state();
    st2.set_c2(kA, ModeIndex{{0, 3, 0}, -1}, 1.0);
    CHECK_THROWS_WITH_AS(st2.validate(), doctest::Contains("two_photon[0]"), InputError);
    PhotonState st3 = base_state();
    st3.one_photon[ModeIndex{{1, 0, 0}, 2}] = 1.0;
    CHECK_THROWS_WITH_AS(st3.validate(), doctest::Contains("lambda"), InputError);
}

TEST_CASE("JSON round trip is byte-identical") {
    PhotonState st = base_state();
    st.c0 = Complex(0.1, -0.2);
    st.one_photon[kA] = Complex(1.0 / 3.0, 0.7);
    st.set_c2(kA, kB, Complex(-0.25, 1e-17));
    const std::string once = to_canonical_json(st);
    const PhotonState back = parse_state_json(once);
    CHECK(to_canonical_json(back) == once);
    CHECK(back.c1(kA) == st.c1(kA));
    CHECK(back.c2(kB, kA) == st.c2(kA, kB));
}

TEST_CASE("parser rejects malformed input with entry locations") {
    CHECK_THROWS_WITH_AS(parse_state_json("{", "bad.json"), doctest::Contains("bad.json"),
                         InputError);
    CHECK_THROWS_AS(parse_state_json("[1,2]"), InputError);
    // Missing lattice.
    CHECK_THROWS_WITH_AS(parse_state_json("{}"), doctest::Contains("lattice"), InputError);
    const std::string head = R"({"lattice": {"L": 6.0, "N": 4},)";
    // Unknown key.
    CHECK_THROWS_WITH_AS(parse_state_json(head + R"( "bogus": 1})"),
                         doctest::Contains("bogus"), InputError);
    // Bad complex encoding.
    CHECK_THROWS_WITH_AS(parse_state_json(head + R"( "c0": [1]})"), doctest::Contains("c0"),
                         InputError);
    // Duplicate one-photon entry, located.
    CHECK_THROWS_WITH_AS(
        parse_state_json(head + R"( "one_photon": [
            {"n": [1,0,0], "lambda": 1, "c": [1,0]},
            {"n": [1,0,0], "lambda": 1, "c": [2,0]}]})"),
        doctest::Contains("one_photon[1]"), InputError);
    // Duplicate unordered pair in either order.
    CHECK_THROWS_WITH_AS(
        parse_state_json(head + R"( "two_photon": [
            {"a": {"n": [1,0,0], "lambda": 1}, "b": {"n": [0,1,0], "lambda": -1}, "c": [1,0]},
            {"a": {"n": [0,1,0], "lambda": -1}, "b": {"n": [1,0,0], "lambda": 1}, "c": [2,0]}]})"),
        doctest::Contains("two_photon[1]"), InputError);
}

TEST_CASE("FockSpace bosonic bookkeeping") {
    FockSpace space({kA, kB});
    FockSpace::Vector v = space.vacuum();
    FockSpace::Vector one, two;
    FockSpace::add_scaled_creation(one, v, 0, 1.0);
    FockSpace::add_scaled_creation(two, one, 0, 1.0);
    // a^dag a^dag |0> = sqrt(2) |2>.
    CHECK(std::abs(FockSpace::dot(two, two) - Complex(2.0)) < 1e-15);
    CHECK(std::abs(FockSpace::dot(one, two)) < 1e-15);
}
