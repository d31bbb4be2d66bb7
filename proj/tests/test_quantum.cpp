#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bellforge/quantum.hpp"

using namespace bellforge;

namespace {

const double kSqrt5 = std::sqrt(5.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

TEST_CASE("tilted-Hardy strategy at eps = 0 matches the Hardy point") {
    const auto s = tilted_hardy_strategy(0.0);
    const double theta = std::asin(3.0 - kSqrt5);
    CHECK(theta == doctest::Approx(0.8693847).epsilon(1e-6));
    // State amplitudes cos(t/2)|00> - sin(t/2)|11>.
    const auto& amp = s.state.amplitudes();
    CHECK(amp[0].real() == doctest::Approx(std::cos(theta / 2)));
    CHECK(amp[3].real() == doctest::Approx(-std::sin(theta / 2)));
    CHECK(std::abs(amp[1]) == doctest::Approx(0.0));

    const auto bz = s.aliceObs[1].bloch();
    CHECK(bz[0] == doctest::Approx(std::sqrt(1.0 - bz[2] * bz[2])).epsilon(1e-9));
    CHECK(bz[2] == doctest::Approx(-0.365829).epsilon(1e-5));

    BellScenario sc;
    const auto cond = behavior_of(s);
    CHECK(cond.at(0, 0, 0, 0) ==
          doctest::Approx((5.0 * kSqrt5 - 11.0) / 2.0).epsilon(1e-9));
    // Hardy zero constraints.
    CHECK(cond.at(0, 1, 0, 1) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(cond.at(1, 0, 1, 0) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(cond.at(0, 0, 1, 1) == doctest::Approx(0.0).epsilon(1e-9));
    // Full block spot checks against the closed forms.
    CHECK(cond.at(0, 1, 0, 0) == doctest::Approx((7.0 - 3.0 * kSqrt5) / 2.0).epsilon(1e-9));
    CHECK(cond.at(1, 1, 0, 0) == doctest::Approx((kSqrt5 - 1.0) / 2.0).epsilon(1e-9));
    CHECK(cond.at(0, 0, 0, 1) == doctest::Approx(kSqrt5 - 2.0).epsilon(1e-9));
    CHECK(cond.at(1, 1, 1, 1) == doctest::Approx(kSqrt5 - 2.0).epsilon(1e-9));
    CHECK(cond.at(0, 1, 1, 1) == doctest::Approx((3.0 - kSqrt5) / 2.0).epsilon(1e-9));
}

TEST_CASE("tilted-Hardy closed-form value") {
    CHECK(tilted_hardy_value(0.0) ==
          doctest::Approx((5.0 * kSqrt5 - 11.0) / 2.0).epsilon(1e-12));
    CHECK(tilted_hardy_value(0.5) == doctest::Approx(0.506753059).epsilon(1e-8));
    for (double eps : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        BellScenario sc;
        const auto cond = behavior_of(tilted_hardy_strategy(eps));
        const double v = cond.at(0, 0, 0, 0) + eps * cond.at(1, 1, 0, 0);
        CHECK(v == doctest::Approx(tilted_hardy_value(eps)).epsilon(1e-9));
    }
}

TEST_CASE("tilted-Hardy angle closes as eps approaches 1") {
    // theta = arcsin(3 - sqrt(4 eps + 5)) -> 0: the state tends to |00>.
    const auto s = tilted_hardy_strategy(1.0 - 1e-9);
    const auto& amp = s.state.amplitudes();
    CHECK(amp[0].real() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(amp[3]) == doctest::Approx(0.0).epsilon(1e-8));
    CHECK_THROWS_AS(tilted_hardy_strategy(1.0), std::invalid_argument);
    CHECK_THROWS_AS(tilted_hardy_strategy(-0.1), std::invalid_argument);
}

TEST_CASE("maximally entangled state with sigma_z measurements") {
    TwoQubitState phi({kInvSqrt2, 0.0, 0.0, kInvSqrt2});
    QubitObservable z(pauli_z());
    TwoQubitStrategy s{phi, {z, z}, {{z}, {z}}, 0.0};
    const auto cond = behavior_of(s);
    CHECK(cond.at(0, 0, 0, 0) == doctest::Approx(0.5));
    CHECK(cond.at(0, 1, 0, 0) == doctest::Approx(0.0));
    CHECK(cond.at(1, 1, 0, 0) == doctest::Approx(0.5));
}

TEST_CASE("chsh_leak strategy values") {
    CHECK(chsh_leak_value(behavior_of(chsh_leak_strategy(0.0))) ==
          doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-10));
    CHECK(chsh_leak_value(behavior_of(chsh_leak_strategy(0.5))) ==
          doctest::Approx(2.0 * std::sqrt(2.0) * (0.5 + std::sqrt(3.0) / 2.0))
              .epsilon(1e-9));
    CHECK(chsh_leak_value(behavior_of(chsh_leak_strategy(0.5))) ==
          doctest::Approx(3.863703).epsilon(1e-6));
    CHECK(chsh_leak_value(behavior_of(chsh_leak_strategy(0.8))) ==
          doctest::Approx(4.0).epsilon(1e-10));
    CHECK(chsh_leak_value(behavior_of(chsh_leak_strategy(kInvSqrt2))) ==
          doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("chsh_leak strategy respects the leakage norm bound") {
    for (double kappa : {0.0, 0.1, 0.25, 0.5, kInvSqrt2, 0.85, 0.99}) {
        const auto s = chsh_leak_strategy(kappa);
        REQUIRE(s.bobObs.size() == 2);
        for (const auto& per_y : s.bobObs) {
            REQUIRE(per_y.size() == 2);
            const double d = operator_norm_diff(per_y[0], per_y[1]);
            CHECK(d <= 2.0 * kappa + 1e-12);
            if (kappa <= kInvSqrt2 + 1e-12)
                CHECK(d == doctest::Approx(2.0 * kappa).epsilon(1e-9));
        }
    }
}

TEST_CASE("operator_norm_diff closed forms") {
    QubitObservable z(pauli_z()), x(pauli_x());
    CHECK(operator_norm_diff(z, z) == doctest::Approx(0.0));
    // ||sigma_z - sigma_x|| = sqrt(2) (eigenvalues +-sqrt(2)).
    CHECK(operator_norm_diff(z, x) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("validation of states and observables") {
    CHECK_THROWS_AS(TwoQubitState({1.0, 1.0, 0.0, 0.0}), std::invalid_argument);

    Mat2 nonherm;
    nonherm.at(0, 1) = Complex(1.0, 0.0);
    nonherm.at(1, 0) = Complex(0.0, 0.0);
    CHECK_THROWS_AS(QubitObservable{nonherm}, std::invalid_argument);

    // Hermitian but sub-unit Bloch vector: accepted by the constructor, but
    // rejected by behavior_of, which needs projective +-1 measurements.
    Mat2 shrunk;
    shrunk.at(0, 0) = Complex(0.5, 0.0);
    shrunk.at(1, 1) = Complex(-0.5, 0.0);
    QubitObservable half(shrunk);
    CHECK(!half.unit_bloch());
    TwoQubitState phi({kInvSqrt2, 0.0, 0.0, kInvSqrt2});
    TwoQubitStrategy bad{phi, {half, half}, {{half}, {half}}, 0.0};
    CHECK_THROWS_AS(behavior_of(bad), std::invalid_argument);
}

TEST_CASE("Bloch vector extraction") {
    QubitObservable x(pauli_x()), y(pauli_y()), z(pauli_z());
    CHECK(x.bloch()[0] == doctest::Approx(1.0));
    CHECK(y.bloch()[1] == doctest::Approx(1.0));
    CHECK(z.bloch()[2] == doctest::Approx(1.0));
    CHECK(x.unit_bloch());
}
