#include <doctest.h>

#include <cmath>

#include "entloc/channels.hpp"
#include "entloc/entanglement.hpp"
#include "support/test_support.hpp"

using namespace entloc;
using namespace entloc::testing;

namespace {

DensityMatrix default_pair_after_damping(double d1, double d2) {
    DensityMatrix rho = pure_to_density(w_like({0.5, 0.5, std::sqrt(0.5)}));
    rho = apply_on_qubit(amplitude_damping(d1), rho, 1);
    rho = apply_on_qubit(amplitude_damping(d2), rho, 2);
    return rho.reduced({3});
}

}  // namespace

TEST_CASE("channel constructors validate strength and completeness") {
    for (auto make : {amplitude_damping, depolarizing, phase_damping}) {
        CHECK_THROWS_AS(make(-0.1), std::invalid_argument);
        CHECK_THROWS_AS(make(1.1), std::invalid_argument);
        for (double d : {0.0, 0.3, 0.7, 1.0}) {
            const KrausChannel ch = make(d);
            ComplexMatrix sum(2, 2);
            for (const ComplexMatrix& k : ch.operators()) sum += matmul(k.adjoint(), k);
            CHECK(max_abs_diff(sum, ComplexMatrix::identity(2)) <= 1e-12);
        }
    }
    // An incomplete operator set is rejected outright.
    CHECK_THROWS_AS(KrausChannel(NoiseKind::AmplitudeDamping, 0.5,
                                 {ComplexMatrix(2, 2, {1.0, 0.0, 0.0, 0.5})}),
                    std::invalid_argument);
}

TEST_CASE("zero-strength channels act as the identity") {
    auto rng = make_rng(31);
    const DensityMatrix rho(3, random_density(8, rng));
    for (auto make : {amplitude_damping, depolarizing, phase_damping}) {
        const DensityMatrix out = apply_on_qubit(make(0.0), rho, 2);
        CHECK(max_abs_diff(out.matrix(), rho.matrix()) <= 1e-15);
    }
}

TEST_CASE("full-strength limits") {
    auto rng = make_rng(32);
    const DensityMatrix rho(1, random_density(2, rng));

    const DensityMatrix decayed = apply_on_qubit(amplitude_damping(1.0), rho, 1);
    CHECK(std::abs(decayed.matrix()(0, 0) - Complex{1.0, 0.0}) <= 1e-12);
    CHECK(std::abs(decayed.matrix()(1, 1)) <= 1e-12);

    const DensityMatrix mixed = apply_on_qubit(depolarizing(1.0), rho, 1);
    CHECK(std::abs(mixed.matrix()(0, 0) - Complex{0.5, 0.0}) <= 1e-12);
    CHECK(std::abs(mixed.matrix()(0, 1)) <= 1e-12);

    const DensityMatrix dephased = apply_on_qubit(phase_damping(1.0), rho, 1);
    CHECK(std::abs(dephased.matrix()(0, 1)) <= 1e-12);
    CHECK(std::abs(dephased.matrix()(0, 0) - rho.matrix()(0, 0)) <= 1e-12);
}

TEST_CASE("phase damping keeps populations for any strength") {
    auto rng = make_rng(33);
    for (double d : {0.2, 0.5, 0.9}) {
        const DensityMatrix rho(2, random_density(4, rng));
        const DensityMatrix out = apply_on_qubit(phase_damping(d), rho, 1);
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(std::abs(out.matrix()(i, i) - rho.matrix()(i, i)) <= 1e-12);
    }
}

TEST_CASE("damping both pair qubits scales the concurrence as expected") {
    // Half the geometric mean of the survival amplitudes.
    for (auto [d1, d2] : {std::pair{0.6, 0.6}, std::pair{0.3, 0.8}, std::pair{0.0, 0.0}}) {
        const DensityMatrix pair = default_pair_after_damping(d1, d2);
        const double expected = 0.5 * std::sqrt((1.0 - d1) * (1.0 - d2));
        CHECK(std::abs(concurrence(pair.matrix()).value - expected) <= 1e-12);
    }
    CHECK(std::abs(concurrence(default_pair_after_damping(0.6, 0.6).matrix()).value - 0.2) <=
          1e-12);
}

TEST_CASE("amplitude damping of an excited basis state") {
    // AD on qubit 1 of |100><100| mixes the excitation downward.
    ComplexMatrix rho(8, 8);
    rho(0b100, 0b100) = 1.0;
    const double d = 0.35;
    const DensityMatrix out = apply_on_qubit(amplitude_damping(d), DensityMatrix(3, rho), 1);
    CHECK(std::abs(out.matrix()(0b100, 0b100) - Complex{1.0 - d, 0.0}) <= 1e-15);
    CHECK(std::abs(out.matrix()(0b000, 0b000) - Complex{d, 0.0}) <= 1e-15);
    CHECK(std::abs(out.trace() - 1.0) <= 1e-15);
}

TEST_CASE("channels preserve trace, Hermiticity and positivity") {
    auto rng = make_rng(34);
    for (int rep = 0; rep < 6; ++rep) {
        const DensityMatrix rho(3, random_density(8, rng));
        for (auto make : {amplitude_damping, depolarizing, phase_damping}) {
            const DensityMatrix out = apply_on_qubit(make(0.4), rho, 1 + rep % 3);
            CHECK(std::abs(out.trace() - rho.trace()) <= 1e-12);
            CHECK(out.weight() == rho.weight());
            const ValidationReport report = validate(out);
            CHECK(report.hermiticity_residual <= 1e-12);
            CHECK(report.min_eigenvalue >= -1e-10);
        }
    }
}

TEST_CASE("amplitude damping composes multiplicatively in survival") {
    auto rng = make_rng(35);
    for (auto [d1, d2] : {std::pair{0.3, 0.5}, std::pair{0.7, 0.2}}) {
        const DensityMatrix rho(2, random_density(4, rng));
        DensityMatrix seq = apply_on_qubit(amplitude_damping(d1), rho, 1);
        seq = apply_on_qubit(amplitude_damping(d2), seq, 1);
        const double combined = 1.0 - (1.0 - d1) * (1.0 - d2);
        const DensityMatrix once = apply_on_qubit(amplitude_damping(combined), rho, 1);
        CHECK(max_abs_diff(seq.matrix(), once.matrix()) <= 1e-10);
    }
}

TEST_CASE("channels on distinct qubits commute") {
    auto rng = make_rng(36);
    const DensityMatrix rho(3, random_density(8, rng));
    const KrausChannel a = amplitude_damping(0.4);
    const KrausChannel b = depolarizing(0.6);
    const DensityMatrix ab = apply_on_qubit(b, apply_on_qubit(a, rho, 1), 2);
    const DensityMatrix ba = apply_on_qubit(a, apply_on_qubit(b, rho, 2), 1);
    CHECK(max_abs_diff(ab.matrix(), ba.matrix()) <= 1e-12);
}

TEST_CASE("apply_on_qubit rejects bad indices; parsing round-trips") {
    const DensityMatrix rho = gw_mixed();
    CHECK_THROWS_AS(apply_on_qubit(amplitude_damping(0.5), rho, 0), std::invalid_argument);
    CHECK_THROWS_AS(apply_on_qubit(amplitude_damping(0.5), rho, 4), std::invalid_argument);

    for (NoiseKind kind : {NoiseKind::None, NoiseKind::AmplitudeDamping, NoiseKind::Depolarizing,
                           NoiseKind::PhaseDamping}) {
        CHECK(parse_noise_kind(to_string(kind)) == kind);
    }
    CHECK(!parse_noise_kind("garbage"));
    CHECK_THROWS_AS(make_channel(NoiseKind::None, 0.0), std::invalid_argument);
}
