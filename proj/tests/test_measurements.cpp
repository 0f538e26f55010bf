#include <doctest.h>

#include <cmath>

#include "entloc/entanglement.hpp"
#include "entloc/measurements.hpp"
#include "support/test_support.hpp"

using namespace entloc;
using namespace entloc::testing;

namespace {

DensityMatrix default_state() { return pure_to_density(w_like({0.5, 0.5, std::sqrt(0.5)})); }

}  // namespace

TEST_CASE("operator matrices") {
    CHECK(max_abs_diff(weak_meas(0.0).op(), ComplexMatrix::identity(2)) == 0.0);
    CHECK(max_abs_diff(reversal_meas(0.0).op(), ComplexMatrix::identity(2)) == 0.0);

    // Full-strength weak measurement is the |0> projector.
    CHECK(max_abs_diff(weak_meas(1.0).op(), projector(0).op()) == 0.0);

    const ComplexMatrix strong = reversal_meas(0.99).op();
    CHECK(std::abs(strong(0, 0) - Complex{0.1, 0.0}) <= 1e-15);
    CHECK(strong(1, 1) == Complex{1.0, 0.0});

    // Bit-flip conjugation turns a weak measurement into its reversal.
    const ComplexMatrix x(2, 2, {0.0, 1.0, 1.0, 0.0});
    for (double q : {0.2, 0.7, 0.99}) {
        CHECK(max_abs_diff(matmul(matmul(x, weak_meas(q).op()), x), reversal_meas(q).op()) <=
              1e-15);
    }

    // Applying the null element twice composes like a single stronger one.
    for (double p : {0.3, 0.8}) {
        const double combined = 1.0 - (1.0 - p) * (1.0 - p);
        CHECK(max_abs_diff(matmul(weak_meas(p).op(), weak_meas(p).op()),
                           weak_meas(combined).op()) <= 1e-15);
    }

    CHECK_THROWS_AS(weak_meas(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(reversal_meas(1.5), std::invalid_argument);
    CHECK_THROWS_AS(projector(2), std::invalid_argument);
}

TEST_CASE("the discarded click branch completes the weak measurement") {
    for (double p : {0.0, 0.4, 1.0}) {
        const ComplexMatrix null_branch = weak_meas(p).op();
        const ComplexMatrix click_branch(2, 2, {0.0, 0.0, 0.0, std::sqrt(p)});
        const ComplexMatrix total = matmul(null_branch.adjoint(), null_branch) +
                                    matmul(click_branch.adjoint(), click_branch);
        CHECK(max_abs_diff(total, ComplexMatrix::identity(2)) <= 1e-15);
    }
}

TEST_CASE("projective measurement of the assisting qubit") {
    const DensityMatrix rho = default_state();

    const auto [kept, p0] = apply_postselected(projector(0), rho, 3);
    CHECK(std::abs(p0 - 0.5) <= 1e-12);
    const ConcurrenceResult c0 = concurrence(kept.reduced({3}).normalized().matrix());
    CHECK(std::abs(c0.value - 1.0) <= 1e-12);

    const auto [dropped, p1] = apply_postselected(projector(1), rho, 3);
    CHECK(std::abs(p1 - 0.5) <= 1e-12);
    const ConcurrenceResult c1 = concurrence(dropped.reduced({3}).normalized().matrix());
    CHECK(c1.value <= 1e-12);

    CHECK(std::abs(p0 + p1 - 1.0) <= 1e-12);
}

TEST_CASE("projector outcome probabilities sum to one on random states") {
    auto rng = make_rng(41);
    for (int rep = 0; rep < 8; ++rep) {
        const DensityMatrix rho(3, random_density(8, rng));
        for (int qubit = 1; qubit <= 3; ++qubit) {
            const double p0 = apply_postselected(projector(0), rho, qubit).success_prob;
            const double p1 = apply_postselected(projector(1), rho, qubit).success_prob;
            CHECK(std::abs(p0 + p1 - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("joint weak-measurement probability on the default state") {
    for (auto [p1, p2] : {std::pair{0.5, 0.5}, std::pair{0.2, 0.8}, std::pair{0.0, 1.0}}) {
        const DensityMatrix rho = default_state();
        const auto step1 = apply_postselected(weak_meas(p1), rho, 1);
        const auto step2 = apply_postselected(weak_meas(p2), step1.state, 2);
        const double joint = step1.success_prob * step2.success_prob;
        CHECK(std::abs(joint - (1.0 - p1 / 4.0 - p2 / 4.0)) <= 1e-12);
        CHECK(std::abs(step2.state.weight() - joint) <= 1e-12);
    }
}

TEST_CASE("identity element leaves state and probability untouched") {
    const DensityMatrix rho = default_state();
    const auto [state, prob] = apply_postselected(weak_meas(0.0), rho, 2);
    CHECK(prob == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(max_abs_diff(state.matrix(), rho.matrix()) <= 1e-15);
}

TEST_CASE("orthogonal outcome has vanishing probability") {
    ComplexMatrix ground(8, 8);
    ground(0, 0) = 1.0;
    const auto [state, prob] = apply_postselected(projector(1), DensityMatrix(3, ground), 1);
    CHECK(prob < kPostselectionImpossible);
    CHECK(state.weight() < kPostselectionImpossible);
}

TEST_CASE("probability chain rule matches the direct two-operator trace") {
    auto rng = make_rng(42);
    for (int rep = 0; rep < 6; ++rep) {
        const DensityMatrix rho(3, random_density(8, rng));
        const PostselectedOp op1 = weak_meas(0.35);
        const PostselectedOp op2 = reversal_meas(0.6);

        const auto step1 = apply_postselected(op1, rho, 1);
        const auto step2 = apply_postselected(op2, step1.state, 2);
        const double chained = step1.success_prob * step2.success_prob;

        const ComplexMatrix m1 = lift_single_qubit(op1.op(), 1, 3);
        const ComplexMatrix m2 = lift_single_qubit(op2.op(), 2, 3);
        const ComplexMatrix both = matmul(m2, m1);
        const ComplexMatrix conditioned = matmul(matmul(both, rho.matrix()), both.adjoint());
        const double direct = conditioned.trace().real() / rho.matrix().trace().real();

        CHECK(std::abs(chained - direct) <= 1e-12);
    }
}

TEST_CASE("elements on distinct qubits commute") {
    auto rng = make_rng(43);
    const DensityMatrix rho(3, random_density(8, rng));
    const PostselectedOp a = weak_meas(0.45);
    const PostselectedOp b = reversal_meas(0.8);

    const auto ab1 = apply_postselected(a, rho, 1);
    const auto ab = apply_postselected(b, ab1.state, 3);
    const auto ba1 = apply_postselected(b, rho, 3);
    const auto ba = apply_postselected(a, ba1.state, 1);

    CHECK(max_abs_diff(ab.state.matrix(), ba.state.matrix()) <= 1e-12);
    CHECK(std::abs(ab.state.weight() - ba.state.weight()) <= 1e-12);
}

TEST_CASE("postselection preserves Hermiticity and positivity") {
    auto rng = make_rng(44);
    for (int rep = 0; rep < 5; ++rep) {
        const DensityMatrix rho(2, random_density(4, rng));
        const auto [state, prob] = apply_postselected(weak_meas(0.6), rho, 1);
        const ValidationReport report = validate(state);
        CHECK(report.hermiticity_residual <= 1e-12);
        CHECK(report.min_eigenvalue >= -1e-10);
        CHECK(std::abs(state.trace() - state.weight()) <= 1e-12);
        CHECK(prob <= 1.0 + 1e-12);
    }
}

TEST_CASE("apply_postselected equals the lifted congruence") {
    auto rng = make_rng(45);
    const DensityMatrix rho(3, random_density(8, rng));
    for (const PostselectedOp& op : {weak_meas(0.3), reversal_meas(0.7), projector(0)}) {
        for (int qubit = 1; qubit <= 3; ++qubit) {
            const auto [state, prob] = apply_postselected(op, rho, qubit);
            CHECK(max_abs_diff(state.matrix(), lifted_congruence(rho.matrix(), op.op(), qubit, 3)) <=
                  1e-12);
        }
    }
}

TEST_CASE("guards") {
    const DensityMatrix rho = default_state();
    CHECK_THROWS_AS(apply_postselected(weak_meas(0.5), rho, 0), std::invalid_argument);
    CHECK_THROWS_AS(apply_postselected(weak_meas(0.5), rho, 4), std::invalid_argument);

    const DensityMatrix empty(2, ComplexMatrix(4, 4), 0.0);
    CHECK_THROWS_AS(apply_postselected(weak_meas(0.5), empty, 1), std::invalid_argument);

    // Off-diagonal or out-of-range elements are not valid postselection ops.
    CHECK_THROWS_AS(PostselectedOp(MeasurementLabel::Weak, 0.5,
                                   ComplexMatrix(2, 2, {1.0, 0.5, 0.0, 1.0})),
                    std::invalid_argument);
    CHECK_THROWS_AS(PostselectedOp(MeasurementLabel::Weak, 0.5,
                                   ComplexMatrix(2, 2, {2.0, 0.0, 0.0, 1.0})),
                    std::invalid_argument);
}
