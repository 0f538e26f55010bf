#include "entloc/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entloc {

namespace {

// (sigma_y x sigma_y) maps basis ket |i> to sign(i) |3-i> with signs -,+,+,-.
constexpr double kFlipSign[4] = {-1.0, 1.0, 1.0, -1.0};

void require_two_qubit(const ComplexMatrix& rho, const char* what) {
    if (!rho.is_square() || rho.rows() != 4) {
        throw std::invalid_argument(std::string(what) + ": expected a 4x4 matrix");
    }
}

std::pair<int, int> normalize_pair(std::pair<int, int> pair) {
    if (pair.first > pair.second) std::swap(pair.first, pair.second);
    if (pair.first < 1 || pair.second > 3 || pair.first == pair.second) {
        throw std::invalid_argument("concurrence_of_assistance: pair must name two distinct qubits in 1..3");
    }
    return pair;
}

}  // namespace

ComplexMatrix spin_flip(const ComplexMatrix& rho) {
    require_two_qubit(rho, "spin_flip");
    ComplexMatrix out(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            out(i, j) = kFlipSign[i] * kFlipSign[3 - j] * std::conj(rho(3 - i, 3 - j));
    return out;
}

ConcurrenceResult concurrence(const ComplexMatrix& rho) {
    require_two_qubit(rho, "concurrence");
    const double tr = rho.trace().real();
    if (!(tr > 1e-30)) throw std::invalid_argument("concurrence: state has (near) zero trace");

    ComplexMatrix normalized = rho;
    normalized *= Complex{1.0 / tr, 0.0};

    // rho * flip(rho) and sqrt(rho) * flip(rho) * sqrt(rho) share their
    // spectrum, and the latter is Hermitian PSD.
    const ComplexMatrix root = psd_sqrt(normalized);
    const ComplexMatrix flipped = spin_flip(normalized);
    const ComplexMatrix product = matmul(matmul(root, flipped), root);
    const EigenSystem sys = hermitian_eigs(product);

    // The square root amplifies round-off in eigenvalues that are
    // mathematically zero (1e-17 becomes 3e-9), so anything at the noise
    // floor of a trace-normalized state is zeroed first.
    constexpr double kEigenvalueFloor = 1e-14;
    ConcurrenceResult result;
    for (std::size_t k = 0; k < 4; ++k) {
        const double lambda = sys.values[k];
        result.lambdas[k] = lambda < kEigenvalueFloor ? 0.0 : std::sqrt(lambda);
    }
    std::sort(result.lambdas.begin(), result.lambdas.end(), std::greater<>());
    result.value = std::max(
        0.0, result.lambdas[0] - result.lambdas[1] - result.lambdas[2] - result.lambdas[3]);
    return result;
}

ConcurrenceResult concurrence(const DensityMatrix& rho) {
    if (rho.n_qubits() != 2) {
        throw std::invalid_argument("concurrence: expected a two-qubit state");
    }
    return concurrence(rho.matrix());
}

double concurrence_single_excitation(const ComplexMatrix& rho) {
    require_two_qubit(rho, "concurrence_single_excitation");
    const double tr = rho.trace().real();
    if (!(tr > 1e-30)) {
        throw std::invalid_argument("concurrence_single_excitation: state has (near) zero trace");
    }
    return 2.0 * std::abs(rho(2, 1)) / tr;
}

double concurrence_of_assistance(const StateVector& psi, std::pair<int, int> pair) {
    if (psi.n_qubits() != 3) {
        throw std::invalid_argument("concurrence_of_assistance: expected a three-qubit state");
    }
    if (!psi.is_normalized(1e-9)) {
        throw std::invalid_argument("concurrence_of_assistance: state is not normalized");
    }
    const auto [a, b] = normalize_pair(pair);
    const int other = 6 - a - b;
    const DensityMatrix reduced = pure_to_density(psi).reduced({other});
    const ConcurrenceResult c = concurrence(reduced.matrix());
    return c.lambdas[0] + c.lambdas[1] + c.lambdas[2] + c.lambdas[3];
}

double concurrence_of_assistance(const DensityMatrix& rho, std::pair<int, int> pair) {
    if (rho.n_qubits() != 3) {
        throw std::invalid_argument("concurrence_of_assistance: expected a three-qubit state");
    }
    const DensityMatrix unit = rho.normalized();
    double purity = 0.0;
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            purity += (unit.matrix()(i, j) * unit.matrix()(j, i)).real();
    if (purity < 1.0 - 1e-9) {
        throw std::invalid_argument(
            "concurrence_of_assistance: mixed states are not supported, input purity < 1");
    }
    const EigenSystem sys = hermitian_eigs(unit.matrix());
    std::vector<Complex> amps(8);
    for (std::size_t i = 0; i < 8; ++i) amps[i] = sys.vectors(i, 0);
    return concurrence_of_assistance(StateVector::from_amplitudes(std::move(amps)), pair);
}

double assisted_average(const StateVector& psi, double theta, double phi) {
    if (psi.n_qubits() != 3) {
        throw std::invalid_argument("assisted_average: expected a three-qubit state");
    }
    if (!psi.is_normalized(1e-9)) {
        throw std::invalid_argument("assisted_average: state is not normalized");
    }

    const Complex eip = std::polar(1.0, phi);
    const Complex basis[2][2] = {
        {std::cos(theta / 2.0), eip * std::sin(theta / 2.0)},
        {std::sin(theta / 2.0), -eip * std::cos(theta / 2.0)},
    };

    // Projecting qubit 3 of a pure state leaves a pure pair state whose
    // concurrence is 2|det| of its 2x2 amplitude table; the outcome
    // probability cancels against the conditional normalization.
    double average = 0.0;
    for (const auto& b : basis) {
        Complex amp[2][2];
        for (std::size_t q1 = 0; q1 < 2; ++q1)
            for (std::size_t q2 = 0; q2 < 2; ++q2) {
                const std::size_t base = (q1 << 2) | (q2 << 1);
                amp[q1][q2] = std::conj(b[0]) * psi[base] + std::conj(b[1]) * psi[base | 1];
            }
        average += 2.0 * std::abs(amp[0][0] * amp[1][1] - amp[0][1] * amp[1][0]);
    }
    return average;
}

}  // namespace entloc
