#pragma once

#include <array>
#include <utility>

#include "entloc/states.hpp"

namespace entloc {

struct ConcurrenceResult {
    double value = 0.0;                      // max(0, l1 - l2 - l3 - l4)
    std::array<double, 4> lambdas{};         // descending, non-negative
};

/// Spin-flipped two-qubit matrix (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y).
ComplexMatrix spin_flip(const ComplexMatrix& rho);

/// Wootters concurrence of an arbitrary two-qubit density matrix. The input
/// is normalized by its trace; lambdas are the decreasing square roots of
/// the spectrum of rho * spin_flip(rho), obtained through the Hermitian
/// product sqrt(rho) * spin_flip(rho) * sqrt(rho) so only a Hermitian
/// eigensolver is needed.
ConcurrenceResult concurrence(const ComplexMatrix& rho);
ConcurrenceResult concurrence(const DensityMatrix& rho);

/// 2 |<10|rho|01>| / tr(rho). Equals the concurrence exactly when the state
/// carries no |11> population, which holds for every single-excitation
/// state in this library before depolarizing noise is involved.
double concurrence_single_excitation(const ComplexMatrix& rho);

/// Concurrence of assistance of a pure three-qubit state for the given
/// 1-based qubit pair: the sum of the four lambdas of the reduced pair
/// state, i.e. the maximal average pair concurrence the remaining party can
/// steer to by measuring and communicating classically.
double concurrence_of_assistance(const StateVector& psi, std::pair<int, int> pair);

/// Overload guarding the pure-state requirement: mixed inputs are rejected.
double concurrence_of_assistance(const DensityMatrix& rho, std::pair<int, int> pair);

/// Average concurrence between qubits 1 and 2 when qubit 3 is projectively
/// measured in the basis cos(t/2)|0> + e^{i phi} sin(t/2)|1> and its
/// orthogonal complement. Never exceeds the concurrence of assistance.
double assisted_average(const StateVector& psi, double theta, double phi);

}  // namespace entloc
