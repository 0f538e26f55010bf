#pragma once

#include <vector>

#include "entloc/matrix.hpp"

namespace entloc {

/// Pure state over n qubits. Qubit 1 is the most significant bit of the
/// computational-basis index, so |q1 q2 q3> sits at index (q1<<2 | q2<<1 | q3).
class StateVector {
public:
    explicit StateVector(int n_qubits);
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amplitudes_.size(); }

    Complex& operator[](std::size_t i) { return amplitudes_[i]; }
    const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }
    const std::vector<Complex>& amplitudes() const { return amplitudes_; }

    double norm() const;
    bool is_normalized(double tol = 1e-12) const;

private:
    StateVector() = default;
    int n_qubits_ = 0;
    std::vector<Complex> amplitudes_;
};

struct EigenSystem {
    std::vector<double> values;  // sorted descending
    ComplexMatrix vectors;       // column k is the eigenvector for values[k]
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Iterates until the off-diagonal Frobenius norm drops below
/// 1e-13 (or 100 sweeps). Inputs that deviate from Hermiticity by more than
/// `hermiticity_tol` are rejected.
EigenSystem hermitian_eigs(const ComplexMatrix& h, double hermiticity_tol = 1e-10);

/// Hermitian PSD square root via the eigendecomposition. Eigenvalues in
/// [-1e-10, 0) are treated as round-off and clipped to zero; anything more
/// negative is rejected.
ComplexMatrix psd_sqrt(const ComplexMatrix& h);

/// Reduced matrix after tracing out the 1-based `traced` qubits of a
/// 2^n x 2^n operator. Remaining qubits keep their relative order.
ComplexMatrix partial_trace(const ComplexMatrix& rho, int n_qubits,
                            const std::vector<int>& traced);

/// Embeds a single-qubit operator at the given 1-based qubit of an n-qubit
/// register (identity elsewhere).
ComplexMatrix lift_single_qubit(const ComplexMatrix& op, int qubit, int n_qubits);

/// op rho op^dagger with op acting on one qubit, computed by index
/// arithmetic instead of materializing the lifted operator.
ComplexMatrix single_qubit_congruence(const ComplexMatrix& rho, const ComplexMatrix& op,
                                      int qubit, int n_qubits);

}  // namespace entloc
