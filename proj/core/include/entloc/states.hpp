#pragma once

#include <vector>

#include "entloc/linalg.hpp"
#include "entloc/matrix.hpp"

namespace entloc {

/// Real, non-negative amplitudes of the single-excitation family
/// a1|100> + a2|010> + a3|001>.
struct WLikeCoefficients {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;

    double norm_squared() const { return a1 * a1 + a2 * a2 + a3 * a3; }
};

/// Rescales coefficients to unit norm. When `scale_applied` is given it
/// receives the factor the inputs were divided by.
WLikeCoefficients normalize(const WLikeCoefficients& coeffs, double* scale_applied = nullptr);

/// Density operator over n qubits. The matrix may be held unnormalized
/// while a postselected branch is in flight; `weight` carries the
/// probability mass of the branch (1 for normalized states) and equals the
/// trace up to round-off.
class DensityMatrix {
public:
    DensityMatrix(int n_qubits, ComplexMatrix matrix, double weight = 1.0);

    int n_qubits() const { return n_qubits_; }
    const ComplexMatrix& matrix() const { return matrix_; }
    double weight() const { return weight_; }
    double trace() const { return matrix_.trace().real(); }

    /// Same state scaled to trace one, weight one.
    DensityMatrix normalized() const;

    /// Partial trace over the given 1-based qubits; weight is preserved.
    DensityMatrix reduced(const std::vector<int>& traced) const;

private:
    int n_qubits_;
    ComplexMatrix matrix_;
    double weight_;
};

/// The three-qubit state a1|100> + a2|010> + a3|001>. Coefficients more
/// than 1e-9 away from unit norm are rejected.
StateVector w_like(const WLikeCoefficients& coeffs);

/// |psi><psi| with weight one.
DensityMatrix pure_to_density(const StateVector& psi);

/// Mixed three-qubit preset (0.1/8) I + 0.9 |GW><GW| with
/// |GW> = (2/5)|100> + (2/5)|010> + (sqrt(17)/5)|001>.
DensityMatrix gw_mixed();

/// Well-formedness diagnostics for a density matrix. Purely informative;
/// nothing is rejected here.
struct ValidationReport {
    double hermiticity_residual = 0.0;
    double min_eigenvalue = 0.0;
    double trace_deviation = 0.0;  // |trace - weight|

    bool ok(double tol = 1e-10) const {
        return hermiticity_residual <= tol && min_eigenvalue >= -tol && trace_deviation <= tol;
    }
};

ValidationReport validate(const DensityMatrix& rho);

}  // namespace entloc
