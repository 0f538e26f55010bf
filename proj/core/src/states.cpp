#include "entloc/states.hpp"

#include <cmath>
#include <stdexcept>

namespace entloc {

WLikeCoefficients normalize(const WLikeCoefficients& coeffs, double* scale_applied) {
    if (coeffs.a1 < 0.0 || coeffs.a2 < 0.0 || coeffs.a3 < 0.0) {
        throw std::invalid_argument("WLikeCoefficients: amplitudes must be non-negative");
    }
    const double norm = std::sqrt(coeffs.norm_squared());
    if (norm <= 0.0) throw std::invalid_argument("WLikeCoefficients: all amplitudes are zero");
    if (scale_applied) *scale_applied = norm;
    return {coeffs.a1 / norm, coeffs.a2 / norm, coeffs.a3 / norm};
}

DensityMatrix::DensityMatrix(int n_qubits, ComplexMatrix matrix, double weight)
    : n_qubits_(n_qubits), matrix_(std::move(matrix)), weight_(weight) {
    if (n_qubits < 1) throw std::invalid_argument("DensityMatrix: need at least one qubit");
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (!matrix_.is_square() || matrix_.rows() != dim) {
        throw std::invalid_argument("DensityMatrix: matrix dimension does not match qubit count");
    }
    if (weight < -1e-12 || weight > 1.0 + 1e-9) {
        throw std::invalid_argument("DensityMatrix: weight must lie in [0, 1]");
    }
    weight_ = std::min(std::max(weight_, 0.0), 1.0);
}

DensityMatrix DensityMatrix::normalized() const {
    const double tr = trace();
    if (tr <= 0.0) throw std::invalid_argument("DensityMatrix::normalized: non-positive trace");
    ComplexMatrix m = matrix_;
    m *= Complex{1.0 / tr, 0.0};
    return DensityMatrix(n_qubits_, std::move(m), 1.0);
}

DensityMatrix DensityMatrix::reduced(const std::vector<int>& traced) const {
    ComplexMatrix m = partial_trace(matrix_, n_qubits_, traced);
    const int remaining = n_qubits_ - static_cast<int>(traced.size());
    return DensityMatrix(remaining, std::move(m), weight_);
}

StateVector w_like(const WLikeCoefficients& coeffs) {
    if (coeffs.a1 < 0.0 || coeffs.a2 < 0.0 || coeffs.a3 < 0.0) {
        throw std::invalid_argument("w_like: amplitudes must be non-negative");
    }
    if (std::abs(coeffs.norm_squared() - 1.0) > 1e-9) {
        throw std::invalid_argument("w_like: coefficients are not normalized");
    }
    std::vector<Complex> amps(8, Complex{});
    amps[0b100] = coeffs.a1;
    amps[0b010] = coeffs.a2;
    amps[0b001] = coeffs.a3;
    return StateVector::from_amplitudes(std::move(amps));
}

DensityMatrix pure_to_density(const StateVector& psi) {
    if (!psi.is_normalized(1e-9)) {
        throw std::invalid_argument("pure_to_density: state is not normalized");
    }
    const std::size_t dim = psi.dim();
    ComplexMatrix rho(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) rho(i, j) = psi[i] * std::conj(psi[j]);
    return DensityMatrix(psi.n_qubits(), std::move(rho), 1.0);
}

DensityMatrix gw_mixed() {
    const StateVector gw = w_like({2.0 / 5.0, 2.0 / 5.0, std::sqrt(17.0) / 5.0});
    ComplexMatrix rho(8, 8);
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = 0; j < 8; ++j) rho(i, j) = 0.9 * gw[i] * std::conj(gw[j]);
        rho(i, i) += 0.1 / 8.0;
    }
    return DensityMatrix(3, std::move(rho), 1.0);
}

ValidationReport validate(const DensityMatrix& rho) {
    ValidationReport report;
    report.hermiticity_residual = rho.matrix().hermiticity_residual();
    report.trace_deviation = std::abs(rho.trace() - rho.weight());

    // Eigenvalues of the symmetrized matrix; validation must not throw on
    // slightly malformed input, so the Hermiticity gate is relaxed here.
    ComplexMatrix sym(rho.matrix().rows(), rho.matrix().cols());
    for (std::size_t i = 0; i < sym.rows(); ++i)
        for (std::size_t j = 0; j < sym.cols(); ++j)
            sym(i, j) = 0.5 * (rho.matrix()(i, j) + std::conj(rho.matrix()(j, i)));
    const EigenSystem sys = hermitian_eigs(sym, 1e30);
    report.min_eigenvalue = sys.values.back();
    return report;
}

}  // namespace entloc
