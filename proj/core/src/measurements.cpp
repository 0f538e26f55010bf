#include "entloc/measurements.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace entloc {

std::string to_string(MeasurementLabel label) {
    switch (label) {
        case MeasurementLabel::Weak: return "weak";
        case MeasurementLabel::Reversal: return "reversal";
        case MeasurementLabel::Project0: return "project0";
        case MeasurementLabel::Project1: return "project1";
    }
    return "weak";
}

PostselectedOp::PostselectedOp(MeasurementLabel label, double strength, ComplexMatrix op)
    : label_(label), strength_(strength), op_(std::move(op)) {
    if (op_.rows() != 2 || op_.cols() != 2) {
        throw std::invalid_argument("PostselectedOp: operator must be 2x2");
    }
    // Contraction check: diagonal, real, entries in [0, 1].
    if (std::abs(op_(0, 1)) != 0.0 || std::abs(op_(1, 0)) != 0.0) {
        throw std::invalid_argument("PostselectedOp: operator must be diagonal");
    }
    for (std::size_t i = 0; i < 2; ++i) {
        const Complex d = op_(i, i);
        if (d.imag() != 0.0 || d.real() < 0.0 || d.real() > 1.0) {
            throw std::invalid_argument("PostselectedOp: diagonal entries must be real in [0, 1]");
        }
    }
}

PostselectedOp weak_meas(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("weak_meas: strength must lie in [0, 1]");
    }
    return PostselectedOp(MeasurementLabel::Weak, p,
                          ComplexMatrix(2, 2, {1.0, 0.0, 0.0, std::sqrt(1.0 - p)}));
}

PostselectedOp reversal_meas(double q) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::invalid_argument("reversal_meas: strength must lie in [0, 1]");
    }
    return PostselectedOp(MeasurementLabel::Reversal, q,
                          ComplexMatrix(2, 2, {std::sqrt(1.0 - q), 0.0, 0.0, 1.0}));
}

PostselectedOp projector(int outcome) {
    if (outcome == 0) {
        return PostselectedOp(MeasurementLabel::Project0, 1.0,
                              ComplexMatrix(2, 2, {1.0, 0.0, 0.0, 0.0}));
    }
    if (outcome == 1) {
        return PostselectedOp(MeasurementLabel::Project1, 1.0,
                              ComplexMatrix(2, 2, {0.0, 0.0, 0.0, 1.0}));
    }
    throw std::invalid_argument("projector: outcome must be 0 or 1");
}

PostselectionResult apply_postselected(const PostselectedOp& op, const DensityMatrix& rho,
                                       int qubit) {
    if (qubit < 1 || qubit > rho.n_qubits()) {
        throw std::invalid_argument("apply_postselected: qubit index out of range");
    }
    const double trace_in = rho.trace();
    if (!(trace_in > 0.0)) {
        throw std::invalid_argument("apply_postselected: state has no probability mass");
    }

    ComplexMatrix conditioned = single_qubit_congruence(rho.matrix(), op.op(), qubit, rho.n_qubits());
    const double trace_out = conditioned.trace().real();
    const double prob = trace_out / trace_in;
    DensityMatrix out(rho.n_qubits(), std::move(conditioned), rho.weight() * prob);
    return {std::move(out), prob};
}

}  // namespace entloc
