#pragma once

#include <string>

#include "entloc/states.hpp"

namespace entloc {

enum class MeasurementLabel { Weak, Reversal, Project0, Project1 };

std::string to_string(MeasurementLabel label);

/// A single measurement-operator element M with M^dag M <= I. Applying it
/// and keeping the branch yields a conditional state with an explicit
/// success probability. All elements used here are real and diagonal.
class PostselectedOp {
public:
    PostselectedOp(MeasurementLabel label, double strength, ComplexMatrix op);

    MeasurementLabel label() const { return label_; }
    double strength() const { return strength_; }
    const ComplexMatrix& op() const { return op_; }

private:
    MeasurementLabel label_;
    double strength_;
    ComplexMatrix op_;
};

/// Null-outcome element diag(1, sqrt(1-p)): no detector click, partial
/// collapse toward |0>.
PostselectedOp weak_meas(double p);

/// Reversing element diag(sqrt(1-q), 1): partial collapse toward |1>.
PostselectedOp reversal_meas(double q);

/// Computational-basis projector onto |0> or |1>.
PostselectedOp projector(int outcome);

struct PostselectionResult {
    DensityMatrix state;  // M rho M^dag, weight multiplied by success_prob
    double success_prob;  // tr(M rho M^dag) / tr(rho)
};

/// Success probabilities below this are treated as a vanished branch.
inline constexpr double kPostselectionImpossible = 1e-15;

/// Applies the element to one 1-based qubit. The caller decides how to
/// handle a success probability below kPostselectionImpossible.
PostselectionResult apply_postselected(const PostselectedOp& op, const DensityMatrix& rho,
                                       int qubit);

}  // namespace entloc
