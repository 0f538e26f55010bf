#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entloc/states.hpp"

namespace entloc {

enum class NoiseKind { None, AmplitudeDamping, Depolarizing, PhaseDamping };

std::string to_string(NoiseKind kind);
std::optional<NoiseKind> parse_noise_kind(const std::string& name);

/// Trace-preserving single-qubit noise process as a set of Kraus operators.
/// Construction enforces completeness (sum K^dag K = I within 1e-12).
class KrausChannel {
public:
    KrausChannel(NoiseKind kind, double strength, std::vector<ComplexMatrix> operators);

    NoiseKind kind() const { return kind_; }
    double strength() const { return strength_; }
    const std::vector<ComplexMatrix>& operators() const { return operators_; }

private:
    NoiseKind kind_;
    double strength_;
    std::vector<ComplexMatrix> operators_;
};

/// Excitation-loss channel: K0 = diag(1, sqrt(1-d)), K1 = sqrt(d)|0><1|.
KrausChannel amplitude_damping(double d);

/// rho -> (1-d) rho + (d/2) I, realized by the Pauli Kraus set.
KrausChannel depolarizing(double d);

/// Populations invariant, coherences scaled by sqrt(1-d).
KrausChannel phase_damping(double d);

/// Channel for the given kind and strength; NoiseKind::None is rejected
/// (apply no channel instead).
KrausChannel make_channel(NoiseKind kind, double d);

/// Kraus sum applied to one 1-based qubit of the register; weight (and
/// trace) are unchanged.
DensityMatrix apply_on_qubit(const KrausChannel& channel, const DensityMatrix& rho, int qubit);

}  // namespace entloc
