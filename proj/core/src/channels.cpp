#include "entloc/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace entloc {

namespace {

void check_strength(double d, const char* what) {
    if (!(d >= 0.0 && d <= 1.0)) {
        throw std::invalid_argument(std::string(what) + ": strength must lie in [0, 1]");
    }
}

}  // namespace

std::string to_string(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::None: return "none";
        case NoiseKind::AmplitudeDamping: return "ad";
        case NoiseKind::Depolarizing: return "dp";
        case NoiseKind::PhaseDamping: return "pd";
    }
    return "none";
}

std::optional<NoiseKind> parse_noise_kind(const std::string& name) {
    if (name == "none") return NoiseKind::None;
    if (name == "ad") return NoiseKind::AmplitudeDamping;
    if (name == "dp") return NoiseKind::Depolarizing;
    if (name == "pd") return NoiseKind::PhaseDamping;
    return std::nullopt;
}

KrausChannel::KrausChannel(NoiseKind kind, double strength, std::vector<ComplexMatrix> operators)
    : kind_(kind), strength_(strength), operators_(std::move(operators)) {
    if (operators_.empty()) throw std::invalid_argument("KrausChannel: no operators");
    ComplexMatrix sum(2, 2);
    for (const ComplexMatrix& k : operators_) {
        if (k.rows() != 2 || k.cols() != 2) {
            throw std::invalid_argument("KrausChannel: operators must be 2x2");
        }
        sum += matmul(k.adjoint(), k);
    }
    if (max_abs_diff(sum, ComplexMatrix::identity(2)) > 1e-12) {
        throw std::invalid_argument("KrausChannel: completeness violated");
    }
}

KrausChannel amplitude_damping(double d) {
    check_strength(d, "amplitude_damping");
    ComplexMatrix k0(2, 2, {1.0, 0.0, 0.0, std::sqrt(1.0 - d)});
    ComplexMatrix k1(2, 2, {0.0, std::sqrt(d), 0.0, 0.0});
    return KrausChannel(NoiseKind::AmplitudeDamping, d, {std::move(k0), std::move(k1)});
}

KrausChannel depolarizing(double d) {
    check_strength(d, "depolarizing");
    const double s0 = std::sqrt(1.0 - 3.0 * d / 4.0);
    const double sp = std::sqrt(d / 4.0);
    ComplexMatrix ki(2, 2, {s0, 0.0, 0.0, s0});
    ComplexMatrix kx(2, 2, {0.0, sp, sp, 0.0});
    ComplexMatrix ky(2, 2, {0.0, Complex{0.0, -sp}, Complex{0.0, sp}, 0.0});
    ComplexMatrix kz(2, 2, {sp, 0.0, 0.0, -sp});
    return KrausChannel(NoiseKind::Depolarizing, d,
                        {std::move(ki), std::move(kx), std::move(ky), std::move(kz)});
}

KrausChannel phase_damping(double d) {
    check_strength(d, "phase_damping");
    ComplexMatrix k0(2, 2, {1.0, 0.0, 0.0, std::sqrt(1.0 - d)});
    ComplexMatrix k1(2, 2, {0.0, 0.0, 0.0, std::sqrt(d)});
    return KrausChannel(NoiseKind::PhaseDamping, d, {std::move(k0), std::move(k1)});
}

KrausChannel make_channel(NoiseKind kind, double d) {
    switch (kind) {
        case NoiseKind::AmplitudeDamping: return amplitude_damping(d);
        case NoiseKind::Depolarizing: return depolarizing(d);
        case NoiseKind::PhaseDamping: return phase_damping(d);
        case NoiseKind::None: break;
    }
    throw std::invalid_argument("make_channel: no channel for NoiseKind::None");
}

DensityMatrix apply_on_qubit(const KrausChannel& channel, const DensityMatrix& rho, int qubit) {
    if (qubit < 1 || qubit > rho.n_qubits()) {
        throw std::invalid_argument("apply_on_qubit: qubit index out of range");
    }
    const std::size_t dim = rho.matrix().rows();
    ComplexMatrix out(dim, dim);
    for (const ComplexMatrix& k : channel.operators()) {
        out += single_qubit_congruence(rho.matrix(), k, qubit, rho.n_qubits());
    }
    return DensityMatrix(rho.n_qubits(), std::move(out), rho.weight());
}

}  // namespace entloc
