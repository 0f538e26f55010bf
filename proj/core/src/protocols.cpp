#include "entloc/protocols.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "entloc/format.hpp"

namespace entloc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ProtocolOutcome impossible_outcome() {
    ProtocolOutcome out{DensityMatrix(2, ComplexMatrix(4, 4), 0.0),
                        DensityMatrix(3, ComplexMatrix(8, 8), 0.0),
                        0.0,
                        kNaN,
                        std::nullopt,
                        std::nullopt,
                        std::nullopt,
                        true};
    return out;
}

DensityMatrix apply_noise(const ProtocolParams& params, DensityMatrix rho) {
    if (params.noise == NoiseKind::None) return rho;
    rho = apply_on_qubit(make_channel(params.noise, params.d1), rho, 1);
    rho = apply_on_qubit(make_channel(params.noise, params.d2), rho, 2);
    return rho;
}

void attach_closed_forms(const ProtocolParams& params, ProtocolOutcome& out) {
    out.closed_form_concurrence = closed_form_concurrence(params);
    out.closed_form_success = closed_form_success(params);
    out.closed_form_success_product = closed_form_success_product(params);
}

ProtocolOutcome finish(const ProtocolParams& params, DensityMatrix rho) {
    if (rho.weight() < kPostselectionImpossible) {
        ProtocolOutcome out = impossible_outcome();
        attach_closed_forms(params, out);
        return out;
    }
    DensityMatrix pair = rho.reduced({3}).normalized();
    ProtocolOutcome out{pair,         rho.normalized(), rho.weight(),
                        concurrence(pair.matrix()).value, std::nullopt,
                        std::nullopt, std::nullopt,     false};
    attach_closed_forms(params, out);
    return out;
}

void check_params(const ProtocolParams& params) {
    for (double v : {params.p1, params.p2, params.p3, params.q1, params.q2, params.q3,
                     params.d1, params.d2}) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("ProtocolParams: strengths and damping rates must lie in [0, 1]");
        }
    }
}

bool covered_by_closed_form(const ProtocolParams& params) {
    return params.initial.kind == InitialState::Kind::PaperDefault &&
           (params.noise == NoiseKind::None || params.noise == NoiseKind::AmplitudeDamping);
}

std::optional<double> finite_or_absent(double value) {
    if (std::isfinite(value)) return value;
    return std::nullopt;
}

}  // namespace

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::Distributed: return "distributed";
        case Strategy::FullyLocal: return "local";
        case Strategy::ProjectiveBaseline: return "projective";
    }
    return "distributed";
}

std::optional<Strategy> parse_strategy(const std::string& name) {
    if (name == "distributed") return Strategy::Distributed;
    if (name == "local") return Strategy::FullyLocal;
    if (name == "projective") return Strategy::ProjectiveBaseline;
    return std::nullopt;
}

InitialState InitialState::paper_default() { return InitialState{}; }

InitialState InitialState::equal_w() {
    const double a = 1.0 / std::sqrt(3.0);
    return InitialState{Kind::EqualW, {a, a, a}, 1.0};
}

InitialState InitialState::w_custom(double a1, double a2, double a3) {
    InitialState state;
    state.kind = Kind::WCustom;
    state.coeffs = normalize({a1, a2, a3}, &state.normalization_factor);
    return state;
}

InitialState InitialState::gw() {
    return InitialState{Kind::GwMixed, {2.0 / 5.0, 2.0 / 5.0, std::sqrt(17.0) / 5.0}, 1.0};
}

InitialState InitialState::parse(const std::string& text) {
    if (text == "paper-default") return paper_default();
    if (text == "equal-w") return equal_w();
    if (text == "gw-mixed") return gw();
    if (text.rfind("w:", 0) == 0) {
        std::istringstream in(text.substr(2));
        double a1 = 0.0, a2 = 0.0, a3 = 0.0;
        char c1 = 0, c2 = 0;
        if ((in >> a1 >> c1 >> a2 >> c2 >> a3) && c1 == ',' && c2 == ',') {
            in >> std::ws;
            if (in.eof()) return w_custom(a1, a2, a3);
        }
        throw std::invalid_argument("InitialState: expected w:a1,a2,a3 with numeric amplitudes");
    }
    throw std::invalid_argument(
        "InitialState: unknown preset '" + text +
        "' (valid: paper-default, equal-w, gw-mixed, w:a1,a2,a3)");
}

std::string InitialState::name() const {
    switch (kind) {
        case Kind::PaperDefault: return "paper-default";
        case Kind::EqualW: return "equal-w";
        case Kind::GwMixed: return "gw-mixed";
        case Kind::WCustom:
            return "w:" + format_number(coeffs.a1) + "," + format_number(coeffs.a2) + "," +
                   format_number(coeffs.a3);
    }
    return "paper-default";
}

DensityMatrix InitialState::density() const {
    if (kind == Kind::GwMixed) return gw_mixed();
    return pure_to_density(w_like(coeffs));
}

StateVector InitialState::pure() const {
    if (!is_pure()) {
        throw std::invalid_argument("InitialState: the mixed preset has no state vector");
    }
    return w_like(coeffs);
}

ProtocolOutcome run(const ProtocolParams& params) { return run(params, params.initial.density()); }

ProtocolOutcome run(const ProtocolParams& params, const DensityMatrix& initial) {
    check_params(params);
    if (initial.n_qubits() != 3) {
        throw std::invalid_argument("run: expected a three-qubit initial state");
    }

    switch (params.strategy) {
        case Strategy::Distributed: {
            auto step = apply_postselected(weak_meas(params.p1), initial, 1);
            if (step.state.weight() < kPostselectionImpossible) break;
            step = apply_postselected(weak_meas(params.p2), step.state, 2);
            if (step.state.weight() < kPostselectionImpossible) break;
            DensityMatrix rho = apply_noise(params, std::move(step.state));
            step = apply_postselected(reversal_meas(params.q1), rho, 1);
            if (step.state.weight() < kPostselectionImpossible) break;
            step = apply_postselected(reversal_meas(params.q2), step.state, 2);
            return finish(params, std::move(step.state));
        }
        case Strategy::FullyLocal: {
            auto step = apply_postselected(weak_meas(params.p3), initial, 3);
            if (step.state.weight() < kPostselectionImpossible) break;
            DensityMatrix rho = apply_noise(params, std::move(step.state));
            step = apply_postselected(reversal_meas(params.q3), rho, 3);
            return finish(params, std::move(step.state));
        }
        case Strategy::ProjectiveBaseline: {
            auto step = apply_postselected(projector(0), initial, 3);
            return finish(params, std::move(step.state));
        }
    }

    ProtocolOutcome out = impossible_outcome();
    attach_closed_forms(params, out);
    return out;
}

ProtocolOutcome run_distributed(const ProtocolParams& params) {
    if (params.strategy != Strategy::Distributed) {
        throw std::invalid_argument("run_distributed: params select a different strategy");
    }
    return run(params);
}

ProtocolOutcome run_fully_local(const ProtocolParams& params) {
    if (params.strategy != Strategy::FullyLocal) {
        throw std::invalid_argument("run_fully_local: params select a different strategy");
    }
    return run(params);
}

ProtocolOutcome run_projective_baseline(const ProtocolParams& params) {
    if (params.strategy != Strategy::ProjectiveBaseline) {
        throw std::invalid_argument("run_projective_baseline: params select a different strategy");
    }
    return run(params);
}

namespace closed_form {

double weak_stage_success(double p1, double p2) { return 1.0 - p1 / 4.0 - p2 / 4.0; }

double reversal_stage_success(double p1, double p2, double q1, double q2) {
    return ((1.0 - q1) * (2.0 - p2 - q2) + (1.0 - q2) * (2.0 - p1 - q1)) /
           (4.0 * weak_stage_success(p1, p2));
}

double distributed_concurrence_no_noise(double p1, double p2, double q1, double q2) {
    const double x1 = (1.0 - p1) * (1.0 - p2) * (1.0 - q1) * (1.0 - q2);
    const double xr = 0.5 * std::sqrt(x1);
    const double yr = 0.25 * (1.0 - p1) * (1.0 - q2) +
                      (1.0 - q1) * (0.5 * (1.0 - q2) + 0.25 * (1.0 - p2));
    return xr / yr;
}

double distributed_success_no_noise(double p1, double p2, double q1, double q2) {
    return weak_stage_success(p1, p2) * reversal_stage_success(p1, p2, q1, q2);
}

double distributed_concurrence_damped(double p1, double p2, double q1, double q2, double d1,
                                      double d2) {
    const double x1 =
        (1.0 - d1) * (1.0 - d2) * (1.0 - p1) * (1.0 - p2) * (1.0 - q1) * (1.0 - q2);
    const double xr = std::sqrt(x1);
    const double yr = 0.5 * (1.0 - p1) * (1.0 - d1 * q1) * (1.0 - q2) +
                      (1.0 - q1) * ((1.0 - q2) + 0.5 * (1.0 - p2) * (1.0 - d2 * q2));
    return xr / yr;
}

double distributed_success_damped(double p1, double p2, double q1, double q2, double d1,
                                  double d2) {
    return (1.0 - q1) * (1.0 - p2) * (1.0 - q2 * d2) / 4.0 +
           (1.0 - q2) * (1.0 - p1) * (1.0 - q1 * d1) / 4.0 +
           (1.0 - q1) * (1.0 - q2) / 2.0;
}

double no_measurement_concurrence_damped(double d1, double d2) {
    return 0.5 * std::sqrt((1.0 - d1) * (1.0 - d2));
}

double fully_local_concurrence_no_noise(double p3, double q3) {
    return (1.0 - q3) / ((1.0 - p3) + (1.0 - q3));
}

double fully_local_concurrence_damped(double p3, double q3, double d1, double d2) {
    return std::sqrt((1.0 - d1) * (1.0 - d2)) * (1.0 - q3) / ((1.0 - p3) + (1.0 - q3));
}

double fully_local_joint_success(double p3, double q3) { return 1.0 - (p3 + q3) / 2.0; }

double fully_local_success_product(double p3, double q3) {
    return (1.0 - p3 / 2.0) * fully_local_joint_success(p3, q3);
}

}  // namespace closed_form

std::optional<double> closed_form_concurrence(const ProtocolParams& params) {
    if (!covered_by_closed_form(params)) return std::nullopt;
    switch (params.strategy) {
        case Strategy::Distributed:
            if (params.noise == NoiseKind::None) {
                return finite_or_absent(closed_form::distributed_concurrence_no_noise(
                    params.p1, params.p2, params.q1, params.q2));
            }
            return finite_or_absent(closed_form::distributed_concurrence_damped(
                params.p1, params.p2, params.q1, params.q2, params.d1, params.d2));
        case Strategy::FullyLocal:
            if (params.noise == NoiseKind::None) {
                return finite_or_absent(
                    closed_form::fully_local_concurrence_no_noise(params.p3, params.q3));
            }
            return finite_or_absent(closed_form::fully_local_concurrence_damped(
                params.p3, params.q3, params.d1, params.d2));
        case Strategy::ProjectiveBaseline: return std::nullopt;
    }
    return std::nullopt;
}

std::optional<double> closed_form_success(const ProtocolParams& params) {
    if (!covered_by_closed_form(params)) return std::nullopt;
    switch (params.strategy) {
        case Strategy::Distributed:
            if (params.noise == NoiseKind::None) {
                return finite_or_absent(closed_form::distributed_success_no_noise(
                    params.p1, params.p2, params.q1, params.q2));
            }
            return finite_or_absent(closed_form::distributed_success_damped(
                params.p1, params.p2, params.q1, params.q2, params.d1, params.d2));
        case Strategy::FullyLocal:
            return closed_form::fully_local_joint_success(params.p3, params.q3);
        case Strategy::ProjectiveBaseline: return std::nullopt;
    }
    return std::nullopt;
}

std::optional<double> closed_form_success_product(const ProtocolParams& params) {
    if (params.strategy != Strategy::FullyLocal || !covered_by_closed_form(params)) {
        return std::nullopt;
    }
    return closed_form::fully_local_success_product(params.p3, params.q3);
}

bool VerifyReport::pass() const {
    for (const EquationCheck& check : checks) {
        if (!check.informational && check.max_abs_deviation > tolerance) return false;
    }
    return true;
}

VerifyReport verify_closed_forms(int grid_points_per_axis) {
    if (grid_points_per_axis < 2) {
        throw std::invalid_argument("verify_closed_forms: need at least two grid points per axis");
    }
    const int n = grid_points_per_axis;
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = 0.99 * i / (n - 1);

    VerifyReport report;
    auto add = [&report](std::string name, bool informational = false) {
        report.checks.push_back({std::move(name), 0, 0.0, informational});
        return report.checks.size() - 1;
    };
    auto record = [&report](std::size_t idx, double deviation) {
        EquationCheck& check = report.checks[idx];
        check.points += 1;
        check.max_abs_deviation = std::max(check.max_abs_deviation, std::abs(deviation));
    };

    const DensityMatrix initial = InitialState::paper_default().density();

    // Distributed pipeline, no noise: concurrence and joint success.
    {
        const std::size_t conc = add("distributed_concurrence_no_noise");
        const std::size_t succ = add("distributed_success_no_noise");
        ProtocolParams params;
        params.strategy = Strategy::Distributed;
        for (double p1 : grid)
            for (double p2 : grid)
                for (double q1 : grid)
                    for (double q2 : grid) {
                        params.p1 = p1; params.p2 = p2; params.q1 = q1; params.q2 = q2;
                        const ProtocolOutcome out = run(params, initial);
                        record(conc, out.concurrence - closed_form::distributed_concurrence_no_noise(
                                          p1, p2, q1, q2));
                        record(succ, out.success_prob - closed_form::distributed_success_no_noise(
                                          p1, p2, q1, q2));
                    }
    }

    // Distributed pipeline under amplitude damping.
    {
        const std::size_t conc = add("distributed_concurrence_ad");
        const std::size_t succ = add("distributed_success_ad");
        ProtocolParams params;
        params.strategy = Strategy::Distributed;
        params.noise = NoiseKind::AmplitudeDamping;
        for (double p1 : grid)
            for (double p2 : grid)
                for (double q1 : grid)
                    for (double q2 : grid)
                        for (double d1 : grid)
                            for (double d2 : grid) {
                                params.p1 = p1; params.p2 = p2;
                                params.q1 = q1; params.q2 = q2;
                                params.d1 = d1; params.d2 = d2;
                                const ProtocolOutcome out = run(params, initial);
                                record(conc,
                                       out.concurrence -
                                           closed_form::distributed_concurrence_damped(
                                               p1, p2, q1, q2, d1, d2));
                                record(succ,
                                       out.success_prob -
                                           closed_form::distributed_success_damped(
                                               p1, p2, q1, q2, d1, d2));
                            }
    }

    // No measurement at all, amplitude damping only.
    {
        const std::size_t conc = add("no_measurement_concurrence_ad");
        ProtocolParams params;
        params.strategy = Strategy::Distributed;
        params.noise = NoiseKind::AmplitudeDamping;
        for (double d1 : grid)
            for (double d2 : grid) {
                params.d1 = d1; params.d2 = d2;
                const ProtocolOutcome out = run(params, initial);
                record(conc, out.concurrence -
                                 closed_form::no_measurement_concurrence_damped(d1, d2));
            }
    }

    // Fully local pipeline, no noise. The stage-probability product is
    // tracked as an informational row; the trace-derived joint probability
    // is the gated one.
    {
        const std::size_t conc = add("fully_local_concurrence_no_noise");
        const std::size_t succ = add("fully_local_success");
        const std::size_t prod = add("fully_local_success_product_form", true);
        ProtocolParams params;
        params.strategy = Strategy::FullyLocal;
        for (double p3 : grid)
            for (double q3 : grid) {
                params.p3 = p3; params.q3 = q3;
                const ProtocolOutcome out = run(params, initial);
                record(conc, out.concurrence -
                                 closed_form::fully_local_concurrence_no_noise(p3, q3));
                record(succ, out.success_prob - closed_form::fully_local_joint_success(p3, q3));
                record(prod, out.success_prob - closed_form::fully_local_success_product(p3, q3));
            }
    }

    // Fully local pipeline under amplitude damping.
    {
        const std::size_t conc = add("fully_local_concurrence_ad");
        const std::size_t succ = add("fully_local_success_ad");
        ProtocolParams params;
        params.strategy = Strategy::FullyLocal;
        params.noise = NoiseKind::AmplitudeDamping;
        for (double p3 : grid)
            for (double q3 : grid)
                for (double d1 : grid)
                    for (double d2 : grid) {
                        params.p3 = p3; params.q3 = q3;
                        params.d1 = d1; params.d2 = d2;
                        const ProtocolOutcome out = run(params, initial);
                        record(conc, out.concurrence - closed_form::fully_local_concurrence_damped(
                                          p3, q3, d1, d2));
                        record(succ, out.success_prob -
                                          closed_form::fully_local_joint_success(p3, q3));
                    }
    }

    return report;
}

}  // namespace entloc
