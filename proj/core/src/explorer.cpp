#include "entloc/explorer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace entloc {

namespace {

using Setter = std::function<void(ProtocolParams&, double)>;

const std::map<std::string, Setter>& axis_setters() {
    static const std::map<std::string, Setter> setters = {
        {"p1", [](ProtocolParams& p, double v) { p.p1 = v; }},
        {"p2", [](ProtocolParams& p, double v) { p.p2 = v; }},
        {"p3", [](ProtocolParams& p, double v) { p.p3 = v; }},
        {"q1", [](ProtocolParams& p, double v) { p.q1 = v; }},
        {"q2", [](ProtocolParams& p, double v) { p.q2 = v; }},
        {"q3", [](ProtocolParams& p, double v) { p.q3 = v; }},
        {"d1", [](ProtocolParams& p, double v) { p.d1 = v; }},
        {"d2", [](ProtocolParams& p, double v) { p.d2 = v; }},
        {"p12", [](ProtocolParams& p, double v) { p.p1 = p.p2 = v; }},
        {"q12", [](ProtocolParams& p, double v) { p.q1 = p.q2 = v; }},
        {"d12", [](ProtocolParams& p, double v) { p.d1 = p.d2 = v; }},
    };
    return setters;
}

const Setter& setter_for(const std::string& name) {
    const auto it = axis_setters().find(name);
    if (it == axis_setters().end()) {
        throw std::invalid_argument("unknown sweep parameter '" + name + "'");
    }
    return it->second;
}

std::vector<double> axis_values(const SweepAxis& axis) {
    if (axis.steps < 2) throw std::invalid_argument("sweep axis needs at least two steps");
    std::vector<double> values(static_cast<std::size_t>(axis.steps));
    for (int i = 0; i < axis.steps; ++i) {
        values[static_cast<std::size_t>(i)] =
            axis.min + (axis.max - axis.min) * i / (axis.steps - 1);
    }
    return values;
}

// Canonical column order; requests are deduplicated into this order.
constexpr std::array<SweepOutput, 6> kCanonicalOutputs = {
    SweepOutput::Concurrence,       SweepOutput::SuccessProb,
    SweepOutput::ClosedFormConcurrence, SweepOutput::ClosedFormSuccess,
    SweepOutput::C13,               SweepOutput::C23,
};

double pair_concurrence(const ProtocolOutcome& out, int traced_qubit) {
    return concurrence(out.rho_full.reduced({traced_qubit}).matrix()).value;
}

struct GoldenResult {
    double x = 0.0;
    double score = 0.0;
};

GoldenResult golden_max(const std::function<double(double)>& f, double lo, double hi) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c), fd = f(d);
    for (int iter = 0; iter < 80 && (b - a) > 1e-9; ++iter) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    const double mid = 0.5 * (a + b);
    return {mid, f(mid)};
}

}  // namespace

std::string to_string(SweepOutput output) {
    switch (output) {
        case SweepOutput::Concurrence: return "concurrence";
        case SweepOutput::SuccessProb: return "success_prob";
        case SweepOutput::ClosedFormConcurrence: return "closed_form_concurrence";
        case SweepOutput::ClosedFormSuccess: return "closed_form_success";
        case SweepOutput::C13: return "c13";
        case SweepOutput::C23: return "c23";
    }
    return "concurrence";
}

std::optional<SweepOutput> parse_sweep_output(const std::string& name) {
    for (SweepOutput out : kCanonicalOutputs) {
        if (to_string(out) == name) return out;
    }
    return std::nullopt;
}

SweepTable sweep(const SweepSpec& spec) {
    if (spec.axes.empty() || spec.axes.size() > 2) {
        throw std::invalid_argument("sweep: expected one or two axes");
    }
    if (spec.outputs.empty()) throw std::invalid_argument("sweep: no outputs requested");

    std::vector<const Setter*> setters;
    std::vector<std::vector<double>> values;
    for (const SweepAxis& axis : spec.axes) {
        setters.push_back(&setter_for(axis.param));
        values.push_back(axis_values(axis));
    }

    std::vector<SweepOutput> outputs;
    for (SweepOutput out : kCanonicalOutputs) {
        if (std::find(spec.outputs.begin(), spec.outputs.end(), out) != spec.outputs.end()) {
            outputs.push_back(out);
        }
    }

    SweepTable table;
    for (const SweepAxis& axis : spec.axes) table.columns.push_back(axis.param);
    for (const std::string& name : spec.optimize_reversal) table.columns.push_back(name + "_opt");
    for (SweepOutput out : outputs) {
        table.columns.push_back(to_string(out));
        if (out == SweepOutput::ClosedFormConcurrence) table.columns.push_back("deviation");
        if (out == SweepOutput::ClosedFormSuccess) table.columns.push_back("success_deviation");
    }

    const DensityMatrix initial = spec.base.initial.density();

    const std::size_t outer = values[0].size();
    const std::size_t inner = spec.axes.size() == 2 ? values[1].size() : 1;
    table.cells.reserve(outer * inner);

    for (std::size_t i = 0; i < outer; ++i) {
        for (std::size_t j = 0; j < inner; ++j) {
            ProtocolParams params = spec.base;
            (*setters[0])(params, values[0][i]);
            if (spec.axes.size() == 2) (*setters[1])(params, values[1][j]);

            std::vector<std::optional<double>> row;
            row.reserve(table.columns.size());
            row.emplace_back(values[0][i]);
            if (spec.axes.size() == 2) row.emplace_back(values[1][j]);

            if (!spec.optimize_reversal.empty()) {
                const OptimizeResult opt = optimize_reversal(params, spec.optimize_reversal);
                params = opt.params;
                for (const std::string& name : spec.optimize_reversal) {
                    if (name == "q1") row.emplace_back(params.q1);
                    else if (name == "q2") row.emplace_back(params.q2);
                    else row.emplace_back(params.q3);
                }
            }

            const ProtocolOutcome out = run(params, initial);
            const bool dead = out.postselection_impossible;
            for (SweepOutput o : outputs) {
                switch (o) {
                    case SweepOutput::Concurrence:
                        row.emplace_back(dead ? std::nullopt
                                              : std::optional<double>(out.concurrence));
                        break;
                    case SweepOutput::SuccessProb:
                        row.emplace_back(out.success_prob);
                        break;
                    case SweepOutput::ClosedFormConcurrence:
                        row.emplace_back(out.closed_form_concurrence);
                        if (!dead && out.closed_form_concurrence) {
                            row.emplace_back(
                                std::abs(out.concurrence - *out.closed_form_concurrence));
                        } else {
                            row.emplace_back(std::nullopt);
                        }
                        break;
                    case SweepOutput::ClosedFormSuccess:
                        row.emplace_back(out.closed_form_success);
                        if (out.closed_form_success) {
                            row.emplace_back(
                                std::abs(out.success_prob - *out.closed_form_success));
                        } else {
                            row.emplace_back(std::nullopt);
                        }
                        break;
                    case SweepOutput::C13:
                        row.emplace_back(dead ? std::nullopt
                                              : std::optional<double>(pair_concurrence(out, 2)));
                        break;
                    case SweepOutput::C23:
                        row.emplace_back(dead ? std::nullopt
                                              : std::optional<double>(pair_concurrence(out, 1)));
                        break;
                }
            }
            table.cells.push_back(std::move(row));
        }
    }
    return table;
}

namespace {

SweepAxis unit_axis(const std::string& name, int steps = 32) {
    // Covers [0, 1) as i/steps, keeping the open end away from the
    // singular q -> 1 limit.
    return {name, 0.0, static_cast<double>(steps - 1) / steps, steps};
}

SweepTable figure_with_states(SweepSpec spec, const std::vector<InitialState>& states) {
    SweepTable combined;
    combined.label_column = "initial";
    bool first = true;
    for (const InitialState& state : states) {
        spec.base.initial = state;
        SweepTable block = sweep(spec);
        if (first) {
            combined.columns = block.columns;
            first = false;
        }
        for (std::size_t r = 0; r < block.cells.size(); ++r) {
            combined.labels.push_back(state.name());
            combined.cells.push_back(std::move(block.cells[r]));
        }
    }
    return combined;
}

}  // namespace

std::vector<std::string> figure_names() {
    return {"fig1a", "fig1b", "fig2a", "fig2b", "fig2c",
            "fig3a", "fig3b", "fig3c", "fig4a", "fig4b"};
}

SweepTable figure_sweep(const std::string& id) {
    SweepSpec spec;
    spec.outputs = {SweepOutput::Concurrence, SweepOutput::SuccessProb,
                    SweepOutput::ClosedFormConcurrence};

    if (id == "fig1a") {
        spec.base.strategy = Strategy::Distributed;
        spec.base.q1 = spec.base.q2 = 0.99;
        spec.axes = {unit_axis("p1"), unit_axis("p2")};
        return sweep(spec);
    }
    if (id == "fig1b") {
        spec.base.strategy = Strategy::FullyLocal;
        spec.axes = {unit_axis("p3"), unit_axis("q3")};
        return sweep(spec);
    }
    if (id == "fig2a") {
        spec.base.strategy = Strategy::Distributed;
        spec.base.noise = NoiseKind::AmplitudeDamping;
        spec.axes = {unit_axis("d1"), unit_axis("d2")};
        return sweep(spec);
    }
    if (id == "fig2b") {
        spec.base.strategy = Strategy::Distributed;
        spec.base.noise = NoiseKind::AmplitudeDamping;
        spec.base.d1 = spec.base.d2 = 0.6;
        spec.base.q1 = spec.base.q2 = 0.99;
        spec.axes = {unit_axis("p1"), unit_axis("p2")};
        return sweep(spec);
    }
    if (id == "fig2c") {
        spec.base.strategy = Strategy::FullyLocal;
        spec.base.noise = NoiseKind::AmplitudeDamping;
        spec.base.q3 = 0.99;
        spec.axes = {unit_axis("p3"), unit_axis("d12")};
        return sweep(spec);
    }
    if (id == "fig3a") {
        spec.base.strategy = Strategy::Distributed;
        spec.base.noise = NoiseKind::Depolarizing;
        spec.axes = {unit_axis("d1"), unit_axis("d2")};
        spec.outputs = {SweepOutput::Concurrence, SweepOutput::SuccessProb};
        SweepTable table = sweep(spec);
        table.comments = {"fig3a: depolarizing noise, no measurement, d1 and d2 swept"};
        return table;
    }
    if (id == "fig3b") {
        spec.base.strategy = Strategy::Distributed;
        spec.base.noise = NoiseKind::Depolarizing;
        spec.base.d1 = spec.base.d2 = 0.2;
        spec.axes = {unit_axis("p1"), unit_axis("p2")};
        spec.outputs = {SweepOutput::Concurrence, SweepOutput::SuccessProb};
        spec.optimize_reversal = {"q1", "q2"};
        SweepTable table = sweep(spec);
        table.comments = {
            "fig3b: depolarizing noise at d1=d2=0.2, distributed strategy,",
            "q1 and q2 re-optimized for concurrence at every grid point"};
        return table;
    }
    if (id == "fig3c") {
        spec.base.strategy = Strategy::FullyLocal;
        spec.base.noise = NoiseKind::Depolarizing;
        spec.axes = {unit_axis("p3"), unit_axis("d12")};
        spec.outputs = {SweepOutput::Concurrence, SweepOutput::SuccessProb};
        spec.optimize_reversal = {"q3"};
        SweepTable table = sweep(spec);
        table.comments = {
            "fig3c: depolarizing noise with d1=d2 swept, fully local strategy,",
            "q3 re-optimized for concurrence at every grid point"};
        return table;
    }

    const std::vector<InitialState> fig4_states = {
        InitialState::equal_w(),
        InitialState::w_custom(0.5, std::sqrt(0.5), std::sqrt(0.5)),
        InitialState::w_custom(std::sqrt(3.0 / 8.0), std::sqrt(1.0 / 8.0), std::sqrt(0.5)),
        InitialState::gw(),
    };
    if (id == "fig4a") {
        spec.base.strategy = Strategy::Distributed;
        spec.base.noise = NoiseKind::AmplitudeDamping;
        spec.axes = {unit_axis("d12")};
        spec.outputs = {SweepOutput::Concurrence, SweepOutput::SuccessProb};
        SweepTable table = figure_with_states(spec, fig4_states);
        table.comments = {
            "fig4a: amplitude damping with d1=d2 swept, no measurement,",
            "four initial states; unnormalized amplitude sets are rescaled"};
        return table;
    }
    if (id == "fig4b") {
        spec.base.strategy = Strategy::Distributed;
        spec.base.noise = NoiseKind::AmplitudeDamping;
        spec.base.d1 = spec.base.d2 = 0.6;
        spec.base.q1 = spec.base.q2 = 0.99;
        spec.axes = {unit_axis("p12")};
        spec.outputs = {SweepOutput::Concurrence, SweepOutput::SuccessProb};
        SweepTable table = figure_with_states(spec, fig4_states);
        table.comments = {
            "fig4b: amplitude damping at d1=d2=0.6, distributed strategy with",
            "q1=q2=0.99, p1=p2 swept, four initial states"};
        return table;
    }

    std::string known;
    for (const std::string& name : figure_names()) known += (known.empty() ? "" : ", ") + name;
    throw std::invalid_argument("unknown figure preset '" + id + "' (valid: " + known + ")");
}

OptimizeResult optimize_reversal(const ProtocolParams& base, const std::vector<std::string>& which,
                                 OptimizeObjective objective, double min_success) {
    for (const std::string& name : which) {
        if (name != "q1" && name != "q2" && name != "q3") {
            throw std::invalid_argument("optimize_reversal: can only optimize q1, q2 or q3");
        }
    }
    const bool constrained = objective == OptimizeObjective::ConcurrenceAtMinSuccess;
    if (constrained && !(min_success > 0.0 && min_success <= 1.0)) {
        throw std::invalid_argument("optimize_reversal: min_success must lie in (0, 1]");
    }

    const DensityMatrix initial = base.initial.density();
    ProtocolParams params = base;

    auto set_coord = [](ProtocolParams& p, const std::string& name, double v) {
        if (name == "q1") p.q1 = v;
        else if (name == "q2") p.q2 = v;
        else p.q3 = v;
    };

    // Infeasible points score below -1 so any feasible point wins; the
    // success shortfall still orders them, which keeps the scan moving
    // toward the constraint boundary.
    auto score = [&](const ProtocolParams& p) {
        const ProtocolOutcome out = run(p, initial);
        if (out.postselection_impossible) return -2.0;
        if (constrained && out.success_prob < min_success) {
            return -1.0 + (out.success_prob - min_success);
        }
        return out.concurrence;
    };

    constexpr double kHi = 0.999;
    constexpr int kScanPoints = 101;
    constexpr int kRefinementPasses = 2;

    // Scan one direction (a single coordinate, or all free coordinates
    // moved together) and refine the best cell by golden section.
    auto optimize_direction = [&](ProtocolParams point, auto&& set_direction) {
        auto line = [&](double v) {
            ProtocolParams p = point;
            set_direction(p, v);
            return score(p);
        };
        double best_x = 0.0;
        double best_score = line(0.0);
        for (int i = 1; i < kScanPoints; ++i) {
            const double x = kHi * i / (kScanPoints - 1);
            const double s = line(x);
            if (s > best_score) {
                best_score = s;
                best_x = x;
            }
        }
        const double h = kHi / (kScanPoints - 1);
        const GoldenResult refined =
            golden_max(line, std::max(0.0, best_x - h), std::min(kHi, best_x + h));
        if (refined.score > best_score) best_x = refined.x;
        set_direction(point, best_x);
        return point;
    };

    auto coordinate_passes = [&](ProtocolParams point) {
        for (int pass = 0; pass < kRefinementPasses; ++pass) {
            for (const std::string& name : which) {
                point = optimize_direction(
                    point, [&](ProtocolParams& p, double v) { set_coord(p, name, v); });
            }
        }
        return point;
    };

    if (!which.empty()) {
        // Coordinate ascent started at the base point can stall on an
        // interior ridge while the optimum sits at the corner where every
        // reversal is strong; a scan along the tied direction seeds the
        // ascent from the stronger basin.
        ProtocolParams start = params;
        if (which.size() > 1) {
            const ProtocolParams tied =
                optimize_direction(params, [&](ProtocolParams& p, double v) {
                    for (const std::string& name : which) set_coord(p, name, v);
                });
            if (score(tied) > score(start)) start = tied;
        }
        params = coordinate_passes(start);
    }

    const ProtocolOutcome out = run(params, initial);
    OptimizeResult result;
    result.params = params;
    result.concurrence = out.postselection_impossible ? 0.0 : out.concurrence;
    result.success_prob = out.success_prob;
    result.feasible = !constrained || (!out.postselection_impossible &&
                                       out.success_prob >= min_success - 1e-12);
    return result;
}

std::vector<ParetoPoint> pareto_frontier(const ProtocolParams& base,
                                         const std::vector<std::string>& free,
                                         int grid_density) {
    if (free.empty() || free.size() > 2) {
        throw std::invalid_argument("pareto_frontier: expected one or two free parameters");
    }
    if (grid_density < 8) throw std::invalid_argument("pareto_frontier: grid density must be >= 8");

    std::vector<const Setter*> setters;
    for (const std::string& name : free) setters.push_back(&setter_for(name));

    std::vector<double> grid(static_cast<std::size_t>(grid_density));
    for (int i = 0; i < grid_density; ++i) {
        grid[static_cast<std::size_t>(i)] = 0.999 * i / (grid_density - 1);
    }

    const DensityMatrix initial = base.initial.density();
    const std::size_t inner = free.size() == 2 ? grid.size() : 1;

    std::vector<ParetoPoint> points;
    for (double v0 : grid) {
        for (std::size_t j = 0; j < inner; ++j) {
            ProtocolParams params = base;
            (*setters[0])(params, v0);
            if (free.size() == 2) (*setters[1])(params, grid[j]);
            const ProtocolOutcome out = run(params, initial);
            if (out.postselection_impossible) continue;
            points.push_back({params, out.concurrence, out.success_prob});
        }
    }

    auto tuple_of = [](const ProtocolParams& p) {
        return std::array<double, 8>{p.p1, p.p2, p.p3, p.q1, p.q2, p.q3, p.d1, p.d2};
    };

    // Exact-duplicate objectives keep the lexicographically smaller tuple.
    std::vector<ParetoPoint> kept;
    for (const ParetoPoint& cand : points) {
        bool drop = false;
        for (ParetoPoint& other : kept) {
            if (cand.concurrence == other.concurrence && cand.success_prob == other.success_prob) {
                if (tuple_of(cand.params) < tuple_of(other.params)) other = cand;
                drop = true;
                break;
            }
        }
        if (!drop) kept.push_back(cand);
    }

    std::vector<ParetoPoint> frontier;
    for (const ParetoPoint& cand : kept) {
        bool dominated = false;
        for (const ParetoPoint& other : kept) {
            if (other.concurrence >= cand.concurrence && other.success_prob >= cand.success_prob &&
                (other.concurrence > cand.concurrence || other.success_prob > cand.success_prob)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) frontier.push_back(cand);
    }

    std::sort(frontier.begin(), frontier.end(), [&](const ParetoPoint& a, const ParetoPoint& b) {
        if (a.success_prob != b.success_prob) return a.success_prob > b.success_prob;
        if (a.concurrence != b.concurrence) return a.concurrence > b.concurrence;
        return tuple_of(a.params) < tuple_of(b.params);
    });
    return frontier;
}

}  // namespace entloc
