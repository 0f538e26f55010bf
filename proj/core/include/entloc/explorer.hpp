#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entloc/protocols.hpp"

namespace entloc {

/// One sweep dimension. `param` names a ProtocolParams field (p1..p3,
/// q1..q3, d1, d2) or one of the tied pairs p12, q12, d12 that move both
/// members together. Grid points are `steps` evenly spaced values over
/// [min, max], endpoints included.
struct SweepAxis {
    std::string param;
    double min = 0.0;
    double max = 0.0;
    int steps = 0;
};

enum class SweepOutput {
    Concurrence,
    SuccessProb,
    ClosedFormConcurrence,
    ClosedFormSuccess,
    C13,
    C23,
};

std::string to_string(SweepOutput output);
std::optional<SweepOutput> parse_sweep_output(const std::string& name);

struct SweepSpec {
    ProtocolParams base;
    std::vector<SweepAxis> axes;  // one or two
    std::vector<SweepOutput> outputs;
    /// Reversal strengths re-optimized at every grid point before the
    /// outputs are evaluated; the optima appear as extra columns.
    std::vector<std::string> optimize_reversal;
};

/// Row-major result table. Cells are absent where a value is undefined
/// (no closed form for the configuration, vanished postselection branch).
struct SweepTable {
    std::vector<std::string> comments;          // leading '#' lines in CSV
    std::optional<std::string> label_column;    // e.g. "initial"
    std::vector<std::string> labels;            // one per row when label_column
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> cells;
};

/// Evaluates the grid in row-major order (first axis outermost).
SweepTable sweep(const SweepSpec& spec);

/// Canned sweep presets for the standard comparison surfaces; see
/// figure_names() for the catalogue and the README for what each one pins.
SweepTable figure_sweep(const std::string& id);
std::vector<std::string> figure_names();

enum class OptimizeObjective { Concurrence, ConcurrenceAtMinSuccess };

struct OptimizeResult {
    ProtocolParams params;       // base with the optimized strengths filled in
    double concurrence = 0.0;
    double success_prob = 0.0;
    bool feasible = true;        // false when no grid point meets the constraint
};

/// Maximizes concurrence over the named reversal strengths (subset of
/// q1, q2, q3), each on [0, 0.999], by a coordinate scan followed by
/// golden-section refinement, cycled three times. With
/// ConcurrenceAtMinSuccess the search maximizes concurrence subject to
/// success_prob >= min_success and reports infeasibility explicitly.
OptimizeResult optimize_reversal(const ProtocolParams& base, const std::vector<std::string>& which,
                                 OptimizeObjective objective = OptimizeObjective::Concurrence,
                                 double min_success = 0.0);

struct ParetoPoint {
    ProtocolParams params;
    double concurrence = 0.0;
    double success_prob = 0.0;
};

/// Non-dominated (concurrence, success probability) pairs over a grid of
/// the named free parameters (axis names as in SweepAxis), each sampled
/// with `grid_density` points on [0, 0.999]. Sorted by success descending.
std::vector<ParetoPoint> pareto_frontier(const ProtocolParams& base,
                                         const std::vector<std::string>& free,
                                         int grid_density);

}  // namespace entloc
