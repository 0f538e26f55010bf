#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "entloc/explorer.hpp"
#include "support/test_support.hpp"

using namespace entloc;
using namespace entloc::testing;

namespace {

std::size_t column_index(const SweepTable& table, const std::string& name) {
    const auto it = std::find(table.columns.begin(), table.columns.end(), name);
    REQUIRE(it != table.columns.end());
    return static_cast<std::size_t>(it - table.columns.begin());
}

}  // namespace

TEST_CASE("sweep grids are row-major with the first axis outermost") {
    SweepSpec spec;
    spec.base.strategy = Strategy::FullyLocal;
    spec.axes = {{"p3", 0.0, 0.6, 3}, {"q3", 0.0, 0.2, 2}};
    spec.outputs = {SweepOutput::Concurrence};
    const SweepTable table = sweep(spec);

    REQUIRE(table.cells.size() == 6);
    CHECK(*table.cells[0][0] == 0.0);
    CHECK(*table.cells[0][1] == 0.0);
    CHECK(*table.cells[1][0] == 0.0);
    CHECK(*table.cells[1][1] == 0.2);
    CHECK(*table.cells[2][0] == 0.3);
    CHECK(*table.cells[5][0] == 0.6);
    CHECK(*table.cells[5][1] == 0.2);
}

TEST_CASE("sweep validation") {
    SweepSpec spec;
    spec.outputs = {SweepOutput::Concurrence};
    spec.axes = {{"bogus", 0.0, 1.0, 4}};
    CHECK_THROWS_AS(sweep(spec), std::invalid_argument);

    spec.axes = {{"p1", 0.0, 1.0, 1}};
    CHECK_THROWS_AS(sweep(spec), std::invalid_argument);

    spec.axes = {{"p1", 0.0, 1.0, 4}, {"p2", 0.0, 1.0, 4}, {"q1", 0.0, 1.0, 4}};
    CHECK_THROWS_AS(sweep(spec), std::invalid_argument);

    spec.axes = {{"p1", 0.0, 1.0, 4}};
    spec.outputs.clear();
    CHECK_THROWS_AS(sweep(spec), std::invalid_argument);
}

TEST_CASE("closed forms track the simulation on every sweep row") {
    SweepSpec spec;
    spec.base.strategy = Strategy::Distributed;
    spec.base.q1 = spec.base.q2 = 0.8;
    spec.base.noise = NoiseKind::AmplitudeDamping;
    spec.axes = {{"p12", 0.0, 0.9, 7}, {"d12", 0.0, 0.9, 7}};
    spec.outputs = {SweepOutput::Concurrence, SweepOutput::ClosedFormConcurrence,
                    SweepOutput::ClosedFormSuccess, SweepOutput::SuccessProb};
    const SweepTable table = sweep(spec);

    const std::size_t dev = column_index(table, "deviation");
    const std::size_t sdev = column_index(table, "success_deviation");
    for (const auto& row : table.cells) {
        REQUIRE(row[dev].has_value());
        CHECK(*row[dev] <= 1e-9);
        CHECK(*row[sdev] <= 1e-9);
    }
}

TEST_CASE("pair-concurrence columns for the other qubit pairings") {
    SweepSpec spec;
    spec.base.strategy = Strategy::Distributed;
    spec.base.p1 = spec.base.p2 = 0.1;
    spec.axes = {{"q12", 0.0, 0.99, 5}};
    spec.outputs = {SweepOutput::Concurrence, SweepOutput::C13, SweepOutput::C23};
    const SweepTable table = sweep(spec);

    const std::size_t c13 = column_index(table, "c13");
    const std::size_t c23 = column_index(table, "c23");
    for (const auto& row : table.cells) {
        ProtocolParams params = spec.base;
        params.q1 = params.q2 = *row[0];
        const ProtocolOutcome out = run(params);
        CHECK(std::abs(*row[c13] - concurrence(out.rho_full.reduced({2}).matrix()).value) <=
              1e-12);
        CHECK(std::abs(*row[c23] - concurrence(out.rho_full.reduced({1}).matrix()).value) <=
              1e-12);
        // Symmetric strengths on a symmetric state keep the two assisted
        // pairings equal.
        CHECK(std::abs(*row[c13] - *row[c23]) <= 1e-10);
    }
}

TEST_CASE("figure preset: damping surface") {
    const SweepTable table = figure_sweep("fig2a");
    REQUIRE(table.cells.size() == 1024);
    const std::size_t conc = column_index(table, "concurrence");
    const std::size_t closed = column_index(table, "closed_form_concurrence");

    // Corner anchor: no damping leaves the bare pair value.
    CHECK(*table.cells[0][0] == 0.0);
    CHECK(std::abs(*table.cells[0][conc] - 0.5) <= 1e-12);

    for (const auto& row : table.cells) {
        const double d1 = *row[0];
        const double d2 = *row[1];
        CHECK(std::abs(*row[conc] - 0.5 * std::sqrt((1.0 - d1) * (1.0 - d2))) <= 1e-9);
        CHECK(std::abs(*row[closed] - *row[conc]) <= 1e-9);
    }
}

TEST_CASE("figure preset: distributed strengths surface") {
    const SweepTable table = figure_sweep("fig1a");
    REQUIRE(table.cells.size() == 1024);
    const std::size_t conc = column_index(table, "concurrence");
    const std::size_t dev = column_index(table, "deviation");

    // At zero measurement strength the strong reversal almost purifies the
    // pair: 100/101 with q1 = q2 = 0.99.
    CHECK(std::abs(*table.cells[0][conc] - 100.0 / 101.0) <= 1e-12);
    for (const auto& row : table.cells) CHECK(*row[dev] <= 1e-9);
}

TEST_CASE("figure preset: fully local surface peaks at strong measurement") {
    const SweepTable table = figure_sweep("fig1b");
    const std::size_t conc = column_index(table, "concurrence");
    double best = -1.0;
    double best_p3 = -1.0;
    for (const auto& row : table.cells) {
        if (*row[conc] > best) {
            best = *row[conc];
            best_p3 = *row[0];
        }
    }
    CHECK(best_p3 == doctest::Approx(31.0 / 32.0));
}

TEST_CASE("figure preset: varied initial states stay above the unmeasured baseline") {
    const SweepTable table = figure_sweep("fig4b");
    REQUIRE(table.label_column.has_value());
    REQUIRE(table.labels.size() == table.cells.size());
    const std::size_t conc = column_index(table, "concurrence");

    ProtocolParams baseline;
    baseline.strategy = Strategy::Distributed;
    baseline.noise = NoiseKind::AmplitudeDamping;
    baseline.d1 = baseline.d2 = 0.6;

    for (std::size_t r = 0; r < table.cells.size(); ++r) {
        if (table.labels[r] == "gw-mixed") continue;
        baseline.initial = InitialState::parse(table.labels[r]);
        const double unmeasured = run(baseline).concurrence;
        CHECK(*table.cells[r][conc] > unmeasured);
    }
}

TEST_CASE("optimize sweeps carry the tuned strengths as columns") {
    SweepSpec spec;
    spec.base.strategy = Strategy::FullyLocal;
    spec.base.noise = NoiseKind::Depolarizing;
    spec.base.d1 = spec.base.d2 = 0.2;
    spec.axes = {{"p3", 0.0, 0.9, 4}};
    spec.outputs = {SweepOutput::Concurrence};
    spec.optimize_reversal = {"q3"};
    const SweepTable table = sweep(spec);

    const std::size_t qopt = column_index(table, "q3_opt");
    const std::size_t conc = column_index(table, "concurrence");
    for (const auto& row : table.cells) {
        CHECK(*row[qopt] >= 0.0);
        CHECK(*row[qopt] <= 0.999);
        CHECK(*row[conc] >= 0.0);
    }
}

TEST_CASE("unknown figure preset names every valid one") {
    CHECK_THROWS_WITH_AS(figure_sweep("fig9z"),
                         doctest::Contains("fig1a"), std::invalid_argument);
    CHECK(figure_names().size() == 10);
}

TEST_CASE("unconstrained optimization drives the reversal to the boundary") {
    ProtocolParams base;
    base.strategy = Strategy::Distributed;
    base.p1 = base.p2 = 0.5;
    const OptimizeResult result = optimize_reversal(base, {"q1", "q2"});
    CHECK(result.params.q1 >= 0.998);
    CHECK(result.params.q2 >= 0.998);
    // 0.5/(0.5 + 0.001) at the capped corner.
    CHECK(result.concurrence >= 0.998);
    CHECK(result.feasible);
}

TEST_CASE("empty coordinate set returns the base point") {
    ProtocolParams base;
    base.strategy = Strategy::FullyLocal;
    base.p3 = 0.3;
    base.q3 = 0.5;
    const OptimizeResult result = optimize_reversal(base, {});
    CHECK(result.params.q3 == 0.5);
    CHECK(std::abs(result.concurrence - run(base).concurrence) <= 1e-15);
}

TEST_CASE("constrained optimization against a dense-grid oracle") {
    ProtocolParams base;
    base.strategy = Strategy::Distributed;
    base.p1 = base.p2 = 0.1;
    base.noise = NoiseKind::AmplitudeDamping;
    base.d1 = base.d2 = 0.6;

    const double floor = 0.25;
    const OptimizeResult result = optimize_reversal(
        base, {"q1", "q2"}, OptimizeObjective::ConcurrenceAtMinSuccess, floor);
    CHECK(result.feasible);
    CHECK(result.success_prob >= floor - 1e-9);

    const OptimizeResult unconstrained = optimize_reversal(base, {"q1", "q2"});
    CHECK(result.concurrence < unconstrained.concurrence);

    // Brute force over a tied dense grid.
    double oracle = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        ProtocolParams probe = base;
        probe.q1 = probe.q2 = 0.999 * i / 1000;
        const ProtocolOutcome out = run(probe);
        if (!out.postselection_impossible && out.success_prob >= floor) {
            oracle = std::max(oracle, out.concurrence);
        }
    }
    CHECK(std::abs(result.concurrence - oracle) <= 1e-3);
}

TEST_CASE("optimization never loses to a 100-point scan") {
    for (NoiseKind noise : {NoiseKind::None, NoiseKind::AmplitudeDamping}) {
        ProtocolParams base;
        base.strategy = Strategy::Distributed;
        base.p1 = base.p2 = 0.3;
        base.noise = noise;
        base.d1 = base.d2 = noise == NoiseKind::None ? 0.0 : 0.4;

        const OptimizeResult result = optimize_reversal(base, {"q1", "q2"});
        double scan_best = 0.0;
        for (int i = 0; i < 100; ++i) {
            ProtocolParams probe = base;
            probe.q1 = probe.q2 = 0.999 * i / 99;
            scan_best = std::max(scan_best, run(probe).concurrence);
        }
        CHECK(result.concurrence >= scan_best - 1e-6);
    }
}

TEST_CASE("infeasible constraint is reported, not approximated away") {
    ProtocolParams base;
    base.strategy = Strategy::Distributed;
    base.p1 = base.p2 = 0.5;
    const OptimizeResult result = optimize_reversal(
        base, {"q1", "q2"}, OptimizeObjective::ConcurrenceAtMinSuccess, 0.9);
    CHECK(!result.feasible);

    CHECK_THROWS_AS(optimize_reversal(base, {"p1"}), std::invalid_argument);
    CHECK_THROWS_AS(
        optimize_reversal(base, {"q1"}, OptimizeObjective::ConcurrenceAtMinSuccess, 0.0),
        std::invalid_argument);
}

TEST_CASE("depolarizing noise favours the fully local strategy at its best point") {
    ProtocolParams local;
    local.strategy = Strategy::FullyLocal;
    local.noise = NoiseKind::Depolarizing;
    local.d1 = local.d2 = 0.2;
    local.p3 = 0.99;
    const OptimizeResult local_best = optimize_reversal(local, {"q3"});
    CHECK(local_best.concurrence > 0.4);

    double distributed_best = 0.0;
    for (double p : {0.0, 0.3, 0.6, 0.9}) {
        ProtocolParams dist;
        dist.strategy = Strategy::Distributed;
        dist.noise = NoiseKind::Depolarizing;
        dist.d1 = dist.d2 = 0.2;
        dist.p1 = dist.p2 = p;
        distributed_best =
            std::max(distributed_best, optimize_reversal(dist, {"q1", "q2"}).concurrence);
    }
    CHECK(local_best.concurrence >= distributed_best);
}

TEST_CASE("pareto frontier endpoints and invariants") {
    ProtocolParams base;
    base.strategy = Strategy::Distributed;
    const std::vector<ParetoPoint> frontier = pareto_frontier(base, {"q12"}, 64);
    REQUIRE(!frontier.empty());

    // Zero reversal keeps the bare state at certain success.
    CHECK(frontier.front().params.q1 == 0.0);
    CHECK(std::abs(frontier.front().success_prob - 1.0) <= 1e-12);
    CHECK(std::abs(frontier.front().concurrence - 0.5) <= 1e-12);
    CHECK(frontier.back().params.q1 == doctest::Approx(0.999).epsilon(1e-12));

    for (std::size_t i = 1; i < frontier.size(); ++i) {
        CHECK(frontier[i].success_prob <= frontier[i - 1].success_prob);
        CHECK(frontier[i].concurrence >= frontier[i - 1].concurrence);
    }
    for (const ParetoPoint& a : frontier) {
        for (const ParetoPoint& b : frontier) {
            const bool dominates = a.concurrence >= b.concurrence &&
                                   a.success_prob >= b.success_prob &&
                                   (a.concurrence > b.concurrence || a.success_prob > b.success_prob);
            CHECK((!dominates || &a == &b));
        }
    }
}

TEST_CASE("pareto frontier for the fully local measurement strength") {
    ProtocolParams base;
    base.strategy = Strategy::FullyLocal;
    base.q3 = 0.5;
    const std::vector<ParetoPoint> frontier = pareto_frontier(base, {"p3"}, 64);
    REQUIRE(!frontier.empty());
    CHECK(frontier.back().concurrence >= 0.99);

    CHECK_THROWS_AS(pareto_frontier(base, {"p3"}, 4), std::invalid_argument);
    CHECK_THROWS_AS(pareto_frontier(base, {}, 16), std::invalid_argument);
}
