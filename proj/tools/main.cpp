#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "entloc/explorer.hpp"
#include "entloc/protocols.hpp"
#include "report.hpp"

namespace {

using namespace entloc;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;

struct SharedFlags {
    std::string strategy = "distributed";
    std::string noise = "none";
    std::string initial = "paper-default";
    std::string out_path;
    std::string format;  // "json" or "csv"; per-command default when empty
    double p1 = 0, p2 = 0, p3 = 0;
    double q1 = 0, q2 = 0, q3 = 0;
    double d1 = 0, d2 = 0;
};

ProtocolParams build_params(const SharedFlags& flags) {
    ProtocolParams params;
    params.strategy = *parse_strategy(flags.strategy);
    params.noise = *parse_noise_kind(flags.noise);
    params.initial = InitialState::parse(flags.initial);  // throws on bad syntax
    params.p1 = flags.p1;
    params.p2 = flags.p2;
    params.p3 = flags.p3;
    params.q1 = flags.q1;
    params.q2 = flags.q2;
    params.q3 = flags.q3;
    params.d1 = flags.d1;
    params.d2 = flags.d2;
    return params;
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file '" + out_path + "'");
    file << content;
}

SweepAxis parse_axis_spec(const std::string& spec) {
    std::istringstream in(spec);
    SweepAxis axis;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!std::getline(in, axis.param, ':') ||
        !(in >> axis.min >> c1 >> axis.max >> c2 >> axis.steps) || c1 != ':' || c2 != ':' ||
        (in >> c3)) {
        throw std::invalid_argument("--axis expects name:min:max:steps, got '" + spec + "'");
    }
    return axis;
}

std::vector<std::string> split_csv_list(const std::string& text) {
    std::vector<std::string> items;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

std::vector<std::string> expand_free_names(const std::vector<std::string>& raw, Strategy strategy,
                                           bool tied_axes) {
    std::vector<std::string> names;
    for (const std::string& name : raw) {
        if (name == "q") {
            if (strategy == Strategy::Distributed) {
                if (tied_axes) names.push_back("q12");
                else { names.push_back("q1"); names.push_back("q2"); }
            } else if (strategy == Strategy::FullyLocal) {
                names.push_back("q3");
            } else {
                throw std::invalid_argument("--free q: the projective baseline has no reversal");
            }
        } else if (name == "p" && tied_axes) {
            names.push_back(strategy == Strategy::FullyLocal ? "p3" : "p12");
        } else if (name == "pq" && tied_axes) {
            names.push_back(strategy == Strategy::FullyLocal ? "p3" : "p12");
            names.push_back(strategy == Strategy::FullyLocal ? "q3" : "q12");
        } else {
            names.push_back(name);
        }
    }
    return names;
}

int cmd_demo(const SharedFlags& flags) {
    if (!flags.format.empty() && flags.format != "json") {
        std::cerr << "demo: only json output is available\n";
        return kExitUsage;
    }
    write_output(flags.out_path, report::demo_report().dump());
    return kExitOk;
}

int cmd_localize(const SharedFlags& flags) {
    const ProtocolParams params = build_params(flags);
    const ProtocolOutcome outcome = run(params);
    if (flags.format == "csv") {
        write_output(flags.out_path, report::localize_csv(outcome));
    } else {
        write_output(flags.out_path, report::run_report(params, outcome).dump());
    }
    return kExitOk;
}

int cmd_verify(const SharedFlags& flags, int grid) {
    const VerifyReport report = verify_closed_forms(grid);
    write_output(flags.out_path, report::verify_text(report, grid));
    return report.pass() ? kExitOk : kExitVerifyFailure;
}

int cmd_sweep(const SharedFlags& flags, const std::string& figure,
              const std::vector<std::string>& axis_specs, const std::string& outputs_list) {
    SweepTable table;
    if (!figure.empty()) {
        if (!axis_specs.empty() || !outputs_list.empty()) {
            std::cerr << "sweep: --figure cannot be combined with --axis/--outputs\n";
            return kExitUsage;
        }
        table = figure_sweep(figure);
    } else {
        if (axis_specs.empty()) {
            std::cerr << "sweep: pass --figure <preset> or one or two --axis specs\n";
            return kExitUsage;
        }
        SweepSpec spec;
        spec.base = build_params(flags);
        for (const std::string& text : axis_specs) spec.axes.push_back(parse_axis_spec(text));
        if (outputs_list.empty()) {
            spec.outputs = {SweepOutput::Concurrence, SweepOutput::SuccessProb,
                            SweepOutput::ClosedFormConcurrence, SweepOutput::ClosedFormSuccess};
        } else {
            for (const std::string& name : split_csv_list(outputs_list)) {
                const auto out = parse_sweep_output(name);
                if (!out) throw std::invalid_argument("unknown sweep output '" + name + "'");
                spec.outputs.push_back(*out);
            }
        }
        table = sweep(spec);
    }

    if (flags.format == "json") {
        report::Json rows = report::Json::array();
        for (std::size_t r = 0; r < table.cells.size(); ++r) {
            report::Json row = report::Json::object();
            if (table.label_column) {
                row.add(*table.label_column, report::Json::string(table.labels[r]));
            }
            for (std::size_t c = 0; c < table.columns.size(); ++c) {
                if (table.cells[r][c]) {
                    row.add(table.columns[c], report::Json::number(*table.cells[r][c]));
                }
            }
            rows.push(std::move(row));
        }
        write_output(flags.out_path, rows.dump());
    } else {
        write_output(flags.out_path, report::to_csv(table));
    }
    return kExitOk;
}

int cmd_optimize(const SharedFlags& flags, const std::string& free_list, double min_success,
                 bool constrained) {
    const ProtocolParams base = build_params(flags);
    std::vector<std::string> free;
    if (free_list.empty()) {
        if (base.strategy == Strategy::Distributed) free = {"q1", "q2"};
        else if (base.strategy == Strategy::FullyLocal) free = {"q3"};
    } else {
        free = expand_free_names(split_csv_list(free_list), base.strategy, false);
    }

    const OptimizeResult result = optimize_reversal(
        base, free,
        constrained ? OptimizeObjective::ConcurrenceAtMinSuccess : OptimizeObjective::Concurrence,
        min_success);
    write_output(flags.out_path,
                 report::optimize_report(base, free, result, constrained, min_success).dump());
    return kExitOk;
}

int cmd_pareto(const SharedFlags& flags, const std::string& free_list, int density) {
    const ProtocolParams base = build_params(flags);
    const std::vector<std::string> free =
        expand_free_names(split_csv_list(free_list.empty() ? "q" : free_list), base.strategy, true);
    const std::vector<ParetoPoint> frontier = pareto_frontier(base, free, density);
    if (flags.format == "csv") {
        write_output(flags.out_path, report::pareto_csv(free, frontier));
    } else {
        write_output(flags.out_path, report::pareto_report(base, free, density, frontier).dump());
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weak measurement and reversal explorer for three-qubit entanglement localization"};
    app.require_subcommand(1);
    app.set_config("--params", "", "flat key=value file with the shared flag names; flags override");

    SharedFlags flags;
    app.add_option("--strategy", flags.strategy, "distributed | local | projective")
        ->check(CLI::IsMember({"distributed", "local", "projective"}));
    app.add_option("--p1", flags.p1, "weak measurement strength, qubit 1")->check(CLI::Range(0.0, 1.0));
    app.add_option("--p2", flags.p2, "weak measurement strength, qubit 2")->check(CLI::Range(0.0, 1.0));
    app.add_option("--p3", flags.p3, "weak measurement strength, qubit 3")->check(CLI::Range(0.0, 1.0));
    app.add_option("--q1", flags.q1, "reversal strength, qubit 1")->check(CLI::Range(0.0, 1.0));
    app.add_option("--q2", flags.q2, "reversal strength, qubit 2")->check(CLI::Range(0.0, 1.0));
    app.add_option("--q3", flags.q3, "reversal strength, qubit 3")->check(CLI::Range(0.0, 1.0));
    app.add_option("--noise", flags.noise, "none | ad | dp | pd")
        ->check(CLI::IsMember({"none", "ad", "dp", "pd"}));
    app.add_option("--d1", flags.d1, "noise strength on qubit 1")->check(CLI::Range(0.0, 1.0));
    app.add_option("--d2", flags.d2, "noise strength on qubit 2")->check(CLI::Range(0.0, 1.0));
    app.add_option("--initial", flags.initial,
                   "paper-default | equal-w | gw-mixed | w:a1,a2,a3 (rescaled to unit norm)");
    app.add_option("--out", flags.out_path, "write output to this file instead of stdout");
    app.add_option("--format", flags.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* demo = app.add_subcommand("demo", "baseline numbers for the default state");
    CLI::App* localize = app.add_subcommand("localize", "run one protocol configuration");
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "evaluate a parameter grid to CSV/JSON");
    CLI::App* verify = app.add_subcommand("verify", "cross-check closed forms against the pipeline");
    CLI::App* optimize = app.add_subcommand("optimize", "tune reversal strengths");
    CLI::App* pareto = app.add_subcommand("pareto", "concurrence vs success-probability frontier");

    std::string figure;
    std::vector<std::string> axis_specs;
    std::string outputs_list;
    sweep_cmd->add_option("--figure", figure, "named preset; see README for the catalogue");
    sweep_cmd->add_option("--axis", axis_specs, "axis as name:min:max:steps (repeat for 2-D)")
        ->expected(0, 2);
    sweep_cmd->add_option("--outputs", outputs_list, "comma list of output columns");

    int grid = 9;
    verify->add_option("--grid", grid, "grid points per free parameter")->check(CLI::Range(2, 64));

    std::string optimize_free;
    double min_success = 0.0;
    optimize->add_option("--free", optimize_free, "which of q1,q2,q3 to tune (default by strategy)");
    CLI::Option* min_success_opt =
        optimize->add_option("--min-success", min_success, "success-probability floor")
            ->check(CLI::Range(0.0, 1.0));

    std::string pareto_free;
    int density = 64;
    pareto->add_option("--free", pareto_free, "free parameters: q, p, pq or axis names");
    pareto->add_option("--density", density, "grid points per free parameter")
        ->check(CLI::Range(8, 4096));

    for (CLI::App* sub : {demo, localize, sweep_cmd, verify, optimize, pareto}) {
        sub->fallthrough();
    }

    const auto started = std::chrono::steady_clock::now();
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    int code = kExitOk;
    try {
        if (demo->parsed()) code = cmd_demo(flags);
        else if (localize->parsed()) code = cmd_localize(flags);
        else if (verify->parsed()) code = cmd_verify(flags, grid);
        else if (sweep_cmd->parsed()) code = cmd_sweep(flags, figure, axis_specs, outputs_list);
        else if (optimize->parsed()) code = cmd_optimize(flags, optimize_free, min_success,
                                                         min_success_opt->count() > 0);
        else if (pareto->parsed()) code = cmd_pareto(flags, pareto_free, density);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    const auto elapsed = std::chrono::duration<double, std::milli>(
        std::chrono::steady_clock::now() - started);
    std::cerr << "elapsed_ms=" << elapsed.count() << "\n";
    return code;
}
