#include "report.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "entloc/format.hpp"

namespace entloc::report {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out += c;
        }
    }
    return out;
}

double get_axis_value(const ProtocolParams& p, const std::string& name) {
    if (name == "p1" || name == "p12") return p.p1;
    if (name == "p2") return p.p2;
    if (name == "p3") return p.p3;
    if (name == "q1" || name == "q12") return p.q1;
    if (name == "q2") return p.q2;
    if (name == "q3") return p.q3;
    if (name == "d1" || name == "d12") return p.d1;
    return p.d2;
}

}  // namespace

Json Json::object() { return Json{}; }

Json Json::array() {
    Json j;
    j.type_ = Type::Array;
    return j;
}

Json Json::number(double v) {
    Json j;
    j.type_ = Type::Number;
    j.number_ = v;
    return j;
}

Json Json::string(std::string v) {
    Json j;
    j.type_ = Type::String;
    j.string_ = std::move(v);
    return j;
}

Json Json::boolean(bool v) {
    Json j;
    j.type_ = Type::Bool;
    j.bool_ = v;
    return j;
}

Json& Json::add(const std::string& key, Json value) {
    if (type_ != Type::Object) throw std::logic_error("Json::add on a non-object");
    members_.emplace_back(key, std::move(value));
    return *this;
}

Json& Json::push(Json value) {
    if (type_ != Type::Array) throw std::logic_error("Json::push on a non-array");
    elements_.push_back(std::move(value));
    return *this;
}

void Json::write(std::string& out, int depth) const {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    const std::string inner_pad(static_cast<std::size_t>(depth + 1) * 2, ' ');
    switch (type_) {
        case Type::Number: out += format_number(number_); break;
        case Type::Bool: out += bool_ ? "true" : "false"; break;
        case Type::String:
            out += '"';
            out += escape(string_);
            out += '"';
            break;
        case Type::Object: {
            if (members_.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            for (std::size_t i = 0; i < members_.size(); ++i) {
                out += inner_pad;
                out += '"';
                out += escape(members_[i].first);
                out += "\": ";
                members_[i].second.write(out, depth + 1);
                if (i + 1 < members_.size()) out += ',';
                out += '\n';
            }
            out += pad;
            out += '}';
            break;
        }
        case Type::Array: {
            if (elements_.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            for (std::size_t i = 0; i < elements_.size(); ++i) {
                out += inner_pad;
                elements_[i].write(out, depth + 1);
                if (i + 1 < elements_.size()) out += ',';
                out += '\n';
            }
            out += pad;
            out += ']';
            break;
        }
    }
}

std::string Json::dump() const {
    std::string out;
    write(out, 0);
    out += '\n';
    return out;
}

namespace {

// Labels such as custom initial-state names contain commas; quote those
// fields so the tables stay one column per header entry.
std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

}  // namespace

std::string to_csv(const SweepTable& table) {
    std::string out;
    for (const std::string& comment : table.comments) {
        out += "# " + comment + "\n";
    }
    if (table.label_column) out += csv_field(*table.label_column) + ",";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out += table.columns[c];
        out += (c + 1 < table.columns.size()) ? ',' : '\n';
    }
    for (std::size_t r = 0; r < table.cells.size(); ++r) {
        if (table.label_column) out += csv_field(table.labels[r]) + ",";
        const auto& row = table.cells[r];
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (row[c]) out += format_number(*row[c]);
            out += (c + 1 < row.size()) ? ',' : '\n';
        }
    }
    return out;
}

Json params_json(const ProtocolParams& params) {
    Json j = Json::object();
    j.add("strategy", Json::string(to_string(params.strategy)));
    j.add("p1", Json::number(params.p1));
    j.add("p2", Json::number(params.p2));
    j.add("p3", Json::number(params.p3));
    j.add("q1", Json::number(params.q1));
    j.add("q2", Json::number(params.q2));
    j.add("q3", Json::number(params.q3));
    j.add("noise", Json::string(to_string(params.noise)));
    j.add("d1", Json::number(params.d1));
    j.add("d2", Json::number(params.d2));
    j.add("initial", Json::string(params.initial.name()));
    if (params.initial.normalization_factor != 1.0) {
        j.add("initial_normalization", Json::number(params.initial.normalization_factor));
    }
    return j;
}

Json run_report(const ProtocolParams& params, const ProtocolOutcome& outcome) {
    Json j = Json::object();
    j.add("params", params_json(params));

    Json sim = Json::object();
    if (!outcome.postselection_impossible) {
        sim.add("concurrence", Json::number(outcome.concurrence));
    }
    sim.add("success_prob", Json::number(outcome.success_prob));
    j.add("simulated", std::move(sim));

    if (outcome.closed_form_concurrence || outcome.closed_form_success) {
        Json closed = Json::object();
        Json deviation = Json::object();
        if (outcome.closed_form_concurrence) {
            closed.add("concurrence", Json::number(*outcome.closed_form_concurrence));
            if (!outcome.postselection_impossible) {
                deviation.add("concurrence", Json::number(std::abs(
                                                 outcome.concurrence -
                                                 *outcome.closed_form_concurrence)));
            }
        }
        if (outcome.closed_form_success) {
            closed.add("success_prob", Json::number(*outcome.closed_form_success));
            deviation.add("success_prob", Json::number(std::abs(outcome.success_prob -
                                                                *outcome.closed_form_success)));
        }
        j.add("closed_form", std::move(closed));
        j.add("deviation", std::move(deviation));
    }
    if (outcome.closed_form_success_product) {
        j.add("closed_form_success_product", Json::number(*outcome.closed_form_success_product));
    }
    if (outcome.postselection_impossible) {
        j.add("warning", Json::string("postselection_impossible"));
    }
    return j;
}

Json demo_report() {
    const InitialState initial = InitialState::paper_default();
    const StateVector psi = initial.pure();
    const DensityMatrix rho = pure_to_density(psi);
    const DensityMatrix pair = rho.reduced({3});

    ProtocolParams params;
    params.strategy = Strategy::ProjectiveBaseline;
    const ProtocolOutcome projective = run(params);

    Json j = Json::object();
    j.add("initial", Json::string(initial.name()));
    j.add("concurrence", Json::number(concurrence(pair.matrix()).value));
    j.add("coa", Json::number(concurrence_of_assistance(psi, {1, 2})));
    Json proj = Json::object();
    proj.add("success_prob", Json::number(projective.success_prob));
    proj.add("concurrence", Json::number(projective.concurrence));
    j.add("projective", std::move(proj));
    return j;
}

Json optimize_report(const ProtocolParams& base, const std::vector<std::string>& free,
                     const OptimizeResult& result, bool constrained, double min_success) {
    Json j = Json::object();
    j.add("params", params_json(base));
    Json names = Json::array();
    for (const std::string& name : free) names.push(Json::string(name));
    j.add("free", std::move(names));
    j.add("objective", Json::string(constrained ? "concurrence_at_min_success" : "concurrence"));
    if (constrained) j.add("min_success", Json::number(min_success));

    Json optimal = Json::object();
    for (const std::string& name : free) {
        optimal.add(name, Json::number(get_axis_value(result.params, name)));
    }
    j.add("optimal", std::move(optimal));
    j.add("concurrence", Json::number(result.concurrence));
    j.add("success_prob", Json::number(result.success_prob));
    j.add("feasible", Json::boolean(result.feasible));
    return j;
}

Json pareto_report(const ProtocolParams& base, const std::vector<std::string>& free,
                   int density, const std::vector<ParetoPoint>& frontier) {
    Json j = Json::object();
    j.add("params", params_json(base));
    Json names = Json::array();
    for (const std::string& name : free) names.push(Json::string(name));
    j.add("free", std::move(names));
    j.add("density", Json::number(density));

    Json points = Json::array();
    for (const ParetoPoint& point : frontier) {
        Json entry = Json::object();
        for (const std::string& name : free) {
            entry.add(name, Json::number(get_axis_value(point.params, name)));
        }
        entry.add("concurrence", Json::number(point.concurrence));
        entry.add("success_prob", Json::number(point.success_prob));
        points.push(std::move(entry));
    }
    j.add("points", std::move(points));
    return j;
}

std::string pareto_csv(const std::vector<std::string>& free,
                       const std::vector<ParetoPoint>& frontier) {
    std::string out;
    for (const std::string& name : free) out += name + ",";
    out += "concurrence,success_prob\n";
    for (const ParetoPoint& point : frontier) {
        for (const std::string& name : free) {
            out += format_number(get_axis_value(point.params, name)) + ",";
        }
        out += format_number(point.concurrence) + "," + format_number(point.success_prob) + "\n";
    }
    return out;
}

std::string localize_csv(const ProtocolOutcome& outcome) {
    std::string out = "concurrence,success_prob,closed_form_concurrence,deviation,"
                      "closed_form_success,success_deviation\n";
    if (!outcome.postselection_impossible) out += format_number(outcome.concurrence);
    out += ",";
    out += format_number(outcome.success_prob);
    out += ",";
    if (outcome.closed_form_concurrence) {
        out += format_number(*outcome.closed_form_concurrence);
        out += ",";
        if (!outcome.postselection_impossible) {
            out += format_number(std::abs(outcome.concurrence - *outcome.closed_form_concurrence));
        }
    } else {
        out += ",";
    }
    out += ",";
    if (outcome.closed_form_success) {
        out += format_number(*outcome.closed_form_success);
        out += "," + format_number(std::abs(outcome.success_prob - *outcome.closed_form_success));
    } else {
        out += ",";
    }
    out += "\n";
    return out;
}

std::string verify_text(const VerifyReport& report, int grid) {
    std::ostringstream out;
    out << "closed-form verification: grid " << grid << " per axis on [0, 0.99], tolerance "
        << format_number(report.tolerance) << "\n";
    for (const EquationCheck& check : report.checks) {
        out << "  " << check.name;
        for (std::size_t pad = check.name.size(); pad < 36; ++pad) out << ' ';
        out << " points=" << check.points << "  max_deviation=" << format_number(check.max_abs_deviation)
            << "  "
            << (check.informational ? "INFO (documented discrepancy, not gated)"
                                    : (check.max_abs_deviation <= report.tolerance ? "PASS" : "FAIL"))
            << "\n";
    }
    out << "overall: " << (report.pass() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

}  // namespace entloc::report
