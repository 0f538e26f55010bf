#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "entloc/explorer.hpp"
#include "entloc/protocols.hpp"

namespace entloc::report {

/// Minimal JSON document with insertion-ordered object keys. Numbers are
/// rendered through format_number so emitted reports are byte-stable.
class Json {
public:
    static Json object();
    static Json array();
    static Json number(double v);
    static Json string(std::string v);
    static Json boolean(bool v);

    Json& add(const std::string& key, Json value);  // object only
    Json& push(Json value);                         // array only

    std::string dump() const;  // pretty-printed, trailing newline

private:
    enum class Type { Object, Array, Number, String, Bool };
    Type type_ = Type::Object;
    double number_ = 0.0;
    bool bool_ = false;
    std::string string_;
    std::vector<std::pair<std::string, Json>> members_;
    std::vector<Json> elements_;

    void write(std::string& out, int depth) const;
};

std::string to_csv(const SweepTable& table);

Json params_json(const ProtocolParams& params);
Json run_report(const ProtocolParams& params, const ProtocolOutcome& outcome);
Json demo_report();
Json optimize_report(const ProtocolParams& base, const std::vector<std::string>& free,
                     const OptimizeResult& result, bool constrained, double min_success);
Json pareto_report(const ProtocolParams& base, const std::vector<std::string>& free,
                   int density, const std::vector<ParetoPoint>& frontier);
std::string pareto_csv(const std::vector<std::string>& free,
                       const std::vector<ParetoPoint>& frontier);
std::string localize_csv(const ProtocolOutcome& outcome);
std::string verify_text(const VerifyReport& report, int grid);

}  // namespace entloc::report
