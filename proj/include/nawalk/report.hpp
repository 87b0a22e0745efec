#pragma once

#include "nawalk/green.hpp"

#include "json.hpp"

namespace nawalk {

using Json = nlohmann::ordered_json;

struct ClassSummary {
    std::vector<std::string> members;
    bool essential = false;
    Verdict verdict = Verdict::Unknown;
    Reason reason = Reason::BudgetExhausted;
    std::optional<Rational> weight_valuation;  // ord of b(x) on the class
    std::optional<GreenTrace> green;           // for decided essential classes
};

struct ClassificationReport {
    unsigned field_denom = 1;
    std::vector<std::string> names;    // per vertex
    std::vector<int> class_of;         // per vertex
    std::vector<bool> interior;        // U
    std::vector<ClassSummary> classes;
    size_t budget = 0;
    bool budget_limited = false;
};

struct ClassifyOptions {
    size_t budget = 10;
    size_t window = 3;
};

ClassificationReport classify_weighted_graph(const WeightedGraph& g, const std::vector<bool>& interior,
                                             const ClassifyOptions& options = {});

// Classification of a generator truncation; classes whose forward closure
// touches the frontier stay Unknown.
ClassificationReport classify_truncation(const Truncation& truncation,
                                         const ClassifyOptions& options = {});

Json report_to_json(const ClassificationReport& report);
Json green_trace_to_json(const GreenTrace& trace);
Json transition_to_json(const TransitionMatrix& pi);

} // namespace nawalk
