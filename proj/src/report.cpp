#include "nawalk/report.hpp"

namespace nawalk {

namespace {

ClassificationReport classify_impl(const WeightedGraph& g, const std::vector<bool>& interior,
                                   const std::vector<bool>& frontier, const ClassifyOptions& options) {
    TransitionMatrix pi = real_transition_matrix(g, interior);
    ComponentDecomposition decomposition = components(pi);
    annotate_weight_scales(decomposition, g);

    // Green status for essential classes that are decided by the truncation.
    Classification pre = classify_states(pi, decomposition, {}, frontier);
    std::map<int, bool> green_infinite;
    std::map<int, GreenTrace> green_traces;
    for (size_t c = 0; c < decomposition.class_count(); ++c) {
        if (!decomposition.essential[c] || pre.class_verdict[c] == Verdict::Unknown) continue;
        ClassNetwork network =
            build_class_network(g, pi, decomposition.classes[c], decomposition.classes[c].front());
        GreenTrace trace = class_green(network, options.budget, options.window);
        green_infinite[static_cast<int>(c)] = trace.infinite();
        green_traces.emplace(static_cast<int>(c), std::move(trace));
    }

    Classification verdicts = classify_states(pi, decomposition, green_infinite, frontier);

    ClassificationReport report;
    report.field_denom = g.context().denom;
    report.names = pi.names;
    report.class_of = decomposition.class_of;
    report.interior = interior;
    report.budget = options.budget;
    report.budget_limited = verdicts.any_unknown();
    report.classes.reserve(decomposition.class_count());
    for (size_t c = 0; c < decomposition.class_count(); ++c) {
        ClassSummary summary;
        for (VertexId v : decomposition.classes[c]) summary.members.push_back(pi.names[v]);
        summary.essential = decomposition.essential[c];
        summary.verdict = verdicts.class_verdict[c];
        summary.reason = verdicts.class_reason[c];
        summary.weight_valuation = decomposition.class_weight_valuation[c];
        auto trace = green_traces.find(static_cast<int>(c));
        if (trace != green_traces.end()) summary.green = trace->second;
        report.classes.push_back(std::move(summary));
    }
    return report;
}

} // namespace

ClassificationReport classify_weighted_graph(const WeightedGraph& g, const std::vector<bool>& interior,
                                             const ClassifyOptions& options) {
    return classify_impl(g, interior, {}, options);
}

ClassificationReport classify_truncation(const Truncation& truncation, const ClassifyOptions& options) {
    std::vector<bool> interior(truncation.graph.vertex_count(), true);
    return classify_impl(truncation.graph, interior, truncation.frontier, options);
}

Json green_trace_to_json(const GreenTrace& trace) {
    Json out;
    Json values = Json::array();
    for (const GreenValue& v : trace.values) values.push_back(v.to_string());
    out["trace"] = values;
    Json status;
    switch (trace.status.kind) {
        case GreenStatus::Kind::ExactInfinity:
            status["kind"] = "ExactInfinity";
            status["first_index"] = trace.status.step;
            break;
        case GreenStatus::Kind::Stabilized:
            status["kind"] = "Stabilized";
            status["value"] = to_string(trace.status.value);
            status["since_step"] = trace.status.step;
            status["window"] = trace.status.window;
            status["exhausted"] = trace.status.exhausted;
            break;
        case GreenStatus::Kind::LowerBound:
            status["kind"] = "LowerBound";
            status["value"] = to_string(trace.status.value);
            status["budget"] = trace.status.budget;
            break;
    }
    out["status"] = status;
    return out;
}

Json report_to_json(const ClassificationReport& report) {
    Json out;
    out["field"] = Json{{"denom", report.field_denom}};
    Json interior = Json::array();
    for (size_t x = 0; x < report.names.size(); ++x)
        if (report.interior[x]) interior.push_back(report.names[x]);
    out["interior"] = interior;

    Json vertices = Json::array();
    for (size_t x = 0; x < report.names.size(); ++x) {
        const ClassSummary& summary = report.classes[static_cast<size_t>(report.class_of[x])];
        Json v;
        v["name"] = report.names[x];
        v["class"] = report.class_of[x];
        v["essential"] = summary.essential;
        v["verdict"] = to_string(summary.verdict);
        v["justification"] = to_string(summary.reason);
        if (summary.weight_valuation)
            v["b_scale_ord"] = to_string(*summary.weight_valuation);
        else
            v["b_scale_ord"] = nullptr;
        vertices.push_back(std::move(v));
    }
    out["vertices"] = vertices;

    Json classes = Json::array();
    for (size_t c = 0; c < report.classes.size(); ++c) {
        const ClassSummary& summary = report.classes[c];
        Json item;
        item["id"] = c;
        item["members"] = summary.members;
        item["essential"] = summary.essential;
        item["verdict"] = to_string(summary.verdict);
        item["justification"] = to_string(summary.reason);
        if (summary.weight_valuation)
            item["b_scale_ord"] = to_string(*summary.weight_valuation);
        else
            item["b_scale_ord"] = nullptr;
        if (summary.green) item["green"] = green_trace_to_json(*summary.green);
        classes.push_back(std::move(item));
    }
    out["classes"] = classes;
    out["budget"] = report.budget;
    out["budget_limited"] = report.budget_limited;
    return out;
}

Json transition_to_json(const TransitionMatrix& pi) {
    Json out;
    Json rows = Json::array();
    for (VertexId x = 0; x < pi.state_count(); ++x) {
        Json row;
        row["state"] = pi.names[x];
        row["absorbing"] = static_cast<bool>(pi.absorbing[x]);
        Json entries = Json::object();
        for (const auto& [y, p] : pi.rows[x]) entries[pi.names[y]] = to_string(p);
        row["to"] = entries;
        rows.push_back(std::move(row));
    }
    out["states"] = rows;
    return out;
}

} // namespace nawalk
