#include "nawalk/green.hpp"
#include "nawalk/io.hpp"
#include "nawalk/report.hpp"
#include "nawalk/synth.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <set>

using namespace nawalk;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 2;
constexpr int exit_budget = 3;
constexpr int exit_internal = 4;

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::budget_exhausted: return exit_budget;
        case Errc::internal:
        case Errc::singular_system: return exit_internal;
        default: return exit_invalid;
    }
}

void emit(const Json& payload) { std::cout << payload.dump(2) << "\n"; }

struct LoadedGraph {
    WeightedGraph graph;
    std::vector<bool> interior;
    std::vector<bool> frontier;  // nonempty only for generator truncations
    bool from_generator = false;
};

LoadedGraph load_graph_like(const std::string& path, size_t budget) {
    LoadedInput input = load_input_file(path);
    if (input.graph) return {input.graph->graph, input.graph->interior, {}, false};
    Truncation trunc = materialize_ball(*input.generator, budget + 1);
    std::vector<bool> interior(trunc.graph.vertex_count(), true);
    return {std::move(trunc.graph), std::move(interior), std::move(trunc.frontier), true};
}

VertexSet parse_set(const LoadedGraph& lg, const std::vector<std::string>& names) {
    VertexSet set;
    for (const auto& chunk : names) {
        std::string token;
        std::istringstream in(chunk);
        while (std::getline(in, token, ','))
            if (!token.empty()) set.push_back(lg.graph.require(token));
    }
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    return set;
}

Json solution_json(const WeightedGraph& g, const DirichletSolution& sol, bool with_values) {
    Json out;
    out["base"] = g.name(sol.base);
    Json set = Json::array();
    for (VertexId x : sol.set) set.push_back(g.name(x));
    out["set"] = set;
    out["capacity"] = sol.capacity.to_literal();
    out["normalized_capacity"] = sol.normalized_capacity.to_literal();
    out["energy"] = sol.energy.to_literal();
    if (with_values) {
        Json values = Json::object();
        for (VertexId x : sol.set) values[g.name(x)] = sol.values[x].to_literal();
        out["values"] = values;
    }
    return out;
}

int run_dirichlet(const std::string& path, const std::vector<std::string>& set_names,
                  const std::string& base, size_t budget, bool with_values) {
    LoadedGraph lg = load_graph_like(path, budget);
    VertexSet set = parse_set(lg, set_names);
    DirichletSolution sol = solve_dirichlet(lg.graph, set, lg.graph.require(base));
    emit(solution_json(lg.graph, sol, with_values));
    return exit_ok;
}

Exhaustion exhaustion_for(const LoadedGraph& lg, VertexId base, size_t budget, bool& complete) {
    if (lg.from_generator) {
        complete = false;
        return ball_exhaustion(lg.graph, base, budget);
    }
    // On finite graphs the balls run to natural saturation; the budget cut
    // inside green_limit then cleanly separates lower bounds from exact
    // saturated values.
    size_t radius = budget + lg.graph.vertex_count();
    bool all_interior = true;
    for (bool flag : lg.interior) all_interior = all_interior && flag;
    complete = true;
    if (all_interior) return capped_ball_exhaustion(lg.graph, base, radius);
    if (!lg.interior[base]) fail(Errc::usage, "base vertex must be interior");
    return ball_exhaustion_within(lg.graph, base, lg.interior, radius);
}

int run_green(const std::string& path, const std::string& base_name, size_t budget, size_t window) {
    LoadedGraph lg = load_graph_like(path, budget);
    VertexId base = lg.graph.require(base_name);
    bool complete = false;
    Exhaustion ex = exhaustion_for(lg, base, budget, complete);
    GreenTrace trace = green_limit(lg.graph, ex, base, budget, window, complete);

    Json out;
    out["base"] = base_name;
    Json sizes = Json::array();
    for (size_t n = 0; n < trace.values.size(); ++n) sizes.push_back(ex[n].size());
    out["exhaustion_sizes"] = sizes;
    out.update(green_trace_to_json(trace));
    emit(out);
    return trace.status.kind == GreenStatus::Kind::LowerBound ? exit_budget : exit_ok;
}

int run_classify(const std::string& path, size_t budget, size_t window) {
    LoadedInput input = load_input_file(path);
    ClassifyOptions options{budget, window};
    ClassificationReport report;
    if (input.graph) {
        report = classify_weighted_graph(input.graph->graph, input.graph->interior, options);
    } else {
        report = classify_truncation(materialize_ball(*input.generator, budget + 1), options);
    }
    emit(report_to_json(report));
    return report.budget_limited ? exit_budget : exit_ok;
}

int run_pi(const std::string& path, size_t budget) {
    LoadedGraph lg = load_graph_like(path, budget);
    TransitionMatrix pi = real_transition_matrix(lg.graph, lg.interior);
    emit(transition_to_json(pi));
    return exit_ok;
}

Json witness_json(const IrrealizableWitness& witness, const TransitionMatrix& pi) {
    Json out;
    out["kind"] = witness.kind == IrrealizableWitness::Kind::AsymmetricArrow ? "AsymmetricArrow"
                                                                             : "InconsistentCycle";
    out["from"] = pi.names[witness.from];
    out["to"] = pi.names[witness.to];
    out["detail"] = witness.detail;
    return out;
}

int run_synth(const std::string& path, const std::string& output) {
    TransitionMatrix pi = load_transition_file(path);
    RealizabilityResult result = check_realizable(pi);
    if (!result.realizable) {
        Json out;
        out["realizable"] = false;
        out["witness"] = witness_json(result.witness, pi);
        emit(out);
        return exit_invalid;
    }
    HeightAssignment heights = finite_heights(result.decomposition);
    SynthesizedGraph witness = synthesize_graph(pi, result.weights, heights, result.decomposition);
    std::string graph_text = serialize_graph(witness.graph, witness.interior);

    Json out;
    out["realizable"] = true;
    Json beta = Json::object();
    for (VertexId x = 0; x < pi.state_count(); ++x) beta[pi.names[x]] = to_string(result.weights.beta[x]);
    out["beta"] = beta;
    Json hs = Json::array();
    for (size_t c = 0; c < heights.class_height.size(); ++c) {
        Json item;
        Json members = Json::array();
        for (VertexId v : result.decomposition.classes[c]) members.push_back(pi.names[v]);
        item["members"] = members;
        item["height"] = to_string(heights.class_height[c]);
        hs.push_back(item);
    }
    out["heights"] = hs;
    Json interior = Json::array();
    for (VertexId x = 0; x < pi.state_count(); ++x)
        if (witness.interior[x]) interior.push_back(pi.names[x]);
    out["interior"] = interior;
    if (output.empty()) {
        out["graph"] = graph_text;
    } else {
        write_file(output, graph_text);
        out["output"] = output;
    }
    emit(out);
    return exit_ok;
}

int run_roundtrip(const std::string& path) {
    TransitionMatrix pi = load_transition_file(path);
    RealizabilityResult result = check_realizable(pi);
    if (!result.realizable) {
        Json out;
        out["realizable"] = false;
        out["witness"] = witness_json(result.witness, pi);
        emit(out);
        return exit_invalid;
    }
    SynthesizedGraph witness = synthesize_graph(pi, result.weights, finite_heights(result.decomposition),
                                                result.decomposition);
    TransitionMatrix rebuilt = real_transition_matrix(witness.graph, witness.interior);
    bool equal = rebuilt == pi;
    Json out;
    out["realizable"] = true;
    out["roundtrip_exact"] = equal;
    emit(out);
    return equal ? exit_ok : exit_internal;
}

int run_simulate(const std::string& path, const std::string& start, size_t steps, size_t trials,
                 std::uint64_t seed, size_t budget) {
    LoadedGraph lg = load_graph_like(path, budget);
    TransitionMatrix pi = real_transition_matrix(lg.graph, lg.interior);
    VertexId s = pi.require(start);
    VisitStats stats = simulate(pi, s, steps, trials, seed);
    Json out;
    out["start"] = start;
    out["steps"] = stats.steps;
    out["trials"] = stats.trials;
    out["seed"] = seed;
    out["mean_visits"] = stats.mean_visits;
    out["stddev_visits"] = stats.stddev_visits;
    out["return_frequency"] = stats.return_frequency;
    out["exact_expected_visits"] = to_string(expected_visits(pi, s, steps));
    emit(out);
    return exit_ok;
}

int run_selftest() {
    int failures = 0;
    auto report = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "\n";
        if (!ok) ++failures;
    };

    // five-vertex path with boundary at 5
    GraphBuilder pb;
    pb.add_edge("1", "2", FieldElement::tau_power(-2));
    pb.add_edge("2", "3", FieldElement::tau_power(-1));
    pb.add_edge("3", "4", FieldElement::from_int(1));
    pb.add_edge("4", "5", FieldElement::from_int(1));
    WeightedGraph path = pb.build();
    std::vector<bool> interior{true, true, true, true, false};

    VertexId v3 = path.require("3");
    VertexSet set{path.require("1"), path.require("2"), v3, path.require("4")};
    std::sort(set.begin(), set.end());
    DirichletSolution sol = solve_dirichlet(path, set, v3);
    FieldElement expected = FieldElement::tau() /
                            (FieldElement::from_int(2) + FieldElement::from_int(2) * FieldElement::tau());
    report("path example: normalized capacity t/(2+2t)", sol.normalized_capacity == expected);
    report("path example: Green value infinite", green_value(path, set, v3).infinite);

    TransitionMatrix pi = real_transition_matrix(path, interior);
    std::set<std::pair<std::string, std::string>> arrows;
    for (VertexId x = 0; x < pi.state_count(); ++x) {
        if (pi.absorbing[x]) continue;
        for (const auto& [y, p] : pi.rows[x]) arrows.insert({pi.names[x], pi.names[y]});
    }
    std::set<std::pair<std::string, std::string>> wanted{
        {"1", "2"}, {"2", "1"}, {"3", "2"}, {"4", "3"}, {"4", "5"}};
    report("path example: arrow set", arrows == wanted);

    ClassificationReport cls = classify_weighted_graph(path, interior);
    const ClassSummary& class3 = cls.classes[static_cast<size_t>(cls.class_of[v3])];
    report("path example: vertex 3 transient because non-essential",
           class3.verdict == Verdict::Transient && class3.reason == Reason::NonEssential);
    const ClassSummary& class12 = cls.classes[static_cast<size_t>(cls.class_of[path.require("1")])];
    report("path example: class {1,2} recurrent because finite essential",
           class12.verdict == Verdict::Recurrent && class12.reason == Reason::FiniteEssential);

    // weighted rays
    auto ray_trace = [&](const FieldElement& b23) {
        std::vector<FieldElement> head{FieldElement::tau(), FieldElement::from_int(1), b23,
                                       FieldElement::from_int(1)};
        RayGenerator ray({1}, std::move(head), 3, -1);
        Truncation trunc = materialize_ball(ray, 12);
        VertexId a = trunc.graph.require("a");
        Exhaustion ex = ball_exhaustion(trunc.graph, a, 10);
        return green_limit(trunc.graph, ex, a, 10);
    };
    GreenTrace linear = ray_trace(FieldElement::tau());
    report("ray example: linear head weight stabilizes at 2",
           linear.status.kind == GreenStatus::Kind::Stabilized && linear.status.value == 2);
    GreenTrace squared = ray_trace(FieldElement::tau() * FieldElement::tau());
    report("ray example: squared head weight certifies an infinite Green value",
           squared.status.kind == GreenStatus::Kind::ExactInfinity && squared.status.step == 2);

    {
        std::vector<FieldElement> head{FieldElement::tau(), FieldElement::from_int(1),
                                       FieldElement::tau(), FieldElement::from_int(1)};
        RayGenerator ray({1}, std::move(head), 3, -1);
        ClassificationReport rc = classify_truncation(materialize_ball(ray, 11));
        const ClassSummary& ca = rc.classes[static_cast<size_t>(rc.class_of[0])];
        report("ray example: root transient because non-essential",
               ca.verdict == Verdict::Transient && ca.reason == Reason::NonEssential);
    }

    // directed four-cycle rejection
    TransitionMatrix cycle;
    cycle.names = {"x1", "x2", "x3", "x4"};
    cycle.rows = {{{1, 1}}, {{2, 1}}, {{3, 1}}, {{0, 1}}};
    cycle.absorbing = {false, false, false, false};
    RealizabilityResult rejected = check_realizable(cycle);
    report("directed cycle: rejected with an asymmetric-arrow witness",
           !rejected.realizable &&
               rejected.witness.kind == IrrealizableWitness::Kind::AsymmetricArrow);

    std::cout << (failures == 0 ? "selftest: all checks passed" : "selftest: FAILURES present")
              << "\n";
    return failures == 0 ? exit_ok : exit_internal;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"recurrence and transience for weighted graphs over the ordered field Q(t^(1/D))"};
    app.require_subcommand(1);
    bool json_flag = true;
    app.add_flag("--json", json_flag, "machine readable output (always on)");

    std::string file, base, output, start;
    std::vector<std::string> set_names;
    size_t budget = 10, window = 3, steps = 100, trials = 10000;
    std::uint64_t seed = 1;

    auto* classify = app.add_subcommand("classify", "full recurrence/transience report");
    classify->add_option("file", file)->required();
    classify->add_option("--budget", budget);
    classify->add_option("--window", window);

    auto* dirichlet = app.add_subcommand("dirichlet", "solve the Dirichlet problem on a set");
    dirichlet->add_option("file", file)->required();
    dirichlet->add_option("--set", set_names)->required();
    dirichlet->add_option("--base", base)->required();
    dirichlet->add_option("--budget", budget);

    auto* capacity_cmd = app.add_subcommand("capacity", "capacity of a base vertex in a set");
    capacity_cmd->add_option("file", file)->required();
    capacity_cmd->add_option("--set", set_names)->required();
    capacity_cmd->add_option("--base", base)->required();
    capacity_cmd->add_option("--budget", budget);

    auto* pi_cmd = app.add_subcommand("pi", "real transition matrix with exact fractions");
    pi_cmd->add_option("file", file)->required();
    pi_cmd->add_option("--budget", budget);

    auto* green = app.add_subcommand("g", "Green value trace along an exhaustion");
    green->add_option("file", file)->required();
    green->add_option("--base", base)->required();
    green->add_option("--budget", budget);
    green->add_option("--window", window);

    auto* synth = app.add_subcommand("synth", "synthesize a witness graph from a transition matrix");
    synth->add_option("file", file)->required();
    synth->add_option("-o,--output", output);

    auto* roundtrip = app.add_subcommand("roundtrip", "synthesize, rebuild and compare exactly");
    roundtrip->add_option("file", file)->required();

    auto* simulate_cmd = app.add_subcommand("simulate", "Monte-Carlo visit statistics");
    simulate_cmd->add_option("file", file)->required();
    simulate_cmd->add_option("--start", start)->required();
    simulate_cmd->add_option("--steps", steps);
    simulate_cmd->add_option("--trials", trials);
    simulate_cmd->add_option("--seed", seed);
    simulate_cmd->add_option("--budget", budget);

    auto* selftest = app.add_subcommand("selftest", "reproduce the built-in example suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return exit_invalid;
    }

    try {
        if (classify->parsed()) return run_classify(file, budget, window);
        if (dirichlet->parsed()) return run_dirichlet(file, set_names, base, budget, true);
        if (capacity_cmd->parsed()) return run_dirichlet(file, set_names, base, budget, false);
        if (pi_cmd->parsed()) return run_pi(file, budget);
        if (green->parsed()) return run_green(file, base, budget, window);
        if (synth->parsed()) return run_synth(file, output);
        if (roundtrip->parsed()) return run_roundtrip(file);
        if (simulate_cmd->parsed()) return run_simulate(file, start, steps, trials, seed, budget);
        if (selftest->parsed()) return run_selftest();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_invalid;
}
