#include "nawalk/green.hpp"

#include <algorithm>
#include <functional>

namespace nawalk {

GreenValue green_value(const WeightedGraph& g, const VertexSet& set, VertexId a,
                       const SolveOptions& options) {
    DirichletSolution sol = solve_dirichlet(g, set, a, options);
    Rational r = sol.normalized_capacity.real_part();
    if (sgn(r) < 0) fail(Errc::internal, "normalized capacity with negative real part");
    GreenValue out;
    if (sgn(r) == 0) {
        out.infinite = true;
    } else {
        out.value = 1 / r;
    }
    return out;
}

namespace {

// Shared status logic for monotone Green traces.  `step_value` yields the
// value for exhaustion index n; indexes run over [0, last].
GreenTrace run_green_steps(const std::function<GreenValue(size_t)>& step_value, size_t last,
                           size_t budget, size_t window, bool exhaustion_complete) {
    GreenTrace out;
    size_t limit = std::min(budget, last);
    size_t run_start = 0;  // first index of the current constant run
    for (size_t n = 0; n <= limit; ++n) {
        GreenValue val = step_value(n);
        if (!out.values.empty() && val < out.values.back())
            fail(Errc::internal, "Green values must be monotone along an exhaustion");
        if (out.values.empty() || !(val == out.values.back())) run_start = n;
        out.values.push_back(val);
        if (val.infinite) {
            out.status.kind = GreenStatus::Kind::ExactInfinity;
            out.status.step = n;
            return out;
        }
        if (window > 0 && n - run_start >= window) {
            out.status.kind = GreenStatus::Kind::Stabilized;
            out.status.value = val.value;
            out.status.step = run_start;
            out.status.window = n - run_start;
            return out;
        }
    }
    if (limit == last && exhaustion_complete) {
        out.status.kind = GreenStatus::Kind::Stabilized;
        out.status.value = out.values.back().value;
        out.status.step = run_start;
        out.status.window = out.values.size() - 1 - run_start;
        out.status.exhausted = true;
        return out;
    }
    out.status.kind = GreenStatus::Kind::LowerBound;
    out.status.value = out.values.back().value;
    out.status.budget = budget;
    return out;
}

} // namespace

GreenTrace green_limit(const WeightedGraph& g, const Exhaustion& exhaustion, VertexId a, size_t budget,
                       size_t window, bool exhaustion_complete) {
    if (exhaustion.empty()) fail(Errc::usage, "empty exhaustion");
    if (!std::binary_search(exhaustion.front().begin(), exhaustion.front().end(), a))
        fail(Errc::unknown_vertex, "base vertex must lie in the first exhaustion set");
    return run_green_steps([&](size_t n) { return green_value(g, exhaustion[n], a); },
                           exhaustion.size() - 1, budget, window, exhaustion_complete);
}

bool ClassNetwork::leak_free() const {
    return std::all_of(leak.begin(), leak.end(), [](const Rational& l) { return sgn(l) == 0; });
}

ClassNetwork build_class_network(const WeightedGraph& g, const TransitionMatrix& pi,
                                 const std::vector<VertexId>& members, VertexId base) {
    ClassNetwork net;
    net.members = members;
    std::sort(net.members.begin(), net.members.end());
    auto slot_of = [&](VertexId v) -> std::optional<size_t> {
        auto it = std::lower_bound(net.members.begin(), net.members.end(), v);
        if (it == net.members.end() || *it != v) return std::nullopt;
        return static_cast<size_t>(it - net.members.begin());
    };
    auto base_slot = slot_of(base);
    if (!base_slot) fail(Errc::unknown_vertex, "base not in the class");
    net.base_slot = *base_slot;

    const FieldElement& b_base = g.weighted_degree(base);
    net.beta.reserve(net.members.size());
    for (VertexId x : net.members) net.beta.push_back((g.weighted_degree(x) / b_base).real_part());

    net.edges.assign(net.members.size(), {});
    net.leak.assign(net.members.size(), 0);
    for (size_t i = 0; i < net.members.size(); ++i) {
        VertexId x = net.members[i];
        Rational inside = 0;
        for (const auto& [y, p] : pi.rows[x]) {
            auto j = slot_of(y);
            if (!j) continue;
            if (*j == i) continue;
            Rational w = p * net.beta[i];
            Rational reverse = pi.prob(y, x) * net.beta[*j];
            if (w != reverse)
                fail(Errc::symmetry_violation, "class network weights are not symmetric at " +
                                                   pi.names[x] + " - " + pi.names[y]);
            net.edges[i].emplace(*j, w);
            inside += p;
        }
        if (pi.absorbing[x]) inside += 1;  // the absorbing self-loop stays inside
        net.leak[i] = (1 - inside) * net.beta[i];
        if (sgn(net.leak[i]) < 0) fail(Errc::internal, "negative leak mass");
    }
    return net;
}

GreenTrace class_green(const ClassNetwork& network, size_t budget, size_t window) {
    const size_t n = network.members.size();
    GraphBuilder builder;
    for (size_t i = 0; i < n; ++i) builder.add_vertex("c" + std::to_string(i));
    bool any_leak = false;
    for (size_t i = 0; i < n; ++i) {
        for (const auto& [j, w] : network.edges[i])
            if (j > i) builder.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j),
                                        FieldElement::from_rational(w));
        if (sgn(network.leak[i]) > 0) any_leak = true;
    }
    VertexId cemetery = 0;
    if (any_leak) {
        cemetery = builder.add_vertex("@boundary");
        for (size_t i = 0; i < n; ++i)
            if (sgn(network.leak[i]) > 0)
                builder.add_edge(static_cast<VertexId>(i), cemetery,
                                 FieldElement::from_rational(network.leak[i]));
    }
    WeightedGraph net = builder.build(true);

    std::vector<bool> inside(net.vertex_count(), true);
    if (any_leak) inside[cemetery] = false;
    // let the balls saturate naturally so that hitting the last set really
    // means the class is exhausted rather than the radius budget
    Exhaustion balls = ball_exhaustion_within(net, static_cast<VertexId>(network.base_slot), inside,
                                              budget + net.vertex_count());

    auto step = [&](size_t idx) -> GreenValue {
        const VertexSet& set = balls[idx];
        if (set.size() == net.vertex_count()) {
            // leak-free network fully exhausted: the boundary is empty and the
            // finite class is recurrent
            return GreenValue{true, 0};
        }
        return green_value(net, set, static_cast<VertexId>(network.base_slot));
    };
    return run_green_steps(step, balls.size() - 1, budget, window, /*exhaustion_complete=*/any_leak);
}

bool harnack_holds(const WeightedGraph& g, const DirichletSolution& solution,
                   const ComponentDecomposition& decomposition) {
    std::vector<bool> in_set(g.vertex_count(), false);
    for (VertexId x : solution.set) in_set[x] = true;
    for (const auto& members : decomposition.classes) {
        bool all_in = std::all_of(members.begin(), members.end(), [&](VertexId x) { return in_set[x]; });
        if (!all_in || members.size() < 2) continue;
        auto v0 = solution.values[members.front()].valuation();
        for (VertexId x : members)
            if (solution.values[x].valuation() != v0) return false;
    }
    return true;
}

bool real_part_constant_on_heavy_classes(const WeightedGraph& g, const DirichletSolution& solution,
                                         const ComponentDecomposition& decomposition, VertexId a) {
    std::vector<bool> in_set(g.vertex_count(), false);
    for (VertexId x : solution.set) in_set[x] = true;
    auto base_val = g.weighted_degree(a).valuation();
    if (!base_val) fail(Errc::internal, "base vertex weight vanishes");
    for (size_t c = 0; c < decomposition.class_count(); ++c) {
        const auto& members = decomposition.classes[c];
        bool all_in = std::all_of(members.begin(), members.end(), [&](VertexId x) { return in_set[x]; });
        if (!all_in || members.size() < 2) continue;
        const auto& scale = decomposition.class_weight_valuation[c];
        if (!scale || !(*scale < *base_val)) continue;  // not infinitely heavier
        Rational r0 = solution.values[members.front()].real_part();
        for (VertexId x : members)
            if (solution.values[x].real_part() != r0) return false;
    }
    return true;
}

} // namespace nawalk
