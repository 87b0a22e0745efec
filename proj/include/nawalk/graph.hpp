#pragma once

#include "nawalk/field.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace nawalk {

using VertexId = std::uint32_t;
using VertexSet = std::vector<VertexId>;  // sorted, unique
using Exhaustion = std::vector<VertexSet>;

struct Edge {
    VertexId to;
    FieldElement weight;
};

// Symmetric field-weighted graph without loops; immutable once built.
// Weights are positive; b(x) denotes the total weight at x.
class WeightedGraph {
public:
    size_t vertex_count() const { return adjacency_.size(); }
    FieldContext context() const { return ctx_; }

    const std::string& name(VertexId x) const;
    std::optional<VertexId> find(const std::string& name) const;
    VertexId require(const std::string& name) const;

    const std::vector<Edge>& neighbors(VertexId x) const;
    FieldElement weight(VertexId x, VertexId y) const;  // zero when not adjacent
    const FieldElement& weighted_degree(VertexId x) const;  // b(x)
    FieldElement normalized_weight(VertexId x, VertexId y) const;  // b(x,y)/b(x)

    bool connected() const { return connected_; }

private:
    friend class GraphBuilder;
    FieldContext ctx_;
    std::vector<std::string> names_;
    std::vector<std::vector<Edge>> adjacency_;  // sorted by target id
    std::vector<FieldElement> degree_;
    bool connected_ = true;
};

class GraphBuilder {
public:
    explicit GraphBuilder(FieldContext ctx = {}) : ctx_(ctx) {}

    VertexId add_vertex(const std::string& name);
    void add_edge(const std::string& u, const std::string& v, const FieldElement& w);
    void add_edge(VertexId u, VertexId v, const FieldElement& w);

    // Validates symmetry, positivity, absence of loops and (by default)
    // connectivity, then freezes the graph.  Synthesized witnesses may be
    // disconnected and skip the connectivity check.
    WeightedGraph build(bool require_connected = true) const;

private:
    FieldContext ctx_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, VertexId> ids_;
    struct PendingEdge {
        VertexId u, v;
        FieldElement w;
    };
    std::vector<PendingEdge> edges_;
};

// BFS balls around root: K_0 = {root}, K_n = B_n(root); stops growing once
// the (finite) graph is exhausted or max_radius is reached.
Exhaustion ball_exhaustion(const WeightedGraph& g, VertexId root, size_t max_radius);

// Balls of the subgraph induced on `within` (the component of root).
Exhaustion ball_exhaustion_within(const WeightedGraph& g, VertexId root,
                                  const std::vector<bool>& within, size_t max_radius);

// Ball exhaustion whose final set is capped strictly below V: when the balls
// reach the whole vertex set, the last set is V minus one farthest vertex
// (removing a farthest vertex keeps the set connected and nested).
Exhaustion capped_ball_exhaustion(const WeightedGraph& g, VertexId root, size_t max_radius);

bool is_connected_subset(const WeightedGraph& g, const VertexSet& set);

// Finitely described infinite graph: deterministic neighbor enumeration
// around a designated root.
class GraphGenerator {
public:
    virtual ~GraphGenerator() = default;
    virtual FieldContext context() const = 0;
    virtual VertexId root() const = 0;
    virtual std::string name(VertexId x) const = 0;
    virtual std::vector<Edge> neighbors(VertexId x) const = 0;
};

// Half-line a - 1 - 2 - ... with b(k,k+1) given by explicit head weights and
// the tail rule t^(e0 + e1*k) beyond them.
class RayGenerator final : public GraphGenerator {
public:
    RayGenerator(FieldContext ctx, std::vector<FieldElement> head_weights, Rational tail_e0,
                 Rational tail_e1);

    FieldContext context() const override { return ctx_; }
    VertexId root() const override { return 0; }
    std::string name(VertexId x) const override;
    std::vector<Edge> neighbors(VertexId x) const override;

    FieldElement edge_weight(VertexId k) const;  // b(k, k+1)
    const std::vector<FieldElement>& head_weights() const { return head_; }
    const Rational& tail_e0() const { return e0_; }
    const Rational& tail_e1() const { return e1_; }

private:
    FieldContext ctx_;
    std::vector<FieldElement> head_;
    Rational e0_, e1_;
};

// Finite truncation of a generator: the induced graph on the ball of the
// given radius.  Frontier vertices sit at the boundary radius; their
// adjacency may be incomplete relative to the infinite graph.
struct Truncation {
    WeightedGraph graph;
    std::vector<bool> frontier;
};

Truncation materialize_ball(const GraphGenerator& gen, size_t radius);

} // namespace nawalk
