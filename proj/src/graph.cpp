#include "nawalk/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace nawalk {

const std::string& WeightedGraph::name(VertexId x) const {
    if (x >= names_.size()) fail(Errc::unknown_vertex, "vertex id out of range");
    return names_[x];
}

std::optional<VertexId> WeightedGraph::find(const std::string& name) const {
    for (VertexId i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

VertexId WeightedGraph::require(const std::string& name) const {
    auto id = find(name);
    if (!id) fail(Errc::unknown_vertex, "unknown vertex '" + name + "'");
    return *id;
}

const std::vector<Edge>& WeightedGraph::neighbors(VertexId x) const {
    if (x >= adjacency_.size()) fail(Errc::unknown_vertex, "vertex id out of range");
    return adjacency_[x];
}

FieldElement WeightedGraph::weight(VertexId x, VertexId y) const {
    for (const Edge& e : neighbors(x))
        if (e.to == y) return e.weight;
    return FieldElement::from_int(0, ctx_);
}

const FieldElement& WeightedGraph::weighted_degree(VertexId x) const {
    if (x >= degree_.size()) fail(Errc::unknown_vertex, "vertex id out of range");
    return degree_[x];
}

FieldElement WeightedGraph::normalized_weight(VertexId x, VertexId y) const {
    return weight(x, y) / weighted_degree(x);
}

VertexId GraphBuilder::add_vertex(const std::string& name) {
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    VertexId id = static_cast<VertexId>(names_.size());
    names_.push_back(name);
    ids_.emplace(name, id);
    return id;
}

void GraphBuilder::add_edge(const std::string& u, const std::string& v, const FieldElement& w) {
    VertexId uid = add_vertex(u);
    VertexId vid = add_vertex(v);
    add_edge(uid, vid, w);
}

void GraphBuilder::add_edge(VertexId u, VertexId v, const FieldElement& w) {
    if (u >= names_.size() || v >= names_.size()) fail(Errc::unknown_vertex, "edge endpoint out of range");
    edges_.push_back({u, v, w});
}

WeightedGraph GraphBuilder::build(bool require_connected) const {
    WeightedGraph g;
    g.ctx_ = ctx_;
    g.names_ = names_;
    const size_t n = names_.size();

    std::map<std::pair<VertexId, VertexId>, FieldElement> weights;
    for (const auto& e : edges_) {
        if (e.u == e.v) fail(Errc::loop_present, "loop at vertex '" + names_[e.u] + "'");
        if (e.w.sign() <= 0)
            fail(Errc::non_positive_weight,
                 "edge " + names_[e.u] + " - " + names_[e.v] + " has non-positive weight");
        auto key = std::minmax(e.u, e.v);
        auto [it, inserted] = weights.emplace(std::make_pair(key.first, key.second), e.w);
        if (!inserted && !(it->second == e.w))
            fail(Errc::not_symmetric,
                 "conflicting weights for edge " + names_[e.u] + " - " + names_[e.v]);
    }

    g.adjacency_.assign(n, {});
    for (const auto& [key, w] : weights) {
        g.adjacency_[key.first].push_back({key.second, w});
        g.adjacency_[key.second].push_back({key.first, w});
    }
    for (auto& adj : g.adjacency_)
        std::sort(adj.begin(), adj.end(), [](const Edge& a, const Edge& b) { return a.to < b.to; });

    g.degree_.reserve(n);
    for (size_t x = 0; x < n; ++x) {
        FieldElement sum = FieldElement::from_int(0, ctx_);
        for (const Edge& e : g.adjacency_[x]) sum += e.weight;
        g.degree_.push_back(sum);
    }

    // connectivity via BFS from vertex 0
    g.connected_ = true;
    if (n > 0) {
        std::vector<bool> seen(n, false);
        std::deque<VertexId> queue{0};
        seen[0] = true;
        size_t reached = 1;
        while (!queue.empty()) {
            VertexId x = queue.front();
            queue.pop_front();
            for (const Edge& e : g.adjacency_[x])
                if (!seen[e.to]) {
                    seen[e.to] = true;
                    ++reached;
                    queue.push_back(e.to);
                }
        }
        g.connected_ = reached == n;
    }
    if (require_connected && !g.connected_) fail(Errc::not_connected, "graph is not connected");
    return g;
}

namespace {

Exhaustion balls(const WeightedGraph& g, VertexId root, const std::vector<bool>* within,
                 size_t max_radius) {
    if (root >= g.vertex_count()) fail(Errc::unknown_vertex, "root out of range");
    if (within && !(*within)[root]) fail(Errc::unknown_vertex, "root outside the induced set");
    std::vector<bool> seen(g.vertex_count(), false);
    seen[root] = true;
    VertexSet ball{root};
    std::vector<VertexId> shell{root};
    Exhaustion out{ball};
    for (size_t r = 1; r <= max_radius; ++r) {
        std::vector<VertexId> next;
        for (VertexId x : shell)
            for (const Edge& e : g.neighbors(x)) {
                if (seen[e.to]) continue;
                if (within && !(*within)[e.to]) continue;
                seen[e.to] = true;
                next.push_back(e.to);
            }
        if (next.empty()) break;
        ball.insert(ball.end(), next.begin(), next.end());
        std::sort(ball.begin(), ball.end());
        out.push_back(ball);
        shell = std::move(next);
    }
    return out;
}

} // namespace

Exhaustion ball_exhaustion(const WeightedGraph& g, VertexId root, size_t max_radius) {
    return balls(g, root, nullptr, max_radius);
}

Exhaustion ball_exhaustion_within(const WeightedGraph& g, VertexId root,
                                  const std::vector<bool>& within, size_t max_radius) {
    return balls(g, root, &within, max_radius);
}

Exhaustion capped_ball_exhaustion(const WeightedGraph& g, VertexId root, size_t max_radius) {
    Exhaustion out = balls(g, root, nullptr, max_radius);
    if (out.back().size() == g.vertex_count()) {
        if (g.vertex_count() == 1) fail(Errc::boundary_empty, "single-vertex graph has no exhaustion");
        // A vertex at maximum distance from the root is never a cut vertex of
        // a connected graph, so dropping one keeps the final set connected.
        VertexId far = out.back().back();
        for (VertexId x : out[out.size() - 1])
            if (std::find(out[out.size() - 2].begin(), out[out.size() - 2].end(), x) ==
                out[out.size() - 2].end())
                far = x;
        VertexSet capped;
        for (VertexId x : out.back())
            if (x != far) capped.push_back(x);
        out.back() = std::move(capped);
        if (out.size() >= 2 && out.back() == out[out.size() - 2]) out.pop_back();
    }
    return out;
}

bool is_connected_subset(const WeightedGraph& g, const VertexSet& set) {
    if (set.empty()) return false;
    std::vector<bool> inside(g.vertex_count(), false);
    for (VertexId x : set) inside[x] = true;
    std::vector<bool> seen(g.vertex_count(), false);
    std::deque<VertexId> queue{set.front()};
    seen[set.front()] = true;
    size_t reached = 1;
    while (!queue.empty()) {
        VertexId x = queue.front();
        queue.pop_front();
        for (const Edge& e : g.neighbors(x))
            if (inside[e.to] && !seen[e.to]) {
                seen[e.to] = true;
                ++reached;
                queue.push_back(e.to);
            }
    }
    return reached == set.size();
}

RayGenerator::RayGenerator(FieldContext ctx, std::vector<FieldElement> head_weights, Rational tail_e0,
                           Rational tail_e1)
    : ctx_(ctx), head_(std::move(head_weights)), e0_(std::move(tail_e0)), e1_(std::move(tail_e1)) {
    for (const auto& w : head_)
        if (w.sign() <= 0) fail(Errc::non_positive_weight, "ray head weight must be positive");
}

std::string RayGenerator::name(VertexId x) const { return x == 0 ? "a" : std::to_string(x); }

FieldElement RayGenerator::edge_weight(VertexId k) const {
    if (k < head_.size()) return head_[k];
    return FieldElement::tau_power(e0_ + e1_ * static_cast<long>(k), ctx_);
}

std::vector<Edge> RayGenerator::neighbors(VertexId x) const {
    std::vector<Edge> out;
    if (x > 0) out.push_back({x - 1, edge_weight(x - 1)});
    out.push_back({x + 1, edge_weight(x)});
    return out;
}

Truncation materialize_ball(const GraphGenerator& gen, size_t radius) {
    GraphBuilder builder(gen.context());
    VertexId root = gen.root();
    builder.add_vertex(gen.name(root));

    std::unordered_map<VertexId, size_t> distance{{root, 0}};
    std::deque<VertexId> queue{root};
    std::vector<std::pair<VertexId, VertexId>> seen_edges;
    while (!queue.empty()) {
        VertexId x = queue.front();
        queue.pop_front();
        size_t dx = distance[x];
        if (dx == radius) continue;
        for (const Edge& e : gen.neighbors(x)) {
            auto it = distance.find(e.to);
            if (it == distance.end()) {
                distance.emplace(e.to, dx + 1);
                queue.push_back(e.to);
            }
            builder.add_edge(gen.name(x), gen.name(e.to), e.weight);
        }
    }

    Truncation out{builder.build(true), {}};
    out.frontier.assign(out.graph.vertex_count(), false);
    for (const auto& [v, d] : distance)
        if (d == radius) out.frontier[out.graph.require(gen.name(v))] = true;
    return out;
}

} // namespace nawalk
