#include "nawalk/synth.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace nawalk {

RealizabilityResult check_realizable(const TransitionMatrix& pi) {
    pi.validate();  // diagonal pattern enforced here
    RealizabilityResult out;
    out.decomposition = components(pi);
    const auto& decomposition = out.decomposition;

    // any within-class arrow without its reverse is a witness
    for (VertexId x = 0; x < pi.state_count(); ++x)
        for (const auto& [y, p] : pi.rows[x]) {
            if (x == y) continue;
            if (decomposition.class_of[x] != decomposition.class_of[y]) continue;
            if (!pi.arrow(y, x)) {
                out.realizable = false;
                out.witness = {IrrealizableWitness::Kind::AsymmetricArrow, x, y,
                               "arrow " + pi.names[x] + " -> " + pi.names[y] +
                                   " inside one class has no reverse arrow"};
                return out;
            }
        }

    // spanning-tree propagation per class, then a full consistency sweep
    out.weights.beta.assign(pi.state_count(), 0);
    out.weights.class_base.reserve(decomposition.class_count());
    for (const auto& members : decomposition.classes) {
        VertexId root = members.front();
        out.weights.class_base.push_back(root);
        out.weights.beta[root] = 1;
        std::deque<VertexId> queue{root};
        std::vector<VertexId> order{root};
        while (!queue.empty()) {
            VertexId x = queue.front();
            queue.pop_front();
            for (const auto& [y, p] : pi.rows[x]) {
                if (x == y || decomposition.class_of[y] != decomposition.class_of[x]) continue;
                if (sgn(out.weights.beta[y]) != 0) continue;
                out.weights.beta[y] = out.weights.beta[x] * p / pi.prob(y, x);
                queue.push_back(y);
                order.push_back(y);
            }
        }
        for (VertexId x : order)
            for (const auto& [y, p] : pi.rows[x]) {
                if (x == y || decomposition.class_of[y] != decomposition.class_of[x]) continue;
                if (p * out.weights.beta[x] != pi.prob(y, x) * out.weights.beta[y]) {
                    out.realizable = false;
                    out.witness = {IrrealizableWitness::Kind::InconsistentCycle, x, y,
                                   "edge " + pi.names[x] + " - " + pi.names[y] +
                                       " closes a cycle with unbalanced products"};
                    return out;
                }
            }
    }
    out.realizable = true;
    return out;
}

HeightAssignment finite_heights(const ComponentDecomposition& decomposition) {
    const size_t n = decomposition.class_count();
    std::vector<size_t> indegree(n, 0);
    for (const auto& edges : decomposition.condensation_out)
        for (int succ : edges) ++indegree[static_cast<size_t>(succ)];

    HeightAssignment out;
    out.class_height.assign(n, 0);
    std::deque<size_t> queue;
    for (size_t c = 0; c < n; ++c)
        if (indegree[c] == 0) queue.push_back(c);
    size_t processed = 0;
    while (!queue.empty()) {
        size_t c = queue.front();
        queue.pop_front();
        ++processed;
        for (int succ_signed : decomposition.condensation_out[c]) {
            size_t succ = static_cast<size_t>(succ_signed);
            Rational candidate = out.class_height[c] + 1;
            if (out.class_height[succ] < candidate) out.class_height[succ] = candidate;
            if (--indegree[succ] == 0) queue.push_back(succ);
        }
    }
    if (processed != n) fail(Errc::cycle_detected, "condensation is not acyclic");
    return out;
}

HeightAssignment enumerated_heights(size_t class_count,
                                    const std::function<bool(size_t, size_t)>& precedes) {
    HeightAssignment out;
    out.class_height.reserve(class_count);
    for (size_t next = 0; next < class_count; ++next) {
        if (next == 0) {
            out.class_height.push_back(0);
            continue;
        }
        std::optional<Rational> below, above;
        for (size_t b = 0; b < next; ++b) {
            if (precedes(b, next)) {
                const Rational& h = out.class_height[b];
                if (!below || h > *below) below = h;
            }
            if (precedes(next, b)) {
                const Rational& h = out.class_height[b];
                if (!above || h < *above) above = h;
            }
        }
        Rational q;
        if (below && above) {
            if (!(*below < *above))
                fail(Errc::order_violation, "enumeration order oracle is inconsistent");
            q = (*below + *above) / 2;
        } else if (below) {
            q = *below + 1;
        } else if (above) {
            q = *above - 1;
        } else {
            q = *std::min_element(out.class_height.begin(), out.class_height.end()) - 1;
        }
        out.class_height.push_back(q);
    }
    return out;
}

SynthesizedGraph synthesize_graph(const TransitionMatrix& pi, const ReversibilityWeights& weights,
                                  const HeightAssignment& heights,
                                  const ComponentDecomposition& decomposition) {
    if (heights.class_height.size() != decomposition.class_count())
        fail(Errc::internal, "height assignment does not match the decomposition");
    for (size_t c = 0; c < decomposition.class_count(); ++c)
        for (int succ : decomposition.condensation_out[c])
            if (!(heights.class_height[c] < heights.class_height[static_cast<size_t>(succ)]))
                fail(Errc::order_violation, "heights are not order preserving");

    Integer denom_lcm = 1;
    for (const auto& h : heights.class_height) denom_lcm = lcm(denom_lcm, Integer(h.get_den()));
    if (!denom_lcm.fits_uint_p()) fail(Errc::internal, "height denominators too large");
    FieldContext ctx{static_cast<unsigned>(denom_lcm.get_ui())};

    auto height_of = [&](VertexId x) -> const Rational& {
        return heights.class_height[static_cast<size_t>(decomposition.class_of[x])];
    };
    // N^h with N = 1/t
    auto scale_power = [&](const Rational& h) { return FieldElement::tau_power(-h, ctx); };

    // Unordered pair rule; on a class both sides agree by reversibility and
    // the heights coincide, so this is also the within-class formula.
    auto edge_weight = [&](VertexId x, VertexId y) {
        Rational m = std::max(pi.prob(x, y) * weights.beta[x], pi.prob(y, x) * weights.beta[y]);
        return FieldElement::from_rational(m, ctx) * scale_power(std::min(height_of(x), height_of(y)));
    };

    GraphBuilder builder(ctx);
    for (const auto& name : pi.names) builder.add_vertex(name);
    for (VertexId x = 0; x < pi.state_count(); ++x)
        for (VertexId y = x + 1; y < pi.state_count(); ++y) {
            if (!pi.arrow(x, y) && !pi.arrow(y, x)) continue;
            builder.add_edge(x, y, edge_weight(x, y));
        }

    SynthesizedGraph out{builder.build(/*require_connected=*/false), {}};
    out.interior.reserve(pi.state_count());
    for (VertexId x = 0; x < pi.state_count(); ++x) out.interior.push_back(!pi.absorbing[x]);
    return out;
}

} // namespace nawalk
