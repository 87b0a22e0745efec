#pragma once

#include "nawalk/walk.hpp"

#include <functional>

namespace nawalk {

// Per-state positive weights making pi reversible on each irreducible class,
// normalized to 1 at each class's smallest state.
struct ReversibilityWeights {
    std::vector<Rational> beta;
    std::vector<VertexId> class_base;  // per class
};

struct IrrealizableWitness {
    enum class Kind { AsymmetricArrow, InconsistentCycle };
    Kind kind = Kind::AsymmetricArrow;
    VertexId from = 0, to = 0;
    std::string detail;
};

struct RealizabilityResult {
    bool realizable = false;
    ReversibilityWeights weights;        // when realizable
    IrrealizableWitness witness;         // when not
    ComponentDecomposition decomposition;
};

// Decides whether pi arises from a non-Archimedean weighted graph: within
// every class the arrows must reverse and the cycle products must balance.
// Throws on diagonal patterns outside {0,1}.
RealizabilityResult check_realizable(const TransitionMatrix& pi);

struct HeightAssignment {
    std::vector<Rational> class_height;
};

// Longest chain from a minimal class; integer heights, order preserving.
HeightAssignment finite_heights(const ComponentDecomposition& decomposition);

// Order-preserving rational heights for classes revealed one at a time, with
// deterministic tie rules: first class 0; midpoint when bounded both sides;
// max-below + 1 / min-above - 1 when bounded on one side; otherwise one less
// than everything assigned so far.
HeightAssignment enumerated_heights(size_t class_count,
                                    const std::function<bool(size_t, size_t)>& precedes);

struct SynthesizedGraph {
    WeightedGraph graph;
    std::vector<bool> interior;
};

// Witness construction: within a class b(x,y) = pi(x,y) beta(x) N^h, across
// classes the max rule at the lower height, with N = 1/t and the context
// denominator the lcm of the height denominators.  The witness may be
// disconnected; rebuilding pi from it reproduces pi exactly.
SynthesizedGraph synthesize_graph(const TransitionMatrix& pi, const ReversibilityWeights& weights,
                                  const HeightAssignment& heights,
                                  const ComponentDecomposition& decomposition);

} // namespace nawalk
