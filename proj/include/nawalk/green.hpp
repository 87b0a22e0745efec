#pragma once

#include "nawalk/dirichlet.hpp"
#include "nawalk/walk.hpp"

namespace nawalk {

// Reciprocal of the real part of the normalized capacity; at least 1, and
// infinite exactly when that real part vanishes.
struct GreenValue {
    bool infinite = false;
    Rational value = 0;

    bool operator==(const GreenValue& rhs) const {
        return infinite == rhs.infinite && (infinite || value == rhs.value);
    }
    // total order with infinity on top
    bool operator<(const GreenValue& rhs) const {
        if (infinite) return false;
        if (rhs.infinite) return true;
        return value < rhs.value;
    }
    std::string to_string() const { return infinite ? "inf" : nawalk::to_string(value); }
};

GreenValue green_value(const WeightedGraph& g, const VertexSet& set, VertexId a,
                       const SolveOptions& options = {});

struct GreenStatus {
    enum class Kind { ExactInfinity, Stabilized, LowerBound };
    Kind kind = Kind::LowerBound;
    Rational value = 0;      // Stabilized / LowerBound
    size_t step = 0;         // ExactInfinity: first index; Stabilized: start of the constant run
    size_t window = 0;       // Stabilized: observed unchanged transitions
    bool exhausted = false;  // Stabilized because the exhaustion saturated (exact, not heuristic)
    size_t budget = 0;       // LowerBound
};

struct GreenTrace {
    std::vector<GreenValue> values;
    GreenStatus status;

    bool infinite() const { return status.kind == GreenStatus::Kind::ExactInfinity; }
};

// Monotone limit of the Green values along an exhaustion.  Infinity at any
// step is final.  A finite value is reported Stabilized once it repeats over
// `window` consecutive steps (a flagged heuristic), or exactly when the
// exhaustion saturates and `exhaustion_complete` says no further growth is
// possible; otherwise the last value is a lower bound.
GreenTrace green_limit(const WeightedGraph& g, const Exhaustion& exhaustion, VertexId a, size_t budget,
                       size_t window = 3, bool exhaustion_complete = false);

// Real symmetric network carried by an irreducible class: vertex weights
// normalized to 1 at the base, edge weights pi(x,y)*beta(x), and the mass
// leaking out of the class per state.
struct ClassNetwork {
    std::vector<VertexId> members;  // sorted states of the class
    size_t base_slot = 0;           // index into members
    std::vector<Rational> beta;
    std::vector<std::map<size_t, Rational>> edges;  // by member slot, symmetric
    std::vector<Rational> leak;

    bool leak_free() const;
};

ClassNetwork build_class_network(const WeightedGraph& g, const TransitionMatrix& pi,
                                 const std::vector<VertexId>& members, VertexId base);

// Green limit of the class network along balls around the base.  A saturated
// leak-free network is the degenerate recurrent case and reports exact
// infinity; with leaks the saturated value is the exact network Green value.
GreenTrace class_green(const ClassNetwork& network, size_t budget, size_t window = 3);

// Dirichlet solution values share their scale inside every class meeting K.
bool harnack_holds(const WeightedGraph& g, const DirichletSolution& solution,
                   const ComponentDecomposition& decomposition);

// The real part of the solution is constant on classes whose vertex weight
// is infinitely larger than the base's.
bool real_part_constant_on_heavy_classes(const WeightedGraph& g, const DirichletSolution& solution,
                                         const ComponentDecomposition& decomposition, VertexId a);

} // namespace nawalk
