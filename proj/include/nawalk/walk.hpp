#pragma once

#include "nawalk/graph.hpp"

#include <map>
#include <optional>

namespace nawalk {

// Real (exact-rational) transition matrix: rows sum to one, states outside
// the interior are absorbing (unit diagonal row).
struct TransitionMatrix {
    std::vector<std::string> names;
    std::vector<std::vector<std::pair<VertexId, Rational>>> rows;  // sorted, entries > 0
    std::vector<bool> absorbing;

    size_t state_count() const { return rows.size(); }
    Rational prob(VertexId x, VertexId y) const;
    bool arrow(VertexId x, VertexId y) const;  // x leads to y in one step
    bool operator==(const TransitionMatrix& rhs) const {
        return names == rhs.names && rows == rhs.rows && absorbing == rhs.absorbing;
    }

    VertexId require(const std::string& name) const;
    void validate() const;  // row sums, entry range, diagonal pattern
};

// The real part of the normalized weights on the interior; identity rows on
// the complement.
TransitionMatrix real_transition_matrix(const WeightedGraph& g, const std::vector<bool>& interior);

struct ComponentDecomposition {
    std::vector<int> class_of;                       // per state
    std::vector<std::vector<VertexId>> classes;      // members, sorted
    std::vector<std::vector<int>> condensation_out;  // per class, sorted, deduplicated
    std::vector<bool> essential;                     // no outgoing condensation edge
    // representative valuation of b(x) per class, when a graph is attached
    std::vector<std::optional<Rational>> class_weight_valuation;

    size_t class_count() const { return classes.size(); }
};

ComponentDecomposition components(const TransitionMatrix& pi);
void annotate_weight_scales(ComponentDecomposition& decomposition, const WeightedGraph& g);

// Sum of the n-step return probabilities at a for n = 0..steps (the expected
// number of visits to a in the first `steps` steps, start included).
Rational expected_visits(const TransitionMatrix& pi, VertexId a, size_t steps);

enum class Verdict { Recurrent, Transient, Unknown };
enum class Reason { NonEssential, FiniteEssential, GreenInfinite, GreenFinite, BudgetExhausted };

std::string to_string(Verdict v);
std::string to_string(Reason r);

struct Classification {
    std::vector<Verdict> class_verdict;
    std::vector<Reason> class_reason;
    bool any_unknown() const;
};

// Frontier-aware classification.  A class is decided only when no frontier
// state is forward-reachable from it (the condensation below it is then
// exact); everything else is Unknown.  For essential classes the verdict
// comes from the Green status when one is supplied, otherwise from finite
// essentiality; `prefer_green` switches the justification order.
Classification classify_states(const TransitionMatrix& pi, const ComponentDecomposition& decomposition,
                               const std::map<int, bool>& green_infinite_by_class = {},
                               const std::vector<bool>& frontier = {}, bool prefer_green = false);

// Within each class, every arrow reverses; fails on chains that cannot arise
// from a symmetric weighted graph.
bool path_reversal_holds(const TransitionMatrix& pi, const ComponentDecomposition& decomposition);
// Shortest directed distances between mutually reachable states agree.
bool shortest_path_symmetry_holds(const TransitionMatrix& pi);

struct VisitStats {
    double mean_visits = 0;
    double stddev_visits = 0;
    double return_frequency = 0;
    size_t trials = 0;
    size_t steps = 0;
};

// Monte-Carlo cross-check; rational rows are flattened to double cumulative
// probabilities once, the final bucket absorbing the rounding slack.
VisitStats simulate(const TransitionMatrix& pi, VertexId start, size_t max_steps, size_t trials,
                    std::uint64_t seed);

} // namespace nawalk
