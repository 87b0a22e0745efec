#pragma once

#include "nawalk/graph.hpp"

namespace nawalk {

// Solution of the Dirichlet problem on a finite connected K with base a:
// harmonic on K \ {a}, 1 at a, 0 outside K.
struct DirichletSolution {
    VertexId base = 0;
    VertexSet set;                      // K
    std::vector<FieldElement> values;   // v over all vertices, zero off K
    FieldElement tilde_at_base;         // value at a of the renormalized solution
    FieldElement capacity;              // energy of v = b(a) / tilde_at_base
    FieldElement energy;                // computed independently from the edge sum
    FieldElement normalized_capacity;   // capacity / b(a)
};

struct SolveOptions {
    size_t max_unknowns = 2000;
};

// (1/b(x)) * sum_y b(x,y) (f(x) - f(y))
FieldElement laplacian_apply(const WeightedGraph& g, const std::vector<FieldElement>& f, VertexId x);

// Exact solve of the renormalized system on K; K must be connected, contain
// a, and leave the boundary nonempty (K != V).
DirichletSolution solve_dirichlet(const WeightedGraph& g, const VertexSet& set, VertexId a,
                                  const SolveOptions& options = {});

FieldElement capacity(const WeightedGraph& g, const VertexSet& set, VertexId a,
                      const SolveOptions& options = {});

// (1/2) * sum_{x,y} b(x,y) (f(x) - f(y))^2 for finitely supported f.
FieldElement energy(const WeightedGraph& g, const std::vector<FieldElement>& f);

// Both summation-by-parts forms against the edge pairing, exactly.
bool greens_formula_holds(const WeightedGraph& g, const std::vector<FieldElement>& f,
                          const std::vector<FieldElement>& phi);

} // namespace nawalk
