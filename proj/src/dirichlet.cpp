#include "nawalk/dirichlet.hpp"

#include <algorithm>

namespace nawalk {

FieldElement laplacian_apply(const WeightedGraph& g, const std::vector<FieldElement>& f, VertexId x) {
    if (x >= g.vertex_count()) fail(Errc::unknown_vertex, "vertex out of range");
    FieldElement acc = FieldElement::from_int(0, g.context());
    for (const Edge& e : g.neighbors(x)) acc += e.weight * (f[x] - f[e.to]);
    return acc / g.weighted_degree(x);
}

namespace {

/*
 * Fraction-free elimination for the renormalized Dirichlet system.
 *
 * Row x of the system reads  b(x) v(x) - sum_{y in K} b(x,y) v(y) = b(x) 1_a(x)
 * (the Laplacian row scaled by b(x)).  Each row is further scaled by the lcm
 * of its entries' denominators, leaving a matrix of plain polynomials, and
 * Bareiss one-step elimination keeps every intermediate entry a polynomial:
 * divisions by the previous pivot are exact.  Pivoting is structural only --
 * any nonzero entry works, there is no rounding to guard against.
 */
struct PolynomialSystem {
    std::vector<std::vector<Polynomial>> m;  // n rows, n+1 columns (rhs last)
    size_t n = 0;

    void eliminate() {
        Polynomial prev = Polynomial::one();
        for (size_t k = 0; k + 1 < n; ++k) {
            size_t pivot_row = k;
            while (pivot_row < n && m[pivot_row][k].is_zero()) ++pivot_row;
            if (pivot_row == n) fail(Errc::singular_system, "singular Dirichlet system");
            if (pivot_row != k) std::swap(m[pivot_row], m[k]);
            const Polynomial& pivot = m[k][k];
            for (size_t i = k + 1; i < n; ++i) {
                for (size_t j = k + 1; j <= n; ++j)
                    m[i][j] = Polynomial::exact_div(m[i][j] * pivot - m[i][k] * m[k][j], prev);
                m[i][k] = Polynomial();
            }
            prev = pivot;
        }
        if (m[n - 1][n - 1].is_zero()) fail(Errc::singular_system, "singular Dirichlet system");
    }

    std::vector<FieldElement> back_substitute(FieldContext ctx) const {
        std::vector<FieldElement> x(n, FieldElement::from_int(0, ctx));
        for (size_t i = n; i-- > 0;) {
            FieldElement sum = FieldElement::ratio(m[i][n], Polynomial::one(), ctx);
            for (size_t j = i + 1; j < n; ++j)
                sum -= FieldElement::ratio(m[i][j], Polynomial::one(), ctx) * x[j];
            x[i] = sum / FieldElement::ratio(m[i][i], Polynomial::one(), ctx);
        }
        return x;
    }
};

Polynomial require_polynomial(const FieldElement& e) {
    if (!e.den().is_one()) fail(Errc::internal, "entry not cleared to a polynomial");
    return e.num();
}

} // namespace

DirichletSolution solve_dirichlet(const WeightedGraph& g, const VertexSet& set, VertexId a,
                                  const SolveOptions& options) {
    const size_t n = set.size();
    if (n == 0) fail(Errc::disconnected_set, "empty set");
    if (!std::is_sorted(set.begin(), set.end()) || std::adjacent_find(set.begin(), set.end()) != set.end())
        fail(Errc::internal, "vertex set must be sorted and unique");
    if (set.back() >= g.vertex_count()) fail(Errc::unknown_vertex, "set vertex out of range");
    if (!std::binary_search(set.begin(), set.end(), a)) fail(Errc::unknown_vertex, "base not in set");
    if (n == g.vertex_count()) fail(Errc::boundary_empty, "set exhausts the graph, boundary is empty");
    if (n > options.max_unknowns)
        fail(Errc::size_cap_exceeded, "system of " + std::to_string(n) + " unknowns exceeds the cap of " +
                                          std::to_string(options.max_unknowns));
    if (!is_connected_subset(g, set)) fail(Errc::disconnected_set, "set is not connected");

    std::vector<int> slot(g.vertex_count(), -1);
    for (size_t i = 0; i < n; ++i) slot[set[i]] = static_cast<int>(i);

    const FieldContext ctx = g.context();
    PolynomialSystem sys;
    sys.n = n;
    sys.m.assign(n, std::vector<Polynomial>(n + 1));
    for (size_t i = 0; i < n; ++i) {
        VertexId x = set[i];
        std::vector<FieldElement> row(n + 1, FieldElement::from_int(0, ctx));
        row[i] = g.weighted_degree(x);
        for (const Edge& e : g.neighbors(x))
            if (slot[e.to] >= 0) row[static_cast<size_t>(slot[e.to])] -= e.weight;
        if (x == a) row[n] = g.weighted_degree(x);

        FieldElement scale = FieldElement::from_int(1, ctx);
        for (const auto& entry : row)
            if (!entry.den().is_one()) {
                Polynomial g2 = Polynomial::gcd(scale.num(), entry.den());
                scale = FieldElement::ratio(scale.num() * Polynomial::exact_div(entry.den(), g2),
                                            Polynomial::one(), ctx);
            }
        for (size_t j = 0; j <= n; ++j) sys.m[i][j] = require_polynomial(row[j] * scale);
    }

    sys.eliminate();
    std::vector<FieldElement> tilde = sys.back_substitute(ctx);

    DirichletSolution out;
    out.base = a;
    out.set = set;
    out.tilde_at_base = tilde[static_cast<size_t>(slot[a])];
    if (out.tilde_at_base.sign() <= 0) fail(Errc::internal, "renormalized solution not positive at base");

    out.values.assign(g.vertex_count(), FieldElement::from_int(0, ctx));
    for (size_t i = 0; i < n; ++i) out.values[set[i]] = tilde[i] / out.tilde_at_base;

    out.capacity = g.weighted_degree(a) / out.tilde_at_base;
    out.normalized_capacity = out.tilde_at_base.inverse();
    out.energy = energy(g, out.values);
    if (!(out.energy == out.capacity)) fail(Errc::internal, "energy does not match capacity");
    return out;
}

FieldElement capacity(const WeightedGraph& g, const VertexSet& set, VertexId a,
                      const SolveOptions& options) {
    return solve_dirichlet(g, set, a, options).capacity;
}

FieldElement energy(const WeightedGraph& g, const std::vector<FieldElement>& f) {
    FieldElement acc = FieldElement::from_int(0, g.context());
    for (VertexId x = 0; x < g.vertex_count(); ++x)
        for (const Edge& e : g.neighbors(x)) {
            if (e.to <= x) continue;  // each undirected edge once
            if (f[x].is_zero() && f[e.to].is_zero()) continue;
            FieldElement d = f[x] - f[e.to];
            acc += e.weight * d * d;
        }
    return acc;
}

bool greens_formula_holds(const WeightedGraph& g, const std::vector<FieldElement>& f,
                          const std::vector<FieldElement>& phi) {
    const FieldContext ctx = g.context();
    FieldElement lhs = FieldElement::from_int(0, ctx);
    FieldElement mid = FieldElement::from_int(0, ctx);
    FieldElement rhs = FieldElement::from_int(0, ctx);
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        if (!phi[x].is_zero()) lhs += g.weighted_degree(x) * phi[x] * laplacian_apply(g, f, x);
        if (!f[x].is_zero()) mid += g.weighted_degree(x) * f[x] * laplacian_apply(g, phi, x);
        for (const Edge& e : g.neighbors(x)) {
            if (e.to <= x) continue;
            rhs += e.weight * (f[x] - f[e.to]) * (phi[x] - phi[e.to]);
        }
    }
    return lhs == rhs && mid == rhs;
}

} // namespace nawalk
