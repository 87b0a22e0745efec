#include "nawalk/walk.hpp"

#include "nawalk/io.hpp"

#include "doctest.h"
#include "testutil.hpp"

#include <set>

using namespace nawalk;
using testutil::Rng;

namespace {

TransitionMatrix flip_chain() {
    return parse_transition_text("x: y=1\ny: x=1\n");
}

TransitionMatrix cycle4() {
    return parse_transition_text("x1: x2=1\nx2: x3=1\nx3: x4=1\nx4: x1=1\n");
}

struct Example55 {
    WeightedGraph g = testutil::example55();
    std::vector<bool> interior = testutil::example55_interior();
    TransitionMatrix pi = real_transition_matrix(g, interior);
    ComponentDecomposition decomposition = components(pi);
};

using ArrowSet = std::set<std::pair<std::string, std::string>>;

ArrowSet interior_arrows(const TransitionMatrix& pi) {
    ArrowSet out;
    for (VertexId x = 0; x < pi.state_count(); ++x) {
        if (pi.absorbing[x]) continue;
        for (const auto& [y, p] : pi.rows[x]) out.insert({pi.names[x], pi.names[y]});
    }
    return out;
}

} // namespace

TEST_CASE("real transition matrix of the path example") {
    Example55 ex;
    CHECK(interior_arrows(ex.pi) ==
          ArrowSet{{"1", "2"}, {"2", "1"}, {"3", "2"}, {"4", "3"}, {"4", "5"}});
    CHECK(ex.pi.prob(ex.pi.require("4"), ex.pi.require("3")) == rational_of(1, 2));
    CHECK(ex.pi.prob(ex.pi.require("4"), ex.pi.require("5")) == rational_of(1, 2));
    CHECK(ex.pi.absorbing[ex.pi.require("5")]);
    CHECK_NOTHROW(ex.pi.validate());
}

TEST_CASE("rational weights reduce to the classical chain") {
    Rng rng(6001);
    for (int i = 0; i < 20; ++i) {
        auto g = testutil::random_graph(rng, 2, 8, 0, 0);  // plain rational weights
        std::vector<bool> interior(g.vertex_count(), true);
        auto pi = real_transition_matrix(g, interior);
        for (VertexId x = 0; x < g.vertex_count(); ++x)
            for (const auto& e : g.neighbors(x))
                CHECK(pi.prob(x, e.to) == g.normalized_weight(x, e.to).real_part());
    }
}

TEST_CASE("component decomposition of the path example") {
    Example55 ex;
    auto members = [&](const char* name) {
        return ex.decomposition.classes[static_cast<size_t>(
            ex.decomposition.class_of[ex.pi.require(name)])];
    };
    CHECK(members("1") == std::vector<VertexId>{ex.pi.require("1"), ex.pi.require("2")});
    CHECK(members("3") == std::vector<VertexId>{ex.pi.require("3")});
    CHECK(ex.decomposition.class_count() == 4);
    CHECK(ex.decomposition.essential[static_cast<size_t>(ex.decomposition.class_of[ex.pi.require("1")])]);
    CHECK(ex.decomposition.essential[static_cast<size_t>(ex.decomposition.class_of[ex.pi.require("5")])]);
    CHECK(!ex.decomposition.essential[static_cast<size_t>(ex.decomposition.class_of[ex.pi.require("3")])]);
    CHECK(!ex.decomposition.essential[static_cast<size_t>(ex.decomposition.class_of[ex.pi.require("4")])]);
}

TEST_CASE("single absorbing state and full-rational chain") {
    auto single = parse_transition_text("z: z=1\n");
    auto d = components(single);
    CHECK(d.class_count() == 1);
    CHECK(d.essential[0]);

    Rng rng(6002);
    auto g = testutil::random_graph(rng, 2, 8, 0, 0);
    std::vector<bool> interior(g.vertex_count(), true);
    auto pi = real_transition_matrix(g, interior);
    auto dec = components(pi);
    CHECK(dec.class_count() == 1);
    CHECK(dec.essential[0]);
}

TEST_CASE("expected visit sums") {
    CHECK(expected_visits(flip_chain(), 0, 0) == 1);
    CHECK(expected_visits(flip_chain(), 0, 4) == 3);
    auto single = parse_transition_text("z: z=1\n");
    CHECK(expected_visits(single, 0, 5) == 6);
}

TEST_CASE("classification of the path example") {
    Example55 ex;
    auto verdicts = classify_states(ex.pi, ex.decomposition);
    int c3 = ex.decomposition.class_of[ex.pi.require("3")];
    CHECK(verdicts.class_verdict[c3] == Verdict::Transient);
    CHECK(verdicts.class_reason[c3] == Reason::NonEssential);
    int c12 = ex.decomposition.class_of[ex.pi.require("1")];
    CHECK(verdicts.class_verdict[c12] == Verdict::Recurrent);
    CHECK(verdicts.class_reason[c12] == Reason::FiniteEssential);
}

TEST_CASE("frontier-touching classes stay unknown") {
    auto ray = testutil::ray56(FieldElement::tau());
    auto trunc = materialize_ball(ray, 6);
    std::vector<bool> interior(trunc.graph.vertex_count(), true);
    auto pi = real_transition_matrix(trunc.graph, interior);
    auto dec = components(pi);
    auto verdicts = classify_states(pi, dec, {}, trunc.frontier);

    int ca = dec.class_of[pi.require("a")];
    CHECK(verdicts.class_verdict[ca] == Verdict::Transient);
    CHECK(verdicts.class_reason[ca] == Reason::NonEssential);
    int c12 = dec.class_of[pi.require("1")];
    CHECK(verdicts.class_verdict[c12] == Verdict::Recurrent);
    // the ray tail drains into the frontier and stays undecided
    int c4 = dec.class_of[pi.require("4")];
    CHECK(verdicts.class_verdict[c4] == Verdict::Unknown);
    CHECK(verdicts.class_reason[c4] == Reason::BudgetExhausted);
}

TEST_CASE("path reversal and shortest path symmetry") {
    Example55 ex;
    CHECK(path_reversal_holds(ex.pi, ex.decomposition));
    CHECK(shortest_path_symmetry_holds(ex.pi));

    auto c4 = cycle4();
    CHECK(!path_reversal_holds(c4, components(c4)));

    auto flip = flip_chain();
    CHECK(path_reversal_holds(flip, components(flip)));
}

TEST_CASE("structural invariants on random graphs") {
    Rng rng(6003);
    for (int i = 0; i < 40; ++i) {
        auto g = testutil::random_graph(rng, 2, 10);
        auto interior = testutil::random_interior(rng, g.vertex_count());
        auto pi = real_transition_matrix(g, interior);
        CHECK_NOTHROW(pi.validate());
        auto dec = components(pi);
        annotate_weight_scales(dec, g);

        CHECK(path_reversal_holds(pi, dec));
        CHECK(shortest_path_symmetry_holds(pi));

        // one-step arrows are exactly the same-scale normalized weights
        for (VertexId x = 0; x < g.vertex_count(); ++x) {
            if (!interior[x]) {
                CHECK(pi.arrow(x, x));
                continue;
            }
            for (const auto& e : g.neighbors(x))
                CHECK(pi.arrow(x, e.to) ==
                      same_scale(g.normalized_weight(x, e.to), FieldElement::from_int(1)));
        }

        // vertex weights share their scale inside every class
        for (size_t c = 0; c < dec.class_count(); ++c)
            for (VertexId v : dec.classes[c])
                if (interior[v])
                    CHECK(g.weighted_degree(v).valuation() == dec.class_weight_valuation[c]);

        // arrows leaving a class: reverse arrow, absorbing target, or an
        // infinitely heavier target in another class
        for (VertexId x = 0; x < g.vertex_count(); ++x)
            for (const auto& [y, p] : pi.rows[x]) {
                if (x == y) continue;
                int cases = 0;
                if (pi.arrow(y, x)) ++cases;
                if (pi.absorbing[y]) ++cases;
                if (!pi.absorbing[y] && dec.class_of[x] != dec.class_of[y] &&
                    *g.weighted_degree(y).valuation() < *g.weighted_degree(x).valuation())
                    ++cases;
                CHECK(cases == 1);
            }
    }
}

TEST_CASE("reachability matches products of normalized weights") {
    Rng rng(6004);
    for (int i = 0; i < 8; ++i) {
        auto g = testutil::random_graph(rng, 2, 6);
        auto interior = testutil::random_interior(rng, g.vertex_count());
        auto pi = real_transition_matrix(g, interior);
        const size_t n = g.vertex_count();

        // reachability inside the interior via the arrow digraph
        std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
        for (VertexId s = 0; s < n; ++s) {
            std::vector<VertexId> stack{s};
            reach[s][s] = true;
            while (!stack.empty()) {
                VertexId x = stack.back();
                stack.pop_back();
                for (const auto& [y, p] : pi.rows[x])
                    if (!reach[s][y]) {
                        reach[s][y] = true;
                        stack.push_back(y);
                    }
            }
        }

        // powers of the interior-restricted normalized weights
        auto zero = FieldElement::from_int(0, g.context());
        auto one = FieldElement::from_int(1, g.context());
        std::vector<std::vector<FieldElement>> restricted(n, std::vector<FieldElement>(n, zero));
        for (VertexId x = 0; x < n; ++x) {
            if (!interior[x]) continue;
            for (const auto& e : g.neighbors(x))
                if (interior[e.to]) restricted[x][e.to] = g.normalized_weight(x, e.to);
        }
        std::vector<std::vector<FieldElement>> power(n, std::vector<FieldElement>(n, zero));
        for (VertexId x = 0; x < n; ++x) power[x][x] = one;
        std::vector<std::vector<bool>> ever_unit(n, std::vector<bool>(n, false));
        for (size_t step = 0; step <= n; ++step) {
            for (VertexId x = 0; x < n; ++x)
                for (VertexId y = 0; y < n; ++y)
                    if (power[x][y].sign() > 0 && same_scale(power[x][y], one)) ever_unit[x][y] = true;
            if (step == n) break;
            std::vector<std::vector<FieldElement>> next(n, std::vector<FieldElement>(n, zero));
            for (VertexId x = 0; x < n; ++x)
                for (VertexId y = 0; y < n; ++y) {
                    if (power[x][y].is_zero()) continue;
                    for (VertexId z = 0; z < n; ++z)
                        if (!restricted[y][z].is_zero()) next[x][z] += power[x][y] * restricted[y][z];
                }
            power = std::move(next);
        }

        for (VertexId x = 0; x < n; ++x) {
            if (!interior[x]) continue;
            for (VertexId y = 0; y < n; ++y) {
                if (!interior[y]) continue;
                CHECK(reach[x][y] == ever_unit[x][y]);
            }
        }
    }
}

TEST_CASE("simulation statistics") {
    auto single = parse_transition_text("z: z=1\n");
    auto stats = simulate(single, 0, 25, 100, 42);
    CHECK(stats.mean_visits == doctest::Approx(26.0));
    CHECK(stats.stddev_visits == doctest::Approx(0.0));

    auto flip = flip_chain();
    auto flip_stats = simulate(flip, 0, 100, 2000, 43);
    CHECK(flip_stats.mean_visits == doctest::Approx(51.0));  // deterministic period-2 returns
    CHECK(flip_stats.return_frequency == doctest::Approx(1.0));

    Example55 ex;
    auto from3 = simulate(ex.pi, ex.pi.require("3"), 60, 2000, 44);
    CHECK(from3.return_frequency == 0.0);
}

TEST_CASE("monte carlo agrees with exact visit sums") {
    Rng rng(6005);
    for (int i = 0; i < 6; ++i) {
        auto g = testutil::random_graph(rng, 2, 8);
        auto interior = testutil::random_interior(rng, g.vertex_count());
        auto pi = real_transition_matrix(g, interior);
        std::uniform_int_distribution<size_t> pick(0, g.vertex_count() - 1);
        VertexId start = static_cast<VertexId>(pick(rng));
        const size_t steps = 60;
        const size_t trials = 20000;
        auto stats = simulate(pi, start, steps, trials, 1000 + static_cast<std::uint64_t>(i));
        double exact = expected_visits(pi, start, steps).get_d();
        double se = stats.stddev_visits / std::sqrt(static_cast<double>(trials));
        CHECK(std::abs(stats.mean_visits - exact) <= 4 * se + 1e-9);
    }
}

TEST_CASE("transition file round trip") {
    Rng rng(6006);
    for (int i = 0; i < 10; ++i) {
        auto g = testutil::random_graph(rng, 2, 8);
        auto interior = testutil::random_interior(rng, g.vertex_count());
        auto pi = real_transition_matrix(g, interior);
        CHECK(parse_transition_text(serialize_transition(pi)) == pi);
    }
    CHECK_THROWS_AS(parse_transition_text("x: y=1/2\ny: x=1\n"), Error);  // row sum below one
    CHECK_THROWS_AS(parse_transition_text("x: x=1/2, y=1/2\ny: x=1\n"), Error);  // bad diagonal
}
