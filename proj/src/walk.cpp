#include "nawalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

namespace nawalk {

Rational TransitionMatrix::prob(VertexId x, VertexId y) const {
    for (const auto& [to, p] : rows.at(x))
        if (to == y) return p;
    return 0;
}

bool TransitionMatrix::arrow(VertexId x, VertexId y) const {
    for (const auto& [to, p] : rows.at(x))
        if (to == y) return sgn(p) > 0;
    return false;
}

VertexId TransitionMatrix::require(const std::string& name) const {
    for (VertexId i = 0; i < names.size(); ++i)
        if (names[i] == name) return i;
    fail(Errc::unknown_vertex, "unknown state '" + name + "'");
}

void TransitionMatrix::validate() const {
    if (names.size() != rows.size() || absorbing.size() != rows.size())
        fail(Errc::internal, "inconsistent transition matrix shape");
    for (VertexId x = 0; x < rows.size(); ++x) {
        Rational sum = 0;
        for (const auto& [to, p] : rows[x]) {
            if (to >= rows.size()) fail(Errc::unknown_vertex, "transition target out of range");
            if (sgn(p) <= 0 || p > 1)
                fail(Errc::parse_error, "transition probability out of (0,1] at state " + names[x]);
            sum += p;
        }
        if (sum != 1) fail(Errc::parse_error, "row of state " + names[x] + " does not sum to 1");
        Rational diag = prob(x, x);
        if (diag != 0 && diag != 1)
            fail(Errc::diagonal_violation, "state " + names[x] + " has diagonal neither 0 nor 1");
        if ((diag == 1) != static_cast<bool>(absorbing[x]))
            fail(Errc::diagonal_violation, "absorbing flag of state " + names[x] + " contradicts its row");
    }
}

TransitionMatrix real_transition_matrix(const WeightedGraph& g, const std::vector<bool>& interior) {
    const size_t n = g.vertex_count();
    if (interior.size() != n) fail(Errc::internal, "interior mask size mismatch");
    TransitionMatrix pi;
    pi.names.reserve(n);
    for (VertexId x = 0; x < n; ++x) pi.names.push_back(g.name(x));
    pi.rows.assign(n, {});
    pi.absorbing.assign(n, false);
    for (VertexId x = 0; x < n; ++x) {
        if (!interior[x]) {
            pi.absorbing[x] = true;
            pi.rows[x].push_back({x, 1});
            continue;
        }
        Rational sum = 0;
        for (const Edge& e : g.neighbors(x)) {
            Rational p = g.normalized_weight(x, e.to).real_part();
            if (sgn(p) > 0) {
                pi.rows[x].push_back({e.to, p});
                sum += p;
            }
        }
        if (sum != 1) fail(Errc::internal, "real transition row does not sum to 1");
    }
    return pi;
}

namespace {

// Iterative Tarjan; emits components in reverse topological order of the
// condensation, which is then reversed so that edges go from lower to higher
// class ids.
struct TarjanState {
    const TransitionMatrix& pi;
    std::vector<int> index, low;
    std::vector<bool> on_stack;
    std::vector<VertexId> stack;
    int counter = 0;
    std::vector<std::vector<VertexId>> sccs;

    explicit TarjanState(const TransitionMatrix& m)
        : pi(m), index(m.state_count(), -1), low(m.state_count(), 0), on_stack(m.state_count(), false) {}

    void run(VertexId root) {
        struct Frame {
            VertexId v;
            size_t edge = 0;
        };
        std::vector<Frame> frames{{root}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto& row = pi.rows[f.v];
            bool descended = false;
            while (f.edge < row.size()) {
                VertexId w = row[f.edge].first;
                ++f.edge;
                if (w == f.v) continue;
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w});
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[f.v] = std::min(low[f.v], index[w]);
            }
            if (descended) continue;
            if (low[f.v] == index[f.v]) {
                std::vector<VertexId> scc;
                while (true) {
                    VertexId w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    scc.push_back(w);
                    if (w == f.v) break;
                }
                std::sort(scc.begin(), scc.end());
                sccs.push_back(std::move(scc));
            }
            VertexId finished = f.v;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[finished]);
        }
    }
};

} // namespace

ComponentDecomposition components(const TransitionMatrix& pi) {
    const size_t n = pi.state_count();
    TarjanState tarjan(pi);
    for (VertexId v = 0; v < n; ++v)
        if (tarjan.index[v] == -1) tarjan.run(v);
    std::reverse(tarjan.sccs.begin(), tarjan.sccs.end());

    ComponentDecomposition out;
    out.classes = std::move(tarjan.sccs);
    out.class_of.assign(n, -1);
    for (size_t c = 0; c < out.classes.size(); ++c)
        for (VertexId v : out.classes[c]) out.class_of[v] = static_cast<int>(c);

    out.condensation_out.assign(out.classes.size(), {});
    for (VertexId v = 0; v < n; ++v)
        for (const auto& [w, p] : pi.rows[v]) {
            int cv = out.class_of[v], cw = out.class_of[w];
            if (cv != cw) out.condensation_out[cv].push_back(cw);
        }
    for (auto& edges : out.condensation_out) {
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }
    out.essential.resize(out.classes.size());
    for (size_t c = 0; c < out.classes.size(); ++c) out.essential[c] = out.condensation_out[c].empty();
    out.class_weight_valuation.assign(out.classes.size(), std::nullopt);
    return out;
}

void annotate_weight_scales(ComponentDecomposition& decomposition, const WeightedGraph& g) {
    for (size_t c = 0; c < decomposition.classes.size(); ++c) {
        VertexId rep = decomposition.classes[c].front();
        decomposition.class_weight_valuation[c] = g.weighted_degree(rep).valuation();
    }
}

Rational expected_visits(const TransitionMatrix& pi, VertexId a, size_t steps) {
    const size_t n = pi.state_count();
    if (a >= n) fail(Errc::unknown_vertex, "state out of range");
    std::vector<Rational> dist(n, 0);
    dist[a] = 1;
    Rational total = 0;
    for (size_t step = 0;; ++step) {
        total += dist[a];
        if (step == steps) break;
        std::vector<Rational> next(n, 0);
        for (VertexId x = 0; x < n; ++x) {
            if (sgn(dist[x]) == 0) continue;
            for (const auto& [y, p] : pi.rows[x]) next[y] += dist[x] * p;
        }
        dist = std::move(next);
    }
    return total;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Recurrent: return "Recurrent";
        case Verdict::Transient: return "Transient";
        case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

std::string to_string(Reason r) {
    switch (r) {
        case Reason::NonEssential: return "NonEssential";
        case Reason::FiniteEssential: return "FiniteEssential";
        case Reason::GreenInfinite: return "GreenInfinite";
        case Reason::GreenFinite: return "GreenFinite";
        case Reason::BudgetExhausted: return "BudgetExhausted";
    }
    return "?";
}

bool Classification::any_unknown() const {
    return std::any_of(class_verdict.begin(), class_verdict.end(),
                       [](Verdict v) { return v == Verdict::Unknown; });
}

Classification classify_states(const TransitionMatrix&, const ComponentDecomposition& decomposition,
                               const std::map<int, bool>& green_infinite_by_class,
                               const std::vector<bool>& frontier, bool prefer_green) {
    const size_t classes = decomposition.class_count();
    // A class is undecidable when its forward closure contains a frontier
    // state: rows beyond the frontier are unknown and could merge or extend
    // the downstream structure.
    std::vector<bool> tainted(classes, false);
    if (!frontier.empty()) {
        for (size_t c = 0; c < classes; ++c)
            for (VertexId v : decomposition.classes[c])
                if (frontier[v]) tainted[c] = true;
        for (size_t c = classes; c-- > 0;)
            for (int succ : decomposition.condensation_out[c])
                if (tainted[succ]) tainted[c] = true;
    }

    Classification out;
    out.class_verdict.resize(classes);
    out.class_reason.resize(classes);
    for (size_t c = 0; c < classes; ++c) {
        if (tainted[c]) {
            out.class_verdict[c] = Verdict::Unknown;
            out.class_reason[c] = Reason::BudgetExhausted;
            continue;
        }
        if (!decomposition.essential[c]) {
            out.class_verdict[c] = Verdict::Transient;
            out.class_reason[c] = Reason::NonEssential;
            continue;
        }
        auto green = green_infinite_by_class.find(static_cast<int>(c));
        bool have_green = green != green_infinite_by_class.end();
        if (have_green && prefer_green) {
            out.class_verdict[c] = green->second ? Verdict::Recurrent : Verdict::Transient;
            out.class_reason[c] = green->second ? Reason::GreenInfinite : Reason::GreenFinite;
        } else {
            // decided classes are finite sets; a finite essential class is recurrent
            out.class_verdict[c] = Verdict::Recurrent;
            out.class_reason[c] = Reason::FiniteEssential;
        }
    }
    return out;
}

bool path_reversal_holds(const TransitionMatrix& pi, const ComponentDecomposition& decomposition) {
    for (VertexId x = 0; x < pi.state_count(); ++x)
        for (const auto& [y, p] : pi.rows[x]) {
            if (x == y) continue;
            if (decomposition.class_of[x] == decomposition.class_of[y] && !pi.arrow(y, x)) return false;
        }
    return true;
}

bool shortest_path_symmetry_holds(const TransitionMatrix& pi) {
    const size_t n = pi.state_count();
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
    for (VertexId s = 0; s < n; ++s) {
        dist[s][s] = 0;
        std::deque<VertexId> queue{s};
        while (!queue.empty()) {
            VertexId x = queue.front();
            queue.pop_front();
            for (const auto& [y, p] : pi.rows[x]) {
                if (x == y || dist[s][y] != -1) continue;
                dist[s][y] = dist[s][x] + 1;
                queue.push_back(y);
            }
        }
    }
    for (VertexId x = 0; x < n; ++x)
        for (VertexId y = 0; y < n; ++y)
            if (dist[x][y] > 0 && dist[y][x] > 0 && dist[x][y] != dist[y][x]) return false;
    return true;
}

VisitStats simulate(const TransitionMatrix& pi, VertexId start, size_t max_steps, size_t trials,
                    std::uint64_t seed) {
    if (trials == 0) fail(Errc::usage, "simulate requires at least one trial");
    if (start >= pi.state_count()) fail(Errc::unknown_vertex, "start state out of range");

    // one cumulative-probability table per state
    std::vector<std::vector<std::pair<double, VertexId>>> cumulative(pi.state_count());
    for (VertexId x = 0; x < pi.state_count(); ++x) {
        double acc = 0;
        for (const auto& [y, p] : pi.rows[x]) {
            acc += p.get_d();
            cumulative[x].push_back({acc, y});
        }
        cumulative[x].back().first = 1.0;  // absorb rounding slack
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double sum = 0, sum_sq = 0;
    size_t returned = 0;
    for (size_t trial = 0; trial < trials; ++trial) {
        VertexId state = start;
        size_t visits = 1;
        bool came_back = false;
        for (size_t step = 0; step < max_steps; ++step) {
            double u = unit(rng);
            const auto& row = cumulative[state];
            size_t lo = 0, hi = row.size() - 1;
            while (lo < hi) {
                size_t mid = (lo + hi) / 2;
                if (row[mid].first < u)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            state = row[lo].second;
            if (state == start) {
                ++visits;
                came_back = true;
            }
        }
        sum += static_cast<double>(visits);
        sum_sq += static_cast<double>(visits) * static_cast<double>(visits);
        if (came_back) ++returned;
    }

    VisitStats stats;
    stats.trials = trials;
    stats.steps = max_steps;
    stats.mean_visits = sum / static_cast<double>(trials);
    double variance = sum_sq / static_cast<double>(trials) - stats.mean_visits * stats.mean_visits;
    stats.stddev_visits = variance > 0 ? std::sqrt(variance) : 0.0;
    stats.return_frequency = static_cast<double>(returned) / static_cast<double>(trials);
    return stats;
}

} // namespace nawalk
