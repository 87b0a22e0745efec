#pragma once

#include "nawalk/graph.hpp"
#include "nawalk/walk.hpp"

#include <memory>

namespace nawalk {

// Graph file, line oriented:
//   field denom=<D>
//   vertex <name>
//   edge <u> <v> <field-literal>
//   interior <name>... | boundary <name>...   (one form at most; default U = V)
// '#' starts a comment.
struct GraphInput {
    WeightedGraph graph;
    std::vector<bool> interior;
    bool interior_declared = false;
};

GraphInput parse_graph_text(const std::string& text);
std::string serialize_graph(const WeightedGraph& g, const std::vector<bool>& interior);

// Generator file:
//   field denom=<D>
//   family ray
//   head <field-literal>      (k-th line gives b(k, k+1))
//   tail <e0> <e1>            (b(k, k+1) = t^(e0 + e1*k) past the head)
std::shared_ptr<RayGenerator> parse_generator_text(const std::string& text);

struct LoadedInput {
    std::optional<GraphInput> graph;
    std::shared_ptr<RayGenerator> generator;
};

// Detects the generator form by its `family` line.
LoadedInput parse_input_text(const std::string& text);
LoadedInput load_input_file(const std::string& path);

// Transition matrix file: one row per line, exact fractions.
//   <state>: <target>=<p/q>, <target>=<p/q>, ...
TransitionMatrix parse_transition_text(const std::string& text);
TransitionMatrix load_transition_file(const std::string& path);
std::string serialize_transition(const TransitionMatrix& pi);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace nawalk
