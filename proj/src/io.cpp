#include "nawalk/io.hpp"

#include <fstream>
#include <sstream>

namespace nawalk {

namespace {

std::string strip(const std::string& line) {
    std::string out = line;
    if (auto hash = out.find('#'); hash != std::string::npos) out.erase(hash);
    auto begin = out.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    auto end = out.find_last_not_of(" \t\r\n");
    return out.substr(begin, end - begin + 1);
}

std::vector<std::string> split_ws(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

struct Line {
    std::string keyword;
    std::string rest;
};

std::vector<Line> keyword_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        std::string line = strip(raw);
        if (line.empty()) continue;
        auto space = line.find_first_of(" \t");
        if (space == std::string::npos) {
            out.push_back({line, ""});
        } else {
            out.push_back({line.substr(0, space), strip(line.substr(space + 1))});
        }
    }
    return out;
}

FieldContext parse_field_line(const std::string& rest) {
    auto eq = rest.find('=');
    if (rest.substr(0, eq) != "denom" || eq == std::string::npos)
        fail(Errc::parse_error, "field line must read 'field denom=<D>'");
    int denom = std::stoi(rest.substr(eq + 1));
    if (denom < 1) fail(Errc::parse_error, "field denominator must be positive");
    return FieldContext{static_cast<unsigned>(denom)};
}

} // namespace

GraphInput parse_graph_text(const std::string& text) {
    FieldContext ctx{1};
    GraphBuilder builder(ctx);
    std::vector<std::string> interior_names, boundary_names;
    bool saw_edge = false;

    for (const Line& line : keyword_lines(text)) {
        if (line.keyword == "field") {
            if (saw_edge) fail(Errc::parse_error, "field line must precede edges");
            ctx = parse_field_line(line.rest);
            builder = GraphBuilder(ctx);
        } else if (line.keyword == "vertex") {
            if (line.rest.empty()) fail(Errc::parse_error, "vertex line without a name");
            builder.add_vertex(line.rest);
        } else if (line.keyword == "edge") {
            auto space1 = line.rest.find_first_of(" \t");
            if (space1 == std::string::npos) fail(Errc::parse_error, "edge line needs two endpoints");
            std::string u = line.rest.substr(0, space1);
            std::string tail = strip(line.rest.substr(space1 + 1));
            auto space2 = tail.find_first_of(" \t");
            if (space2 == std::string::npos) fail(Errc::parse_error, "edge line needs a weight literal");
            std::string v = tail.substr(0, space2);
            std::string literal = strip(tail.substr(space2 + 1));
            builder.add_edge(u, v, parse_field_literal(literal, ctx));
            saw_edge = true;
        } else if (line.keyword == "interior") {
            for (const auto& name : split_ws(line.rest)) interior_names.push_back(name);
        } else if (line.keyword == "boundary") {
            for (const auto& name : split_ws(line.rest)) boundary_names.push_back(name);
        } else {
            fail(Errc::parse_error, "unknown graph file directive '" + line.keyword + "'");
        }
    }
    if (!interior_names.empty() && !boundary_names.empty())
        fail(Errc::parse_error, "declare either interior or boundary, not both");

    GraphInput out{builder.build(true), {}, false};
    const size_t n = out.graph.vertex_count();
    out.interior.assign(n, true);
    if (!interior_names.empty()) {
        out.interior_declared = true;
        out.interior.assign(n, false);
        for (const auto& name : interior_names) out.interior[out.graph.require(name)] = true;
    } else if (!boundary_names.empty()) {
        out.interior_declared = true;
        for (const auto& name : boundary_names) out.interior[out.graph.require(name)] = false;
    }
    return out;
}

std::string serialize_graph(const WeightedGraph& g, const std::vector<bool>& interior) {
    std::ostringstream out;
    out << "field denom=" << g.context().denom << "\n";
    for (VertexId x = 0; x < g.vertex_count(); ++x) out << "vertex " << g.name(x) << "\n";
    for (VertexId x = 0; x < g.vertex_count(); ++x)
        for (const Edge& e : g.neighbors(x))
            if (e.to > x) out << "edge " << g.name(x) << " " << g.name(e.to) << " "
                              << e.weight.to_literal() << "\n";
    bool all = true;
    for (bool flag : interior) all = all && flag;
    if (!all) {
        out << "boundary";
        for (VertexId x = 0; x < g.vertex_count(); ++x)
            if (!interior[x]) out << " " << g.name(x);
        out << "\n";
    }
    return out.str();
}

std::shared_ptr<RayGenerator> parse_generator_text(const std::string& text) {
    FieldContext ctx{1};
    std::vector<FieldElement> head;
    std::optional<Rational> e0, e1;
    bool family_seen = false;
    for (const Line& line : keyword_lines(text)) {
        if (line.keyword == "field") {
            ctx = parse_field_line(line.rest);
        } else if (line.keyword == "family") {
            if (line.rest != "ray") fail(Errc::parse_error, "unknown generator family '" + line.rest + "'");
            family_seen = true;
        } else if (line.keyword == "head") {
            head.push_back(parse_field_literal(line.rest, ctx));
        } else if (line.keyword == "tail") {
            auto parts = split_ws(line.rest);
            if (parts.size() != 2) fail(Errc::parse_error, "tail line needs two exponents");
            e0 = parse_rational(parts[0]);
            e1 = parse_rational(parts[1]);
        } else {
            fail(Errc::parse_error, "unknown generator directive '" + line.keyword + "'");
        }
    }
    if (!family_seen) fail(Errc::parse_error, "generator file lacks a family line");
    if (!e0) fail(Errc::parse_error, "generator file lacks a tail rule");
    return std::make_shared<RayGenerator>(ctx, std::move(head), *e0, *e1);
}

LoadedInput parse_input_text(const std::string& text) {
    for (const Line& line : keyword_lines(text))
        if (line.keyword == "family") return {std::nullopt, parse_generator_text(text)};
    return {parse_graph_text(text), nullptr};
}

LoadedInput load_input_file(const std::string& path) { return parse_input_text(read_file(path)); }

TransitionMatrix parse_transition_text(const std::string& text) {
    struct RawRow {
        std::string state;
        std::vector<std::pair<std::string, Rational>> entries;
    };
    std::vector<RawRow> raw;
    std::istringstream in(text);
    std::string raw_line;
    while (std::getline(in, raw_line)) {
        std::string line = strip(raw_line);
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) fail(Errc::parse_error, "transition row lacks ':'");
        RawRow row;
        row.state = strip(line.substr(0, colon));
        std::string rest = line.substr(colon + 1);
        std::istringstream entries(rest);
        std::string entry;
        while (std::getline(entries, entry, ',')) {
            entry = strip(entry);
            if (entry.empty()) continue;
            auto eq = entry.find('=');
            if (eq == std::string::npos) fail(Errc::parse_error, "transition entry lacks '='");
            row.entries.push_back({strip(entry.substr(0, eq)), parse_rational(strip(entry.substr(eq + 1)))});
        }
        raw.push_back(std::move(row));
    }

    TransitionMatrix pi;
    for (const auto& row : raw) {
        for (const auto& existing : pi.names)
            if (existing == row.state) fail(Errc::parse_error, "duplicate row for state " + row.state);
        pi.names.push_back(row.state);
    }
    auto id_of = [&](const std::string& name) -> VertexId {
        for (VertexId i = 0; i < pi.names.size(); ++i)
            if (pi.names[i] == name) return i;
        fail(Errc::parse_error, "state '" + name + "' is referenced but has no row");
    };
    pi.rows.assign(raw.size(), {});
    pi.absorbing.assign(raw.size(), false);
    for (VertexId x = 0; x < raw.size(); ++x) {
        for (const auto& [name, p] : raw[x].entries)
            if (sgn(p) != 0) pi.rows[x].push_back({id_of(name), p});
        std::sort(pi.rows[x].begin(), pi.rows[x].end());
        pi.absorbing[x] = pi.prob(x, x) == 1;
    }
    pi.validate();
    return pi;
}

TransitionMatrix load_transition_file(const std::string& path) {
    return parse_transition_text(read_file(path));
}

std::string serialize_transition(const TransitionMatrix& pi) {
    std::ostringstream out;
    for (VertexId x = 0; x < pi.state_count(); ++x) {
        out << pi.names[x] << ":";
        bool first = true;
        for (const auto& [y, p] : pi.rows[x]) {
            out << (first ? " " : ", ") << pi.names[y] << "=" << to_string(p);
            first = false;
        }
        out << "\n";
    }
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::usage, "cannot open file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::usage, "cannot write file '" + path + "'");
    out << content;
}

} // namespace nawalk
