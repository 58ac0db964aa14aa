#include "urm/io.hpp"

#include <fstream>
#include <sstream>

#include "urm/errors.hpp"

namespace urm {
namespace {

bool blank(const std::string& s) {
    return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'", 0);
    return in;
}

} // namespace

Graph parse_graph(std::istream& in) {
    std::string line;
    int lineno = 0;
    long long n = -1, m = -1;
    Graph g;
    long long seen = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line) || line[0] == 'c') continue;
        std::istringstream ss(line);
        if (n < 0) {
            std::string p, kind;
            if (!(ss >> p >> kind >> n >> m) || p != "p" || kind != "urm" || n < 0 || m < 0)
                throw parse_error("expected header 'p urm <n> <m>'", lineno);
            std::string rest;
            if (ss >> rest) throw parse_error("trailing tokens after header", lineno);
            g = Graph(static_cast<int>(n));
            continue;
        }
        long long u, v;
        if (!(ss >> u >> v)) throw parse_error("malformed edge line", lineno);
        std::string rest;
        if (ss >> rest) throw parse_error("trailing tokens after edge", lineno);
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw parse_error("vertex id out of range", lineno);
        if (u == v) throw parse_error("self-loop", lineno);
        if (g.has_edge(static_cast<int>(u), static_cast<int>(v)))
            throw parse_error("duplicate edge", lineno);
        g.add_edge(static_cast<int>(u), static_cast<int>(v));
        ++seen;
    }
    if (n < 0) throw parse_error("missing header 'p urm <n> <m>'", lineno);
    if (seen != m) throw parse_error("edge count does not match header", lineno);
    return g;
}

Graph parse_graph_text(const std::string& text) {
    std::istringstream ss(text);
    return parse_graph(ss);
}

Graph read_graph_file(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
    out << "p urm " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_graph_file(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open '" + path + "' for writing", 0);
    write_graph(out, g);
}

Matching parse_matching(std::istream& in, const Graph& host) {
    std::string line;
    int lineno = 0;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line) || line[0] == 'c') continue;
        std::istringstream ss(line);
        long long u, v;
        if (!(ss >> u >> v)) throw parse_error("malformed matching line", lineno);
        if (u < 0 || u >= host.vertex_count() || v < 0 || v >= host.vertex_count())
            throw parse_error("vertex id out of range", lineno);
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    return Matching(host, std::move(edges));
}

Matching read_matching_file(const std::string& path, const Graph& host) {
    auto in = open_or_throw(path);
    return parse_matching(in, host);
}

void write_matching(std::ostream& out, const Matching& m) {
    for (const Edge& e : m.edges()) out << e.u << ' ' << e.v << '\n';
}

} // namespace urm
