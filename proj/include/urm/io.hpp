#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "urm/graph.hpp"

namespace urm {

// Edge-list document: comment lines start with 'c', the header is
// `p urm <n> <m>`, followed by m lines `<u> <v>` with 0-based ids.
// Throws parse_error with the offending line number.
Graph parse_graph(std::istream& in);
Graph parse_graph_text(const std::string& text);
Graph read_graph_file(const std::string& path);

void write_graph(std::ostream& out, const Graph& g);
void write_graph_file(const std::string& path, const Graph& g);

// Matching document: one `<u> <v>` pair per line; 'c' comments and blank
// lines are ignored. Validation against the host happens in Matching.
Matching parse_matching(std::istream& in, const Graph& host);
Matching read_matching_file(const std::string& path, const Graph& host);
void write_matching(std::ostream& out, const Matching& m);

} // namespace urm
