#pragma once

#include <iosfwd>
#include <string>

#include "rigidity/graph.hpp"

namespace rigidity {

// Edge-list text format:
//   # n=<count>
//   <u> <v>
//   ...
// The first line must be the "# n=" header; other lines starting with '#'
// are comments. Parse errors report 1-based line numbers.
SimpleGraph load_graph(std::istream& in);
SimpleGraph load_graph_file(const std::string& path);

void save_graph(std::ostream& out, const SimpleGraph& g);
void save_graph_file(const std::string& path, const SimpleGraph& g);

} // namespace rigidity
