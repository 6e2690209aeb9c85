#include "rigidity/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rigidity {

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    throw std::runtime_error("graph parse error at line " + std::to_string(line_no) + ": " + what);
}

} // namespace

SimpleGraph load_graph(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    long long n = -1;

    while (std::getline(in, line)) {
        ++line_no;
        std::size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos) continue;
        if (line[i] != '#') parse_fail(line_no, "expected \"# n=<count>\" header before edges");
        std::size_t pos = line.find("n=", i);
        if (pos == std::string::npos) continue; // plain comment before header
        try {
            n = std::stoll(line.substr(pos + 2));
        } catch (const std::exception&) {
            parse_fail(line_no, "bad vertex count in header");
        }
        if (n < 0) parse_fail(line_no, "vertex count must be nonnegative");
        break;
    }
    if (n < 0) throw std::runtime_error("graph parse error: missing \"# n=<count>\" header");

    std::vector<std::pair<Vertex, Vertex>> edges;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos || line[i] == '#') continue;
        std::istringstream ls(line);
        long long u, v;
        if (!(ls >> u >> v)) parse_fail(line_no, "expected \"<u> <v>\"");
        std::string rest;
        if (ls >> rest && rest[0] != '#') parse_fail(line_no, "trailing tokens after edge");
        if (u < 0 || v < 0 || u >= n || v >= n)
            parse_fail(line_no, "endpoint out of range [0, " + std::to_string(n) + ")");
        if (u == v) parse_fail(line_no, "loop not allowed in simple graph");
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }

    try {
        return SimpleGraph(static_cast<Vertex>(n), std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("graph parse error: ") + e.what());
    }
}

SimpleGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return load_graph(in);
}

void save_graph(std::ostream& out, const SimpleGraph& g) {
    out << "# n=" << g.n() << "\n";
    for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
}

void save_graph_file(const std::string& path, const SimpleGraph& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open graph file for writing: " + path);
    save_graph(out, g);
    if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

} // namespace rigidity
