#include "netsched/edge_list.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace netsched {

namespace {

struct ParsedEdge {
    long src;
    long dst;
    double weight;
};

}  // namespace

RawConnectivity load_edge_list(const std::string& path, const EdgeListOptions& options) {
    std::ifstream in(path);
    if (!in) throw Error("load_edge_list: cannot open '" + path + "'");

    std::vector<ParsedEdge> edges;
    long max_id = -1;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;

        std::istringstream fields(line);
        long src = 0, dst = 0;
        double weight = 1.0;
        if (!(fields >> src >> dst))
            throw ParseError("load_edge_list: line " + std::to_string(line_number) +
                             ": expected 'src dst [weight]', got '" + line + "'");
        if (fields >> weight) {
            std::string trailing;
            if (fields >> trailing)
                throw ParseError("load_edge_list: line " + std::to_string(line_number) +
                                 ": unexpected trailing token '" + trailing + "'");
        } else {
            fields.clear();
            std::string trailing;
            if (fields >> trailing)
                throw ParseError("load_edge_list: line " + std::to_string(line_number) +
                                 ": malformed weight '" + trailing + "'");
            weight = 1.0;
        }
        if (weight < 0.0)
            throw ParseError("load_edge_list: line " + std::to_string(line_number) +
                             ": negative weight " + std::to_string(weight));
        if (options.one_based) {
            if (src < 1 || dst < 1)
                throw ParseError("load_edge_list: line " + std::to_string(line_number) +
                                 ": node ids must be >= 1 in one-based mode");
            --src;
            --dst;
        } else if (src < 0 || dst < 0) {
            throw ParseError("load_edge_list: line " + std::to_string(line_number) +
                             ": node ids must be nonnegative");
        }
        edges.push_back({src, dst, weight});
        max_id = std::max({max_id, src, dst});
    }

    long n = options.declared_nodes > 0 ? options.declared_nodes : max_id + 1;
    if (n < 1) throw ParseError("load_edge_list: no edges and no declared node count");
    if (max_id >= n)
        throw ParseError("load_edge_list: node id " + std::to_string(max_id) +
                         " outside declared range of " + std::to_string(n) + " nodes");

    Matrix c = Matrix::Zero(n, n);
    for (const ParsedEdge& e : edges) {
        c(e.dst, e.src) += e.weight;  // a_{ij} = weight from j to i after conversion
        if (!options.directed && e.src != e.dst) c(e.src, e.dst) += e.weight;
    }
    return RawConnectivity{std::move(c), options.directed};
}

void save_edge_list(const std::string& path, const RawConnectivity& raw, bool one_based) {
    std::ofstream out(path);
    if (!out) throw Error("save_edge_list: cannot write '" + path + "'");
    const long offset = one_based ? 1 : 0;
    const int n = static_cast<int>(raw.c.rows());
    out << "# " << n << " nodes, " << (raw.directed ? "directed" : "undirected") << "\n";
    char buffer[64];
    for (int src = 0; src < n; ++src) {
        for (int dst = 0; dst < n; ++dst) {
            const double w = raw.c(dst, src);
            if (w == 0.0) continue;
            if (!raw.directed && dst < src) continue;  // emit each undirected edge once
            std::snprintf(buffer, sizeof buffer, "%.17g", w);
            out << (src + offset) << ' ' << (dst + offset) << ' ' << buffer << '\n';
        }
    }
    if (!out) throw Error("save_edge_list: write failed for '" + path + "'");
}

}  // namespace netsched
