#pragma once

#include <string>

#include "netsched/netgen.hpp"
#include "netsched/types.hpp"

namespace netsched {

/// Edge-list text format: one "src dst [weight]" triple per line, weight
/// defaulting to 1.0, '#' starting a comment line. Duplicate edges
/// accumulate additively. Undirected inputs are symmetrized on load.
struct EdgeListOptions {
    bool directed = true;
    bool one_based = false;  ///< node ids start at 1 instead of 0
    int declared_nodes = 0;  ///< isolate-aware node count; 0 infers from max id
};

/// Parses an edge list into raw connectivity with c(dst, src) += weight.
/// Throws ParseError (with the line number) on malformed lines or negative
/// weights, Error on I/O failure.
RawConnectivity load_edge_list(const std::string& path, const EdgeListOptions& options = {});

/// Writes nonzero entries as "src dst weight" lines, sorted by (src, dst),
/// with enough digits to round-trip exactly.
void save_edge_list(const std::string& path, const RawConnectivity& raw, bool one_based = false);

}  // namespace netsched
