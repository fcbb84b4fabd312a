#ifndef EHH_GRAPH_HPP
#define EHH_GRAPH_HPP

#include <vector>

#include "ehh/network.hpp"

namespace ehh {

// Sparse M x M binary matrix of direct hidden-layer edges: entry (i, j)
// means node i feeds node j. Derived from a network's parent pairs, but
// also constructible from raw entries so malformed structures can be
// represented and checked.
struct AdjacencyMatrix {
    int size = 0;          // M
    int source_count = 0;  // N_d
    // Column-wise storage: columns[j] lists the i with entry (i, j) = 1,
    // sorted ascending.
    std::vector<std::vector<int>> columns;

    bool at(int i, int j) const;
    std::vector<std::pair<int, int>> entries() const;

    static AdjacencyMatrix from_network(const EhhNetwork& net);
    static AdjacencyMatrix from_entries(
        int size, int source_count,
        const std::vector<std::pair<int, int>>& entries);

    // Structural checks on the raw matrix: strictly upper-triangular,
    // source columns empty, every intermediate column holding exactly two
    // edges.
    std::vector<Violation> validate() const;
};

// Sparse M x M binary matrix marking which source nodes reach which nodes
// through a directed path of length >= 1. Rows of intermediate nodes are
// all zero; the diagonal is zero.
struct InteractionMatrix {
    int size = 0;
    int source_count = 0;
    std::vector<std::vector<int>> columns;  // sorted source indices per column

    bool at(int i, int j) const;
};

// Backward traversal from every column through the direct-edge lists,
// collecting the source ancestors.
InteractionMatrix interaction_matrix(const AdjacencyMatrix& adj);

}  // namespace ehh

#endif  // EHH_GRAPH_HPP
