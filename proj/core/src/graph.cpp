#include "ehh/graph.hpp"

#include <algorithm>

namespace ehh {

bool AdjacencyMatrix::at(int i, int j) const {
    const auto& col = columns.at(j);
    return std::binary_search(col.begin(), col.end(), i);
}

std::vector<std::pair<int, int>> AdjacencyMatrix::entries() const {
    std::vector<std::pair<int, int>> out;
    for (int j = 0; j < size; ++j) {
        for (int i : columns[j]) out.emplace_back(i, j);
    }
    return out;
}

AdjacencyMatrix AdjacencyMatrix::from_network(const EhhNetwork& net) {
    AdjacencyMatrix adj;
    adj.size = net.node_count();
    adj.source_count = net.source_count();
    adj.columns.resize(adj.size);
    for (int j = adj.source_count; j < adj.size; ++j) {
        const auto& node = net.intermediates()[j - adj.source_count];
        adj.columns[j] = {node.parent1, node.parent2};
    }
    return adj;
}

AdjacencyMatrix AdjacencyMatrix::from_entries(
    int size, int source_count,
    const std::vector<std::pair<int, int>>& entries) {
    AdjacencyMatrix adj;
    adj.size = size;
    adj.source_count = source_count;
    adj.columns.resize(size);
    for (const auto& [i, j] : entries) adj.columns.at(j).push_back(i);
    for (auto& col : adj.columns) std::sort(col.begin(), col.end());
    return adj;
}

std::vector<Violation> AdjacencyMatrix::validate() const {
    std::vector<Violation> out;
    for (int j = 0; j < size; ++j) {
        for (int i : columns[j]) {
            if (i >= j) {
                out.push_back({j, RuleViolation::kNotUpperTriangular,
                               "entry (" + std::to_string(i) + "," +
                                   std::to_string(j) +
                                   ") on or below the diagonal"});
            }
        }
        if (j < source_count) {
            if (!columns[j].empty()) {
                out.push_back({j, RuleViolation::kSourceHasParents,
                               "source column holds " +
                                   std::to_string(columns[j].size()) +
                                   " edges"});
            }
        } else if (columns[j].size() != 2) {
            out.push_back({j, RuleViolation::kColumnDegree,
                           "column holds " +
                               std::to_string(columns[j].size()) +
                               " edges, expected 2"});
        }
    }
    return out;
}

bool InteractionMatrix::at(int i, int j) const {
    const auto& col = columns.at(j);
    return std::binary_search(col.begin(), col.end(), i);
}

InteractionMatrix interaction_matrix(const AdjacencyMatrix& adj) {
    InteractionMatrix ir;
    ir.size = adj.size;
    ir.source_count = adj.source_count;
    ir.columns.resize(adj.size);

    std::vector<int> stack;
    std::vector<char> seen(adj.size);
    for (int j = 0; j < adj.size; ++j) {
        std::fill(seen.begin(), seen.end(), 0);
        stack.assign(adj.columns[j].begin(), adj.columns[j].end());
        auto& out = ir.columns[j];
        while (!stack.empty()) {
            const int i = stack.back();
            stack.pop_back();
            if (seen[i]) continue;
            seen[i] = 1;
            if (i < adj.source_count) {
                out.push_back(i);
            } else {
                stack.insert(stack.end(), adj.columns[i].begin(),
                             adj.columns[i].end());
            }
        }
        std::sort(out.begin(), out.end());
    }
    return ir;
}

}  // namespace ehh
