#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "epiq/common/random.hpp"
#include "epiq/netgen/graph.hpp"

namespace epiq::netgen {

enum class NodeState : std::uint8_t { S, I, R };

/// Subgraph induced by the susceptible nodes, relabeled in ascending id order.
Graph induced_susceptible_subgraph(const Graph& g, std::span<const NodeState> states);

/// Subgraph induced by nodes with keep[v] true, relabeled in ascending order.
Graph induced_subgraph(const Graph& g, const std::vector<bool>& keep);

enum class ImmunizationStrategy { Random, TopDegree };

/// ceil(fraction * n) node ids, sorted ascending. TopDegree ranks by degree
/// (ties to the smaller id); Random samples without replacement.
std::vector<NodeId> immunize(const Graph& g, double fraction, ImmunizationStrategy strategy, Seed seed);

}  // namespace epiq::netgen
