#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tgraph/action.hpp"
#include "tgraph/group.hpp"

namespace tgraph {

/// Ordered generator list (h_1, ..., h_n). Repeats are allowed and give
/// parallel edges.
struct GeneratingSet {
  GroupModel group;
  std::vector<Element> generators;
};

struct CayleyGraph {
  Graph graph;
  GraphAction action;  // left translation, validated
};

/// E(G,S): vertices G, edges S x G, s(h,g) = g, r(h,g) = gh. Vertex ids are
/// element names and edge ids "(h,g)"; a repeated generator h gets "h#2",
/// "h#3", ... in its edge ids.
///
/// Symbolic groups need `radius`: the window keeps elements of word length
/// <= radius and the edges (h,g) with both g and gh inside.
/// Throws Error("NotGenerating") or Error("TruncationRequired").
CayleyGraph cayley_graph(const GeneratingSet& s, std::optional<std::size_t> radius = std::nullopt);

}  // namespace tgraph
