#include "tgraph/cayley.hpp"

#include <map>

namespace tgraph {

CayleyGraph cayley_graph(const GeneratingSet& s, std::optional<std::size_t> radius) {
  const GroupModel& G = s.group;
  if (s.generators.empty()) throw Error("NotGenerating", "generating set is empty");
  if (G.is_finite() && !G.generates(s.generators))
    throw Error("NotGenerating", "generators do not generate the group");
  if (!G.is_finite() && !radius) throw Error("TruncationRequired", "infinite group needs a ball radius");

  const std::vector<Element> elems = G.is_finite() ? G.elements() : G.ball(*radius);
  std::map<Element, std::size_t> position;
  for (std::size_t i = 0; i < elems.size(); ++i) position.emplace(elems[i], i);

  std::vector<std::string> labels;
  std::map<std::string, std::size_t> seen;
  for (const auto& h : s.generators) {
    auto name = G.name(h);
    auto k = ++seen[name];
    labels.push_back(k == 1 ? name : name + "#" + std::to_string(k));
  }

  RawGraph raw;
  for (const auto& g : elems) raw.vertices.push_back(G.name(g));
  for (std::size_t i = 0; i < s.generators.size(); ++i)
    for (const auto& g : elems) {
      auto gh = G.multiply(g, s.generators[i]);
      if (!position.contains(gh)) continue;
      raw.edges.push_back({pair_id(labels[i], G.name(g)), G.name(g), G.name(gh)});
    }
  Graph graph = Graph::build(raw);

  const auto gens = G.generators();
  std::vector<std::vector<std::size_t>> vmaps, emaps;
  for (const auto& t : gens) {
    std::vector<std::size_t> vm(graph.num_vertices(), kOutside), em(graph.num_edges(), kOutside);
    for (const auto& g : elems) {
      auto tg = G.multiply(t, g);
      if (!position.contains(tg)) continue;
      vm[graph.vertex_index(G.name(g))] = graph.vertex_index(G.name(tg));
      for (const auto& label : labels) {
        auto from = graph.find_edge(pair_id(label, G.name(g)));
        auto to = graph.find_edge(pair_id(label, G.name(tg)));
        if (from && to) em[*from] = *to;
      }
    }
    vmaps.push_back(std::move(vm));
    emaps.push_back(std::move(em));
  }
  GraphAction action(G, graph, gens, std::move(vmaps), std::move(emaps));
  return CayleyGraph{std::move(graph), validate_action(action)};
}

}  // namespace tgraph
