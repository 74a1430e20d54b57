#pragma once

// JSON interchange and DOT rendering.
//
//   graph        {"vertices":[id...],"edges":[{"id":..,"src":..,"rng":..}...]}
//   group        {"kind":"cyclic","order":n} | {"kind":"trivial"}
//                | {"kind":"dihedral","n":k} | {"kind":"symmetric","degree":k}
//                | {"kind":"free","rank":k} | {"kind":"free_abelian","rank":k}
//                | {"kind":"table","elements":[..],"table":[[..]..]}
//   cocycle      {"group":{..},"label":{edge:word}}
//   action       {"group":{..},"act_v":{gen:{v:gv}},"act_e":{gen:{e:ge}}}
//   permutation  {"group":{..},"points":[..],"perm":{gen:{x:y}}}
//   matrix       {"rows":r,"cols":c,"entries":[["1","-2"],..]}
//   circle       {"n":2,"m":3,"rotation":{"symbol":"theta","rational":false}}
//
// Big integers are written as decimal strings. Keys are emitted in sorted
// order, lists in id order, so identical inputs give identical bytes.

#include <string>

#include "json.hpp"

#include "tgraph/action.hpp"
#include "tgraph/cayley.hpp"
#include "tgraph/circle.hpp"
#include "tgraph/covering.hpp"
#include "tgraph/graph.hpp"
#include "tgraph/group.hpp"
#include "tgraph/ktheory.hpp"

namespace tgraph::io {

using Json = nlohmann::json;

// Schema problems raise Error("InvalidJson").

Json to_json(const Graph& g);
RawGraph raw_graph_from_json(const Json& j);
Graph graph_from_json(const Json& j);

Json to_json(const GroupModel& g);
GroupModel group_from_json(const Json& j);

Json to_json(const Cocycle& c);
Cocycle cocycle_from_json(const Json& j, const Graph& graph);

Json to_json(const GraphAction& a);
GraphAction action_from_json(const Json& j, const Graph& graph);

Json to_json(const PermutationAction& p);
PermutationAction permutation_action_from_json(const Json& j);

GeneratingSet generating_set_from_json(const Json& j);

Json to_json(const GraphMorphism& phi);
Json to_json(const VertexClassification& c);
Json to_json(const MorphismReport& r);
Json to_json(const FreePresentation& p);
Json to_json(const CoverBall& b);

Json to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);
Json to_json(const KGroups& k);
Json to_json(const MoritaVerdict& v);

CircleGraph circle_from_json(const Json& j);
Json to_json(const GroupPresentation& p);
Json to_json(const AbelianGroup& a);
Json to_json(const CoverRecord& r);
Json to_json(const AlgebraProperties& p);

/// digraph with nodes and edges in id order, edges labelled by edge id.
std::string export_dot(const Graph& g);

}  // namespace tgraph::io
