#include "tgraph/io.hpp"

#include <algorithm>

namespace tgraph::io {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error("InvalidJson", what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string as_string(const Json& j, const std::string& what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  schema(what + " must be a string");
}

std::size_t as_size(const Json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) schema(what + " must be a non-negative integer");
  return j.get<std::size_t>();
}

BigInt as_bigint(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size() || !std::all_of(s.begin() + static_cast<long>(start), s.end(), [](char c) {
          return c >= '0' && c <= '9';
        }))
      schema("matrix entry '" + s + "' is not a decimal integer");
    return BigInt(s[0] == '+' ? s.substr(1) : s);
  }
  schema("matrix entries must be integers or decimal strings");
}

Json id_map(const Graph& from, const Graph& to, std::span<const std::size_t> map, bool edges) {
  Json out = Json::object();
  for (std::size_t i = 0; i < map.size(); ++i) {
    const Id& key = edges ? from.edge(i) : from.vertex(i);
    out[key] = edges ? to.edge(map[i]) : to.vertex(map[i]);
  }
  return out;
}

}  // namespace

// --- graphs -----------------------------------------------------------------

Json to_json(const Graph& g) {
  Json vertices = Json::array();
  for (const auto& v : g.vertices()) vertices.push_back(v);
  Json edges = Json::array();
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    edges.push_back({{"id", g.edge(e)}, {"src", g.vertex(g.src(e))}, {"rng", g.vertex(g.rng(e))}});
  return {{"vertices", vertices}, {"edges", edges}};
}

RawGraph raw_graph_from_json(const Json& j) {
  RawGraph raw;
  const Json& vs = field(j, "vertices");
  if (!vs.is_array()) schema("'vertices' must be an array");
  for (const auto& v : vs) raw.vertices.push_back(as_string(v, "vertex id"));
  if (j.contains("edges")) {
    const Json& es = j.at("edges");
    if (!es.is_array()) schema("'edges' must be an array");
    for (const auto& e : es)
      raw.edges.push_back({as_string(field(e, "id"), "edge id"), as_string(field(e, "src"), "src"),
                           as_string(field(e, "rng"), "rng")});
  }
  return raw;
}

Graph graph_from_json(const Json& j) { return Graph::build(raw_graph_from_json(j)); }

// --- groups -----------------------------------------------------------------

Json to_json(const GroupModel& g) {
  switch (g.kind()) {
    case GroupKind::Free:
      return {{"kind", "free"}, {"rank", g.rank()}};
    case GroupKind::FreeAbelian:
      return {{"kind", "free_abelian"}, {"rank", g.rank()}};
    case GroupKind::Finite:
      break;
  }
  Json table = Json::array();
  for (const auto& row : g.table()) {
    Json r = Json::array();
    for (auto x : row) r.push_back(g.table_names()[x]);
    table.push_back(r);
  }
  return {{"kind", "table"}, {"elements", g.table_names()}, {"table", table}};
}

GroupModel group_from_json(const Json& j) {
  const std::string kind = as_string(field(j, "kind"), "group kind");
  if (kind == "trivial") return GroupModel::trivial();
  if (kind == "cyclic") return GroupModel::cyclic(as_size(field(j, "order"), "order"));
  if (kind == "dihedral") return GroupModel::dihedral(as_size(field(j, "n"), "n"));
  if (kind == "symmetric") return GroupModel::symmetric(as_size(field(j, "degree"), "degree"));
  if (kind == "free") return GroupModel::free(as_size(field(j, "rank"), "rank"));
  if (kind == "free_abelian") return GroupModel::free_abelian(as_size(field(j, "rank"), "rank"));
  if (kind == "table") {
    std::vector<std::string> names;
    for (const auto& x : field(j, "elements")) names.push_back(as_string(x, "element name"));
    std::vector<std::vector<std::size_t>> table;
    for (const auto& row : field(j, "table")) {
      std::vector<std::size_t> r;
      for (const auto& x : row) {
        if (x.is_number_integer()) {
          r.push_back(as_size(x, "table entry"));
          continue;
        }
        auto it = std::find(names.begin(), names.end(), as_string(x, "table entry"));
        if (it == names.end()) schema("table entry is not an element name");
        r.push_back(static_cast<std::size_t>(it - names.begin()));
      }
      table.push_back(std::move(r));
    }
    return GroupModel::from_table(std::move(names), std::move(table));
  }
  schema("unknown group kind '" + kind + "'");
}

// --- cocycles and actions ---------------------------------------------------

Json to_json(const Cocycle& c) {
  Json label = Json::object();
  for (std::size_t e = 0; e < c.graph.num_edges(); ++e) label[c.graph.edge(e)] = c.group.name(c.label[e]);
  return {{"group", to_json(c.group)}, {"label", label}};
}

Cocycle cocycle_from_json(const Json& j, const Graph& graph) {
  GroupModel group = group_from_json(field(j, "group"));
  std::vector<std::pair<Id, std::string>> labels;
  for (const auto& [edge, word] : field(j, "label").items()) labels.emplace_back(edge, as_string(word, "label"));
  return make_cocycle(graph, std::move(group), labels);
}

Json to_json(const GraphAction& a) {
  Json act_v = Json::object(), act_e = Json::object();
  const Graph& g = a.graph();
  for (std::size_t i = 0; i < a.generators().size(); ++i) {
    const auto name = a.group().name(a.generators()[i]);
    Json vm = Json::object(), em = Json::object();
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      if (auto x = a.generator_vertex_map(i)[v]; x != kOutside) vm[g.vertex(v)] = g.vertex(x);
    for (std::size_t e = 0; e < g.num_edges(); ++e)
      if (auto x = a.generator_edge_map(i)[e]; x != kOutside) em[g.edge(e)] = g.edge(x);
    act_v[name] = vm;
    act_e[name] = em;
  }
  return {{"group", to_json(a.group())}, {"act_v", act_v}, {"act_e", act_e}};
}

GraphAction action_from_json(const Json& j, const Graph& graph) {
  GroupModel group = group_from_json(field(j, "group"));
  const Json& jv = field(j, "act_v");
  const Json& je = j.contains("act_e") ? j.at("act_e") : Json::object();

  std::vector<Element> gens;
  for (const auto& [name, _] : jv.items()) gens.push_back(group.parse(name));
  for (const auto& [name, _] : je.items())
    if (std::find(gens.begin(), gens.end(), group.parse(name)) == gens.end())
      schema("act_e names generator '" + name + "' missing from act_v");
  if (!group.is_finite()) gens = group.generators();  // free basis order

  const bool finite = group.is_finite();
  std::vector<std::vector<std::size_t>> vmaps, emaps;
  for (const auto& g : gens) {
    const auto name = group.name(g);
    std::vector<std::size_t> vm(graph.num_vertices(), kOutside), em(graph.num_edges(), kOutside);
    // look the generator up by its parsed value, whatever spelling was used
    const Json* vspec = nullptr;
    const Json* espec = nullptr;
    for (const auto& [key, value] : jv.items())
      if (group.parse(key) == g) vspec = &value;
    for (const auto& [key, value] : je.items())
      if (group.parse(key) == g) espec = &value;
    if (vspec)
      for (const auto& [v, w] : vspec->items()) vm[graph.vertex_index(v)] = graph.vertex_index(as_string(w, "vertex"));
    if (espec)
      for (const auto& [e, f] : espec->items()) em[graph.edge_index(e)] = graph.edge_index(as_string(f, "edge"));
    if (finite && (std::count(vm.begin(), vm.end(), kOutside) || std::count(em.begin(), em.end(), kOutside)))
      throw Error("InvalidAction", "generator " + name + " is not defined on every vertex and edge");
    vmaps.push_back(std::move(vm));
    emaps.push_back(std::move(em));
  }
  return GraphAction(std::move(group), graph, std::move(gens), std::move(vmaps), std::move(emaps));
}

Json to_json(const PermutationAction& p) {
  Json perm = Json::object();
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    Json m = Json::object();
    for (std::size_t x = 0; x < p.points.size(); ++x) m[p.points[x]] = p.points[p.images[i][x]];
    perm[p.group.name(p.generators[i])] = m;
  }
  return {{"group", to_json(p.group)}, {"points", p.points}, {"perm", perm}};
}

PermutationAction permutation_action_from_json(const Json& j) {
  PermutationAction p{group_from_json(field(j, "group")), {}, {}, {}};
  for (const auto& x : field(j, "points")) p.points.push_back(as_string(x, "point"));
  auto point_index = [&](const std::string& name) {
    auto it = std::find(p.points.begin(), p.points.end(), name);
    if (it == p.points.end()) throw Error("NotAnAction", "unknown point '" + name + "'");
    return static_cast<std::size_t>(it - p.points.begin());
  };
  std::vector<std::pair<Element, std::vector<std::size_t>>> entries;
  for (const auto& [gen, mapping] : field(j, "perm").items()) {
    std::vector<std::size_t> image(p.points.size(), p.points.size());
    for (const auto& [x, y] : mapping.items()) image[point_index(x)] = point_index(as_string(y, "point"));
    entries.emplace_back(p.group.parse(gen), std::move(image));
  }
  if (!p.group.is_finite()) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first.rep < b.first.rep; });
    // free basis order: a, b, c, ...
    auto basis = p.group.generators();
    std::vector<std::pair<Element, std::vector<std::size_t>>> ordered;
    for (const auto& g : basis)
      for (auto& entry : entries)
        if (entry.first == g) ordered.push_back(entry);
    entries = std::move(ordered);
  }
  for (auto& [g, image] : entries) {
    p.generators.push_back(g);
    p.images.push_back(std::move(image));
  }
  return p;
}

GeneratingSet generating_set_from_json(const Json& j) {
  GeneratingSet s{group_from_json(field(j, "group")), {}};
  for (const auto& x : field(j, "generators")) s.generators.push_back(s.group.parse(as_string(x, "generator")));
  return s;
}

// --- results ----------------------------------------------------------------

Json to_json(const GraphMorphism& phi) {
  return {{"vertices", id_map(phi.domain(), phi.codomain(), phi.vertex_map(), false)},
          {"edges", id_map(phi.domain(), phi.codomain(), phi.edge_map(), true)}};
}

Json to_json(const VertexClassification& c) {
  return {{"sources", c.sources}, {"finite_receivers", c.finite_receivers}, {"regular", c.regular}};
}

Json to_json(const MorphismReport& r) {
  Json out = {{"is_morphism", r.is_morphism},
              {"is_surjective", r.is_surjective},
              {"has_unique_s_lifting", r.has_unique_s_lifting},
              {"is_covering", r.is_covering}};
  if (r.offending_edge) out["offending_edge"] = *r.offending_edge;
  return out;
}

Json to_json(const FreePresentation& p) {
  return {{"rank", p.rank}, {"generator_edges", p.generator_edges}, {"spanning_forest", p.spanning_forest}};
}

Json to_json(const CoverBall& b) {
  Json out = to_json(b.tree);
  out["covering_map"] = to_json(b.covering_map);
  out["boundary"] = b.boundary;
  out["radius"] = b.radius;
  out["basepoint"] = b.basepoint;
  return out;
}

Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).str());
    rows.push_back(row);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

IntMatrix matrix_from_json(const Json& j) {
  const std::size_t rows = as_size(field(j, "rows"), "rows");
  const std::size_t cols = as_size(field(j, "cols"), "cols");
  const Json& entries = field(j, "entries");
  if (!entries.is_array() || entries.size() != rows) schema("'entries' must have 'rows' rows");
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!entries[r].is_array() || entries[r].size() != cols) schema("matrix row has the wrong length");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = as_bigint(entries[r][c]);
  }
  return m;
}

Json to_json(const KGroups& k) {
  Json torsion = Json::array();
  for (const auto& t : k.k0_torsion) torsion.push_back(t.str());
  return {{"k0_free_rank", k.k0_free_rank},
          {"k0_torsion", torsion},
          {"k1_free_rank", k.k1_free_rank},
          {"summary", to_string(k)}};
}

Json to_json(const MoritaVerdict& v) {
  Json out = {{"verdict", v.consistent ? "consistent" : "refuted"},
              {"first", to_json(v.first)},
              {"second", to_json(v.second)},
              {"note", "necessary-condition check: equal K-theory does not prove strong Morita equivalence"}};
  if (v.differing) out["differing"] = *v.differing;
  return out;
}

CircleGraph circle_from_json(const Json& j) {
  CircleGraph g;
  auto integer = [&](const char* key) {
    const Json& x = field(j, key);
    if (!x.is_number_integer()) schema(std::string("'") + key + "' must be an integer");
    return x.get<std::int64_t>();
  };
  g.n = integer("n");
  g.m = integer("m");
  if (j.contains("rotation") && !j.at("rotation").is_null()) {
    const Json& r = j.at("rotation");
    Rotation rot;
    if (r.contains("symbol")) rot.symbol = as_string(r.at("symbol"), "rotation symbol");
    if (r.contains("rational")) {
      if (!r.at("rational").is_boolean()) schema("'rational' must be a boolean");
      rot.rational = r.at("rational").get<bool>();
    }
    g.rotation = rot;
  }
  return g;
}

Json to_json(const GroupPresentation& p) {
  Json relators = Json::array();
  for (const auto& r : p.relators) relators.push_back(format_word(p, r));
  return {{"generators", p.generators},
          {"relators", relators},
          {"tags", {{"kind", p.kind}, {"amenability", to_string(p.amenability)}}}};
}

Json to_json(const AbelianGroup& a) {
  Json torsion = Json::array();
  for (const auto& t : a.torsion) torsion.push_back(t.str());
  return {{"free_rank", a.free_rank}, {"torsion", torsion}};
}

Json to_json(const CoverRecord& r) {
  return {{"vertex_space", r.vertex_space}, {"edge_space", r.edge_space}, {"source_map", r.source_map},
          {"range_map", r.range_map},       {"deck_group", r.deck_group}, {"deck_action", r.deck_action},
          {"note", r.note}};
}

Json to_json(const AlgebraProperties& p) {
  Json out = Json::object();
  out["simple"] = p.simple ? Json(*p.simple) : Json("unknown");
  out["purely_infinite"] = p.purely_infinite ? Json(*p.purely_infinite) : Json("unknown");
  out["algebra"] = p.algebra ? Json(*p.algebra) : Json("unknown");
  return out;
}

// --- DOT --------------------------------------------------------------------

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string export_dot(const Graph& g) {
  std::string out = "digraph G {\n";
  for (const auto& v : g.vertices()) out += "  " + quoted(v) + ";\n";
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    out += "  " + quoted(g.vertex(g.src(e))) + " -> " + quoted(g.vertex(g.rng(e))) +
           " [label=" + quoted(g.edge(e)) + "];\n";
  out += "}\n";
  return out;
}

}  // namespace tgraph::io
