#include "tgraph/action.hpp"

#include <algorithm>
#include <map>

namespace tgraph {

std::string pair_id(std::string_view first, std::string_view second) {
  std::string out;
  out.reserve(first.size() + second.size() + 3);
  out += '(';
  out += first;
  out += ',';
  out += second;
  out += ')';
  return out;
}

Cocycle make_cocycle(Graph graph, GroupModel group,
                     const std::vector<std::pair<Id, std::string>>& labels) {
  std::vector<std::optional<Element>> slots(graph.num_edges());
  for (const auto& [edge, word] : labels) slots[graph.edge_index(edge)] = group.parse(word);
  Cocycle c{std::move(graph), std::move(group), {}};
  for (std::size_t e = 0; e < slots.size(); ++e) {
    if (!slots[e]) throw Error("IncompleteCocycle", "edge " + c.graph.edge(e) + " has no label");
    c.label.push_back(*slots[e]);
  }
  return c;
}

Cocycle trivial_cocycle(Graph graph, GroupModel group) {
  std::vector<Element> label(graph.num_edges(), group.identity());
  return Cocycle{std::move(graph), std::move(group), std::move(label)};
}

// ---------------------------------------------------------------------------

GraphAction::GraphAction(GroupModel group, Graph graph, std::vector<Element> generators,
                         std::vector<std::vector<std::size_t>> vertex_maps,
                         std::vector<std::vector<std::size_t>> edge_maps)
    : group_(std::move(group)),
      graph_(std::move(graph)),
      generators_(std::move(generators)),
      gen_v_(std::move(vertex_maps)),
      gen_e_(std::move(edge_maps)) {
  if (gen_v_.size() != generators_.size() || gen_e_.size() != generators_.size())
    throw Error("InvalidAction", "one vertex map and one edge map per generator required");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (gen_v_[i].size() != graph_.num_vertices() || gen_e_[i].size() != graph_.num_edges())
      throw Error("InvalidAction", "generator map is not total on the graph");
    for (auto v : gen_v_[i])
      if (v != kOutside && v >= graph_.num_vertices())
        throw Error("InvalidAction", "vertex image out of range");
    for (auto e : gen_e_[i])
      if (e != kOutside && e >= graph_.num_edges())
        throw Error("InvalidAction", "edge image out of range");
  }
  if (!group_.is_finite() && generators_ != group_.generators())
    throw Error("InvalidAction", "symbolic actions must be given on the free basis");
}

std::size_t GraphAction::apply_word(const Element& g, std::size_t x, bool on_edges) const {
  const auto& maps = on_edges ? gen_e_ : gen_v_;
  auto step = [&](std::size_t gen, bool inverse, std::size_t y) -> std::size_t {
    const auto& m = maps[gen];
    if (!inverse) return m[y];
    auto it = std::find(m.begin(), m.end(), y);
    return it == m.end() ? kOutside : static_cast<std::size_t>(it - m.begin());
  };
  if (group_.kind() == GroupKind::Free) {
    for (auto it = g.rep.rbegin(); it != g.rep.rend() && x != kOutside; ++it)
      x = step(static_cast<std::size_t>(std::abs(*it) - 1), *it < 0, x);
    return x;
  }
  for (std::size_t i = g.rep.size(); i-- > 0 && x != kOutside;)
    for (std::int64_t k = 0; k < std::abs(g.rep[i]) && x != kOutside; ++k) x = step(i, g.rep[i] < 0, x);
  return x;
}

std::size_t GraphAction::act_vertex(const Element& g, std::size_t v) const {
  if (group_.is_finite()) {
    if (!complete_) throw Error("InvalidAction", "finite action used before validation");
    return elem_v_[group_.index(g)][v];
  }
  return apply_word(g, v, false);
}

std::size_t GraphAction::act_edge(const Element& g, std::size_t e) const {
  if (group_.is_finite()) {
    if (!complete_) throw Error("InvalidAction", "finite action used before validation");
    return elem_e_[group_.index(g)][e];
  }
  return apply_word(g, e, true);
}

namespace {

bool injective(std::span<const std::size_t> m, std::size_t size, bool allow_outside) {
  std::vector<bool> hit(size);
  for (auto x : m) {
    if (x == kOutside) {
      if (!allow_outside) return false;
      continue;
    }
    if (hit[x]) return false;
    hit[x] = true;
  }
  return true;
}

std::vector<std::size_t> compose(std::span<const std::size_t> outer,
                                 std::span<const std::size_t> inner) {
  std::vector<std::size_t> out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer[inner[i]];
  return out;
}

}  // namespace

GraphAction validate_action(const GraphAction& a) {
  const Graph& g = a.graph();
  const GroupModel& G = a.group();
  const bool finite = G.is_finite();

  for (std::size_t i = 0; i < a.generators().size(); ++i) {
    const std::string gname = G.name(a.generators()[i]);
    auto vm = a.generator_vertex_map(i);
    auto em = a.generator_edge_map(i);
    if (!injective(vm, g.num_vertices(), !finite) || !injective(em, g.num_edges(), !finite))
      throw Error("NotBijective", gname);
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      if (em[e] == kOutside) continue;
      if (vm[g.src(e)] != g.src(em[e]) || vm[g.rng(e)] != g.rng(em[e]))
        throw Error("NotEquivariant", "edge " + g.edge(e) + " under " + gname);
    }
  }

  GraphAction out = a;
  if (!finite) {
    if (G.kind() == GroupKind::FreeAbelian) {
      const auto& gens = a.generators();
      for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
          for (std::size_t v = 0; v < g.num_vertices(); ++v) {
            auto x = a.generator_vertex_map(i)[v];
            auto y = a.generator_vertex_map(j)[v];
            auto xy = x == kOutside ? kOutside : a.generator_vertex_map(j)[x];
            auto yx = y == kOutside ? kOutside : a.generator_vertex_map(i)[y];
            if (xy != kOutside && yx != kOutside && xy != yx)
              throw Error("NotHomomorphism", "(" + G.name(gens[i]) + "," + G.name(gens[j]) + ")");
          }
    }
    return out;
  }

  // Extend to all of G along left multiplication by generators.
  const std::size_t n = G.order();
  std::vector<std::vector<std::size_t>> tv(n), te(n);
  std::vector<bool> known(n, false);
  auto id = G.index(G.identity());
  tv[id].resize(g.num_vertices());
  te[id].resize(g.num_edges());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) tv[id][v] = v;
  for (std::size_t e = 0; e < g.num_edges(); ++e) te[id][e] = e;
  known[id] = true;
  std::vector<std::size_t> queue{id};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto x = queue[head];
    for (std::size_t i = 0; i < a.generators().size(); ++i) {
      auto y = G.index(G.multiply(a.generators()[i], G.element(x)));
      auto cv = compose(a.generator_vertex_map(i), tv[x]);
      auto ce = compose(a.generator_edge_map(i), te[x]);
      if (!known[y]) {
        tv[y] = std::move(cv);
        te[y] = std::move(ce);
        known[y] = true;
        queue.push_back(y);
      } else if (tv[y] != cv || te[y] != ce) {
        throw Error("NotHomomorphism",
                    "(" + G.name(a.generators()[i]) + "," + G.table_names()[x] + ")");
      }
    }
  }
  if (queue.size() != n) throw Error("NotGenerating", "action generators do not generate the group");

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      auto xy = G.table()[x][y];
      if (tv[xy] != compose(tv[x], tv[y]) || te[xy] != compose(te[x], te[y]))
        throw Error("NotHomomorphism", "(" + G.table_names()[x] + "," + G.table_names()[y] + ")");
    }

  out.elem_v_ = std::move(tv);
  out.elem_e_ = std::move(te);
  out.complete_ = true;
  return out;
}

namespace {

const GraphAction& ensure_valid(const GraphAction& a, std::optional<GraphAction>& storage) {
  if (a.complete() || !a.group().is_finite()) return a;
  storage = validate_action(a);
  return *storage;
}

std::vector<Element> nontrivial_elements(const GroupModel& G, std::size_t length_bound) {
  std::vector<Element> out;
  for (auto& x : G.is_finite() ? G.elements() : G.ball(length_bound))
    if (!G.is_identity(x)) out.push_back(x);
  return out;
}

}  // namespace

FreenessReport is_free(const GraphAction& action, std::size_t length_bound) {
  std::optional<GraphAction> storage;
  const GraphAction& a = ensure_valid(action, storage);
  for (const auto& x : nontrivial_elements(a.group(), length_bound))
    for (std::size_t v = 0; v < a.graph().num_vertices(); ++v)
      if (a.act_vertex(x, v) == v)
        return {false, std::pair{a.group().name(x), a.graph().vertex(v)}};
  return {true, std::nullopt};
}

std::optional<std::pair<std::string, Id>> edge_fixed_point(const GraphAction& action,
                                                           std::size_t length_bound) {
  std::optional<GraphAction> storage;
  const GraphAction& a = ensure_valid(action, storage);
  for (const auto& x : nontrivial_elements(a.group(), length_bound))
    for (std::size_t e = 0; e < a.graph().num_edges(); ++e)
      if (a.act_edge(x, e) == e) return std::pair{a.group().name(x), a.graph().edge(e)};
  return std::nullopt;
}

namespace {

const GraphAction& require_free_finite(const GraphAction& action, std::optional<GraphAction>& storage) {
  if (!action.group().is_finite())
    throw Error("InfiniteGroup", "quotients need a finite group");
  const GraphAction& a = ensure_valid(action, storage);
  auto report = is_free(a);
  if (!report.free)
    throw Error("NotFree", report.witness->first + " fixes " + report.witness->second);
  return a;
}

Quotient quotient_of_valid(const GraphAction& a) {
  const Graph& g = a.graph();
  const auto elements = a.group().elements();
  std::vector<std::size_t> vrep(g.num_vertices()), erep(g.num_edges());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    vrep[v] = v;
    for (const auto& x : elements) vrep[v] = std::min(vrep[v], a.act_vertex(x, v));
  }
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    erep[e] = e;
    for (const auto& x : elements) erep[e] = std::min(erep[e], a.act_edge(x, e));
  }

  RawGraph raw;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (vrep[v] == v) raw.vertices.push_back(g.vertex(v));
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    if (erep[e] == e) raw.edges.push_back({g.edge(e), g.vertex(vrep[g.src(e)]), g.vertex(vrep[g.rng(e)])});
  Graph q = Graph::build(raw);

  std::vector<std::size_t> vmap(g.num_vertices()), emap(g.num_edges());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) vmap[v] = q.vertex_index(g.vertex(vrep[v]));
  for (std::size_t e = 0; e < g.num_edges(); ++e) emap[e] = q.edge_index(g.edge(erep[e]));
  GraphMorphism map(g, q, std::move(vmap), std::move(emap));
  return Quotient{std::move(q), std::move(map)};
}

}  // namespace

Quotient quotient_graph(const GraphAction& action) {
  std::optional<GraphAction> storage;
  return quotient_of_valid(require_free_finite(action, storage));
}

SkewProduct skew_product(const Cocycle& c, std::optional<std::size_t> radius) {
  const Graph& base = c.graph;
  const GroupModel& G = c.group;
  if (c.label.size() != base.num_edges())
    throw Error("IncompleteCocycle", "cocycle does not label every edge");
  if (!G.is_finite() && !radius)
    throw Error("TruncationRequired", "infinite group needs a ball radius");

  const std::vector<Element> elems = G.is_finite() ? G.elements() : G.ball(*radius);
  std::map<Element, std::size_t> position;
  for (std::size_t i = 0; i < elems.size(); ++i) position.emplace(elems[i], i);
  std::vector<std::string> names;
  for (const auto& x : elems) names.push_back(G.name(x));

  RawGraph raw;
  for (std::size_t v = 0; v < base.num_vertices(); ++v)
    for (std::size_t i = 0; i < elems.size(); ++i) raw.vertices.push_back(pair_id(base.vertex(v), names[i]));
  for (std::size_t e = 0; e < base.num_edges(); ++e) {
    for (std::size_t i = 0; i < elems.size(); ++i) {
      auto target = position.find(G.multiply(elems[i], c.label[e]));
      if (target == position.end()) continue;
      raw.edges.push_back({pair_id(base.edge(e), names[i]), pair_id(base.vertex(base.src(e)), names[i]),
                           pair_id(base.vertex(base.rng(e)), names[target->second])});
    }
  }
  Graph skew = Graph::build(raw);

  // index lookups (x, h) -> skew index; kOutside for dropped edges
  std::vector<std::vector<std::size_t>> vidx(base.num_vertices(), std::vector<std::size_t>(elems.size()));
  std::vector<std::vector<std::size_t>> eidx(base.num_edges(), std::vector<std::size_t>(elems.size(), kOutside));
  for (std::size_t v = 0; v < base.num_vertices(); ++v)
    for (std::size_t i = 0; i < elems.size(); ++i)
      vidx[v][i] = skew.vertex_index(pair_id(base.vertex(v), names[i]));
  for (std::size_t e = 0; e < base.num_edges(); ++e)
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (auto x = skew.find_edge(pair_id(base.edge(e), names[i]))) eidx[e][i] = *x;

  const auto gens = G.generators();
  std::vector<std::vector<std::size_t>> vmaps, emaps;
  for (const auto& s : gens) {
    std::vector<std::size_t> vm(skew.num_vertices(), kOutside), em(skew.num_edges(), kOutside);
    for (std::size_t i = 0; i < elems.size(); ++i) {
      auto moved = position.find(G.multiply(s, elems[i]));
      if (moved == position.end()) continue;
      auto j = moved->second;
      for (std::size_t v = 0; v < base.num_vertices(); ++v) vm[vidx[v][i]] = vidx[v][j];
      for (std::size_t e = 0; e < base.num_edges(); ++e)
        if (eidx[e][i] != kOutside) em[eidx[e][i]] = eidx[e][j];
    }
    vmaps.push_back(std::move(vm));
    emaps.push_back(std::move(em));
  }
  GraphAction action(G, skew, gens, std::move(vmaps), std::move(emaps));
  return SkewProduct{std::move(skew), validate_action(action)};
}

bool is_equivariant(const GraphMorphism& iso, const GraphAction& from, const GraphAction& to) {
  if (!from.group().is_finite() || from.group() != to.group()) return false;
  std::optional<GraphAction> s1, s2;
  const GraphAction& a = ensure_valid(from, s1);
  const GraphAction& b = ensure_valid(to, s2);
  for (const auto& g : a.group().elements()) {
    for (std::size_t v = 0; v < iso.domain().num_vertices(); ++v)
      if (iso.on_vertex(a.act_vertex(g, v)) != b.act_vertex(g, iso.on_vertex(v))) return false;
    for (std::size_t e = 0; e < iso.domain().num_edges(); ++e)
      if (iso.on_edge(a.act_edge(g, e)) != b.act_edge(g, iso.on_edge(e))) return false;
  }
  return true;
}

CocycleExtraction extract_cocycle(const GraphAction& action) {
  std::optional<GraphAction> storage;
  const GraphAction& a = require_free_finite(action, storage);
  const Graph& g = a.graph();
  const GroupModel& G = a.group();
  Quotient q = quotient_of_valid(a);
  const Graph& base = q.graph;

  // transversal: the least vertex of each orbit, which is the orbit's name
  std::vector<std::size_t> section(base.num_vertices());
  for (std::size_t x = 0; x < base.num_vertices(); ++x) section[x] = g.vertex_index(base.vertex(x));

  // offset[v] = the unique g with v = g . section(orbit of v)
  std::vector<std::size_t> offset(g.num_vertices());
  for (std::size_t x = 0; x < base.num_vertices(); ++x)
    for (std::size_t k = 0; k < G.order(); ++k) offset[a.act_vertex(G.element(k), section[x])] = k;

  std::vector<std::size_t> lift(base.num_edges());
  std::vector<Element> label(base.num_edges());
  for (std::size_t qe = 0; qe < base.num_edges(); ++qe) {
    auto e = g.edge_index(base.edge(qe));
    auto shift = G.inverse(G.element(offset[g.src(e)]));
    lift[qe] = a.act_edge(shift, e);  // source now on the transversal
    label[qe] = G.element(offset[g.rng(lift[qe])]);
  }
  Cocycle c{base, G, std::move(label)};
  SkewProduct skew = skew_product(c);

  std::vector<std::size_t> vmap(skew.graph.num_vertices()), emap(skew.graph.num_edges());
  for (std::size_t k = 0; k < G.order(); ++k) {
    const auto h = G.element(k);
    const auto hname = G.name(h);
    for (std::size_t x = 0; x < base.num_vertices(); ++x)
      vmap[skew.graph.vertex_index(pair_id(base.vertex(x), hname))] = a.act_vertex(h, section[x]);
    for (std::size_t qe = 0; qe < base.num_edges(); ++qe)
      emap[skew.graph.edge_index(pair_id(base.edge(qe), hname))] = a.act_edge(h, lift[qe]);
  }
  GraphMorphism iso(skew.graph, g, std::move(vmap), std::move(emap));
  if (!iso.inverse()) throw Error("VerificationFailed", "cocycle isomorphism is not bijective");
  verify_morphism(iso);
  if (!is_equivariant(iso, skew.action, a))
    throw Error("VerificationFailed", "cocycle isomorphism is not equivariant");

  return CocycleExtraction{std::move(q), std::move(c), std::move(skew), std::move(iso)};
}

FiberBound fiber_bound(const GraphAction& action, std::span<const Id> quotient_edges) {
  Quotient q = quotient_graph(action);
  std::vector<bool> in_k(q.graph.num_edges(), false);
  for (const auto& id : quotient_edges) in_k[q.graph.edge_index(id)] = true;

  const Graph& g = action.graph();
  FiberBound out;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    std::size_t n = 0;
    for (auto e : g.out_edges(v)) n += in_k[q.map.on_edge(e)];
    if (!out.witness || n > out.bound) {
      out.bound = n;
      out.witness = g.vertex(v);
    }
  }
  return out;
}

}  // namespace tgraph
