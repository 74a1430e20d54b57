#include "tgraph/covering.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace tgraph {

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;  // the least vertex stays the root
    return true;
  }
};

}  // namespace

std::vector<std::size_t> component_labels(const Graph& g) {
  DisjointSets sets(g.num_vertices());
  for (std::size_t e = 0; e < g.num_edges(); ++e) sets.unite(g.src(e), g.rng(e));
  std::vector<std::size_t> roots(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) roots[v] = sets.find(v);
  std::vector<std::size_t> distinct = roots;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (auto& r : roots)
    r = static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), r) - distinct.begin());
  return roots;
}

std::vector<std::vector<Id>> connected_components(const Graph& g) {
  auto labels = component_labels(g);
  std::size_t count = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::vector<Id>> out(count);
  for (std::size_t v = 0; v < g.num_vertices(); ++v) out[labels[v]].push_back(g.vertex(v));
  return out;
}

FreePresentation forest_presentation(const Graph& g) {
  std::vector<bool> seen(g.num_vertices(), false), tree_edge(g.num_edges(), false);
  std::size_t components = 0;
  for (std::size_t root = 0; root < g.num_vertices(); ++root) {
    if (seen[root]) continue;
    ++components;
    seen[root] = true;
    std::vector<std::size_t> queue{root};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto v = queue[head];
      std::vector<std::size_t> incident(g.out_edges(v).begin(), g.out_edges(v).end());
      incident.insert(incident.end(), g.in_edges(v).begin(), g.in_edges(v).end());
      std::sort(incident.begin(), incident.end());
      for (auto e : incident) {
        auto w = g.src(e) == v ? g.rng(e) : g.src(e);
        if (seen[w]) continue;
        seen[w] = true;
        tree_edge[e] = true;
        queue.push_back(w);
      }
    }
  }
  FreePresentation p;
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    (tree_edge[e] ? p.spanning_forest : p.generator_edges).push_back(g.edge(e));
  p.rank = p.generator_edges.size();
  // |E1| - |E0| + c, which equals the number of non-forest edges
  if (p.rank + g.num_vertices() != g.num_edges() + components)
    throw Error("VerificationFailed", "spanning forest has the wrong size");
  return p;
}

FreePresentation pi1_presentation(const Graph& g) {
  auto labels = component_labels(g);
  if (g.num_vertices() == 0) throw Error("NotConnected", "empty graph");
  if (std::any_of(labels.begin(), labels.end(), [](std::size_t c) { return c != 0; }))
    throw Error("NotConnected", "graph has more than one component");
  return forest_presentation(g);
}

bool is_forest(const Graph& g) {
  DisjointSets sets(g.num_vertices());
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    if (!sets.unite(g.src(e), g.rng(e))) return false;
  return true;
}

CoverBall universal_cover_ball(const Graph& g, std::optional<Id> base, std::size_t radius,
                               std::size_t cap) {
  if (g.num_vertices() == 0) throw Error("NotConnected", "empty graph");
  auto labels = component_labels(g);
  if (std::any_of(labels.begin(), labels.end(), [](std::size_t c) { return c != 0; }))
    throw Error("NotConnected", "graph has more than one component");
  const std::size_t root = base ? g.vertex_index(*base) : 0;
  const Id& root_id = g.vertex(root);

  std::vector<Walk> walks{Walk{{}, root}};
  std::vector<std::string> names{root_id + ":"};
  struct TreeEdge {
    std::size_t label, src, rng, longer;
  };
  std::vector<TreeEdge> tree_edges;

  std::size_t layer_begin = 0;
  for (std::size_t depth = 0; depth < radius; ++depth) {
    std::size_t layer_end = walks.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      const auto end = walk_range(g, walks[i]);
      auto grow = [&](Letter l) {
        if (!walks[i].letters.empty()) {
          const Letter& head = walks[i].letters.front();
          if (head.edge == l.edge && head.reversed != l.reversed) return;
        }
        if (walks.size() >= cap)
          throw Error("ExplosionGuard", "more than " + std::to_string(cap) + " walks in the ball");
        Walk w;
        w.basepoint = root;
        w.letters.push_back(l);
        w.letters.insert(w.letters.end(), walks[i].letters.begin(), walks[i].letters.end());
        names.push_back(root_id + ":" + format_letters(g, w));
        walks.push_back(std::move(w));
        auto j = walks.size() - 1;
        if (l.reversed)
          tree_edges.push_back({l.edge, j, i, j});
        else
          tree_edges.push_back({l.edge, i, j, j});
      };
      for (auto e : g.out_edges(end)) grow(Letter{e, false});
      for (auto e : g.in_edges(end)) grow(Letter{e, true});
    }
    layer_begin = layer_end;
  }

  RawGraph raw;
  raw.vertices = names;
  for (const auto& t : tree_edges)
    raw.edges.push_back({pair_id(g.edge(t.label), names[t.longer]), names[t.src], names[t.rng]});
  Graph tree = Graph::build(raw);

  std::vector<std::size_t> vmap(tree.num_vertices()), emap(tree.num_edges());
  for (std::size_t i = 0; i < walks.size(); ++i) vmap[tree.vertex_index(names[i])] = walk_range(g, walks[i]);
  for (const auto& t : tree_edges) emap[tree.edge_index(pair_id(g.edge(t.label), names[t.longer]))] = t.label;

  CoverBall ball{tree, GraphMorphism(tree, g, std::move(vmap), std::move(emap)), radius, root_id, {}};
  for (std::size_t i = 0; i < walks.size(); ++i)
    if (walks[i].letters.size() == radius) ball.boundary.push_back(names[i]);
  std::sort(ball.boundary.begin(), ball.boundary.end());
  return ball;
}

// ---------------------------------------------------------------------------

PermutationAction regular_representation(const GroupModel& group) {
  PermutationAction sigma{group, {}, group.generators(), {}};
  const auto elems = group.elements();
  for (const auto& x : elems) sigma.points.push_back(group.name(x));
  for (const auto& s : sigma.generators) {
    std::vector<std::size_t> image;
    for (const auto& x : elems) image.push_back(group.index(group.multiply(x, s)));
    sigma.images.push_back(std::move(image));
  }
  return sigma;
}

PermutationAction point_action(const GroupModel& group) {
  PermutationAction sigma{group, {"pt"}, group.generators(), {}};
  sigma.images.assign(sigma.generators.size(), std::vector<std::size_t>{0});
  return sigma;
}

namespace {

void check_shapes(const PermutationAction& sigma) {
  if (sigma.images.size() != sigma.generators.size())
    throw Error("NotAnAction", "one permutation per generator required");
  for (std::size_t i = 0; i < sigma.images.size(); ++i) {
    const auto& p = sigma.images[i];
    if (p.size() != sigma.points.size())
      throw Error("NotAnAction", "permutation for " + sigma.group.name(sigma.generators[i]) + " is not total");
    std::vector<bool> hit(p.size());
    for (auto x : p) {
      if (x >= p.size() || hit[x])
        throw Error("NotAnAction", sigma.group.name(sigma.generators[i]) + " is not a permutation");
      hit[x] = true;
    }
  }
  if (!sigma.group.is_finite() && sigma.generators != sigma.group.generators())
    throw Error("NotAnAction", "symbolic actions must be given on the free basis");
}

// Finite groups: images of every element, indexed by element index.
std::vector<std::vector<std::size_t>> point_table(const PermutationAction& sigma) {
  check_shapes(sigma);
  const GroupModel& G = sigma.group;
  const std::size_t n = G.order();
  std::vector<std::vector<std::size_t>> table(n);
  auto id = G.index(G.identity());
  table[id].resize(sigma.points.size());
  std::iota(table[id].begin(), table[id].end(), 0);
  std::vector<std::size_t> queue{id};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto x = queue[head];
    for (std::size_t i = 0; i < sigma.generators.size(); ++i) {
      auto y = G.index(G.multiply(G.element(x), sigma.generators[i]));
      std::vector<std::size_t> image(sigma.points.size());
      for (std::size_t p = 0; p < image.size(); ++p) image[p] = sigma.images[i][table[x][p]];
      if (table[y].empty()) {
        table[y] = std::move(image);
        queue.push_back(y);
      } else if (table[y] != image) {
        throw Error("NotAnAction", "inconsistent at (" + G.table_names()[x] + "," +
                                       G.name(sigma.generators[i]) + ")");
      }
    }
  }
  if (queue.size() != n) throw Error("NotAnAction", "generators do not generate the group");
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) {
      const auto& gh = table[G.table()[g][h]];
      for (std::size_t p = 0; p < sigma.points.size(); ++p)
        if (gh[p] != table[h][table[g][p]])
          throw Error("NotAnAction", "right-action law fails at (" + G.table_names()[g] + "," +
                                         G.table_names()[h] + ")");
    }
  return table;
}

std::size_t act_symbolic(const PermutationAction& sigma, const Element& g, std::size_t x) {
  auto step = [&](std::size_t gen, bool inverse, std::size_t p) {
    const auto& perm = sigma.images[gen];
    if (!inverse) return perm[p];
    return static_cast<std::size_t>(std::find(perm.begin(), perm.end(), p) - perm.begin());
  };
  if (sigma.group.kind() == GroupKind::Free) {
    for (auto letter : g.rep) x = step(static_cast<std::size_t>(std::abs(letter) - 1), letter < 0, x);
    return x;
  }
  for (std::size_t i = 0; i < g.rep.size(); ++i)
    for (std::int64_t k = 0; k < std::abs(g.rep[i]); ++k) x = step(i, g.rep[i] < 0, x);
  return x;
}

}  // namespace

void validate_permutation_action(const PermutationAction& sigma) {
  if (sigma.group.is_finite()) {
    point_table(sigma);
    return;
  }
  check_shapes(sigma);
  if (sigma.group.kind() == GroupKind::FreeAbelian) {
    for (std::size_t i = 0; i < sigma.images.size(); ++i)
      for (std::size_t j = i + 1; j < sigma.images.size(); ++j)
        for (std::size_t p = 0; p < sigma.points.size(); ++p)
          if (sigma.images[j][sigma.images[i][p]] != sigma.images[i][sigma.images[j][p]])
            throw Error("NotAnAction", "free-abelian generators do not commute");
  }
}

std::size_t act_point(const PermutationAction& sigma, const Element& g, std::size_t x) {
  if (sigma.group.is_finite()) return point_table(sigma)[sigma.group.index(g)][x];
  validate_permutation_action(sigma);
  return act_symbolic(sigma, g, x);
}

DerivedCover derived_cover(const Cocycle& c, const PermutationAction& sigma) {
  if (c.group != sigma.group) throw Error("NotAnAction", "cocycle and action use different groups");
  if (c.label.size() != c.graph.num_edges())
    throw Error("IncompleteCocycle", "cocycle does not label every edge");
  const Graph& base = c.graph;
  std::vector<std::vector<std::size_t>> table;
  if (sigma.group.is_finite())
    table = point_table(sigma);
  else
    validate_permutation_action(sigma);
  auto act = [&](const Element& g, std::size_t x) {
    return sigma.group.is_finite() ? table[sigma.group.index(g)][x] : act_symbolic(sigma, g, x);
  };

  RawGraph raw;
  for (std::size_t v = 0; v < base.num_vertices(); ++v)
    for (const auto& p : sigma.points) raw.vertices.push_back(pair_id(base.vertex(v), p));
  for (std::size_t e = 0; e < base.num_edges(); ++e)
    for (std::size_t x = 0; x < sigma.points.size(); ++x)
      raw.edges.push_back({pair_id(base.edge(e), sigma.points[x]),
                           pair_id(base.vertex(base.src(e)), sigma.points[x]),
                           pair_id(base.vertex(base.rng(e)), sigma.points[act(c.label[e], x)])});
  Graph cover = Graph::build(raw);

  std::vector<std::size_t> vmap(cover.num_vertices()), emap(cover.num_edges());
  for (std::size_t v = 0; v < base.num_vertices(); ++v)
    for (const auto& p : sigma.points) vmap[cover.vertex_index(pair_id(base.vertex(v), p))] = v;
  for (std::size_t e = 0; e < base.num_edges(); ++e)
    for (const auto& p : sigma.points) emap[cover.edge_index(pair_id(base.edge(e), p))] = e;
  GraphMorphism projection(cover, base, std::move(vmap), std::move(emap));
  return DerivedCover{std::move(cover), std::move(projection)};
}

}  // namespace tgraph
