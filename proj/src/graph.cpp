#include "tgraph/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace tgraph {

namespace {

std::string describe(const std::vector<Violation>& vs) {
  if (vs.empty()) return "no violations";
  std::string out = vs.front().id + " " + vs.front().detail;
  if (vs.size() > 1) out += " (+" + std::to_string(vs.size() - 1) + " more)";
  return out;
}

std::optional<std::size_t> find_sorted(const std::vector<Id>& ids, std::string_view id) {
  auto it = std::lower_bound(ids.begin(), ids.end(), id,
                             [](const Id& a, std::string_view b) { return a < b; });
  if (it == ids.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - ids.begin());
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(violations.empty() ? "Invalid" : violations.front().kind, describe(violations)),
      violations_(std::move(violations)) {}

Graph Graph::build(const RawGraph& raw) {
  std::vector<Violation> problems;

  Graph g;
  g.vertices_ = raw.vertices;
  std::sort(g.vertices_.begin(), g.vertices_.end());
  for (std::size_t i = 1; i < g.vertices_.size(); ++i) {
    if (g.vertices_[i] == g.vertices_[i - 1] &&
        (i < 2 || g.vertices_[i - 2] != g.vertices_[i])) {
      problems.push_back({"DuplicateId", g.vertices_[i], "vertex id listed more than once"});
    }
  }
  g.vertices_.erase(std::unique(g.vertices_.begin(), g.vertices_.end()), g.vertices_.end());

  std::vector<const RawEdge*> order;
  order.reserve(raw.edges.size());
  for (const auto& e : raw.edges) order.push_back(&e);
  std::stable_sort(order.begin(), order.end(),
                   [](const RawEdge* a, const RawEdge* b) { return a->id < b->id; });

  for (std::size_t i = 0; i < order.size(); ++i) {
    const RawEdge& e = *order[i];
    if (i > 0 && order[i - 1]->id == e.id) {
      if (i < 2 || order[i - 2]->id != e.id)
        problems.push_back({"DuplicateId", e.id, "edge id listed more than once"});
      continue;
    }
    auto s = find_sorted(g.vertices_, e.src);
    auto r = find_sorted(g.vertices_, e.rng);
    if (!s) problems.push_back({"DanglingEndpoint", e.id, "src '" + e.src + "' is not a vertex"});
    if (!r) problems.push_back({"DanglingEndpoint", e.id, "rng '" + e.rng + "' is not a vertex"});
    g.edges_.push_back(e.id);
    g.src_.push_back(s.value_or(0));
    g.rng_.push_back(r.value_or(0));
  }

  if (!problems.empty()) {
    // dangling endpoints first so the reported kind is stable
    std::stable_sort(problems.begin(), problems.end(), [](const Violation& a, const Violation& b) {
      return a.kind < b.kind;
    });
    throw ValidationError(std::move(problems));
  }

  g.out_.assign(g.vertices_.size(), {});
  g.in_.assign(g.vertices_.size(), {});
  for (std::size_t e = 0; e < g.edges_.size(); ++e) {
    g.out_[g.src_[e]].push_back(e);
    g.in_[g.rng_[e]].push_back(e);
  }
  return g;
}

std::optional<std::size_t> Graph::find_vertex(std::string_view id) const {
  return find_sorted(vertices_, id);
}

std::optional<std::size_t> Graph::find_edge(std::string_view id) const {
  return find_sorted(edges_, id);
}

std::size_t Graph::vertex_index(std::string_view id) const {
  if (auto v = find_vertex(id)) return *v;
  throw Error("UnknownVertex", std::string(id));
}

std::size_t Graph::edge_index(std::string_view id) const {
  if (auto e = find_edge(id)) return *e;
  throw Error("UnknownEdge", std::string(id));
}

RawGraph Graph::raw() const {
  RawGraph out;
  out.vertices = vertices_;
  out.edges.reserve(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e)
    out.edges.push_back({edges_[e], vertices_[src_[e]], vertices_[rng_[e]]});
  return out;
}

Graph make_graph(std::vector<Id> vertices, std::vector<RawEdge> edges) {
  return Graph::build(RawGraph{std::move(vertices), std::move(edges)});
}

Graph bouquet(std::size_t loops) {
  std::vector<RawEdge> edges;
  for (std::size_t i = 0; i < loops; ++i) edges.push_back({"e" + std::to_string(i), "v", "v"});
  return make_graph({"v"}, std::move(edges));
}

VertexClassification vertex_classes(const Graph& g) {
  VertexClassification c;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    c.finite_receivers.push_back(g.vertex(v));
    if (g.in_edges(v).empty())
      c.sources.push_back(g.vertex(v));
    else
      c.regular.push_back(g.vertex(v));
  }
  return c;
}

std::vector<bool> regular_mask(const Graph& g) {
  std::vector<bool> mask(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) mask[v] = !g.in_edges(v).empty();
  return mask;
}

// ---------------------------------------------------------------------------

GraphMorphism::GraphMorphism(Graph domain, Graph codomain, std::vector<std::size_t> vertex_map,
                             std::vector<std::size_t> edge_map)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      vmap_(std::move(vertex_map)),
      emap_(std::move(edge_map)) {
  if (vmap_.size() != domain_.num_vertices() || emap_.size() != domain_.num_edges())
    throw Error("InvalidMap", "map is not total on the domain");
  for (auto v : vmap_)
    if (v >= codomain_.num_vertices()) throw Error("InvalidMap", "vertex image out of range");
  for (auto e : emap_)
    if (e >= codomain_.num_edges()) throw Error("InvalidMap", "edge image out of range");
}

GraphMorphism GraphMorphism::identity(const Graph& g) {
  std::vector<std::size_t> v(g.num_vertices()), e(g.num_edges());
  std::iota(v.begin(), v.end(), 0);
  std::iota(e.begin(), e.end(), 0);
  return GraphMorphism(g, g, std::move(v), std::move(e));
}

GraphMorphism GraphMorphism::from_ids(Graph domain, Graph codomain,
                                      const std::vector<std::pair<Id, Id>>& vertex_map,
                                      const std::vector<std::pair<Id, Id>>& edge_map) {
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> v(domain.num_vertices(), unset), e(domain.num_edges(), unset);
  for (const auto& [a, b] : vertex_map) v[domain.vertex_index(a)] = codomain.vertex_index(b);
  for (const auto& [a, b] : edge_map) e[domain.edge_index(a)] = codomain.edge_index(b);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == unset) throw Error("InvalidMap", "vertex " + domain.vertex(i) + " has no image");
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] == unset) throw Error("InvalidMap", "edge " + domain.edge(i) + " has no image");
  return GraphMorphism(std::move(domain), std::move(codomain), std::move(v), std::move(e));
}

std::optional<GraphMorphism> GraphMorphism::inverse() const {
  if (domain_.num_vertices() != codomain_.num_vertices() ||
      domain_.num_edges() != codomain_.num_edges())
    return std::nullopt;
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> v(vmap_.size(), unset), e(emap_.size(), unset);
  for (std::size_t i = 0; i < vmap_.size(); ++i) {
    if (v[vmap_[i]] != unset) return std::nullopt;
    v[vmap_[i]] = i;
  }
  for (std::size_t i = 0; i < emap_.size(); ++i) {
    if (e[emap_[i]] != unset) return std::nullopt;
    e[emap_[i]] = i;
  }
  return GraphMorphism(codomain_, domain_, std::move(v), std::move(e));
}

namespace {

std::optional<std::size_t> first_broken_square(const GraphMorphism& phi) {
  const Graph& d = phi.domain();
  const Graph& c = phi.codomain();
  for (std::size_t e = 0; e < d.num_edges(); ++e) {
    auto fe = phi.on_edge(e);
    if (phi.on_vertex(d.src(e)) != c.src(fe) || phi.on_vertex(d.rng(e)) != c.rng(fe)) return e;
  }
  return std::nullopt;
}

// phi restricted to domain_fiber is a bijection onto codomain_fiber
bool fiber_bijective(const GraphMorphism& phi, std::span<const std::size_t> domain_fiber,
                     std::span<const std::size_t> codomain_fiber) {
  if (domain_fiber.size() != codomain_fiber.size()) return false;
  std::vector<std::size_t> image;
  image.reserve(domain_fiber.size());
  for (auto e : domain_fiber) image.push_back(phi.on_edge(e));
  std::sort(image.begin(), image.end());
  return std::equal(image.begin(), image.end(), codomain_fiber.begin(), codomain_fiber.end());
}

}  // namespace

FiberCheck fibers_at(const GraphMorphism& phi, std::size_t v) {
  const Graph& d = phi.domain();
  const Graph& c = phi.codomain();
  auto w = phi.on_vertex(v);
  return {fiber_bijective(phi, d.out_edges(v), c.out_edges(w)),
          fiber_bijective(phi, d.in_edges(v), c.in_edges(w))};
}

MorphismReport analyze_morphism(const GraphMorphism& phi) {
  MorphismReport report;
  if (auto bad = first_broken_square(phi)) {
    report.offending_edge = phi.domain().edge(*bad);
    return report;
  }
  report.is_morphism = true;

  const Graph& d = phi.domain();
  const Graph& c = phi.codomain();
  std::vector<bool> hit_v(c.num_vertices()), hit_e(c.num_edges());
  for (auto v : phi.vertex_map()) hit_v[v] = true;
  for (auto e : phi.edge_map()) hit_e[e] = true;
  bool vertex_onto = std::all_of(hit_v.begin(), hit_v.end(), [](bool b) { return b; });
  bool edge_onto = std::all_of(hit_e.begin(), hit_e.end(), [](bool b) { return b; });
  report.is_surjective = vertex_onto && edge_onto;

  bool s_ok = true;
  bool r_ok = true;
  for (std::size_t v = 0; v < d.num_vertices() && (s_ok || r_ok); ++v) {
    auto f = fibers_at(phi, v);
    s_ok = s_ok && f.s_bijective;
    r_ok = r_ok && f.r_bijective;
  }
  report.has_unique_s_lifting = report.is_surjective && s_ok;
  report.is_covering = report.has_unique_s_lifting && r_ok && vertex_onto;
  return report;
}

void verify_morphism(const GraphMorphism& phi) {
  if (auto bad = first_broken_square(phi))
    throw Error("NotAMorphism", "square fails at edge " + phi.domain().edge(*bad));
}

// ---------------------------------------------------------------------------
// Isomorphism search

namespace {

using CountMatrix = std::vector<std::vector<std::uint32_t>>;

CountMatrix edge_counts(const Graph& g) {
  CountMatrix m(g.num_vertices(), std::vector<std::uint32_t>(g.num_vertices(), 0));
  for (std::size_t e = 0; e < g.num_edges(); ++e) ++m[g.src(e)][g.rng(e)];
  return m;
}

// Joint colour refinement so that colours are comparable across both graphs.
std::pair<std::vector<int>, std::vector<int>> refine_colours(const Graph& a, const Graph& b) {
  using Signature = std::tuple<int, std::vector<int>, std::vector<int>>;
  auto initial = [](const Graph& g) {
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> keys;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      std::size_t loops = 0;
      for (auto e : g.out_edges(v)) loops += g.rng(e) == v;
      keys.emplace_back(g.out_edges(v).size(), g.in_edges(v).size(), loops);
    }
    return keys;
  };
  auto ka = initial(a);
  auto kb = initial(b);
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, int> ids;
  for (auto& k : ka) ids.emplace(k, 0);
  for (auto& k : kb) ids.emplace(k, 0);
  int next = 0;
  for (auto& [k, id] : ids) id = next++;
  std::vector<int> ca, cb;
  for (auto& k : ka) ca.push_back(ids[k]);
  for (auto& k : kb) cb.push_back(ids[k]);

  std::size_t classes = ids.size();
  for (std::size_t round = 0; round < a.num_vertices() + 1; ++round) {
    auto signatures = [](const Graph& g, const std::vector<int>& col) {
      std::vector<Signature> sig;
      for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        std::vector<int> outs, ins;
        for (auto e : g.out_edges(v)) outs.push_back(col[g.rng(e)]);
        for (auto e : g.in_edges(v)) ins.push_back(col[g.src(e)]);
        std::sort(outs.begin(), outs.end());
        std::sort(ins.begin(), ins.end());
        sig.emplace_back(col[v], std::move(outs), std::move(ins));
      }
      return sig;
    };
    auto sa = signatures(a, ca);
    auto sb = signatures(b, cb);
    std::map<Signature, int> table;
    for (auto& s : sa) table.emplace(s, 0);
    for (auto& s : sb) table.emplace(s, 0);
    int n = 0;
    for (auto& [s, id] : table) id = n++;
    for (std::size_t v = 0; v < sa.size(); ++v) ca[v] = table[sa[v]];
    for (std::size_t v = 0; v < sb.size(); ++v) cb[v] = table[sb[v]];
    if (table.size() == classes) break;
    classes = table.size();
  }
  return {ca, cb};
}

// Domain vertices ordered so that each is adjacent to an earlier one where
// possible; adjacency checks then prune as early as they can.
std::vector<std::size_t> search_order(const Graph& g) {
  std::vector<std::size_t> order;
  std::vector<bool> seen(g.num_vertices());
  for (std::size_t root = 0; root < g.num_vertices(); ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::size_t head = order.size();
    order.push_back(root);
    while (head < order.size()) {
      auto v = order[head++];
      std::set<std::size_t> next;
      for (auto e : g.out_edges(v)) next.insert(g.rng(e));
      for (auto e : g.in_edges(v)) next.insert(g.src(e));
      for (auto w : next)
        if (!seen[w]) {
          seen[w] = true;
          order.push_back(w);
        }
    }
  }
  return order;
}

struct IsoSearch {
  const Graph& a;
  const Graph& b;
  CountMatrix ca;
  CountMatrix cb;
  std::vector<int> colour_a;
  std::vector<int> colour_b;
  std::vector<std::size_t> order;
  std::vector<std::size_t> map;   // a -> b
  std::vector<bool> used;          // b vertices already taken
  static constexpr std::size_t unset = static_cast<std::size_t>(-1);

  bool consistent(std::size_t u, std::size_t x, std::size_t depth) const {
    if (ca[u][u] != cb[x][x]) return false;
    for (std::size_t i = 0; i < depth; ++i) {
      auto w = order[i];
      auto y = map[w];
      if (ca[u][w] != cb[x][y] || ca[w][u] != cb[y][x]) return false;
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order.size()) return true;
    auto u = order[depth];
    for (std::size_t x = 0; x < b.num_vertices(); ++x) {
      if (used[x] || colour_a[u] != colour_b[x] || !consistent(u, x, depth)) continue;
      map[u] = x;
      used[x] = true;
      if (extend(depth + 1)) return true;
      used[x] = false;
      map[u] = unset;
    }
    return false;
  }
};

}  // namespace

std::optional<GraphMorphism> find_isomorphism(const Graph& e, const Graph& f,
                                              IsomorphismLimits limits) {
  for (const Graph* g : {&e, &f}) {
    if (g->num_vertices() > limits.max_vertices || g->num_edges() > limits.max_edges)
      throw Error("SizeBoundExceeded", std::to_string(g->num_vertices()) + " vertices, " +
                                           std::to_string(g->num_edges()) + " edges");
  }
  if (e.num_vertices() != f.num_vertices() || e.num_edges() != f.num_edges()) return std::nullopt;

  auto [col_e, col_f] = refine_colours(e, f);
  {
    auto he = col_e;
    auto hf = col_f;
    std::sort(he.begin(), he.end());
    std::sort(hf.begin(), hf.end());
    if (he != hf) return std::nullopt;
  }

  IsoSearch search{e, f, edge_counts(e), edge_counts(f), col_e, col_f, search_order(e),
                   std::vector<std::size_t>(e.num_vertices(), IsoSearch::unset),
                   std::vector<bool>(f.num_vertices(), false)};
  if (!search.extend(0)) return std::nullopt;

  // Match parallel classes of edges in id order.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> by_ends;
  for (std::size_t x = 0; x < f.num_edges(); ++x) by_ends[{f.src(x), f.rng(x)}].push_back(x);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> cursor;
  std::vector<std::size_t> emap(e.num_edges());
  for (std::size_t x = 0; x < e.num_edges(); ++x) {
    std::pair key{search.map[e.src(x)], search.map[e.rng(x)]};
    emap[x] = by_ends[key][cursor[key]++];
  }
  return GraphMorphism(e, f, std::move(search.map), std::move(emap));
}

// ---------------------------------------------------------------------------
// Walks

std::size_t letter_source(const Graph& g, Letter l) {
  return l.reversed ? g.rng(l.edge) : g.src(l.edge);
}

std::size_t letter_range(const Graph& g, Letter l) {
  return l.reversed ? g.src(l.edge) : g.rng(l.edge);
}

std::size_t walk_range(const Graph& g, const Walk& w) {
  return w.letters.empty() ? w.basepoint : letter_range(g, w.letters.front());
}

bool is_composable(const Graph& g, const Walk& w) {
  if (w.letters.empty()) return w.basepoint < g.num_vertices();
  for (std::size_t i = 0; i + 1 < w.letters.size(); ++i)
    if (letter_source(g, w.letters[i]) != letter_range(g, w.letters[i + 1])) return false;
  return letter_source(g, w.letters.back()) == w.basepoint;
}

bool is_reduced(const Walk& w) {
  for (std::size_t i = 0; i + 1 < w.letters.size(); ++i) {
    const auto& x = w.letters[i];
    const auto& y = w.letters[i + 1];
    if (x.edge == y.edge && x.reversed != y.reversed) return false;
  }
  return true;
}

std::string format_letters(const Graph& g, const Walk& w) {
  std::string out;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out += '.';
    out += g.edge(w.letters[i].edge);
    if (w.letters[i].reversed) out += '\'';
  }
  return out;
}

namespace {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b, std::uint64_t limit) {
  return std::min(limit, a + b);
}

// Count walks before materialising them. Values saturate at cap + 1.
std::uint64_t count_walks(const Graph& g, std::size_t length, const WalkOptions& opts) {
  const std::uint64_t limit = static_cast<std::uint64_t>(opts.cap) + 1;
  auto allowed = [&](std::size_t v) { return !opts.from || *opts.from == v; };
  if (length == 0) {
    std::uint64_t n = 0;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) n += allowed(v);
    return n;
  }
  if (!opts.reduced) {
    std::vector<std::uint64_t> at(g.num_vertices());
    for (std::size_t v = 0; v < g.num_vertices(); ++v) at[v] = allowed(v);
    for (std::size_t k = 0; k < length; ++k) {
      std::vector<std::uint64_t> next(g.num_vertices());
      for (std::size_t e = 0; e < g.num_edges(); ++e)
        next[g.rng(e)] = saturating_add(next[g.rng(e)], at[g.src(e)], limit);
      at = std::move(next);
    }
    std::uint64_t total = 0;
    for (auto c : at) total = saturating_add(total, c, limit);
    return total;
  }
  // state: leftmost letter, encoded as 2*edge + reversed
  const std::size_t letters = 2 * g.num_edges();
  auto decode = [](std::size_t i) { return Letter{i / 2, (i % 2) == 1}; };
  std::vector<std::uint64_t> at(letters);
  for (std::size_t i = 0; i < letters; ++i) at[i] = allowed(letter_source(g, decode(i)));
  for (std::size_t k = 1; k < length; ++k) {
    std::vector<std::uint64_t> next(letters);
    for (std::size_t i = 0; i < letters; ++i) {
      if (!at[i]) continue;
      auto end = letter_range(g, decode(i));
      for (std::size_t j = 0; j < letters; ++j) {
        if (j / 2 == i / 2 && j != i) continue;  // cancelling pair
        if (letter_source(g, decode(j)) == end) next[j] = saturating_add(next[j], at[i], limit);
      }
    }
    at = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto c : at) total = saturating_add(total, c, limit);
  return total;
}

}  // namespace

std::vector<Walk> enumerate_walks(const Graph& g, std::size_t length, const WalkOptions& opts) {
  if (opts.from && *opts.from >= g.num_vertices())
    throw Error("UnknownVertex", "basepoint index out of range");
  auto count = count_walks(g, length, opts);
  if (count > opts.cap)
    throw Error("ExplosionGuard",
                "more than " + std::to_string(opts.cap) + " walks of length " +
                    std::to_string(length));

  std::vector<Walk> current;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (!opts.from || *opts.from == v) current.push_back(Walk{{}, v});

  for (std::size_t k = 0; k < length; ++k) {
    std::vector<Walk> next;
    for (const auto& w : current) {
      auto end = walk_range(g, w);
      auto push = [&](Letter l) {
        Walk x;
        x.basepoint = w.basepoint;
        x.letters.reserve(w.letters.size() + 1);
        x.letters.push_back(l);
        x.letters.insert(x.letters.end(), w.letters.begin(), w.letters.end());
        next.push_back(std::move(x));
      };
      for (auto e : g.out_edges(end)) {
        Letter l{e, false};
        if (opts.reduced && !w.letters.empty() && w.letters.front() == Letter{e, true}) continue;
        push(l);
      }
      if (!opts.reduced) continue;
      for (auto e : g.in_edges(end)) {
        if (!w.letters.empty() && w.letters.front() == Letter{e, false}) continue;
        push(Letter{e, true});
      }
    }
    current = std::move(next);
  }
  std::sort(current.begin(), current.end(), [](const Walk& x, const Walk& y) {
    if (x.letters != y.letters) return x.letters < y.letters;
    return x.basepoint < y.basepoint;
  });
  return current;
}

}  // namespace tgraph
