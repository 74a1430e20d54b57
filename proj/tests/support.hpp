#pragma once

// Random generators and brute-force oracles shared by the test binaries.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tgraph/action.hpp"
#include "tgraph/graph.hpp"
#include "tgraph/group.hpp"
#include "tgraph/ktheory.hpp"

namespace testing_support {

using tgraph::Graph;
using tgraph::Id;
using tgraph::RawEdge;
using tgraph::RawGraph;

inline std::size_t uniform(std::mt19937& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Vertex ids "v0".."v{n-1}" and edge ids "e0".. with endpoints drawn uniformly.
inline Graph random_graph(std::mt19937& rng, std::size_t vertices, std::size_t edges) {
  RawGraph raw;
  for (std::size_t v = 0; v < vertices; ++v) raw.vertices.push_back("v" + std::to_string(v));
  if (vertices > 0)
    for (std::size_t e = 0; e < edges; ++e)
      raw.edges.push_back({"e" + std::to_string(e), raw.vertices[uniform(rng, 0, vertices - 1)],
                           raw.vertices[uniform(rng, 0, vertices - 1)]});
  return Graph::build(raw);
}

// Connected: a random spanning tree with random orientations, plus extras.
inline Graph random_connected_graph(std::mt19937& rng, std::size_t vertices, std::size_t extra_edges) {
  RawGraph raw;
  for (std::size_t v = 0; v < vertices; ++v) raw.vertices.push_back("v" + std::to_string(v));
  std::size_t next = 0;
  for (std::size_t v = 1; v < vertices; ++v) {
    auto parent = raw.vertices[uniform(rng, 0, v - 1)];
    auto child = raw.vertices[v];
    if (uniform(rng, 0, 1)) std::swap(parent, child);
    raw.edges.push_back({"e" + std::to_string(next++), parent, child});
  }
  for (std::size_t i = 0; i < extra_edges; ++i)
    raw.edges.push_back({"e" + std::to_string(next++), raw.vertices[uniform(rng, 0, vertices - 1)],
                         raw.vertices[uniform(rng, 0, vertices - 1)]});
  return Graph::build(raw);
}

// Same graph with vertex and edge ids renamed through random permutations.
inline Graph relabel(std::mt19937& rng, const Graph& g) {
  std::vector<std::size_t> vp(g.num_vertices()), ep(g.num_edges());
  std::iota(vp.begin(), vp.end(), 0);
  std::iota(ep.begin(), ep.end(), 0);
  std::shuffle(vp.begin(), vp.end(), rng);
  std::shuffle(ep.begin(), ep.end(), rng);
  RawGraph raw;
  auto vname = [&](std::size_t v) { return "x" + std::to_string(vp[v]); };
  for (std::size_t v = 0; v < g.num_vertices(); ++v) raw.vertices.push_back(vname(v));
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    raw.edges.push_back({"y" + std::to_string(ep[e]), vname(g.src(e)), vname(g.rng(e))});
  return Graph::build(raw);
}

// Brute force over all vertex bijections: equal multiplicity of every
// ordered (src, rng) pair.
inline bool brute_force_isomorphic(const Graph& a, const Graph& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
  const std::size_t n = a.num_vertices();
  auto counts = [n](const Graph& g) {
    std::vector<std::size_t> c(n * n, 0);
    for (std::size_t e = 0; e < g.num_edges(); ++e) ++c[g.src(e) * n + g.rng(e)];
    return c;
  };
  const auto ca = counts(a), cb = counts(b);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = 0; y < n && ok; ++y) ok = ca[x * n + y] == cb[perm[x] * n + perm[y]];
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Dimension of the cycle space of the underlying undirected multigraph,
// by Gaussian elimination over GF(2) on the boundary matrix:
// |E1| - rank(boundary).
inline std::size_t gf2_cycle_rank(const Graph& g) {
  std::vector<std::vector<std::uint8_t>> rows;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    std::vector<std::uint8_t> row(g.num_vertices(), 0);
    row[g.src(e)] ^= 1;
    row[g.rng(e)] ^= 1;
    rows.push_back(row);
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < g.num_vertices() && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot][col]) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r][col])
        for (std::size_t c = 0; c < g.num_vertices(); ++c) rows[r][c] ^= rows[rank][c];
    ++rank;
  }
  return g.num_edges() - rank;
}

// Number of paths of length k: sum of the entries of A^k with
// A(x, y) = #{e : s(e) = y, r(e) = x}; zero-length paths are vertices.
inline std::uint64_t adjacency_power_count(const Graph& g, std::size_t k) {
  const std::size_t n = g.num_vertices();
  std::vector<std::uint64_t> a(n * n, 0);
  for (std::size_t e = 0; e < g.num_edges(); ++e) ++a[g.rng(e) * n + g.src(e)];
  std::vector<std::uint64_t> p(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) p[i * n + i] = 1;
  for (std::size_t step = 0; step < k; ++step) {
    std::vector<std::uint64_t> q(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) q[i * n + j] += p[i * n + l] * a[l * n + j];
    p = std::move(q);
  }
  return std::accumulate(p.begin(), p.end(), std::uint64_t{0});
}

inline tgraph::IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int bound = 9) {
  std::uniform_int_distribution<int> d(-bound, bound);
  tgraph::IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = d(rng);
  return m;
}

// Rank over the rationals by exact Gaussian elimination.
inline std::size_t rational_rank(std::vector<std::vector<boost::multiprecision::cpp_rational>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const boost::multiprecision::cpp_rational f = m[r][c] / m[rank][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

// A random free action of a finite group: a random skew product over a
// random base, relabelled and with a random gauge twist on each fiber, so
// the action is not literally presented as a skew product.
inline tgraph::GraphAction random_free_action(std::mt19937& rng, const tgraph::GroupModel& group,
                                              std::size_t max_vertices, std::size_t max_edges) {
  const std::size_t order = group.order();
  const std::size_t base_v = uniform(rng, 1, std::max<std::size_t>(1, max_vertices / order));
  const std::size_t base_e = uniform(rng, 0, max_edges / order);
  Graph base = random_graph(rng, base_v, base_e);
  const auto elems = group.elements();

  // gauge twist: vertex (v, h) is renamed to (v, h * t_v)
  std::vector<tgraph::Element> twist;
  for (std::size_t v = 0; v < base.num_vertices(); ++v) twist.push_back(elems[uniform(rng, 0, order - 1)]);

  // relabelled ids
  std::vector<std::size_t> vperm(base_v * order), eperm(base_e * order);
  std::iota(vperm.begin(), vperm.end(), 0);
  std::iota(eperm.begin(), eperm.end(), 0);
  std::shuffle(vperm.begin(), vperm.end(), rng);
  std::shuffle(eperm.begin(), eperm.end(), rng);
  auto vid = [&](std::size_t v, std::size_t h) { return "p" + std::to_string(vperm[v * order + h]); };
  auto eid = [&](std::size_t e, std::size_t h) { return "q" + std::to_string(eperm[e * order + h]); };

  std::vector<tgraph::Element> label;
  for (std::size_t e = 0; e < base.num_edges(); ++e) label.push_back(elems[uniform(rng, 0, order - 1)]);

  // vertex (v, h) named by index of h * t_v; edge (e, h): src (s(e), h), rng (r(e), h c(e))
  auto vname = [&](std::size_t v, const tgraph::Element& h) {
    return vid(v, group.index(group.multiply(h, twist[v])));
  };
  RawGraph raw;
  for (std::size_t v = 0; v < base_v; ++v)
    for (std::size_t h = 0; h < order; ++h) raw.vertices.push_back(vid(v, h));
  for (std::size_t e = 0; e < base.num_edges(); ++e)
    for (std::size_t h = 0; h < order; ++h)
      raw.edges.push_back({eid(e, h), vname(base.src(e), elems[h]),
                           vname(base.rng(e), group.multiply(elems[h], label[e]))});
  Graph g = Graph::build(raw);

  // g' . (x, h) = (x, g' h) for each generator
  const auto gens = group.generators();
  std::vector<std::vector<std::size_t>> vmaps, emaps;
  for (const auto& s : gens) {
    std::vector<std::size_t> vm(g.num_vertices()), em(g.num_edges());
    for (std::size_t v = 0; v < base_v; ++v)
      for (std::size_t h = 0; h < order; ++h) {
        const auto& he = elems[h];
        vm[g.vertex_index(vname(v, he))] = g.vertex_index(vname(v, group.multiply(s, he)));
      }
    for (std::size_t e = 0; e < base.num_edges(); ++e)
      for (std::size_t h = 0; h < order; ++h)
        em[g.edge_index(eid(e, h))] = g.edge_index(eid(e, group.index(group.multiply(s, elems[h]))));
    vmaps.push_back(std::move(vm));
    emaps.push_back(std::move(em));
  }
  return tgraph::GraphAction(group, g, gens, std::move(vmaps), std::move(emaps));
}

}  // namespace testing_support
