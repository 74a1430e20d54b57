#pragma once

// Discrete directed multigraphs (E0, E1, s, r), their morphisms, and walks.
//
// A discrete graph is the discrete instance of a topological graph: the
// local-homeomorphism requirement on s and all openness conditions are
// vacuous for discrete spaces and are not checked anywhere.
//
// Vertex and edge ids are opaque strings. Both id sets are stored sorted
// lexicographically, and every index in this library refers to that order,
// which is what makes all outputs deterministic.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tgraph/error.hpp"

namespace tgraph {

using Id = std::string;

struct RawEdge {
  Id id;
  Id src;
  Id rng;
};

/// Unvalidated graph description, as read from JSON.
struct RawGraph {
  std::vector<Id> vertices;
  std::vector<RawEdge> edges;
};

struct Violation {
  std::string kind;  // "DanglingEndpoint" or "DuplicateId"
  Id id;
  std::string detail;
};

/// Thrown by Graph::build. kind() is the kind of the first violation.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

class Graph {
 public:
  Graph() = default;

  /// Validates and normalizes a raw description. Throws ValidationError
  /// listing every dangling endpoint and duplicate id.
  static Graph build(const RawGraph& raw);

  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  const Id& vertex(std::size_t v) const { return vertices_[v]; }
  const Id& edge(std::size_t e) const { return edges_[e]; }
  std::span<const Id> vertices() const noexcept { return vertices_; }
  std::span<const Id> edges() const noexcept { return edges_; }

  std::optional<std::size_t> find_vertex(std::string_view id) const;
  std::optional<std::size_t> find_edge(std::string_view id) const;
  /// Like find_*, but throws Error("UnknownVertex"/"UnknownEdge").
  std::size_t vertex_index(std::string_view id) const;
  std::size_t edge_index(std::string_view id) const;

  std::size_t src(std::size_t e) const { return src_[e]; }
  std::size_t rng(std::size_t e) const { return rng_[e]; }

  /// s^{-1}(v) and r^{-1}(v), ascending edge index.
  std::span<const std::size_t> out_edges(std::size_t v) const { return out_[v]; }
  std::span<const std::size_t> in_edges(std::size_t v) const { return in_[v]; }

  RawGraph raw() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<Id> vertices_;
  std::vector<Id> edges_;
  std::vector<std::size_t> src_;
  std::vector<std::size_t> rng_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

/// Convenience constructor for tests and generators: edges given as
/// {id, src, rng} triples, vertices listed explicitly.
Graph make_graph(std::vector<Id> vertices, std::vector<RawEdge> edges);

/// One vertex "v" carrying loops "e0", "e1", ...
Graph bouquet(std::size_t loops);

struct VertexClassification {
  std::vector<Id> sources;           // r^{-1}(v) empty
  std::vector<Id> finite_receivers;  // r^{-1}(v) finite: every vertex here
  std::vector<Id> regular;           // finite_receivers minus sources
};

VertexClassification vertex_classes(const Graph& g);
/// regular-vertex indicator by vertex index
std::vector<bool> regular_mask(const Graph& g);

class GraphMorphism {
 public:
  /// Maps are indexed by domain vertex/edge index and hold codomain
  /// indices. Throws Error("InvalidMap") if sizes or ranges are wrong.
  GraphMorphism(Graph domain, Graph codomain, std::vector<std::size_t> vertex_map,
                std::vector<std::size_t> edge_map);

  static GraphMorphism identity(const Graph& g);

  /// Builds from id-to-id maps; both maps must be total on the domain.
  static GraphMorphism from_ids(Graph domain, Graph codomain,
                                const std::vector<std::pair<Id, Id>>& vertex_map,
                                const std::vector<std::pair<Id, Id>>& edge_map);

  const Graph& domain() const noexcept { return domain_; }
  const Graph& codomain() const noexcept { return codomain_; }
  std::size_t on_vertex(std::size_t v) const { return vmap_[v]; }
  std::size_t on_edge(std::size_t e) const { return emap_[e]; }
  std::span<const std::size_t> vertex_map() const noexcept { return vmap_; }
  std::span<const std::size_t> edge_map() const noexcept { return emap_; }

  /// Inverse of a bijective morphism; nullopt when not bijective.
  std::optional<GraphMorphism> inverse() const;

 private:
  Graph domain_;
  Graph codomain_;
  std::vector<std::size_t> vmap_;
  std::vector<std::size_t> emap_;
};

struct MorphismReport {
  bool is_morphism = false;
  bool is_surjective = false;
  bool has_unique_s_lifting = false;
  bool is_covering = false;
  std::optional<Id> offending_edge;  // set when is_morphism is false
};

/// Discrete coverings are surjective morphisms that restrict to bijections
/// s^{-1}(v) -> s^{-1}(phi(v)) and r^{-1}(v) -> r^{-1}(phi(v)) at every v.
MorphismReport analyze_morphism(const GraphMorphism& phi);

/// Throws Error("NotAMorphism") naming the first edge whose square fails.
void verify_morphism(const GraphMorphism& phi);

struct FiberCheck {
  bool s_bijective = false;
  bool r_bijective = false;
};

/// Fiber bijectivity at a single domain vertex.
FiberCheck fibers_at(const GraphMorphism& phi, std::size_t v);

struct IsomorphismLimits {
  std::size_t max_vertices = 64;
  std::size_t max_edges = 256;
};

/// Backtracking search over vertex bijections with degree-profile pruning.
/// Candidates are tried in id order, so the first isomorphism found is the
/// lexicographically least one. Parallel edges are matched in id order.
/// Throws Error("SizeBoundExceeded") when either graph exceeds the limits.
std::optional<GraphMorphism> find_isomorphism(const Graph& e, const Graph& f,
                                              IsomorphismLimits limits = {});

// ---------------------------------------------------------------------------
// Walks

/// An edge e or its formal reverse. s(reversed e) = r(e) and vice versa.
struct Letter {
  std::size_t edge = 0;
  bool reversed = false;

  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// w = l_1 l_2 ... l_n with s(l_i) = r(l_{i+1}). The walk runs from its
/// basepoint s(w) = s(l_n) to r(w) = r(l_1). A trivial walk has no letters.
struct Walk {
  std::vector<Letter> letters;
  std::size_t basepoint = 0;

  friend bool operator==(const Walk&, const Walk&) = default;
};

std::size_t letter_source(const Graph& g, Letter l);
std::size_t letter_range(const Graph& g, Letter l);
/// r(w); the basepoint for trivial walks.
std::size_t walk_range(const Graph& g, const Walk& w);
bool is_composable(const Graph& g, const Walk& w);
bool is_reduced(const Walk& w);
/// "e.f'" style rendering; barred letters carry a trailing quote.
std::string format_letters(const Graph& g, const Walk& w);

struct WalkOptions {
  bool reduced = false;  // false: paths in E^n; true: reduced walks over E1 and its reverse
  std::optional<std::size_t> from;  // restrict to basepoint
  std::size_t cap = 1'000'000;
};

/// Throws Error("ExplosionGuard") when the count would exceed opts.cap.
/// Output is sorted lexicographically by letter sequence, then basepoint.
std::vector<Walk> enumerate_walks(const Graph& g, std::size_t length, const WalkOptions& opts = {});

}  // namespace tgraph
