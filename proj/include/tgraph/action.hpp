#pragma once

// Group actions on discrete graphs: validation, freeness, quotients, skew
// products, and recovery of a cocycle from a free action.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tgraph/graph.hpp"
#include "tgraph/group.hpp"

namespace tgraph {

/// Sentinel image for actions on truncated windows of an infinite graph:
/// the translate leaves the window.
inline constexpr std::size_t kOutside = static_cast<std::size_t>(-1);

/// An edge labelling c: E1 -> G.
struct Cocycle {
  Graph graph;
  GroupModel group;
  std::vector<Element> label;  // by edge index
};

/// Builds a cocycle from edge-id/element-name pairs; must be total.
Cocycle make_cocycle(Graph graph, GroupModel group,
                     const std::vector<std::pair<Id, std::string>>& labels);
/// c(e) = identity for all e.
Cocycle trivial_cocycle(Graph graph, GroupModel group);

/// A left action g -> lambda_g by graph automorphisms, specified on a list
/// of group elements. For finite groups the list must generate G; symbolic
/// groups are specified on their free basis. validate_action() checks the
/// data and, for finite groups, fills in lambda_g for every element.
class GraphAction {
 public:
  GraphAction(GroupModel group, Graph graph, std::vector<Element> generators,
              std::vector<std::vector<std::size_t>> vertex_maps,
              std::vector<std::vector<std::size_t>> edge_maps);

  const GroupModel& group() const noexcept { return group_; }
  const Graph& graph() const noexcept { return graph_; }
  std::span<const Element> generators() const noexcept { return generators_; }
  std::span<const std::size_t> generator_vertex_map(std::size_t i) const { return gen_v_[i]; }
  std::span<const std::size_t> generator_edge_map(std::size_t i) const { return gen_e_[i]; }

  /// True once validate_action() has produced full element tables.
  bool complete() const noexcept { return complete_; }

  /// g . v and g . e; kOutside when the image leaves a truncated window.
  std::size_t act_vertex(const Element& g, std::size_t v) const;
  std::size_t act_edge(const Element& g, std::size_t e) const;

 private:
  friend GraphAction validate_action(const GraphAction& a);

  std::size_t apply_word(const Element& g, std::size_t x, bool on_edges) const;

  GroupModel group_;
  Graph graph_;
  std::vector<Element> generators_;
  std::vector<std::vector<std::size_t>> gen_v_;
  std::vector<std::vector<std::size_t>> gen_e_;
  // finite groups after validation: indexed [element index][vertex or edge]
  std::vector<std::vector<std::size_t>> elem_v_;
  std::vector<std::vector<std::size_t>> elem_e_;
  bool complete_ = false;
};

/// Checks equivariance s(g.e) = g.s(e) and r(g.e) = g.r(e), bijectivity of
/// each lambda_g, and the homomorphism property (all pairs for finite G).
/// Throws Error with kind NotEquivariant, NotBijective, NotHomomorphism or
/// NotGenerating.
GraphAction validate_action(const GraphAction& a);

struct FreenessReport {
  bool free = false;
  std::optional<std::pair<std::string, Id>> witness;  // (g, v) with g.v = v, g != 1
};

/// Symbolic groups are checked on every non-identity element of word
/// length <= length_bound.
FreenessReport is_free(const GraphAction& a, std::size_t length_bound = 4);

/// Non-identity (g, e) with g.e = e, if any. Exhaustive for finite groups.
std::optional<std::pair<std::string, Id>> edge_fixed_point(const GraphAction& a,
                                                           std::size_t length_bound = 4);

struct Quotient {
  Graph graph;
  GraphMorphism map;  // orbit map E -> E/G
};

/// Orbits of a free action of a finite group. Each orbit is named by its
/// least member id. Throws Error("NotFree").
Quotient quotient_graph(const GraphAction& a);

struct SkewProduct {
  Graph graph;
  GraphAction action;  // lambda_g(x, h) = (x, gh), validated
};

/// Vertex ids "(v,g)" and edge ids "(e,g)". s(e,g) = (s(e),g) and
/// r(e,g) = (r(e), g c(e)). For symbolic groups `radius` is required and
/// only vertices with |g| <= radius are kept, together with the edges whose
/// endpoints both survive. Throws Error("TruncationRequired").
SkewProduct skew_product(const Cocycle& c, std::optional<std::size_t> radius = std::nullopt);

std::string pair_id(std::string_view first, std::string_view second);

struct CocycleExtraction {
  Quotient quotient;
  Cocycle cocycle;     // on the quotient graph
  SkewProduct skew;    // quotient x_c G
  GraphMorphism iso;   // skew.graph -> original graph, equivariant
};

/// Gross-Tucker: a free action of a finite group is equivariantly a skew
/// product of its quotient. The vertex bundle is trivialised by the least
/// id in each orbit. Throws Error("NotFree").
CocycleExtraction extract_cocycle(const GraphAction& a);

/// iso(lambda_g x) = mu_g iso(x) on vertices and edges for all g (finite).
bool is_equivariant(const GraphMorphism& iso, const GraphAction& from, const GraphAction& to);

struct FiberBound {
  std::size_t bound = 0;
  std::optional<Id> witness;  // a vertex attaining the bound
};

/// max over v of |q^{-1}(K) cap s^{-1}(v)| for K a set of quotient edge ids.
/// Throws Error("UnknownEdge").
FiberBound fiber_bound(const GraphAction& a, std::span<const Id> quotient_edges);

}  // namespace tgraph
