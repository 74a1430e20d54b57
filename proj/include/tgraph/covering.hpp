#pragma once

// Connectivity, free presentations of the fundamental group of a discrete
// graph, finite windows onto the universal cover, and derived covers built
// from a cocycle and a permutation action.
//
// For a discrete vertex space every E-path is piecewise constant on
// vertices, so path-connectivity of the geometric realisation coincides with
// connectivity by walks that may traverse edges in either direction.

#include <cstddef>
#include <optional>
#include <vector>

#include "tgraph/action.hpp"
#include "tgraph/graph.hpp"

namespace tgraph {

/// Component label per vertex index; components are numbered by their least
/// vertex.
std::vector<std::size_t> component_labels(const Graph& g);

/// Vertex ids per component, components ordered by least member.
std::vector<std::vector<Id>> connected_components(const Graph& g);

/// pi_1 of a connected graph is free on the edges outside a spanning tree.
struct FreePresentation {
  std::size_t rank = 0;
  std::vector<Id> generator_edges;
  std::vector<Id> spanning_forest;
};

/// Spanning forest by breadth-first search from the least vertex of each
/// component, edges taken undirected and in id order. Works on any graph;
/// rank = |E1| - |E0| + (number of components).
FreePresentation forest_presentation(const Graph& g);

/// As above for a connected graph. Throws Error("NotConnected").
FreePresentation pi1_presentation(const Graph& g);

/// True iff the underlying undirected multigraph has no cycle (loops and
/// parallel edges count as cycles).
bool is_forest(const Graph& g);

struct CoverBall {
  Graph tree;
  GraphMorphism covering_map;  // tree -> base
  std::size_t radius = 0;
  Id basepoint;
  std::vector<Id> boundary;    // walks of length exactly `radius`
};

/// Radius-n window onto the universal cover, unfolded from `base`.
///
/// Tree vertices are the reduced walks w with s(w) = base and |w| <= n,
/// named "base:" followed by the letters ("v:", "v:e.f'", ...). The tree
/// edge over e joins w to e.w, or ebar.w' to w'. Tree edges are named
/// "(e,<longer walk>)". Throws Error("NotConnected"), Error("UnknownVertex")
/// or Error("ExplosionGuard").
CoverBall universal_cover_ball(const Graph& g, std::optional<Id> base, std::size_t radius,
                               std::size_t cap = 1'000'000);

/// A right action x -> x.g of a group on a finite point set, given on
/// generators. x.(gh) = (x.g).h.
struct PermutationAction {
  GroupModel group;
  std::vector<Id> points;
  std::vector<Element> generators;
  std::vector<std::vector<std::size_t>> images;  // images[i][x] = x . generators[i]
};

/// x . g = xg on the elements of a finite group, named as in the group.
PermutationAction regular_representation(const GroupModel& group);
/// One point, every element acting trivially.
PermutationAction point_action(const GroupModel& group);

/// Checks bijectivity and, for finite groups, the right-action law on all
/// pairs (free-abelian: commuting generators). Throws Error("NotAnAction").
void validate_permutation_action(const PermutationAction& sigma);

/// x . g for any element; for finite groups validate first.
std::size_t act_point(const PermutationAction& sigma, const Element& g, std::size_t x);

struct DerivedCover {
  Graph graph;
  GraphMorphism projection;  // cover -> base
};

/// Vertices E0 x F, edges E1 x F with s(e,x) = (s(e),x) and
/// r(e,x) = (r(e), x . c(e)). With the regular representation this is the
/// skew product. Throws Error("NotAnAction").
DerivedCover derived_cover(const Cocycle& c, const PermutationAction& sigma);

}  // namespace tgraph
