#pragma once

// The circle graphs E0 = E1 = T with s(z) = z^n and r(z) = e^{2 pi i theta} z^m,
// handled symbolically: no numerics on the circle. Supported families are
// the rotation graphs (n = m = 1, any theta) and the power graphs
// (n, m >= 1, no rotation), whose fundamental groups are Z^2 and the
// Baumslag-Solitar groups B(n,m) = <a, b | a b^n a^-1 = b^m>.
//
// The mapping-torus pattern generalises the rotation case: for E0 = E1 = X,
// s = id and r = h a homeomorphism, pi_1 is pi_1(X) semidirect Z via h_*.
// It is not implemented for general X.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tgraph/graph.hpp"
#include "tgraph/ktheory.hpp"

namespace tgraph {

struct Rotation {
  std::string symbol = "theta";
  bool rational = false;
};

struct CircleGraph {
  std::int64_t n = 1;  // winding of s; nonzero so that s is a local homeomorphism
  std::int64_t m = 1;  // winding of r; nonzero
  std::optional<Rotation> rotation;
};

/// Throws Error("InvalidCircleGraph") when n or m is zero.
void validate_circle_graph(const CircleGraph& g);

enum class Amenability { Amenable, NonAmenable, Unknown };

/// A word is a list of signed generator numbers: +1 = a, -1 = a^-1,
/// +2 = b, -2 = b^-1, ...
using Word = std::vector<int>;

struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
  std::string kind;  // "free-abelian", "baumslag-solitar" or "semidirect"
  Amenability amenability = Amenability::Unknown;
};

std::string format_word(const GroupPresentation& p, const Word& w);
std::string to_string(Amenability a);

/// Rotation case: <a, b | a b a^-1 b^-1>, free abelian of rank 2.
/// Power case: <a, b | a b^n a^-1 b^-m>; amenable when n = 1 or m = 1, not
/// amenable when n, m != 1 are coprime, unknown otherwise.
/// Throws Error("UnsupportedCase").
GroupPresentation pi1_presentation(const CircleGraph& g);

struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;
  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

/// Abelianisation from the Smith form of the relator exponent-sum matrix.
AbelianGroup abelianization(const GroupPresentation& p);

/// Normal form of an element of B(n,m): b^{j_1} a^{e_1} ... b^{j_k} a^{e_k} b^{tail}
/// with 0 <= j_i < m before a and 0 <= j_i < n before a^-1, and no pinch
/// a b^{kn} a^-1 or a^-1 b^{km} a.
struct BsNormalForm {
  std::vector<std::pair<std::int64_t, int>> syllables;  // (j_i, e_i)
  std::int64_t tail = 0;
  friend bool operator==(const BsNormalForm&, const BsNormalForm&) = default;
};

class BaumslagSolitar {
 public:
  BaumslagSolitar(std::int64_t n, std::int64_t m);

  /// Append a letter on the right: +1 = a, -1 = a^-1, +2 = b, -2 = b^-1.
  void append(BsNormalForm& w, int letter) const;
  BsNormalForm reduce(const Word& w) const;
  /// "b a^-1 b^2" style; "1" for the identity.
  std::string format(const BsNormalForm& w) const;

  std::int64_t n() const noexcept { return n_; }
  std::int64_t m() const noexcept { return m_; }

 private:
  std::int64_t n_;
  std::int64_t m_;
};

/// Radius-k ball around <b> in the Bass-Serre tree of B(n,m). Vertices are
/// cosets g<b> named "<rep><b>", edges are cosets g<b^n> named
/// "<rep><b^n>", with s(g<b^n>) = g<b> and r(g<b^n>) = g a^-1 <b>.
/// Throws Error("UnsupportedCase") unless n, m >= 1, and
/// Error("ExplosionGuard") past `cap` vertices.
Graph bass_serre_ball(std::int64_t n, std::int64_t m, std::size_t radius, std::size_t cap = 1'000'000);

/// Symbolic description of the universal covering graph.
struct CoverRecord {
  std::string vertex_space;
  std::string edge_space;
  std::string source_map;
  std::string range_map;
  std::string deck_group;
  std::string deck_action;
  std::string note;
};

/// Throws Error("UnsupportedCase").
CoverRecord universal_cover_description(const CircleGraph& g);

struct AlgebraProperties {
  std::optional<bool> simple;
  std::optional<bool> purely_infinite;
  std::optional<std::string> algebra;  // identification, when one is known
};

/// Recorded facts only: power graphs with m not in nZ give simple, purely
/// infinite algebras; the irrational rotation graph gives A_theta.
/// Everything else is left unknown.
AlgebraProperties algebra_properties(const CircleGraph& g);

}  // namespace tgraph
