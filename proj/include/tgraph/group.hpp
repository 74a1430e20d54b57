#pragma once

// Groups usable as symmetry or cocycle groups: finite groups given by a
// Cayley table, and the symbolic free and free-abelian groups whose
// elements are kept in reduced normal form.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tgraph/error.hpp"

namespace tgraph {

enum class GroupKind { Finite, Free, FreeAbelian };

/// Opaque group element. The representation depends on the group kind:
/// a table index for finite groups, a freely reduced word of signed
/// generator numbers (+i for the i-th generator, -i for its inverse) for
/// free groups, and an exponent vector for free-abelian groups.
struct Element {
  std::vector<std::int64_t> rep;

  friend auto operator<=>(const Element&, const Element&) = default;
};

class GroupModel {
 public:
  /// Validates the table: closure, identity, Latin-square rows and
  /// columns, and associativity over all triples. Throws Error("NotAGroup").
  static GroupModel from_table(std::vector<std::string> names,
                               std::vector<std::vector<std::size_t>> table);
  static GroupModel trivial();
  static GroupModel cyclic(std::size_t n);
  /// D_n of order 2n; elements "r<k>" and "s<k>" = s r^k.
  static GroupModel dihedral(std::size_t n);
  /// S_n with elements in one-line notation, (p q)(i) = p(q(i)).
  static GroupModel symmetric(std::size_t n);
  /// Generators are named a, b, c, ...; an upper-case letter is an inverse.
  static GroupModel free(std::size_t rank);
  static GroupModel free_abelian(std::size_t rank);

  GroupKind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == GroupKind::Finite; }
  /// Number of elements; throws Error("InfiniteGroup") for symbolic kinds.
  std::size_t order() const;
  /// Number of free generators of a symbolic group; 0 for finite groups.
  std::size_t rank() const noexcept { return rank_; }

  Element identity() const;
  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  bool is_identity(const Element& a) const { return a == identity(); }

  std::string name(const Element& a) const;
  /// Parses an element name. Finite groups accept their table names;
  /// symbolic groups accept "1" and products such as "ab^-2", "a*B", "a^3".
  /// Throws Error("UnknownElement").
  Element parse(std::string_view text) const;

  /// Finite groups: all elements in table order.
  std::vector<Element> elements() const;
  /// Finite groups: table index of an element.
  std::size_t index(const Element& a) const;
  Element element(std::size_t index) const;

  /// Finite: a small generating set chosen greedily in table order.
  /// Symbolic: the free basis a, b, ...
  std::vector<Element> generators() const;

  /// Word length with respect to the free basis (symbolic kinds).
  std::size_t word_length(const Element& a) const;
  /// Symbolic: elements of word length <= radius in shortlex order.
  /// Finite: all elements.
  std::vector<Element> ball(std::size_t radius) const;

  /// Finite only: true iff `gens` generate the whole group.
  bool generates(std::span<const Element> gens) const;

  const std::vector<std::string>& table_names() const noexcept { return names_; }
  const std::vector<std::vector<std::size_t>>& table() const noexcept { return table_; }

  friend bool operator==(const GroupModel&, const GroupModel&) = default;

 private:
  GroupKind kind_ = GroupKind::Finite;
  std::size_t rank_ = 0;
  std::vector<std::string> names_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
  std::size_t identity_ = 0;
};

}  // namespace tgraph
