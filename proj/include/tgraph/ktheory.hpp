#pragma once

// Exact integer Smith normal form and the K-theory of finite graph
// C*-algebras.
//
// Convention: A(v,w) counts edges e with s(e) = w and r(e) = v. Then
//   K0 = coker(A^t - I : Z^{regular} -> Z^{E0}),
//   K1 = ker  (A^t - I : Z^{regular} -> Z^{E0}),
// where the domain is restricted to regular vertices (those receiving an
// edge). This is the standard graph-algebra formula for the convention in
// which vertex projections satisfy p_v = sum over r(e) = v of t_e t_e^*.
// Equal K-groups are necessary for strong Morita equivalence of the graph
// algebras, never sufficient.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tgraph/graph.hpp"

namespace tgraph {

using BigInt = boost::multiprecision::cpp_int;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<BigInt>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  BigInt& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const BigInt& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  const std::vector<BigInt>& entries() const noexcept { return entries_; }

  IntMatrix transposed() const;
  bool is_diagonal() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> entries_;  // row-major
};

/// Exact determinant by fraction-free (Bareiss) elimination.
/// Throws Error("NotSquare").
BigInt determinant(const IntMatrix& m);

struct SmithForm {
  IntMatrix d;  // diagonal, d_1 | d_2 | ..., non-negative
  IntMatrix u;  // rows x rows, unimodular
  IntMatrix v;  // cols x cols, unimodular
};

/// U M V = D. Pivot choice: the entry of least nonzero absolute value in the
/// remaining block, ties broken by row-major position.
SmithForm smith_normal_form(const IntMatrix& m);

/// Nonzero diagonal entries of D.
std::vector<BigInt> invariant_factors(const IntMatrix& m);

struct KGroups {
  std::size_t k0_free_rank = 0;
  std::vector<BigInt> k0_torsion;  // invariant factors > 1, each dividing the next
  std::size_t k1_free_rank = 0;

  friend bool operator==(const KGroups&, const KGroups&) = default;
};

std::string to_string(const KGroups& k);

/// A^t - I with columns restricted to regular vertices (vertex id order).
IntMatrix k_theory_matrix(const Graph& g);

KGroups graph_k_theory(const Graph& g);

struct MoritaVerdict {
  bool consistent = false;
  std::optional<std::string> differing;  // "K0 free rank", "K0 torsion", "K1 free rank"
  KGroups first;
  KGroups second;
};

/// Compares K-theory. "refuted" means the algebras cannot be strongly
/// Morita equivalent; "consistent" proves nothing.
MoritaVerdict morita_witness(const Graph& a, const Graph& b);

}  // namespace tgraph
