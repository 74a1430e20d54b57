#include "tgraph/ktheory.hpp"

#include <algorithm>
#include <utility>

namespace tgraph {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<BigInt>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error("InvalidMatrix", "ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && at(r, c) != 0) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error("InvalidMatrix", "dimension mismatch in product");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const BigInt& x = a.at(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out.at(i, j) += x * b.at(k, j);
    }
  return out;
}

BigInt determinant(const IntMatrix& input) {
  if (input.rows() != input.cols()) throw Error("NotSquare", "determinant of a non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix m = input;
  BigInt sign = 1;
  BigInt previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m.at(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m.at(k, c), m.at(swap_row, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / previous;
    previous = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

namespace {

struct Reducer {
  IntMatrix m, u, v;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(a, c), m.at(b, c));
    for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u.at(a, c), u.at(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m.at(r, a), m.at(r, b));
    for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v.at(r, a), v.at(r, b));
  }
  // row target += factor * row source
  void add_row(std::size_t target, std::size_t source, const BigInt& factor) {
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(target, c) += factor * m.at(source, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u.at(target, c) += factor * u.at(source, c);
  }
  void add_col(std::size_t target, std::size_t source, const BigInt& factor) {
    for (std::size_t r = 0; r < m.rows(); ++r) m.at(r, target) += factor * m.at(r, source);
    for (std::size_t r = 0; r < v.rows(); ++r) v.at(r, target) += factor * v.at(r, source);
  }
  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = -m.at(r, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u.at(r, c) = -u.at(r, c);
  }

  std::optional<std::pair<std::size_t, std::size_t>> pivot(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    BigInt best_abs;
    for (std::size_t i = t; i < m.rows(); ++i)
      for (std::size_t j = t; j < m.cols(); ++j) {
        const BigInt& x = m.at(i, j);
        if (x == 0) continue;
        BigInt a = abs(x);
        if (!best || a < best_abs) {
          best = std::pair{i, j};
          best_abs = a;
        }
      }
    return best;
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& input) {
  Reducer r{input, IntMatrix::identity(input.rows()), IntMatrix::identity(input.cols())};
  const std::size_t limit = std::min(input.rows(), input.cols());

  for (std::size_t t = 0; t < limit; ++t) {
    bool finished = false;
    while (true) {
      auto p = r.pivot(t);
      if (!p) {
        finished = true;
        break;
      }
      r.swap_rows(t, p->first);
      r.swap_cols(t, p->second);
      const BigInt piv = r.m.at(t, t);

      bool clean = true;
      for (std::size_t i = t + 1; i < r.m.rows(); ++i) {
        if (r.m.at(i, t) == 0) continue;
        BigInt q = r.m.at(i, t) / piv;
        if (q != 0) r.add_row(i, t, -q);
        clean = clean && r.m.at(i, t) == 0;
      }
      for (std::size_t j = t + 1; j < r.m.cols(); ++j) {
        if (r.m.at(t, j) == 0) continue;
        BigInt q = r.m.at(t, j) / piv;
        if (q != 0) r.add_col(j, t, -q);
        clean = clean && r.m.at(t, j) == 0;
      }
      if (!clean) continue;

      // pivot must divide the rest of the block
      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < r.m.rows() && !offending; ++i)
        for (std::size_t j = t + 1; j < r.m.cols(); ++j)
          if (r.m.at(i, j) % piv != 0) {
            offending = i;
            break;
          }
      if (!offending) break;
      r.add_row(t, *offending, 1);
    }
    if (finished) break;
    if (r.m.at(t, t) < 0) r.negate_row(t);
  }
  return SmithForm{std::move(r.m), std::move(r.u), std::move(r.v)};
}

std::vector<BigInt> invariant_factors(const IntMatrix& m) {
  auto snf = smith_normal_form(m);
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
    if (snf.d.at(i, i) != 0) out.push_back(snf.d.at(i, i));
  return out;
}

std::string to_string(const KGroups& k) {
  auto group = [](std::size_t free_rank, const std::vector<BigInt>& torsion) {
    std::vector<std::string> parts;
    if (free_rank == 1) parts.push_back("Z");
    if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
    for (const auto& t : torsion) parts.push_back("Z/" + t.str());
    if (parts.empty()) return std::string("0");
    std::string out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
    return out;
  };
  return "K0 = " + group(k.k0_free_rank, k.k0_torsion) + ", K1 = " + group(k.k1_free_rank, {});
}

IntMatrix k_theory_matrix(const Graph& g) {
  const auto regular = regular_mask(g);
  std::vector<std::size_t> columns;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (regular[v]) columns.push_back(v);

  // entry (x, y) of A^t counts edges with s = x and r = y
  IntMatrix m(g.num_vertices(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    auto y = columns[c];
    m.at(y, c) -= 1;
    for (auto e : g.in_edges(y)) m.at(g.src(e), c) += 1;
  }
  return m;
}

KGroups graph_k_theory(const Graph& g) {
  IntMatrix m = k_theory_matrix(g);
  auto factors = invariant_factors(m);
  KGroups k;
  k.k0_free_rank = m.rows() - factors.size();
  k.k1_free_rank = m.cols() - factors.size();
  for (const auto& d : factors)
    if (d > 1) k.k0_torsion.push_back(d);
  return k;
}

MoritaVerdict morita_witness(const Graph& a, const Graph& b) {
  MoritaVerdict verdict{true, std::nullopt, graph_k_theory(a), graph_k_theory(b)};
  if (verdict.first.k0_free_rank != verdict.second.k0_free_rank)
    verdict.differing = "K0 free rank";
  else if (verdict.first.k0_torsion != verdict.second.k0_torsion)
    verdict.differing = "K0 torsion";
  else if (verdict.first.k1_free_rank != verdict.second.k1_free_rank)
    verdict.differing = "K1 free rank";
  verdict.consistent = !verdict.differing;
  return verdict;
}

}  // namespace tgraph
