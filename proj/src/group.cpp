#include "tgraph/group.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

namespace tgraph {

namespace {

constexpr std::size_t kMaxTableOrder = 512;

char generator_letter(std::size_t i) { return static_cast<char>('a' + i); }

std::string power_string(char letter, std::int64_t exponent) {
  std::string out(1, letter);
  if (exponent != 1) out += "^" + std::to_string(exponent);
  return out;
}

}  // namespace

GroupModel GroupModel::from_table(std::vector<std::string> names,
                                  std::vector<std::vector<std::size_t>> table) {
  const std::size_t n = names.size();
  if (n == 0) throw Error("NotAGroup", "empty element list");
  if (n > kMaxTableOrder) throw Error("NotAGroup", "table larger than " + std::to_string(kMaxTableOrder));
  if (std::set<std::string>(names.begin(), names.end()).size() != n)
    throw Error("NotAGroup", "duplicate element names");
  if (table.size() != n) throw Error("NotAGroup", "table has wrong number of rows");
  for (const auto& row : table) {
    if (row.size() != n) throw Error("NotAGroup", "table row has wrong length");
    for (auto x : row)
      if (x >= n) throw Error("NotAGroup", "table entry outside the element list");
  }

  std::size_t identity = n;
  for (std::size_t e = 0; e < n && identity == n; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) identity = e;
  }
  if (identity == n) throw Error("NotAGroup", "no two-sided identity");

  for (std::size_t x = 0; x < n; ++x) {
    std::vector<bool> row_seen(n), col_seen(n);
    for (std::size_t y = 0; y < n; ++y) {
      if (row_seen[table[x][y]] || col_seen[table[y][x]])
        throw Error("NotAGroup", "element " + names[x] + " has no inverse");
      row_seen[table[x][y]] = true;
      col_seen[table[y][x]] = true;
    }
  }

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw Error("NotAGroup", "not associative at (" + names[a] + "," + names[b] + "," +
                                       names[c] + ")");

  GroupModel g;
  g.kind_ = GroupKind::Finite;
  g.names_ = std::move(names);
  g.table_ = std::move(table);
  g.identity_ = identity;
  g.inverse_.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (g.table_[x][y] == identity) g.inverse_[x] = y;
  return g;
}

GroupModel GroupModel::trivial() { return cyclic(1); }

GroupModel GroupModel::cyclic(std::size_t n) {
  if (n == 0) throw Error("NotAGroup", "cyclic group of order 0");
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  }
  return from_table(std::move(names), std::move(table));
}

GroupModel GroupModel::dihedral(std::size_t n) {
  if (n == 0) throw Error("NotAGroup", "dihedral group D_0");
  // index k < n is r^k, index n + k is s r^k; s r^k s = r^{-k}
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k) names.push_back("r" + std::to_string(k));
  for (std::size_t k = 0; k < n; ++k) names.push_back("s" + std::to_string(k));
  std::vector<std::vector<std::size_t>> table(2 * n, std::vector<std::size_t>(2 * n));
  for (std::size_t x = 0; x < 2 * n; ++x) {
    for (std::size_t y = 0; y < 2 * n; ++y) {
      std::size_t a = x % n, b = y % n;
      bool fx = x >= n, fy = y >= n;
      // (s^fx r^a)(s^fy r^b) = s^(fx+fy) r^(±a + b)
      std::size_t k = fy ? (n - a + b) % n : (a + b) % n;
      table[x][y] = ((fx != fy) ? n : 0) + k;
    }
  }
  return from_table(std::move(names), std::move(table));
}

GroupModel GroupModel::symmetric(std::size_t n) {
  if (n == 0 || n > 6) throw Error("NotAGroup", "symmetric groups supported for 1 <= n <= 6");
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  std::map<std::vector<std::size_t>, std::size_t> index;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    index[perms[i]] = i;
    std::string name;
    for (auto x : perms[i]) name += static_cast<char>('0' + x);
    names.push_back(name);
  }
  std::vector<std::vector<std::size_t>> table(perms.size(), std::vector<std::size_t>(perms.size()));
  for (std::size_t a = 0; a < perms.size(); ++a) {
    for (std::size_t b = 0; b < perms.size(); ++b) {
      std::vector<std::size_t> c(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      table[a][b] = index.at(c);
    }
  }
  return from_table(std::move(names), std::move(table));
}

GroupModel GroupModel::free(std::size_t rank) {
  if (rank > 26) throw Error("NotAGroup", "symbolic rank above 26");
  GroupModel g;
  g.kind_ = GroupKind::Free;
  g.rank_ = rank;
  return g;
}

GroupModel GroupModel::free_abelian(std::size_t rank) {
  if (rank > 26) throw Error("NotAGroup", "symbolic rank above 26");
  GroupModel g;
  g.kind_ = GroupKind::FreeAbelian;
  g.rank_ = rank;
  return g;
}

std::size_t GroupModel::order() const {
  if (!is_finite()) throw Error("InfiniteGroup", "symbolic group has no finite order");
  return names_.size();
}

Element GroupModel::identity() const {
  switch (kind_) {
    case GroupKind::Finite:
      return Element{{static_cast<std::int64_t>(identity_)}};
    case GroupKind::Free:
      return Element{};
    case GroupKind::FreeAbelian:
      return Element{std::vector<std::int64_t>(rank_, 0)};
  }
  return Element{};
}

Element GroupModel::multiply(const Element& a, const Element& b) const {
  switch (kind_) {
    case GroupKind::Finite:
      return Element{{static_cast<std::int64_t>(table_[index(a)][index(b)])}};
    case GroupKind::Free: {
      Element out = a;
      for (auto letter : b.rep) {
        if (!out.rep.empty() && out.rep.back() == -letter)
          out.rep.pop_back();
        else
          out.rep.push_back(letter);
      }
      return out;
    }
    case GroupKind::FreeAbelian: {
      Element out = a;
      for (std::size_t i = 0; i < rank_; ++i) out.rep[i] += b.rep[i];
      return out;
    }
  }
  return a;
}

Element GroupModel::inverse(const Element& a) const {
  switch (kind_) {
    case GroupKind::Finite:
      return Element{{static_cast<std::int64_t>(inverse_[index(a)])}};
    case GroupKind::Free: {
      Element out;
      for (auto it = a.rep.rbegin(); it != a.rep.rend(); ++it) out.rep.push_back(-*it);
      return out;
    }
    case GroupKind::FreeAbelian: {
      Element out = a;
      for (auto& x : out.rep) x = -x;
      return out;
    }
  }
  return a;
}

std::string GroupModel::name(const Element& a) const {
  switch (kind_) {
    case GroupKind::Finite:
      return names_[index(a)];
    case GroupKind::Free: {
      if (a.rep.empty()) return "1";
      std::string out;
      for (std::size_t i = 0; i < a.rep.size();) {
        std::size_t j = i;
        while (j < a.rep.size() && a.rep[j] == a.rep[i]) ++j;
        auto letter = a.rep[i];
        std::int64_t exponent = static_cast<std::int64_t>(j - i) * (letter > 0 ? 1 : -1);
        out += power_string(generator_letter(static_cast<std::size_t>(std::abs(letter) - 1)), exponent);
        i = j;
      }
      return out;
    }
    case GroupKind::FreeAbelian: {
      std::string out;
      for (std::size_t i = 0; i < rank_; ++i)
        if (a.rep[i] != 0) out += power_string(generator_letter(i), a.rep[i]);
      return out.empty() ? "1" : out;
    }
  }
  return {};
}

Element GroupModel::parse(std::string_view text) const {
  if (is_finite()) {
    auto it = std::find(names_.begin(), names_.end(), text);
    if (it == names_.end()) throw Error("UnknownElement", std::string(text));
    return Element{{static_cast<std::int64_t>(it - names_.begin())}};
  }

  auto fail = [&](const std::string& why) {
    return Error("UnknownElement", "'" + std::string(text) + "': " + why);
  };
  Element out = identity();
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (text[i] == '*' || std::isspace(static_cast<unsigned char>(text[i])))) ++i;
  };
  skip();
  if (text.substr(i) == "1") return out;
  while (i < text.size()) {
    char c = text[i++];
    if (!std::isalpha(static_cast<unsigned char>(c))) throw fail("expected a generator letter");
    bool upper = std::isupper(static_cast<unsigned char>(c));
    auto gen = static_cast<std::size_t>(std::tolower(static_cast<unsigned char>(c)) - 'a');
    if (gen >= rank_) throw fail("generator outside the rank");
    std::int64_t exponent = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t start = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
        throw fail("bad exponent");
      exponent = std::stoll(std::string(text.substr(start, i - start)));
    }
    if (upper) exponent = -exponent;
    Element step = identity();
    if (kind_ == GroupKind::Free) {
      auto letter = static_cast<std::int64_t>(gen + 1) * (exponent < 0 ? -1 : 1);
      step.rep.assign(static_cast<std::size_t>(std::abs(exponent)), letter);
    } else {
      step.rep[gen] = exponent;
    }
    out = multiply(out, step);
    skip();
  }
  return out;
}

std::vector<Element> GroupModel::elements() const {
  std::vector<Element> out;
  for (std::size_t i = 0; i < order(); ++i) out.push_back(element(i));
  return out;
}

std::size_t GroupModel::index(const Element& a) const {
  if (!is_finite()) throw Error("InfiniteGroup", "symbolic elements have no table index");
  if (a.rep.size() != 1 || a.rep[0] < 0 || static_cast<std::size_t>(a.rep[0]) >= names_.size())
    throw Error("UnknownElement", "element does not belong to this group");
  return static_cast<std::size_t>(a.rep[0]);
}

Element GroupModel::element(std::size_t i) const {
  if (i >= order()) throw Error("UnknownElement", "index out of range");
  return Element{{static_cast<std::int64_t>(i)}};
}

std::vector<Element> GroupModel::generators() const {
  std::vector<Element> gens;
  if (!is_finite()) {
    for (std::size_t i = 0; i < rank_; ++i) {
      Element g = identity();
      if (kind_ == GroupKind::Free)
        g.rep = {static_cast<std::int64_t>(i + 1)};
      else
        g.rep[i] = 1;
      gens.push_back(g);
    }
    return gens;
  }
  std::vector<bool> in_span(order(), false);
  in_span[identity_] = true;
  for (std::size_t x = 0; x < order(); ++x) {
    if (in_span[x]) continue;
    gens.push_back(element(x));
    // close the span under right multiplication by all chosen generators
    std::vector<std::size_t> frontier;
    for (std::size_t y = 0; y < order(); ++y)
      if (in_span[y]) frontier.push_back(y);
    while (!frontier.empty()) {
      auto y = frontier.back();
      frontier.pop_back();
      for (const auto& g : gens) {
        auto z = table_[y][index(g)];
        if (!in_span[z]) {
          in_span[z] = true;
          frontier.push_back(z);
        }
      }
    }
  }
  return gens;
}

std::size_t GroupModel::word_length(const Element& a) const {
  switch (kind_) {
    case GroupKind::Finite:
      throw Error("InfiniteGroup", "word length is defined for symbolic groups");
    case GroupKind::Free:
      return a.rep.size();
    case GroupKind::FreeAbelian: {
      std::size_t n = 0;
      for (auto x : a.rep) n += static_cast<std::size_t>(std::abs(x));
      return n;
    }
  }
  return 0;
}

std::vector<Element> GroupModel::ball(std::size_t radius) const {
  if (is_finite()) return elements();
  std::vector<Element> layer{identity()};
  std::vector<Element> all{identity()};
  std::set<Element> seen{identity()};
  std::vector<Element> letters;
  for (const auto& g : generators()) {
    letters.push_back(g);
    letters.push_back(inverse(g));
  }
  for (std::size_t r = 0; r < radius; ++r) {
    std::vector<Element> next;
    for (const auto& x : layer)
      for (const auto& l : letters) {
        auto y = multiply(x, l);
        if (word_length(y) == r + 1 && seen.insert(y).second) next.push_back(y);
      }
    std::sort(next.begin(), next.end(), [&](const Element& p, const Element& q) {
      return name(p) < name(q);
    });
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return all;
}

bool GroupModel::generates(std::span<const Element> gens) const {
  std::vector<bool> seen(order(), false);
  std::vector<std::size_t> stack{identity_};
  seen[identity_] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    for (const auto& g : gens) {
      auto y = table_[x][index(g)];
      if (!seen[y]) {
        seen[y] = true;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == order();
}

}  // namespace tgraph
