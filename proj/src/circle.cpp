#include "tgraph/circle.hpp"

#include <map>
#include <numeric>

namespace tgraph {

void validate_circle_graph(const CircleGraph& g) {
  if (g.n == 0) throw Error("InvalidCircleGraph", "n = 0: s(z) = z^0 is not a local homeomorphism");
  if (g.m == 0) throw Error("InvalidCircleGraph", "m = 0 is not allowed");
}

std::string to_string(Amenability a) {
  switch (a) {
    case Amenability::Amenable:
      return "amenable";
    case Amenability::NonAmenable:
      return "non-amenable";
    case Amenability::Unknown:
      return "unknown";
  }
  return "unknown";
}

std::string format_word(const GroupPresentation& p, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    const auto& gen = p.generators.at(static_cast<std::size_t>(std::abs(w[i]) - 1));
    auto exponent = static_cast<long long>(j - i) * (w[i] > 0 ? 1 : -1);
    out += gen;
    if (exponent != 1) out += "^" + std::to_string(exponent);
    i = j;
  }
  return out;
}

namespace {

bool is_rotation_case(const CircleGraph& g) { return g.rotation && g.n == 1 && g.m == 1; }
bool is_power_case(const CircleGraph& g) { return !g.rotation && g.n >= 1 && g.m >= 1; }

void require_supported(const CircleGraph& g) {
  validate_circle_graph(g);
  if (!is_rotation_case(g) && !is_power_case(g))
    throw Error("UnsupportedCase", "supported: n = m = 1 with a rotation, or n, m >= 1 without");
}

std::string substitute(std::string text, const std::string& symbol) {
  std::string out;
  for (char c : text) {
    if (c == '@')
      out += symbol;
    else
      out += c;
  }
  return out;
}

}  // namespace

GroupPresentation pi1_presentation(const CircleGraph& g) {
  require_supported(g);
  GroupPresentation p;
  p.generators = {"a", "b"};
  if (is_rotation_case(g)) {
    p.relators = {{1, 2, -1, -2}};
    p.kind = "free-abelian";
    p.amenability = Amenability::Amenable;
    return p;
  }
  Word relator{1};
  relator.insert(relator.end(), static_cast<std::size_t>(g.n), 2);
  relator.push_back(-1);
  relator.insert(relator.end(), static_cast<std::size_t>(g.m), -2);
  p.relators = {relator};
  p.kind = "baumslag-solitar";
  if (g.n == 1 || g.m == 1)
    p.amenability = Amenability::Amenable;
  else if (std::gcd(g.n, g.m) == 1)
    p.amenability = Amenability::NonAmenable;
  else
    p.amenability = Amenability::Unknown;
  return p;
}

AbelianGroup abelianization(const GroupPresentation& p) {
  IntMatrix m(p.relators.size(), p.generators.size());
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (int letter : p.relators[r]) m.at(r, static_cast<std::size_t>(std::abs(letter) - 1)) += letter > 0 ? 1 : -1;
  auto factors = invariant_factors(m);
  AbelianGroup out;
  out.free_rank = p.generators.size() - factors.size();
  for (const auto& d : factors)
    if (d > 1) out.torsion.push_back(d);
  return out;
}

// ---------------------------------------------------------------------------

BaumslagSolitar::BaumslagSolitar(std::int64_t n, std::int64_t m) : n_(n), m_(m) {
  if (n < 1 || m < 1) throw Error("UnsupportedCase", "B(n,m) rewriting needs n, m >= 1");
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

void BaumslagSolitar::append(BsNormalForm& w, int letter) const {
  switch (letter) {
    case 2:
      ++w.tail;
      return;
    case -2:
      --w.tail;
      return;
    case 1: {
      // a^-1 b^{km} a = b^{kn}
      if (!w.syllables.empty() && w.syllables.back().second == -1 && w.tail % m_ == 0) {
        auto j = w.syllables.back().first;
        w.syllables.pop_back();
        w.tail = j + (w.tail / m_) * n_;
        return;
      }
      // b^{qm + r} a = b^r a b^{qn}
      auto q = floor_div(w.tail, m_);
      w.syllables.emplace_back(w.tail - q * m_, 1);
      w.tail = q * n_;
      return;
    }
    case -1: {
      // a b^{kn} a^-1 = b^{km}
      if (!w.syllables.empty() && w.syllables.back().second == 1 && w.tail % n_ == 0) {
        auto j = w.syllables.back().first;
        w.syllables.pop_back();
        w.tail = j + (w.tail / n_) * m_;
        return;
      }
      // b^{qn + r} a^-1 = b^r a^-1 b^{qm}
      auto q = floor_div(w.tail, n_);
      w.syllables.emplace_back(w.tail - q * n_, -1);
      w.tail = q * m_;
      return;
    }
    default:
      throw Error("InvalidWord", "letter " + std::to_string(letter) + " is not a, b or an inverse");
  }
}

BsNormalForm BaumslagSolitar::reduce(const Word& w) const {
  BsNormalForm out;
  for (int letter : w) append(out, letter);
  return out;
}

std::string BaumslagSolitar::format(const BsNormalForm& w) const {
  std::string out;
  auto b_power = [&](std::int64_t k) {
    if (k == 0) return;
    out += "b";
    if (k != 1) out += "^" + std::to_string(k);
  };
  for (const auto& [j, e] : w.syllables) {
    b_power(j);
    out += e > 0 ? "a" : "a^-1";
  }
  b_power(w.tail);
  return out.empty() ? "1" : out;
}

Graph bass_serre_ball(std::int64_t n, std::int64_t m, std::size_t radius, std::size_t cap) {
  BaumslagSolitar group(n, m);
  const std::string edge_suffix = "<b^" + std::to_string(n) + ">";

  auto vertex_of = [&](BsNormalForm w) {
    w.tail = 0;
    return w;
  };
  auto edge_of = [&](BsNormalForm w) {
    w.tail = w.tail - floor_div(w.tail, n) * n;
    return w;
  };
  auto vertex_name = [&](const BsNormalForm& w) { return group.format(w) + "<b>"; };
  auto edge_name = [&](const BsNormalForm& w) { return group.format(w) + edge_suffix; };

  std::map<std::string, std::size_t> depth;
  std::vector<BsNormalForm> layer{BsNormalForm{}};
  depth[vertex_name(layer.front())] = 0;
  RawGraph raw;
  raw.vertices.push_back(vertex_name(layer.front()));
  std::map<std::string, RawEdge> edges;

  for (std::size_t d = 0; d < radius; ++d) {
    std::vector<BsNormalForm> next;
    auto visit = [&](const BsNormalForm& neighbour, RawEdge edge) {
      auto name = vertex_name(neighbour);
      if (!depth.contains(name)) {
        if (depth.size() >= cap)
          throw Error("ExplosionGuard", "more than " + std::to_string(cap) + " tree vertices");
        depth[name] = d + 1;
        raw.vertices.push_back(name);
        next.push_back(neighbour);
      }
      edges.emplace(edge.id, std::move(edge));
    };
    for (const auto& w : layer) {
      const auto here = vertex_name(w);
      for (std::int64_t j = 0; j < n; ++j) {
        // edge g b^j <b^n> leaves g<b> and enters g b^j a^-1 <b>
        BsNormalForm h = w;
        for (std::int64_t k = 0; k < j; ++k) group.append(h, 2);
        auto edge = edge_of(h);
        group.append(h, -1);
        auto target = vertex_of(h);
        visit(target, RawEdge{edge_name(edge), here, vertex_name(target)});
      }
      for (std::int64_t j = 0; j < m; ++j) {
        // edge g b^j a <b^n> leaves g b^j a <b> and enters g<b>
        BsNormalForm h = w;
        for (std::int64_t k = 0; k < j; ++k) group.append(h, 2);
        group.append(h, 1);
        auto source = vertex_of(h);
        visit(source, RawEdge{edge_name(edge_of(h)), vertex_name(source), here});
      }
    }
    layer = std::move(next);
  }
  for (auto& [id, edge] : edges) raw.edges.push_back(std::move(edge));
  return Graph::build(raw);
}

CoverRecord universal_cover_description(const CircleGraph& g) {
  require_supported(g);
  CoverRecord rec;
  if (is_rotation_case(g)) {
    const std::string theta = g.rotation->symbol;
    rec.vertex_space = "R x Z";
    rec.edge_space = "R x Z";
    rec.source_map = "s(y,k) = (y,k)";
    rec.range_map = substitute("r(y,k) = (y+@, k+1)", theta);
    rec.deck_group = "Z^2";
    rec.deck_action = substitute("(j,l).(y,k) = (j+y+l*@, k+l)", theta);
    rec.note = substitute("universal cover of the rotation graph; quotient by Z^2 recovers E (@ is ", theta) +
               (g.rotation->rational ? "rational)" : "irrational)");
    return rec;
  }
  const std::string n = std::to_string(g.n);
  const std::string m = std::to_string(g.m);
  rec.vertex_space = "T0 x R";
  rec.edge_space = "T1 x R";
  rec.source_map = "s~(t,y) = (s(t), " + n + "y)";
  rec.range_map = "r~(t,y) = (r(t), " + m + "y)";
  rec.deck_group = "B(" + n + "," + m + ")";
  rec.deck_action = "left translation of cosets on the Bass-Serre tree T";
  rec.note = "T is the Bass-Serre tree of B(" + n + "," + m +
             "): vertices g<b>, edges g<b^" + n + ">, s(g<b^" + n + ">) = g<b>, r(g<b^" + n +
             ">) = g a^-1 <b>; bass_serre_ball gives finite windows";
  return rec;
}

AlgebraProperties algebra_properties(const CircleGraph& g) {
  AlgebraProperties p;
  if (g.n == 0 || g.m == 0) return p;
  if (!g.rotation && g.n >= 1 && g.m % g.n != 0) {
    p.simple = true;
    p.purely_infinite = true;
  }
  if (is_rotation_case(g) && !g.rotation->rational)
    p.algebra = "irrational rotation algebra A_" + g.rotation->symbol;
  return p;
}

}  // namespace tgraph
