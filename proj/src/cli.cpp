#include "tgraph/cli.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "tgraph/io.hpp"

namespace tgraph::cli {

namespace {

using io::Json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::vector<std::string> in;
  std::string out;
  std::optional<std::size_t> radius;
  std::optional<std::string> base;
  std::string format = "json";
};

// Input documents sorted by the keys they carry.
struct Inputs {
  std::vector<Json> graphs, cocycles, actions, perms, matrices, circles, gensets;

  static Inputs load(const std::vector<std::string>& paths) {
    Inputs in;
    for (const auto& path : paths) {
      std::ifstream file(path);
      if (!file) throw Error("IoError", "cannot read " + path);
      Json j;
      try {
        j = Json::parse(file);
      } catch (const Json::parse_error& e) {
        throw Error("InvalidJson", path + ": " + e.what());
      }
      if (!j.is_object()) throw Error("InvalidJson", path + ": top level must be an object");
      if (j.contains("vertices"))
        in.graphs.push_back(std::move(j));
      else if (j.contains("label"))
        in.cocycles.push_back(std::move(j));
      else if (j.contains("act_v"))
        in.actions.push_back(std::move(j));
      else if (j.contains("perm"))
        in.perms.push_back(std::move(j));
      else if (j.contains("entries"))
        in.matrices.push_back(std::move(j));
      else if (j.contains("n") && j.contains("m"))
        in.circles.push_back(std::move(j));
      else if (j.contains("group") && j.contains("generators"))
        in.gensets.push_back(std::move(j));
      else
        throw Error("InvalidJson", path + ": unrecognised document");
    }
    return in;
  }
};

const Json& need(const std::vector<Json>& docs, const char* what, std::size_t i = 0) {
  if (docs.size() <= i) throw UsageError(std::string("missing --in ") + what + " document");
  return docs[i];
}

struct Result {
  Json json;
  std::optional<Graph> graph;  // set for graph-valued results
};

Result graph_result(const Graph& g, Json extra = Json::object()) {
  Json j = io::to_json(g);
  for (auto& [k, v] : extra.items()) j[k] = v;
  return {j, g};
}

// --- check ------------------------------------------------------------------

struct Property {
  std::string name;
  std::string status;  // "pass", "fail" or "skipped"
  std::string detail;
};

Graph induced_subgraph(const Graph& g, const std::vector<Id>& vertices) {
  RawGraph raw;
  raw.vertices = vertices;
  std::vector<bool> keep(g.num_vertices(), false);
  for (const auto& v : vertices) keep[g.vertex_index(v)] = true;
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    if (keep[g.src(e)]) raw.edges.push_back({g.edge(e), g.vertex(g.src(e)), g.vertex(g.rng(e))});
  return Graph::build(raw);
}

Property check_pi1_rank(const Graph& g) {
  auto p = forest_presentation(g);
  const auto components = connected_components(g).size();
  const auto expected = static_cast<long long>(g.num_edges()) - static_cast<long long>(g.num_vertices()) +
                        static_cast<long long>(components);
  RawGraph forest;
  forest.vertices.assign(g.vertices().begin(), g.vertices().end());
  for (const auto& id : p.spanning_forest) {
    auto e = g.edge_index(id);
    forest.edges.push_back({id, g.vertex(g.src(e)), g.vertex(g.rng(e))});
  }
  const bool ok = static_cast<long long>(p.rank) == expected && p.generator_edges.size() == p.rank &&
                  is_forest(Graph::build(forest));
  return {"pi1-rank-formula", ok ? "pass" : "fail",
          "rank " + std::to_string(p.rank) + ", |E1| - |E0| + components = " + std::to_string(expected)};
}

Property check_cover_acyclicity(const Graph& g, std::size_t radius) {
  if (g.num_vertices() == 0) return {"cover-acyclicity", "skipped", "empty graph"};
  std::size_t balls = 0;
  try {
    for (const auto& component : connected_components(g)) {
      Graph piece = induced_subgraph(g, component);
      for (const auto& base : component) {
        auto ball = universal_cover_ball(piece, base, radius, 200'000);
        ++balls;
        if (!is_forest(ball.tree)) return {"cover-acyclicity", "fail", "ball at " + base + " has a cycle"};
        std::vector<bool> boundary(ball.tree.num_vertices(), false);
        for (const auto& b : ball.boundary) boundary[ball.tree.vertex_index(b)] = true;
        for (std::size_t v = 0; v < ball.tree.num_vertices(); ++v) {
          if (boundary[v]) continue;
          auto f = fibers_at(ball.covering_map, v);
          if (!f.s_bijective || !f.r_bijective)
            return {"cover-acyclicity", "fail", "fibers not bijective at " + ball.tree.vertex(v)};
        }
      }
    }
  } catch (const Error& e) {
    if (e.kind() != "ExplosionGuard") throw;
    return {"cover-acyclicity", "skipped", "ball too large at radius " + std::to_string(radius)};
  }
  return {"cover-acyclicity", "pass",
          std::to_string(balls) + " balls of radius " + std::to_string(radius) + " are trees"};
}

std::vector<Property> check_action(const GraphAction& raw_action) {
  std::vector<Property> out;
  const GraphAction a = validate_action(raw_action);
  if (!a.group().is_finite()) {
    for (const char* name : {"gross-tucker", "fiber-bound", "edge-freeness"})
      out.push_back({name, "skipped", "symbolic group"});
    return out;
  }
  auto freeness = is_free(a);
  if (!freeness.free) {
    const std::string why = "action is not free (" + freeness.witness->first + " fixes " + freeness.witness->second + ")";
    for (const char* name : {"gross-tucker", "fiber-bound", "edge-freeness"}) out.push_back({name, "skipped", why});
    return out;
  }

  auto x = extract_cocycle(a);
  auto report = analyze_morphism(x.iso);
  const bool gt = report.is_morphism && x.iso.inverse().has_value() && is_equivariant(x.iso, x.skew.action, a);
  out.push_back({"gross-tucker", gt ? "pass" : "fail", "quotient has " + std::to_string(x.quotient.graph.num_vertices()) +
                                                           " vertices and " +
                                                           std::to_string(x.quotient.graph.num_edges()) + " edges"});

  // recompute max_v |q^{-1}(K) cap s^{-1}(v)| for K = all quotient edges and each singleton
  const Graph& g = a.graph();
  const Quotient& q = x.quotient;
  auto recompute = [&](const std::vector<bool>& in_k) {
    std::size_t best = 0;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      std::size_t count = 0;
      for (auto e : g.out_edges(v))
        if (in_k[q.map.on_edge(e)]) ++count;
      best = std::max(best, count);
    }
    return best;
  };
  bool fb = true;
  std::vector<Id> all(q.graph.edges().begin(), q.graph.edges().end());
  std::vector<bool> mask(q.graph.num_edges(), true);
  fb = fb && fiber_bound(a, all).bound == recompute(mask);
  for (std::size_t k = 0; k < q.graph.num_edges() && fb; ++k) {
    std::vector<bool> one(q.graph.num_edges(), false);
    one[k] = true;
    const Id id = q.graph.edge(k);
    fb = fiber_bound(a, std::span<const Id>(&id, 1)).bound == recompute(one);
  }
  out.push_back({"fiber-bound", fb ? "pass" : "fail",
                 "checked all quotient edges and " + std::to_string(q.graph.num_edges()) + " singletons"});

  auto fixed = edge_fixed_point(a);
  out.push_back({"edge-freeness", fixed ? "fail" : "pass",
                 fixed ? fixed->first + " fixes edge " + fixed->second : "no edge is fixed by a non-identity element"});
  return out;
}

Property check_quotient_of_skew(const Cocycle& c) {
  if (!c.group.is_finite()) return {"quotient-of-skew", "skipped", "symbolic group"};
  auto skew = skew_product(c);
  auto q = quotient_graph(skew.action);
  try {
    auto iso = find_isomorphism(q.graph, c.graph);
    return {"quotient-of-skew", iso ? "pass" : "fail",
            "skew product has " + std::to_string(skew.graph.num_vertices()) + " vertices"};
  } catch (const Error& e) {
    if (e.kind() != "SizeBoundExceeded") throw;
    return {"quotient-of-skew", "skipped", "graph exceeds the isomorphism search bound"};
  }
}

// --- subcommands ------------------------------------------------------------

using Handler = std::function<Result(const Inputs&, const Options&)>;

Graph first_graph(const Inputs& in) { return io::graph_from_json(need(in.graphs, "graph")); }

const std::map<std::string, std::pair<std::string, Handler>>& handlers() {
  static const std::map<std::string, std::pair<std::string, Handler>> table{
      {"validate",
       {"validate a graph (and any action or cocycle supplied with it)",
        [](const Inputs& in, const Options&) {
          Graph g = first_graph(in);
          Json extra = Json::object();
          if (!in.actions.empty()) {
            auto a = validate_action(io::action_from_json(in.actions[0], g));
            extra["action"] = {{"valid", true}, {"free", is_free(a).free}};
          }
          if (!in.cocycles.empty()) {
            io::cocycle_from_json(in.cocycles[0], g);
            extra["cocycle"] = {{"valid", true}};
          }
          return graph_result(g, extra);
        }}},
      {"classes",
       {"sources, finite receivers and regular vertices",
        [](const Inputs& in, const Options&) { return Result{io::to_json(vertex_classes(first_graph(in))), {}}; }}},
      {"quotient",
       {"quotient graph of a free action of a finite group",
        [](const Inputs& in, const Options&) {
          Graph g = first_graph(in);
          auto q = quotient_graph(io::action_from_json(need(in.actions, "action"), g));
          return graph_result(q.graph, {{"orbit_map", io::to_json(q.map)}});
        }}},
      {"skew",
       {"skew product of a graph by a cocycle",
        [](const Inputs& in, const Options& o) {
          Graph g = first_graph(in);
          auto c = io::cocycle_from_json(need(in.cocycles, "cocycle"), g);
          return graph_result(skew_product(c, o.radius).graph);
        }}},
      {"extract-cocycle",
       {"quotient, cocycle and equivariant isomorphism of a free action",
        [](const Inputs& in, const Options&) {
          Graph g = first_graph(in);
          auto x = extract_cocycle(io::action_from_json(need(in.actions, "action"), g));
          return Result{{{"quotient", io::to_json(x.quotient.graph)},
                         {"cocycle", io::to_json(x.cocycle)},
                         {"iso", io::to_json(x.iso)}},
                        {}};
        }}},
      {"cayley",
       {"Cayley graph of a group with an ordered generator list",
        [](const Inputs& in, const Options& o) {
          auto s = io::generating_set_from_json(need(in.gensets, "generating set"));
          return graph_result(cayley_graph(s, o.radius).graph);
        }}},
      {"pi1",
       {"free presentation of pi_1 of a connected graph, or of a circle graph",
        [](const Inputs& in, const Options&) {
          if (in.graphs.empty() && !in.circles.empty()) {
            auto p = pi1_presentation(io::circle_from_json(in.circles[0]));
            Json j = io::to_json(p);
            j["abelianization"] = io::to_json(abelianization(p));
            return Result{j, {}};
          }
          return Result{io::to_json(pi1_presentation(first_graph(in))), {}};
        }}},
      {"cover",
       {"radius-n window onto the universal cover",
        [](const Inputs& in, const Options& o) {
          Graph g = first_graph(in);
          auto ball = universal_cover_ball(g, o.base, o.radius.value_or(2));
          return Result{io::to_json(ball), ball.tree};
        }}},
      {"derived-cover",
       {"cover built from a cocycle and a permutation action",
        [](const Inputs& in, const Options&) {
          Graph g = first_graph(in);
          auto c = io::cocycle_from_json(need(in.cocycles, "cocycle"), g);
          auto sigma = io::permutation_action_from_json(need(in.perms, "permutation action"));
          auto d = derived_cover(c, sigma);
          return graph_result(d.graph, {{"projection", io::to_json(d.projection)}});
        }}},
      {"bs-tree",
       {"ball in the Bass-Serre tree of B(n,m)",
        [](const Inputs& in, const Options& o) {
          auto c = io::circle_from_json(need(in.circles, "circle graph"));
          validate_circle_graph(c);
          if (c.rotation) throw Error("UnsupportedCase", "the Bass-Serre tree needs a power graph without rotation");
          return graph_result(bass_serre_ball(c.n, c.m, o.radius.value_or(2)));
        }}},
      {"circle",
       {"presentation, abelianization, cover record and algebra facts of a circle graph",
        [](const Inputs& in, const Options&) {
          auto c = io::circle_from_json(need(in.circles, "circle graph"));
          auto p = pi1_presentation(c);
          return Result{{{"presentation", io::to_json(p)},
                         {"abelianization", io::to_json(abelianization(p))},
                         {"cover", io::to_json(universal_cover_description(c))},
                         {"algebra", io::to_json(algebra_properties(c))}},
                        {}};
        }}},
      {"ktheory",
       {"K-theory of a finite graph, or Smith form of a matrix",
        [](const Inputs& in, const Options&) {
          if (in.graphs.empty() && !in.matrices.empty()) {
            auto m = io::matrix_from_json(in.matrices[0]);
            auto snf = smith_normal_form(m);
            Json factors = Json::array();
            for (const auto& d : invariant_factors(m)) factors.push_back(d.str());
            return Result{{{"d", io::to_json(snf.d)},
                           {"u", io::to_json(snf.u)},
                           {"v", io::to_json(snf.v)},
                           {"invariant_factors", factors}},
                          {}};
          }
          Graph g = first_graph(in);
          Json j = io::to_json(graph_k_theory(g));
          j["matrix"] = io::to_json(k_theory_matrix(g));
          return Result{j, {}};
        }}},
      {"morita",
       {"K-theory comparison of two graphs (necessary condition only)",
        [](const Inputs& in, const Options&) {
          auto a = io::graph_from_json(need(in.graphs, "graph", 0));
          auto b = io::graph_from_json(need(in.graphs, "second graph", 1));
          return Result{io::to_json(morita_witness(a, b)), {}};
        }}},
      {"check",
       {"run the property suites on the supplied inputs",
        [](const Inputs& in, const Options& o) {
          Graph g = first_graph(in);
          std::vector<Property> props;
          props.push_back(check_pi1_rank(g));
          props.push_back(check_cover_acyclicity(g, o.radius.value_or(3)));
          if (!in.actions.empty()) {
            auto more = check_action(io::action_from_json(in.actions[0], g));
            props.insert(props.end(), more.begin(), more.end());
          }
          if (!in.cocycles.empty()) props.push_back(check_quotient_of_skew(io::cocycle_from_json(in.cocycles[0], g)));
          Json list = Json::array();
          bool failed = false;
          for (const auto& p : props) {
            list.push_back({{"name", p.name}, {"status", p.status}, {"detail", p.detail}});
            failed = failed || p.status == "fail";
          }
          return Result{{{"properties", list}, {"ok", !failed}}, {}};
        }}},
      {"export-dot",
       {"render a graph as DOT",
        [](const Inputs& in, const Options&) { return graph_result(first_graph(in)); }}},
  };
  return table;
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out);
  if (!file) throw Error("IoError", "cannot write " + o.out);
  file << text;
}

Json error_json(const std::string& kind, const std::string& message) {
  return {{"error", kind}, {"message", message}};
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Group actions, coverings and K-theory of discrete graphs", "tgraph"};
  app.require_subcommand(1, 1);
  Options opts;
  std::map<CLI::App*, std::string> names;
  for (const auto& [name, entry] : handlers()) {
    auto* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--in", opts.in, "input JSON document (repeatable)");
    sub->add_option("--out", opts.out, "write the result here instead of standard output");
    sub->add_option("--radius", opts.radius, "window radius");
    sub->add_option("--base", opts.base, "basepoint vertex id");
    sub->add_option("--format", opts.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
    names[sub] = name;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }

  const std::string command = names.at(app.get_subcommands().front());
  const bool dot = opts.format == "dot" || command == "export-dot";
  try {
    Inputs inputs = Inputs::load(opts.in);
    Result result = handlers().at(command).second(inputs, opts);
    if (dot) {
      if (!result.graph) throw UsageError("--format dot needs a graph-valued subcommand");
      emit(io::export_dot(*result.graph), opts, out);
    } else {
      emit(result.json.dump(2) + "\n", opts, out);
    }
    if (command == "check" && !result.json.at("ok").get<bool>()) {
      err << error_json("PropertyFailed", "at least one property failed").dump() << "\n";
      return 1;
    }
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << error_json(e.kind(), e.what()).dump() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    err << error_json("InvalidJson", e.what()).dump() << "\n";
    return 1;
  }
}

}  // namespace tgraph::cli
