#include "eqtree/io.hpp"

#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include "eqtree/error.hpp"

namespace eqtree::io {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::ParseError, "at " + path + ": " + what);
}

void only_fields(const json& doc, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!doc.is_object()) bad(path, "expected an object");
  for (const auto& [key, _] : doc.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) bad(path + "." + key, "unknown field");
  }
}

const json& field(const json& doc, const std::string& path, const char* name) {
  const auto it = doc.find(name);
  if (it == doc.end()) bad(path + "." + name, "missing field");
  return *it;
}

std::uint32_t as_u32(const json& v, const std::string& path) {
  if (!v.is_number_integer()) bad(path, "expected a non-negative integer");
  if (v.is_number_unsigned()) {
    const auto x = v.get<std::uint64_t>();
    if (x > std::numeric_limits<std::uint32_t>::max()) bad(path, "integer too large");
    return static_cast<std::uint32_t>(x);
  }
  const auto x = v.get<std::int64_t>();
  if (x < 0) bad(path, "expected a non-negative integer");
  if (x > std::numeric_limits<std::uint32_t>::max()) bad(path, "integer too large");
  return static_cast<std::uint32_t>(x);
}

const json& array_field(const json& doc, const std::string& path, const char* name) {
  const json& a = field(doc, path, name);
  if (!a.is_array()) bad(path + "." + name, "expected an array");
  return a;
}

std::vector<std::uint32_t> tuple(const json& v, const std::string& path, std::size_t arity) {
  if (!v.is_array() || v.size() != arity) bad(path, "expected an array of " + std::to_string(arity) + " integers");
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < arity; ++i) out.push_back(as_u32(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

DocumentKind detect_kind(const json& doc) {
  if (!doc.is_object()) bad("$", "expected an object");
  if (doc.contains("n")) return DocumentKind::Instance;
  if (doc.contains("m")) return DocumentKind::Quotient;
  if (doc.contains("nv")) return DocumentKind::Graph;
  bad("$", "cannot tell the document kind (expected field n, m or nv)");
}

EquippedColoredTree parse_instance(const json& doc) {
  only_fields(doc, "$", {"n", "k", "mode", "edges", "perm"});
  TreeInput in;
  in.n = as_u32(field(doc, "$", "n"), "$.n");
  in.k = as_u32(field(doc, "$", "k"), "$.k");
  const json& mode = field(doc, "$", "mode");
  if (mode == "generic") in.mode = Mode::Generic;
  else if (mode == "morse-smale") in.mode = Mode::MorseSmale;
  else bad("$.mode", "expected \"generic\" or \"morse-smale\"");

  const json& edges = array_field(doc, "$", "edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto t = tuple(edges[i], "$.edges[" + std::to_string(i) + "]", 3);
    in.edges.push_back({t[0], t[1], t[2]});
  }
  const json& perm = array_field(doc, "$", "perm");
  std::vector<Vertex> image;
  image.reserve(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) image.push_back(as_u32(perm[i], "$.perm[" + std::to_string(i) + "]"));

  ColoredTree tree = validate_tree(std::move(in));
  return validate_automorphism(std::move(tree), VertexPermutation::from_table(std::move(image)));
}

json to_json(const EquippedColoredTree& et) {
  const ColoredTree& t = et.tree();
  json edges = json::array();
  for (const Edge& e : t.edges()) edges.push_back({e.u, e.v, e.color});
  return json{{"n", t.n()},
              {"k", t.k()},
              {"mode", std::string(to_string(t.mode()))},
              {"edges", std::move(edges)},
              {"perm", std::vector<Vertex>(et.perm().image().begin(), et.perm().image().end())}};
}

QuotientTree parse_quotient(const json& doc) {
  only_fields(doc, "$", {"m", "k", "weights", "edges", "loop"});
  QuotientTree q;
  q.m = as_u32(field(doc, "$", "m"), "$.m");
  q.k = as_u32(field(doc, "$", "k"), "$.k");
  const json& weights = array_field(doc, "$", "weights");
  for (std::size_t i = 0; i < weights.size(); ++i)
    q.weight.push_back(as_u32(weights[i], "$.weights[" + std::to_string(i) + "]"));
  const json& edges = array_field(doc, "$", "edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto t = tuple(edges[i], "$.edges[" + std::to_string(i) + "]", 3);
    q.edges.push_back({t[0], t[1], t[2]});
  }
  if (const auto it = doc.find("loop"); it != doc.end() && !it->is_null()) {
    only_fields(*it, "$.loop", {"vertex", "color"});
    q.loop = QuotientLoop{as_u32(field(*it, "$.loop", "vertex"), "$.loop.vertex"),
                          as_u32(field(*it, "$.loop", "color"), "$.loop.color")};
  }
  validate_quotient(q);
  return q;
}

json to_json(const QuotientTree& q) {
  json edges = json::array();
  for (const auto& e : q.edges) edges.push_back({e.a, e.b, e.color});
  json loop = nullptr;
  if (q.loop) loop = json{{"vertex", q.loop->vertex}, {"color", q.loop->color}};
  return json{{"m", q.m}, {"k", q.k}, {"weights", q.weight}, {"edges", std::move(edges)}, {"loop", std::move(loop)}};
}

SimpleGraph parse_graph(const json& doc, Color* k_hint) {
  only_fields(doc, "$", {"nv", "edges", "provenance", "k"});
  SimpleGraph g;
  g.nv = as_u32(field(doc, "$", "nv"), "$.nv");
  const json& edges = array_field(doc, "$", "edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto t = tuple(edges[i], "$.edges[" + std::to_string(i) + "]", 2);
    g.edges.emplace_back(t[0], t[1]);
  }
  if (const auto it = doc.find("provenance"); it != doc.end() && !it->is_array())
    bad("$.provenance", "expected an array");
  if (k_hint) *k_hint = doc.contains("k") ? as_u32(doc["k"], "$.k") : 0;
  return g;
}

json to_json(const SimpleGraph& g) {
  json edges = json::array();
  for (const auto& [a, b] : g.edges) edges.push_back({a, b});
  json doc{{"nv", g.nv}, {"edges", std::move(edges)}};
  if (!g.provenance.empty()) {
    json prov = json::array();
    for (const auto& p : g.provenance) {
      switch (p.kind) {
        case Provenance::Kind::QuotientVertex: prov.push_back({{"vertex", p.owner}}); break;
        case Provenance::Kind::Subdivision:
          prov.push_back({{"subdivision", p.owner}, {"position", p.position}});
          break;
        case Provenance::Kind::Cycle: prov.push_back({{"cycle", p.owner}, {"position", p.position}}); break;
      }
    }
    doc["provenance"] = std::move(prov);
  }
  return doc;
}

json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path + " at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

void write_file(const std::string& path, const json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
  out << doc.dump() << '\n';
}

}  // namespace eqtree::io
