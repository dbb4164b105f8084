#include "eqtree/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "eqtree/bench.hpp"
#include "eqtree/error.hpp"
#include "eqtree/generator.hpp"
#include "eqtree/io.hpp"
#include "eqtree/isomorphism.hpp"
#include "eqtree/reduction.hpp"

namespace eqtree {

namespace {

using io::json;

Mode parse_mode(const std::string& s) {
  if (s == "generic") return Mode::Generic;
  if (s == "morse-smale") return Mode::MorseSmale;
  throw Error(ErrorKind::ParseError, "unknown mode " + s);
}

json saddle_json(const SaddleOrbit& s) {
  return json{{"edge", {s.u, s.v}}, {"color", s.color}, {"period", s.period}, {"central", s.central}};
}

json graph_with_k(const SimpleGraph& g, Color k) {
  json doc = io::to_json(g);
  doc["k"] = k;
  return doc;
}

int cmd_validate(const std::string& file, std::ostream& out) {
  const json doc = io::read_file(file);
  json res{{"valid", true}};
  switch (io::detect_kind(doc)) {
    case io::DocumentKind::Instance: {
      const auto et = io::parse_instance(doc);
      res["kind"] = "instance";
      res["n"] = et.n();
      res["case"] = std::string(to_string(classify(et, compute_ranks(et.tree()))));
      break;
    }
    case io::DocumentKind::Quotient: {
      const auto q = io::parse_quotient(doc);
      res["kind"] = "quotient";
      res["m"] = q.m;
      res["total_weight"] = q.total_weight();
      break;
    }
    case io::DocumentKind::Graph: {
      Color k = 0;
      const auto q = recover_quotient(io::parse_graph(doc, &k), k);
      res["kind"] = "graph";
      res["m"] = q.m;
      break;
    }
  }
  out << res.dump() << '\n';
  return kExitOk;
}

int cmd_ranks(const std::string& file, std::ostream& out) {
  const auto et = io::parse_instance(io::read_file(file));
  const RankInfo r = compute_ranks(et.tree());
  json central = nullptr;
  if (r.central_edge) {
    const Edge& e = et.tree().edges()[*r.central_edge];
    central = {std::min(e.u, e.v), std::max(e.u, e.v)};
  }
  out << json{{"rank", r.rank}, {"layers", r.strip_sequence}, {"centers", r.centers}, {"central_edge", central}}.dump()
      << '\n';
  return kExitOk;
}

int cmd_orbits(const std::string& file, std::ostream& out) {
  const auto et = io::parse_instance(io::read_file(file));
  const OrbitDecomposition o = compute_orbits(et);
  json orbits = json::array();
  for (std::uint32_t i = 0; i < o.count(); ++i) {
    const auto members = o.orbit(i);
    orbits.push_back(std::vector<Vertex>(members.begin(), members.end()));
  }
  const LawReport laws = check_structure_laws(et);
  json violations = json::array();
  for (const auto& v : laws.violations)
    violations.push_back({{"kind", std::string(to_string(v.kind))}, {"detail", v.detail}});
  out << json{{"orbits", std::move(orbits)},
              {"laws", {{"ok", laws.ok()}, {"pairs_checked", laws.orbit_pairs_checked}, {"violations", violations}}}}
             .dump()
      << '\n';
  return kExitOk;
}

int cmd_quotient(const std::string& file, bool dynamics, std::ostream& out) {
  const auto et = io::parse_instance(io::read_file(file));
  out << io::to_json(dynamics ? build_dynamics_quotient(et) : build_quotient(et)).dump() << '\n';
  return kExitOk;
}

int cmd_expand(const std::string& file, const std::string& mode, std::ostream& out) {
  const auto q = io::parse_quotient(io::read_file(file));
  out << io::to_json(expand_quotient(q, parse_mode(mode))).dump() << '\n';
  return kExitOk;
}

QuotientTree quotient_of_document(const json& doc) {
  if (io::detect_kind(doc) == io::DocumentKind::Quotient) return io::parse_quotient(doc);
  if (io::detect_kind(doc) == io::DocumentKind::Instance) return reduction_quotient(normalize(io::parse_instance(doc)));
  throw Error(ErrorKind::ParseError, "expected an instance or quotient document");
}

int cmd_reduce(const std::string& file, std::ostream& out) {
  const QuotientTree q = quotient_of_document(io::read_file(file));
  out << graph_with_k(reduce_to_graph(q), q.k).dump() << '\n';
  return kExitOk;
}

int cmd_recover(const std::string& file, std::ostream& out) {
  const json doc = io::read_file(file);
  if (io::detect_kind(doc) != io::DocumentKind::Graph)
    throw Error(ErrorKind::ParseError, "expected a graph document");
  Color k = 0;
  const SimpleGraph g = io::parse_graph(doc, &k);
  out << io::to_json(recover_quotient(g, k)).dump() << '\n';
  return kExitOk;
}

int cmd_canon(const std::string& file, std::ostream& out) {
  const json doc = io::read_file(file);
  switch (io::detect_kind(doc)) {
    case io::DocumentKind::Instance: out << canon_equipped(io::parse_instance(doc)).hex() << '\n'; break;
    case io::DocumentKind::Quotient: out << canon_quotient(io::parse_quotient(doc)).hex() << '\n'; break;
    case io::DocumentKind::Graph: throw Error(ErrorKind::ParseError, "canon takes an instance or quotient document");
  }
  return kExitOk;
}

int cmd_iso(const std::string& f1, const std::string& f2, const std::string& method, std::ostream& out) {
  const json d1 = io::read_file(f1);
  const json d2 = io::read_file(f2);
  const auto kind = io::detect_kind(d1);
  if (kind != io::detect_kind(d2)) throw Error(ErrorKind::ParseError, "documents are of different kinds");
  if (kind == io::DocumentKind::Graph) throw Error(ErrorKind::ParseError, "iso takes instance or quotient documents");

  json res;
  bool iso = false;
  if (kind == io::DocumentKind::Quotient) {
    const auto a = io::parse_quotient(d1);
    const auto b = io::parse_quotient(d2);
    if (method == "canon") {
      iso = canon_quotient(a) == canon_quotient(b);
    } else if (method == "reduction") {
      iso = iso_via_reduction(a, b);
    } else {
      const auto w = iso_brute(expand_quotient(a), expand_quotient(b));
      iso = w.has_value();
      if (w) res["witness"] = w->mapping;
    }
  } else {
    const auto a = io::parse_instance(d1);
    const auto b = io::parse_instance(d2);
    if (method == "canon") {
      iso = iso_decide(a, b);
    } else if (method == "reduction") {
      iso = iso_decide_via_reduction(a, b);
    } else {
      const auto w = iso_brute(a, b);
      iso = w.has_value();
      if (w) res["witness"] = w->mapping;
    }
  }
  res["isomorphic"] = iso;
  out << res.dump() << '\n';
  return iso ? kExitOk : kExitNotIsomorphic;
}

int cmd_report(const std::string& file, std::ostream& out) {
  const auto et = io::parse_instance(io::read_file(file));
  const DynamicsReport r = ms_report(et);
  json orbits = json::array();
  for (const auto& s : r.saddle_orbits) orbits.push_back(saddle_json(s));
  json negative = nullptr;
  if (r.negative_saddle) negative = saddle_json(*r.negative_saddle);
  out << json{{"saddles", r.saddles},
              {"domains", r.domains},
              {"s_saddles", r.s_saddles},
              {"u_saddles", r.u_saddles},
              {"saddle_orbits", std::move(orbits)},
              {"negative_saddles", r.negative_saddles},
              {"negative_saddle", std::move(negative)}}
             .dump()
      << '\n';
  return kExitOk;
}

struct GenArgs {
  std::uint32_t n = 1;
  Color k = 1;
  std::uint64_t seed = 0;
  Weight max_orbit = 4;
  double loop_prob = 0.0;
  std::string mode = "generic";
  std::string pair;
  std::string out_file;
  std::string out2_file;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const auto et = gen_equipped({a.n, a.k, a.max_orbit, a.seed, a.loop_prob, parse_mode(a.mode)});
  if (a.pair.empty()) {
    if (a.out_file.empty()) out << io::to_json(et).dump() << '\n';
    else io::write_file(a.out_file, io::to_json(et));
    return kExitOk;
  }
  if (a.pair != "iso" && a.pair != "non-iso") throw Error(ErrorKind::ParseError, "--pair takes iso or non-iso");
  const auto p = make_pair(et, a.pair == "iso" ? PairKind::Iso : PairKind::NonIso, splitmix64(a.seed));
  const json summary{{"expected_isomorphic", p.expected}, {"mutation", p.mutation}};
  if (!a.out_file.empty() && !a.out2_file.empty()) {
    io::write_file(a.out_file, io::to_json(p.first));
    io::write_file(a.out2_file, io::to_json(p.second));
    out << summary.dump() << '\n';
  } else {
    json doc = summary;
    doc["first"] = io::to_json(p.first);
    doc["second"] = io::to_json(p.second);
    out << doc.dump() << '\n';
  }
  return kExitOk;
}

int cmd_bench(const BenchOptions& options, std::ostream& out) {
  if (options.sizes.empty()) throw Error(ErrorKind::ParseError, "--sizes needs at least one size");
  if (!std::is_sorted(options.sizes.begin(), options.sizes.end()))
    throw Error(ErrorKind::ParseError, "--sizes must be ascending");
  write_csv(out, bench(options));
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Isomorphism of edge-colored trees with color-preserving automorphisms", "eqtree"};
  app.require_subcommand(1);

  std::string file, file2, method = "canon", mode = "generic";
  bool dynamics = false;
  GenArgs gen;
  BenchOptions bopt;
  int code = kExitOk;
  std::function<int()> action;

  auto single = [&](const char* name, const char* help, auto fn) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("FILE", file, "input document")->required();
    sub->callback([&, fn] { action = [&, fn] { return fn(file, out); }; });
    return sub;
  };

  single("validate", "validate an instance, quotient or graph document", cmd_validate);
  single("ranks", "ranks, strip layers and centers", cmd_ranks);
  single("orbits", "orbits of P and the structure-law report", cmd_orbits);
  single("reduce", "reduce a quotient (or instance) to a simple graph", cmd_reduce);
  single("recover", "recover a quotient from a reduction graph", cmd_recover);
  single("canon", "canonical code as lowercase hex", cmd_canon);
  single("report", "Morse-Smale saddle report", cmd_report);

  auto* quotient = app.add_subcommand("quotient", "quotient tree of an instance");
  quotient->add_option("FILE", file, "instance document")->required();
  quotient->add_flag("--dynamics", dynamics, "merge swapped centers into a loop vertex");
  quotient->callback([&] { action = [&] { return cmd_quotient(file, dynamics, out); }; });

  auto* expand = app.add_subcommand("expand", "expand a quotient into an instance");
  expand->add_option("FILE", file, "quotient document")->required();
  expand->add_option("--mode", mode, "generic or morse-smale")->check(CLI::IsMember({"generic", "morse-smale"}));
  expand->callback([&] { action = [&] { return cmd_expand(file, mode, out); }; });

  auto* iso = app.add_subcommand("iso", "decide isomorphism of two documents");
  iso->add_option("FILE1", file, "first document")->required();
  iso->add_option("FILE2", file2, "second document")->required();
  iso->add_option("--method", method, "canon, brute or reduction")->check(CLI::IsMember({"canon", "brute", "reduction"}));
  iso->callback([&] { action = [&] { return cmd_iso(file, file2, method, out); }; });

  auto* g = app.add_subcommand("gen", "generate a random instance");
  g->add_option("--n", gen.n, "vertex count")->required()->check(CLI::PositiveNumber);
  g->add_option("--k", gen.k, "number of colors")->required()->check(CLI::PositiveNumber);
  g->add_option("--seed", gen.seed, "seed")->required();
  g->add_option("--max-orbit", gen.max_orbit, "largest orbit size")->check(CLI::PositiveNumber);
  g->add_option("--loop-prob", gen.loop_prob, "chance of swapped centers")->check(CLI::Range(0.0, 1.0));
  g->add_option("--mode", gen.mode, "generic or morse-smale")->check(CLI::IsMember({"generic", "morse-smale"}));
  g->add_option("--pair", gen.pair, "also build an iso or non-iso partner")->check(CLI::IsMember({"iso", "non-iso"}));
  g->add_option("--out", gen.out_file, "write the instance (or the first of the pair) here");
  g->add_option("--out2", gen.out2_file, "write the second instance of the pair here");
  g->callback([&] { action = [&] { return cmd_gen(gen, out); }; });

  auto* b = app.add_subcommand("bench", "time iso_decide and fit a log-log slope");
  b->add_option("--sizes", bopt.sizes, "comma-separated ascending sizes")->required()->delimiter(',');
  b->add_option("--trials", bopt.trials, "trials per size")->required()->check(CLI::PositiveNumber);
  b->add_option("--seed", bopt.seed, "seed")->required();
  b->add_option("--k", bopt.k, "number of colors")->check(CLI::PositiveNumber);
  b->add_option("--max-orbit", bopt.max_orbit, "largest orbit size")->check(CLI::PositiveNumber);
  b->add_option("--loop-prob", bopt.loop_probability, "chance of swapped centers")->check(CLI::Range(0.0, 1.0));
  b->add_option("--min-ms", bopt.min_sample_ms, "minimum duration of one timing sample")->check(CLI::NonNegativeNumber);
  b->callback([&] { action = [&] { return cmd_bench(bopt, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    code = action();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return code;
}

}  // namespace eqtree
