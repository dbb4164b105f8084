#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "eqtree/bench.hpp"
#include "eqtree/error.hpp"
#include "eqtree/generator.hpp"
#include "eqtree/io.hpp"
#include "eqtree/isomorphism.hpp"
#include "eqtree/reduction.hpp"

using namespace eqtree;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::vector<std::uint32_t> identity_map(std::uint32_t m) {
  std::vector<std::uint32_t> map(m);
  for (std::uint32_t i = 0; i < m; ++i) map[i] = i;
  return map;
}

EquippedColoredTree make(std::uint32_t n, Color k, std::vector<Edge> edges, std::vector<Vertex> perm,
                         Mode mode = Mode::Generic) {
  return validate_automorphism(validate_tree({n, k, mode, std::move(edges)}),
                               VertexPermutation::from_table(std::move(perm)));
}

QuotientTree weighted_sample() {
  QuotientTree q;
  q.m = 8;
  q.k = 3;
  q.weight = {1, 1, 2, 1, 1, 4, 3, 1};
  q.edges = {{0, 1, 3}, {0, 2, 1}, {1, 3, 1}, {1, 4, 2}, {2, 5, 2}, {3, 6, 3}, {4, 7, 2}};
  return q;
}

std::uint64_t size_law(const QuotientTree& q) {
  std::uint64_t nv = q.m;
  for (const auto& e : q.edges) nv += e.color;
  for (Weight w : q.weight) nv += w + 1;
  return nv;
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  std::uint32_t pairs = 0, agree = 0, non_iso = 0;
  for (std::uint64_t seed = 0; pairs < 6000; ++seed) {
    Rng rng(derive_seed(seed, 101));
    const auto n = static_cast<std::uint32_t>(rng.uniform(1, 9));
    const auto k = static_cast<Color>(rng.uniform(1, 3));
    const auto et = gen_equipped({n, k, static_cast<Weight>(rng.uniform(2, 6)), seed, 0.35, Mode::Generic});
    const auto pair = make_pair(et, seed % 2 ? PairKind::NonIso : PairKind::Iso, derive_seed(seed, 102));
    const bool truth = iso_brute(pair.first, pair.second).has_value();
    ++pairs;
    non_iso += !truth;
    agree += iso_decide(pair.first, pair.second) == truth;
  }
  const double s = seconds_since(t0);
  std::ostringstream d;
  d << agree << "/" << pairs << " agree (" << non_iso << " non-isomorphic), " << s << " s";
  return {agree == pairs && pairs >= 5000 && non_iso > 0 && non_iso < pairs && s < 60.0, d.str()};
}

Outcome relabel_invariance() {
  std::uint32_t instances = 0, identical = 0, checked = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(derive_seed(seed, 201));
    const auto n = static_cast<std::uint32_t>(rng.uniform(1, 200));
    const auto et = gen_equipped({n, static_cast<Color>(rng.uniform(1, 4)), 6, seed, 0.3, Mode::Generic});
    const CanonicalCode base = canon_equipped(et);
    ++instances;
    for (int r = 0; r < 100; ++r) {
      ++checked;
      identical += canon_equipped(random_relabel(et, rng)) == base;
    }
  }
  std::ostringstream d;
  d << identical << "/" << checked << " codes identical over " << instances << " instances";
  return {identical == checked && checked == 100000, d.str()};
}

Outcome quotient_round_trips() {
  std::uint32_t structural = 0, expanded = 0, by_brute = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(derive_seed(seed, 301));
    const QuotientTree q =
        random_quotient(static_cast<std::uint32_t>(rng.uniform(1, 300)), static_cast<Color>(rng.uniform(1, 4)), 6, rng);
    const QuotientTree back = build_quotient(expand_quotient(q));
    const auto map = correspondence_after_expansion(q, back);
    structural += map && equal_under(q, back, *map);
  }
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(derive_seed(seed, 302));
    const auto n = static_cast<std::uint32_t>(seed % 2 ? rng.uniform(1, 9) : rng.uniform(10, 300));
    const auto x = gen_equipped({n, static_cast<Color>(rng.uniform(1, 3)), 6, seed, 0.0, Mode::Generic});
    const auto y = expand_quotient(build_quotient(x));
    bool same;
    if (n <= 9) {
      same = iso_brute(x, y).has_value();
      ++by_brute;
    } else {
      same = canon_equipped(x) == canon_equipped(y);
    }
    expanded += same;
  }
  std::ostringstream d;
  d << structural << "/1000 quotient(expand(q)) = q, " << expanded << "/1000 expand(quotient(X)) ~ X ("
    << by_brute << " by brute force)";
  return {structural == 1000 && expanded == 1000, d.str()};
}

Outcome reduction_round_trips() {
  std::uint32_t recovered = 0, sized = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(derive_seed(seed, 401));
    const QuotientTree q =
        random_quotient(static_cast<std::uint32_t>(rng.uniform(1, 300)), static_cast<Color>(rng.uniform(1, 5)), 6, rng);
    SimpleGraph g = reduce_to_graph(q);
    sized += g.nv == size_law(q) && g.nv <= std::uint64_t(q.k + 3) * q.total_weight();
    g.provenance.clear();
    const QuotientTree back = recover_quotient(g, q.k);
    recovered += equal_under(q, back, identity_map(q.m));
  }
  const QuotientTree sample = weighted_sample();
  SimpleGraph g = reduce_to_graph(sample);
  const std::uint32_t nv = g.nv;
  g.provenance.clear();
  const bool sample_ok = nv == 44 && equal_under(sample, recover_quotient(g, sample.k), identity_map(sample.m));
  std::ostringstream d;
  d << recovered << "/1000 recovered, " << sized << "/1000 satisfy the size laws, weighted sample nv = " << nv
    << (sample_ok ? " and recovers exactly" : " FAILED");
  return {recovered == 1000 && sized == 1000 && sample_ok, d.str()};
}

Outcome structure_laws() {
  std::uint32_t ok = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    Rng rng(derive_seed(seed, 501));
    const Mode mode = seed % 4 == 0 ? Mode::MorseSmale : Mode::Generic;
    const Color k = mode == Mode::MorseSmale ? Color{2} : static_cast<Color>(rng.uniform(1, 4));
    const auto et = gen_equipped({static_cast<std::uint32_t>(rng.uniform(1, 200)), k,
                                  static_cast<Weight>(rng.uniform(1, 8)), seed, 0.4, mode});
    ok += check_structure_laws(et).ok();
  }

  auto rejected = [](const QuotientTree& q) {
    try {
      (void)expand_quotient(q);
    } catch (const Error& e) {
      return e.kind() == ErrorKind::DivisibilityViolated;
    }
    return false;
  };
  std::vector<QuotientTree> bad;
  for (auto [a, b] : {std::pair<Weight, Weight>{2, 3}, {3, 2}, {4, 6}}) {
    QuotientTree q;
    q.m = 2;
    q.k = 1;
    q.weight = {a, b};
    q.edges = {{0, 1, 1}};
    bad.push_back(q);
  }
  QuotientTree chain;
  chain.m = 3;
  chain.k = 1;
  chain.weight = {1, 2, 3};
  chain.edges = {{0, 1, 1}, {1, 2, 1}};
  bad.push_back(chain);
  QuotientTree sample = weighted_sample();
  sample.weight[5] = 3;
  bad.push_back(sample);
  std::uint32_t refused = 0;
  for (const auto& q : bad) refused += rejected(q);

  std::ostringstream d;
  d << ok << "/10000 instances without violations, " << refused << "/" << bad.size()
    << " violating quotients refused with DivisibilityViolated";
  return {ok == 10000 && refused == bad.size(), d.str()};
}

Outcome scaling() {
  BenchOptions o;
  for (std::uint32_t e = 10; e <= 20; e += 2) o.sizes.push_back(1u << e);
  o.trials = 10;
  o.seed = 2024;
  const BenchReport r = bench(o);

  const auto big = gen_equipped({1000000, 3, 4, 77, 0.25, Mode::Generic});
  const auto pair = make_pair(big, PairKind::Iso, 78);
  const auto t0 = Clock::now();
  const bool decided = iso_decide(pair.first, pair.second);
  const double s = seconds_since(t0);

  std::ostringstream d;
  for (const BenchRow& row : r.rows) d << row.size << ":" << row.mean_ns / 1e6 << "ms ";
  d << "slope " << r.fit.slope << " (<= 1.15), R^2 " << r.fit.r2 << " (>= 0.98); 10^6-vertex pair decided in " << s
    << " s (soft target 5 s)";
  return {r.fit.slope <= 1.15 && r.fit.r2 >= 0.98 && decided && s <= 5.0, d.str()};
}

Outcome morse_smale() {
  const auto fig = make(4, 2, {{0, 1, kColorS}, {1, 2, kColorU}, {2, 3, kColorS}}, {0, 1, 2, 3}, Mode::MorseSmale);
  const DynamicsReport r = ms_report(fig);
  const bool shape = r.saddles == 3 && r.domains == 4 && r.saddle_orbits.size() == 3 && r.negative_saddles == 0;

  const auto swapped =
      make(4, 2, {{0, 1, kColorS}, {1, 2, kColorU}, {2, 3, kColorS}}, {3, 2, 1, 0}, Mode::MorseSmale);
  const DynamicsReport sr = ms_report(swapped);
  const bool loop_saddle = build_dynamics_quotient(swapped).loop.has_value() && sr.negative_saddles == 1 &&
                           sr.negative_saddle && sr.negative_saddle->period == 1;

  std::uint32_t consistent = 0, loops = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    Rng rng(derive_seed(seed, 701));
    const auto et = gen_equipped({static_cast<std::uint32_t>(rng.uniform(1, 120)), 2, 6, seed, 0.5, Mode::MorseSmale});
    const QuotientTree q = build_dynamics_quotient(et);
    const DynamicsReport d = ms_report(et);
    std::uint32_t loop_count = q.loop ? 1 : 0;
    loops += loop_count;
    const bool swapped_case = normalize(et).tag == CenterCase::Swapped;
    consistent += loop_count <= 1 && (loop_count == 1) == swapped_case && d.negative_saddles == loop_count &&
                  (!d.negative_saddle || d.negative_saddle->period == 1);
  }
  std::ostringstream d;
  d << "k_f = " << r.saddles << ", domains = " << r.domains << "; loop saddle period "
    << (sr.negative_saddle ? std::to_string(sr.negative_saddle->period) : "none") << "; " << consistent
    << "/10000 dynamics quotients with at most one loop (" << loops << " with a loop)";
  return {shape && loop_saddle && consistent == 10000 && loops > 0, d.str()};
}

struct CliResult {
  int code;
  std::string out;
};

std::string quote(const std::string& s) { return "'" + s + "'"; }

CliResult cli(const std::vector<std::string>& args) {
  std::string cmd = quote(EQTREE_CLI);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  char buf[4096];
  for (std::size_t got; (got = std::fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, got);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome cli_contract() {
  const auto dir = std::filesystem::temp_directory_path() / "eqtree_acceptance";
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    const auto p = (dir / name).string();
    std::ofstream(p) << text;
    return p;
  };
  auto file = [&](const std::string& name) { return (dir / name).string(); };

  struct Case {
    std::vector<std::string> args;
    int expected;
    bool deterministic = true;
  };
  std::vector<Case> cases;

  const std::string q = write("q.json", io::to_json(weighted_sample()).dump());
  const std::string ms = write(
      "ms.json", R"({"n":4,"k":2,"mode":"morse-smale","edges":[[0,1,1],[1,2,2],[2,3,1]],"perm":[3,2,1,0]})");
  const std::string fixed = write(
      "fixed.json", R"({"n":4,"k":2,"mode":"morse-smale","edges":[[0,1,1],[1,2,2],[2,3,1]],"perm":[0,1,2,3]})");
  const std::string bad = write("bad.json", R"({"n":3,"k":1,"mode":"generic","edges":[[0,1,1],[1,2,1],[0,2,1]],"perm":[0,1,2]})");
  const std::string field = write("field.json", R"({"n":1,"k":1,"mode":"generic","edges":[],"perm":[0],"x":0})");
  const std::string broken = write("broken.json", "{\"n\": 1,");
  const std::string reduced = write("g.json", io::to_json(reduce_to_graph(weighted_sample())).dump());

  for (const auto& sub : {"validate", "ranks", "orbits", "quotient", "canon"}) cases.push_back({{sub, fixed}, 0});
  cases.push_back({{"quotient", "--dynamics", ms}, 0});
  cases.push_back({{"report", ms}, 0});
  cases.push_back({{"report", fixed}, 0});
  cases.push_back({{"validate", ms}, 0});
  cases.push_back({{"validate", q}, 0});
  cases.push_back({{"expand", q}, 0});
  cases.push_back({{"reduce", q}, 0});
  cases.push_back({{"reduce", ms}, 0});
  cases.push_back({{"recover", reduced}, 0});
  cases.push_back({{"validate", reduced}, 0});
  cases.push_back({{"canon", q}, 0});
  cases.push_back({{"quotient", ms}, 2});
  cases.push_back({{"expand", ms}, 2});
  cases.push_back({{"validate", bad}, 2});
  cases.push_back({{"validate", field}, 2});
  cases.push_back({{"validate", broken}, 2});
  cases.push_back({{"validate", file("missing.json")}, 2});
  cases.push_back({{"report", q}, 2});
  cases.push_back({{"recover", q}, 2});
  cases.push_back({{}, 2});
  cases.push_back({{"unknown"}, 2});
  cases.push_back({{"--help"}, 0});
  cases.push_back({{"gen", "--n", "10", "--k", "1", "--seed", "1", "--mode", "morse-smale"}, 2});
  cases.push_back({{"gen", "--n", "0", "--k", "2", "--seed", "1"}, 2});
  cases.push_back({{"gen", "--n", "300", "--k", "3", "--seed", "9", "--loop-prob", "0.5"}, 0});
  cases.push_back({{"bench", "--sizes", "64,32", "--trials", "1", "--seed", "1"}, 2});
  cases.push_back({{"bench", "--sizes", "64,128", "--trials", "2", "--seed", "1", "--min-ms", "0"}, 0, false});

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::string a = file("a" + std::to_string(seed) + ".json");
    const std::string b = file("b" + std::to_string(seed) + ".json");
    const std::string n = std::to_string(seed % 2 ? 3 + seed % 7 : 20 + seed * 10);
    const CliResult made = cli({"gen", "--n", n, "--k", "3", "--seed", std::to_string(seed), "--loop-prob", "0.3",
                                "--pair", seed % 3 ? "non-iso" : "iso", "--out", a, "--out2", b});
    if (made.code != 0) return {false, "gen --pair failed for seed " + std::to_string(seed)};
    const bool expected = io::json::parse(made.out)["expected_isomorphic"].get<bool>();
    for (const char* method : {"canon", "reduction"}) cases.push_back({{"iso", a, b, "--method", method}, expected ? 0 : 1});
    if (seed % 2) cases.push_back({{"iso", a, b, "--method", "brute"}, expected ? 0 : 1});
  }

  std::uint32_t ok = 0, internal = 0;
  std::string first_failure;
  for (const auto& c : cases) {
    const CliResult r1 = cli(c.args);
    const CliResult r2 = cli(c.args);
    internal += (r1.code == 3) + (r2.code == 3);
    const bool good = r1.code == c.expected && r2.code == c.expected && (!c.deterministic || r1.out == r2.out);
    ok += good;
    if (!good && first_failure.empty()) {
      first_failure = "; first failure:";
      for (const auto& a : c.args) first_failure += " " + a;
      first_failure += " -> " + std::to_string(r1.code);
    }
  }
  std::filesystem::remove_all(dir);
  std::ostringstream d;
  d << ok << "/" << cases.size() << " invocations with the documented exit code and stable output, exit 3 seen "
    << internal << " times" << first_failure;
  return {ok == cases.size() && internal == 0, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 oracle equivalence", oracle_equivalence},
      {"AC2 relabel invariance", relabel_invariance},
      {"AC3 quotient round trips", quotient_round_trips},
      {"AC4 reduction round trips and size laws", reduction_round_trips},
      {"AC5 structure laws", structure_laws},
      {"AC6 scaling", scaling},
      {"AC7 Morse-Smale semantics", morse_smale},
      {"AC8 command line contract", cli_contract},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    if (argc > 1 && name.rfind(argv[1], 0) != 0) continue;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << " [" << seconds_since(t0) << " s]"
              << std::endl;
  }
  return failed ? 1 : 0;
}
