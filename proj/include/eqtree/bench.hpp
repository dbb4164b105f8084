#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "eqtree/colored_tree.hpp"

namespace eqtree {

struct BenchOptions {
  std::vector<std::uint32_t> sizes;  // ascending
  std::uint32_t trials = 3;
  std::uint64_t seed = 0;
  Color k = 3;
  Weight max_orbit = 4;
  double loop_probability = 0.25;
  double min_sample_ms = 5.0;  // each timing sample repeats the call until this much time has passed
};

struct BenchRow {
  std::uint32_t size;
  std::uint32_t trials;
  double mean_ns;
  double p50_ns;
  double p95_ns;
};

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
  std::vector<double> residuals;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  LinearFit fit;  // log(mean_ns) against log(size)
};

// Seed of trial `index` at `size`; generation never depends on timing or order.
std::uint64_t trial_seed(std::uint64_t seed, std::uint32_t size, std::uint32_t index);

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Times iso_decide on iso pairs; generation and pairing happen outside the timed region.
BenchReport bench(const BenchOptions& options);

// CSV with header size,trials,mean_ns,p50_ns,p95_ns, then "# slope=... intercept=... r2=...".
void write_csv(std::ostream& out, const BenchReport& report);

}  // namespace eqtree
