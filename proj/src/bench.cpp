#include "eqtree/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>

#include "eqtree/error.hpp"
#include "eqtree/generator.hpp"
#include "eqtree/isomorphism.hpp"

namespace eqtree {

std::uint64_t trial_seed(std::uint64_t seed, std::uint32_t size, std::uint32_t index) {
  return derive_seed(seed, size, index);
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  LinearFit fit;
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2) {
    fit.r2 = 1.0;
    fit.intercept = y.empty() ? 0.0 : y[0];
    fit.residuals.assign(y.size(), 0.0);
    return fit;
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    fit.residuals.push_back(r);
    sse += r * r;
  }
  fit.r2 = syy > 0 ? 1.0 - sse / syy : 1.0;
  return fit;
}

namespace {

double percentile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const auto idx = static_cast<std::size_t>(std::ceil(p * static_cast<double>(v.size()))) - 1;
  return v[std::min(idx, v.size() - 1)];
}

}  // namespace

BenchReport bench(const BenchOptions& options) {
  using clock = std::chrono::steady_clock;
  BenchReport report;
  std::vector<double> lx, ly;
  for (const auto size : options.sizes) {
    std::vector<double> samples;
    for (std::uint32_t t = 0; t < options.trials; ++t) {
      const auto seed = trial_seed(options.seed, size, t);
      const auto et = gen_equipped({size, options.k, options.max_orbit, seed, options.loop_probability, Mode::Generic});
      const auto pair = make_pair(et, PairKind::Iso, splitmix64(seed));

      ensure(iso_decide(pair.first, pair.second), "iso pair decided as non-isomorphic");  // warm-up
      std::uint64_t calls = 0;
      const auto start = clock::now();
      auto elapsed = clock::duration::zero();
      do {
        ensure(iso_decide(pair.first, pair.second), "iso pair decided as non-isomorphic");
        ++calls;
        elapsed = clock::now() - start;
      } while (std::chrono::duration<double, std::milli>(elapsed).count() < options.min_sample_ms);
      samples.push_back(std::chrono::duration<double, std::nano>(elapsed).count() / static_cast<double>(calls));
    }
    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
    report.rows.push_back({size, options.trials, mean, percentile(samples, 0.5), percentile(samples, 0.95)});
    lx.push_back(std::log(static_cast<double>(size)));
    ly.push_back(std::log(mean));
  }
  report.fit = fit_line(lx, ly);
  return report;
}

void write_csv(std::ostream& out, const BenchReport& report) {
  out << "size,trials,mean_ns,p50_ns,p95_ns\n";
  out << std::fixed << std::setprecision(1);
  for (const auto& r : report.rows)
    out << r.size << ',' << r.trials << ',' << r.mean_ns << ',' << r.p50_ns << ',' << r.p95_ns << '\n';
  out << std::setprecision(4) << "# slope=" << report.fit.slope << " intercept=" << report.fit.intercept
      << " r2=" << report.fit.r2 << '\n';
}

}  // namespace eqtree
