#include "hybridlog/eval/benchmark.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "hybridlog/eval/synthetic.hpp"
#include "hybridlog/session.hpp"

namespace hybridlog {

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0;
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stddev_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0;
  const double m = mean_of(v);
  double ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::vector<BenchRow> scaling_benchmark(const std::vector<std::size_t>& sizes, std::size_t runs,
                                        std::uint64_t seed) {
  std::vector<BenchRow> rows;
  const SourceConfig cfg = synthetic_config();
  for (std::size_t size : sizes) {
    SyntheticSpec spec = SyntheticSpec::hibench_scaled(size);
    spec.rng_seed = seed;
    const SyntheticCorpus corpus = generate_synthetic(spec);
    BenchRow row;
    row.size = size;
    for (std::size_t r = 0; r < runs; ++r) {
      std::istringstream in(corpus.log);
      SessionOptions opts;
      opts.keep_records = false;
      const auto t0 = std::chrono::steady_clock::now();
      Session session(cfg, std::move(opts));
      session.parse(in);
      row.runs.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    row.mean = mean_of(row.runs);
    row.stddev = stddev_of(row.runs);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out.precision(6);
  out << "size,mean_s,stddev_s,runs\n";
  for (const auto& r : rows) out << r.size << ',' << r.mean << ',' << r.stddev << ',' << r.runs.size() << '\n';
  return out.str();
}

}  // namespace hybridlog
