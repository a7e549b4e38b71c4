#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hybridlog/config.hpp"

namespace hybridlog {

struct BenchRow {
  std::size_t size = 0;  // messages
  std::vector<double> runs;  // wall seconds per run
  double mean = 0;
  double stddev = 0;  // sample standard deviation, 0 for a single run
};

/// Parses a HiBench-shaped synthetic corpus of each size `runs` times in
/// auto mode without keeping records. Corpus generation is not timed.
std::vector<BenchRow> scaling_benchmark(const std::vector<std::size_t>& sizes, std::size_t runs,
                                        std::uint64_t seed = 1);

/// size,mean_s,stddev_s,runs
std::string bench_csv(const std::vector<BenchRow>& rows);

double mean_of(const std::vector<double>& v);
double stddev_of(const std::vector<double>& v);

}  // namespace hybridlog
