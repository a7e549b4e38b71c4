#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "hybridlog/config.hpp"
#include "hybridlog/eval/ground_truth.hpp"

namespace hybridlog {

/// Shape of a generated hybrid corpus.
struct SyntheticSpec {
  std::size_t event_messages = 0;
  std::size_t table_messages = 0;
  std::size_t text_messages = 0;
  std::size_t event_templates = 0;
  std::size_t table_templates = 0;
  std::size_t text_templates = 0;
  /// Event templates emitted as look-alike pairs that differ in one literal
  /// near the end; each pair counts as two event templates.
  std::size_t ambiguous_pairs = 0;
  std::size_t min_table_rows = 2;
  std::size_t max_table_rows = 20;
  std::size_t max_text_middle = 8;  // indented lines between first and last
  std::uint64_t template_seed = 1;
  std::uint64_t rng_seed = 1;

  /// 1879 event / 2057 table / 64 text messages over 92 / 7 / 18 templates.
  static SyntheticSpec hibench();
  /// HiBench proportions scaled to `messages` with the same template pool.
  static SyntheticSpec hibench_scaled(std::size_t messages);
};

struct SyntheticCorpus {
  std::string log;  // LF-terminated lines
  GroundTruth truth;
  std::size_t lines = 0;
};

/// Deterministic for fixed seeds: the template pool depends only on
/// template_seed, instances and order only on rng_seed. Templates never get
/// fewer than one message; a type with fewer messages than templates uses
/// only as many templates as it has messages.
SyntheticCorpus generate_synthetic(const SyntheticSpec& spec);

/// Header regex matching the generated "date time,ms LEVEL [component]" prefix.
std::string synthetic_header_pattern();
/// Defaults plus the synthetic header pattern.
SourceConfig synthetic_config();

}  // namespace hybridlog
