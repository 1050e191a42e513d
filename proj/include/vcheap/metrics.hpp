#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vcheap/accounting.hpp"
#include "vcheap/types.hpp"

namespace vcheap {

/// One run's counters in the fixed metrics schema.
struct MetricsRow {
  std::string run_id;
  Variant variant = Variant::NoMeld;
  Policy policy = Policy::Amortized;
  OpCounters counters;
  double wall_seconds = 0;
  std::int64_t n_end = 0;
  std::optional<std::int64_t> checksum;  // benchmarks only
};

enum class MetricsFormat : std::uint8_t { Csv, JsonLines };
MetricsFormat parse_metrics_format(std::string_view s);

/// Column names in emission order.
const std::vector<std::string>& metrics_columns();

/// CSV writes the header even for an empty row set; JSON lines writes nothing then.
void emit_metrics(const std::vector<MetricsRow>& rows, MetricsFormat format, std::ostream& out);
void emit_metrics_file(const std::vector<MetricsRow>& rows, MetricsFormat format, const std::string& path);

}  // namespace vcheap
