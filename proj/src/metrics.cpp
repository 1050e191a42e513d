#include "vcheap/metrics.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

namespace vcheap {

namespace {

using Value = std::variant<std::int64_t, double, std::string, std::monostate>;

std::vector<Value> values_of(const MetricsRow& r) {
  const OpCounters& c = r.counters;
  auto i = [](std::uint64_t v) { return Value{static_cast<std::int64_t>(v)}; };
  std::vector<Value> out = {
      r.run_id,
      std::string(to_string(r.variant)),
      std::string(to_string(r.policy)),
      i(c.inserts),
      i(c.delete_mins),
      i(c.decrease_keys),
      i(c.find_mins),
      i(c.melds),
      i(c.comparisons),
      i(c.links),
      i(c.reduction_steps),
  };
  for (std::size_t k = 0; k < kReductionCaseCount; ++k) out.push_back(i(c.by_case[k]));
  out.push_back(i(c.nontree_writes));
  out.push_back(i(c.degree_reduction_steps));
  out.push_back(i(c.conversions));
  out.push_back(r.wall_seconds);
  out.push_back(r.n_end);
  if (r.checksum) out.push_back(*r.checksum);
  else out.push_back(std::monostate{});
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string csv_field(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) {
    if (s->find_first_of(",\"\n") == std::string::npos) return *s;
    std::string q = "\"";
    for (char ch : *s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + '"';
  }
  if (const auto* d = std::get_if<double>(&v)) return format_double(*d);
  if (const auto* n = std::get_if<std::int64_t>(&v)) return std::to_string(*n);
  return "";
}

std::string json_field(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return nlohmann::json(*s).dump();
  if (const auto* d = std::get_if<double>(&v)) return format_double(*d);
  if (const auto* n = std::get_if<std::int64_t>(&v)) return std::to_string(*n);
  return "null";
}

}  // namespace

MetricsFormat parse_metrics_format(std::string_view s) {
  if (s == "csv") return MetricsFormat::Csv;
  if (s == "jsonl") return MetricsFormat::JsonLines;
  throw std::invalid_argument("unknown metrics format: " + std::string(s));
}

const std::vector<std::string>& metrics_columns() {
  static const std::vector<std::string> cols = [] {
    std::vector<std::string> c = {"run_id",        "variant",      "policy",   "inserts",
                                  "delete_mins",   "decrease_keys", "find_mins", "melds",
                                  "comparisons",   "links",        "reduction_steps"};
    for (std::size_t k = 0; k < kReductionCaseCount; ++k) {
      c.push_back("steps_" + std::string(to_string(static_cast<ReductionCase>(k))));
    }
    for (const char* s : {"nontree_writes", "degree_reduction_steps", "conversions", "wall_seconds", "n_end",
                          "checksum"}) {
      c.emplace_back(s);
    }
    return c;
  }();
  return cols;
}

void emit_metrics(const std::vector<MetricsRow>& rows, MetricsFormat format, std::ostream& out) {
  const auto& cols = metrics_columns();
  if (format == MetricsFormat::Csv) {
    for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << cols[k];
    out << '\n';
    for (const MetricsRow& r : rows) {
      const auto vals = values_of(r);
      for (std::size_t k = 0; k < vals.size(); ++k) out << (k ? "," : "") << csv_field(vals[k]);
      out << '\n';
    }
    return;
  }
  for (const MetricsRow& r : rows) {
    const auto vals = values_of(r);
    out << '{';
    for (std::size_t k = 0; k < vals.size(); ++k) {
      out << (k ? "," : "") << nlohmann::json(cols[k]).dump() << ':' << json_field(vals[k]);
    }
    out << "}\n";
  }
}

void emit_metrics_file(const std::vector<MetricsRow>& rows, MetricsFormat format, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error(path + ": " + std::strerror(errno));
  emit_metrics(rows, format, f);
  f.flush();
  if (!f) throw std::runtime_error(path + ": " + std::strerror(errno));
}

}  // namespace vcheap
