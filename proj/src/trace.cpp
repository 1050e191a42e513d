#include "vcheap/trace.hpp"

#include <chrono>
#include <fstream>
#include <numeric>
#include <sstream>

namespace vcheap {

namespace {

bool parse_int(const std::string& tok, std::int64_t& out) {
  if (tok.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stoll(tok, &pos, 10);
  } catch (const std::exception&) {
    return false;
  }
  return pos == tok.size();
}

bool parse_ref(const std::string& tok, std::uint64_t& out) {
  std::int64_t v = 0;
  if (!parse_int(tok, v) || v < 0) return false;
  out = static_cast<std::uint64_t>(v);
  return true;
}

}  // namespace

std::vector<TraceOp> parse_trace(std::istream& in) {
  std::vector<TraceOp> ops;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (const auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
    std::istringstream ls(text);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    TraceOp op;
    op.line = line;
    // optional trailing @heap on single-heap ops
    bool has_at = false;
    if (tok.size() > 1 && tok.back().starts_with('@')) {
      if (!parse_ref(tok.back().substr(1), op.a)) throw TraceError(line, "bad heap ref '" + tok.back() + "'", true);
      tok.pop_back();
      has_at = true;
    }
    const std::string& cmd = tok[0];
    auto need = [&](std::size_t n) {
      if (tok.size() != n) throw TraceError(line, "wrong number of arguments for '" + cmd + "'", true);
    };
    auto bad = [&](const std::string& what) { throw TraceError(line, "bad " + what, true); };
    if (cmd == "insert") {
      need(2);
      op.kind = TraceOp::Kind::Insert;
      if (!parse_int(tok[1], op.key)) bad("key '" + tok[1] + "'");
    } else if (cmd == "deletemin") {
      need(1);
      op.kind = TraceOp::Kind::DeleteMin;
    } else if (cmd == "findmin") {
      need(1);
      op.kind = TraceOp::Kind::FindMin;
    } else if (cmd == "decreasekey") {
      need(3);
      if (has_at) bad("heap ref on decreasekey");
      op.kind = TraceOp::Kind::DecreaseKey;
      if (!parse_ref(tok[1], op.a)) bad("handle '" + tok[1] + "'");
      if (!parse_int(tok[2], op.key)) bad("key '" + tok[2] + "'");
    } else if (cmd == "meld") {
      need(3);
      if (has_at) bad("heap ref on meld");
      op.kind = TraceOp::Kind::Meld;
      if (!parse_ref(tok[1], op.a)) bad("heap ref '" + tok[1] + "'");
      if (!parse_ref(tok[2], op.b)) bad("heap ref '" + tok[2] + "'");
    } else if (cmd == "newheap") {
      need(1);
      if (has_at) bad("heap ref on newheap");
      op.kind = TraceOp::Kind::NewHeap;
    } else {
      throw TraceError(line, "unknown op '" + cmd + "'", true);
    }
    ops.push_back(op);
  }
  return ops;
}

std::vector<TraceOp> read_trace_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw TraceError(0, "cannot open " + path, true);
  return parse_trace(f);
}

std::string format_op(const TraceOp& op) {
  auto at = [&] { return op.a == 0 ? std::string() : " @" + std::to_string(op.a); };
  switch (op.kind) {
    case TraceOp::Kind::Insert: return "insert " + std::to_string(op.key) + at();
    case TraceOp::Kind::DeleteMin: return "deletemin" + at();
    case TraceOp::Kind::FindMin: return "findmin" + at();
    case TraceOp::Kind::DecreaseKey: return "decreasekey " + std::to_string(op.a) + " " + std::to_string(op.key);
    case TraceOp::Kind::Meld: return "meld " + std::to_string(op.a) + " " + std::to_string(op.b);
    case TraceOp::Kind::NewHeap: return "newheap";
  }
  return "";
}

void write_trace(std::ostream& out, const std::vector<TraceOp>& ops, const std::string& header) {
  if (!header.empty()) {
    std::istringstream hs(header);
    for (std::string l; std::getline(hs, l);) out << "# " << l << '\n';
  }
  for (const TraceOp& op : ops) out << format_op(op) << '\n';
}

TraceResult run_trace(const std::vector<TraceOp>& ops, Variant variant, Policy policy, ForestOptions options,
                      std::ostream* echo) {
  if (variant == Variant::NoMeld) {
    for (const TraceOp& op : ops) {
      if (op.kind == TraceOp::Kind::Meld) throw TraceError(op.line, "meld unsupported in variant", false);
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  Forest forest(variant, options);
  std::vector<HeapId> heap_of{forest.make_heap(policy)};  // by representative ref
  std::vector<std::uint64_t> parent{0};
  std::vector<NodeId> handles;
  std::vector<std::uint64_t> handle_heap;

  auto find = [&](std::uint64_t r) {
    while (parent[r] != r) r = parent[r] = parent[parent[r]];
    return r;
  };
  TraceResult result;
  auto emit = [&](std::string s) {
    if (echo) *echo << s << '\n';
    result.outputs.push_back(std::move(s));
  };

  for (const TraceOp& op : ops) {
    auto heap = [&](std::uint64_t ref) {
      if (ref >= parent.size()) throw TraceError(op.line, "unknown heap " + std::to_string(ref), false);
      return heap_of[find(ref)];
    };
    try {
      switch (op.kind) {
        case TraceOp::Kind::Insert:
          handles.push_back(forest.insert(heap(op.a), op.key));
          handle_heap.push_back(op.a);
          break;
        case TraceOp::Kind::DeleteMin: {
          const HeapId h = heap(op.a);
          if (forest.size(h) == 0) throw TraceError(op.line, "deletemin on empty heap", false);
          emit(std::to_string(forest.delete_min(h).key));
          break;
        }
        case TraceOp::Kind::FindMin: {
          const auto m = forest.find_min(heap(op.a));
          emit(m ? std::to_string(forest.entry(*m).key) : "empty");
          break;
        }
        case TraceOp::Kind::DecreaseKey: {
          if (op.a >= handles.size()) throw TraceError(op.line, "unknown handle " + std::to_string(op.a), false);
          const NodeId x = handles[op.a];
          if (!forest.node(x).alive) throw TraceError(op.line, "handle " + std::to_string(op.a) + " is not live", false);
          forest.decrease_key(heap(handle_heap[op.a]), x, op.key);
          break;
        }
        case TraceOp::Kind::Meld: {
          const HeapId h1 = heap(op.a);
          const HeapId h2 = heap(op.b);
          const HeapId r = forest.meld(h1, h2);
          const std::uint64_t ra = find(op.a), rb = find(op.b);
          parent[rb] = ra;
          heap_of[ra] = r;
          break;
        }
        case TraceOp::Kind::NewHeap:
          parent.push_back(parent.size());
          heap_of.push_back(forest.make_heap(policy));
          break;
      }
    } catch (const HeapError& e) {
      throw TraceError(op.line, e.what(), false);
    }
  }

  MetricsRow& m = result.metrics;
  m.run_id = "trace";
  m.variant = variant;
  m.policy = policy;
  m.counters = forest.counters();
  m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (std::uint64_t r = 0; r < parent.size(); ++r) {
    if (find(r) == r && forest.is_live(heap_of[r])) m.n_end += forest.size(heap_of[r]);
  }
  return result;
}

}  // namespace vcheap
