#include "dynmatch/event_stream.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

namespace dynmatch {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& msg) {
  throw Error(Errc::kParse, "line " + std::to_string(line_no) + ": " + msg);
}

std::uint64_t parse_uint(std::string_view tok, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    fail(line_no, "expected a base-10 integer, got '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

char kind_symbol(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::kInsert: return '+';
    case EventKind::kDelete: return '-';
    case EventKind::kQuery: return 'q';
  }
  return '?';
}

UpdateStream read_stream(std::istream& in) {
  UpdateStream out;
  bool have_header = false;
  Graph g;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;
    if (!have_header) {
      if (toks.size() != 2 || toks[0] != "n") fail(line_no, "expected header 'n <count>'");
      out.n = parse_uint(toks[1], line_no);
      g = Graph(out.n);
      have_header = true;
      continue;
    }
    if (toks[0] == "q") {
      if (toks.size() != 1) fail(line_no, "query takes no arguments");
      out.events.push_back({EventKind::kQuery, {}});
      continue;
    }
    if (toks[0] != "+" && toks[0] != "-") {
      fail(line_no, "unknown event '" + std::string(toks[0]) + "'");
    }
    if (toks.size() != 3) fail(line_no, "expected '<+|-> u v'");
    const auto u = parse_uint(toks[1], line_no);
    const auto v = parse_uint(toks[2], line_no);
    if (u >= out.n || v >= out.n) fail(line_no, "vertex id out of range");
    const auto a = static_cast<VertexId>(u);
    const auto b = static_cast<VertexId>(v);
    const bool insert = toks[0] == "+";
    try {
      if (insert) {
        g.insert_edge(a, b);
      } else {
        g.delete_edge(a, b);
      }
    } catch (const Error& e) {
      fail(line_no, e.what());
    }
    out.events.push_back({insert ? EventKind::kInsert : EventKind::kDelete, make_edge(a, b)});
  }
  if (!have_header) fail(line_no + 1, "missing header 'n <count>'");
  return out;
}

UpdateStream read_stream_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kInvalidInput, "cannot open " + path);
  return read_stream(in);
}

void write_stream(std::ostream& out, const UpdateStream& stream) {
  out << "n " << stream.n << '\n';
  for (const auto& ev : stream.events) {
    if (ev.kind == EventKind::kQuery) {
      out << "q\n";
    } else {
      out << kind_symbol(ev.kind) << ' ' << ev.edge.u << ' ' << ev.edge.v << '\n';
    }
  }
}

std::string to_text(const UpdateStream& stream) {
  std::ostringstream os;
  write_stream(os, stream);
  return os.str();
}

Graph final_graph(const UpdateStream& stream) {
  Graph g(stream.n);
  for (std::size_t i = 0; i < stream.events.size(); ++i) {
    const auto& ev = stream.events[i];
    try {
      if (ev.kind == EventKind::kInsert) g.insert_edge(ev.edge.u, ev.edge.v);
      if (ev.kind == EventKind::kDelete) g.delete_edge(ev.edge.u, ev.edge.v);
    } catch (const Error& e) {
      throw Error(e.code(), "event " + std::to_string(i) + ": " + e.what());
    }
  }
  return g;
}

std::vector<Edge> final_edge_order(const UpdateStream& stream) {
  // Edge -> sequence number of its live insertion.
  std::map<Edge, std::size_t> live;
  for (std::size_t i = 0; i < stream.events.size(); ++i) {
    const auto& ev = stream.events[i];
    if (ev.kind == EventKind::kInsert) live[ev.edge] = i;
    if (ev.kind == EventKind::kDelete) live.erase(ev.edge);
  }
  std::vector<std::pair<std::size_t, Edge>> order;
  order.reserve(live.size());
  for (const auto& [e, seq] : live) order.emplace_back(seq, e);
  std::sort(order.begin(), order.end());
  std::vector<Edge> out;
  out.reserve(order.size());
  for (const auto& [seq, e] : order) out.push_back(e);
  return out;
}

UpdateStream insert_stream(std::size_t n, std::span<const Edge> edges) {
  UpdateStream s{n, {}};
  s.events.reserve(edges.size());
  for (const Edge& e : edges) s.events.push_back({EventKind::kInsert, make_edge(e.u, e.v)});
  return s;
}

}  // namespace dynmatch
