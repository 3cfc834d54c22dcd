#pragma once

// Text update-stream format, one event per line:
//
//   n <count>      header, first non-blank line
//   + u v          insert edge
//   - u v          delete edge
//   q              query
//
// Blank lines and lines starting with '#' are ignored. Ingestion validates
// every event against the evolving graph and aborts on the first bad line.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "dynmatch/graph.hpp"

namespace dynmatch {

enum class EventKind { kInsert, kDelete, kQuery };

struct UpdateEvent {
  EventKind kind = EventKind::kQuery;
  Edge edge{};

  friend bool operator==(const UpdateEvent&, const UpdateEvent&) = default;
};

struct UpdateStream {
  std::size_t n = 0;
  std::vector<UpdateEvent> events;

  friend bool operator==(const UpdateStream&, const UpdateStream&) = default;
};

char kind_symbol(EventKind kind) noexcept;

/// Parses and validates. Errors carry "line <k>: ..." in the message.
UpdateStream read_stream(std::istream& in);
UpdateStream read_stream_file(const std::string& path);

void write_stream(std::ostream& out, const UpdateStream& stream);
std::string to_text(const UpdateStream& stream);

/// Replays all events; throws like read_stream (with event index) on an
/// invalid insert/delete.
Graph final_graph(const UpdateStream& stream);

/// Surviving edges of the final graph in the order they were (last)
/// inserted: the edge stream seen by a streaming algorithm.
std::vector<Edge> final_edge_order(const UpdateStream& stream);

/// Stream of inserts only, one per edge, in the given order.
UpdateStream insert_stream(std::size_t n, std::span<const Edge> edges);

}  // namespace dynmatch
