#include "dynmatch/graph.hpp"

#include <algorithm>
#include <string>

namespace dynmatch {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::kDuplicateEdge: return "DuplicateEdge";
    case Errc::kSelfLoop: return "SelfLoop";
    case Errc::kMissingEdge: return "MissingEdge";
    case Errc::kVertexOutOfRange: return "VertexOutOfRange";
    case Errc::kTooLarge: return "TooLarge";
    case Errc::kInvalidInput: return "InvalidInput";
    case Errc::kBudgetExceeded: return "BudgetExceeded";
    case Errc::kInvalidSpec: return "InvalidSpec";
    case Errc::kParse: return "Parse";
    case Errc::kUsage: return "Usage";
  }
  return "Unknown";
}

namespace {

std::string edge_str(VertexId u, VertexId v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

Graph::Graph(std::size_t n) : adj_(n) {}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g(n);
  for (const Edge& e : edges) g.insert_edge(e.u, e.v);
  return g;
}

void Graph::check_vertex(VertexId v) const {
  if (v >= adj_.size()) {
    throw Error(Errc::kVertexOutOfRange,
                "vertex " + std::to_string(v) + " out of range [0, " +
                    std::to_string(adj_.size()) + ")");
  }
}

void Graph::insert_edge(VertexId u, VertexId v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw Error(Errc::kSelfLoop, "self-loop at " + std::to_string(u));
  auto& au = adj_[u];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it != au.end() && *it == v) {
    throw Error(Errc::kDuplicateEdge, "duplicate edge " + edge_str(u, v));
  }
  au.insert(it, v);
  auto& av = adj_[v];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++num_edges_;
}

void Graph::delete_edge(VertexId u, VertexId v) {
  check_vertex(u);
  check_vertex(v);
  auto& au = adj_[u];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (u == v || it == au.end() || *it != v) {
    throw Error(Errc::kMissingEdge, "missing edge " + edge_str(u, v));
  }
  au.erase(it);
  auto& av = adj_[v];
  av.erase(std::lower_bound(av.begin(), av.end(), u));
  --num_edges_;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  if (u >= adj_.size() || v >= adj_.size()) return false;
  const auto& au = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  const VertexId target = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::binary_search(au.begin(), au.end(), target);
}

std::span<const VertexId> Graph::neighbors(VertexId v) const {
  check_vertex(v);
  return adj_[v];
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (VertexId u = 0; u < adj_.size(); ++u) {
    for (VertexId v : adj_[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

void Matching::add(VertexId u, VertexId v) {
  if (u == v || mate_.at(u) != kNoVertex || mate_.at(v) != kNoVertex) {
    throw Error(Errc::kInvalidInput,
                "cannot match " + edge_str(u, v) + ": endpoint not free");
  }
  mate_[u] = v;
  mate_[v] = u;
  ++size_;
}

void Matching::remove(VertexId u, VertexId v) {
  if (!contains(u, v)) {
    throw Error(Errc::kMissingEdge, "edge " + edge_str(u, v) + " not matched");
  }
  mate_[u] = kNoVertex;
  mate_[v] = kNoVertex;
  --size_;
}

void Matching::unmatch(VertexId v) {
  const VertexId m = mate_.at(v);
  if (m == kNoVertex) return;
  mate_[v] = kNoVertex;
  mate_[m] = kNoVertex;
  --size_;
}

std::vector<Edge> Matching::edges() const {
  std::vector<Edge> out;
  out.reserve(size_);
  for (VertexId u = 0; u < mate_.size(); ++u) {
    if (mate_[u] != kNoVertex && u < mate_[u]) out.push_back({u, mate_[u]});
  }
  return out;
}

bool Matching::is_valid_in(const Graph& g) const {
  if (mate_.size() != g.num_vertices()) return false;
  std::size_t matched = 0;
  for (VertexId u = 0; u < mate_.size(); ++u) {
    const VertexId m = mate_[u];
    if (m == kNoVertex) continue;
    if (m >= mate_.size() || m == u || mate_[m] != u) return false;
    if (!g.has_edge(u, m)) return false;
    ++matched;
  }
  return matched == 2 * size_;
}

BMatching::BMatching(std::vector<std::uint32_t> capacities)
    : capacity_(std::move(capacities)), degree_(capacity_.size(), 0) {}

std::uint32_t BMatching::multiplicity(Edge e) const {
  auto it = mult_.find(make_edge(e.u, e.v));
  return it == mult_.end() ? 0 : it->second;
}

void BMatching::add(Edge e, std::uint32_t count) {
  if (count == 0) return;
  e = make_edge(e.u, e.v);
  if (e.u == e.v || e.u >= capacity_.size() || e.v >= capacity_.size()) {
    throw Error(Errc::kInvalidInput, "invalid b-matching edge " + edge_str(e.u, e.v));
  }
  if (residual(e.u) < count || residual(e.v) < count) {
    throw Error(Errc::kInvalidInput,
                "capacity exceeded adding " + edge_str(e.u, e.v));
  }
  mult_[e] += count;
  degree_[e.u] += count;
  degree_[e.v] += count;
  total_ += count;
}

bool BMatching::respects_capacities() const {
  std::vector<std::uint64_t> load(capacity_.size(), 0);
  for (const auto& [e, c] : mult_) {
    if (c == 0) return false;
    load[e.u] += c;
    load[e.v] += c;
  }
  for (std::size_t v = 0; v < load.size(); ++v) {
    if (load[v] > capacity_[v] || load[v] != degree_[v]) return false;
  }
  return true;
}

std::vector<VertexId> BipartiteView::neighbors(VertexId v) const {
  std::vector<VertexId> out;
  for_each_neighbor(v, [&](VertexId w) { out.push_back(w); });
  return out;
}

std::size_t BipartiteView::degree(VertexId v) const {
  std::size_t d = 0;
  for_each_neighbor(v, [&](VertexId) { ++d; });
  return d;
}

std::vector<Edge> BipartiteView::edges() const {
  std::vector<Edge> out;
  for (VertexId u = 0; u < g_->num_vertices(); ++u) {
    for_each_neighbor(u, [&](VertexId w) {
      if (u < w) out.push_back({u, w});
    });
  }
  return out;
}

}  // namespace dynmatch
